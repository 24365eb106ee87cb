//! Root-counting oracle for the local degree, independent of the
//! reduction machinery: it only counts roots of `f - b g` near the center
//! of `x` for classical targets `b` near `φ(x)`.
//!
//! For a target in direction `u` at `φ(x)`, the reduction `R_u` of the
//! normalized shift `(f - b g)(a + π^s z)` has each residue direction `c` as
//! a root of multiplicity `s(c) + m(c)·[c ↦ u]`. Removing every root shared
//! with a second target's `R_{u'}` leaves exactly the non-surplus preimage
//! directions of `u`, so its degree is `m` unless `u` is the image of a
//! surplus direction. At most `d - m` targets are spoiled that way, which is
//! what makes the maximum over enough targets certifiable.

use crate::berkline::{image_point, residue_poly, BerkPoint, PointType};
use crate::error::{Error, Result};
use crate::ratmap::{Poly, RationalMap, ResPoly, MAX_ENUM_ORDER};
use crate::valfield::{CoeffField, Exp, ValuedField};

use super::embed_map;

/// Reduction of `p(a + π^s z)` after dividing out its Gauss norm.
pub fn shifted_root_count<V: ValuedField>(
    k: &V,
    p: &Poly<V::Elem>,
    a: &V::Elem,
    s: Exp,
) -> Result<ResPoly<V>> {
    let shifted = p.taylor_shift(k, a).scale_var(k, &k.unif_pow(s)?);
    let v = shifted
        .gauss_ord(k, Exp::from_integer(0))?
        .ok_or_else(|| Error::Invalid("zero polynomial has no root count".into()))?;
    residue_poly(k, &shifted, v)
}

/// Local degree at a ball by counting preimages of sample targets.
pub fn local_degree_oracle<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    x: &BerkPoint<V::Elem>,
    trials: usize,
) -> Result<usize> {
    let BerkPoint::Ball { center, s, kind } = x else {
        return Err(Error::Invalid("the oracle works on ball points".into()));
    };
    if *kind == PointType::III {
        let big = k.with_ram_index(k.ram_index() * *s.denom() as u32)?;
        let phi_big = embed_map(&big, k, phi)?;
        let c = big.embed_from(k, center)?;
        return local_degree_oracle(&big, &phi_big, &BerkPoint::ball(&big, &c, *s)?, trials);
    }
    let y = image_point(k, phi, x)?;
    let (
        BerkPoint::Ball {
            center: by, s: sy, ..
        },
        d,
    ) = (&y, phi.d)
    else {
        unreachable!("images of type II points are type II")
    };
    let kr = k.residue_field();
    let targets: Vec<Option<<V::Res as CoeffField>::Elt>> = match kr.order() {
        Some(q) if q <= MAX_ENUM_ORDER => (0..q)
            .map(|i| Some(kr.nth_element(i)))
            .chain([None])
            .collect(),
        _ => (0..(trials.max(d + 2) as u64))
            .map(|i| Some(kr.nth_element(i)))
            .chain([None])
            .collect(),
    };
    let count = |u: &Option<<V::Res as CoeffField>::Elt>| -> Result<(ResPoly<V>, usize)> {
        let b = match u {
            Some(u) => k.add(by, &k.mul(&k.lift(u), &k.unif_pow(*sy)?)),
            None => k.add(by, &k.unif_pow(*sy - Exp::from_integer(1))?),
        };
        let r = shifted_root_count(k, &phi.f.sub(k, &phi.g.scale(k, &b)), center, *s)?;
        let outside = d - r.deg();
        Ok((r, outside))
    };
    let (r2, out2) = count(&targets[0])?;
    let mut best = 0usize;
    let mut used = 0usize;
    for u in &targets[1..] {
        let (mut r1, out1) = count(u)?;
        loop {
            let g = r1.gcd(kr, &r2);
            if g.is_constant() {
                break;
            }
            r1 = r1.exact_div(kr, &g);
        }
        let m_u = r1.deg() + if out2 == 0 { out1 } else { 0 };
        best = best.max(m_u);
        used += 1;
        if used > d.saturating_sub(best) && used >= trials.min(targets.len() - 1) {
            break;
        }
    }
    if best == 0 || used <= d - best {
        return Err(Error::OracleInconclusive(format!(
            "{used} targets cannot rule out {} surplus images",
            d.saturating_sub(best)
        )));
    }
    Ok(best)
}
