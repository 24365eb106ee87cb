//! Local degree, directional and surplus multiplicities.

mod directions;
mod oracle;

pub use directions::{
    class_of, directional_data, directional_sum_holds, DirClass, DirImage, DirLabel, LocalData,
};
pub use oracle::{local_degree_oracle, shifted_root_count};

use crate::berkline::{image_of_gauss, BerkPoint, Direction, PointType};
use crate::error::{Error, Result};
use crate::ratmap::{compose_mobius, is_separable, reduce, Mobius, RationalMap, ReducedMap};
use crate::valfield::{CoeffField, Exp, ValuedField};

type ResElt<V> = <<V as ValuedField>::Res as CoeffField>::Elt;

/// `ψ = σ₂ ∘ φ ∘ σ₁` with `σ₁(ζ_{0,1}) = x` and `σ₂(φ(x)) = ζ_{0,1}`.
#[derive(Clone, Debug)]
pub struct Conjugate<E, T> {
    pub sigma1: Mobius<E>,
    pub sigma2: Mobius<E>,
    pub image: BerkPoint<E>,
    pub psi: RationalMap<E>,
    pub red: ReducedMap<T>,
}

/// Move the type II point `x` and its image to the Gauss point.
pub fn conjugate<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    x: &BerkPoint<V::Elem>,
) -> Result<Conjugate<V::Elem, ResElt<V>>> {
    let sigma1 = x.coord(k)?;
    let id = Mobius::identity(k);
    let pulled = compose_mobius(k, &id, phi, &sigma1)?;
    let (c, w) = image_of_gauss(k, &pulled)?;
    let inv_scale = k.unif_pow(-w)?;
    let sigma2 = Mobius::affine(k, inv_scale.clone(), k.neg(&k.mul(&c, &inv_scale)))?;
    let psi = compose_mobius(k, &sigma2, &pulled, &id)?;
    let red = reduce(k, &psi)?;
    Ok(Conjugate {
        sigma1,
        sigma2,
        image: BerkPoint::ball(k, &c, w)?,
        psi,
        red,
    })
}

/// `m_φ(x)`. Type II points use the degree of the reduction of the
/// conjugated map; classical points the vanishing order of `φ - φ(a)`;
/// type III points go through [`local_degree_type3`].
pub fn local_degree<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    x: &BerkPoint<V::Elem>,
) -> Result<usize> {
    if phi.is_constant() {
        return Err(Error::Invalid("local degree of a constant map".into()));
    }
    match x {
        BerkPoint::Ball {
            kind: PointType::II,
            ..
        } => Ok(conjugate(k, phi, x)?.red.degree_red),
        BerkPoint::Ball { .. } => local_degree_type3(k, phi, x, 6),
        BerkPoint::Classical(a) => classical_degree(k, phi, a),
        BerkPoint::Infinity => classical_degree(k, &phi.source_swap(k), &k.zero()),
    }
}

/// Ramification index at a classical point with an exact coordinate.
fn classical_degree<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    a: &V::Elem,
) -> Result<usize> {
    if k.precision(a).is_some() {
        return Err(Error::PrecisionExhausted(
            "classical local degree needs an exact point".into(),
        ));
    }
    let h = match phi.eval(k, a)? {
        Some(b) => phi.f.sub(k, &phi.g.scale(k, &b)),
        None => phi.g.clone(),
    };
    let shifted = h.taylor_shift(k, a);
    let e = shifted.zero_order(k);
    if e == shifted.c.len() {
        return Err(Error::Invalid("map is constant".into()));
    }
    Ok(e)
}

/// Surplus multiplicity of a single direction at a type II point.
pub fn surplus<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    x: &BerkPoint<V::Elem>,
    v: &Direction<ResElt<V>>,
) -> Result<usize> {
    let red = conjugate(k, phi, x)?.red;
    Ok(match v {
        Direction::Infinity => red.h_inf,
        Direction::Finite(a) => red.surplus_at(k.residue_field(), Some(a)),
    })
}

/// Whether the reduction of `φ` at `x` is inseparable. At type III points
/// this is `p | m`; at classical points, inseparability of `φ` itself.
pub fn has_inseparable_reduction<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    x: &BerkPoint<V::Elem>,
) -> Result<bool> {
    let p = k.residue_char() as usize;
    match x {
        BerkPoint::Ball {
            kind: PointType::II,
            ..
        } => {
            let red = conjugate(k, phi, x)?.red;
            Ok(reduced_wronskian_vanishes(k.residue_field(), &red))
        }
        BerkPoint::Ball { .. } => Ok(p > 0 && local_degree_type3(k, phi, x, 6)? % p == 0),
        _ => Ok(!is_separable(k, phi)?),
    }
}

/// `Ã'B̃ - ÃB̃' = 0` for the reduced map (with `H` removed).
pub fn reduced_wronskian_vanishes<F: CoeffField>(kr: &F, red: &ReducedMap<F::Elt>) -> bool {
    let w = red
        .f_red
        .derivative(kr)
        .mul(kr, &red.g_red)
        .sub(kr, &red.f_red.mul(kr, &red.g_red.derivative(kr)));
    w.is_zero()
}

/// Local degree at a type III point `ζ_{a,s}`: probe the type II points
/// just inside and outside in towers of growing ramification index until
/// both sides agree twice in a row, then confirm against the reduction
/// formula in a tower where `s` itself is in the value group.
pub fn local_degree_type3<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    x: &BerkPoint<V::Elem>,
    budget: usize,
) -> Result<usize> {
    let BerkPoint::Ball { center, s, .. } = x else {
        return Err(Error::Invalid("type III probe needs a ball".into()));
    };
    let n = k.ram_index();
    let den = *s.denom() as u32;
    let mut last: Option<usize> = None;
    let mut agreed = 0;
    // factors coprime to the denominator keep s outside the value group
    let factors = (2u32..)
        .filter(|l| num_integer::gcd(*l, den) == 1)
        .take(budget);
    for l in factors {
        let big = k.with_ram_index(n * l)?;
        let phi_big = embed_map(&big, k, phi)?;
        let c = big.embed_from(k, center)?;
        let step = Exp::new(1, (n * l) as i64);
        let lo = (*s / step).floor() * step;
        let hi = (*s / step).ceil() * step;
        log::debug!("type III probe at N = {}: radii {} and {}", n * l, lo, hi);
        let m_lo = local_degree(&big, &phi_big, &BerkPoint::ball(&big, &c, lo)?)?;
        let m_hi = local_degree(&big, &phi_big, &BerkPoint::ball(&big, &c, hi)?)?;
        if m_lo == m_hi && last == Some(m_lo) {
            agreed += 1;
        } else {
            agreed = 0;
        }
        last = (m_lo == m_hi).then_some(m_lo);
        if agreed >= 1 {
            let m = m_lo;
            let exact_n = n * den;
            let full = k.with_ram_index(exact_n)?;
            let phi_full = embed_map(&full, k, phi)?;
            let c = full.embed_from(k, center)?;
            let m_ext = local_degree(&full, &phi_full, &BerkPoint::ball(&full, &c, *s)?)?;
            if m_ext != m {
                return Err(Error::NoStabilization(format!(
                    "flanking probes give {m} but the extended tower gives {m_ext}"
                )));
            }
            return Ok(m);
        }
    }
    Err(Error::NoStabilization(
        "flanking type II probes never agreed".into(),
    ))
}

/// Transport a map into a tower extension.
pub fn embed_map<V: ValuedField>(
    big: &V,
    small: &V,
    phi: &RationalMap<V::Elem>,
) -> Result<RationalMap<V::Elem>> {
    let lift = |p: &crate::ratmap::Poly<V::Elem>| -> Result<crate::ratmap::Poly<V::Elem>> {
        let mut c = Vec::with_capacity(p.c.len());
        for x in &p.c {
            c.push(big.embed_from(small, x)?);
        }
        Ok(crate::ratmap::Poly::new(big, c))
    };
    Ok(RationalMap {
        f: lift(&phi.f)?,
        g: lift(&phi.g)?,
        d: phi.d,
        normalized: phi.normalized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmap::Poly;
    use crate::valfield::{exp, exp_int, FiniteField, Puiseux, Radical, Rationals};

    fn zpow<V: ValuedField>(k: &V, n: usize) -> RationalMap<V::Elem> {
        let mut c = vec![k.zero(); n + 1];
        c[n] = k.one();
        RationalMap::polynomial(k, Poly::new(k, c))
    }

    fn ints<V: ValuedField>(k: &V, c: &[i64]) -> Poly<V::Elem> {
        Poly::new(k, c.iter().map(|&n| k.from_i64(n)).collect())
    }

    #[test]
    fn frobenius_has_degree_p_everywhere() {
        for p in [2u64, 3, 5] {
            let fp = FiniteField::prime(p).unwrap();
            let k = Puiseux::new(fp.clone(), exp_int(24), 1);
            let phi = zpow(&k, p as usize);
            for (c, s) in [(0, 0), (1, 1), (2, -1)] {
                let center = k.add(&k.from_i64(c), &k.monomial(fp.one(), exp(1, 2)));
                let x = BerkPoint::ball(&k, &center, exp(s, 3)).unwrap();
                assert_eq!(local_degree(&k, &phi, &x).unwrap(), p as usize);
                assert!(has_inseparable_reduction(&k, &phi, &x).unwrap());
            }
        }
    }

    #[test]
    fn mobius_is_unramified() {
        let k = Puiseux::new(Rationals, exp_int(24), 1);
        let phi = RationalMap::new(&k, ints(&k, &[1, 1]), ints(&k, &[-1, 1])).unwrap();
        for s in [-2, 0, 3] {
            let x = BerkPoint::ball(&k, &k.from_i64(1), exp_int(s)).unwrap();
            assert_eq!(local_degree(&k, &phi, &x).unwrap(), 1);
            assert_eq!(local_degree_oracle(&k, &phi, &x, 8).unwrap(), 1);
        }
    }

    #[test]
    fn mixed_good_reduction_has_full_degree_at_gauss() {
        let k = Radical::new(5, 1, exp_int(32)).unwrap();
        let phi =
            RationalMap::new(&k, ints(&k, &[1, 5, 0, 0, 0, 0, 1]), ints(&k, &[0, 1])).unwrap();
        let g = BerkPoint::gauss(&k);
        assert_eq!(local_degree(&k, &phi, &g).unwrap(), 6);
        assert_eq!(local_degree_oracle(&k, &phi, &g, 8).unwrap(), 6);
    }

    #[test]
    fn oracle_examples() {
        let k = Puiseux::new(Rationals, exp_int(24), 1);
        let g = BerkPoint::gauss(&k);
        assert_eq!(local_degree_oracle(&k, &zpow(&k, 2), &g, 8).unwrap(), 2);
        let shift = RationalMap::polynomial(&k, ints(&k, &[1, 1]));
        assert_eq!(local_degree_oracle(&k, &shift, &g, 8).unwrap(), 1);
        // z^3 + z in Q(3^(1/2)) at ord 1/2: one root of z^3 + z - c near 0
        let k = Radical::new(3, 2, exp_int(32)).unwrap();
        let phi = RationalMap::polynomial(&k, ints(&k, &[0, 1, 0, 1]));
        let x = BerkPoint::ball(&k, &k.zero(), exp(1, 2)).unwrap();
        assert_eq!(local_degree_oracle(&k, &phi, &x, 8).unwrap(), 1);
        assert_eq!(local_degree(&k, &phi, &x).unwrap(), 1);
        assert!(!has_inseparable_reduction(&k, &phi, &x).unwrap());
        let gauss = BerkPoint::gauss(&k);
        assert_eq!(local_degree_oracle(&k, &phi, &gauss, 8).unwrap(), 3);
        let inner = BerkPoint::ball(&k, &k.zero(), exp(-1, 2)).unwrap();
        assert!(has_inseparable_reduction(&k, &phi, &inner).unwrap());
    }

    #[test]
    fn directional_data_of_square_at_gauss() {
        let k = Puiseux::new(Rationals, exp_int(24), 1);
        let ld = directional_data(&k, &zpow(&k, 2), &BerkPoint::gauss(&k)).unwrap();
        assert_eq!(ld.m, 2);
        assert_eq!(ld.classes.len(), 2);
        assert!(ld.classes.iter().all(|c| c.m_dir == 2 && c.s_dir == 0));
        assert!(ld.balance_holds());
        let kr = k.residue_field();
        for u in [kr.from_i64(0), kr.from_i64(1), kr.from_i64(-3)] {
            assert!(directional_sum_holds(kr, &ld, Some(&u)));
        }
        assert!(directional_sum_holds(kr, &ld, None));
    }

    #[test]
    fn directional_data_without_surplus() {
        let k = Puiseux::new(Rationals, exp_int(24), 1);
        let t = k.monomial(k.coeff().one(), exp_int(1));
        let f = Poly::new(&k, vec![k.zero(), t.clone(), k.one()]);
        let g = Poly::new(&k, vec![k.one(), k.zero(), t]);
        let phi = RationalMap::new(&k, f, g).unwrap();
        let ld = directional_data(&k, &phi, &BerkPoint::gauss(&k)).unwrap();
        assert_eq!(ld.surplus_total(), 0);
        assert!(ld.balance_holds());
        assert_eq!(ld.m, 2);
    }

    #[test]
    fn surplus_appears_when_a_disk_covers_everything() {
        // (z - 1)·(w^2 + w + 1)/(w^2 + 1) with w = z/t: all of the degree
        // drop sits in direction 0 at the Gauss point
        let k = Puiseux::new(Rationals, exp_int(24), 1);
        let one = k.coeff().one();
        let t = |e: i64| k.monomial(one.clone(), exp_int(e));
        // f = (z - 1)(z^2 + t z + t^2), g = z^2 + t^2
        let f = ints(&k, &[-1, 1]).mul(&k, &Poly::new(&k, vec![t(2), t(1), k.one()]));
        let g = Poly::new(&k, vec![t(2), k.zero(), k.one()]);
        let phi = RationalMap::new(&k, f, g).unwrap();
        let ld = directional_data(&k, &phi, &BerkPoint::gauss(&k)).unwrap();
        assert_eq!(ld.m, 1);
        assert!(ld.balance_holds());
        let zero_dir =
            class_of(k.coeff(), &ld.classes, &Direction::Finite(k.coeff().zero())).unwrap();
        assert_eq!(zero_dir.s_dir, 2);
        assert_eq!(
            surplus(
                &k,
                &phi,
                &BerkPoint::gauss(&k),
                &Direction::Finite(k.coeff().zero())
            )
            .unwrap(),
            2
        );
        assert_eq!(
            local_degree_oracle(&k, &phi, &BerkPoint::gauss(&k), 8).unwrap(),
            1
        );
    }

    #[test]
    fn type3_point_in_a_fixed_tower() {
        let k = Radical::new(3, 1, exp_int(32)).unwrap();
        let x = BerkPoint::ball(&k, &k.zero(), exp(1, 2)).unwrap();
        assert_eq!(x.kind(), PointType::III);
        assert_eq!(local_degree(&k, &zpow(&k, 2), &x).unwrap(), 2);
        let phi = RationalMap::polynomial(&k, ints(&k, &[0, 1, 0, 1]));
        assert_eq!(
            local_degree(&k, &phi, &x).unwrap(),
            local_degree_oracle(&k, &phi, &x, 8).unwrap()
        );
    }
}
