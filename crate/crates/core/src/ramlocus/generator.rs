//! Maps whose ramification locus has a prescribed number of components.

use crate::error::{Error, Result};
use crate::ratmap::{normalize, reduce, weight_at_infinity, Poly, RationalMap};
use crate::valfield::{CoeffField, Exp, ValuedField};

/// Candidate `ψ = f/g` of degree `e`, monic top and bottom, with integer
/// coefficients listed low to high.
pub fn psi_library(e: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    // (w^e + 1) / (w^e - w^(e-1))
    let mut f = vec![0; e + 1];
    f[0] = 1;
    f[e] = 1;
    let mut g = vec![0; e + 1];
    g[e] = 1;
    g[e - 1] = -1;
    out.push((f, g));
    // (w^e + w + 1) / (w^e + w^(e-1))
    let mut f = vec![0; e + 1];
    f[0] = 1;
    f[1] += 1;
    f[e] += 1;
    let mut g = vec![0; e + 1];
    g[e] = 1;
    g[e - 1] += 1;
    out.push((f, g));
    // (w^e + 2) / (w^e + w^(e-1) + 1)
    let mut f = vec![0; e + 1];
    f[0] = 2;
    f[e] = 1;
    let mut g = vec![0; e + 1];
    g[0] = 1;
    g[e - 1] += 1;
    g[e] += 1;
    out.push((f, g));
    out
}

fn ints<V: ValuedField>(k: &V, c: &[i64]) -> Poly<V::Elem> {
    Poly::new(k, c.iter().map(|&n| k.from_i64(n)).collect())
}

/// A degree `e` map with separable reduction of full degree and `∞` not
/// critical, from the fixed library.
fn pick_psi<V: ValuedField>(k: &V, e: usize) -> Result<RationalMap<V::Elem>> {
    for (f, g) in psi_library(e) {
        let Ok(psi) = RationalMap::new(k, ints(k, &f), ints(k, &g)) else {
            continue;
        };
        let red = reduce(k, &normalize(k, &psi)?)?;
        let kr = k.residue_field();
        let w = red
            .f_red
            .derivative(kr)
            .mul(kr, &red.g_red)
            .sub(kr, &red.f_red.mul(kr, &red.g_red.derivative(kr)));
        if psi.d == e && red.degree_red == e && !w.is_zero() && weight_at_infinity(k, &psi)? == 0 {
            return Ok(psi);
        }
    }
    Err(Error::UnsupportedExtension(format!(
        "no library map of degree {e} has good separable reduction here"
    )))
}

/// A degree `d` map whose ramification locus has exactly `n` components:
/// a polynomial for `n = 1`, otherwise
/// `φ(z) = (z - a₁)···(z - a_ℓ) / ((z - b₂)···(z - b_ℓ)) · ψ(z/t)` with
/// `ℓ = n - 1`, residue-distinct nonzero `a_i`, `b_i = a_i + t` and `t` the
/// uniformizer.
pub fn generate_n_component_example<V: ValuedField>(
    k: &V,
    n: usize,
    d: usize,
) -> Result<RationalMap<V::Elem>> {
    if n == 0 || n >= d {
        return Err(Error::Invalid(format!(
            "need 1 ≤ n < d, got n = {n}, d = {d}"
        )));
    }
    if n == 1 {
        let mut c = vec![0; d + 1];
        c[1] = 1;
        c[d] = 1;
        return RationalMap::new(k, ints(k, &c), Poly::constant(k, k.one()));
    }
    let ell = n - 1;
    let kr = k.residue_field();
    let nonzero: Vec<_> = (0..kr.order().unwrap_or(u64::MAX).min(4 * ell as u64 + 8))
        .map(|i| kr.nth_element(i))
        .filter(|u| !kr.is_zero(u))
        .take(ell)
        .collect();
    if nonzero.len() < ell {
        return Err(Error::ResidueFieldTooSmall(format!(
            "{ell} distinct nonzero residues needed, the residue field has {}",
            nonzero.len()
        )));
    }
    let t = k.unif_pow(Exp::new(1, k.ram_index() as i64))?;
    let psi = pick_psi(k, d - ell)?;
    let e = psi.d;
    // t^e ψ(z/t), top and bottom
    let rescale = |p: &Poly<V::Elem>| -> Poly<V::Elem> {
        let c = (0..=e)
            .map(|j| k.mul(&p.coeff(k, j), &k.pow(&t, (e - j) as u32)))
            .collect();
        Poly::new(k, c)
    };
    let mut f = rescale(&psi.f);
    let mut g = rescale(&psi.g);
    for (i, u) in nonzero.iter().enumerate() {
        let a = k.lift(u);
        f = f.mul(k, &Poly::new(k, vec![k.neg(&a), k.one()]));
        if i > 0 {
            let b = k.add(&a, &t);
            g = g.mul(k, &Poly::new(k, vec![k.neg(&b), k.one()]));
        }
    }
    RationalMap::new(k, f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berkline::BerkPoint;
    use crate::berkline::Direction;
    use crate::mult::{local_degree, surplus};
    use crate::valfield::{exp_int, Puiseux, Rationals};

    #[test]
    fn two_components_degree_three() {
        let k = Puiseux::new(Rationals, exp_int(32), 1);
        let phi = generate_n_component_example(&k, 2, 3).unwrap();
        assert_eq!(phi.d, 3);
        let g = BerkPoint::gauss(&k);
        assert_eq!(local_degree(&k, &phi, &g).unwrap(), 1);
        // U₁ is the residue direction 0 at the Gauss point
        assert_eq!(
            surplus(&k, &phi, &g, &Direction::Finite(k.coeff().zero())).unwrap(),
            2
        );
    }

    #[test]
    fn library_maps_are_usable_in_small_characteristic() {
        let k = Puiseux::new(
            crate::valfield::FiniteField::prime(3).unwrap(),
            exp_int(32),
            1,
        );
        for e in 2..=5 {
            assert_eq!(pick_psi(&k, e).unwrap().d, e);
        }
    }

    #[test]
    fn too_few_residues() {
        let k = Puiseux::new(
            crate::valfield::FiniteField::prime(2).unwrap(),
            exp_int(32),
            1,
        );
        assert!(matches!(
            generate_n_component_example(&k, 3, 5),
            Err(Error::ResidueFieldTooSmall(_))
        ));
    }
}
