//! Seeded random instances: elements, type II points and maps.

use rand::Rng;

use crate::berkline::BerkPoint;
use crate::error::Result;
use crate::ratmap::{Poly, RationalMap};
use crate::valfield::{Exp, ValuedField};

/// A random value-group exponent in `[lo, hi]`.
pub fn random_exp<V: ValuedField, R: Rng>(k: &V, rng: &mut R, lo: i64, hi: i64) -> Exp {
    let n = k.ram_index() as i64;
    Exp::new(rng.gen_range(lo * n..=hi * n), n)
}

/// A short exact sum `Σ c_i π^{e_i}` with small integer `c_i` and
/// `e_i ≥ min_ord`.
pub fn random_element<V: ValuedField, R: Rng>(k: &V, rng: &mut R, min_ord: i64) -> Result<V::Elem> {
    let mut acc = k.zero();
    for _ in 0..rng.gen_range(0..=3) {
        let c = rng.gen_range(-3..=3);
        let e = random_exp(k, rng, min_ord, min_ord + 3);
        acc = k.add(&acc, &k.mul(&k.from_i64(c), &k.unif_pow(e)?));
    }
    Ok(acc)
}

/// A type II point `ζ_{a,s}` with `s ∈ [-2, 3]` and `ord a ≥ -1`.
pub fn random_type2_point<V: ValuedField, R: Rng>(
    k: &V,
    rng: &mut R,
) -> Result<BerkPoint<V::Elem>> {
    let a = random_element(k, rng, -1)?;
    let s = random_exp(k, rng, -2, 3);
    BerkPoint::ball(k, &a, s)
}

fn random_poly<V: ValuedField, R: Rng>(k: &V, rng: &mut R, deg: usize) -> Result<Poly<V::Elem>> {
    let mut c = Vec::with_capacity(deg + 1);
    for i in 0..=deg {
        let x = if i == deg {
            let mut lead = k.from_i64(rng.gen_range(1..=3));
            if rng.gen_bool(0.3) {
                lead = k.mul(&lead, &k.unif_pow(random_exp(k, rng, -1, 2))?);
            }
            lead
        } else if rng.gen_bool(0.3) {
            k.zero()
        } else {
            random_element(k, rng, -1)?
        };
        c.push(x);
    }
    Ok(Poly::new(k, c))
}

/// A random map of exact degree `d`: numerator and denominator degrees are
/// drawn so that one of them reaches `d`. Draws are repeated until the two
/// are coprime and the degree is right.
pub fn random_map<V: ValuedField, R: Rng>(
    k: &V,
    rng: &mut R,
    d: usize,
) -> Result<RationalMap<V::Elem>> {
    loop {
        let (df, dg) = if rng.gen_bool(0.5) {
            (d, rng.gen_range(0..=d))
        } else {
            (rng.gen_range(0..=d), d)
        };
        let f = random_poly(k, rng, df)?;
        let g = if dg == 0 {
            Poly::constant(k, k.one())
        } else {
            random_poly(k, rng, dg)?
        };
        if let Ok(phi) = RationalMap::new(k, f, g) {
            if phi.d == d {
                return Ok(phi);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::{exp_int, Puiseux, Radical, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn maps_have_the_requested_degree() {
        let k = Puiseux::new(Rationals, exp_int(32), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=5 {
            assert_eq!(random_map(&k, &mut rng, d).unwrap().d, d);
        }
        let m = Radical::new(3, 2, exp_int(32)).unwrap();
        assert_eq!(random_map(&m, &mut rng, 3).unwrap().d, 3);
    }

    #[test]
    fn same_seed_same_point() {
        let k = Puiseux::new(Rationals, exp_int(32), 2);
        let a = random_type2_point(&k, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = random_type2_point(&k, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_ball());
    }
}
