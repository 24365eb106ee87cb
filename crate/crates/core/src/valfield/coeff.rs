//! Coefficient (residue) fields.
//!
//! A [`CoeffField`] is a runtime field context: elements are plain values and
//! every operation goes through the context. This lets finite fields carry
//! their modulus without global state, which the context-free `Zero`/`One`
//! traits of `num-traits` cannot express.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub trait CoeffField: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elt: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elt;
    fn one(&self) -> Self::Elt;
    fn from_i64(&self, n: i64) -> Self::Elt;
    /// Image of a rational number, if its denominator is invertible.
    fn from_ratio(&self, q: &BigRational) -> Option<Self::Elt>;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn neg(&self, a: &Self::Elt) -> Self::Elt;
    fn inv(&self, a: &Self::Elt) -> Option<Self::Elt>;
    fn is_zero(&self, a: &Self::Elt) -> bool;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// A fixed enumeration of the field; for finite fields `i < order`.
    fn nth_element(&self, i: u64) -> Self::Elt;
    /// Inverse Frobenius. The identity in characteristic zero.
    fn pth_root(&self, a: &Self::Elt) -> Self::Elt;
    fn describe(&self) -> String;
    fn fmt_elt(&self, a: &Self::Elt) -> String;
    /// Adjoin a root of an irreducible polynomial (coefficients low to high).
    fn extend(&self, minpoly: &[Self::Elt]) -> Result<Extension<Self>>;

    /// The generator written `g` in element literals, when the field has one.
    fn named_generator(&self) -> Option<Self::Elt> {
        None
    }

    /// The element as a rational number, when the field is `Q`.
    fn as_rational(&self, _a: &Self::Elt) -> Option<BigRational> {
        None
    }

    fn div(&self, a: &Self::Elt, b: &Self::Elt) -> Option<Self::Elt> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elt, mut n: u64) -> Self::Elt {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    fn is_one(&self, a: &Self::Elt) -> bool {
        *a == self.one()
    }
}

/// Result of [`CoeffField::extend`]: the enlarged field, the image of the
/// old generator (if the old field had one) and the adjoined root.
#[derive(Clone, Debug)]
pub struct Extension<F: CoeffField> {
    pub field: F,
    pub old_generator: Option<F::Elt>,
    pub root: F::Elt,
}

/// The rational numbers with exact big-integer arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl CoeffField for Rationals {
    type Elt = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn as_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }

    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn nth_element(&self, i: u64) -> BigRational {
        // 0, 1, -1, 2, -2, ...
        let k = i.div_ceil(2) as i64;
        let v = if i % 2 == 1 { k } else { -k };
        self.from_i64(v)
    }
    fn pth_root(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn describe(&self) -> String {
        "Q".to_string()
    }
    fn fmt_elt(&self, a: &BigRational) -> String {
        fmt_rational(a)
    }
    fn extend(&self, minpoly: &[BigRational]) -> Result<Extension<Self>> {
        let deg = minpoly.iter().rposition(|c| !c.is_zero());
        match deg {
            Some(1) => {
                let root = -(&minpoly[0] / &minpoly[1]);
                Ok(Extension {
                    field: Rationals,
                    old_generator: None,
                    root,
                })
            }
            _ => Err(Error::UnsupportedExtension(
                "only linear extensions of Q stay inside the rational model".into(),
            )),
        }
    }
}

pub fn fmt_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// p-adic valuation of a nonzero rational.
pub fn padic_val(q: &BigRational, p: u64) -> i64 {
    debug_assert!(!q.is_zero());
    let p = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut c = 0i64;
        while (&n % &p).is_zero() {
            n /= &p;
            c += 1;
        }
        c
    };
    count(q.numer()) - count(q.denom())
}

/// Residue of a p-integral rational in `0..p`.
pub fn reduce_mod_p(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom() % &pb;
    if den.is_zero() {
        return None;
    }
    let num = ((q.numer() % &pb) + &pb) % &pb;
    let den = ((den % &pb) + &pb) % &pb;
    let n: u64 = u64::try_from(num).ok()?;
    let d: u64 = u64::try_from(den).ok()?;
    Some(n * modinv(d, p) % p)
}

pub fn modinv(a: u64, p: u64) -> u64 {
    modpow(a % p, p - 2, p)
}

pub fn modpow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * a as u128 % p as u128) as u64;
        }
        a = (a as u128 * a as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn linear_extension_of_q_is_trivial() {
        let e = Rationals.extend(&[q(-3, 1), q(1, 1)]).unwrap();
        assert_eq!(e.field, Rationals);
        assert_eq!(e.root, q(3, 1));
    }

    #[test]
    fn quadratic_extension_of_q_is_rejected() {
        let err = Rationals.extend(&[q(-2, 1), q(0, 1), q(1, 1)]).unwrap_err();
        assert_eq!(err.code(), "UnsupportedExtension");
    }

    #[test]
    fn padic_helpers() {
        assert_eq!(padic_val(&q(18, 5), 3), 2);
        assert_eq!(padic_val(&q(5, 9), 3), -2);
        assert_eq!(reduce_mod_p(&q(1, 2), 5), Some(3));
        assert_eq!(reduce_mod_p(&q(-1, 1), 5), Some(4));
        assert_eq!(reduce_mod_p(&q(1, 5), 5), None);
    }

    #[test]
    fn enumeration_of_q_starts_small() {
        let v: Vec<_> = (0..5).map(|i| Rationals.nth_element(i)).collect();
        assert_eq!(v, vec![q(0, 1), q(1, 1), q(-1, 1), q(2, 1), q(-2, 1)]);
    }
}
