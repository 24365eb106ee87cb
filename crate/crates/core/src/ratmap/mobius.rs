//! Degree-one maps `z ↦ (az + b)/(cz + d)`.

use crate::error::{Error, Result};
use crate::valfield::{OrdInfo, ValuedField};

#[derive(Clone, Debug, PartialEq)]
pub struct Mobius<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E: Clone + PartialEq> Mobius<E> {
    pub fn new<V: ValuedField<Elem = E>>(k: &V, a: E, b: E, c: E, d: E) -> Result<Self> {
        let det = k.sub(&k.mul(&a, &d), &k.mul(&b, &c));
        match k.ord_info(&det) {
            OrdInfo::Exact(_) => Ok(Mobius { a, b, c, d }),
            OrdInfo::Zero => Err(Error::Invalid("singular Möbius matrix".into())),
            OrdInfo::AtLeast(_) => Err(Error::ZeroWithinPrecision(
                "Möbius determinant undecidable".into(),
            )),
        }
    }

    pub fn identity<V: ValuedField<Elem = E>>(k: &V) -> Self {
        Mobius {
            a: k.one(),
            b: k.zero(),
            c: k.zero(),
            d: k.one(),
        }
    }

    /// `z ↦ αz + β`.
    pub fn affine<V: ValuedField<Elem = E>>(k: &V, alpha: E, beta: E) -> Result<Self> {
        Mobius::new(k, alpha, beta, k.zero(), k.one())
    }

    /// `z ↦ 1/z`.
    pub fn inversion<V: ValuedField<Elem = E>>(k: &V) -> Self {
        Mobius {
            a: k.zero(),
            b: k.one(),
            c: k.one(),
            d: k.zero(),
        }
    }

    /// The inverse map (adjugate matrix).
    pub fn inverse<V: ValuedField<Elem = E>>(&self, k: &V) -> Self {
        Mobius {
            a: self.d.clone(),
            b: k.neg(&self.b),
            c: k.neg(&self.c),
            d: self.a.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose<V: ValuedField<Elem = E>>(&self, k: &V, o: &Self) -> Self {
        let m = |x: &E, y: &E, u: &E, v: &E| k.add(&k.mul(x, y), &k.mul(u, v));
        Mobius {
            a: m(&self.a, &o.a, &self.b, &o.c),
            b: m(&self.a, &o.b, &self.b, &o.d),
            c: m(&self.c, &o.a, &self.d, &o.c),
            d: m(&self.c, &o.b, &self.d, &o.d),
        }
    }

    /// Image of a point of `P¹(k)`; `None` is `∞`.
    pub fn apply<V: ValuedField<Elem = E>>(&self, k: &V, z: Option<&E>) -> Result<Option<E>> {
        let (num, den) = match z {
            Some(z) => (
                k.add(&k.mul(&self.a, z), &self.b),
                k.add(&k.mul(&self.c, z), &self.d),
            ),
            None => (self.a.clone(), self.c.clone()),
        };
        if k.is_exact_zero(&den) {
            Ok(None)
        } else {
            Ok(Some(k.div(&num, &den)?))
        }
    }

    pub fn is_affine<V: ValuedField<Elem = E>>(&self, k: &V) -> bool {
        k.is_exact_zero(&self.c)
    }
}
