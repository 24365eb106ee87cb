//! Exact arithmetic in computable non-Archimedean fields.
//!
//! Three field models implement [`ValuedField`]:
//!
//! * [`Puiseux`] over [`Rationals`]: truncated Puiseux series in `t` with
//!   rational coefficients (equal characteristic zero).
//! * [`Puiseux`] over [`FiniteField`]: the same over `F_{p^m}` (equal
//!   characteristic `p`).
//! * [`Radical`]: `Q(p^{1/N})` with the `p`-adic valuation normalized so
//!   that `ord(p) = 1` (mixed characteristic).
//!
//! Invariants shared by all models:
//!
//! * an element carries either an `Exact` flag or a precision cap `ρ`; only
//!   `Exact` elements can be certified zero;
//! * `ord` of an element whose every known term lies at or beyond its cap is
//!   undecidable and reported as [`Error::ZeroWithinPrecision`];
//! * precision propagates as `min(ρ_x, ρ_y)` under addition and
//!   `min(ρ_x + ord y, ρ_y + ord x)` under multiplication.

mod coeff;
mod finite;
mod mixed;
mod series;

use std::fmt::Debug;

use num_rational::{BigRational, Ratio};
use serde::Serialize;

pub use coeff::{
    fmt_rational, is_prime, padic_val, reduce_mod_p, CoeffField, Extension, Rationals,
};
pub use finite::{FiniteField, Fq};
pub use mixed::{MixedElem, Radical};
pub use series::{Puiseux, Series};

use crate::error::{Error, Result};

/// Exponents, radii and valuations: exact small rationals.
pub type Exp = Ratio<i64>;

pub fn exp(n: i64, d: i64) -> Exp {
    Ratio::new(n, d)
}

pub fn exp_int(n: i64) -> Exp {
    Ratio::from_integer(n)
}

/// Canonical text of an exponent: `3`, `-1/2`.
pub fn fmt_exp(e: &Exp) -> String {
    if *e.denom() == 1 {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// `ord_k` of an element; `Infinite` only for certified zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(Exp),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<Exp> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_str(&fmt_exp(v)),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// What is known about the valuation of a possibly truncated element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdInfo {
    /// The valuation is exactly this value.
    Exact(Exp),
    /// No term below the cap: the valuation is at least this value.
    AtLeast(Exp),
    /// Certified zero.
    Zero,
}

impl OrdInfo {
    /// A lower bound usable in precision propagation; `None` means `+∞`.
    pub fn lower_bound(self) -> Option<Exp> {
        match self {
            OrdInfo::Exact(v) | OrdInfo::AtLeast(v) => Some(v),
            OrdInfo::Zero => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FieldMode {
    #[serde(rename = "equichar0")]
    EquicharZero,
    #[serde(rename = "equicharp")]
    EquicharP,
    #[serde(rename = "mixed")]
    Mixed,
}

impl FieldMode {
    pub fn name(self) -> &'static str {
        match self {
            FieldMode::EquicharZero => "equichar0",
            FieldMode::EquicharP => "equicharp",
            FieldMode::Mixed => "mixed",
        }
    }
}

/// Descriptor of the active field model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroundField {
    pub mode: FieldMode,
    /// Residue characteristic; 0 in equal characteristic zero.
    pub p: u64,
    /// Ramification index `N` in force (exponents live in `(1/N)Z`).
    pub ram_index: u32,
    /// Whether `N` may be raised on demand.
    pub raisable: bool,
    /// Normalized base: `|x| = q_k^{-ord(x)}`.
    pub q_k: String,
    pub coeff_field: String,
}

/// A computable valued field. Elements are plain values; arithmetic goes
/// through the field context.
pub trait ValuedField: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync + 'static;
    type Res: CoeffField;

    fn residue_field(&self) -> &Self::Res;
    fn ground(&self) -> GroundField;
    /// Characteristic of the field itself.
    fn characteristic(&self) -> u64;
    /// Characteristic of the residue field.
    fn residue_char(&self) -> u64 {
        self.residue_field().characteristic()
    }
    fn ram_index(&self) -> u32;
    /// Relative precision used when a result would otherwise be infinite.
    fn precision_cap(&self) -> Exp;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_ratio(&self, q: &BigRational) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn ord_info(&self, a: &Self::Elem) -> OrdInfo;
    /// Precision cap of an element, `None` when exact.
    fn precision(&self, a: &Self::Elem) -> Option<Exp>;
    /// Drop everything at or beyond `cap`.
    fn truncate(&self, a: &Self::Elem, cap: Exp) -> Self::Elem;
    /// The known part of `a` as an exact element (a representative of the
    /// class of `a` modulo its precision).
    fn exact_part(&self, a: &Self::Elem) -> Self::Elem;
    fn residue(&self, a: &Self::Elem) -> Result<<Self::Res as CoeffField>::Elt>;
    /// Canonical lift of a residue class.
    fn lift(&self, r: &<Self::Res as CoeffField>::Elt) -> Self::Elem;
    /// The uniformizer power `π^s`.
    fn unif_pow(&self, s: Exp) -> Result<Self::Elem>;
    fn in_value_group(&self, s: Exp) -> bool;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    /// The same model with ramification index raised to a multiple `n`.
    fn with_ram_index(&self, n: u32) -> Result<Self>;
    /// Transport an element of `src` (a subfield) into `self`.
    fn embed_from(&self, src: &Self, a: &Self::Elem) -> Result<Self::Elem>;

    fn ord(&self, a: &Self::Elem) -> Result<Valuation> {
        match self.ord_info(a) {
            OrdInfo::Exact(v) => Ok(Valuation::Finite(v)),
            OrdInfo::Zero => Ok(Valuation::Infinite),
            OrdInfo::AtLeast(c) => Err(Error::ZeroWithinPrecision(format!(
                "no term below cap {}",
                fmt_exp(&c)
            ))),
        }
    }

    /// `ord` for an element that must be nonzero.
    fn ord_finite(&self, a: &Self::Elem) -> Result<Exp> {
        match self.ord(a)? {
            Valuation::Finite(v) => Ok(v),
            Valuation::Infinite => Err(Error::ZeroWithinPrecision("element is zero".into())),
        }
    }

    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        matches!(self.ord_info(a), OrdInfo::Zero)
    }

    /// `a · π^s`.
    fn shift(&self, a: &Self::Elem, s: Exp) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.unif_pow(s)?))
    }

    /// Leading data: `a = π^v (u + ...)` with `u` a nonzero residue.
    fn leading(&self, a: &Self::Elem) -> Result<(Exp, <Self::Res as CoeffField>::Elt)> {
        let v = self.ord_finite(a)?;
        let unit = self.shift(a, -v)?;
        Ok((v, self.residue(&unit)?))
    }

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn mode(&self) -> FieldMode {
        self.ground().mode
    }
}

pub(crate) fn min_opt(a: Option<Exp>, b: Option<Exp>) -> Option<Exp> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

pub(crate) fn add_opt(a: Option<Exp>, b: Option<Exp>) -> Option<Exp> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

/// Least common multiple of small positive integers.
pub fn lcm_u32(a: u32, b: u32) -> u32 {
    num_integer::lcm(a, b)
}

/// Extend a field model by a root of `minpoly` (coefficients low to high in
/// the residue field). Succeeds for finite-field towers and for linear
/// polynomials; anything else leaves the computable model.
pub fn extend_coefficients<F: CoeffField>(field: &F, minpoly: &[F::Elt]) -> Result<Extension<F>> {
    field.extend(minpoly)
}
