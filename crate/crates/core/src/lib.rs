//! Local degrees and ramification loci of rational maps on the Berkovich
//! projective line, computed with exact arithmetic.
//!
//! The engine is generic over a [`valfield::ValuedField`]; the aliases below
//! name the three concrete fields it ships with.

pub mod berkline;
pub mod cli;
pub mod error;
pub mod mult;
pub mod ramlocus;
pub mod ratmap;
pub mod valfield;

pub use error::{Error, Result};

/// Puiseux series over `Q` (equal characteristic zero).
pub type EquicharZeroField = valfield::Puiseux<valfield::Rationals>;
/// Puiseux series over `F_{p^m}` (equal characteristic `p`).
pub type EquicharPField = valfield::Puiseux<valfield::FiniteField>;
/// `Q(p^{1/N})` with the `p`-adic valuation (mixed characteristic).
pub type MixedField = valfield::Radical;
/// A rational map over a field model.
pub type Map<V> = ratmap::RationalMap<<V as valfield::ValuedField>::Elem>;
/// A point of the Berkovich line over a field model.
pub type Point<V> = berkline::BerkPoint<<V as valfield::ValuedField>::Elem>;
