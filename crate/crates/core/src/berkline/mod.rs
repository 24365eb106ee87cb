//! Points of the Berkovich projective line, in the ord scale.
//!
//! A ball point `ζ_{a,s}` is the sup-seminorm over `{ord(z - a) ≥ s}`, so
//! larger `s` means a smaller disk. Classical points sit at `s = +∞` and the
//! point `∞` above everything.

mod skeleton;

pub use skeleton::{Edge, EdgeStatus, Skeleton, Vertex};

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratmap::{compose_mobius, Mobius, Poly, RPoly, RationalMap, ResPoly};
use crate::valfield::{fmt_exp, CoeffField, Exp, OrdInfo, Valuation, ValuedField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PointType {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II")]
    II,
    #[serde(rename = "III")]
    III,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BerkPoint<E> {
    Classical(E),
    Infinity,
    Ball { center: E, s: Exp, kind: PointType },
}

/// Result of comparing two points in the tree order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeOrder {
    Below,
    Above,
    Equal,
    Incomparable,
}

/// A tangent direction at a type II point `ζ_{a,s}`, in the coordinate
/// `z ↦ a + π^s z` (canonical at the Gauss point).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Direction<T> {
    Finite(T),
    Infinity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentDirection<E, T> {
    pub at: BerkPoint<E>,
    pub coord: Mobius<E>,
    pub dir: Direction<T>,
}

/// `ord(x)` compared against a threshold; unresolved precision is only an
/// error when it matters.
fn ord_at_least<V: ValuedField>(k: &V, x: &V::Elem, s: Exp) -> Result<bool> {
    match k.ord_info(x) {
        OrdInfo::Zero => Ok(true),
        OrdInfo::Exact(v) => Ok(v >= s),
        OrdInfo::AtLeast(c) if c >= s => Ok(true),
        OrdInfo::AtLeast(_) => Err(Error::ZeroWithinPrecision(
            "distance between centers undecidable".into(),
        )),
    }
}

/// `min(ord(x), cap)`, which is decidable whenever the precision reaches `cap`.
fn ord_capped<V: ValuedField>(k: &V, x: &V::Elem, cap: Option<Exp>) -> Result<Option<Exp>> {
    match (k.ord_info(x), cap) {
        (OrdInfo::Zero, c) => Ok(c),
        (OrdInfo::Exact(v), Some(c)) => Ok(Some(v.min(c))),
        (OrdInfo::Exact(v), None) => Ok(Some(v)),
        (OrdInfo::AtLeast(p), Some(c)) if p >= c => Ok(Some(c)),
        _ => Err(Error::ZeroWithinPrecision(
            "distance between centers undecidable".into(),
        )),
    }
}

impl<E: Clone + PartialEq> BerkPoint<E> {
    /// `ζ_{a,s}`; an inexact center is replaced by its known part, which
    /// must be accurate to at least `s`.
    pub fn ball<V: ValuedField<Elem = E>>(k: &V, center: &E, s: Exp) -> Result<Self> {
        if k.precision(center).is_some_and(|p| p < s) {
            return Err(Error::ZeroWithinPrecision(format!(
                "center known only below radius ord {}",
                fmt_exp(&s)
            )));
        }
        let kind = if k.in_value_group(s) {
            PointType::II
        } else {
            PointType::III
        };
        // terms at or past the radius do not move the ball
        Ok(BerkPoint::Ball {
            center: k.exact_part(&k.truncate(center, s)),
            s,
            kind,
        })
    }

    pub fn gauss<V: ValuedField<Elem = E>>(k: &V) -> Self {
        BerkPoint::Ball {
            center: k.zero(),
            s: Exp::from_integer(0),
            kind: PointType::II,
        }
    }

    pub fn kind(&self) -> PointType {
        match self {
            BerkPoint::Ball { kind, .. } => *kind,
            _ => PointType::I,
        }
    }

    pub fn is_ball(&self) -> bool {
        matches!(self, BerkPoint::Ball { .. })
    }

    /// Radius exponent; `None` for classical points and `∞`.
    pub fn s(&self) -> Option<Exp> {
        match self {
            BerkPoint::Ball { s, .. } => Some(*s),
            _ => None,
        }
    }

    pub fn center(&self) -> Option<&E> {
        match self {
            BerkPoint::Ball { center, .. } | BerkPoint::Classical(center) => Some(center),
            BerkPoint::Infinity => None,
        }
    }

    /// Radius exponent as an ordering key: `+∞` for classical, `-∞` for `∞`.
    fn s_key(&self) -> (i8, Exp) {
        match self {
            BerkPoint::Infinity => (-1, Exp::from_integer(0)),
            BerkPoint::Ball { s, .. } => (0, *s),
            BerkPoint::Classical(_) => (1, Exp::from_integer(0)),
        }
    }

    pub fn fmt<V: ValuedField<Elem = E>>(&self, k: &V) -> String {
        match self {
            BerkPoint::Infinity => "inf".into(),
            BerkPoint::Classical(a) => format!("pt({})", k.fmt_elem(a)),
            BerkPoint::Ball { center, s, .. } => {
                format!("zeta({}; ord={})", k.fmt_elem(center), fmt_exp(s))
            }
        }
    }

    /// Tree order: `Below` means `self ≺ o` (strictly smaller disk).
    pub fn compare<V: ValuedField<Elem = E>>(&self, k: &V, o: &Self) -> Result<TreeOrder> {
        use BerkPoint::*;
        match (self, o) {
            (Infinity, Infinity) => Ok(TreeOrder::Equal),
            (Infinity, _) => Ok(TreeOrder::Above),
            (_, Infinity) => Ok(TreeOrder::Below),
            (Classical(a), Classical(b)) => {
                if a == b {
                    // the same leaf, possibly a truncated expansion
                    return Ok(TreeOrder::Equal);
                }
                let diff = k.sub(a, b);
                match k.ord_info(&diff) {
                    OrdInfo::Zero => Ok(TreeOrder::Equal),
                    OrdInfo::Exact(_) => Ok(TreeOrder::Incomparable),
                    OrdInfo::AtLeast(_) => Err(Error::ZeroWithinPrecision(
                        "classical points not separated".into(),
                    )),
                }
            }
            _ => {
                let (a, b) = (self.center().unwrap(), o.center().unwrap());
                let diff = k.sub(a, b);
                let (sa, sb) = (self.s_key(), o.s_key());
                // the larger disk decides containment
                let bigger = if sa <= sb { sa } else { sb };
                let inside = match bigger {
                    (0, s) => ord_at_least(k, &diff, s)?,
                    _ => unreachable!("classical pairs handled above"),
                };
                Ok(match (inside, sa.cmp(&sb)) {
                    (false, _) => TreeOrder::Incomparable,
                    (true, Ordering::Equal) => TreeOrder::Equal,
                    (true, Ordering::Greater) => TreeOrder::Below,
                    (true, Ordering::Less) => TreeOrder::Above,
                })
            }
        }
    }

    pub fn same<V: ValuedField<Elem = E>>(&self, k: &V, o: &Self) -> Result<bool> {
        Ok(self.compare(k, o)? == TreeOrder::Equal)
    }

    /// `self ⪯ o`.
    pub fn below_or_eq<V: ValuedField<Elem = E>>(&self, k: &V, o: &Self) -> Result<bool> {
        Ok(matches!(
            self.compare(k, o)?,
            TreeOrder::Below | TreeOrder::Equal
        ))
    }

    /// Least upper bound `x ∨ y`.
    pub fn join<V: ValuedField<Elem = E>>(&self, k: &V, o: &Self) -> Result<Self> {
        use BerkPoint::*;
        match (self, o) {
            (Infinity, _) | (_, Infinity) => Ok(Infinity),
            _ => {
                let (a, b) = (self.center().unwrap(), o.center().unwrap());
                let cap = match (self.s(), o.s()) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (Some(x), None) | (None, Some(x)) => Some(x),
                    (None, None) => None,
                };
                let diff = k.sub(a, b);
                if cap.is_none() && k.is_exact_zero(&diff) {
                    return Ok(self.clone());
                }
                let s = ord_capped(k, &diff, cap)?
                    .expect("distinct classical points have finite distance");
                // keep the center of a ball argument when there is one
                let c = if self.is_ball() || !o.is_ball() { a } else { b };
                BerkPoint::ball(k, c, s)
            }
        }
    }

    /// Path distance in the ord scale; `None` is `+∞`.
    pub fn rho<V: ValuedField<Elem = E>>(&self, k: &V, o: &Self) -> Result<Option<Exp>> {
        if self.same(k, o)? {
            return Ok(Some(Exp::from_integer(0)));
        }
        let j = self.join(k, o)?;
        match (self.s(), o.s(), j.s()) {
            (Some(x), Some(y), Some(z)) => Ok(Some(x + y - z - z)),
            _ => Ok(None),
        }
    }

    /// The point `ζ_{a,s}` on the segment from `self` upward at radius `s`
    /// (`s` must not exceed the radius of `self`).
    pub fn ancestor_at<V: ValuedField<Elem = E>>(&self, k: &V, s: Exp) -> Result<Self> {
        match self {
            BerkPoint::Infinity => Err(Error::Invalid("∞ has no ancestors".into())),
            BerkPoint::Classical(a) => BerkPoint::ball(k, a, s),
            BerkPoint::Ball { center, s: s0, .. } => {
                if s > *s0 {
                    return Err(Error::Invalid("ancestor radius below the point".into()));
                }
                BerkPoint::ball(k, center, s)
            }
        }
    }

    /// `z ↦ a + π^s z`, sending the Gauss point to this type II point.
    pub fn coord<V: ValuedField<Elem = E>>(&self, k: &V) -> Result<Mobius<E>> {
        match self {
            BerkPoint::Ball {
                center,
                s,
                kind: PointType::II,
            } => Mobius::affine(k, k.unif_pow(*s)?, center.clone()),
            BerkPoint::Ball { .. } => Err(Error::TypeIIIUnsupported(
                "no coordinate change sends a type III point to the Gauss point".into(),
            )),
            _ => Err(Error::Invalid(
                "coordinate change needs a ball point".into(),
            )),
        }
    }
}

/// The direction at the type II point `x` containing `target`.
pub fn direction_from<V: ValuedField>(
    k: &V,
    x: &BerkPoint<V::Elem>,
    target: &BerkPoint<V::Elem>,
) -> Result<TangentDirection<V::Elem, <V::Res as CoeffField>::Elt>> {
    let coord = x.coord(k)?;
    let dir = match target.compare(k, x)? {
        TreeOrder::Equal => {
            return Err(Error::Invalid(
                "target coincides with the base point".into(),
            ))
        }
        TreeOrder::Below => {
            let (BerkPoint::Ball { center: a, s, .. }, Some(b)) = (x, target.center()) else {
                unreachable!("x is a ball and target lies below it")
            };
            let rel = k.shift(&k.sub(b, a), -*s)?;
            Direction::Finite(k.residue(&rel)?)
        }
        _ => Direction::Infinity,
    };
    Ok(TangentDirection {
        at: x.clone(),
        coord,
        dir,
    })
}

/// `ord |f(x)|`: the Gauss-type sup-norm after shifting to the center.
pub fn seminorm_eval<V: ValuedField>(
    k: &V,
    f: &Poly<V::Elem>,
    x: &BerkPoint<V::Elem>,
) -> Result<Valuation> {
    match x {
        BerkPoint::Infinity => Err(Error::Invalid("seminorm at ∞ is not finite".into())),
        BerkPoint::Classical(a) => k.ord(&f.eval(k, a)),
        BerkPoint::Ball { center, s, .. } => {
            Ok(match f.taylor_shift(k, center).gauss_ord(k, *s)? {
                Some(v) => Valuation::Finite(v),
                None => Valuation::Infinite,
            })
        }
    }
}

/// `ord |φ(x)| = ord |f(x)| - ord |g(x)|` at a ball point.
pub fn rational_seminorm<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    x: &BerkPoint<V::Elem>,
) -> Result<Exp> {
    let num = seminorm_eval(k, &phi.f, x)?;
    let den = seminorm_eval(k, &phi.g, x)?;
    match (num, den) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Ok(a - b),
        _ => Err(Error::Invalid(
            "seminorm is not finite at this point".into(),
        )),
    }
}

/// `φ(x)`. For a ball, the image ball is found by walking its center:
/// `c ← c + lift(κ)π^w` while `(ψ - c)/π^w` reduces to a constant `κ`.
pub fn image_point<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    x: &BerkPoint<V::Elem>,
) -> Result<BerkPoint<V::Elem>> {
    match x {
        BerkPoint::Infinity => Ok(phi
            .eval_infinity(k)?
            .map_or(BerkPoint::Infinity, BerkPoint::Classical)),
        BerkPoint::Classical(a) => Ok(phi
            .eval(k, a)?
            .map_or(BerkPoint::Infinity, BerkPoint::Classical)),
        BerkPoint::Ball {
            kind: PointType::III,
            ..
        } => Err(Error::TypeIIIUnsupported(
            "image of a type III point needs a coordinate change".into(),
        )),
        BerkPoint::Ball { .. } => {
            let id = Mobius::identity(k);
            let psi = compose_mobius(k, &id, phi, &x.coord(k)?)?;
            let (c, w) = image_of_gauss(k, &psi)?;
            BerkPoint::ball(k, &c, w)
        }
    }
}

/// Center and radius of `ψ(ζ_{0,0})`.
pub(crate) fn image_of_gauss<V: ValuedField>(
    k: &V,
    psi: &RationalMap<V::Elem>,
) -> Result<(V::Elem, Exp)> {
    let zero = Exp::from_integer(0);
    let vg = psi.g.gauss_ord(k, zero)?.expect("denominator is nonzero");
    let g_red = residue_poly(k, &psi.g, vg)?;
    let mut c = k.zero();
    let budget = 8 * (k.precision_cap().to_integer().unsigned_abs() as usize + 8);
    for _ in 0..budget {
        let num = psi.f.sub(k, &psi.g.scale(k, &c));
        let vf = num
            .gauss_ord(k, zero)?
            .expect("nonconstant map minus a constant is nonzero");
        let w = vf - vg;
        // (ψ - c)/π^w reduces to f_red/g_red; it is constant iff they are proportional
        let f_red = residue_poly(k, &num, vf)?;
        let kr = k.residue_field();
        let (lf, lg) = (f_red.lead().unwrap().clone(), g_red.lead().unwrap().clone());
        if f_red.scale(kr, &lg) != g_red.scale(kr, &lf) {
            return Ok((c, w));
        }
        let kappa = kr.div(&lf, &lg).expect("nonzero leading residue");
        c = k.add(&c, &k.mul(&k.lift(&kappa), &k.unif_pow(w)?));
    }
    Err(Error::PrecisionExhausted(
        "image center did not stabilize".into(),
    ))
}

/// Residues of the coefficients of `p / π^v` (`v` at most the Gauss ord of `p`).
pub(crate) fn residue_poly<V: ValuedField>(k: &V, p: &Poly<V::Elem>, v: Exp) -> Result<ResPoly<V>> {
    let mut c = Vec::with_capacity(p.c.len());
    for x in &p.c {
        c.push(k.residue(&k.shift(x, -v)?)?);
    }
    Ok(RPoly::new(k.residue_field(), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::{exp, exp_int, Puiseux, Rationals, Series};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type K = Puiseux<Rationals>;
    type P = BerkPoint<Series<BigRational>>;

    fn k() -> K {
        Puiseux::new(Rationals, exp_int(32), 1)
    }
    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn zeta(k: &K, c: Series<BigRational>, s: Exp) -> P {
        BerkPoint::ball(k, &c, s).unwrap()
    }
    fn ints(k: &K, c: &[i64]) -> Poly<Series<BigRational>> {
        Poly::new(k, c.iter().map(|&n| k.from_i64(n)).collect())
    }

    #[test]
    fn seminorm_examples() {
        let k = k();
        let g = P::gauss(&k);
        assert_eq!(
            seminorm_eval(&k, &ints(&k, &[0, 1]), &g).unwrap(),
            Valuation::Finite(exp_int(0))
        );
        let a = k.series(vec![(exp_int(1), q(2))]);
        let x = zeta(&k, a.clone(), exp_int(3));
        let lin = Poly::new(&k, vec![k.neg(&a), k.one()]);
        assert_eq!(
            seminorm_eval(&k, &lin, &x).unwrap(),
            Valuation::Finite(exp_int(3))
        );
        let f = Poly::new(&k, vec![k.monomial(q(-1), exp_int(1)), k.zero(), k.one()]);
        let x = zeta(&k, k.zero(), exp(1, 2));
        assert_eq!(
            seminorm_eval(&k, &f, &x).unwrap(),
            Valuation::Finite(exp_int(1))
        );
    }

    #[test]
    fn rational_seminorm_examples() {
        let k = k();
        let x = zeta(&k, k.zero(), exp_int(2));
        let inv = RationalMap::new(&k, ints(&k, &[1]), ints(&k, &[0, 1])).unwrap();
        assert_eq!(rational_seminorm(&k, &inv, &x).unwrap(), exp_int(-2));
        let sq = RationalMap::polynomial(&k, ints(&k, &[0, 0, 1]));
        assert_eq!(rational_seminorm(&k, &sq, &x).unwrap(), exp_int(4));
        let f = Poly::new(&k, vec![k.monomial(q(1), exp_int(1)), k.one()]);
        let phi = RationalMap::new(&k, f, ints(&k, &[0, 1])).unwrap();
        assert_eq!(rational_seminorm(&k, &phi, &x).unwrap(), exp_int(-1));
    }

    #[test]
    fn join_and_rho_examples() {
        let k = k();
        let x = zeta(&k, k.zero(), exp_int(1));
        let y = zeta(&k, k.one(), exp_int(1));
        let j = x.join(&k, &y).unwrap();
        assert!(j.same(&k, &P::gauss(&k)).unwrap());
        assert!(x.join(&k, &x).unwrap().same(&k, &x).unwrap());
        let t = k.monomial(q(1), exp_int(1));
        let tt = k.add(&t, &k.monomial(q(1), exp_int(2)));
        let j = zeta(&k, t.clone(), exp_int(3))
            .join(&k, &zeta(&k, tt, exp_int(5)))
            .unwrap();
        assert!(j.same(&k, &zeta(&k, t, exp_int(2))).unwrap());
        assert_eq!(x.rho(&k, &P::gauss(&k)).unwrap(), Some(exp_int(1)));
        assert_eq!(
            zeta(&k, k.zero(), exp_int(-1))
                .rho(&k, &P::gauss(&k))
                .unwrap(),
            Some(exp_int(1))
        );
        assert_eq!(x.rho(&k, &x).unwrap(), Some(exp_int(0)));
        assert_eq!(x.rho(&k, &y).unwrap(), Some(exp_int(2)));
        assert_eq!(x.rho(&k, &P::Infinity).unwrap(), None);
    }

    #[test]
    fn ball_equality_uses_containment() {
        let k = k();
        let t2 = k.monomial(q(1), exp_int(2));
        assert!(zeta(&k, k.zero(), exp_int(1))
            .same(&k, &zeta(&k, t2, exp_int(1)))
            .unwrap());
    }

    #[test]
    fn direction_examples() {
        let k = k();
        let g = P::gauss(&k);
        let d = direction_from(&k, &g, &zeta(&k, k.zero(), exp_int(2))).unwrap();
        assert_eq!(d.dir, Direction::Finite(q(0)));
        assert_eq!(
            direction_from(&k, &g, &P::Infinity).unwrap().dir,
            Direction::Infinity
        );
        let c = k.add(&k.one(), &k.monomial(q(1), exp_int(1)));
        assert_eq!(
            direction_from(&k, &g, &zeta(&k, c, exp_int(1)))
                .unwrap()
                .dir,
            Direction::Finite(q(1))
        );
    }

    #[test]
    fn image_point_examples() {
        let k = k();
        let sq = RationalMap::polynomial(&k, ints(&k, &[0, 0, 1]));
        let y = image_point(&k, &sq, &zeta(&k, k.zero(), exp_int(1))).unwrap();
        assert!(y.same(&k, &zeta(&k, k.zero(), exp_int(2))).unwrap());
        let shift = RationalMap::polynomial(&k, ints(&k, &[1, 1]));
        let a = k.monomial(q(3), exp(1, 2));
        let y = image_point(&k, &shift, &zeta(&k, a.clone(), exp_int(2))).unwrap();
        assert!(y
            .same(&k, &zeta(&k, k.add(&a, &k.one()), exp_int(2)))
            .unwrap());
        let t = k.monomial(q(1), exp_int(1));
        let f = Poly::new(&k, vec![k.zero(), t.clone(), k.one()]);
        let g = Poly::new(&k, vec![k.one(), k.zero(), t]);
        let phi = RationalMap::new(&k, f, g).unwrap();
        assert!(image_point(&k, &phi, &P::gauss(&k))
            .unwrap()
            .same(&k, &P::gauss(&k))
            .unwrap());
        // a ball whose image center must be walked: z^2 + 1 on ζ_{0,1} ↦ ζ_{1,2}
        let phi = RationalMap::polynomial(&k, ints(&k, &[1, 0, 1]));
        let y = image_point(&k, &phi, &zeta(&k, k.zero(), exp_int(1))).unwrap();
        assert!(y.same(&k, &zeta(&k, k.one(), exp_int(2))).unwrap());
        // pole at the center: 1/z on ζ_{0,2} ↦ ζ_{0,-2}
        let inv = RationalMap::new(&k, ints(&k, &[1]), ints(&k, &[0, 1])).unwrap();
        let y = image_point(&k, &inv, &zeta(&k, k.zero(), exp_int(2))).unwrap();
        assert!(y.same(&k, &zeta(&k, k.zero(), exp_int(-2))).unwrap());
    }

    #[test]
    fn hull_examples() {
        let k = k();
        let x = zeta(&k, k.zero(), exp_int(1));
        let y = zeta(&k, k.one(), exp_int(1));
        let h = Skeleton::hull(&k, &[x.clone(), y]).unwrap();
        assert_eq!(h.vertices.len(), 3);
        assert!(h.is_tree());
        assert!(h.edges.iter().all(|e| e.length == Some(exp_int(1))));
        let h = Skeleton::hull(&k, &[x]).unwrap();
        assert_eq!((h.vertices.len(), h.edges.len()), (1, 0));
        let h = Skeleton::hull(&k, &[P::Classical(k.zero()), P::Infinity, P::gauss(&k)]).unwrap();
        assert_eq!(h.edges.len(), 2);
        assert!(h.edges.iter().all(|e| e.length.is_none()));
    }
}
