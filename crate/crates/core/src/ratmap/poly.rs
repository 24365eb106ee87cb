//! Dense polynomials over a valued field, and Newton polygons.

use crate::error::{Error, Result};
use crate::valfield::{Exp, OrdInfo, ValuedField};

/// Coefficients low to high. Trailing certified zeros are trimmed; a
/// trailing coefficient that is merely unresolved is kept.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    pub c: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn new<V: ValuedField<Elem = E>>(k: &V, c: Vec<E>) -> Self {
        let mut p = Poly { c };
        p.trim(k);
        p
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn constant<V: ValuedField<Elem = E>>(k: &V, a: E) -> Self {
        Poly::new(k, vec![a])
    }

    /// The polynomial `z`.
    pub fn z<V: ValuedField<Elem = E>>(k: &V) -> Self {
        Poly {
            c: vec![k.zero(), k.one()],
        }
    }

    fn trim<V: ValuedField<Elem = E>>(&mut self, k: &V) {
        while self.c.last().is_some_and(|x| k.is_exact_zero(x)) {
            self.c.pop();
        }
    }

    /// Formal degree (index of the last stored coefficient); `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff<V: ValuedField<Elem = E>>(&self, k: &V, i: usize) -> E {
        self.c.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn add<V: ValuedField<Elem = E>>(&self, k: &V, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            k,
            (0..n)
                .map(|i| k.add(&self.coeff(k, i), &o.coeff(k, i)))
                .collect(),
        )
    }

    pub fn sub<V: ValuedField<Elem = E>>(&self, k: &V, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            k,
            (0..n)
                .map(|i| k.sub(&self.coeff(k, i), &o.coeff(k, i)))
                .collect(),
        )
    }

    pub fn neg<V: ValuedField<Elem = E>>(&self, k: &V) -> Self {
        Poly {
            c: self.c.iter().map(|x| k.neg(x)).collect(),
        }
    }

    pub fn mul<V: ValuedField<Elem = E>>(&self, k: &V, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![k.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if k.is_exact_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if k.is_exact_zero(b) {
                    continue;
                }
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Poly::new(k, out)
    }

    pub fn scale<V: ValuedField<Elem = E>>(&self, k: &V, a: &E) -> Self {
        Poly::new(k, self.c.iter().map(|x| k.mul(x, a)).collect())
    }

    pub fn pow<V: ValuedField<Elem = E>>(&self, k: &V, n: usize) -> Self {
        let mut acc = Poly::constant(k, k.one());
        for _ in 0..n {
            acc = acc.mul(k, self);
        }
        acc
    }

    pub fn eval<V: ValuedField<Elem = E>>(&self, k: &V, x: &E) -> E {
        let mut acc = k.zero();
        for c in self.c.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative<V: ValuedField<Elem = E>>(&self, k: &V) -> Self {
        Poly::new(
            k,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.mul(&k.from_i64(i as i64), c))
                .collect(),
        )
    }

    /// `P(z + a)`, computed with Hasse derivatives so it is valid in every
    /// characteristic.
    pub fn taylor_shift<V: ValuedField<Elem = E>>(&self, k: &V, a: &E) -> Self {
        let n = self.c.len();
        // Repeated synthetic division: exact in any characteristic.
        let mut coeffs = self.c.clone();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            // divide coeffs by (z - a): remainder is the next Taylor coefficient
            let mut rem = k.zero();
            let mut quot = vec![k.zero(); coeffs.len().saturating_sub(1)];
            for i in (0..coeffs.len()).rev() {
                let cur = k.add(&coeffs[i], &k.mul(&rem, a));
                if i > 0 {
                    quot[i - 1] = cur.clone();
                }
                rem = cur;
            }
            out.push(rem);
            coeffs = quot;
        }
        Poly::new(k, out)
    }

    /// `P(α z)`.
    pub fn scale_var<V: ValuedField<Elem = E>>(&self, k: &V, alpha: &E) -> Self {
        let mut pw = k.one();
        let mut out = Vec::with_capacity(self.c.len());
        for c in &self.c {
            out.push(k.mul(c, &pw));
            pw = k.mul(&pw, alpha);
        }
        Poly::new(k, out)
    }

    /// `z^n P(1/z)` for `n ≥ deg P`: the homogeneous coordinate swap.
    pub fn reversed<V: ValuedField<Elem = E>>(&self, k: &V, n: usize) -> Self {
        let mut c = self.c.clone();
        c.resize(n + 1, k.zero());
        c.reverse();
        Poly::new(k, c)
    }

    /// Multiplicity of `z = 0` as a certified root (leading exact zeros).
    pub fn zero_order<V: ValuedField<Elem = E>>(&self, k: &V) -> usize {
        self.c.iter().take_while(|x| k.is_exact_zero(x)).count()
    }

    /// Sup-norm in the ord scale on the disk `ord z ≥ s`: `min_i ord(c_i) + i s`.
    pub fn gauss_ord<V: ValuedField<Elem = E>>(&self, k: &V, s: Exp) -> Result<Option<Exp>> {
        let mut best: Option<Exp> = None;
        let mut unknown: Option<Exp> = None;
        for (i, c) in self.c.iter().enumerate() {
            let shift = s * Exp::from_integer(i as i64);
            match k.ord_info(c) {
                OrdInfo::Exact(v) => best = Some(best.map_or(v + shift, |b: Exp| b.min(v + shift))),
                OrdInfo::AtLeast(v) => {
                    unknown = Some(unknown.map_or(v + shift, |u: Exp| u.min(v + shift)))
                }
                OrdInfo::Zero => {}
            }
        }
        match (best, unknown) {
            (Some(b), Some(u)) if u <= b => Err(Error::ZeroWithinPrecision(
                "sup-norm not certified within precision".into(),
            )),
            (None, Some(_)) => Err(Error::ZeroWithinPrecision(
                "polynomial not certified nonzero".into(),
            )),
            (b, _) => Ok(b),
        }
    }
}

/// One edge of a lower Newton polygon: the roots it accounts for have
/// valuation `root_ord`, and there are `len` of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSegment {
    pub from: usize,
    pub to: usize,
    pub root_ord: Exp,
}

impl NewtonSegment {
    pub fn len(&self) -> usize {
        self.to - self.from
    }
    pub fn is_empty(&self) -> bool {
        self.to == self.from
    }
}

/// Lower convex hull of `(i, ord c_i)` over the certified-nonzero
/// coefficients, ignoring a certified-zero tail at `z = 0` (those roots are
/// reported as `zero_roots`). Coefficients known only up to a cap must lie
/// strictly above the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub zero_roots: usize,
    pub segments: Vec<NewtonSegment>,
    pub points: Vec<(usize, Exp)>,
}

impl NewtonPolygon {
    pub fn of<V: ValuedField>(k: &V, p: &Poly<V::Elem>) -> Result<Self> {
        let zero_roots = p.zero_order(k);
        let mut pts: Vec<(usize, Exp)> = Vec::new();
        let mut caps: Vec<(usize, Exp)> = Vec::new();
        for (i, c) in p.c.iter().enumerate().skip(zero_roots) {
            match k.ord_info(c) {
                OrdInfo::Exact(v) => pts.push((i, v)),
                OrdInfo::AtLeast(v) => caps.push((i, v)),
                OrdInfo::Zero => {}
            }
        }
        if pts.is_empty() {
            return Err(Error::ZeroWithinPrecision(
                "no certified coefficient".into(),
            ));
        }
        if pts[0].0 != zero_roots || pts.last().map(|x| x.0) != p.deg() {
            return Err(Error::ZeroWithinPrecision(
                "extreme Newton polygon vertex not certified".into(),
            ));
        }
        let mut hull: Vec<(usize, Exp)> = Vec::new();
        for &pt in &pts {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                // drop b if it lies on or above segment a→pt
                let lhs = (b.1 - a.1) * Exp::from_integer((pt.0 - a.0) as i64);
                let rhs = (pt.1 - a.1) * Exp::from_integer((b.0 - a.0) as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments: Vec<NewtonSegment> = hull
            .windows(2)
            .map(|w| NewtonSegment {
                from: w[0].0,
                to: w[1].0,
                root_ord: -(w[1].1 - w[0].1) / Exp::from_integer((w[1].0 - w[0].0) as i64),
            })
            .collect();
        let poly = NewtonPolygon {
            zero_roots,
            segments,
            points: hull,
        };
        for (i, cap) in caps {
            if cap <= poly.height_at(i) {
                return Err(Error::ZeroWithinPrecision(format!(
                    "coefficient {i} may lie on the Newton polygon"
                )));
            }
        }
        Ok(poly)
    }

    /// Height of the polygon above abscissa `i` (inside its range).
    pub fn height_at(&self, i: usize) -> Exp {
        let pts = &self.points;
        if pts.len() == 1 || i <= pts[0].0 {
            return pts[0].1;
        }
        for w in pts.windows(2) {
            if i <= w[1].0 {
                let t = Exp::new((i - w[0].0) as i64, (w[1].0 - w[0].0) as i64);
                return w[0].1 + (w[1].1 - w[0].1) * t;
            }
        }
        pts.last().unwrap().1
    }

    /// Number of roots (with multiplicity) of valuation at least `s`,
    /// including certified roots at zero.
    pub fn roots_with_ord_at_least(&self, s: Exp) -> usize {
        self.zero_roots
            + self
                .segments
                .iter()
                .filter(|g| g.root_ord >= s)
                .map(|g| g.len())
                .sum::<usize>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::{exp, exp_int, Puiseux, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn k() -> Puiseux<Rationals> {
        Puiseux::new(Rationals, exp_int(32), 1)
    }
    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn taylor_shift_matches_binomial_expansion() {
        let k = k();
        // (z+1)^3 = z^3 + 3z^2 + 3z + 1
        let cube = Poly::new(&k, vec![k.zero(), k.zero(), k.zero(), k.one()]);
        let s = cube.taylor_shift(&k, &k.one());
        let want: Vec<_> = [1, 3, 3, 1].iter().map(|&n| k.from_i64(n)).collect();
        assert_eq!(s.c, want);
    }

    #[test]
    fn newton_polygon_of_t_squared_shape() {
        // z^2 - t: one segment of slope 1/2, two roots of ord 1/2
        let k = k();
        let p = Poly::new(&k, vec![k.monomial(q(-1), exp_int(1)), k.zero(), k.one()]);
        let np = NewtonPolygon::of(&k, &p).unwrap();
        assert_eq!(np.segments.len(), 1);
        assert_eq!(np.segments[0].root_ord, exp(1, 2));
        assert_eq!(np.roots_with_ord_at_least(exp(1, 2)), 2);
        assert_eq!(np.roots_with_ord_at_least(exp(1, 1)), 0);
    }

    #[test]
    fn gauss_ord_seminorm_example() {
        // T^2 - t at s = 1/2 has ord 1
        let k = k();
        let p = Poly::new(&k, vec![k.monomial(q(-1), exp_int(1)), k.zero(), k.one()]);
        assert_eq!(p.gauss_ord(&k, exp(1, 2)).unwrap(), Some(exp_int(1)));
    }
}
