//! Polynomials over a residue field: Euclid, squarefree parts, roots,
//! and splitting of squarefree moduli on zero divisors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::valfield::CoeffField;

/// Coefficients low to high with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RPoly<T> {
    pub c: Vec<T>,
}

/// Enumerate all elements of a finite residue field only up to this order.
pub const MAX_ENUM_ORDER: u64 = 1 << 16;

impl<T: Clone + PartialEq> RPoly<T> {
    pub fn new<F: CoeffField<Elt = T>>(k: &F, mut c: Vec<T>) -> Self {
        while c.last().is_some_and(|x| k.is_zero(x)) {
            c.pop();
        }
        RPoly { c }
    }

    pub fn zero() -> Self {
        RPoly { c: vec![] }
    }

    pub fn one<F: CoeffField<Elt = T>>(k: &F) -> Self {
        RPoly { c: vec![k.one()] }
    }

    pub fn constant<F: CoeffField<Elt = T>>(k: &F, a: T) -> Self {
        RPoly::new(k, vec![a])
    }

    /// `z - a`.
    pub fn linear<F: CoeffField<Elt = T>>(k: &F, a: &T) -> Self {
        RPoly {
            c: vec![k.neg(a), k.one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `deg 0 = 0` by convention (check `is_zero` when it matters).
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.c.last()
    }

    pub fn coeff<F: CoeffField<Elt = T>>(&self, k: &F, i: usize) -> T {
        self.c.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn add<F: CoeffField<Elt = T>>(&self, k: &F, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        RPoly::new(
            k,
            (0..n)
                .map(|i| k.add(&self.coeff(k, i), &o.coeff(k, i)))
                .collect(),
        )
    }

    pub fn sub<F: CoeffField<Elt = T>>(&self, k: &F, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        RPoly::new(
            k,
            (0..n)
                .map(|i| k.sub(&self.coeff(k, i), &o.coeff(k, i)))
                .collect(),
        )
    }

    pub fn mul<F: CoeffField<Elt = T>>(&self, k: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RPoly::zero();
        }
        let mut out = vec![k.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        RPoly::new(k, out)
    }

    pub fn scale<F: CoeffField<Elt = T>>(&self, k: &F, a: &T) -> Self {
        RPoly::new(k, self.c.iter().map(|x| k.mul(x, a)).collect())
    }

    pub fn pow<F: CoeffField<Elt = T>>(&self, k: &F, n: usize) -> Self {
        let mut acc = RPoly::one(k);
        for _ in 0..n {
            acc = acc.mul(k, self);
        }
        acc
    }

    pub fn monic<F: CoeffField<Elt = T>>(&self, k: &F) -> Self {
        match self.lead() {
            None => RPoly::zero(),
            Some(l) => {
                let inv = k.inv(l).expect("nonzero leading coefficient");
                self.scale(k, &inv)
            }
        }
    }

    pub fn eval<F: CoeffField<Elt = T>>(&self, k: &F, x: &T) -> T {
        let mut acc = k.zero();
        for c in self.c.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative<F: CoeffField<Elt = T>>(&self, k: &F) -> Self {
        RPoly::new(
            k,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.mul(&k.from_i64(i as i64), c))
                .collect(),
        )
    }

    /// The `j`-th Hasse derivative `Σ_i C(i, j) c_i z^{i-j}`.
    pub fn hasse<F: CoeffField<Elt = T>>(&self, k: &F, j: usize) -> Self {
        let mut out = Vec::new();
        for (i, c) in self.c.iter().enumerate().skip(j) {
            out.push(k.mul(&binom_in(k, i, j), c));
        }
        RPoly::new(k, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem<F: CoeffField<Elt = T>>(&self, k: &F, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let inv = k.inv(d.lead().unwrap()).unwrap();
        let mut r = self.c.clone();
        let dd = d.deg();
        if r.len() < d.c.len() {
            return (RPoly::zero(), self.clone());
        }
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = k.mul(&r[i], &inv);
            if k.is_zero(&coef) {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = k.sub(&r[idx], &k.mul(&coef, dc));
            }
            q[i - dd] = coef;
        }
        r.truncate(dd);
        (RPoly::new(k, q), RPoly::new(k, r))
    }

    pub fn rem<F: CoeffField<Elt = T>>(&self, k: &F, d: &Self) -> Self {
        self.divrem(k, d).1
    }

    /// Exact quotient (callers know `d | self`).
    pub fn exact_div<F: CoeffField<Elt = T>>(&self, k: &F, d: &Self) -> Self {
        let (q, r) = self.divrem(k, d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd<F: CoeffField<Elt = T>>(&self, k: &F, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(k, &b);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Extended Euclid: `(g, s, t)` with `s·self + t·o = g` monic.
    pub fn xgcd<F: CoeffField<Elt = T>>(&self, k: &F, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (RPoly::one(k), RPoly::zero());
        let (mut t0, mut t1) = (RPoly::zero(), RPoly::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(k, &r1);
            let s2 = s0.sub(k, &q.mul(k, &s1));
            let t2 = t0.sub(k, &q.mul(k, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = k.inv(&l).unwrap();
                (r0.scale(k, &inv), s0.scale(k, &inv), t0.scale(k, &inv))
            }
        }
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inv_mod<F: CoeffField<Elt = T>>(&self, k: &F, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(k, m).xgcd(k, m);
        (g.deg() == 0 && !g.is_zero()).then(|| s.rem(k, m))
    }

    /// `P(z^e)`.
    pub fn inflate<F: CoeffField<Elt = T>>(&self, k: &F, e: usize) -> Self {
        let mut out = vec![k.zero(); self.deg() * e + 1];
        for (i, c) in self.c.iter().enumerate() {
            out[i * e] = c.clone();
        }
        RPoly::new(k, out)
    }

    /// If every exponent is divisible by `e`, the polynomial `Q` with `P = Q(z^e)`.
    pub fn deflate<F: CoeffField<Elt = T>>(&self, k: &F, e: usize) -> Option<Self> {
        if self
            .c
            .iter()
            .enumerate()
            .any(|(i, c)| i % e != 0 && !k.is_zero(c))
        {
            return None;
        }
        Some(RPoly {
            c: self.c.iter().step_by(e).cloned().collect(),
        })
    }

    /// Apply the inverse Frobenius to each coefficient.
    pub fn coeff_pth_root<F: CoeffField<Elt = T>>(&self, k: &F) -> Self {
        RPoly::new(k, self.c.iter().map(|c| k.pth_root(c)).collect())
    }

    /// Squarefree decomposition `P = lc · Π_i A_i^i` with monic, pairwise
    /// coprime, squarefree `A_i`. Returns `(A_i, i)` for nonconstant factors.
    pub fn squarefree<F: CoeffField<Elt = T>>(&self, k: &F) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        sqf_rec(k, &self.monic(k), 1, &mut out);
        // merge equal multiplicities (can arise from the p-th root recursion)
        out.sort_by_key(|(_, m)| *m);
        let mut merged: Vec<(Self, usize)> = Vec::new();
        for (f, m) in out {
            match merged.last_mut() {
                Some((g, mm)) if *mm == m => *g = g.mul(k, &f),
                _ => merged.push((f, m)),
            }
        }
        merged
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical<F: CoeffField<Elt = T>>(&self, k: &F) -> Self {
        self.squarefree(k)
            .into_iter()
            .fold(RPoly::one(k), |acc, (f, _)| acc.mul(k, &f))
    }

    /// Multiplicity of `z = a` as a root.
    pub fn root_mult<F: CoeffField<Elt = T>>(&self, k: &F, a: &T) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut j = 0;
        while k.is_zero(&self.hasse(k, j).eval(k, a)) {
            j += 1;
        }
        j
    }

    /// Roots lying in the residue field itself, each with its multiplicity,
    /// in a deterministic order. For `Q` this lifts roots modulo a prime;
    /// for finite fields, exhaustive evaluation of the squarefree part.
    /// `None` when the search is not feasible.
    pub fn roots_in_field<F: CoeffField<Elt = T>>(&self, k: &F) -> Option<Vec<(T, usize)>> {
        if self.is_zero() {
            return None;
        }
        if self.is_constant() {
            return Some(vec![]);
        }
        let rad = self.radical(k);
        let cands: Vec<T> = match k.order() {
            Some(q) if q <= MAX_ENUM_ORDER => (0..q)
                .map(|i| k.nth_element(i))
                .filter(|x| k.is_zero(&rad.eval(k, x)))
                .collect(),
            Some(_) => return None,
            None => rational_root_candidates(k, &rad)?
                .into_iter()
                .filter(|x| k.is_zero(&rad.eval(k, x)))
                .collect(),
        };
        Some(
            cands
                .into_iter()
                .map(|a| {
                    let m = self.root_mult(k, &a);
                    (a, m)
                })
                .collect(),
        )
    }

    pub fn fmt_with<F: CoeffField<Elt = T>>(&self, k: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let cs = k.fmt_elt(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let needs_paren = cs.contains(['+', ' ']) || (cs[1..].contains('-'));
            let coef = if needs_paren { format!("({cs})") } else { cs };
            parts.push(if i == 0 {
                coef
            } else if k.is_one(c) {
                mono
            } else if coef == "-1" {
                format!("-{mono}")
            } else {
                format!("{coef}*{mono}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn sqf_rec<F: CoeffField>(
    k: &F,
    f: &RPoly<F::Elt>,
    mult: usize,
    out: &mut Vec<(RPoly<F::Elt>, usize)>,
) {
    if f.is_constant() {
        return;
    }
    let p = k.characteristic() as usize;
    let df = f.derivative(k);
    if df.is_zero() {
        // f = g(z^p) = (g^{1/p}(z))^p with Frobenius-twisted coefficients
        let g = f
            .deflate(k, p)
            .expect("zero derivative means p-th powers only");
        sqf_rec(k, &g.coeff_pth_root(k), mult * p, out);
        return;
    }
    // Yun-style pass over the separable part, tracking p-power leftovers.
    let mut c = f.gcd(k, &df);
    let mut w = f.exact_div(k, &c);
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(k, &c);
        let fac = w.exact_div(k, &y);
        if !fac.is_constant() {
            out.push((fac.monic(k), i * mult));
        }
        w = y;
        c = c.exact_div(k, &w);
        i += 1;
    }
    if !c.is_constant() {
        // what remains is a p-th power
        let g = c.deflate(k, p).expect("residual factor is a p-th power");
        sqf_rec(k, &g.coeff_pth_root(k), mult * p, out);
    }
}

/// `C(n, j)` reduced into the field.
pub(crate) fn binom_in<F: CoeffField>(k: &F, n: usize, j: usize) -> F::Elt {
    let mut b = BigInt::one();
    for i in 0..j {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    let r = BigRational::from_integer(b);
    k.from_ratio(&r)
        .expect("integers embed in every residue field")
}

/// Candidate rational roots of a squarefree `p`: its roots modulo a small
/// prime, Hensel-lifted far enough for rational reconstruction. Every
/// rational root is among the candidates; the caller checks them.
fn rational_root_candidates<F: CoeffField>(k: &F, p: &RPoly<F::Elt>) -> Option<Vec<F::Elt>> {
    let coeffs: Vec<BigRational> =
        p.c.iter()
            .map(|c| k.as_rational(c))
            .collect::<Option<Vec<_>>>()?;
    let low_idx = coeffs.iter().position(|c| !c.is_zero())?;
    let mut out = Vec::new();
    if low_idx > 0 {
        out.push(k.zero());
    }
    let cs = &coeffs[low_idx..];
    if cs.len() == 1 {
        return Some(out);
    }
    let den_lcm = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = cs
        .iter()
        .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    for r in modular_rational_roots(&ints) {
        out.push(k.from_ratio(&r)?);
    }
    Some(out)
}

fn is_root(c: &[BigInt], q: &BigRational) -> bool {
    c.iter()
        .rev()
        .fold(BigRational::zero(), |acc, a| {
            acc * q + BigRational::from_integer(a.clone())
        })
        .is_zero()
}

fn eval_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter()
        .rev()
        .fold(BigInt::zero(), |acc, ci| (acc * x + ci).mod_floor(m))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `a/b` with `a ≡ b r (mod m)`, `|a|, b ≤ sqrt(m/2)`, if one exists.
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Rational roots of a squarefree integer polynomial with nonzero constant
/// term. A root `a/b` has `a | c₀` and `b | c_n`, so a lift modulo
/// `M > 2 |c₀ c_n|` pins it down.
fn modular_rational_roots(c: &[BigInt]) -> Vec<BigRational> {
    let n = c.len() - 1;
    let lc = &c[n];
    let dc: Vec<BigInt> = (1..=n).map(|i| &c[i] * BigInt::from(i)).collect();
    let h = c[0].abs().max(lc.abs());
    let target = BigInt::from(2) * &h * &h + BigInt::one();
    let mut prime = 2u64;
    loop {
        prime += 1;
        if !is_prime(prime) {
            continue;
        }
        let pb = BigInt::from(prime);
        if (lc % &pb).is_zero() {
            continue;
        }
        // roots mod p must be simple for Newton lifting
        let roots: Vec<u64> = (0..prime)
            .filter(|&x| eval_mod(c, &BigInt::from(x), &pb).is_zero())
            .collect();
        if roots
            .iter()
            .any(|&x| eval_mod(&dc, &BigInt::from(x), &pb).is_zero())
        {
            continue;
        }
        let mut out = Vec::new();
        for r in roots {
            let mut x = BigInt::from(r);
            let mut m = pb.clone();
            while m < target {
                m = &m * &m;
                let fx = eval_mod(c, &x, &m);
                let dfx = eval_mod(&dc, &x, &m);
                let inv = dfx.extended_gcd(&m).x;
                x = (&x - fx * inv).mod_floor(&m);
            }
            // p-adic roots that are not rational can still reconstruct
            if let Some(q) = rational_reconstruct(&x, &m).filter(|q| is_root(c, q)) {
                out.push(q);
            }
        }
        return out;
    }
}

/// Split a squarefree modulus `P` according to whether `c(a)` vanishes at
/// its roots: returns `(gcd(P, c), P / gcd(P, c))`, either possibly trivial.
pub fn split_on<F: CoeffField>(
    k: &F,
    p: &RPoly<F::Elt>,
    c: &RPoly<F::Elt>,
) -> (RPoly<F::Elt>, RPoly<F::Elt>) {
    let g = p.gcd(k, &c.rem(k, p));
    let g = if c.rem(k, p).is_zero() { p.monic(k) } else { g };
    let rest = p.monic(k).exact_div(k, &g);
    (g, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::{FiniteField, Rationals};

    fn qp(v: &[i64]) -> RPoly<BigRational> {
        RPoly::new(
            &Rationals,
            v.iter()
                .map(|&n| BigRational::from_integer(n.into()))
                .collect(),
        )
    }

    #[test]
    fn gcd_is_monic() {
        let k = Rationals;
        // 2(z-1)(z+2) and 3(z-1)(z-5)
        let a = qp(&[-4, 2, 2]);
        let b = qp(&[15, -18, 3]);
        assert_eq!(a.gcd(&k, &b), qp(&[-1, 1]));
    }

    #[test]
    fn squarefree_over_q() {
        let k = Rationals;
        // (z-1)^2 (z+1)
        let p = qp(&[-1, 1]).pow(&k, 2).mul(&k, &qp(&[1, 1]));
        let s = p.squarefree(&k);
        assert_eq!(s, vec![(qp(&[1, 1]), 1), (qp(&[-1, 1]), 2)]);
        assert_eq!(p.roots_in_field(&k).unwrap().len(), 2);
    }

    #[test]
    fn squarefree_in_char_p_handles_pth_powers() {
        let k = FiniteField::prime(3).unwrap();
        let z = RPoly::new(&k, vec![k.zero(), k.one()]);
        let zp1 = RPoly::new(&k, vec![k.one(), k.one()]);
        // z^3 (z+1)^2: derivative-free part z^3
        let p = z.pow(&k, 3).mul(&k, &zp1.pow(&k, 2));
        let s = p.squarefree(&k);
        assert_eq!(s, vec![(zp1.clone(), 2), (z.clone(), 3)]);
        let roots = p.roots_in_field(&k).unwrap();
        assert!(roots.contains(&(k.zero(), 3)));
    }

    #[test]
    fn rational_roots_with_lopsided_coefficients() {
        // (10^6 z - 1)(z - 3)(z^2 + 1)(7z + 5)
        let big = BigRational::from_integer(1_000_000.into());
        let lin = |a: BigRational, b: i64| {
            RPoly::new(&Rationals, vec![BigRational::from_integer(b.into()), a])
        };
        let one = BigRational::one();
        let p = lin(big, -1)
            .mul(&Rationals, &lin(one.clone(), -3))
            .mul(&Rationals, &qp(&[1, 0, 1]))
            .mul(&Rationals, &lin(BigRational::from_integer(7.into()), 5));
        let mut roots: Vec<BigRational> = p
            .roots_in_field(&Rationals)
            .unwrap()
            .into_iter()
            .map(|(r, _)| r)
            .collect();
        roots.sort();
        let want = [
            BigRational::new((-5).into(), 7.into()),
            BigRational::new(1.into(), 1_000_000.into()),
            BigRational::from_integer(3.into()),
        ];
        assert_eq!(roots, want);
    }

    #[test]
    fn irrational_roots_are_not_reported() {
        let k = Rationals;
        // z^2 - 2 and z^3 - 5z + 3 have p-adic roots for small p
        assert!(qp(&[-2, 0, 1]).roots_in_field(&k).unwrap().is_empty());
        let r = qp(&[3, -5, 0, 1]).roots_in_field(&k).unwrap();
        assert!(r.iter().all(|(a, _)| {
            let a = a.clone();
            &a * &a * &a - BigRational::from_integer(5.into()) * &a
                + BigRational::from_integer(3.into())
                == BigRational::zero()
        }));
    }

    #[test]
    fn rational_roots_found() {
        let k = Rationals;
        // (2z - 3)(z + 4) = 2z^2 + 5z - 12
        let r = qp(&[-12, 5, 2]).roots_in_field(&k).unwrap();
        let vals: Vec<_> = r.iter().map(|(a, _)| a.clone()).collect();
        assert!(vals.contains(&BigRational::new(3.into(), 2.into())));
        assert!(vals.contains(&BigRational::from_integer((-4).into())));
        assert_eq!(vals.len(), 2);
    }

    #[test]
    fn split_on_separates_roots() {
        let k = Rationals;
        let p = qp(&[-1, 0, 1]); // roots ±1
        let c = qp(&[-1, 1]); // vanishes at 1
        let (zero_part, rest) = split_on(&k, &p, &c);
        assert_eq!(zero_part, qp(&[-1, 1]));
        assert_eq!(rest, qp(&[1, 1]));
    }

    #[test]
    fn hasse_derivative_in_char_two() {
        let k = FiniteField::prime(2).unwrap();
        // z^2: ordinary derivative 0, second Hasse derivative 1
        let p = RPoly::new(&k, vec![k.zero(), k.zero(), k.one()]);
        assert!(p.derivative(&k).is_zero());
        assert_eq!(p.hasse(&k, 2), RPoly::one(&k));
        assert_eq!(p.root_mult(&k, &k.zero()), 2);
    }
}
