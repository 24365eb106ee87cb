//! The radical tower `Q(π)`, `π^N = p`, with `ord(p) = 1`.
//!
//! `x^N - p` is Eisenstein, so `ord(Σ a_i π^i) = min_i (v_p(a_i) + i/N)` and
//! the minimum is attained by a single index. The residue field is `F_p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::{fmt_rational, padic_val, reduce_mod_p};
use super::series::{fmt_pow_exp, join_signed};
use super::{
    add_opt, min_opt, CoeffField, Exp, FieldMode, FiniteField, Fq, GroundField, OrdInfo,
    ValuedField,
};
use crate::error::{Error, Result};

/// `Σ c_i π^i` for `i < N`, known up to (but excluding) `ord = prec`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedElem {
    pub c: Vec<BigRational>,
    pub prec: Option<Exp>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Radical {
    p: u64,
    n: u32,
    residue: FiniteField,
    cap: Exp,
}

impl Radical {
    pub fn new(p: u64, n: u32, cap: Exp) -> Result<Self> {
        let residue = FiniteField::prime(p)?;
        if n == 0 {
            return Err(Error::Invalid("ramification index must be positive".into()));
        }
        Ok(Radical { p, n, residue, cap })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `Σ c_i π^i` from arbitrary integer-indexed pieces.
    pub fn elem(&self, pieces: &[(i64, BigRational)]) -> MixedElem {
        let mut acc = self.zero();
        for (i, c) in pieces {
            let k = i.div_euclid(self.n as i64);
            let r = i.rem_euclid(self.n as i64) as usize;
            let mut v = vec![BigRational::zero(); self.n as usize];
            v[r] = c * pow_p(self.p, k);
            acc = self.add(&acc, &MixedElem { c: v, prec: None });
        }
        acc
    }

    fn exact_ord(&self, c: &[BigRational]) -> Option<Exp> {
        c.iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| {
                Exp::from_integer(padic_val(a, self.p)) + Exp::new(i as i64, self.n as i64)
            })
            .min()
    }

    fn mul_raw(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = self.n as usize;
        let pr = BigRational::from_integer(BigInt::from(self.p));
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let prod = x * y;
                if i + j >= n {
                    out[i + j - n] += prod * &pr;
                } else {
                    out[i + j] += prod;
                }
            }
        }
        out
    }

    /// Inverse in `Q[x]/(x^N - p)` by solving the multiplication system.
    fn inv_raw(&self, b: &[BigRational]) -> Vec<BigRational> {
        let n = self.n as usize;
        // Column j holds b·π^j.
        let mut cols = Vec::with_capacity(n);
        let mut cur = b.to_vec();
        let mut pi = vec![BigRational::zero(); n];
        if n == 1 {
            pi[0] = BigRational::from_integer(BigInt::from(self.p));
        } else {
            pi[1] = BigRational::one();
        }
        for _ in 0..n {
            cols.push(cur.clone());
            cur = self.mul_raw(&cur, &pi);
        }
        // Augmented matrix rows: M x = e_0.
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..n).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .expect("field element is invertible");
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &f * y;
                    }
                }
            }
        }
        m.into_iter().map(|row| row[n].clone()).collect()
    }
}

fn pow_p(p: u64, k: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base.recip(), (-k) as usize)
    }
}

impl ValuedField for Radical {
    type Elem = MixedElem;
    type Res = FiniteField;

    fn residue_field(&self) -> &FiniteField {
        &self.residue
    }

    fn ground(&self) -> GroundField {
        GroundField {
            mode: FieldMode::Mixed,
            p: self.p,
            ram_index: self.n,
            raisable: false,
            q_k: self.p.to_string(),
            coeff_field: format!("Q(p^(1/{})) with p = {}", self.n, self.p),
        }
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn ram_index(&self) -> u32 {
        self.n
    }

    fn precision_cap(&self) -> Exp {
        self.cap
    }

    fn zero(&self) -> MixedElem {
        MixedElem {
            c: vec![BigRational::zero(); self.n as usize],
            prec: None,
        }
    }

    fn one(&self) -> MixedElem {
        self.from_i64(1)
    }

    fn from_i64(&self, k: i64) -> MixedElem {
        let mut e = self.zero();
        e.c[0] = BigRational::from_integer(BigInt::from(k));
        e
    }

    fn from_ratio(&self, q: &BigRational) -> Result<MixedElem> {
        let mut e = self.zero();
        e.c[0] = q.clone();
        Ok(e)
    }

    fn add(&self, a: &MixedElem, b: &MixedElem) -> MixedElem {
        MixedElem {
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
            prec: min_opt(a.prec, b.prec),
        }
    }

    fn sub(&self, a: &MixedElem, b: &MixedElem) -> MixedElem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &MixedElem) -> MixedElem {
        MixedElem {
            c: a.c.iter().map(|x| -x).collect(),
            prec: a.prec,
        }
    }

    fn mul(&self, a: &MixedElem, b: &MixedElem) -> MixedElem {
        let (ia, ib) = (self.ord_info(a), self.ord_info(b));
        if ia == OrdInfo::Zero || ib == OrdInfo::Zero {
            return self.zero();
        }
        let prec = min_opt(
            add_opt(a.prec, ib.lower_bound()),
            add_opt(b.prec, ia.lower_bound()),
        );
        MixedElem {
            c: self.mul_raw(&a.c, &b.c),
            prec,
        }
    }

    fn div(&self, a: &MixedElem, b: &MixedElem) -> Result<MixedElem> {
        let v = match self.ord_info(b) {
            OrdInfo::Exact(v) => v,
            _ => {
                return Err(Error::ZeroWithinPrecision(
                    "division by an uncertified zero".into(),
                ))
            }
        };
        let ia = self.ord_info(a);
        if ia == OrdInfo::Zero {
            return Ok(self.zero());
        }
        let la = ia.lower_bound().expect("nonzero");
        let prec = min_opt(a.prec.map(|p| p - v), b.prec.map(|p| p - v - v + la));
        let inv = self.inv_raw(&b.c);
        Ok(MixedElem {
            c: self.mul_raw(&a.c, &inv),
            prec,
        })
    }

    fn ord_info(&self, a: &MixedElem) -> OrdInfo {
        match (self.exact_ord(&a.c), a.prec) {
            (Some(v), None) => OrdInfo::Exact(v),
            (Some(v), Some(p)) if v < p => OrdInfo::Exact(v),
            (_, Some(p)) => OrdInfo::AtLeast(p),
            (None, None) => OrdInfo::Zero,
        }
    }

    fn precision(&self, a: &MixedElem) -> Option<Exp> {
        a.prec
    }

    fn truncate(&self, a: &MixedElem, cap: Exp) -> MixedElem {
        MixedElem {
            c: a.c.clone(),
            prec: min_opt(a.prec, Some(cap)),
        }
    }

    fn exact_part(&self, a: &MixedElem) -> MixedElem {
        MixedElem {
            c: a.c.clone(),
            prec: None,
        }
    }

    fn residue(&self, a: &MixedElem) -> Result<Fq> {
        match self.ord_info(a) {
            OrdInfo::Exact(v) if v < Exp::from_integer(0) => Err(Error::NegativeValuation),
            OrdInfo::AtLeast(p) if p <= Exp::from_integer(0) => Err(Error::ZeroWithinPrecision(
                "residue below the precision cap".into(),
            )),
            OrdInfo::Exact(_) => {
                let c0 = &a.c[0];
                if c0.is_zero() {
                    return Ok(self.residue.zero());
                }
                let r = reduce_mod_p(c0, self.p).ok_or(Error::NegativeValuation)?;
                Ok(self.residue.from_i64(r as i64))
            }
            _ => Ok(self.residue.zero()),
        }
    }

    fn lift(&self, r: &Fq) -> MixedElem {
        self.from_i64(r.0.first().copied().unwrap_or(0) as i64)
    }

    fn unif_pow(&self, s: Exp) -> Result<MixedElem> {
        let k = s * Exp::from_integer(self.n as i64);
        if !k.is_integer() {
            return Err(Error::UnsupportedExtension(format!(
                "p^({}) is not in Q(p^(1/{}))",
                super::fmt_exp(&s),
                self.n
            )));
        }
        Ok(self.elem(&[(k.to_integer(), BigRational::one())]))
    }

    fn in_value_group(&self, s: Exp) -> bool {
        (s * Exp::from_integer(self.n as i64)).is_integer()
    }

    fn fmt_elem(&self, a: &MixedElem) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = fmt_rational(c);
            if i == 0 {
                parts.push(cs);
            } else {
                let pp = format!("p^{}", fmt_pow_exp(&Exp::new(i as i64, self.n as i64)));
                parts.push(match cs.as_str() {
                    "1" => pp,
                    "-1" => format!("-{pp}"),
                    _ => format!("{cs}*{pp}"),
                });
            }
        }
        if let Some(p) = a.prec {
            parts.push(format!("O(p^{})", fmt_pow_exp(&p)));
        }
        join_signed(parts)
    }

    fn with_ram_index(&self, n: u32) -> Result<Self> {
        if n % self.n != 0 {
            return Err(Error::Invalid(
                "new ramification index must be a multiple".into(),
            ));
        }
        Radical::new(self.p, n, self.cap)
    }

    fn embed_from(&self, src: &Self, a: &MixedElem) -> Result<MixedElem> {
        if self.n % src.n != 0 || self.p != src.p {
            return Err(Error::Invalid("source is not a subfield".into()));
        }
        let step = (self.n / src.n) as i64;
        let pieces: Vec<(i64, BigRational)> =
            a.c.iter()
                .enumerate()
                .map(|(i, c)| (i as i64 * step, c.clone()))
                .collect();
        let mut e = self.elem(&pieces);
        e.prec = a.prec;
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::{exp, exp_int, Valuation};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn defining_relation() {
        let k = Radical::new(3, 2, exp_int(64)).unwrap();
        let g = k.unif_pow(exp(1, 2)).unwrap();
        assert_eq!(k.mul(&g, &g), k.from_i64(3));
    }

    #[test]
    fn eisenstein_valuation() {
        // ord(3 + 5·p^(1/2)) = min(1, 1/2) = 1/2
        let k = Radical::new(3, 2, exp_int(64)).unwrap();
        let x = k.elem(&[(0, q(3)), (1, q(5))]);
        assert_eq!(k.ord(&x).unwrap(), Valuation::Finite(exp(1, 2)));
    }

    #[test]
    fn inverse_round_trip() {
        let k = Radical::new(5, 3, exp_int(64)).unwrap();
        let x = k.elem(&[(0, q(2)), (1, q(7)), (2, q(-1))]);
        let y = k.div(&k.one(), &x).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
    }

    #[test]
    fn residue_is_constant_term_mod_p() {
        let k = Radical::new(5, 2, exp_int(64)).unwrap();
        let x = k.elem(&[(0, BigRational::new(7.into(), 2.into())), (1, q(1))]);
        assert_eq!(k.residue(&x).unwrap(), k.residue_field().from_i64(1));
    }

    #[test]
    fn embedding_preserves_valuation() {
        let k2 = Radical::new(3, 2, exp_int(64)).unwrap();
        let k6 = k2.with_ram_index(6).unwrap();
        let x = k2.elem(&[(1, q(1)), (0, q(9))]);
        let y = k6.embed_from(&k2, &x).unwrap();
        assert_eq!(k2.ord(&x).unwrap(), k6.ord(&y).unwrap());
        assert_eq!(k6.fmt_elem(&y), "9 + p^(1/2)");
    }
}
