//! Truncated Puiseux series `Σ c_e t^e` with exact rational exponents.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::{
    add_opt, fmt_exp, min_opt, CoeffField, Exp, FieldMode, GroundField, OrdInfo, ValuedField,
};
use crate::error::{Error, Result};

/// A series: strictly increasing exponents, nonzero coefficients, all
/// exponents below `prec` (`None` = exact).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series<C> {
    pub terms: Vec<(Exp, C)>,
    pub prec: Option<Exp>,
}

impl<C> Series<C> {
    pub fn exact(terms: Vec<(Exp, C)>) -> Self {
        Series { terms, prec: None }
    }
}

/// Puiseux series in `t` over a coefficient field `F`. The ramification
/// index is raised on demand: any rational exponent is accepted.
#[derive(Clone, Debug, PartialEq)]
pub struct Puiseux<F: CoeffField> {
    coeff: F,
    cap: Exp,
    ram_index: u32,
}

impl<F: CoeffField> Puiseux<F> {
    /// `cap` is the relative precision (in `t`-exponent units) kept when a
    /// quotient does not terminate.
    pub fn new(coeff: F, cap: Exp, ram_index: u32) -> Self {
        Puiseux {
            coeff,
            cap,
            ram_index: ram_index.max(1),
        }
    }

    pub fn coeff(&self) -> &F {
        &self.coeff
    }

    /// `c · t^e` as an exact series.
    pub fn monomial(&self, c: F::Elt, e: Exp) -> Series<F::Elt> {
        if self.coeff.is_zero(&c) {
            Series::exact(vec![])
        } else {
            Series::exact(vec![(e, c)])
        }
    }

    /// Build an exact series from `(exponent, coefficient)` pairs.
    pub fn series(&self, pairs: Vec<(Exp, F::Elt)>) -> Series<F::Elt> {
        let mut acc: BTreeMap<Exp, F::Elt> = BTreeMap::new();
        for (e, c) in pairs {
            let entry = acc.entry(e).or_insert_with(|| self.coeff.zero());
            *entry = self.coeff.add(entry, &c);
        }
        self.from_map(acc, None)
    }

    /// Attach a precision cap to a series.
    pub fn with_prec(&self, a: &Series<F::Elt>, prec: Exp) -> Series<F::Elt> {
        self.truncate(a, prec)
    }

    fn from_map(&self, m: BTreeMap<Exp, F::Elt>, prec: Option<Exp>) -> Series<F::Elt> {
        let terms = m
            .into_iter()
            .filter(|(e, c)| !self.coeff.is_zero(c) && prec.is_none_or(|p| *e < p))
            .collect();
        Series { terms, prec }
    }

    fn scale(&self, a: &Series<F::Elt>, c: &F::Elt, shift: Exp) -> Series<F::Elt> {
        Series {
            terms: a
                .terms
                .iter()
                .map(|(e, x)| (*e + shift, self.coeff.mul(x, c)))
                .filter(|(_, x)| !self.coeff.is_zero(x))
                .collect(),
            prec: a.prec.map(|p| p + shift),
        }
    }

    fn mul_capped(
        &self,
        a: &Series<F::Elt>,
        b: &Series<F::Elt>,
        cap: Option<Exp>,
    ) -> Series<F::Elt> {
        let mut acc: BTreeMap<Exp, F::Elt> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = *ea + *eb;
                if cap.is_some_and(|p| e >= p) {
                    break;
                }
                let prod = self.coeff.mul(ca, cb);
                let entry = acc.entry(e).or_insert_with(|| self.coeff.zero());
                *entry = self.coeff.add(entry, &prod);
            }
        }
        self.from_map(acc, cap)
    }
}

impl<F: CoeffField> ValuedField for Puiseux<F> {
    type Elem = Series<F::Elt>;
    type Res = F;

    fn residue_field(&self) -> &F {
        &self.coeff
    }

    fn ground(&self) -> GroundField {
        let p = self.coeff.characteristic();
        GroundField {
            mode: if p == 0 {
                FieldMode::EquicharZero
            } else {
                FieldMode::EquicharP
            },
            p,
            ram_index: self.ram_index,
            raisable: true,
            q_k: "e".into(),
            coeff_field: self.coeff.describe(),
        }
    }

    fn characteristic(&self) -> u64 {
        self.coeff.characteristic()
    }

    fn ram_index(&self) -> u32 {
        self.ram_index
    }

    fn precision_cap(&self) -> Exp {
        self.cap
    }

    fn zero(&self) -> Series<F::Elt> {
        Series::exact(vec![])
    }

    fn one(&self) -> Series<F::Elt> {
        self.monomial(self.coeff.one(), Exp::from_integer(0))
    }

    fn from_i64(&self, n: i64) -> Series<F::Elt> {
        self.monomial(self.coeff.from_i64(n), Exp::from_integer(0))
    }

    fn from_ratio(&self, q: &BigRational) -> Result<Series<F::Elt>> {
        let c = self.coeff.from_ratio(q).ok_or_else(|| {
            Error::Semantic(format!(
                "denominator of {q} vanishes in the coefficient field"
            ))
        })?;
        Ok(self.monomial(c, Exp::from_integer(0)))
    }

    fn add(&self, a: &Series<F::Elt>, b: &Series<F::Elt>) -> Series<F::Elt> {
        let prec = min_opt(a.prec, b.prec);
        let mut acc: BTreeMap<Exp, F::Elt> = a.terms.iter().cloned().collect();
        for (e, c) in &b.terms {
            let entry = acc.entry(*e).or_insert_with(|| self.coeff.zero());
            *entry = self.coeff.add(entry, c);
        }
        self.from_map(acc, prec)
    }

    fn sub(&self, a: &Series<F::Elt>, b: &Series<F::Elt>) -> Series<F::Elt> {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Series<F::Elt>) -> Series<F::Elt> {
        Series {
            terms: a
                .terms
                .iter()
                .map(|(e, c)| (*e, self.coeff.neg(c)))
                .collect(),
            prec: a.prec,
        }
    }

    fn mul(&self, a: &Series<F::Elt>, b: &Series<F::Elt>) -> Series<F::Elt> {
        let (ia, ib) = (self.ord_info(a), self.ord_info(b));
        if ia == OrdInfo::Zero || ib == OrdInfo::Zero {
            return self.zero();
        }
        let cap = min_opt(
            add_opt(a.prec, ib.lower_bound()),
            add_opt(b.prec, ia.lower_bound()),
        );
        self.mul_capped(a, b, cap)
    }

    fn div(&self, a: &Series<F::Elt>, b: &Series<F::Elt>) -> Result<Series<F::Elt>> {
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
        let lead = b.terms[0].1.clone();
        let lead_inv = self.coeff.inv(&lead).expect("nonzero leading coefficient");
        if b.terms.len() == 1 && b.prec.is_none() {
            return Ok(self.scale(a, &lead_inv, -v));
        }
        let la = ia.lower_bound().expect("nonzero");
        // Output cap from the propagation rule, or the configured cap.
        let out = min_opt(
            a.prec.map(|p| p - v),
            add_opt(b.prec.map(|p| p - v - v), Some(la)),
        )
        .unwrap_or(la - v + self.cap);
        let rel = out - (la - v);
        // u = b / (lead t^v) - 1, strictly positive exponents.
        let u = Series {
            terms: b.terms[1..]
                .iter()
                .map(|(e, c)| (*e - v, self.coeff.mul(c, &lead_inv)))
                .collect::<Vec<_>>(),
            prec: b.prec.map(|p| p - v),
        };
        let neg_u = self.neg(&u);
        let mut inv = self.one();
        let mut power = self.one();
        loop {
            power = self.mul_capped(&power, &neg_u, Some(rel));
            if power.terms.is_empty() {
                break;
            }
            inv = self.add(&inv, &power);
        }
        let inv = self.truncate(&inv, rel);
        let q = self.mul(&self.scale(a, &lead_inv, -v), &inv);
        Ok(self.truncate(&q, out))
    }

    fn ord_info(&self, a: &Series<F::Elt>) -> OrdInfo {
        match (a.terms.first(), a.prec) {
            (Some((e, _)), _) => OrdInfo::Exact(*e),
            (None, None) => OrdInfo::Zero,
            (None, Some(p)) => OrdInfo::AtLeast(p),
        }
    }

    fn precision(&self, a: &Series<F::Elt>) -> Option<Exp> {
        a.prec
    }

    fn truncate(&self, a: &Series<F::Elt>, cap: Exp) -> Series<F::Elt> {
        let prec = min_opt(a.prec, Some(cap));
        Series {
            terms: a
                .terms
                .iter()
                .filter(|(e, _)| prec.is_none_or(|p| *e < p))
                .cloned()
                .collect(),
            prec,
        }
    }

    fn exact_part(&self, a: &Series<F::Elt>) -> Series<F::Elt> {
        Series {
            terms: a.terms.clone(),
            prec: None,
        }
    }

    fn residue(&self, a: &Series<F::Elt>) -> Result<F::Elt> {
        match self.ord_info(a) {
            OrdInfo::Exact(v) if v < Exp::from_integer(0) => Err(Error::NegativeValuation),
            OrdInfo::Exact(v) if v == Exp::from_integer(0) => Ok(a.terms[0].1.clone()),
            OrdInfo::AtLeast(p) if p <= Exp::from_integer(0) => Err(Error::ZeroWithinPrecision(
                "residue below the precision cap".into(),
            )),
            _ => Ok(self.coeff.zero()),
        }
    }

    fn lift(&self, r: &F::Elt) -> Series<F::Elt> {
        self.monomial(r.clone(), Exp::from_integer(0))
    }

    fn unif_pow(&self, s: Exp) -> Result<Series<F::Elt>> {
        if self.ram_index as i64 % s.denom() != 0 {
            log::debug!(
                "raising ramification index to accommodate t^({})",
                fmt_exp(&s)
            );
        }
        Ok(self.monomial(self.coeff.one(), s))
    }

    fn shift(&self, a: &Series<F::Elt>, s: Exp) -> Result<Series<F::Elt>> {
        Ok(self.scale(a, &self.coeff.one(), s))
    }

    fn in_value_group(&self, _s: Exp) -> bool {
        true
    }

    fn fmt_elem(&self, a: &Series<F::Elt>) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in &a.terms {
            let cs = self.coeff.fmt_elt(c);
            let compound = cs.contains(" + ") || (cs.contains('-') && !cs.starts_with('-'));
            let cs = if compound { format!("({cs})") } else { cs };
            let tpart = if *e == Exp::from_integer(0) {
                None
            } else if *e == Exp::from_integer(1) {
                Some("t".to_string())
            } else {
                Some(format!("t^{}", fmt_pow_exp(e)))
            };
            parts.push(match tpart {
                None => cs,
                Some(tp) if cs == "1" => tp,
                Some(tp) if cs == "-1" => format!("-{tp}"),
                Some(tp) => format!("{cs}*{tp}"),
            });
        }
        if let Some(p) = a.prec {
            parts.push(format!("O(t^{})", fmt_pow_exp(&p)));
        }
        join_signed(parts)
    }

    fn with_ram_index(&self, n: u32) -> Result<Self> {
        if n != self.ram_index {
            log::info!("ramification index raised from {} to {n}", self.ram_index);
        }
        Ok(Puiseux {
            coeff: self.coeff.clone(),
            cap: self.cap,
            ram_index: n,
        })
    }

    fn embed_from(&self, _src: &Self, a: &Series<F::Elt>) -> Result<Series<F::Elt>> {
        Ok(a.clone())
    }
}

/// Exponent text after `^`: bare integers, parenthesized fractions.
pub(crate) fn fmt_pow_exp(e: &Exp) -> String {
    if *e.denom() == 1 && *e.numer() >= 0 {
        e.numer().to_string()
    } else {
        format!("({})", fmt_exp(e))
    }
}

/// Join term strings with ` + `, folding leading minus signs into ` - `.
pub(crate) fn join_signed(parts: Vec<String>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}
