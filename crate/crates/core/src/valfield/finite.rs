//! Finite fields F_{p^m} in a power basis over F_p.

use num_rational::BigRational;

use super::coeff::{is_prime, modinv, reduce_mod_p, CoeffField, Extension};
use crate::error::{Error, Result};

/// Largest field we are willing to build by exhaustive search.
const MAX_SEARCH_ORDER: u64 = 1 << 20;

/// Element of a finite field: coefficients of `1, g, g^2, ...` in `0..p`,
/// without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    m: u32,
    /// Monic modulus of degree `m`, low to high.
    modulus: Vec<u64>,
    gen: String,
}

impl FiniteField {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(FiniteField {
            p,
            m: 1,
            modulus: vec![0, 1],
            gen: "g".into(),
        })
    }

    /// F_{p^m} defined by a monic irreducible modulus over F_p.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let modulus = monic(trim(modulus.into_iter().map(|c| c % p).collect()), p);
        if modulus.len() < 2 || !is_irreducible(&modulus, p) {
            return Err(Error::Invalid("modulus is not irreducible over F_p".into()));
        }
        let m = (modulus.len() - 1) as u32;
        Ok(FiniteField {
            p,
            m,
            modulus,
            gen: "g".into(),
        })
    }

    /// F_{p^m} with the lexicographically first irreducible modulus.
    pub fn of_order(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if m == 1 {
            return Self::prime(p);
        }
        let modulus = first_irreducible(p, m as usize)
            .ok_or_else(|| Error::UnsupportedExtension("field too large to search".into()))?;
        Ok(FiniteField {
            p,
            m,
            modulus,
            gen: "g".into(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.m
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn generator(&self) -> Fq {
        if self.m == 1 {
            // The modulus x is a placeholder; F_p has no named generator.
            Fq(vec![])
        } else {
            Fq(vec![0, 1])
        }
    }

    pub fn elt(&self, coeffs: &[i64]) -> Fq {
        let p = self.p as i64;
        let v: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(p) as u64).collect();
        Fq(trim(poly_rem(&v, &self.modulus, self.p)))
    }

    fn reduce(&self, v: Vec<u64>) -> Fq {
        Fq(trim(poly_rem(&v, &self.modulus, self.p)))
    }

    fn q(&self) -> u64 {
        self.p.pow(self.m)
    }

    fn evaluate_in(&self, target: &FiniteField, a: &Fq, gen_image: &Fq) -> Fq {
        let mut acc = target.zero();
        for c in a.0.iter().rev() {
            acc = target.mul(&acc, gen_image);
            acc = target.add(&acc, &target.from_i64(*c as i64));
        }
        acc
    }
}

impl CoeffField for FiniteField {
    type Elt = Fq;

    fn zero(&self) -> Fq {
        Fq(vec![])
    }
    fn one(&self) -> Fq {
        Fq(vec![1])
    }
    fn from_i64(&self, n: i64) -> Fq {
        Fq(trim(vec![n.rem_euclid(self.p as i64) as u64]))
    }
    fn from_ratio(&self, q: &BigRational) -> Option<Fq> {
        reduce_mod_p(q, self.p).map(|v| Fq(trim(vec![v])))
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(trim(poly_add(&a.0, &b.0, self.p)))
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(trim(poly_sub(&a.0, &b.0, self.p)))
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        self.reduce(poly_mul(&a.0, &b.0, self.p))
    }
    fn neg(&self, a: &Fq) -> Fq {
        Fq(a.0.iter().map(|c| (self.p - c) % self.p).collect())
    }
    fn inv(&self, a: &Fq) -> Option<Fq> {
        if a.0.is_empty() {
            None
        } else {
            Some(self.pow(a, self.q() - 2))
        }
    }
    fn is_zero(&self, a: &Fq) -> bool {
        a.0.is_empty()
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.q())
    }
    fn nth_element(&self, mut i: u64) -> Fq {
        let mut v = Vec::new();
        while i > 0 && v.len() < self.m as usize {
            v.push(i % self.p);
            i /= self.p;
        }
        Fq(trim(v))
    }
    fn pth_root(&self, a: &Fq) -> Fq {
        self.pow(a, self.q() / self.p)
    }
    fn describe(&self) -> String {
        if self.m == 1 {
            format!("F_{}", self.p)
        } else {
            let modstr = fmt_poly_fp(&self.modulus, &self.gen);
            format!(
                "F_{}^{} = F_{}[{}]/({})",
                self.p, self.m, self.p, self.gen, modstr
            )
        }
    }
    fn named_generator(&self) -> Option<Fq> {
        (self.m > 1).then(|| self.generator())
    }

    fn fmt_elt(&self, a: &Fq) -> String {
        if a.0.is_empty() {
            return "0".into();
        }
        fmt_poly_fp(&a.0, &self.gen)
    }

    fn extend(&self, minpoly: &[Fq]) -> Result<Extension<Self>> {
        let mp: Vec<Fq> = {
            let mut v = minpoly.to_vec();
            while v.last().is_some_and(|c| c.0.is_empty()) {
                v.pop();
            }
            v
        };
        if mp.len() < 2 {
            return Err(Error::Invalid(
                "minimal polynomial must have positive degree".into(),
            ));
        }
        let k = mp.len() - 1;
        if k == 1 {
            let root = self.neg(&self.div(&mp[0], &mp[1]).expect("nonzero lead"));
            return Ok(Extension {
                field: self.clone(),
                old_generator: Some(self.generator()),
                root,
            });
        }
        if self.m == 1 {
            let modulus: Vec<u64> = mp
                .iter()
                .map(|c| c.0.first().copied().unwrap_or(0))
                .collect();
            let modulus = monic(modulus, self.p);
            if !is_irreducible(&modulus, self.p) {
                return Err(Error::Invalid("minimal polynomial is reducible".into()));
            }
            let field = FiniteField {
                p: self.p,
                m: k as u32,
                modulus,
                gen: "g".into(),
            };
            let root = field.generator();
            return Ok(Extension {
                field,
                old_generator: None,
                root,
            });
        }
        // General case: flatten F_q(root) into a single power basis over F_p.
        let n = self.m as usize * k;
        let big = FiniteField::of_order(self.p, n as u32)?;
        if big.q() > MAX_SEARCH_ORDER {
            return Err(Error::UnsupportedExtension(
                "extension too large to build".into(),
            ));
        }
        let old_mod: Vec<Fq> = self
            .modulus
            .iter()
            .map(|c| big.from_i64(*c as i64))
            .collect();
        let gen_image = (0..big.q())
            .map(|i| big.nth_element(i))
            .find(|x| big.is_zero(&eval(&big, &old_mod, x)))
            .ok_or_else(|| Error::Invalid("old modulus has no root in the extension".into()))?;
        let mapped: Vec<Fq> = mp
            .iter()
            .map(|c| self.evaluate_in(&big, c, &gen_image))
            .collect();
        let roots: Vec<Fq> = (0..big.q())
            .map(|i| big.nth_element(i))
            .filter(|x| big.is_zero(&eval(&big, &mapped, x)))
            .collect();
        let qsmall = self.q();
        let in_subfield = |r: &Fq| {
            (1..k)
                .filter(|j| k % j == 0)
                .any(|j| big.pow(r, qsmall.pow(j as u32)) == *r)
        };
        if roots.len() != k || roots.iter().any(in_subfield) {
            return Err(Error::Invalid("minimal polynomial is reducible".into()));
        }
        Ok(Extension {
            field: big,
            old_generator: Some(gen_image),
            root: roots[0].clone(),
        })
    }
}

fn eval(f: &FiniteField, poly: &[Fq], x: &Fq) -> Fq {
    let mut acc = f.zero();
    for c in poly.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

fn fmt_poly_fp(v: &[u64], gen: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in v.iter().enumerate().rev() {
        if *c == 0 {
            continue;
        }
        let s = match (i, *c) {
            (0, c) => c.to_string(),
            (1, 1) => gen.to_string(),
            (1, c) => format!("{c}*{gen}"),
            (i, 1) => format!("{gen}^{i}"),
            (i, c) => format!("{c}*{gen}^{i}"),
        };
        parts.push(s);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

// ---- dense polynomial helpers over F_p (low to high) ----

pub(crate) fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn monic(v: Vec<u64>, p: u64) -> Vec<u64> {
    let v = trim(v);
    match v.last() {
        Some(&lead) if lead != 1 => {
            let li = modinv(lead, p);
            v.iter().map(|c| c * li % p).collect()
        }
        _ => v,
    }
}

fn poly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect()
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect()
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let li = modinv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * li % p;
        if c != 0 {
            for (j, mj) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + p - c * mj % p) % p;
            }
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(a, p)
}

/// x^(p^k) mod m, by k successive p-th powers.
fn frob_x(k: usize, m: &[u64], p: u64) -> Vec<u64> {
    let mut cur = poly_rem(&[0, 1], m, p);
    for _ in 0..k {
        let mut acc = vec![1u64];
        let mut base = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_rem(&poly_mul(&acc, &base, p), m, p);
            }
            base = poly_rem(&poly_mul(&base, &base, p), m, p);
            e >>= 1;
        }
        cur = acc;
    }
    cur
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let full = frob_x(n, f, p);
    if trim(poly_sub(&full, &x, p)) != Vec::<u64>::new() {
        return false;
    }
    let mut primes = Vec::new();
    let mut k = n;
    let mut d = 2;
    while d * d <= k {
        if k % d == 0 {
            primes.push(d);
            while k % d == 0 {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        primes.push(k);
    }
    for r in primes {
        let h = frob_x(n / r, f, p);
        let g = poly_gcd(&poly_sub(&h, &x, p), f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn first_irreducible(p: u64, n: usize) -> Option<Vec<u64>> {
    let total = p.checked_pow(n as u32)?;
    for i in 0..total {
        let mut v = Vec::with_capacity(n + 1);
        let mut k = i;
        for _ in 0..n {
            v.push(k % p);
            k /= p;
        }
        v.push(1);
        if v[0] != 0 && is_irreducible(&v, p) {
            return Some(v);
        }
    }
    None
}
