//! Directional and surplus multiplicities at a type II point.
//!
//! Special directions are the roots of `H` and the points where the reduced
//! map ramifies beyond its inseparable degree `q`. They are found without
//! factoring: a squarefree modulus `P` collecting all candidates is split by
//! gcds whenever a quantity evaluated at its roots vanishes on some but not
//! all of them.

use serde_json::{json, Value};

use super::{conjugate, ResElt};
use crate::berkline::{BerkPoint, Direction};
use crate::error::Result;
use crate::ratmap::{split_on, RPoly, RationalMap, ReducedMap};
use crate::valfield::{CoeffField, ValuedField};

/// A direction, or a Galois-stable set of directions: the roots of a
/// squarefree residue polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum DirLabel<T> {
    Finite(T),
    Infinity,
    RootsOf(RPoly<T>),
}

/// Image direction, possibly as a polynomial expression in the root.
#[derive(Clone, Debug, PartialEq)]
pub enum DirImage<T> {
    Finite(T),
    Infinity,
    /// `e(a)` for `a` a root of the class polynomial.
    Expr(RPoly<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirClass<T> {
    pub label: DirLabel<T>,
    /// Number of directions in the class.
    pub count: usize,
    pub m_dir: usize,
    pub s_dir: usize,
    pub image: DirImage<T>,
}

#[derive(Clone, Debug)]
pub struct LocalData<E, T> {
    pub at: BerkPoint<E>,
    pub image: BerkPoint<E>,
    pub m: usize,
    pub d: usize,
    pub insep: bool,
    /// Directional multiplicity of every direction not listed (the
    /// inseparable degree of the reduction; 1 when it is separable).
    pub generic_m_dir: usize,
    pub classes: Vec<DirClass<T>>,
    pub red: ReducedMap<T>,
}

impl<E: Clone + PartialEq, T: Clone + PartialEq> LocalData<E, T> {
    /// `m + Σ s = d` over the listed directions.
    pub fn balance_holds(&self) -> bool {
        self.m
            + self
                .classes
                .iter()
                .map(|c| c.count * c.s_dir)
                .sum::<usize>()
            == self.d
    }

    /// `(m_dir, s_dir)` in direction `v`.
    pub fn dir_mults<F: CoeffField<Elt = T>>(&self, kr: &F, v: &Direction<T>) -> (usize, usize) {
        class_of(kr, &self.classes, v).map_or((self.generic_m_dir, 0), |c| (c.m_dir, c.s_dir))
    }

    pub fn surplus_total(&self) -> usize {
        self.classes.iter().map(|c| c.count * c.s_dir).sum()
    }

    pub fn to_json<V: ValuedField<Elem = E>>(&self, k: &V) -> Value
    where
        V::Res: CoeffField<Elt = T>,
    {
        let kr = k.residue_field();
        let dirs: Vec<Value> = self
            .classes
            .iter()
            .map(|c| {
                let label = match &c.label {
                    DirLabel::Finite(a) => kr.fmt_elt(a),
                    DirLabel::Infinity => "inf".into(),
                    DirLabel::RootsOf(p) => format!("roots of {}", p.fmt_with(kr, "a")),
                };
                let image = match &c.image {
                    DirImage::Finite(a) => kr.fmt_elt(a),
                    DirImage::Infinity => "inf".into(),
                    DirImage::Expr(e) => e.fmt_with(kr, "a"),
                };
                json!({"direction": label, "count": c.count, "m_dir": c.m_dir, "s_dir": c.s_dir, "image": image})
            })
            .collect();
        json!({
            "point": self.at.fmt(k),
            "image": self.image.fmt(k),
            "m": self.m,
            "d": self.d,
            "insep": self.insep,
            "directions": dirs,
            "other_directions": {"m_dir": self.generic_m_dir, "s_dir": 0},
            "balance": self.balance_holds(),
        })
    }
}

/// Directional data of `φ` at the type II point `x`, in the coordinate
/// `z ↦ a + π^s z` at `x` and the matching coordinate at `φ(x)`.
pub fn directional_data<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    x: &BerkPoint<V::Elem>,
) -> Result<LocalData<V::Elem, ResElt<V>>> {
    let conj = conjugate(k, phi, x)?;
    let kr = k.residue_field();
    let red = conj.red;
    let (a, b) = (&red.f_red, &red.g_red);
    let m = red.degree_red;

    // inseparable degree q: ψ̃ = χ(z^q) with χ separable
    let p = kr.characteristic() as usize;
    let (mut ca, mut cb, mut q) = (a.clone(), b.clone(), 1usize);
    if p > 0 {
        while let (Some(x), Some(y)) = (ca.deflate(kr, p), cb.deflate(kr, p)) {
            if x.is_constant() && y.is_constant() {
                break;
            }
            ca = x;
            cb = y;
            q *= p;
        }
    }
    let w_chi = ca
        .derivative(kr)
        .mul(kr, &cb)
        .sub(kr, &ca.mul(kr, &cb.derivative(kr)));
    // roots c with c^q a root of W_χ: coefficient-wise q-th roots of rad(W_χ)
    let mut r = w_chi.radical(kr);
    let mut qq = q;
    while qq > 1 {
        r = r.coeff_pth_root(kr);
        qq /= p;
    }
    let cand = red.h.mul(kr, &r).radical(kr);

    let mut classes = Vec::new();
    if !cand.is_constant() {
        for (pc, s_dir) in refine(kr, vec![cand], |j| red.h.hasse(kr, j), 0) {
            let dz = |j: usize| {
                // Hasse coefficient j of A(z)B(α) - B(z)A(α) at z = α, as a polynomial in α
                a.hasse(kr, j)
                    .mul(kr, b)
                    .sub(kr, &b.hasse(kr, j).mul(kr, a))
            };
            for (pm, m_dir) in refine(kr, vec![pc], dz, 1) {
                let (pole, finite) = split_on(kr, &pm, b);
                if !pole.is_constant() {
                    classes.push(make_class(kr, pole, m_dir, s_dir, DirImage::Infinity));
                }
                if !finite.is_constant() {
                    let inv = b
                        .inv_mod(kr, &finite)
                        .expect("B is a unit modulo the finite part");
                    let e = a.mul(kr, &inv).rem(kr, &finite);
                    let image = if e.is_constant() {
                        DirImage::Finite(e.coeff(kr, 0))
                    } else {
                        DirImage::Expr(e)
                    };
                    classes.push(make_class(kr, finite, m_dir, s_dir, image));
                }
            }
        }
    }
    // ∞ in the chart z ↦ 1/z
    let ar = rev(kr, a, m);
    let br = rev(kr, b, m);
    let a0 = ar.coeff(kr, 0);
    let b0 = br.coeff(kr, 0);
    let d_inf = ar.scale(kr, &b0).sub(kr, &br.scale(kr, &a0));
    let m_inf = d_inf.c.iter().take_while(|c| kr.is_zero(c)).count();
    let image_inf = match kr.div(&a0, &b0) {
        Some(v) => DirImage::Finite(v),
        None => DirImage::Infinity,
    };
    classes.push(DirClass {
        label: DirLabel::Infinity,
        count: 1,
        m_dir: m_inf,
        s_dir: red.h_inf,
        image: image_inf,
    });
    classes.retain(|c| c.s_dir > 0 || c.m_dir != q);

    let insep = super::reduced_wronskian_vanishes(kr, &red);
    Ok(LocalData {
        at: x.clone(),
        image: conj.image,
        m,
        d: phi.d,
        insep,
        generic_m_dir: q,
        classes,
        red,
    })
}

fn rev<F: CoeffField>(kr: &F, p: &RPoly<F::Elt>, n: usize) -> RPoly<F::Elt> {
    let mut c = p.c.clone();
    c.resize(n + 1, kr.zero());
    c.reverse();
    RPoly::new(kr, c)
}

fn make_class<F: CoeffField>(
    kr: &F,
    p: RPoly<F::Elt>,
    m_dir: usize,
    s_dir: usize,
    image: DirImage<F::Elt>,
) -> DirClass<F::Elt> {
    let count = p.deg();
    let label = if count == 1 {
        DirLabel::Finite(kr.neg(&p.coeff(kr, 0)))
    } else {
        DirLabel::RootsOf(p)
    };
    DirClass {
        label,
        count,
        m_dir,
        s_dir,
        image,
    }
}

/// Split squarefree moduli by the first index `j ≥ start` at which
/// `value(j)` is nonzero at the roots; returns `(modulus, j)` pieces.
fn refine<F: CoeffField>(
    kr: &F,
    moduli: Vec<RPoly<F::Elt>>,
    value: impl Fn(usize) -> RPoly<F::Elt>,
    start: usize,
) -> Vec<(RPoly<F::Elt>, usize)> {
    let mut out = Vec::new();
    let mut pending: Vec<RPoly<F::Elt>> = moduli;
    let mut j = start;
    while !pending.is_empty() {
        let val = value(j);
        let mut next = Vec::new();
        for pm in pending {
            let (zero, nonzero) = split_on(kr, &pm, &val);
            if !nonzero.is_constant() {
                out.push((nonzero, j));
            }
            if !zero.is_constant() {
                next.push(zero);
            }
        }
        pending = next;
        j += 1;
        assert!(j < 10_000, "Hasse expansion failed to terminate");
    }
    out
}

/// For a residue target `u` (`None` is `∞`): the directional multiplicities
/// over all preimage directions of `u` sum to `m`. Preimages are counted as
/// distinct roots of `A - uB` (plus `∞`), independently of the Hasse data.
pub fn directional_sum_holds<E: Clone, F: CoeffField>(
    kr: &F,
    data: &LocalData<E, F::Elt>,
    u: Option<&F::Elt>,
) -> bool {
    let red = &data.red;
    let (a, b, m) = (&red.f_red, &red.g_red, data.m);
    let fiber = match u {
        Some(u) => a.sub(kr, &b.scale(kr, u)),
        None => b.clone(),
    };
    let distinct_affine = fiber.radical(kr).deg();
    let inf_in_fiber = fiber.deg() < m || fiber.is_zero();
    let mut special_count = 0usize;
    let mut special_sum = 0usize;
    for c in &data.classes {
        let hits = match (&c.label, &c.image, u) {
            (DirLabel::Infinity, img, _) => usize::from(image_matches(kr, img, u)),
            (_, DirImage::Infinity, None) => c.count,
            (_, DirImage::Infinity, Some(_)) | (_, _, None) => 0,
            (_, DirImage::Finite(v), Some(u)) => {
                if v == u {
                    c.count
                } else {
                    0
                }
            }
            (DirLabel::RootsOf(pm), DirImage::Expr(e), Some(u)) => {
                let diff = e.sub(kr, &RPoly::constant(kr, u.clone()));
                split_on(kr, pm, &diff).0.deg()
            }
            (DirLabel::Finite(_), DirImage::Expr(_), Some(_)) => 0,
        };
        special_count += hits;
        special_sum += hits * c.m_dir;
    }
    let total_preimages = distinct_affine + usize::from(inf_in_fiber);
    total_preimages >= special_count
        && special_sum + (total_preimages - special_count) * data.generic_m_dir == m
}

fn image_matches<F: CoeffField>(kr: &F, img: &DirImage<F::Elt>, u: Option<&F::Elt>) -> bool {
    let _ = kr;
    match (img, u) {
        (DirImage::Infinity, None) => true,
        (DirImage::Finite(v), Some(u)) => v == u,
        _ => false,
    }
}

/// The class containing the direction `v`, if it is special.
pub fn class_of<'a, F: CoeffField>(
    kr: &F,
    classes: &'a [DirClass<F::Elt>],
    v: &Direction<F::Elt>,
) -> Option<&'a DirClass<F::Elt>> {
    classes.iter().find(|c| match (&c.label, v) {
        (DirLabel::Infinity, Direction::Infinity) => true,
        (DirLabel::Finite(a), Direction::Finite(b)) => a == b,
        (DirLabel::RootsOf(p), Direction::Finite(b)) => kr.is_zero(&p.eval(kr, b)),
        _ => false,
    })
}
