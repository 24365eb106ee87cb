//! Multiplicity annotation of a skeleton.
//!
//! An open edge is certified constant when one of its ends sees no surplus
//! toward the other: the disk on that side then maps onto a disk, so `m` is
//! monotone along the edge and pinned between the two directional
//! multiplicities at the ends. Edges that cannot be certified are split,
//! first at radii read off Newton polygons around the lower end, then by
//! bisection, until the budget runs out.

use super::ResElt;
use crate::berkline::{direction_from, BerkPoint, Direction, EdgeStatus, PointType, Skeleton};
use crate::error::Result;
use crate::mult::{directional_data, has_inseparable_reduction, local_degree, LocalData};
use crate::ratmap::{wronskian, Poly, RationalMap};
use crate::valfield::{Exp, OrdInfo, ValuedField};

/// A skeleton together with the local data computed at its type II vertices.
#[derive(Clone, Debug)]
pub struct Annotated<E, T> {
    pub skeleton: Skeleton<E>,
    /// Indexed like `skeleton.vertices`.
    pub local: Vec<Option<LocalData<E, T>>>,
}

/// Valuations of the roots of `f`, `g`, `W` and `f - φ(a) g` around `a`:
/// the radii where `m` may jump on segments ending at `a`. A truncated `a`
/// is used as is, so only radii inside its precision show up.
pub fn seed_radii<V: ValuedField>(k: &V, phi: &RationalMap<V::Elem>, a: &V::Elem) -> Vec<Exp> {
    let mut polys = vec![phi.f.clone(), phi.g.clone(), wronskian(k, phi)];
    if let Ok(Some(b)) = phi.eval(k, a) {
        polys.push(phi.f.sub(k, &phi.g.scale(k, &b)));
    }
    let mut out: Vec<Exp> = Vec::new();
    for p in polys {
        if !p.is_zero() {
            out.extend(certified_slopes(k, &p.taylor_shift(k, a)));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Root valuations read off the lower hull of the coefficients whose ord
/// is certified; coefficients lost to precision are skipped.
fn certified_slopes<V: ValuedField>(k: &V, p: &Poly<V::Elem>) -> Vec<Exp> {
    let pts: Vec<(i64, Exp)> =
        p.c.iter()
            .enumerate()
            .filter_map(|(i, c)| match k.ord_info(c) {
                OrdInfo::Exact(v) => Some((i as i64, v)),
                _ => None,
            })
            .collect();
    let mut hull: Vec<(i64, Exp)> = Vec::new();
    for &pt in &pts {
        while let [.., a, b] = hull[..] {
            if (b.1 - a.1) * Exp::from_integer(pt.0 - a.0)
                >= (pt.1 - a.1) * Exp::from_integer(b.0 - a.0)
            {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| -(w[1].1 - w[0].1) / Exp::from_integer(w[1].0 - w[0].0))
        .collect()
}

fn snap_up<V: ValuedField>(k: &V, s: Exp) -> Exp {
    if k.in_value_group(s) {
        return s;
    }
    let n = k.ram_index() as i64;
    (s * n).ceil() / n
}

fn snap_down<V: ValuedField>(k: &V, s: Exp) -> Exp {
    if k.in_value_group(s) {
        return s;
    }
    let n = k.ram_index() as i64;
    (s * n).floor() / n
}

/// A value-group radius strictly between `lo` and `hi`, near the middle.
fn vg_between<V: ValuedField>(k: &V, lo: Exp, hi: Exp) -> Option<Exp> {
    let mid = (lo + hi) / 2;
    if k.in_value_group(mid) {
        return Some(mid);
    }
    let c = snap_down(k, mid);
    if c > lo {
        return Some(c);
    }
    let c = snap_up(k, mid);
    (c < hi).then_some(c)
}

enum Certified {
    /// One end sees no surplus toward the other.
    Proved(usize),
    /// Both ends agree but both see surplus.
    EndsAgree(usize),
    No,
}

struct Annotator<'a, V: ValuedField> {
    k: &'a V,
    phi: &'a RationalMap<V::Elem>,
    out: Annotated<V::Elem, ResElt<V>>,
    seeds: Vec<Option<Vec<Exp>>>,
}

impl<V: ValuedField> Annotator<'_, V> {
    fn fill(&mut self, i: usize) -> Result<()> {
        let (k, phi) = (self.k, self.phi);
        while self.out.local.len() <= i {
            self.out.local.push(None);
            self.seeds.push(None);
        }
        let point = self.out.skeleton.vertices[i].point.clone();
        let (m, insep, ld) = match &point {
            BerkPoint::Ball {
                kind: PointType::II,
                ..
            } => {
                let ld = directional_data(k, phi, &point)?;
                (Some(ld.m), Some(ld.insep), Some(ld))
            }
            BerkPoint::Classical(a) if k.precision(a).is_some() => (None, None, None),
            _ => {
                let m = local_degree(k, phi, &point)?;
                (
                    Some(m),
                    Some(has_inseparable_reduction(k, phi, &point)?),
                    None,
                )
            }
        };
        let v = &mut self.out.skeleton.vertices[i];
        if m.is_some() {
            v.m = m;
        }
        if insep.is_some() {
            v.insep = insep;
        }
        self.out.local[i] = ld;
        Ok(())
    }

    fn seeds_at(&mut self, i: usize) -> Vec<Exp> {
        if self.seeds[i].is_none() {
            let s = match self.out.skeleton.vertices[i].point.center() {
                Some(a) => seed_radii(self.k, self.phi, a),
                None => Vec::new(),
            };
            self.seeds[i] = Some(s);
        }
        self.seeds[i].clone().unwrap()
    }

    /// `(m, s)` of `φ` in direction `dir` at vertex `i`; `s` is `None` when
    /// it is not available there.
    fn dir_data(&self, i: usize, toward: Option<usize>) -> Result<Option<(usize, Option<usize>)>> {
        let k = self.k;
        let v = &self.out.skeleton.vertices[i];
        if let Some(ld) = &self.out.local[i] {
            let dir = match toward {
                Some(j) => direction_from(k, &v.point, &self.out.skeleton.vertices[j].point)?.dir,
                None => Direction::Infinity,
            };
            let (m, s) = ld.dir_mults(k.residue_field(), &dir);
            return Ok(Some((m, Some(s))));
        }
        // classical points, ∞ and type III points: both sides carry m
        Ok(v.m.map(|m| (m, None)))
    }

    fn certify(&self, e: usize) -> Result<Certified> {
        let edge = &self.out.skeleton.edges[e];
        let up = self.dir_data(edge.child, None)?;
        let down = self.dir_data(edge.parent, Some(edge.child))?;
        Ok(match (up, down) {
            (Some((mu, su)), Some((md, sd))) if mu == md => {
                if su == Some(0) || sd == Some(0) {
                    Certified::Proved(mu)
                } else {
                    Certified::EndsAgree(mu)
                }
            }
            _ => Certified::No,
        })
    }

    /// Where to split edge `e`: a seed radius strictly inside it if there
    /// is one (flagged `true`), else a value-group point near the middle.
    fn split_radius(&mut self, e: usize) -> Option<(Exp, bool)> {
        let k = self.k;
        let edge = self.out.skeleton.edges[e].clone();
        let child = &self.out.skeleton.vertices[edge.child].point;
        let lo = self.out.skeleton.vertices[edge.parent].point.s();
        let hi = match child {
            BerkPoint::Classical(a) => k.precision(a),
            p => p.s(),
        };
        let inside =
            |r: Exp| lo.is_none_or(|l| r > l) && hi.is_none_or(|h| r < h) && k.in_value_group(r);
        if let Some(r) = self.seeds_at(edge.child).into_iter().find(|r| inside(*r)) {
            return Some((r, true));
        }
        let r = match (lo, hi) {
            (Some(l), Some(h)) => vg_between(k, l, h),
            (Some(l), None) => Some(snap_up(k, l + 1)),
            (None, Some(h)) => Some(snap_down(k, h - 1)),
            (None, None) => None,
        };
        r.map(|r| (r, false))
    }

    /// Insert the vertex below which a classical leaf is alone with its
    /// zeros, poles and critical points.
    fn deepen_leaf(&mut self, i: usize) -> Result<()> {
        let k = self.k;
        let sk = &self.out.skeleton;
        let Some(e) = sk.edges.iter().position(|ed| ed.child == i) else {
            return Ok(());
        };
        let BerkPoint::Classical(c) = sk.vertices[i].point.clone() else {
            return Ok(());
        };
        let Some(parent_s) = sk.vertices[sk.edges[e].parent].point.s() else {
            return Ok(());
        };
        let prec = k.precision(&c);
        let deepest = self
            .seeds_at(i)
            .into_iter()
            .filter(|r| prec.is_none_or(|p| *r < p))
            .fold(parent_s, Exp::max);
        let s = snap_up(k, deepest + 1);
        if prec.is_some_and(|p| s > p) {
            log::debug!("leaf {} is too shallow to isolate", k.fmt_elem(&c));
            return Ok(());
        }
        let j = self.out.skeleton.subdivide(k, e, s)?;
        self.fill(j)?;
        if prec.is_some() {
            // beyond every seed radius the leaf inherits the inner direction
            let dir = direction_from(
                k,
                &self.out.skeleton.vertices[j].point,
                &BerkPoint::Classical(c),
            )?
            .dir;
            let (m, _) = self.out.local[j]
                .as_ref()
                .unwrap()
                .dir_mults(k.residue_field(), &dir);
            let v = &mut self.out.skeleton.vertices[i];
            v.m = Some(m);
            v.insep = Some(false);
            let ed = &mut self.out.skeleton.edges[e];
            ed.m = Some(m);
            ed.status = EdgeStatus::Constant;
        }
        Ok(())
    }

    /// A classical point joined straight to `∞` gets a type II vertex in
    /// between, so that both ends have a radius to deepen from.
    fn bridge(&mut self, e: usize) -> Result<()> {
        let k = self.k;
        let edge = self.out.skeleton.edges[e].clone();
        let sk = &self.out.skeleton;
        if !matches!(sk.vertices[edge.child].point, BerkPoint::Classical(_))
            || sk.vertices[edge.parent].point != BerkPoint::Infinity
        {
            return Ok(());
        }
        let r = self
            .seeds_at(edge.child)
            .into_iter()
            .fold(Exp::from_integer(0), Exp::min);
        let j = self.out.skeleton.subdivide(k, e, snap_down(k, r))?;
        self.fill(j)
    }

    fn deepen_infinity(&mut self, i: usize) -> Result<()> {
        let k = self.k;
        let sk = &self.out.skeleton;
        let Some(e) = sk.edges.iter().position(|ed| ed.parent == i) else {
            return Ok(());
        };
        let top = sk.edges[e].child;
        let Some(top_s) = sk.vertices[top].point.s() else {
            return Ok(());
        };
        let lowest = self.seeds_at(top).into_iter().fold(top_s, Exp::min);
        let s = snap_down(k, lowest - 1);
        let j = self.out.skeleton.subdivide(k, e, s)?;
        self.fill(j)
    }
}

fn set_constant<E>(sk: &mut Skeleton<E>, e: usize, m: usize) {
    let ed = &mut sk.edges[e];
    ed.m = Some(m);
    ed.status = EdgeStatus::Constant;
}

/// Evaluate `m` on every vertex and certify or split every edge, with at
/// most `max_subdiv` splits per original edge.
pub fn annotate_skeleton<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    sk: Skeleton<V::Elem>,
    max_subdiv: usize,
) -> Result<Annotated<V::Elem, ResElt<V>>> {
    let n = sk.vertices.len();
    let mut an = Annotator {
        k,
        phi,
        out: Annotated {
            skeleton: sk,
            local: Vec::new(),
        },
        seeds: Vec::new(),
    };
    for i in 0..n {
        an.fill(i)?;
    }
    for e in 0..an.out.skeleton.edges.len() {
        an.bridge(e)?;
    }
    for i in 0..n {
        match an.out.skeleton.vertices[i].point {
            BerkPoint::Classical(_) => an.deepen_leaf(i)?,
            BerkPoint::Infinity => an.deepen_infinity(i)?,
            _ => {}
        }
    }
    // one budget per original edge, shared by its pieces
    let mut origin: Vec<usize> = (0..an.out.skeleton.edges.len()).collect();
    let mut budget = vec![max_subdiv; origin.len()];
    let mut queue: Vec<usize> = (0..origin.len()).rev().collect();
    while let Some(e) = queue.pop() {
        if an.out.skeleton.edges[e].status == EdgeStatus::Constant {
            continue;
        }
        let cert = an.certify(e)?;
        if let Certified::Proved(m) = cert {
            set_constant(&mut an.out.skeleton, e, m);
            continue;
        }
        let split = an.split_radius(e);
        if let (Certified::EndsAgree(m), Some((r, false))) = (&cert, split) {
            // no seed inside: accept when the middle agrees with both ends
            let mid = an.out.skeleton.vertices[an.out.skeleton.edges[e].child]
                .point
                .ancestor_at(k, r)?;
            if local_degree(k, phi, &mid)? == *m {
                set_constant(&mut an.out.skeleton, e, *m);
                continue;
            }
        }
        let o = origin[e];
        let Some((r, _)) = split.filter(|_| budget[o] > 0) else {
            an.out.skeleton.edges[e].status = EdgeStatus::Unresolved;
            continue;
        };
        let j = an.out.skeleton.subdivide(k, e, r)?;
        an.fill(j)?;
        budget[o] -= 1;
        origin.push(o);
        queue.push(an.out.skeleton.edges.len() - 1);
        queue.push(e);
    }
    Ok(an.out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramlocus::{critical_points, hull_crit};
    use crate::valfield::{exp_int, CoeffField, Puiseux, Rationals};

    fn ints<V: ValuedField>(k: &V, c: &[i64]) -> Poly<V::Elem> {
        Poly::new(k, c.iter().map(|&n| k.from_i64(n)).collect())
    }

    #[test]
    fn square_is_ramified_along_the_whole_axis() {
        let k = Puiseux::new(Rationals, exp_int(32), 1);
        let phi = RationalMap::polynomial(&k, ints(&k, &[0, 0, 1]));
        let crit = critical_points(&k, &phi, exp_int(8)).unwrap();
        let an = annotate_skeleton(&k, &phi, hull_crit(&k, &crit).unwrap(), 6).unwrap();
        let sk = &an.skeleton;
        assert!(sk.is_tree());
        assert!(sk
            .edges
            .iter()
            .all(|e| e.status == EdgeStatus::Constant && e.m == Some(2)));
        assert!(sk.vertices.iter().all(|v| v.m == Some(2)));
    }

    #[test]
    fn mobius_edges_are_unramified() {
        let k = Puiseux::new(Rationals, exp_int(32), 1);
        let phi = RationalMap::new(&k, ints(&k, &[1, 1]), ints(&k, &[-1, 1])).unwrap();
        let sk = Skeleton::hull(
            &k,
            &[BerkPoint::Classical(k.from_i64(2)), BerkPoint::Infinity],
        )
        .unwrap();
        let an = annotate_skeleton(&k, &phi, sk, 6).unwrap();
        assert!(an
            .skeleton
            .edges
            .iter()
            .all(|e| e.m == Some(1) && e.status == EdgeStatus::Constant));
    }

    #[test]
    fn seeds_see_the_roots_of_w() {
        let k = Puiseux::new(Rationals, exp_int(32), 1);
        let t = k.monomial(k.coeff().one(), exp_int(1));
        // z^3 - 3 t^2 z has critical points ±t
        let phi = RationalMap::polynomial(
            &k,
            Poly::new(
                &k,
                vec![
                    k.zero(),
                    k.mul(&k.from_i64(-3), &k.mul(&t, &t)),
                    k.zero(),
                    k.one(),
                ],
            ),
        );
        assert!(seed_radii(&k, &phi, &k.zero()).contains(&exp_int(1)));
    }
}
