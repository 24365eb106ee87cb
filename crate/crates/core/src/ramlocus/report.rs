//! Components of the ramification locus and the checks built on them.

use serde::Serialize;
use serde_json::{json, Value};

use super::{
    annotate_skeleton, critical_points, hull_crit, total_weight, Annotated, CritLocus,
    CriticalPoint, ResElt,
};
use crate::berkline::{
    direction_from, BerkPoint, Direction, EdgeStatus, PointType, Skeleton, TreeOrder,
};
use crate::error::Result;
use crate::mult::{directional_sum_holds, local_degree};
use crate::ratmap::RationalMap;
use crate::valfield::{fmt_exp, CoeffField, Exp, ValuedField};

/// Knobs for the global analysis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RamConfig {
    /// Critical points are expanded until their known part reaches this ord.
    #[serde(serialize_with = "ser_exp")]
    pub depth: Exp,
    /// Splits allowed per hull or probe edge.
    pub max_subdiv: usize,
    /// Probe rays per hull vertex.
    pub rays: usize,
    /// Extra distance past the tube bound; `None` is `1/(2N)`.
    #[serde(serialize_with = "ser_opt_exp")]
    pub epsilon: Option<Exp>,
}

fn ser_exp<S: serde::Serializer>(e: &Exp, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_exp(e))
}

fn ser_opt_exp<S: serde::Serializer>(
    e: &Option<Exp>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match e {
        Some(e) => s.serialize_str(&fmt_exp(e)),
        None => s.serialize_none(),
    }
}

impl Default for RamConfig {
    fn default() -> Self {
        RamConfig {
            depth: Exp::from_integer(12),
            max_subdiv: 12,
            rays: 3,
            epsilon: None,
        }
    }
}

impl RamConfig {
    pub fn epsilon_for<V: ValuedField>(&self, k: &V) -> Exp {
        self.epsilon
            .unwrap_or_else(|| Exp::new(1, 2 * k.ram_index() as i64))
    }
}

/// Width of the tube around the hull that contains the ramification locus
/// in characteristic zero: `1/(p-1)` when `0 < p ≤ d`, else `0`.
pub fn tubular_bound(p: u64, d: usize) -> Exp {
    if p > 0 && p as usize <= d {
        Exp::new(1, p as i64 - 1)
    } else {
        Exp::from_integer(0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    /// Total critical weight inside; `None` is `+∞`.
    pub crit_weight: Option<usize>,
    pub contains_totally_ramified: bool,
    /// No unresolved edge touches the component.
    pub resolved: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdicts {
    pub component_bound: bool,
    /// Probes past the tube have `m = 1`; `None` outside characteristic zero.
    pub tubular: Option<bool>,
    /// `Σ w = 2d - 2`; `None` for inseparable maps.
    pub hurwitz: Option<bool>,
    pub balance: bool,
}

#[derive(Clone, Debug)]
pub struct RamReport<E, T> {
    pub d: usize,
    pub crit: Vec<CriticalPoint<E, T>>,
    pub annotated: Annotated<E, T>,
    /// Vertices present before annotation and probing.
    pub hull_vertices: usize,
    pub probes: Vec<usize>,
    pub components: Vec<Component>,
    /// Component count as an interval; equal ends when fully resolved.
    pub count: (usize, usize),
    pub verdicts: Verdicts,
    pub resolved: bool,
}

impl<E: Clone + PartialEq, T: Clone + PartialEq> RamReport<E, T> {
    pub fn skeleton(&self) -> &Skeleton<E> {
        &self.annotated.skeleton
    }

    pub fn to_json<V: ValuedField<Elem = E>>(&self, k: &V) -> Value
    where
        V::Res: CoeffField<Elt = T>,
    {
        let mut o = self.skeleton().to_json(k);
        let map = o.as_object_mut().unwrap();
        map.insert("degree".into(), json!(self.d));
        map.insert(
            "critical_points".into(),
            Value::Array(self.crit.iter().map(|c| c.to_json(k)).collect()),
        );
        map.insert(
            "components".into(),
            serde_json::to_value(&self.components).unwrap(),
        );
        map.insert(
            "component_count".into(),
            json!({"min": self.count.0, "max": self.count.1}),
        );
        map.insert("scope".into(), json!("hull+tube"));
        map.insert("resolved".into(), json!(self.resolved));
        map.insert(
            "verdicts".into(),
            serde_json::to_value(&self.verdicts).unwrap(),
        );
        o
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Probe points at ρ-distance `delta` past each hull vertex, in up to
/// `rays` residue directions the hull does not use, plus upward from a
/// top vertex that is not joined to `∞`.
fn probe_points<V: ValuedField>(
    k: &V,
    sk: &Skeleton<V::Elem>,
    hull_n: usize,
    delta: Exp,
    rays: usize,
) -> Result<Vec<(usize, BerkPoint<V::Elem>)>> {
    let kr = k.residue_field();
    let n = k.ram_index() as i64;
    let up = |s: Exp| {
        if k.in_value_group(s) {
            s
        } else {
            (s * n).ceil() / n
        }
    };
    let down = |s: Exp| {
        if k.in_value_group(s) {
            s
        } else {
            (s * n).floor() / n
        }
    };
    let mut out = Vec::new();
    for i in 0..hull_n {
        let v = &sk.vertices[i].point;
        let BerkPoint::Ball {
            center,
            s,
            kind: PointType::II,
        } = v
        else {
            continue;
        };
        let mut used = Vec::new();
        for (_, j) in sk.neighbors(i) {
            used.push(direction_from(k, v, &sk.vertices[j].point)?.dir);
        }
        let limit = kr.order().unwrap_or(u64::MAX);
        let (mut taken, mut idx) = (0, 0u64);
        while taken < rays && idx < limit && idx < (rays as u64 + used.len() as u64 + 1) * 4 {
            let u = kr.nth_element(idx);
            idx += 1;
            if used.contains(&Direction::Finite(u.clone())) {
                continue;
            }
            let c = k.add(center, &k.mul(&k.lift(&u), &k.unif_pow(*s)?));
            out.push((i, BerkPoint::ball(k, &c, up(*s + delta))?));
            taken += 1;
        }
        if !used.contains(&Direction::Infinity) {
            out.push((i, BerkPoint::ball(k, center, down(*s - delta))?));
        }
    }
    Ok(out)
}

/// Whether `x` lies on a non-probe edge or vertex of `sk`.
fn on_hull<V: ValuedField>(k: &V, sk: &Skeleton<V::Elem>, x: &BerkPoint<V::Elem>) -> Result<bool> {
    for v in sk.vertices.iter().filter(|v| !v.probe) {
        if v.point.same(k, x)? {
            return Ok(true);
        }
    }
    for e in sk.edges.iter().filter(|e| !e.probe) {
        let (c, p) = (&sk.vertices[e.child].point, &sk.vertices[e.parent].point);
        if c.compare(k, x)? == TreeOrder::Below && x.compare(k, p)? == TreeOrder::Below {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Build `Hull(Crit)`, extend it by probe rays reaching `bound + ε` past
/// the hull, annotate, and split into components of `{m > 1}`.
pub fn ram_components<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    cfg: &RamConfig,
) -> Result<RamReport<V::Elem, ResElt<V>>> {
    let d = phi.d;
    let crit = critical_points(k, phi, cfg.depth)?;
    let inseparable = crit.iter().any(|c| c.locus == CritLocus::Everywhere);
    let mut sk = hull_crit(k, &crit)?;
    let hull_n = sk.vertices.len();
    let delta = tubular_bound(k.residue_char(), d) + cfg.epsilon_for(k);
    let mut probes = Vec::new();
    for (at, pt) in probe_points(k, &sk, hull_n, delta, cfg.rays)? {
        probes.push(sk.attach_probe(k, at, pt)?);
    }
    let annotated = annotate_skeleton(k, phi, sk, cfg.max_subdiv)?;
    let sk = &annotated.skeleton;
    let n = sk.vertices.len();

    let ramified = |i: usize| sk.vertices[i].m.is_some_and(|m| m > 1);
    let mut fine = Dsu::new(n);
    let mut coarse = Dsu::new(n);
    let mut touches_unresolved = vec![false; n];
    for e in &sk.edges {
        match (e.status, e.m) {
            (EdgeStatus::Constant, Some(m)) if m > 1 => {
                fine.union(e.child, e.parent);
                coarse.union(e.child, e.parent);
            }
            (EdgeStatus::Constant, _) => {}
            _ => {
                touches_unresolved[e.child] = true;
                touches_unresolved[e.parent] = true;
                if ramified(e.child) && ramified(e.parent) {
                    coarse.union(e.child, e.parent);
                }
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut components: Vec<Component> = Vec::new();
    let mut hidden = (0usize, 0usize);
    for i in 0..n {
        let v = &sk.vertices[i];
        if !ramified(i) {
            if v.crit_weight > 0 && v.m.is_some() {
                // conjugate critical points hidden below an unramified vertex
                hidden.0 += 1;
                hidden.1 += v.crit_weight;
            }
            continue;
        }
        let r = fine.find(i);
        let idx = match roots.iter().position(|&x| x == r) {
            Some(idx) => idx,
            None => {
                roots.push(r);
                components.push(Component {
                    vertices: Vec::new(),
                    crit_weight: if inseparable { None } else { Some(0) },
                    contains_totally_ramified: false,
                    resolved: true,
                });
                roots.len() - 1
            }
        };
        let c = &mut components[idx];
        c.vertices.push(i);
        if let Some(w) = c.crit_weight.as_mut() {
            *w += v.crit_weight;
        }
        c.contains_totally_ramified |= v.m == Some(d);
        c.resolved &= !touches_unresolved[i];
    }
    let mut coarse_roots: Vec<usize> = (0..n)
        .filter(|&i| ramified(i))
        .map(|i| coarse.find(i))
        .collect();
    coarse_roots.sort();
    coarse_roots.dedup();
    let count = (coarse_roots.len() + hidden.0, components.len() + hidden.1);
    let resolved = hidden.1 == 0 && sk.edges.iter().all(|e| e.status == EdgeStatus::Constant);

    let kr = k.residue_field();
    let mut balance = true;
    for ld in annotated.local.iter().flatten() {
        balance &= ld.balance_holds();
        let mut targets: Vec<Option<ResElt<V>>> = (0..kr.order().unwrap_or(4).min(4))
            .map(|i| Some(kr.nth_element(i)))
            .collect();
        targets.push(None);
        for u in &targets {
            balance &= directional_sum_holds(kr, ld, u.as_ref());
        }
    }
    let hurwitz = total_weight(&crit).map(|w| w + 2 == 2 * d);
    let component_bound = count.1 <= d.saturating_sub(1).max(usize::from(inseparable))
        && components
            .iter()
            .filter(|c| c.resolved)
            .all(|c| c.crit_weight.is_none_or(|w| w >= 2));
    let tubular =
        (k.characteristic() == 0).then(|| probes.iter().all(|&i| sk.vertices[i].m == Some(1)));
    let verdicts = Verdicts {
        component_bound,
        tubular,
        hurwitz,
        balance,
    };
    Ok(RamReport {
        d,
        crit,
        hull_vertices: hull_n,
        probes,
        components,
        count,
        verdicts,
        resolved,
        annotated,
    })
}

/// `true` iff `m = 1` at every probe `bound + ε` past `Hull(Crit)`.
pub fn tubular_probe<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    epsilon: Exp,
    rays: usize,
    depth: Exp,
) -> Result<bool> {
    let crit = critical_points(k, phi, depth)?;
    let sk = hull_crit(k, &crit)?;
    let delta = tubular_bound(k.residue_char(), phi.d) + epsilon;
    for (_, pt) in probe_points(k, &sk, sk.vertices.len(), delta, rays)? {
        let m = local_degree(k, phi, &pt)?;
        log::debug!("probe {} has m = {m}", pt.fmt(k));
        if m != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct TotalRam<E> {
    pub points: Vec<BerkPoint<E>>,
    /// Skeleton edges with `m = d`.
    pub edges: Vec<usize>,
    pub connected: bool,
    /// `d = 1`: every point is totally ramified.
    pub degenerate: bool,
    /// Totally ramified points off `Hull(Crit)`.
    pub off_hull: Vec<BerkPoint<E>>,
    /// `d ≡ 0, 1 (mod p)` with `p > 0`, checked when `off_hull` is nonempty.
    pub mod_p_consistent: Option<bool>,
}

impl<E: Clone + PartialEq> TotalRam<E> {
    pub fn to_json<V: ValuedField<Elem = E>>(&self, k: &V) -> Value {
        json!({
            "points": self.points.iter().map(|p| p.fmt(k)).collect::<Vec<_>>(),
            "edges": self.edges,
            "connected": self.connected,
            "degenerate": self.degenerate,
            "off_hull": self.off_hull.iter().map(|p| p.fmt(k)).collect::<Vec<_>>(),
            "mod_p_consistent": self.mod_p_consistent,
        })
    }
}

/// Points of the report's skeleton (and the Gauss point) where `m = d`.
pub fn total_ram_locus<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    report: &RamReport<V::Elem, ResElt<V>>,
) -> Result<TotalRam<V::Elem>> {
    let d = phi.d;
    let sk = report.skeleton();
    if d == 1 {
        return Ok(TotalRam {
            points: vec![],
            edges: vec![],
            connected: true,
            degenerate: true,
            off_hull: vec![],
            mod_p_consistent: None,
        });
    }
    let verts: Vec<usize> = (0..sk.vertices.len())
        .filter(|&i| sk.vertices[i].m == Some(d))
        .collect();
    let edges: Vec<usize> = (0..sk.edges.len())
        .filter(|&e| sk.edges[e].m == Some(d) && sk.edges[e].status == EdgeStatus::Constant)
        .collect();
    let mut dsu = Dsu::new(sk.vertices.len());
    for &e in &edges {
        dsu.union(sk.edges[e].child, sk.edges[e].parent);
    }
    let mut classes: Vec<usize> = verts.iter().map(|&i| dsu.find(i)).collect();
    classes.sort();
    classes.dedup();
    let mut points: Vec<BerkPoint<V::Elem>> = verts
        .iter()
        .map(|&i| sk.vertices[i].point.clone())
        .collect();
    let mut off_hull: Vec<BerkPoint<V::Elem>> = Vec::new();
    for &i in &verts {
        let p = &sk.vertices[i].point;
        if sk.vertices[i].probe && !on_hull(k, sk, p)? {
            off_hull.push(p.clone());
        }
    }
    let gauss = BerkPoint::gauss(k);
    let mut extra = 0;
    // On the hull, m is constant along edges, so an interior Gauss point
    // with m = d already sits in the class of its edge.
    if sk.find(k, &gauss)?.is_none() && local_degree(k, phi, &gauss)? == d {
        if !on_hull(k, sk, &gauss)? {
            extra = 1;
            off_hull.push(gauss.clone());
        }
        points.push(gauss);
    }
    let connected = classes.len() + extra <= 1;
    let p = k.residue_char();
    let mod_p_consistent = (!off_hull.is_empty()).then(|| p > 0 && (d as u64 % p <= 1));
    Ok(TotalRam {
        points,
        edges,
        connected,
        degenerate: false,
        off_hull,
        mod_p_consistent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundaryTag {
    #[serde(rename = "endpoint-critical")]
    EndpointCritical,
    #[serde(rename = "endpoint-insep")]
    EndpointInsep,
    #[serde(rename = "interior-insep")]
    InteriorInsep,
    #[serde(rename = "regular")]
    Regular,
}

/// Tag each skeleton vertex. The flag says whether the tag agrees with the
/// other characterization: critical weight for type I endpoints, a wild
/// ramified direction for type II endpoints.
pub fn classify_boundary_points<V: ValuedField>(
    k: &V,
    report: &RamReport<V::Elem, ResElt<V>>,
) -> Vec<(BoundaryTag, bool)> {
    let sk = report.skeleton();
    let p = k.residue_char() as usize;
    let inseparable = report.crit.iter().any(|c| c.locus == CritLocus::Everywhere);
    sk.vertices
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let m = v.m.unwrap_or(0);
            if m <= 1 {
                return (BoundaryTag::Regular, true);
            }
            match &v.point {
                BerkPoint::Classical(_) | BerkPoint::Infinity => {
                    if inseparable {
                        (BoundaryTag::InteriorInsep, true)
                    } else {
                        (BoundaryTag::EndpointCritical, v.crit_weight > 0)
                    }
                }
                _ if v.insep == Some(true) => (BoundaryTag::InteriorInsep, true),
                _ => {
                    let Some(ld) = &report.annotated.local[i] else {
                        return (BoundaryTag::Regular, true);
                    };
                    if ld.generic_m_dir > 1 {
                        return (BoundaryTag::Regular, true);
                    }
                    let ram: Vec<usize> = ld
                        .classes
                        .iter()
                        .filter(|c| c.m_dir > 1)
                        .flat_map(|c| std::iter::repeat_n(c.m_dir, c.count))
                        .collect();
                    match ram.as_slice() {
                        [m_dir] => (BoundaryTag::EndpointInsep, p > 0 && m_dir % p == 0),
                        _ => (BoundaryTag::Regular, true),
                    }
                }
            }
        })
        .collect()
}
