//! Finite subtrees of the Berkovich line with multiplicity annotations.

use serde_json::{json, Value};

use super::{BerkPoint, TreeOrder};
use crate::error::{Error, Result};
use crate::valfield::{fmt_exp, Exp, ValuedField};

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex<E> {
    pub point: BerkPoint<E>,
    /// Local degree, when computed.
    pub m: Option<usize>,
    pub insep: Option<bool>,
    pub component: Option<usize>,
    /// Critical weight carried by a classical vertex.
    pub crit_weight: usize,
    /// Added by tubular probing rather than by the hull.
    pub probe: bool,
    pub tag: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeStatus {
    Unannotated,
    /// `m` is certified constant on the open edge.
    Constant,
    /// Subdivision budget ran out before `m` was certified.
    Unresolved,
}

/// Edge from `child` up to `parent` (`child ≺ parent`).
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub child: usize,
    pub parent: usize,
    /// ρ-length; `None` is infinite.
    pub length: Option<Exp>,
    pub m: Option<usize>,
    pub status: EdgeStatus,
    pub component: Option<usize>,
    pub probe: bool,
}

/// A finite tree; every classical point is a leaf.
#[derive(Clone, Debug, PartialEq)]
pub struct Skeleton<E> {
    pub vertices: Vec<Vertex<E>>,
    pub edges: Vec<Edge>,
}

impl<E: Clone + PartialEq> Vertex<E> {
    fn new(point: BerkPoint<E>) -> Self {
        Vertex {
            point,
            m: None,
            insep: None,
            component: None,
            crit_weight: 0,
            probe: false,
            tag: None,
        }
    }
}

impl<E: Clone + PartialEq> Skeleton<E> {
    /// Connected hull of `points`: close under pairwise joins, then link each
    /// vertex to the smallest vertex strictly above it.
    pub fn hull<V: ValuedField<Elem = E>>(k: &V, points: &[BerkPoint<E>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Invalid("hull of no points".into()));
        }
        let mut verts: Vec<BerkPoint<E>> = Vec::new();
        let push = |k: &V, verts: &mut Vec<BerkPoint<E>>, p: BerkPoint<E>| -> Result<()> {
            for q in verts.iter() {
                if q.same(k, &p)? {
                    return Ok(());
                }
            }
            verts.push(p);
            Ok(())
        };
        for p in points {
            push(k, &mut verts, p.clone())?;
        }
        let base = verts.clone();
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                push(k, &mut verts, base[i].join(k, &base[j])?)?;
            }
        }
        let mut sk = Skeleton {
            vertices: verts.into_iter().map(Vertex::new).collect(),
            edges: Vec::new(),
        };
        sk.relink(k)?;
        Ok(sk)
    }

    /// Rebuild all edges from the vertex set.
    fn relink<V: ValuedField<Elem = E>>(&mut self, k: &V) -> Result<()> {
        let n = self.vertices.len();
        let mut edges = Vec::new();
        for i in 0..n {
            let mut parent: Option<usize> = None;
            for j in 0..n {
                if i == j
                    || self.vertices[i].point.compare(k, &self.vertices[j].point)?
                        != TreeOrder::Below
                {
                    continue;
                }
                // everything above i is a chain: keep the lowest
                parent = match parent {
                    Some(p)
                        if self.vertices[p].point.compare(k, &self.vertices[j].point)?
                            == TreeOrder::Below =>
                    {
                        Some(p)
                    }
                    _ => Some(j),
                };
            }
            if let Some(p) = parent {
                let length = self.vertices[i].point.rho(k, &self.vertices[p].point)?;
                edges.push(Edge {
                    child: i,
                    parent: p,
                    length,
                    m: None,
                    status: EdgeStatus::Unannotated,
                    component: None,
                    probe: self.vertices[i].probe || self.vertices[p].probe,
                });
            }
        }
        self.edges = edges;
        Ok(())
    }

    pub fn find<V: ValuedField<Elem = E>>(&self, k: &V, p: &BerkPoint<E>) -> Result<Option<usize>> {
        for (i, v) in self.vertices.iter().enumerate() {
            if v.point.same(k, p)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Insert a vertex at radius `s` inside edge `e`; returns its index.
    /// Annotations of the split edge are copied to both halves.
    pub fn subdivide<V: ValuedField<Elem = E>>(
        &mut self,
        k: &V,
        e: usize,
        s: Exp,
    ) -> Result<usize> {
        let edge = self.edges[e].clone();
        let point = self.vertices[edge.child].point.ancestor_at(k, s)?;
        let mut v = Vertex::new(point);
        v.probe = edge.probe;
        let idx = self.vertices.len();
        self.vertices.push(v);
        let lower = self.vertices[edge.child]
            .point
            .rho(k, &self.vertices[idx].point)?;
        let upper = self.vertices[idx]
            .point
            .rho(k, &self.vertices[edge.parent].point)?;
        self.edges[e] = Edge {
            parent: idx,
            length: lower,
            ..edge.clone()
        };
        self.edges.push(Edge {
            child: idx,
            length: upper,
            ..edge
        });
        Ok(idx)
    }

    /// Attach `point`, adjacent to vertex `at` (either just below it in a
    /// new direction, or just above the root), as a probe vertex.
    pub fn attach_probe<V: ValuedField<Elem = E>>(
        &mut self,
        k: &V,
        at: usize,
        point: BerkPoint<E>,
    ) -> Result<usize> {
        if let Some(i) = self.find(k, &point)? {
            return Ok(i);
        }
        let mut v = Vertex::new(point);
        v.probe = true;
        let idx = self.vertices.len();
        self.vertices.push(v);
        let (child, parent) = match self.vertices[idx]
            .point
            .compare(k, &self.vertices[at].point)?
        {
            TreeOrder::Below => (idx, at),
            TreeOrder::Above => (at, idx),
            _ => {
                return Err(Error::Invalid(
                    "probe is not adjacent to its base vertex".into(),
                ))
            }
        };
        let length = self.vertices[child]
            .point
            .rho(k, &self.vertices[parent].point)?;
        self.edges.push(Edge {
            child,
            parent,
            length,
            m: None,
            status: EdgeStatus::Unannotated,
            component: None,
            probe: true,
        });
        Ok(idx)
    }

    pub fn neighbors(&self, v: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                if e.child == v {
                    Some((i, e.parent))
                } else if e.parent == v {
                    Some((i, e.child))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if self.edges.len() + 1 != n {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (_, w) in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn to_json<V: ValuedField<Elem = E>>(&self, k: &V) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let (center, ord) = match &v.point {
                    BerkPoint::Infinity => ("inf".to_string(), "-inf".to_string()),
                    BerkPoint::Classical(a) => (k.fmt_elem(a), "inf".to_string()),
                    BerkPoint::Ball { center, s, .. } => (k.fmt_elem(center), fmt_exp(s)),
                };
                let mut o = json!({
                    "id": i,
                    "center": center,
                    "ord": ord,
                    "type": v.point.kind(),
                    "point": v.point.fmt(k),
                });
                let map = o.as_object_mut().unwrap();
                if let Some(m) = v.m {
                    map.insert("m".into(), json!(m));
                }
                if let Some(b) = v.insep {
                    map.insert("insep".into(), json!(b));
                }
                if let Some(c) = v.component {
                    map.insert("component".into(), json!(c));
                }
                if v.crit_weight > 0 {
                    map.insert("crit_weight".into(), json!(v.crit_weight));
                }
                if v.probe {
                    map.insert("probe".into(), json!(true));
                }
                if let Some(t) = &v.tag {
                    map.insert("tag".into(), json!(t));
                }
                o
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                let mut o = json!({
                    "u": e.child,
                    "v": e.parent,
                    "length": e.length.map_or("inf".to_string(), |l| fmt_exp(&l)),
                });
                let map = o.as_object_mut().unwrap();
                if let Some(m) = e.m {
                    map.insert("m".into(), json!(m));
                }
                match e.status {
                    EdgeStatus::Unresolved => {
                        map.insert("status".into(), json!("UNRESOLVED"));
                    }
                    EdgeStatus::Constant => {
                        map.insert("status".into(), json!("constant"));
                    }
                    EdgeStatus::Unannotated => {}
                }
                if let Some(c) = e.component {
                    map.insert("component".into(), json!(c));
                }
                if e.probe {
                    map.insert("probe".into(), json!(true));
                }
                o
            })
            .collect();
        json!({ "vertices": vertices, "edges": edges })
    }

    /// Graphviz rendering; edges are colored by multiplicity.
    pub fn to_dot<V: ValuedField<Elem = E>>(&self, k: &V) -> String {
        const PALETTE: [&str; 6] = ["black", "red", "orange", "purple", "blue", "darkgreen"];
        let mut out =
            String::from("graph skeleton {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let mut label = v.point.fmt(k).replace('"', "'");
            if let Some(m) = v.m {
                label.push_str(&format!("\\nm={m}"));
            }
            let style = if v.probe { ", style=dashed" } else { "" };
            out.push_str(&format!("  v{i} [label=\"{label}\"{style}];\n"));
        }
        for e in &self.edges {
            let len = e.length.map_or("inf".to_string(), |l| fmt_exp(&l));
            let (color, label) = match (e.status, e.m) {
                (EdgeStatus::Unresolved, _) => ("gray".to_string(), format!("{len} UNRESOLVED")),
                (_, Some(m)) => (
                    PALETTE[(m.max(1) - 1).min(PALETTE.len() - 1)].to_string(),
                    format!("{len} m={m}"),
                ),
                _ => ("black".to_string(), len),
            };
            let style = if e.probe { ", style=dashed" } else { "" };
            out.push_str(&format!(
                "  v{} -- v{} [label=\"{label}\", color={color}{style}];\n",
                e.child, e.parent
            ));
        }
        out.push_str("}\n");
        out
    }
}
