//! Ramification locus: critical points, their hull, the annotated
//! skeleton, components, total ramification, tubular probes and the
//! n-component construction.

mod annotate;
mod generator;
mod puiseux;
mod report;

pub use annotate::{annotate_skeleton, seed_radii, Annotated};
pub use generator::{generate_n_component_example, psi_library};
pub use puiseux::{newton_puiseux, RootGroup, RootLocus, MAX_EXP_DENOM};
pub use report::{
    classify_boundary_points, ram_components, total_ram_locus, tubular_bound, tubular_probe,
    BoundaryTag, Component, RamConfig, RamReport, TotalRam, Verdicts,
};

use serde_json::{json, Value};

use crate::berkline::{BerkPoint, Skeleton};
use crate::error::Result;
use crate::mult::local_degree;
use crate::ratmap::{is_separable, weight_at_infinity, wronskian, RPoly, RationalMap};
use crate::valfield::{fmt_exp, CoeffField, Exp, ValuedField};

type ResElt<V> = <<V as ValuedField>::Res as CoeffField>::Elt;

#[derive(Clone, Debug, PartialEq)]
pub enum CritLocus<E, T> {
    /// A classical critical point; `prec` is `None` when exact.
    Point {
        center: E,
        prec: Option<Exp>,
    },
    /// Galois-conjugate critical points below `ζ_{center,s}` in the
    /// directions given by the roots of `residual`; `None` when they were
    /// not separated (only `ord(z - center) = s` is known).
    Cluster {
        center: E,
        s: Exp,
        residual: Option<RPoly<T>>,
    },
    Infinity,
    /// Inseparable map: every classical point is critical.
    Everywhere,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint<E, T> {
    pub locus: CritLocus<E, T>,
    /// Critical weight; `None` is `+∞` (inseparable map).
    pub weight: Option<usize>,
    /// Local degree at the point, when it could be determined.
    pub mult: Option<usize>,
}

impl<E: Clone + PartialEq, T: Clone + PartialEq> CriticalPoint<E, T> {
    /// Where the point enters the hull.
    pub fn hull_point<V: ValuedField<Elem = E>>(&self, k: &V) -> Result<Option<BerkPoint<E>>> {
        Ok(match &self.locus {
            CritLocus::Point { center, .. } => Some(BerkPoint::Classical(center.clone())),
            CritLocus::Cluster { center, s, .. } => Some(BerkPoint::ball(k, center, *s)?),
            CritLocus::Infinity => Some(BerkPoint::Infinity),
            CritLocus::Everywhere => None,
        })
    }

    pub fn to_json<V: ValuedField<Elem = E>>(&self, k: &V) -> Value
    where
        V::Res: CoeffField<Elt = T>,
    {
        let kr = k.residue_field();
        let mut o = match &self.locus {
            CritLocus::Point { center, prec } => json!({
                "kind": "point",
                "expansion": k.fmt_elem(center),
                "exact": prec.is_none(),
            }),
            CritLocus::Cluster {
                center,
                s,
                residual,
            } => json!({
                "kind": "cluster",
                "center": k.fmt_elem(center),
                "ord": fmt_exp(s),
                "residual": residual.as_ref().map(|r| r.fmt_with(kr, "c")),
            }),
            CritLocus::Infinity => json!({"kind": "infinity"}),
            CritLocus::Everywhere => json!({"kind": "everywhere"}),
        };
        let map = o.as_object_mut().unwrap();
        map.insert(
            "weight".into(),
            self.weight.map_or(json!("inf"), |w| json!(w)),
        );
        if let Some(m) = self.mult {
            map.insert("m".into(), json!(m));
        }
        o
    }
}

/// Critical points with weights: roots of the Wronskian expanded to ord
/// `depth`, plus `∞` from the swapped chart.
pub fn critical_points<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    depth: Exp,
) -> Result<Vec<CriticalPoint<V::Elem, ResElt<V>>>> {
    if !is_separable(k, phi)? {
        return Ok(vec![CriticalPoint {
            locus: CritLocus::Everywhere,
            weight: None,
            mult: None,
        }]);
    }
    let kr = k.residue_field();
    let char0 = k.characteristic() == 0;
    let mut out = Vec::new();
    for g in newton_puiseux(k, &wronskian(k, phi), depth)? {
        let (locus, mult) = match g.locus {
            RootLocus::Point { center, prec: None } => {
                let m = local_degree(k, phi, &BerkPoint::Classical(center.clone()))?;
                (CritLocus::Point { center, prec: None }, Some(m))
            }
            RootLocus::Point { center, prec } => (CritLocus::Point { center, prec }, None),
            RootLocus::Cluster {
                center,
                s,
                residual,
            } => {
                // conjugates share one multiplicity when the residual is a pure power
                let sq = residual.as_ref().map(|r| r.squarefree(kr));
                let mult = match sq.as_deref() {
                    Some([(_, mu)]) if char0 => Some(mu + 1),
                    _ => None,
                };
                (
                    CritLocus::Cluster {
                        center,
                        s,
                        residual,
                    },
                    mult,
                )
            }
        };
        out.push(CriticalPoint {
            locus,
            weight: Some(g.count),
            mult,
        });
    }
    let w_inf = weight_at_infinity(k, phi)?;
    if w_inf > 0 {
        let m = local_degree(k, phi, &BerkPoint::Infinity)?;
        out.push(CriticalPoint {
            locus: CritLocus::Infinity,
            weight: Some(w_inf),
            mult: Some(m),
        });
    }
    Ok(out)
}

/// Total critical weight, `None` for an inseparable map.
pub fn total_weight<E, T>(crit: &[CriticalPoint<E, T>]) -> Option<usize> {
    crit.iter().map(|c| c.weight).sum()
}

/// `Hull(Crit(φ))`; the Gauss point alone when there is nothing to span.
pub fn hull_crit<V: ValuedField>(
    k: &V,
    crit: &[CriticalPoint<V::Elem, ResElt<V>>],
) -> Result<Skeleton<V::Elem>> {
    let mut pts = Vec::new();
    for c in crit {
        if let Some(p) = c.hull_point(k)? {
            pts.push(p);
        }
    }
    if pts.is_empty() {
        pts.push(BerkPoint::gauss(k));
    }
    let mut sk = Skeleton::hull(k, &pts)?;
    for c in crit {
        let Some(p) = c.hull_point(k)? else { continue };
        if let Some(i) = sk.find(k, &p)? {
            let v = &mut sk.vertices[i];
            v.crit_weight += c.weight.unwrap_or(0);
            v.tag = Some(match c.locus {
                CritLocus::Cluster { .. } => "crit-cluster".into(),
                _ => "crit".into(),
            });
            if v.m.is_none() {
                v.m = c.mult;
            }
        }
    }
    Ok(sk)
}
