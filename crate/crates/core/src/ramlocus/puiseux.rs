//! Newton–Puiseux root expansion over the field model.
//!
//! Each branch is refined one Newton segment at a time. Residual roots in
//! the residue field lift to the next term; a residual factor without roots
//! there becomes a cluster, since its roots need a residue extension the
//! model does not carry. A branch holding a single simple root switches to
//! Newton iteration, which avoids re-expanding the whole polynomial.

use crate::error::{Error, Result};
use crate::ratmap::{NewtonPolygon, Poly, RPoly};
use crate::valfield::{CoeffField, Exp, OrdInfo, ValuedField};

/// Largest exponent denominator accepted in raisable towers.
pub const MAX_EXP_DENOM: i64 = 720;

#[derive(Clone, Debug, PartialEq)]
pub enum RootLocus<E, T> {
    /// A root (or a bunch of roots) at `center`, known up to `prec`
    /// (`None`: exact).
    Point { center: E, prec: Option<Exp> },
    /// Roots `center + π^s c + ...` with `c` running over the roots of
    /// `residual`, none of which lie in the residue field. `None` when `s`
    /// leaves the tower (or the exponent denominator cap): the roots are
    /// then only known to satisfy `ord(z - center) = s`.
    Cluster {
        center: E,
        s: Exp,
        residual: Option<RPoly<T>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootGroup<E, T> {
    pub locus: RootLocus<E, T>,
    /// Number of roots, with multiplicity.
    pub count: usize,
}

struct Branch<E> {
    center: E,
    shifted: Poly<E>,
    depth: Option<Exp>,
    count: usize,
}

/// Roots of `p` expanded until their known part reaches ord `depth`.
pub fn newton_puiseux<V: ValuedField>(
    k: &V,
    p: &Poly<V::Elem>,
    depth: Exp,
) -> Result<Vec<RootGroup<V::Elem, <V::Res as CoeffField>::Elt>>> {
    let kr = k.residue_field();
    let n = p
        .deg()
        .ok_or_else(|| Error::Invalid("roots of the zero polynomial".into()))?;
    let mut out = Vec::new();
    let mut stack = vec![Branch {
        center: k.zero(),
        shifted: p.clone(),
        depth: None,
        count: n,
    }];
    while let Some(br) = stack.pop() {
        if br.count == 0 {
            continue;
        }
        let zeros = br.shifted.zero_order(k);
        if zeros >= br.count {
            out.push(RootGroup {
                locus: RootLocus::Point {
                    center: br.center,
                    prec: None,
                },
                count: br.count,
            });
            continue;
        }
        if br.depth.is_some_and(|s| s >= depth) {
            let prec = br.depth;
            let center = k.truncate(&br.center, prec.unwrap());
            out.push(RootGroup {
                locus: RootLocus::Point { center, prec },
                count: br.count,
            });
            continue;
        }
        if zeros == 0 && br.count == 1 {
            if let Some(s) = br.depth {
                let (center, prec) = newton_refine(k, p, &br.center, s, depth)?;
                out.push(RootGroup {
                    locus: RootLocus::Point { center, prec },
                    count: 1,
                });
                continue;
            }
        }
        if zeros > 0 {
            out.push(RootGroup {
                locus: RootLocus::Point {
                    center: br.center.clone(),
                    prec: None,
                },
                count: zeros,
            });
        }
        let np = NewtonPolygon::of(k, &br.shifted)?;
        for seg in np
            .segments
            .iter()
            .filter(|g| br.depth.is_none_or(|s| g.root_ord > s))
        {
            let s = seg.root_ord;
            if !k.in_value_group(s) || *s.denom() > MAX_EXP_DENOM {
                // the roots are not separated further; they stay on one shell
                log::debug!("roots of ord {s} are kept as an unseparated cluster");
                out.push(RootGroup {
                    locus: RootLocus::Cluster {
                        center: br.center.clone(),
                        s,
                        residual: None,
                    },
                    count: seg.len(),
                });
                continue;
            }
            let h = np.height_at(seg.from) + Exp::from_integer(seg.from as i64) * s;
            let mut rc = Vec::with_capacity(seg.len() + 1);
            for i in seg.from..=seg.to {
                let c = &br.shifted.c[i];
                let scaled = k.mul(c, &k.unif_pow(Exp::from_integer(i as i64) * s - h)?);
                rc.push(if k.is_exact_zero(c) {
                    kr.zero()
                } else {
                    k.residue(&scaled)?
                });
            }
            let residual = RPoly::new(kr, rc);
            let roots = residual.roots_in_field(kr).unwrap_or_default();
            let mut rest = residual.monic(kr);
            for (r, mult) in roots {
                let lin = RPoly::new(kr, vec![kr.neg(&r), kr.one()]);
                rest = rest.exact_div(kr, &lin.pow(kr, mult));
                let step = k.mul(&k.lift(&r), &k.unif_pow(s)?);
                stack.push(Branch {
                    center: k.add(&br.center, &step),
                    shifted: br.shifted.taylor_shift(k, &step),
                    depth: Some(s),
                    count: mult,
                });
            }
            if !rest.is_constant() {
                let count = rest.deg();
                out.push(RootGroup {
                    locus: RootLocus::Cluster {
                        center: br.center.clone(),
                        s,
                        residual: Some(rest),
                    },
                    count,
                });
            }
        }
    }
    Ok(out)
}

/// Newton iteration from `x`, which is closer (at ord `> from`) to a simple
/// root of `p` than to any other root. Iterates are kept to ord `depth + 2`
/// so the series stay short.
fn newton_refine<V: ValuedField>(
    k: &V,
    p: &Poly<V::Elem>,
    x: &V::Elem,
    from: Exp,
    depth: Exp,
) -> Result<(V::Elem, Option<Exp>)> {
    let dp = p.derivative(k);
    let keep = depth + 2;
    let mut x = x.clone();
    let mut reached = from;
    // the error ord at least doubles relative to the gap, so this is generous
    for _ in 0..64 {
        let fx = p.eval(k, &x);
        match k.ord_info(&fx) {
            OrdInfo::Zero => return Ok((x, None)),
            OrdInfo::AtLeast(_) => break,
            OrdInfo::Exact(_) => {}
        }
        let step = k.div(&fx, &dp.eval(k, &x))?;
        let OrdInfo::Exact(so) = k.ord_info(&step) else {
            break;
        };
        x = k.truncate(&k.sub(&x, &step), keep);
        reached = reached.max(so);
        if so >= depth {
            break;
        }
    }
    let prec = depth.max(reached).min(keep);
    Ok((k.truncate(&x, prec), Some(prec)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::{exp, exp_int, Puiseux, Radical, Rationals};

    #[test]
    fn square_root_of_t_is_exact() {
        let k = Puiseux::new(Rationals, exp_int(32), 1);
        let t = k.monomial(k.coeff().one(), exp_int(1));
        let w = Poly::new(&k, vec![k.neg(&t), k.zero(), k.one()]);
        let roots = newton_puiseux(&k, &w, exp_int(16)).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let RootLocus::Point { center, prec } = &r.locus else {
                panic!("expected a point")
            };
            assert_eq!(*prec, None);
            assert_eq!(r.count, 1);
            assert_eq!(k.ord_finite(center).unwrap(), exp(1, 2));
            assert!(k.is_exact_zero(&w.eval(&k, center)));
        }
    }

    #[test]
    fn truncated_roots_satisfy_the_polynomial_to_depth() {
        // z^2 - z - t: roots t + t^2 + 2t^3 + ... and 1 - t - ...
        let k = Puiseux::new(Rationals, exp_int(32), 1);
        let t = k.monomial(k.coeff().one(), exp_int(1));
        let w = Poly::new(&k, vec![k.neg(&t), k.from_i64(-1), k.one()]);
        let roots = newton_puiseux(&k, &w, exp_int(10)).unwrap();
        assert_eq!(roots.iter().map(|r| r.count).sum::<usize>(), 2);
        for r in &roots {
            let RootLocus::Point { center, .. } = &r.locus else {
                panic!("expected a point")
            };
            let residual = w.eval(&k, &k.exact_part(center));
            assert!(k.ord_finite(&residual).unwrap() >= exp_int(10));
        }
    }

    #[test]
    fn irreducible_residual_gives_a_cluster() {
        // 3z^2 + 1 over Q(3^(1/8)): roots of ord -1/2 in directions c^2 + 1 = 0
        let k = Radical::new(3, 8, exp_int(32)).unwrap();
        let w = Poly::new(&k, vec![k.one(), k.zero(), k.from_i64(3)]);
        let roots = newton_puiseux(&k, &w, exp_int(8)).unwrap();
        assert_eq!(roots.len(), 1);
        let RootLocus::Cluster { s, residual, .. } = &roots[0].locus else {
            panic!("expected a cluster")
        };
        assert_eq!(*s, exp(-1, 2));
        assert_eq!(residual.as_ref().unwrap().deg(), 2);
        assert_eq!(roots[0].count, 2);
    }

    #[test]
    fn slope_outside_the_value_group_stays_a_shell() {
        let k = Radical::new(3, 1, exp_int(32)).unwrap();
        let w = Poly::new(&k, vec![k.one(), k.zero(), k.from_i64(3)]);
        let roots = newton_puiseux(&k, &w, exp_int(8)).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].count, 2);
        assert!(matches!(
            &roots[0].locus,
            RootLocus::Cluster { s, residual: None, .. } if *s == exp(-1, 2)
        ));
    }
}
