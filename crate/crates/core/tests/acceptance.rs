//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Reference values are recomputed here from Newton polygons of explicit
//! polynomials rather than taken from the library's reduction path.

use std::process::ExitCode;
use std::time::Instant;

use berkram::berkline::{image_point, BerkPoint};
use berkram::cli::sample::{random_element, random_exp, random_map, random_type2_point};
use berkram::mult::{
    directional_data, directional_sum_holds, has_inseparable_reduction, local_degree,
    local_degree_oracle, DirLabel,
};
use berkram::ramlocus::{
    critical_points, generate_n_component_example, hull_crit, ram_components, total_ram_locus,
    total_weight, tubular_probe, RamConfig,
};
use berkram::ratmap::{Poly, RationalMap};
use berkram::valfield::{
    exp, exp_int, CoeffField, Exp, FiniteField, Puiseux, Radical, Rationals, ValuedField,
};
use berkram::{EquicharPField, EquicharZeroField, Error, MixedField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(bool, String), Error>;

fn q_field() -> EquicharZeroField {
    Puiseux::new(Rationals, exp_int(32), 2)
}

fn p_field(p: u64) -> EquicharPField {
    Puiseux::new(FiniteField::prime(p).unwrap(), exp_int(32), 1)
}

fn mixed_field(p: u64, n: u32) -> MixedField {
    Radical::new(p, n, exp_int(64)).unwrap()
}

fn ints<V: ValuedField>(k: &V, c: &[i64]) -> Poly<V::Elem> {
    Poly::new(k, c.iter().map(|&n| k.from_i64(n)).collect())
}

/// Roots of `q` with `ord > s` (strict) or `ord ≥ s`, read off the Newton
/// polygon: the smallest, resp. largest, index minimizing `ord q_i + i s`.
fn roots_beyond<V: ValuedField>(k: &V, q: &Poly<V::Elem>, s: Exp, strict: bool) -> usize {
    let mut best: Option<(Exp, usize)> = None;
    for (i, c) in q.c.iter().enumerate() {
        let Some(v) = k.ord(c).unwrap().finite() else {
            continue;
        };
        let h = v + Exp::from_integer(i as i64) * s;
        best = match best {
            Some((b, j)) if b < h || (b == h && strict) => Some((b, j)),
            _ => Some((h, i)),
        };
    }
    best.map_or(0, |(_, i)| i)
}

/// `f'g - fg'`, computed from scratch.
fn wronskian_of<V: ValuedField>(k: &V, phi: &RationalMap<V::Elem>) -> Poly<V::Elem> {
    phi.f
        .derivative(k)
        .mul(k, &phi.g)
        .sub(k, &phi.f.mul(k, &phi.g.derivative(k)))
}

fn c1_frobenius() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for p in [2u64, 3, 5] {
        let k = p_field(p);
        let mut c = vec![0; p as usize + 1];
        c[p as usize] = 1;
        let phi = RationalMap::polynomial(&k, ints(&k, &c));
        for _ in 0..50 {
            let x = random_type2_point(&k, &mut rng)?;
            let m = local_degree(&k, &phi, &x)?;
            let insep = has_inseparable_reduction(&k, &phi, &x)?;
            if m != p as usize || !insep {
                return Ok((
                    false,
                    format!("p = {p}, {}: m = {m}, insep = {insep}", x.fmt(&k)),
                ));
            }
            checked += 1;
        }
    }
    Ok((
        true,
        format!("{checked} points, m = p and inseparable everywhere"),
    ))
}

struct OracleTally {
    agree: usize,
    inconclusive: usize,
    mismatches: Vec<String>,
    balance_bad: usize,
    dirsum_bad: usize,
    local_data: usize,
}

fn oracle_round<V: ValuedField>(
    k: &V,
    rng: &mut ChaCha8Rng,
    n: usize,
    tally: &mut OracleTally,
) -> Result<(), Error> {
    let kr = k.residue_field();
    for _ in 0..n {
        let d = rng.gen_range(1..=5);
        let phi = random_map(k, rng, d)?;
        let mut x = random_type2_point(k, rng)?;
        let oracle = match local_degree_oracle(k, &phi, &x, 8) {
            Ok(m) => m,
            Err(Error::OracleInconclusive(_)) => {
                tally.inconclusive += 1;
                let BerkPoint::Ball { center, s, .. } = &x else {
                    unreachable!()
                };
                let s2 = *s + Exp::new(1, k.ram_index() as i64);
                x = BerkPoint::ball(k, center, s2)?;
                match local_degree_oracle(k, &phi, &x, 8) {
                    Ok(m) => m,
                    Err(e) => {
                        tally
                            .mismatches
                            .push(format!("perturbation did not resolve: {e}"));
                        continue;
                    }
                }
            }
            Err(e) => return Err(e),
        };
        let m = local_degree(k, &phi, &x)?;
        if m == oracle {
            tally.agree += 1;
        } else {
            tally.mismatches.push(format!(
                "{} at {}: {m} vs oracle {oracle}",
                phi.fmt(k),
                x.fmt(k)
            ));
        }
        let ld = directional_data(k, &phi, &x)?;
        tally.local_data += 1;
        if !ld.balance_holds() {
            tally.balance_bad += 1;
        }
        let mut targets = vec![None];
        for i in 0..kr.order().unwrap_or(5).min(5) {
            targets.push(Some(kr.nth_element(i)));
        }
        if targets
            .iter()
            .any(|u| !directional_sum_holds(kr, &ld, u.as_ref()))
        {
            tally.dirsum_bad += 1;
        }
    }
    Ok(())
}

/// Criteria 2 and 3 share their samples.
fn c2_c3() -> Result<(Outcome, Outcome), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut t = OracleTally {
        agree: 0,
        inconclusive: 0,
        mismatches: vec![],
        balance_bad: 0,
        dirsum_bad: 0,
        local_data: 0,
    };
    oracle_round(&q_field(), &mut rng, 34, &mut t)?;
    oracle_round(&p_field(7), &mut rng, 33, &mut t)?;
    oracle_round(&mixed_field(7, 2), &mut rng, 33, &mut t)?;
    let rate = t.inconclusive as f64 / 100.0;
    let c2 = (
        t.mismatches.is_empty() && rate < 0.05,
        format!(
            "{} agree, {} inconclusive ({:.0}%), mismatches: {:?}",
            t.agree,
            t.inconclusive,
            rate * 100.0,
            t.mismatches
        ),
    );
    let c3 = (
        t.balance_bad == 0 && t.dirsum_bad == 0,
        format!(
            "{} local data, balance failures {}, directional-sum failures {}",
            t.local_data, t.balance_bad, t.dirsum_bad
        ),
    );
    Ok((Ok(c2), Ok(c3)))
}

fn clustered_poly(
    k: &EquicharZeroField,
    rng: &mut ChaCha8Rng,
    deg: usize,
) -> Result<Poly<<EquicharZeroField as ValuedField>::Elem>, Error> {
    let mut p = ints(k, &[1]);
    for _ in 0..deg {
        let c = rng.gen_range(-3..=3);
        let e = random_exp(k, rng, 0, 2);
        let root = k.mul(&k.from_i64(c), &k.unif_pow(e)?);
        p = p.mul(k, &Poly::new(k, vec![k.neg(&root), k.one()]));
    }
    Ok(p)
}

fn c4_critical_surplus() -> Outcome {
    let k = q_field();
    let kr = k.residue_field();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut ok, mut tries) = (0, 0);
    while ok < 50 && tries < 2000 {
        tries += 1;
        let d = rng.gen_range(2..=5);
        let f = clustered_poly(&k, &mut rng, d)?;
        let dg = rng.gen_range(1..=d);
        let g = clustered_poly(&k, &mut rng, dg)?;
        let Ok(phi) = RationalMap::new(&k, f, g) else {
            continue;
        };
        let w = wronskian_of(&k, &phi);
        let a = random_element(&k, &mut rng, 0)?;
        let x = BerkPoint::ball(&k, &a, random_exp(&k, &mut rng, -1, 1))?;
        let ld = directional_data(&k, &phi, &x)?;
        let BerkPoint::Ball { center, s, .. } = &x else {
            unreachable!()
        };
        for c in &ld.classes {
            let DirLabel::Finite(u) = &c.label else {
                continue;
            };
            if c.m_dir != 1 || c.s_dir == 0 {
                continue;
            }
            let disk_center = k.add(center, &k.mul(&k.lift(u), &k.unif_pow(*s)?));
            let weight = roots_beyond(&k, &w.taylor_shift(&k, &disk_center), *s, true);
            if weight != 2 * c.s_dir {
                return Ok((
                    false,
                    format!(
                        "{} at {} direction {}: weight {weight}, s_dir {}",
                        phi.fmt(&k),
                        x.fmt(&k),
                        kr.fmt_elt(u),
                        c.s_dir
                    ),
                ));
            }
            ok += 1;
        }
    }
    Ok((
        ok >= 50,
        format!("{ok} directions with m_dir = 1, s_dir > 0 match (from {tries} maps)"),
    ))
}

fn hurwitz_round<V: ValuedField>(k: &V, rng: &mut ChaCha8Rng) -> Result<Option<String>, Error> {
    let mut done = 0;
    while done < 100 {
        let d = rng.gen_range(1..=5);
        let phi = random_map(k, rng, d)?;
        let crit = critical_points(k, &phi, exp_int(4))?;
        let Some(w) = total_weight(&crit) else {
            continue;
        };
        if w != 2 * d - 2 {
            return Ok(Some(format!("{}: weight {w}", phi.fmt(k))));
        }
        done += 1;
    }
    Ok(None)
}

fn c5_hurwitz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (mode, bad) in [
        ("equichar0", hurwitz_round(&q_field(), &mut rng)?),
        ("equicharp", hurwitz_round(&p_field(3), &mut rng)?),
        ("mixed", hurwitz_round(&mixed_field(3, 2), &mut rng)?),
    ] {
        if let Some(b) = bad {
            return Ok((false, format!("{mode}: {b}")));
        }
    }
    Ok((true, "300 separable maps, weight 2d - 2 each".into()))
}

fn c6_generator() -> Outcome {
    let k = Puiseux::new(Rationals, exp_int(32), 1);
    let cfg = RamConfig::default();
    let mut pairs = 0;
    for d in 2..=6 {
        for n in 1..d {
            let phi = generate_n_component_example(&k, n, d)?;
            let r = ram_components(&k, &phi, &cfg)?;
            let weights_ok = r
                .components
                .iter()
                .all(|c| c.crit_weight.is_some_and(|w| w >= 2));
            if r.count != (n, n) || !r.resolved || !weights_ok || r.count.1 > d - 1 {
                return Ok((
                    false,
                    format!(
                        "n = {n}, d = {d}: count {:?}, resolved {}",
                        r.count, r.resolved
                    ),
                ));
            }
            pairs += 1;
        }
    }
    Ok((
        true,
        format!("{pairs} (n, d) pairs give exactly n resolved components"),
    ))
}

fn c7_tame_containment() -> Outcome {
    let k = Puiseux::new(Rationals, exp_int(32), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..50 {
        let d = rng.gen_range(2..=5);
        let phi = random_map(&k, &mut rng, d)?;
        if !tubular_probe(&k, &phi, exp(1, 8), 3, exp_int(8))? {
            return Ok((
                false,
                format!(
                    "map {i} {}: a probe 1/8 off the hull is ramified",
                    phi.fmt(&k)
                ),
            ));
        }
    }
    Ok((
        true,
        "50 maps, every probe at distance 1/8 has m = 1".into(),
    ))
}

fn c8_sharpness() -> Outcome {
    let k = mixed_field(3, 8);
    let f = ints(&k, &[0, 1, 0, 1]);
    let phi = RationalMap::polynomial(&k, f.clone());
    let zero = k.zero();
    // a polynomial has local degree = roots of φ(z) - φ(0) in the closed disk
    let oracle = |s: Exp| roots_beyond(&k, &f, s, false);
    let at = |s: Exp| -> Result<usize, Error> {
        local_degree(&k, &phi, &BerkPoint::ball(&k, &zero, s)?)
    };
    let (o0, o8) = (oracle(exp_int(0)), oracle(exp(1, 8)));
    if (o0, o8) != (3, 1) {
        return Ok((false, format!("Newton polygon gives m = {o0}, {o8}")));
    }
    let (m0, m8) = (at(exp_int(0))?, at(exp(1, 8))?);
    let crit = critical_points(&k, &phi, exp_int(12))?;
    let hull = hull_crit(&k, &crit)?;
    let top = BerkPoint::ball(&k, &zero, exp(-1, 2))?;
    let on_hull = hull.find(&k, &top)?.is_some();
    let tube = tubular_probe(&k, &phi, exp(1, 8), 3, exp_int(12))?;
    let ok = m0 == 3 && m8 == 1 && on_hull && tube;
    Ok((
        ok,
        format!("hull vertex at s = -1/2: {on_hull}, m(s=0) = {m0}, m(s=1/8) = {m8}, tubular probe: {tube}"),
    ))
}

fn c9_total_ramification() -> Outcome {
    let k = Puiseux::new(Rationals, exp_int(32), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cfg = RamConfig::default();
    let mut count = 0;
    for d in 2..=5 {
        for trial in 0..4 {
            let mut c: Vec<_> = (0..d)
                .map(|_| random_element(&k, &mut rng, 0))
                .collect::<Result<_, _>>()?;
            if trial == 0 {
                c.iter_mut().for_each(|x| *x = k.zero());
            }
            c.push(k.one());
            let phi = RationalMap::polynomial(&k, Poly::new(&k, c));
            let r = ram_components(&k, &phi, &cfg)?;
            let sk = r.skeleton();
            let inf = sk.find(&k, &BerkPoint::Infinity)?;
            let with_inf =
                inf.is_some_and(|i| r.components.iter().any(|c| c.vertices.contains(&i)));
            let total = total_ram_locus(&k, &phi, &r)?;
            if r.count != (1, 1) || !with_inf || !total.connected {
                return Ok((
                    false,
                    format!(
                        "{}: count {:?}, contains inf {with_inf}, total connected {}",
                        phi.fmt(&k),
                        r.count,
                        total.connected
                    ),
                ));
            }
            count += 1;
        }
    }
    let k = mixed_field(5, 12);
    let phi = RationalMap::new(&k, ints(&k, &[1, 5, 0, 0, 0, 0, 1]), ints(&k, &[0, 1]))?;
    let r = ram_components(
        &k,
        &phi,
        &RamConfig {
            depth: exp_int(12),
            ..RamConfig::default()
        },
    )?;
    let total = total_ram_locus(&k, &phi, &r)?;
    let gauss = BerkPoint::gauss(&k);
    let only_gauss = !total.points.is_empty()
        && total
            .points
            .iter()
            .all(|p| p.same(&k, &gauss).unwrap_or(false));
    let consistent = total.mod_p_consistent != Some(false) && phi.d % 5 == 1;
    Ok((
        only_gauss && consistent,
        format!("{count} polynomials connected through inf; (z^6+5z+1)/z over p = 5: total ramification {:?}, d mod p = {}", total.points.iter().map(|p| p.fmt(&k)).collect::<Vec<_>>(), phi.d % 5),
    ))
}

/// `ρ` from the radii and the ord of the center difference.
fn rho_formula<V: ValuedField>(k: &V, x: &BerkPoint<V::Elem>, y: &BerkPoint<V::Elem>) -> Exp {
    let (
        BerkPoint::Ball {
            center: a, s: r, ..
        },
        BerkPoint::Ball { center: b, s, .. },
    ) = (x, y)
    else {
        unreachable!()
    };
    let mut j = (*r).min(*s);
    if let Some(v) = k.ord(&k.sub(a, b)).unwrap().finite() {
        j = j.min(v);
    }
    *r + *s - j - j
}

fn c10_metric() -> Outcome {
    let k = q_field();
    let z = k.zero();
    let base =
        BerkPoint::ball(&k, &z, exp_int(-1))?.rho(&k, &BerkPoint::ball(&k, &z, exp_int(0))?)?;
    if base != Some(exp_int(1)) {
        return Ok((false, format!("rho(zeta(0,-1), zeta(0,0)) = {base:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let inversion = RationalMap::new(&k, ints(&k, &[1]), ints(&k, &[0, 1]))?;
    for i in 0..500 {
        let x = random_type2_point(&k, &mut rng)?;
        let y = random_type2_point(&k, &mut rng)?;
        let r = x.rho(&k, &y)?.expect("finite");
        if r != rho_formula(&k, &x, &y) {
            return Ok((
                false,
                format!("pair {i}: rho disagrees with the radius formula"),
            ));
        }
        let m = if i % 2 == 0 {
            inversion.clone()
        } else {
            let mut alpha = k.zero();
            while k.is_exact_zero(&alpha) {
                alpha = random_element(&k, &mut rng, -1)?;
            }
            let beta = random_element(&k, &mut rng, -1)?;
            RationalMap::polynomial(&k, Poly::new(&k, vec![beta, alpha]))
        };
        let (mx, my) = (image_point(&k, &m, &x)?, image_point(&k, &m, &y)?);
        if mx.rho(&k, &my)? != Some(r) {
            return Ok((
                false,
                format!("pair {i}: rho not preserved by {}", m.fmt(&k)),
            ));
        }
    }
    Ok((
        true,
        "rho(zeta(0,-1), zeta(0,0)) = 1; 500 pairs invariant under affine maps and inversion"
            .into(),
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let results: Vec<(usize, &str, Outcome, f64)> = std::thread::scope(|sc| {
        let timed = |f: fn() -> Outcome| {
            move || {
                let t = Instant::now();
                (f(), t.elapsed().as_secs_f64())
            }
        };
        let h1 = sc.spawn(timed(c1_frobenius));
        let h23 = sc.spawn(|| {
            let t = Instant::now();
            (c2_c3(), t.elapsed().as_secs_f64())
        });
        let h4 = sc.spawn(timed(c4_critical_surplus));
        let h5 = sc.spawn(timed(c5_hurwitz));
        let h6 = sc.spawn(timed(c6_generator));
        let h7 = sc.spawn(timed(c7_tame_containment));
        let h8 = sc.spawn(timed(c8_sharpness));
        let h9 = sc.spawn(timed(c9_total_ramification));
        let h10 = sc.spawn(timed(c10_metric));
        let (r1, t1) = h1.join().unwrap();
        let (r23, t23) = h23.join().unwrap();
        let (r2, r3) = match r23 {
            Ok(pair) => pair,
            Err(e) => (Err(e.clone()), Err(e)),
        };
        let mut out = vec![
            (1, "Frobenius", r1, t1),
            (2, "reduction formula vs oracle", r2, t23),
            (3, "balance and directional sums", r3, t23),
        ];
        for (i, name, h) in [
            (4, "critical surplus", h4),
            (5, "Hurwitz", h5),
            (6, "n-component generator", h6),
            (7, "tame containment", h7),
            (8, "tube sharpness witness", h8),
            (9, "total ramification", h9),
            (10, "metric", h10),
        ] {
            let (r, t) = h.join().unwrap();
            out.push((i, name, r, t));
        }
        out
    });
    let mut failed = 0;
    for (i, name, r, secs) in results {
        let (ok, detail) = match r {
            Ok((ok, d)) => (ok, d),
            Err(e) => (false, format!("error {}: {e}", e.code())),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {i:>2} {}  {name} ({secs:.1}s): {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "acceptance: {} of 10 passed in {:.1}s",
        10 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
