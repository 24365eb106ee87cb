//! Command layer behind the `berkram` binary: run configuration, input
//! syntax and the six commands with their JSON, DOT and text renderings.
//!
//! Every knob that influences a result is echoed in the `config` header of
//! the JSON output, and identical configurations produce identical bytes.

mod parse;
pub mod sample;

pub use parse::{parse_element, parse_exp, parse_map, parse_point};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::berkline::{BerkPoint, EdgeStatus, PointType};
use crate::error::{Error, Result};
use crate::mult::{
    directional_data, directional_sum_holds, has_inseparable_reduction, local_degree,
    local_degree_oracle, shifted_root_count, DirLabel, LocalData,
};
use crate::ramlocus::{
    annotate_skeleton, classify_boundary_points, critical_points, generate_n_component_example,
    hull_crit, ram_components, total_ram_locus, total_weight, RamConfig, RamReport,
};
use crate::ratmap::{wronskian, RationalMap};
use crate::valfield::{
    fmt_exp, is_prime, CoeffField, Exp, FieldMode, FiniteField, Puiseux, Radical, Rationals,
    ValuedField,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutFormat {
    Json,
    Dot,
    Text,
}

/// Everything a run depends on besides its inputs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub field: FieldMode,
    /// Residue characteristic; 0 only in equal characteristic zero.
    pub p: u64,
    /// Ramification index `N`: fixed in mixed mode, the starting value for
    /// Puiseux series.
    pub ram_index: u32,
    /// Degree of the coefficient field over `F_p` in equicharp mode.
    pub residue_degree: u32,
    /// Absolute precision cap, in units of `ord`.
    #[serde(serialize_with = "ser_exp")]
    pub precision: Exp,
    pub max_subdiv: usize,
    pub rays: usize,
    /// Sample size for the oracle and for random checks in `verify`.
    pub trials: usize,
    pub out: OutFormat,
    pub seed: u64,
}

fn ser_exp<S: serde::Serializer>(e: &Exp, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_exp(e))
}

/// The default cap: 64 steps of the value group `(1/N)Z`.
pub fn default_precision(ram_index: u32) -> Exp {
    Exp::new(64, ram_index as i64)
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldMode::EquicharZero,
            p: 0,
            ram_index: 1,
            residue_degree: 1,
            precision: default_precision(1),
            max_subdiv: 12,
            rays: 3,
            trials: 8,
            out: OutFormat::Json,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invalid(m));
        match self.field {
            FieldMode::EquicharZero if self.p != 0 => {
                return bad(format!(
                    "equichar0 has residue characteristic 0, got p = {}",
                    self.p
                ))
            }
            FieldMode::EquicharP | FieldMode::Mixed if !is_prime(self.p) => {
                return bad(format!(
                    "{} needs a prime p, got {}",
                    self.field.name(),
                    self.p
                ))
            }
            _ => {}
        }
        if self.ram_index == 0 {
            return bad("the ramification index must be at least 1".into());
        }
        if self.residue_degree == 0 {
            return bad("the residue degree must be at least 1".into());
        }
        if self.residue_degree > 1 && self.field != FieldMode::EquicharP {
            return bad("a residue degree above 1 needs equicharp".into());
        }
        if self.precision <= Exp::from_integer(0) {
            return bad("the precision must be positive".into());
        }
        if self.max_subdiv == 0 || self.rays == 0 || self.trials == 0 {
            return bad("budgets must be positive".into());
        }
        Ok(())
    }

    /// Depth to which critical points are expanded: a quarter of the cap,
    /// leaving room for the Taylor shifts done around them.
    pub fn depth(&self) -> Exp {
        (self.precision / 4).max(Exp::from_integer(1))
    }

    pub fn ram_config(&self) -> RamConfig {
        RamConfig {
            depth: self.depth(),
            max_subdiv: self.max_subdiv,
            rays: self.rays,
            epsilon: None,
        }
    }

    /// The reproducibility header attached to JSON output.
    pub fn header<V: ValuedField>(&self, k: &V) -> Value {
        let mut h = serde_json::to_value(self).expect("config serializes");
        let o = h.as_object_mut().unwrap();
        o.remove("out");
        o.insert("depth".into(), json!(fmt_exp(&self.depth())));
        o.insert(
            "epsilon".into(),
            json!(fmt_exp(&self.ram_config().epsilon_for(k))),
        );
        o.insert("ground".into(), serde_json::to_value(k.ground()).unwrap());
        o.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        h
    }
}

/// One invocation. Maps and points are given as text in the input syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze { map: String },
    LocalDegree { map: String, point: String },
    Skeleton { map: String },
    Components { map: String },
    Verify { map: String },
    Generate { n: usize, d: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::LocalDegree { .. } => "local-degree",
            Command::Skeleton { .. } => "skeleton",
            Command::Components { .. } => "components",
            Command::Verify { .. } => "verify",
            Command::Generate { .. } => "generate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// Some verdict could not be decided within the budgets.
    Unresolved,
    /// A checked invariant failed.
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Unresolved => 2,
            Status::Failed => 1,
        }
    }
}

/// Rendered result of a command.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
}

impl Outcome {
    /// The output in the requested format; DOT falls back to text for
    /// commands without a graph.
    pub fn render(&self, out: OutFormat) -> String {
        match out {
            OutFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json");
                s.push('\n');
                s
            }
            OutFormat::Dot => self.dot.clone().unwrap_or_else(|| self.text.clone()),
            OutFormat::Text => self.text.clone(),
        }
    }
}

/// Structured rendering of an error.
pub fn error_json(e: &Error) -> Value {
    json!({"error": {"code": e.code(), "message": e.to_string()}})
}

/// Pretty JSON for an error, newline terminated.
pub fn render_error(e: &Error) -> String {
    let mut s = serde_json::to_string_pretty(&error_json(e)).expect("json");
    s.push('\n');
    s
}

/// Accept either a bare map or the JSON emitted by `generate`.
pub fn map_text_from_input(input: &str) -> Result<String> {
    let t = input.trim();
    if t.starts_with('{') {
        let v: Value =
            serde_json::from_str(t).map_err(|e| Error::Invalid(format!("bad JSON input: {e}")))?;
        return v
            .pointer("/result/map")
            .or_else(|| v.get("map"))
            .and_then(Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| Error::Invalid("JSON input has no \"map\" field".into()));
    }
    Ok(t.to_string())
}

/// Run `cmd` under `cfg`.
pub fn run(cfg: &RunConfig, cmd: &Command) -> Result<Outcome> {
    cfg.validate()?;
    match cfg.field {
        FieldMode::EquicharZero => {
            let k = Puiseux::new(Rationals, cfg.precision, cfg.ram_index);
            run_in(&k, cfg, cmd)
        }
        FieldMode::EquicharP => {
            let kr = FiniteField::of_order(cfg.p, cfg.residue_degree)?;
            let k = Puiseux::new(kr, cfg.precision, cfg.ram_index);
            run_in(&k, cfg, cmd)
        }
        FieldMode::Mixed => {
            let k = Radical::new(cfg.p, cfg.ram_index, cfg.precision)?;
            run_in(&k, cfg, cmd)
        }
    }
}

fn run_in<V: ValuedField>(k: &V, cfg: &RunConfig, cmd: &Command) -> Result<Outcome> {
    let mut out = match cmd {
        Command::Analyze { map } => analyze(k, cfg, &parse_map(k, map)?)?,
        Command::LocalDegree { map, point } => {
            local(k, cfg, &parse_map(k, map)?, &parse_point(k, point)?)?
        }
        Command::Skeleton { map } => skeleton(k, cfg, &parse_map(k, map)?)?,
        Command::Components { map } => components(k, cfg, &parse_map(k, map)?)?,
        Command::Verify { map } => verify(k, cfg, &parse_map(k, map)?)?,
        Command::Generate { n, d } => generate(k, *n, *d)?,
    };
    let body = std::mem::take(&mut out.json);
    out.json = json!({
        "config": cfg.header(k),
        "command": cmd.name(),
        "status": out.status,
        "result": body,
    });
    Ok(out)
}

fn analyze<V: ValuedField>(k: &V, cfg: &RunConfig, phi: &RationalMap<V::Elem>) -> Result<Outcome> {
    let report = ram_components(k, phi, &cfg.ram_config())?;
    let total = total_ram_locus(k, phi, &report)?;
    let tags = classify_boundary_points(k, &report);
    let mut json = report.to_json(k);
    let o = json.as_object_mut().unwrap();
    o.insert("map".into(), json!(phi.fmt(k)));
    o.insert("total_ramification".into(), total.to_json(k));
    o.insert(
        "boundary".into(),
        Value::Array(
            tags.iter()
                .enumerate()
                .map(|(i, (tag, agrees))| json!({"vertex": i, "tag": tag, "agrees": agrees}))
                .collect(),
        ),
    );
    let mut text = summary_text(k, phi, &report);
    text.push_str(&format!(
        "totally ramified: {}\n",
        if total.points.is_empty() {
            "none found".to_string()
        } else {
            total
                .points
                .iter()
                .map(|p| p.fmt(k))
                .collect::<Vec<_>>()
                .join(", ")
        }
    ));
    Ok(Outcome {
        status: report_status(&report),
        json,
        text,
        dot: Some(report.skeleton().to_dot(k)),
    })
}

fn report_status<E: Clone + PartialEq, T: Clone + PartialEq>(r: &RamReport<E, T>) -> Status {
    if r.resolved {
        Status::Ok
    } else {
        Status::Unresolved
    }
}

fn summary_text<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    r: &RamReport<V::Elem, <V::Res as CoeffField>::Elt>,
) -> String {
    let weight = total_weight(&r.crit).map_or("inf".to_string(), |w| w.to_string());
    let count = if r.count.0 == r.count.1 {
        r.count.0.to_string()
    } else {
        format!("{}..{}", r.count.0, r.count.1)
    };
    let mut s = format!(
        "map: {}\ndegree: {}\ncritical weight: {weight}\ncomponents (hull+tube): {count}{}\n",
        phi.fmt(k),
        r.d,
        if r.resolved { "" } else { " UNRESOLVED" }
    );
    for (i, c) in r.components.iter().enumerate() {
        s.push_str(&format!(
            "  component {i}: {} vertices, critical weight {}{}\n",
            c.vertices.len(),
            c.crit_weight.map_or("inf".to_string(), |w| w.to_string()),
            if c.resolved { "" } else { ", UNRESOLVED" }
        ));
    }
    let v = &r.verdicts;
    let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
    s.push_str(&format!(
        "component bound: {}\ntubular: {}\nhurwitz: {}\nbalance: {}\n",
        v.component_bound,
        opt(v.tubular),
        opt(v.hurwitz),
        v.balance
    ));
    s
}

fn local<V: ValuedField>(
    k: &V,
    _cfg: &RunConfig,
    phi: &RationalMap<V::Elem>,
    x: &BerkPoint<V::Elem>,
) -> Result<Outcome> {
    let m = local_degree(k, phi, x)?;
    let insep = has_inseparable_reduction(k, phi, x)?;
    let data = match x {
        BerkPoint::Ball {
            kind: PointType::II,
            ..
        } => Some(directional_data(k, phi, x)?),
        _ => None,
    };
    let mut json = json!({
        "map": phi.fmt(k),
        "point": x.fmt(k),
        "type": x.kind(),
        "m": m,
        "insep": insep,
    });
    let mut text = format!("m = {m}\ninsep = {insep}\n");
    let mut dot = None;
    if let Some(ld) = &data {
        json.as_object_mut()
            .unwrap()
            .insert("local_data".into(), ld.to_json(k));
        let dirs = ld.to_json(k);
        for d in dirs["directions"].as_array().unwrap() {
            text.push_str(&format!(
                "direction {} (x{}): m_dir = {}, s_dir = {}, image {}\n",
                d["direction"].as_str().unwrap(),
                d["count"],
                d["m_dir"],
                d["s_dir"],
                d["image"].as_str().unwrap()
            ));
        }
        text.push_str(&format!(
            "other directions: m_dir = {}, s_dir = 0\n",
            ld.generic_m_dir
        ));
        dot = Some(star_dot(k, ld));
    }
    Ok(Outcome {
        status: Status::Ok,
        json,
        text,
        dot,
    })
}

/// The point with one spoke per listed direction class.
fn star_dot<V: ValuedField>(k: &V, ld: &LocalData<V::Elem, <V::Res as CoeffField>::Elt>) -> String {
    let j = ld.to_json(k);
    let mut s = String::from("graph local {\n  node [shape=box, fontname=\"monospace\"];\n");
    s.push_str(&format!(
        "  x [label=\"{}\\nm={}\"];\n",
        ld.at.fmt(k).replace('"', "'"),
        ld.m
    ));
    for (i, d) in j["directions"].as_array().unwrap().iter().enumerate() {
        s.push_str(&format!(
            "  d{i} [label=\"{}\", shape=plaintext];\n  x -- d{i} [label=\"m_dir={} s_dir={}\"];\n",
            d["direction"].as_str().unwrap().replace('"', "'"),
            d["m_dir"],
            d["s_dir"]
        ));
    }
    s.push_str("}\n");
    s
}

fn skeleton<V: ValuedField>(k: &V, cfg: &RunConfig, phi: &RationalMap<V::Elem>) -> Result<Outcome> {
    let crit = critical_points(k, phi, cfg.depth())?;
    let an = annotate_skeleton(k, phi, hull_crit(k, &crit)?, cfg.max_subdiv)?;
    let sk = &an.skeleton;
    let unresolved = sk
        .edges
        .iter()
        .filter(|e| e.status == EdgeStatus::Unresolved)
        .count();
    let mut json = sk.to_json(k);
    let o = json.as_object_mut().unwrap();
    o.insert("map".into(), json!(phi.fmt(k)));
    o.insert(
        "critical_points".into(),
        Value::Array(crit.iter().map(|c| c.to_json(k)).collect()),
    );
    let mut text = format!(
        "map: {}\n{} vertices, {} edges, {unresolved} unresolved\n",
        phi.fmt(k),
        sk.vertices.len(),
        sk.edges.len()
    );
    for (i, v) in sk.vertices.iter().enumerate() {
        text.push_str(&format!(
            "  v{i} {} m={}\n",
            v.point.fmt(k),
            v.m.map_or("?".to_string(), |m| m.to_string())
        ));
    }
    for e in &sk.edges {
        text.push_str(&format!(
            "  v{} -- v{} m={}{}\n",
            e.child,
            e.parent,
            e.m.map_or("?".to_string(), |m| m.to_string()),
            if e.status == EdgeStatus::Unresolved {
                " UNRESOLVED"
            } else {
                ""
            }
        ));
    }
    Ok(Outcome {
        status: if unresolved == 0 {
            Status::Ok
        } else {
            Status::Unresolved
        },
        json,
        text,
        dot: Some(sk.to_dot(k)),
    })
}

fn components<V: ValuedField>(
    k: &V,
    cfg: &RunConfig,
    phi: &RationalMap<V::Elem>,
) -> Result<Outcome> {
    let report = ram_components(k, phi, &cfg.ram_config())?;
    let json = json!({
        "map": phi.fmt(k),
        "degree": report.d,
        "scope": "hull+tube",
        "component_count": {"min": report.count.0, "max": report.count.1},
        "components": report.components,
        "resolved": report.resolved,
        "verdicts": report.verdicts,
    });
    Ok(Outcome {
        status: report_status(&report),
        json,
        text: summary_text(k, phi, &report),
        dot: Some(report.skeleton().to_dot(k)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Check {
    Pass,
    Fail,
    Skipped,
}

fn verdict(ok: bool) -> Check {
    if ok {
        Check::Pass
    } else {
        Check::Fail
    }
}

/// Critical weight in the open disk of direction `u` at `ζ_{a,s}`: the
/// multiplicity of `u` as a residue root of `W(a + π^s z)`.
fn weight_in_direction<V: ValuedField>(
    k: &V,
    phi: &RationalMap<V::Elem>,
    a: &V::Elem,
    s: Exp,
    u: &<V::Res as CoeffField>::Elt,
) -> Result<usize> {
    let red = shifted_root_count(k, &wronskian(k, phi), a, s)?;
    Ok(red.root_mult(k.residue_field(), u))
}

fn verify<V: ValuedField>(k: &V, cfg: &RunConfig, phi: &RationalMap<V::Elem>) -> Result<Outcome> {
    let kr = k.residue_field();
    let report = ram_components(k, phi, &cfg.ram_config())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks: Vec<(&str, Check, String)> = Vec::new();

    let d = phi.d;
    match total_weight(&report.crit) {
        Some(w) => checks.push((
            "hurwitz",
            verdict(w + 2 == 2 * d),
            format!("weight {w}, 2d - 2 = {}", 2 * d - 2),
        )),
        None => checks.push(("hurwitz", Check::Skipped, "inseparable map".into())),
    }

    // local data at skeleton vertices and at random type II points
    let mut data: Vec<LocalData<V::Elem, <V::Res as CoeffField>::Elt>> =
        report.annotated.local.iter().flatten().cloned().collect();
    let mut points: Vec<BerkPoint<V::Elem>> = data.iter().map(|ld| ld.at.clone()).collect();
    for _ in 0..cfg.trials {
        let x = sample::random_type2_point(k, &mut rng)?;
        data.push(directional_data(k, phi, &x)?);
        points.push(x);
    }
    let balance_bad = data.iter().filter(|ld| !ld.balance_holds()).count();
    checks.push((
        "balance",
        verdict(balance_bad == 0),
        format!("{} points, {balance_bad} failures", data.len()),
    ));

    let mut sum_bad = 0;
    for ld in &data {
        let mut targets: Vec<Option<<V::Res as CoeffField>::Elt>> = vec![None];
        for i in 0..kr.order().unwrap_or(4).min(4) {
            targets.push(Some(kr.nth_element(i)));
        }
        for u in &targets {
            if !directional_sum_holds(kr, ld, u.as_ref()) {
                sum_bad += 1;
            }
        }
    }
    checks.push((
        "directional_sum",
        verdict(sum_bad == 0),
        format!("{sum_bad} failures"),
    ));

    let (mut agree, mut disagree, mut inconclusive) = (0, 0, 0);
    for x in &points {
        let m = local_degree(k, phi, x)?;
        match local_degree_oracle(k, phi, x, cfg.trials) {
            Ok(o) if o == m => agree += 1,
            Ok(_) => disagree += 1,
            Err(Error::OracleInconclusive(_)) => inconclusive += 1,
            Err(e) => return Err(e),
        }
    }
    checks.push((
        "reduction_vs_oracle",
        verdict(disagree == 0),
        format!("{agree} agree, {disagree} disagree, {inconclusive} inconclusive"),
    ));

    let (mut cs_ok, mut cs_bad) = (0, 0);
    for ld in &data {
        let BerkPoint::Ball { center, s, .. } = &ld.at else {
            continue;
        };
        for c in &ld.classes {
            if let DirLabel::Finite(u) = &c.label {
                if c.m_dir == 1 && c.s_dir > 0 {
                    if weight_in_direction(k, phi, center, *s, u)? == 2 * c.s_dir {
                        cs_ok += 1;
                    } else {
                        cs_bad += 1;
                    }
                }
            }
        }
    }
    if k.residue_char() == 0 {
        checks.push((
            "critical_surplus",
            verdict(cs_bad == 0),
            format!("{cs_ok} directions agree, {cs_bad} differ"),
        ));
    } else {
        checks.push((
            "critical_surplus",
            Check::Skipped,
            "stated for residue characteristic 0".into(),
        ));
    }

    checks.push((
        "component_bound",
        verdict(report.verdicts.component_bound),
        format!(
            "{}..{} components, bound {}",
            report.count.0,
            report.count.1,
            d.saturating_sub(1)
        ),
    ));
    checks.push(match report.verdicts.tubular {
        Some(b) => (
            "tubular",
            verdict(b),
            format!(
                "probes at bound + {}",
                fmt_exp(&cfg.ram_config().epsilon_for(k))
            ),
        ),
        None => (
            "tubular",
            Check::Skipped,
            "needs residue characteristic 0 or p > d".into(),
        ),
    });

    let failed = checks.iter().any(|c| c.1 == Check::Fail);
    let status = if failed {
        Status::Failed
    } else if !report.resolved {
        Status::Unresolved
    } else {
        Status::Ok
    };
    let mut text = format!("map: {}\n", phi.fmt(k));
    for (name, c, detail) in &checks {
        let tag = match c {
            Check::Pass => "PASS",
            Check::Fail => "FAIL",
            Check::Skipped => "SKIP",
        };
        text.push_str(&format!("{tag} {name}: {detail}\n"));
    }
    if !report.resolved {
        text.push_str("component count UNRESOLVED within the budget\n");
    }
    let json = json!({
        "map": phi.fmt(k),
        "resolved": report.resolved,
        "checks": checks
            .iter()
            .map(|(n, c, detail)| json!({"name": n, "result": c, "detail": detail}))
            .collect::<Vec<_>>(),
    });
    Ok(Outcome {
        status,
        json,
        text,
        dot: None,
    })
}

fn generate<V: ValuedField>(k: &V, n: usize, d: usize) -> Result<Outcome> {
    let phi = generate_n_component_example(k, n, d)?;
    let text = phi.fmt(k);
    Ok(Outcome {
        status: Status::Ok,
        json: json!({"n": n, "d": d, "map": text}),
        text: format!("{text}\n"),
        dot: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig {
            out: OutFormat::Json,
            ..RunConfig::default()
        }
    }

    #[test]
    fn local_degree_of_mobius() {
        let out = run(
            &cfg(),
            &Command::LocalDegree {
                map: "(z+1)/(z-1)".into(),
                point: "zeta(0; ord=0)".into(),
            },
        )
        .unwrap();
        assert_eq!(out.json["result"]["m"], 1);
        assert_eq!(out.status, Status::Ok);
    }

    #[test]
    fn frobenius_in_characteristic_three() {
        let c = RunConfig {
            field: FieldMode::EquicharP,
            p: 3,
            ..cfg()
        };
        let out = run(
            &c,
            &Command::LocalDegree {
                map: "z^3".into(),
                point: "zeta(0; ord=0)".into(),
            },
        )
        .unwrap();
        assert_eq!(out.json["result"]["m"], 3);
        assert_eq!(out.json["result"]["insep"], true);
    }

    #[test]
    fn generate_then_analyze() {
        let g = run(&cfg(), &Command::Generate { n: 2, d: 3 }).unwrap();
        let text = g.render(OutFormat::Json);
        let map = map_text_from_input(&text).unwrap();
        let a = run(&cfg(), &Command::Analyze { map }).unwrap();
        assert_eq!(a.json["result"]["component_count"]["min"], 2);
        assert_eq!(a.json["result"]["component_count"]["max"], 2);
        assert_eq!(a.status, Status::Ok);
    }

    #[test]
    fn output_is_deterministic() {
        let cmd = Command::Verify {
            map: "(z^3 + t)/(z - 1)".into(),
        };
        let a = run(&cfg(), &cmd).unwrap().render(OutFormat::Json);
        let b = run(&cfg(), &cmd).unwrap().render(OutFormat::Json);
        assert_eq!(a, b);
        assert!(a.contains("\"seed\": 0"));
    }

    #[test]
    fn verify_passes_on_a_quadratic() {
        let out = run(
            &cfg(),
            &Command::Verify {
                map: "z^2 + t*z".into(),
            },
        )
        .unwrap();
        assert_eq!(out.status, Status::Ok, "{}", out.text);
    }

    #[test]
    fn bad_configs_are_rejected() {
        let c = RunConfig {
            field: FieldMode::Mixed,
            p: 4,
            ..cfg()
        };
        assert!(run(&c, &Command::Generate { n: 1, d: 2 }).is_err());
        let c = RunConfig {
            max_subdiv: 0,
            ..cfg()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn errors_have_codes() {
        let e = run(
            &cfg(),
            &Command::Skeleton {
                map: "z^2 +".into(),
            },
        )
        .unwrap_err();
        assert_eq!(error_json(&e)["error"]["code"], "SyntaxError");
    }
}
