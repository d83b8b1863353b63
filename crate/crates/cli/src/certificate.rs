//! Bound instances, bound certificates and scenario certificates as TOML.
//!
//! A bound document holds the weights, evaluation settings and component
//! states (as state tables). The same layout serves as `bounds --instance`
//! input; certificates add the theorem id and the recorded margins so a
//! replay can check them.
//!
//! ```toml
//! kind = "bound"
//! id = "T3#17"
//! theorem = "T3"
//! alpha = 7.0710678118654757e-1
//! beta = 7.0710678118654757e-1
//! log_base = 2.0000000000000000e0
//! delta = 2.0000000000000000e0
//! exclude_zero_coefficients = false
//! margin_lower = -1.0000000000000000e0
//! holds = false
//!
//! [psi]
//! version = 1
//! form = "vector"
//! amplitudes = [...]
//!
//! [phi]
//! ...
//! ```
//!
//! Chain11 documents add `[psi_prime]` and `[phi_prime]` (same weights).

use std::fmt::Write as _;

use serde::Deserialize;
use superlocc::bounds::{evaluate, BoundConfig, BoundInstance, BoundReport, Theorem};
use superlocc::scenarios::{check_row_conditions, observe, Case, ScenarioCertificate, ScenarioInstance, ScenarioRow};
use superlocc::SuperpositionSpec;

use crate::statefile::{build_state, exact, exact_array, quote, write_state_body, FileError, RawState};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBoundDoc {
    kind: Option<String>,
    id: Option<String>,
    theorem: Option<String>,
    alpha: f64,
    beta: Option<f64>,
    delta: Option<f64>,
    log_base: Option<f64>,
    exclude_zero_coefficients: Option<bool>,
    margin_lower: Option<f64>,
    margin_upper: Option<f64>,
    chain_margins: Option<Vec<f64>>,
    holds: Option<bool>,
    psi: RawState,
    phi: RawState,
    psi_prime: Option<RawState>,
    phi_prime: Option<RawState>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenarioDoc {
    kind: String,
    id: String,
    case: String,
    row: String,
    alpha: f64,
    beta: f64,
    alpha_prime: f64,
    beta_prime: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    a_prime: Vec<f64>,
    b_prime: Vec<f64>,
    verdict: String,
    c2_order: String,
    c2_first: f64,
    c2_second: f64,
}

/// Margins stored in a bound certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordedMargins {
    pub margin_lower: Option<f64>,
    pub margin_upper: Option<f64>,
    pub chain_margins: Vec<f64>,
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundDocument {
    pub id: Option<String>,
    pub theorem: Option<Theorem>,
    pub instance: BoundInstance,
    pub partner: Option<BoundInstance>,
    pub recorded: Option<RecordedMargins>,
}

/// Settings from the command line; `None` keeps the document's value (or the default).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ConfigOverrides {
    pub delta: Option<f64>,
    pub log_base: Option<f64>,
    pub exclude_zero_coefficients: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioDocument {
    pub id: String,
    pub case: Case,
    pub row_id: String,
    pub instance: ScenarioInstance,
    pub verdict: String,
    pub c2_order: String,
    pub c2_first: f64,
    pub c2_second: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Bound(BoundDocument),
    Scenario(ScenarioDocument),
}

fn syntax(e: impl std::fmt::Display) -> FileError {
    FileError::Syntax(e.to_string())
}

/// Reads a bound or scenario document, dispatching on `kind` (default `bound`).
pub fn parse_document(text: &str, overrides: ConfigOverrides) -> Result<Document, FileError> {
    let table: toml::Table = toml::from_str(text).map_err(|e| FileError::Syntax(e.message().to_string()))?;
    let kind = table.get("kind").and_then(toml::Value::as_str).unwrap_or("bound").to_string();
    let value = toml::Value::Table(table);
    match kind.as_str() {
        "bound" => Ok(Document::Bound(bound_document(value.try_into().map_err(syntax)?, overrides)?)),
        "scenario" => Ok(Document::Scenario(scenario_document(value.try_into().map_err(syntax)?)?)),
        other => Err(FileError::Syntax(format!("unknown document kind '{other}'"))),
    }
}

pub fn parse_bound_document(text: &str, overrides: ConfigOverrides) -> Result<BoundDocument, FileError> {
    match parse_document(text, overrides)? {
        Document::Bound(d) => Ok(d),
        Document::Scenario(_) => Err(FileError::Syntax("expected a bound document".into())),
    }
}

fn bound_document(raw: RawBoundDoc, overrides: ConfigOverrides) -> Result<BoundDocument, FileError> {
    let theorem = match &raw.theorem {
        Some(t) => Some(Theorem::parse(t).ok_or_else(|| FileError::Syntax(format!("unknown theorem '{t}'")))?),
        None => None,
    };
    let defaults = BoundConfig::default();
    let config = BoundConfig {
        delta: overrides.delta.or(raw.delta).or(defaults.delta),
        log_base: overrides.log_base.or(raw.log_base).unwrap_or(defaults.log_base),
        exclude_zero_coefficients: overrides
            .exclude_zero_coefficients
            .or(raw.exclude_zero_coefficients)
            .unwrap_or(defaults.exclude_zero_coefficients),
    };
    let beta = raw.beta.unwrap_or_else(|| (1.0 - raw.alpha * raw.alpha).max(0.0).sqrt());
    let make = |psi: RawState, phi: RawState| -> Result<BoundInstance, FileError> {
        let spec = SuperpositionSpec::new(raw.alpha, beta, build_state(psi, false)?.state, build_state(phi, false)?.state)?;
        Ok(BoundInstance::new(spec, config)?)
    };
    let instance = make(raw.psi, raw.phi)?;
    let partner = match (raw.psi_prime, raw.phi_prime) {
        (Some(p), Some(q)) => Some(make(p, q)?),
        (None, None) => None,
        _ => return Err(FileError::Missing("psi_prime and phi_prime must appear together")),
    };
    let recorded = (raw.margin_lower.is_some()
        || raw.margin_upper.is_some()
        || raw.chain_margins.is_some()
        || raw.holds.is_some())
    .then(|| RecordedMargins {
        margin_lower: raw.margin_lower,
        margin_upper: raw.margin_upper,
        chain_margins: raw.chain_margins.unwrap_or_default(),
        holds: raw.holds,
    });
    let _ = raw.kind;
    Ok(BoundDocument { id: raw.id, theorem, instance, partner, recorded })
}

fn scenario_document(raw: RawScenarioDoc) -> Result<ScenarioDocument, FileError> {
    debug_assert_eq!(raw.kind, "scenario");
    let case = Case::parse(&raw.case).ok_or_else(|| FileError::Syntax(format!("unknown case '{}'", raw.case)))?;
    for v in [&raw.a, &raw.b, &raw.a_prime, &raw.b_prime] {
        if v.len() != 3 {
            return Err(FileError::Shape("scenario components are 3-dimensional".into()));
        }
    }
    Ok(ScenarioDocument {
        id: raw.id,
        case,
        row_id: raw.row,
        instance: ScenarioInstance {
            alpha: raw.alpha,
            beta: raw.beta,
            alpha_p: raw.alpha_prime,
            beta_p: raw.beta_prime,
            a: raw.a,
            b: raw.b,
            a_p: raw.a_prime,
            b_p: raw.b_prime,
        },
        verdict: raw.verdict,
        c2_order: raw.c2_order,
        c2_first: raw.c2_first,
        c2_second: raw.c2_second,
    })
}

fn write_instance_header(out: &mut String, inst: &BoundInstance) {
    let spec = inst.spec();
    let config = inst.config();
    let _ = writeln!(out, "alpha = {}", exact(spec.alpha()));
    let _ = writeln!(out, "beta = {}", exact(spec.beta()));
    let _ = writeln!(out, "log_base = {}", exact(config.log_base));
    if let Some(d) = config.delta {
        let _ = writeln!(out, "delta = {}", exact(d));
    }
    let _ = writeln!(out, "exclude_zero_coefficients = {}", config.exclude_zero_coefficients);
}

fn write_components(out: &mut String, inst: &BoundInstance, partner: Option<&BoundInstance>) {
    let mut table = |name: &str, state| {
        let _ = writeln!(out, "\n[{name}]");
        write_state_body(out, state, None);
    };
    table("psi", inst.spec().psi());
    table("phi", inst.spec().phi());
    if let Some(p) = partner {
        table("psi_prime", p.spec().psi());
        table("phi_prime", p.spec().phi());
    }
}

/// An instance file with no theorem or margins.
pub fn emit_bound_instance(inst: &BoundInstance, partner: Option<&BoundInstance>) -> String {
    let mut out = String::from("kind = \"bound\"\n");
    write_instance_header(&mut out, inst);
    write_components(&mut out, inst, partner);
    out
}

pub fn emit_bound_certificate(id: &str, report: &BoundReport) -> String {
    let mut out = String::from("kind = \"bound\"\n");
    let _ = writeln!(out, "id = {}", quote(id));
    let _ = writeln!(out, "theorem = \"{}\"", report.theorem);
    write_instance_header(&mut out, &report.instance);
    if let Some(m) = report.margin_lower {
        let _ = writeln!(out, "margin_lower = {}", exact(m));
    }
    if let Some(m) = report.margin_upper {
        let _ = writeln!(out, "margin_upper = {}", exact(m));
    }
    if !report.chain_margins.is_empty() {
        let _ = writeln!(out, "chain_margins = {}", exact_array(&report.chain_margins));
    }
    let _ = writeln!(out, "holds = {}", report.holds);
    write_components(&mut out, &report.instance, report.partner.as_ref());
    out
}

pub fn emit_scenario_certificate(cert: &ScenarioCertificate) -> String {
    let inst = &cert.witness.instance;
    let obs = &cert.witness.observation;
    let mut out = String::from("kind = \"scenario\"\n");
    let _ = writeln!(out, "id = {}", quote(&cert.id));
    let _ = writeln!(out, "case = \"{}\"", cert.case);
    let _ = writeln!(out, "row = {}", quote(&cert.row_id));
    for (k, v) in [("alpha", inst.alpha), ("beta", inst.beta), ("alpha_prime", inst.alpha_p), ("beta_prime", inst.beta_p)] {
        let _ = writeln!(out, "{k} = {}", exact(v));
    }
    for (k, v) in [("a", &inst.a), ("b", &inst.b), ("a_prime", &inst.a_p), ("b_prime", &inst.b_p)] {
        let _ = writeln!(out, "{k} = {}", exact_array(v));
    }
    let _ = writeln!(out, "verdict = \"{}\"", obs.verdict);
    let _ = writeln!(out, "c2_order = {}", quote(obs.c2_order.as_str()));
    let _ = writeln!(out, "c2_first = {}", exact(obs.c2_first));
    let _ = writeln!(out, "c2_second = {}", exact(obs.c2_second));
    out
}

/// File name for a certificate id (`T3#17` → `T3_17.toml`).
pub fn certificate_file_name(id: &str) -> String {
    let safe: String = id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    format!("{safe}.toml")
}

fn same(a: f64, b: f64) -> bool {
    a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan())
}

fn diff(a: f64, b: f64) -> f64 {
    if same(a, b) {
        0.0
    } else if a.is_finite() && b.is_finite() {
        (a - b).abs()
    } else {
        f64::INFINITY
    }
}

/// Result of re-deriving a certificate from its stored inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplayOutcome {
    pub id: String,
    pub kind: &'static str,
    /// Every recorded value reproduced bit for bit.
    pub identical: bool,
    pub max_abs_diff: f64,
    pub detail: String,
}

pub fn replay_bound(doc: &BoundDocument) -> Result<(BoundReport, ReplayOutcome), superlocc::Error> {
    let theorem = doc.theorem.ok_or(superlocc::Error::Precondition("document names no theorem"))?;
    let report = evaluate(theorem, &doc.instance, doc.partner.as_ref())?;
    let mut identical = true;
    let mut max = 0.0f64;
    if let Some(rec) = &doc.recorded {
        let pairs = [(rec.margin_lower, report.margin_lower), (rec.margin_upper, report.margin_upper)];
        for (want, got) in pairs {
            match (want, got) {
                (Some(w), Some(g)) => {
                    identical &= same(w, g);
                    max = max.max(diff(w, g));
                }
                (None, None) => {}
                _ => identical = false,
            }
        }
        identical &= rec.chain_margins.len() == report.chain_margins.len();
        for (w, g) in rec.chain_margins.iter().zip(&report.chain_margins) {
            identical &= same(*w, *g);
            max = max.max(diff(*w, *g));
        }
        if let Some(h) = rec.holds {
            identical &= h == report.holds;
        }
    }
    let outcome = ReplayOutcome {
        id: doc.id.clone().unwrap_or_else(|| theorem.to_string()),
        kind: "bound",
        identical,
        max_abs_diff: max,
        detail: format!("holds={} worst_margin={}", report.holds, report.worst_margin()),
    };
    Ok((report, outcome))
}

pub fn replay_scenario(doc: &ScenarioDocument, rows: &[ScenarioRow]) -> Result<ReplayOutcome, superlocc::Error> {
    let row = rows
        .iter()
        .find(|r| r.id == doc.row_id)
        .ok_or(superlocc::Error::Precondition("certificate row id not in row set"))?;
    let satisfied = check_row_conditions(row, &doc.instance);
    let obs = observe(doc.case, &doc.instance)?;
    let identical = satisfied
        && obs.verdict.as_str() == doc.verdict
        && obs.c2_order.as_str() == doc.c2_order
        && same(obs.c2_first, doc.c2_first)
        && same(obs.c2_second, doc.c2_second);
    Ok(ReplayOutcome {
        id: doc.id.clone(),
        kind: "scenario",
        identical,
        max_abs_diff: diff(obs.c2_first, doc.c2_first).max(diff(obs.c2_second, doc.c2_second)),
        detail: format!("conditions_hold={satisfied} verdict={} c2_order={}", obs.verdict, obs.c2_order.as_str()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use superlocc::PureState;

    fn vs(p: &[f64]) -> PureState {
        PureState::from_probabilities(p).unwrap()
    }

    #[test]
    fn bound_certificate_round_trip() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = vs(&[0.2, 0.5, 0.3]);
        let inst = BoundInstance::new(SuperpositionSpec::new(h, h, s.clone(), s).unwrap(), BoundConfig::default()).unwrap();
        let report = evaluate(Theorem::T3, &inst, None).unwrap();
        assert!(!report.holds);
        let text = emit_bound_certificate("T3#0", &report);
        let doc = parse_bound_document(&text, ConfigOverrides::default()).unwrap();
        assert_eq!(doc.instance, inst);
        let (again, outcome) = replay_bound(&doc).unwrap();
        assert!(outcome.identical, "{outcome:?}");
        assert_eq!(again, report);
    }

    #[test]
    fn tampered_margin_is_detected() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let inst = BoundInstance::new(
            SuperpositionSpec::new(h, h, vs(&[1.0, 0.0]), vs(&[0.0, 1.0])).unwrap(),
            BoundConfig::default(),
        )
        .unwrap();
        let report = evaluate(Theorem::T1, &inst, None).unwrap();
        let text = emit_bound_certificate("T1#0", &report).replace("margin_lower = 5", "margin_lower = 4");
        let (_, outcome) = replay_bound(&parse_bound_document(&text, ConfigOverrides::default()).unwrap()).unwrap();
        assert!(!outcome.identical);
    }

    #[test]
    fn instance_file_with_partner_and_overrides() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mk = |p: &[f64], q: &[f64]| {
            BoundInstance::new(SuperpositionSpec::new(h, h, vs(p), vs(q)).unwrap(), BoundConfig::default()).unwrap()
        };
        let (a, b) = (mk(&[0.6, 0.4, 0.0], &[0.0, 0.0, 1.0]), mk(&[0.5, 0.3, 0.2], &[0.1, 0.1, 0.8]));
        let text = emit_bound_instance(&a, Some(&b));
        let doc = parse_bound_document(
            &text,
            ConfigOverrides { delta: Some(0.5), log_base: None, exclude_zero_coefficients: Some(true) },
        )
        .unwrap();
        assert!(doc.theorem.is_none() && doc.recorded.is_none());
        assert_eq!(doc.instance.config().delta, Some(0.5));
        assert!(doc.instance.config().exclude_zero_coefficients);
        assert_eq!(doc.partner.unwrap().spec().psi(), b.spec().psi());
    }

    #[test]
    fn bad_documents() {
        for text in [
            "kind = \"tensor\"",
            "alpha = 0.5",
            "kind = \"scenario\"\nid = \"x\"",
            "alpha = 2.0\n[psi]\nversion = 1\nform = \"vector\"\namplitudes = [1]\n[phi]\nversion = 1\nform = \"vector\"\namplitudes = [1]\n",
        ] {
            assert!(parse_document(text, ConfigOverrides::default()).is_err(), "{text}");
        }
    }

    #[test]
    fn file_names() {
        assert_eq!(certificate_file_name("T3#17"), "T3_17.toml");
        assert_eq!(certificate_file_name("1A-2#5"), "1A-2_5.toml");
    }
}
