//! State files: a small TOML document holding one pure state.
//!
//! ```toml
//! version = 1
//! form = "vector"            # or "matrix"
//! label = "phi plus"         # optional
//! amplitudes = [7.0710678118654757e-1, 0.0, 0.0, 7.0710678118654757e-1]
//! ```
//!
//! Matrix form uses a nested array, one inner array per row. Emitted numbers
//! carry 17 significant digits, so parse-emit-parse is bit exact.

use std::fmt::Write as _;

use serde::Deserialize;
use superlocc::{PureState, StateForm};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

/// Norm deviations up to this are renormalized with a warning.
pub const RENORMALIZE_LIMIT: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("malformed document: {0}")]
    Syntax(String),
    #[error("unsupported version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("unknown form '{0}' (expected \"vector\" or \"matrix\")")]
    Form(String),
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("squared norm deviates from 1 by {deviation:e}; pass --renormalize to accept")]
    Norm { deviation: f64 },
    #[error("invalid state: {0}")]
    State(#[from] superlocc::Error),
    #[error("missing field '{0}'")]
    Missing(&'static str),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub(crate) enum RawAmplitudes {
    Flat(Vec<f64>),
    Nested(Vec<Vec<f64>>),
}

/// A state table as written in a file, before validation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawState {
    version: u32,
    form: String,
    amplitudes: RawAmplitudes,
    label: Option<String>,
}

/// A parsed state file.
#[derive(Debug, Clone, PartialEq)]
pub struct StateDoc {
    pub state: PureState,
    pub label: Option<String>,
    /// `|Σ|c|² − 1|` before renormalization, when renormalization happened.
    pub renormalized: Option<f64>,
}

impl StateDoc {
    pub fn warning(&self) -> Option<String> {
        self.renormalized.map(|d| format!("warning: renormalized state (squared norm deviated by {d:e})"))
    }
}

pub fn parse_state_file(text: &str, renormalize: bool) -> Result<StateDoc, FileError> {
    let raw: RawState = toml::from_str(text).map_err(|e| FileError::Syntax(e.message().to_string()))?;
    build_state(raw, renormalize)
}

pub(crate) fn build_state(raw: RawState, renormalize: bool) -> Result<StateDoc, FileError> {
    if raw.version != FORMAT_VERSION {
        return Err(FileError::Version(raw.version));
    }
    let (rows, cols, mut data) = match (raw.form.as_str(), raw.amplitudes) {
        ("vector", RawAmplitudes::Flat(v)) => (0, v.len(), v),
        ("vector", RawAmplitudes::Nested(_)) => {
            return Err(FileError::Shape("vector form takes a flat array".into()))
        }
        ("matrix", RawAmplitudes::Nested(m)) => {
            let cols = m.first().map_or(0, Vec::len);
            if m.iter().any(|r| r.len() != cols) {
                return Err(FileError::Shape("matrix rows differ in length".into()));
            }
            (m.len(), cols, m.concat())
        }
        ("matrix", RawAmplitudes::Flat(_)) => {
            return Err(FileError::Shape("matrix form takes a nested array".into()))
        }
        (other, _) => return Err(FileError::Form(other.to_string())),
    };
    if data.is_empty() {
        return Err(FileError::Shape("no amplitudes".into()));
    }
    if let Some(i) = data.iter().position(|x| !x.is_finite()) {
        return Err(FileError::State(superlocc::Error::NonFinite { index: i }));
    }
    let norm_sq: f64 = data.iter().map(|x| x * x).sum();
    let deviation = (norm_sq - 1.0).abs();
    let mut renormalized = None;
    if deviation > superlocc::NORM_EPS {
        if deviation > RENORMALIZE_LIMIT && !renormalize {
            return Err(FileError::Norm { deviation });
        }
        if norm_sq <= 0.0 {
            return Err(FileError::State(superlocc::Error::AllZero));
        }
        let scale = norm_sq.sqrt().recip();
        data.iter_mut().for_each(|x| *x *= scale);
        renormalized = Some(deviation);
    }
    let state = if raw.form == "vector" {
        PureState::vector(data)?
    } else {
        PureState::matrix(rows, cols, data)?
    };
    Ok(StateDoc { state, label: raw.label, renormalized })
}

/// 17 significant digits; non-finite values use TOML's `inf` / `nan`.
pub fn exact(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn exact_array(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|&x| exact(x)).collect();
    format!("[{}]", items.join(", "))
}

pub(crate) fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

/// The key lines of a state table, shared by state files and certificates.
pub(crate) fn write_state_body(out: &mut String, state: &PureState, label: Option<&str>) {
    let _ = writeln!(out, "version = {FORMAT_VERSION}");
    match state.form() {
        StateForm::SharedBasisVector => {
            let _ = writeln!(out, "form = \"vector\"");
            if let Some(l) = label {
                let _ = writeln!(out, "label = {}", quote(l));
            }
            let _ = writeln!(out, "amplitudes = {}", exact_array(state.coefficients()));
        }
        StateForm::CoefficientMatrix => {
            let _ = writeln!(out, "form = \"matrix\"");
            if let Some(l) = label {
                let _ = writeln!(out, "label = {}", quote(l));
            }
            let (_, cols) = state.dims();
            let rows: Vec<String> = state.coefficients().chunks(cols).map(exact_array).collect();
            let _ = writeln!(out, "amplitudes = [{}]", rows.join(", "));
        }
    }
}

pub fn emit_state_file(state: &PureState, label: Option<&str>) -> String {
    let mut out = String::new();
    write_state_body(&mut out, state, label);
    out
}
