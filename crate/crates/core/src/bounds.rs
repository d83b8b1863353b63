//! Evaluation of entanglement bounds for superposed states.
//!
//! Each bound is evaluated on a concrete instance and reported with signed
//! margins; nothing here assumes a bound is true. Every inequality is stored
//! as `lhs ≤ rhs` with margin `rhs − lhs`, so a negative margin is a
//! violation. The instance travels with the report so any report can be
//! recomputed from scratch ([`replay`]).
//!
//! | id      | inequality |
//! |---------|------------|
//! | T1      | `α²N(ψ)+β²N(φ) ≤ N(Γ) ≤ α²N(ψ)+β²N(φ)+αβ` |
//! | T2      | `½[9(α+β)²min(μ)²−1] ≤ N(Γ) ≤ ½[9(α+β)²max(μ)²−1]`, `μ ∈ {√aᵢ,√bᵢ}` |
//! | T3      | `LN(Γ) ≥ ½(LN(ψ)+LN(φ)) + 2 + log(αβ)` |
//! | T4      | `2log(3(α+β)min(ξ)) ≤ LN(Γ) ≤ 2log(3(α+β)max(ξ))`, `ξ ∈ {√aᵢ,√bᵢ}` |
//! | T5      | `S_δ(Γ) ≥ ln(3(αβ)^{2δ})/(1−δ) + S_δ(ψ) + S_δ(φ)` |
//! | T6      | `(2δ/(1−δ))ln(min η) ≤ S_δ(Γ) ≤ (2δ/(1−δ))ln(max η)`, `ηᵢ = α√aᵢ+β√bᵢ` |
//! | T7      | `E(Γ) ≤ (α√(E(ψ)+1) + β√(E(φ)+1))²` |
//! | T8      | `E(Γ) + αlog₂α + βlog₂β ≤ αE(ψ) + βE(φ)` |
//! | T9      | `E(Γ) ≤ 2·log₂(3(α+β))·max(γ)`, `γ ∈ {√aᵢ,√bᵢ}` |
//! | Chain11 | six-term chain on `N(Γ)`, `N(Γ′)` for `α=α′, β=β′` |

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::math;
use crate::measures::{self, entropy_of_entanglement, log_negativity, negativity, renyi_entropy};
use crate::state::{
    sample_basis_probabilities, sample_disjoint_supports, schmidt_of_state, PureState,
    RandomSource, SchmidtVector,
};
use crate::superposition::{superpose, Superposition, SuperpositionSpec};
use crate::COMPARE_EPS;

/// Margins at or above `-HOLD_TOL` count as holding.
pub const HOLD_TOL: f64 = 1e-9;

/// Certificates kept per theorem in a survey.
pub const MAX_CERTIFICATES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    Chain11,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::T1,
        Theorem::T2,
        Theorem::T3,
        Theorem::T4,
        Theorem::T5,
        Theorem::T6,
        Theorem::T7,
        Theorem::T8,
        Theorem::T9,
        Theorem::Chain11,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
            Theorem::T4 => "T4",
            Theorem::T5 => "T5",
            Theorem::T6 => "T6",
            Theorem::T7 => "T7",
            Theorem::T8 => "T8",
            Theorem::T9 => "T9",
            Theorem::Chain11 => "Chain11",
        }
    }

    /// Accepts `T1`…`T9` and `Chain11` (case-insensitive).
    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
    }

    /// Whether the theorem needs a second instance.
    pub fn needs_partner(self) -> bool {
        self == Theorem::Chain11
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evaluation knobs shared by all bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConfig {
    /// Rényi order for T5 and T6.
    pub delta: Option<f64>,
    /// Base of the bare `log` in T3 and T4 (log-negativity uses the same base).
    pub log_base: f64,
    /// Drop zero coefficients from the min/max scans of T2, T4, T6 and T9.
    pub exclude_zero_coefficients: bool,
}

impl Default for BoundConfig {
    fn default() -> Self {
        Self { delta: Some(2.0), log_base: 2.0, exclude_zero_coefficients: false }
    }
}

/// A superposition together with the quantities every bound needs.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInstance {
    spec: SuperpositionSpec,
    config: BoundConfig,
    gamma: Superposition,
    psi_schmidt: SchmidtVector,
    phi_schmidt: SchmidtVector,
}

impl BoundInstance {
    pub fn new(spec: SuperpositionSpec, config: BoundConfig) -> Result<Self> {
        measures::check_base(config.log_base)?;
        if let Some(d) = config.delta {
            if !(d >= 0.0) || !d.is_finite() {
                return Err(Error::InvalidOrder(d));
            }
        }
        let gamma = superpose(&spec)?;
        let psi_schmidt = schmidt_of_state(spec.psi())?;
        let phi_schmidt = schmidt_of_state(spec.phi())?;
        Ok(Self { spec, config, gamma, psi_schmidt, phi_schmidt })
    }

    pub fn spec(&self) -> &SuperpositionSpec {
        &self.spec
    }

    pub fn config(&self) -> &BoundConfig {
        &self.config
    }

    pub fn gamma(&self) -> &Superposition {
        &self.gamma
    }

    fn alpha(&self) -> f64 {
        self.spec.alpha()
    }

    fn beta(&self) -> f64 {
        self.spec.beta()
    }

    fn vector_amplitudes(&self) -> Result<(&[f64], &[f64])> {
        match (self.spec.psi().amplitudes(), self.spec.phi().amplitudes()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::Precondition("bound needs shared-basis vector components")),
        }
    }

    fn three_by_three(&self) -> Result<(&[f64], &[f64])> {
        let (a, b) = self.vector_amplitudes()?;
        if a.len() != 3 {
            return Err(Error::WrongDimension { expected: 3, actual: a.len() });
        }
        Ok((a, b))
    }

    /// `{√aᵢ, √bᵢ}` as a flat list, honoring the zero-exclusion flag.
    fn amplitude_scan(&self) -> Result<Vec<f64>> {
        let (a, b) = self.three_by_three()?;
        Ok(self.scan(a.iter().chain(b).copied()))
    }

    fn scan(&self, values: impl Iterator<Item = f64>) -> Vec<f64> {
        let exclude = self.config.exclude_zero_coefficients;
        values.filter(|&x| !(exclude && x == 0.0)).collect()
    }

    fn delta(&self) -> Result<f64> {
        match self.config.delta {
            Some(d) if d == 1.0 => Err(Error::InvalidOrder(d)),
            Some(d) => Ok(d),
            None => Err(Error::Precondition("Renyi order required")),
        }
    }

    fn weight_product(&self) -> Result<f64> {
        let ab = self.alpha() * self.beta();
        if ab > 0.0 {
            Ok(ab)
        } else {
            Err(Error::Precondition("alpha * beta must be positive"))
        }
    }
}

/// Something worth knowing about how a report's numbers were produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Note {
    /// Components are not orthogonal; records `⟨ψ|φ⟩`.
    NonOrthogonal { overlap: f64 },
    /// The lower bound is `-∞` (a zero inside a logarithm), so it holds vacuously.
    VacuousLower,
    /// The upper bound is `+∞`.
    VacuousUpper,
    /// Lower bound exceeds upper bound.
    CrossedInterval,
    /// Value of the bound under the other reading of an ambiguous expression.
    AlternativeParse { reading: &'static str, value: f64 },
    /// A chain link whose min/max labels are transcribed as written.
    LiteralLink { link: usize },
    /// Zero coefficients were dropped from min/max scans.
    ZerosExcluded,
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Note::NonOrthogonal { overlap } => write!(f, "non-orthogonal components (overlap {overlap})"),
            Note::VacuousLower => f.write_str("lower bound is -inf (vacuous)"),
            Note::VacuousUpper => f.write_str("upper bound is +inf (vacuous)"),
            Note::CrossedInterval => f.write_str("lower bound exceeds upper bound"),
            Note::AlternativeParse { reading, value } => write!(f, "alternative reading {reading} gives {value}"),
            Note::LiteralLink { link } => write!(f, "chain link {link} uses mixed min/max labels as written"),
            Note::ZerosExcluded => f.write_str("zero coefficients excluded from min/max scans"),
        }
    }
}

/// Both sides of a bound on one instance.
///
/// The lower inequality is `lower_lhs ≤ lower_rhs` (bound ≤ measure) and the
/// upper one `upper_lhs ≤ upper_rhs` (measure ≤ bound).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub lower_lhs: Option<f64>,
    pub lower_rhs: Option<f64>,
    pub upper_lhs: Option<f64>,
    pub upper_rhs: Option<f64>,
    pub margin_lower: Option<f64>,
    pub margin_upper: Option<f64>,
    /// Chain11 only: the six chain terms in order.
    pub chain: Vec<f64>,
    /// Chain11 only: `chain[k+1] − chain[k]`.
    pub chain_margins: Vec<f64>,
    pub holds: bool,
    pub orthogonal: bool,
    pub notes: Vec<Note>,
    pub instance: BoundInstance,
    /// Second instance (`Γ′`) for Chain11.
    pub partner: Option<BoundInstance>,
}

impl BoundReport {
    fn new(theorem: Theorem, inst: &BoundInstance) -> Self {
        let mut notes = Vec::new();
        if !inst.gamma.is_orthogonal() {
            notes.push(Note::NonOrthogonal { overlap: inst.gamma.overlap });
        }
        Self {
            theorem,
            lower_lhs: None,
            lower_rhs: None,
            upper_lhs: None,
            upper_rhs: None,
            margin_lower: None,
            margin_upper: None,
            chain: Vec::new(),
            chain_margins: Vec::new(),
            holds: true,
            orthogonal: inst.gamma.is_orthogonal(),
            notes,
            instance: inst.clone(),
            partner: None,
        }
    }

    fn lower(mut self, bound: f64, value: f64) -> Self {
        self.lower_lhs = Some(bound);
        self.lower_rhs = Some(value);
        self.margin_lower = Some(margin(bound, value));
        if bound == f64::NEG_INFINITY {
            self.notes.push(Note::VacuousLower);
        }
        self
    }

    fn upper(mut self, value: f64, bound: f64) -> Self {
        self.upper_lhs = Some(value);
        self.upper_rhs = Some(bound);
        self.margin_upper = Some(margin(value, bound));
        if bound == f64::INFINITY {
            self.notes.push(Note::VacuousUpper);
        }
        self
    }

    fn finish(mut self) -> Self {
        if let (Some(lo), Some(hi)) = (self.lower_lhs, self.upper_rhs) {
            if lo > hi {
                self.notes.push(Note::CrossedInterval);
            }
        }
        if self.instance.config.exclude_zero_coefficients
            && matches!(self.theorem, Theorem::T2 | Theorem::T4 | Theorem::T6 | Theorem::T9)
        {
            self.notes.push(Note::ZerosExcluded);
        }
        let holds = self.margins().all(|m| m >= -HOLD_TOL);
        self.holds = holds;
        self
    }

    /// All present margins (both sides, or every chain link).
    pub fn margins(&self) -> impl Iterator<Item = f64> + '_ {
        self.margin_lower.into_iter().chain(self.margin_upper).chain(self.chain_margins.iter().copied())
    }

    /// Smallest present margin (NaN if any margin is NaN).
    pub fn worst_margin(&self) -> f64 {
        self.margins().fold(f64::INFINITY, |acc, m| if m.is_nan() || acc.is_nan() { f64::NAN } else { acc.min(m) })
    }
}

/// `rhs − lhs`, with `±∞` bounds giving `+∞` rather than NaN.
fn margin(lhs: f64, rhs: f64) -> f64 {
    if lhs == f64::NEG_INFINITY || rhs == f64::INFINITY {
        f64::INFINITY
    } else {
        rhs - lhs
    }
}

fn log_in(base: f64, x: f64) -> f64 {
    math::ln(x) / math::ln(base)
}

fn min_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// T1 and T2 (negativity).
pub fn eval_negativity_bounds(inst: &BoundInstance) -> Result<(BoundReport, BoundReport)> {
    let t1 = eval_t1(inst);
    let t2 = eval_t2(inst)?;
    Ok((t1, t2))
}

fn eval_t1(inst: &BoundInstance) -> BoundReport {
    let (a, b) = (inst.alpha(), inst.beta());
    let base = a * a * negativity(&inst.psi_schmidt) + b * b * negativity(&inst.phi_schmidt);
    let n = negativity(&inst.gamma.schmidt);
    BoundReport::new(Theorem::T1, inst).lower(base, n).upper(n, base + a * b).finish()
}

fn eval_t2(inst: &BoundInstance) -> Result<BoundReport> {
    let scan = inst.amplitude_scan()?;
    let s = inst.alpha() + inst.beta();
    let side = |m: f64| 0.5 * (9.0 * s * s * m * m - 1.0);
    let n = negativity(&inst.gamma.schmidt);
    Ok(BoundReport::new(Theorem::T2, inst)
        .lower(side(min_of(&scan)), n)
        .upper(n, side(max_of(&scan)))
        .finish())
}

/// T3 and T4 (log-negativity, in the configured base).
pub fn eval_logneg_bounds(inst: &BoundInstance) -> Result<(BoundReport, BoundReport)> {
    Ok((eval_t3(inst)?, eval_t4(inst)?))
}

fn eval_t3(inst: &BoundInstance) -> Result<BoundReport> {
    let ab = inst.weight_product()?;
    let base = inst.config.log_base;
    let ln_psi = log_negativity(&inst.psi_schmidt, base)?;
    let ln_phi = log_negativity(&inst.phi_schmidt, base)?;
    let bound = 0.5 * (ln_psi + ln_phi) + 2.0 + log_in(base, ab);
    let value = log_negativity(&inst.gamma.schmidt, base)?;
    Ok(BoundReport::new(Theorem::T3, inst).lower(bound, value).finish())
}

fn eval_t4(inst: &BoundInstance) -> Result<BoundReport> {
    let scan = inst.amplitude_scan()?;
    let base = inst.config.log_base;
    let s = inst.alpha() + inst.beta();
    let side = |m: f64| 2.0 * log_in(base, 3.0 * s * m);
    let value = log_negativity(&inst.gamma.schmidt, base)?;
    Ok(BoundReport::new(Theorem::T4, inst)
        .lower(side(min_of(&scan)), value)
        .upper(value, side(max_of(&scan)))
        .finish())
}

/// T5 and T6 (Rényi entropy of order δ, nats).
pub fn eval_renyi_bounds(inst: &BoundInstance) -> Result<(BoundReport, BoundReport)> {
    Ok((eval_t5(inst)?, eval_t6(inst)?))
}

fn eval_t5(inst: &BoundInstance) -> Result<BoundReport> {
    let delta = inst.delta()?;
    let ab = inst.weight_product()?;
    let bound = math::ln(3.0 * math::powf(ab, 2.0 * delta)) / (1.0 - delta)
        + renyi_entropy(&inst.psi_schmidt, delta)?
        + renyi_entropy(&inst.phi_schmidt, delta)?;
    let value = renyi_entropy(&inst.gamma.schmidt, delta)?;
    Ok(BoundReport::new(Theorem::T5, inst).lower(bound, value).finish())
}

fn eval_t6(inst: &BoundInstance) -> Result<BoundReport> {
    let delta = inst.delta()?;
    let (a, b) = inst.vector_amplitudes()?;
    let (alpha, beta) = (inst.alpha(), inst.beta());
    let eta = inst.scan(a.iter().zip(b).map(|(x, y)| alpha * x + beta * y));
    let coef = 2.0 * delta / (1.0 - delta);
    // A zero coefficient (δ = 0) makes both sides 0 even when ln(min η) = -∞.
    let side = |m: f64| if coef == 0.0 { 0.0 } else { coef * math::ln(m) };
    let value = renyi_entropy(&inst.gamma.schmidt, delta)?;
    Ok(BoundReport::new(Theorem::T6, inst)
        .lower(side(min_of(&eta)), value)
        .upper(value, side(max_of(&eta)))
        .finish())
}

/// T7, T8 and T9 (entropy of entanglement, bits).
pub fn eval_entropy_bounds(inst: &BoundInstance) -> Result<(BoundReport, BoundReport, BoundReport)> {
    Ok((eval_t7(inst), eval_t8(inst), eval_t9(inst)?))
}

/// `x log₂ x` with `0 log 0 = 0`.
fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * math::log2(x)
    }
}

fn eval_t7(inst: &BoundInstance) -> BoundReport {
    let (a, b) = (inst.alpha(), inst.beta());
    let root = a * math::sqrt(entropy_of_entanglement(&inst.psi_schmidt) + 1.0)
        + b * math::sqrt(entropy_of_entanglement(&inst.phi_schmidt) + 1.0);
    let e = entropy_of_entanglement(&inst.gamma.schmidt);
    BoundReport::new(Theorem::T7, inst).upper(e, root * root).finish()
}

fn eval_t8(inst: &BoundInstance) -> BoundReport {
    let (a, b) = (inst.alpha(), inst.beta());
    let bound = a * entropy_of_entanglement(&inst.psi_schmidt) + b * entropy_of_entanglement(&inst.phi_schmidt)
        - xlog2x(a)
        - xlog2x(b);
    let e = entropy_of_entanglement(&inst.gamma.schmidt);
    BoundReport::new(Theorem::T8, inst).upper(e, bound).finish()
}

fn eval_t9(inst: &BoundInstance) -> Result<BoundReport> {
    let max_gamma = max_of(&inst.amplitude_scan()?);
    let s = inst.alpha() + inst.beta();
    let bound = 2.0 * math::log2(3.0 * s) * max_gamma;
    let alternative = 2.0 * math::log2(3.0) * s * max_gamma;
    let e = entropy_of_entanglement(&inst.gamma.schmidt);
    let mut report = BoundReport::new(Theorem::T9, inst).upper(e, bound);
    report.notes.push(Note::AlternativeParse { reading: "2*log2(3)*(alpha+beta)*max", value: alternative });
    Ok(report.finish())
}

/// Six-term chain relating `N(Γ)` and `N(Γ′)` for equal weights. `first`
/// holds `(α, β, ψ, φ)` and `second` holds `(α′, β′, ψ′, φ′)`; coefficients are
/// squared amplitudes at basis index 0 and 2.
pub fn eval_chain_inequality(first: &BoundInstance, second: &BoundInstance) -> Result<BoundReport> {
    if math::abs(first.alpha() - second.alpha()) > COMPARE_EPS
        || math::abs(first.beta() - second.beta()) > COMPARE_EPS
    {
        return Err(Error::Precondition("chain needs alpha = alpha' and beta = beta'"));
    }
    let (a, b) = first.three_by_three()?;
    let (ap, bp) = second.three_by_three()?;
    let sq = |x: f64| x * x;
    let s = first.alpha() + first.beta();
    let term = |m: f64| 0.5 * (9.0 * s * s * m * m - 1.0);
    let n_first = negativity(&first.gamma.schmidt);
    let n_second = negativity(&second.gamma.schmidt);
    let chain = vec![
        term(sq(ap[2]).min(sq(bp[2]))),
        term(sq(a[2]).min(sq(b[2]))),
        n_first.min(n_second),
        n_first.max(n_second),
        term(sq(ap[0]).max(sq(bp[0]))),
        term(sq(a[0]).min(sq(b[0]))),
    ];
    let chain_margins: Vec<f64> = chain.windows(2).map(|w| w[1] - w[0]).collect();
    let mut report = BoundReport::new(Theorem::Chain11, first);
    report.orthogonal = first.gamma.is_orthogonal() && second.gamma.is_orthogonal();
    if !second.gamma.is_orthogonal() {
        report.notes.push(Note::NonOrthogonal { overlap: second.gamma.overlap });
    }
    report.notes.push(Note::LiteralLink { link: 4 });
    report.chain = chain;
    report.chain_margins = chain_margins;
    report.partner = Some(second.clone());
    Ok(report.finish())
}

/// Evaluates one theorem. `partner` is required for Chain11 and ignored otherwise.
pub fn evaluate(theorem: Theorem, inst: &BoundInstance, partner: Option<&BoundInstance>) -> Result<BoundReport> {
    match theorem {
        Theorem::T1 => Ok(eval_t1(inst)),
        Theorem::T2 => eval_t2(inst),
        Theorem::T3 => eval_t3(inst),
        Theorem::T4 => eval_t4(inst),
        Theorem::T5 => eval_t5(inst),
        Theorem::T6 => eval_t6(inst),
        Theorem::T7 => Ok(eval_t7(inst)),
        Theorem::T8 => Ok(eval_t8(inst)),
        Theorem::T9 => eval_t9(inst),
        Theorem::Chain11 => {
            let partner = partner.ok_or(Error::Precondition("chain needs a second instance"))?;
            eval_chain_inequality(inst, partner)
        }
    }
}

/// Recomputes a report from its own instance snapshot.
pub fn replay(report: &BoundReport) -> Result<BoundReport> {
    let inst = BoundInstance::new(report.instance.spec.clone(), report.instance.config)?;
    let partner = match &report.partner {
        Some(p) => Some(BoundInstance::new(p.spec.clone(), p.config)?),
        None => None,
    };
    evaluate(report.theorem, &inst, partner.as_ref())
}

/// Survey settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyOptions {
    pub theorems: Vec<Theorem>,
    /// Sample components on disjoint supports so `⟨ψ|φ⟩ = 0` exactly.
    pub orthogonal_only: bool,
    pub config: BoundConfig,
    /// Local dimension of sampled components.
    pub dim: usize,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        Self { theorems: Theorem::ALL.to_vec(), orthogonal_only: false, config: BoundConfig::default(), dim: 3 }
    }
}

/// Draws the instance pair for survey sample `index`: `(α, β, ψ, φ)` and
/// `(α, β, ψ′, φ′)` with shared weights.
pub fn sample_instances(
    source: &RandomSource,
    index: u64,
    options: &SurveyOptions,
) -> Result<(BoundInstance, BoundInstance)> {
    let mut rng = source.fork(index).rng();
    let alpha = loop {
        let a: f64 = rng.gen();
        if a > 0.0 {
            break a;
        }
    };
    let draw_spec = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<SuperpositionSpec> {
        let (p, q) = if options.orthogonal_only {
            sample_disjoint_supports(options.dim, rng)?
        } else {
            (sample_basis_probabilities(options.dim, rng)?, sample_basis_probabilities(options.dim, rng)?)
        };
        SuperpositionSpec::with_alpha(alpha, PureState::from_probabilities(&p)?, PureState::from_probabilities(&q)?)
    };
    let first = draw_spec(&mut rng)?;
    let second = draw_spec(&mut rng)?;
    Ok((BoundInstance::new(first, options.config)?, BoundInstance::new(second, options.config)?))
}

/// Reports for every requested theorem on survey sample `index`. A theorem
/// whose precondition fails on this sample yields `None`.
pub fn survey_sample(
    source: &RandomSource,
    index: u64,
    options: &SurveyOptions,
) -> Result<Vec<(Theorem, Option<BoundReport>)>> {
    let (first, second) = sample_instances(source, index, options)?;
    Ok(options
        .theorems
        .iter()
        .map(|&t| (t, evaluate(t, &first, Some(&second)).ok()))
        .collect())
}

/// Hold statistics over a set of reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tally {
    pub n: usize,
    pub held: usize,
    pub worst_margin: f64,
}

impl Default for Tally {
    fn default() -> Self {
        Self { n: 0, held: 0, worst_margin: f64::INFINITY }
    }
}

impl Tally {
    fn add(&mut self, report: &BoundReport) {
        self.n += 1;
        if report.holds {
            self.held += 1;
        }
        let w = report.worst_margin();
        if w.is_nan() || w < self.worst_margin {
            self.worst_margin = w;
        }
    }

    /// `held / n`, or NaN when nothing was evaluated.
    pub fn hold_rate(&self) -> f64 {
        if self.n == 0 {
            f64::NAN
        } else {
            self.held as f64 / self.n as f64
        }
    }
}

/// A violating report tagged with the sample it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub id: String,
    pub report: BoundReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremSummary {
    pub theorem: Theorem,
    pub all: Tally,
    pub orthogonal: Tally,
    pub overlapping: Tally,
    /// Samples where a precondition failed.
    pub skipped: usize,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveySummary {
    pub samples: u64,
    pub theorems: Vec<TheoremSummary>,
}

impl SurveySummary {
    /// Folds per-sample results given in sample-index order.
    pub fn from_samples<I>(options: &SurveyOptions, samples: I) -> Self
    where
        I: IntoIterator<Item = (u64, Vec<(Theorem, Option<BoundReport>)>)>,
    {
        let mut theorems: Vec<TheoremSummary> = options
            .theorems
            .iter()
            .map(|&theorem| TheoremSummary {
                theorem,
                all: Tally::default(),
                orthogonal: Tally::default(),
                overlapping: Tally::default(),
                skipped: 0,
                certificates: Vec::new(),
            })
            .collect();
        let mut count = 0;
        for (index, results) in samples {
            count += 1;
            for (summary, (_, report)) in theorems.iter_mut().zip(results) {
                let Some(report) = report else {
                    summary.skipped += 1;
                    continue;
                };
                summary.all.add(&report);
                if report.orthogonal {
                    summary.orthogonal.add(&report);
                } else {
                    summary.overlapping.add(&report);
                }
                if !report.holds && summary.certificates.len() < MAX_CERTIFICATES {
                    let id = alloc::format!("{}#{}", report.theorem, index);
                    summary.certificates.push(Certificate { id, report });
                }
            }
        }
        Self { samples: count, theorems }
    }
}

/// Evaluates `n` sampled instances; sample `k` draws from `source.fork(k)`.
pub fn survey_bounds(source: &RandomSource, n: u64, options: &SurveyOptions) -> Result<SurveySummary> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    let mut samples = Vec::with_capacity(n as usize);
    for k in 0..n {
        samples.push((k, survey_sample(source, k, options)?));
    }
    Ok(SurveySummary::from_samples(options, samples))
}
