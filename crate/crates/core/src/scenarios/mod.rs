//! Comparability scenarios for pairs of superposed 3×3 states.
//!
//! Two superpositions are compared: `Γ = α|ψ⟩ + β|φ⟩` and
//! `Γ′ = α′|ψ′⟩ + β′|φ′⟩` (cases I, II, V) or `Γ″ = α′|ψ′⟩ + β′|φ⟩`
//! (cases III, IV). Each [`ScenarioRow`] encodes one table row: a weight
//! relation, coefficient conditions, and the predicted pair verdict and/or
//! concurrence order. Rows are tested by rejection sampling: draw component
//! Schmidt vectors and weights, keep the draws that satisfy the row, and
//! compare the observed outcome with the prediction.
//!
//! Sample `k` of row `r` always draws from `source.fork_named(r.id).fork(k)`,
//! so results are independent of which rows are run together and of how
//! samples are split between workers.

mod rows;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

pub use self::rows::load_scenario_rows;
use crate::error::{Error, Result};
use crate::majorization::{classify_pair, Verdict};
use crate::math;
use crate::measures::concurrence_squared;
use crate::state::{sample_disjoint_supports, sample_schmidt_simplex, PureState, RandomSource, SchmidtVector};
use crate::superposition::{superpose, Superposition, SuperpositionSpec};
use crate::COMPARE_EPS;

/// The shipped transcription of all table rows and case presets.
pub const BUILTIN_ROWS: &str = include_str!("tables.txt");

/// Disagreement certificates kept per row.
pub const MAX_CERTIFICATES: usize = 10;

/// Parses [`BUILTIN_ROWS`].
pub fn builtin_rows() -> Vec<ScenarioRow> {
    load_scenario_rows(BUILTIN_ROWS).expect("shipped row document parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    I,
    II,
    III,
    IV,
    V,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::I, Case::II, Case::III, Case::IV, Case::V];

    pub fn as_str(self) -> &'static str {
        match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
            Case::IV => "IV",
            Case::V => "V",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
    }

    /// Cases III and IV reuse `φ` in the second superposition.
    pub fn shares_phi(self) -> bool {
        matches!(self, Case::III | Case::IV)
    }

    /// Required comparability of `(ψ, ψ′)`.
    fn psi_pair_comparable(self) -> bool {
        matches!(self, Case::II | Case::IV | Case::V)
    }

    /// Required comparability of `(φ, φ′)`; `None` when `φ′ = φ`.
    fn phi_pair_comparable(self) -> Option<bool> {
        match self {
            Case::I | Case::II => Some(false),
            Case::V => Some(true),
            Case::III | Case::IV => None,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Relation between `(α, β)` and `(α′, β′)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightRelation {
    Equal,
    /// `α > α′` and `β < β′`.
    AlphaGreater,
    /// `α < α′` and `β > β′`.
    AlphaLess,
}

impl WeightRelation {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightRelation::Equal => "alpha=alpha'",
            WeightRelation::AlphaGreater => "alpha>alpha'",
            WeightRelation::AlphaLess => "alpha<alpha'",
        }
    }

    fn holds(self, inst: &ScenarioInstance) -> bool {
        let (da, db) = (inst.alpha - inst.alpha_p, inst.beta - inst.beta_p);
        match self {
            WeightRelation::Equal => math::abs(da) <= COMPARE_EPS && math::abs(db) <= COMPARE_EPS,
            WeightRelation::AlphaGreater => da > COMPARE_EPS && -db > COMPARE_EPS,
            WeightRelation::AlphaLess => -da > COMPARE_EPS && db > COMPARE_EPS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Alpha,
    Beta,
    AlphaPrime,
    BetaPrime,
}

/// Which component state a coefficient belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// `aᵢ`
    Psi,
    /// `bᵢ`
    Phi,
    /// `αᵢ`
    PsiPrime,
    /// `βᵢ`
    PhiPrime,
}

/// A squared Schmidt coefficient at a fixed basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coef {
    pub component: Component,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    WeightSquared(Weight),
    Coef(Coef),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Product of squared weights and coefficients, e.g. `β²b₀` or `a₂b₂`.
    Product(Vec<Factor>),
    /// `(u√x + v√y)²`.
    AmplitudeSquare { u: Weight, x: Coef, v: Weight, y: Coef },
    Constant(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Less,
    Greater,
    /// Strictly less or strictly greater.
    NotEqual,
}

/// One inequality from a row's conditions column.
#[derive(Debug, Clone, PartialEq)]
pub struct RowCondition {
    pub lhs: Expr,
    pub op: Relation,
    pub rhs: Expr,
}

impl RowCondition {
    /// Strict comparison with a `1e-12` gap.
    pub fn holds(&self, inst: &ScenarioInstance) -> bool {
        let (l, r) = (inst.eval(&self.lhs), inst.eval(&self.rhs));
        match self.op {
            Relation::Less => r - l > COMPARE_EPS,
            Relation::Greater => l - r > COMPARE_EPS,
            Relation::NotEqual => math::abs(l - r) > COMPARE_EPS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairPrediction {
    Comparable,
    Incomparable,
}

impl PairPrediction {
    pub fn as_str(self) -> &'static str {
        match self {
            PairPrediction::Comparable => "COMPARABLE",
            PairPrediction::Incomparable => "INCOMPARABLE",
        }
    }

    pub fn matches(self, verdict: Verdict) -> bool {
        match self {
            PairPrediction::Comparable => verdict.is_comparable(),
            PairPrediction::Incomparable => !verdict.is_comparable(),
        }
    }
}

/// Ordering of `C²(Γ)` against `C²(Γ′)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C2Order {
    Greater,
    Less,
    /// Within `1e-12`; only ever observed, never predicted.
    Tie,
}

impl C2Order {
    pub fn as_str(self) -> &'static str {
        match self {
            C2Order::Greater => "C2(G)>C2(G')",
            C2Order::Less => "C2(G)<C2(G')",
            C2Order::Tie => "C2(G)=C2(G')",
        }
    }

    fn observe(first: f64, second: f64) -> Self {
        if first - second > COMPARE_EPS {
            C2Order::Greater
        } else if second - first > COMPARE_EPS {
            C2Order::Less
        } else {
            C2Order::Tie
        }
    }
}

/// One table row.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRow {
    pub case: Case,
    /// Table label, the row id up to the first `-` (e.g. `1A`).
    pub table: String,
    pub id: String,
    pub weights: WeightRelation,
    /// Disjunction of conjunctions; empty means no extra conditions.
    pub conditions: Vec<Vec<RowCondition>>,
    /// The row's coefficient restrictions exist but are not stated.
    pub conditions_unspecified: bool,
    pub predicted_pair: Option<PairPrediction>,
    pub predicted_c2: Option<C2Order>,
    pub note: Option<String>,
}

/// Sampling of component states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SamplingMode {
    /// Strictly ordered full-support Schmidt vectors in a shared basis.
    #[default]
    SharedSupport,
    /// `ψ` and `φ` (and `ψ′`, `φ′`) on complementary supports, so components are orthogonal.
    DisjointSupport,
}

/// Weights and squared coefficients (basis order) of the four components.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioInstance {
    pub alpha: f64,
    pub beta: f64,
    pub alpha_p: f64,
    pub beta_p: f64,
    /// `aᵢ` of `ψ`.
    pub a: Vec<f64>,
    /// `bᵢ` of `φ`.
    pub b: Vec<f64>,
    /// `αᵢ` of `ψ′`.
    pub a_p: Vec<f64>,
    /// `βᵢ` of `φ′` (equal to `b` in cases III and IV).
    pub b_p: Vec<f64>,
}

impl ScenarioInstance {
    fn weight(&self, w: Weight) -> f64 {
        match w {
            Weight::Alpha => self.alpha,
            Weight::Beta => self.beta,
            Weight::AlphaPrime => self.alpha_p,
            Weight::BetaPrime => self.beta_p,
        }
    }

    fn coef(&self, c: Coef) -> f64 {
        let v = match c.component {
            Component::Psi => &self.a,
            Component::Phi => &self.b,
            Component::PsiPrime => &self.a_p,
            Component::PhiPrime => &self.b_p,
        };
        v.get(c.index).copied().unwrap_or(f64::NAN)
    }

    pub fn eval(&self, e: &Expr) -> f64 {
        match e {
            Expr::Product(factors) => factors
                .iter()
                .map(|f| match *f {
                    Factor::WeightSquared(w) => self.weight(w) * self.weight(w),
                    Factor::Coef(c) => self.coef(c),
                })
                .product(),
            Expr::AmplitudeSquare { u, x, v, y } => {
                let s = self.weight(*u) * math::sqrt(self.coef(*x)) + self.weight(*v) * math::sqrt(self.coef(*y));
                s * s
            }
            Expr::Constant(c) => *c,
        }
    }

    fn specs(&self, case: Case) -> Result<(SuperpositionSpec, SuperpositionSpec)> {
        let phi = PureState::from_probabilities(&self.b)?;
        let second_phi = if case.shares_phi() { phi.clone() } else { PureState::from_probabilities(&self.b_p)? };
        let first = SuperpositionSpec::new(self.alpha, self.beta, PureState::from_probabilities(&self.a)?, phi)?;
        let second =
            SuperpositionSpec::new(self.alpha_p, self.beta_p, PureState::from_probabilities(&self.a_p)?, second_phi)?;
        Ok((first, second))
    }
}

fn verdict_of(x: &[f64], y: &[f64]) -> Option<Verdict> {
    Some(classify_pair(&SchmidtVector::from_weights(x).ok()?, &SchmidtVector::from_weights(y).ok()?))
}

/// Case preconditions, weight relation and every condition of `row`.
/// Component comparability is decided with the full majorization test.
pub fn check_row_conditions(row: &ScenarioRow, inst: &ScenarioInstance) -> bool {
    if !row.weights.holds(inst) {
        return false;
    }
    match verdict_of(&inst.a, &inst.a_p) {
        Some(v) if v.is_comparable() == row.case.psi_pair_comparable() => {}
        _ => return false,
    }
    match row.case.phi_pair_comparable() {
        Some(want) => match verdict_of(&inst.b, &inst.b_p) {
            Some(v) if v.is_comparable() == want => {}
            _ => return false,
        },
        None => {
            if inst.b_p != inst.b {
                return false;
            }
        }
    }
    row.conditions.is_empty() || row.conditions.iter().any(|group| group.iter().all(|c| c.holds(inst)))
}

/// What superposing an instance actually produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub verdict: Verdict,
    pub c2_first: f64,
    pub c2_second: f64,
    pub c2_order: C2Order,
    /// `⟨ψ|φ⟩`.
    pub overlap_first: f64,
    /// `⟨ψ′|φ′⟩` (or `⟨ψ′|φ⟩`).
    pub overlap_second: f64,
    /// Sorting the superposed amplitudes reordered basis indices.
    pub permuted: bool,
    pub schmidt_first: SchmidtVector,
    pub schmidt_second: SchmidtVector,
}

impl Observation {
    pub fn pair_agrees(&self, row: &ScenarioRow) -> Option<bool> {
        row.predicted_pair.map(|p| p.matches(self.verdict))
    }

    pub fn c2_agrees(&self, row: &ScenarioRow) -> Option<bool> {
        row.predicted_c2.map(|p| p == self.c2_order)
    }

    /// A prediction is contradicted (a tie is not a contradiction).
    pub fn disagrees(&self, row: &ScenarioRow) -> bool {
        self.pair_agrees(row) == Some(false) || (self.c2_agrees(row) == Some(false) && self.c2_order != C2Order::Tie)
    }
}

/// Superposes both sides of `inst` and records verdict and concurrences.
pub fn observe(case: Case, inst: &ScenarioInstance) -> Result<Observation> {
    let (first, second) = inst.specs(case)?;
    let g1: Superposition = superpose(&first)?;
    let g2: Superposition = superpose(&second)?;
    let c2_first = concurrence_squared(&g1.schmidt);
    let c2_second = concurrence_squared(&g2.schmidt);
    Ok(Observation {
        verdict: classify_pair(&g1.schmidt, &g2.schmidt),
        c2_first,
        c2_second,
        c2_order: C2Order::observe(c2_first, c2_second),
        overlap_first: g1.overlap,
        overlap_second: g2.overlap,
        permuted: g1.permuted || g2.permuted,
        schmidt_first: g1.schmidt,
        schmidt_second: g2.schmidt,
    })
}

fn draw_weight<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    loop {
        let a: f64 = rng.gen();
        if a > 0.0 {
            return (a, math::sqrt(1.0 - a * a));
        }
    }
}

/// Draws the candidate instance for sample `index` of `row`.
///
/// `α` is uniform on (0, 1) with `β = √(1 − α²)`; for unequal weight
/// relations `α′` is drawn independently (and later rejected if it has the
/// wrong order), for `alpha=alpha'` it is copied.
pub fn sample_instance(row: &ScenarioRow, source: &RandomSource, index: u64, mode: SamplingMode) -> Result<ScenarioInstance> {
    let mut rng = source.fork_named(&row.id).fork(index).rng();
    let (alpha, beta) = draw_weight(&mut rng);
    let (alpha_p, beta_p) = match row.weights {
        WeightRelation::Equal => (alpha, beta),
        _ => draw_weight(&mut rng),
    };
    let (a, b, a_p, b_p) = match mode {
        SamplingMode::SharedSupport => {
            let mut draw = || sample_schmidt_simplex(3, &mut rng, true).map(|v| v.probs().to_vec());
            let (a, b, a_p) = (draw()?, draw()?, draw()?);
            let b_p = if row.case.shares_phi() { b.clone() } else { draw()? };
            (a, b, a_p, b_p)
        }
        SamplingMode::DisjointSupport => {
            let (a, b) = sample_disjoint_supports(3, &mut rng)?;
            let (a_p, b_p) = if row.case.shares_phi() {
                (complement_draw(&b, &mut rng), b.clone())
            } else {
                sample_disjoint_supports(3, &mut rng)?
            };
            (a, b, a_p, b_p)
        }
    };
    Ok(ScenarioInstance { alpha, beta, alpha_p, beta_p, a, b, a_p, b_p })
}

/// Uniform probability vector supported where `other` is zero.
fn complement_draw<R: Rng + ?Sized>(other: &[f64], rng: &mut R) -> Vec<f64> {
    let slots: Vec<usize> = (0..other.len()).filter(|&i| other[i] == 0.0).collect();
    let mut out = vec![0.0; other.len()];
    if let Ok(v) = sample_schmidt_simplex(slots.len(), rng, false) {
        // Sorted draw placed on the free slots in basis order.
        for (slot, p) in slots.iter().zip(v.probs()) {
            out[*slot] = *p;
        }
    }
    out
}

/// A satisfying sample: the instance and what it produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub sample_index: u64,
    pub instance: ScenarioInstance,
    pub observation: Observation,
}

/// Result of [`search_witness`].
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessResult {
    pub witness: Option<Witness>,
    pub samples_tried: u64,
    pub predicted_pair: Option<PairPrediction>,
    pub predicted_c2: Option<C2Order>,
}

impl WitnessResult {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// Evaluates sample `index` of `row`: `Some` when it satisfies the row.
pub fn evaluate_sample(row: &ScenarioRow, source: &RandomSource, index: u64, mode: SamplingMode) -> Result<Option<Witness>> {
    let instance = sample_instance(row, source, index, mode)?;
    if !check_row_conditions(row, &instance) {
        return Ok(None);
    }
    let observation = observe(row.case, &instance)?;
    Ok(Some(Witness { sample_index: index, instance, observation }))
}

/// Rejection-samples up to `budget` instances, stopping at the first one
/// satisfying the row.
pub fn search_witness(row: &ScenarioRow, budget: u64, source: &RandomSource, mode: SamplingMode) -> Result<WitnessResult> {
    if budget == 0 {
        return Err(Error::ZeroCount);
    }
    let mut witness = None;
    let mut samples_tried = 0;
    for k in 0..budget {
        samples_tried = k + 1;
        if let Some(w) = evaluate_sample(row, source, k, mode)? {
            witness = Some(w);
            break;
        }
    }
    Ok(WitnessResult { witness, samples_tried, predicted_pair: row.predicted_pair, predicted_c2: row.predicted_c2 })
}

/// A witness contradicting its row's prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioCertificate {
    /// `<row id>#<sample index>`.
    pub id: String,
    pub case: Case,
    pub row_id: String,
    pub witness: Witness,
}

impl ScenarioCertificate {
    /// Re-derives the observation from the stored instance alone.
    pub fn replay(&self, rows: &[ScenarioRow]) -> Result<(bool, Observation)> {
        let row = rows
            .iter()
            .find(|r| r.id == self.row_id)
            .ok_or(Error::Precondition("certificate row id not in row set"))?;
        Ok((check_row_conditions(row, &self.witness.instance), observe(self.case, &self.witness.instance)?))
    }
}

/// Aggregate over all samples of one row.
#[derive(Debug, Clone, PartialEq)]
pub struct RowReport {
    pub case: Case,
    pub table: String,
    pub row_id: String,
    pub weights: WeightRelation,
    pub predicted_pair: Option<PairPrediction>,
    pub predicted_c2: Option<C2Order>,
    pub samples: u64,
    pub satisfiable: u64,
    pub pair_agree: u64,
    pub pair_disagree: u64,
    pub c2_agree: u64,
    pub c2_disagree: u64,
    pub c2_ties: u64,
    pub observed_comparable: u64,
    pub observed_incomparable: u64,
    /// Mean `|⟨ψ|φ⟩|` over satisfying samples (NaN if none).
    pub mean_overlap: f64,
    /// Mean `|⟨ψ′|φ′⟩|` over satisfying samples (NaN if none).
    pub mean_overlap_second: f64,
    /// Satisfying samples where sorting permuted superposed amplitudes.
    pub permuted: u64,
    pub certificates: Vec<ScenarioCertificate>,
}

impl RowReport {
    /// Folds per-sample outcomes, which must be given in sample-index order.
    pub fn from_outcomes<I>(row: &ScenarioRow, outcomes: I) -> Self
    where
        I: IntoIterator<Item = Option<Witness>>,
    {
        let mut r = RowReport {
            case: row.case,
            table: row.table.clone(),
            row_id: row.id.clone(),
            weights: row.weights,
            predicted_pair: row.predicted_pair,
            predicted_c2: row.predicted_c2,
            samples: 0,
            satisfiable: 0,
            pair_agree: 0,
            pair_disagree: 0,
            c2_agree: 0,
            c2_disagree: 0,
            c2_ties: 0,
            observed_comparable: 0,
            observed_incomparable: 0,
            mean_overlap: 0.0,
            mean_overlap_second: 0.0,
            permuted: 0,
            certificates: Vec::new(),
        };
        let (mut overlap_sum, mut overlap_sum_second) = (0.0, 0.0);
        for outcome in outcomes {
            r.samples += 1;
            let Some(w) = outcome else { continue };
            let obs = &w.observation;
            r.satisfiable += 1;
            overlap_sum += math::abs(obs.overlap_first);
            overlap_sum_second += math::abs(obs.overlap_second);
            if obs.permuted {
                r.permuted += 1;
            }
            if obs.verdict.is_comparable() {
                r.observed_comparable += 1;
            } else {
                r.observed_incomparable += 1;
            }
            match obs.pair_agrees(row) {
                Some(true) => r.pair_agree += 1,
                Some(false) => r.pair_disagree += 1,
                None => {}
            }
            if row.predicted_c2.is_some() {
                match obs.c2_order {
                    C2Order::Tie => r.c2_ties += 1,
                    o if Some(o) == row.predicted_c2 => r.c2_agree += 1,
                    _ => r.c2_disagree += 1,
                }
            }
            if obs.disagrees(row) && r.certificates.len() < MAX_CERTIFICATES {
                r.certificates.push(ScenarioCertificate {
                    id: alloc::format!("{}#{}", row.id, w.sample_index),
                    case: row.case,
                    row_id: row.id.clone(),
                    witness: w,
                });
            }
        }
        let n = r.satisfiable as f64;
        r.mean_overlap = overlap_sum / n;
        r.mean_overlap_second = overlap_sum_second / n;
        r
    }
}

/// Per-row reports, in row order.
#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
}

/// Runs `samples_per_row` samples for every row.
pub fn validate_tables(
    rows: &[ScenarioRow],
    samples_per_row: u64,
    source: &RandomSource,
    mode: SamplingMode,
) -> Result<TableReport> {
    if samples_per_row == 0 {
        return Err(Error::ZeroCount);
    }
    let mut reports = Vec::with_capacity(rows.len());
    for row in rows {
        let outcomes = (0..samples_per_row)
            .map(|k| evaluate_sample(row, source, k, mode))
            .collect::<Result<Vec<_>>>()?;
        reports.push(RowReport::from_outcomes(row, outcomes));
    }
    Ok(TableReport { rows: reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: &str) -> ScenarioRow {
        builtin_rows().into_iter().find(|r| r.id == id).unwrap()
    }

    fn instance(alpha: f64, alpha_p: f64, a: [f64; 3], b: [f64; 3], a_p: [f64; 3], b_p: [f64; 3]) -> ScenarioInstance {
        ScenarioInstance {
            alpha,
            beta: (1.0 - alpha * alpha).sqrt(),
            alpha_p,
            beta_p: (1.0 - alpha_p * alpha_p).sqrt(),
            a: a.to_vec(),
            b: b.to_vec(),
            a_p: a_p.to_vec(),
            b_p: b_p.to_vec(),
        }
    }

    // Two incomparable pairs: (0.6,0.25,0.15) vs (0.55,0.38,0.07).
    const G: [f64; 3] = [0.6, 0.25, 0.15];
    const D: [f64; 3] = [0.55, 0.38, 0.07];

    #[test]
    fn case_one_equal_weights_accepts_incomparable_components() {
        let r = row("1-1");
        assert!(check_row_conditions(&r, &instance(0.6, 0.6, G, D, D, G)));
        // Unequal weights fail the relation.
        assert!(!check_row_conditions(&r, &instance(0.6, 0.5, G, D, D, G)));
        // A comparable (ψ, ψ′) pair fails the case precondition.
        assert!(!check_row_conditions(&r, &instance(0.6, 0.6, [0.5, 0.3, 0.2], D, [0.6, 0.3, 0.1], G)));
    }

    #[test]
    fn single_violated_condition_rejects() {
        // Row 1-2 needs β²b₀ > β′²β₀; with α > α′ we have β < β′ and b₀ < β₀.
        let r = row("1-2");
        let inst = instance(0.8, 0.6, G, D, D, G);
        assert!(inst.eval(&r.conditions[0][0].lhs) < inst.eval(&r.conditions[0][0].rhs));
        assert!(!check_row_conditions(&r, &inst));
    }

    #[test]
    fn row_3_2_fixture() {
        // Found by rejection sampling over strict 3-simplices and frozen here:
        // α < α′, (ψ, ψ′) incomparable, α²a₀ > α′²α₀ and α²a₂ > α′²α₂.
        let r = row("3-2");
        let a = [0.7, 0.2, 0.1];
        let a_p = [0.5, 0.45, 0.05];
        let b = [0.5, 0.3, 0.2];
        let inst = instance(0.9, 0.92, a, b, a_p, b);
        assert_eq!(verdict_of(&a, &a_p), Some(Verdict::Incomparable));
        assert!(check_row_conditions(&r, &inst));
    }

    #[test]
    fn shared_phi_is_enforced() {
        let r = row("3-1");
        assert!(!check_row_conditions(&r, &instance(0.6, 0.6, G, D, D, G)));
        assert!(check_row_conditions(&r, &instance(0.6, 0.6, G, D, D, D)));
    }

    #[test]
    fn unsatisfiable_with_budget_one() {
        let mut r = row("1-1");
        r.conditions = vec![vec![RowCondition { lhs: Expr::Constant(0.0), op: Relation::Greater, rhs: Expr::Constant(1.0) }]];
        let w = search_witness(&r, 1, &RandomSource::new(1, 0), SamplingMode::SharedSupport).unwrap();
        assert!(!w.found());
        assert_eq!(w.samples_tried, 1);
        assert!(search_witness(&r, 0, &RandomSource::new(1, 0), SamplingMode::SharedSupport).is_err());
    }

    #[test]
    fn witness_search_is_deterministic_and_rechecks() {
        let r = row("1-1");
        let src = RandomSource::new(5, 0);
        let a = search_witness(&r, 10_000, &src, SamplingMode::SharedSupport).unwrap();
        let b = search_witness(&r, 10_000, &src, SamplingMode::SharedSupport).unwrap();
        assert_eq!(a, b);
        let w = a.witness.unwrap();
        assert!(check_row_conditions(&r, &w.instance));
        assert_eq!(observe(r.case, &w.instance).unwrap(), w.observation);
    }

    #[test]
    fn table_one_report_shape() {
        let rows: Vec<_> = builtin_rows().into_iter().filter(|r| r.table == "1").collect();
        let rep = validate_tables(&rows, 1000, &RandomSource::new(1, 0), SamplingMode::SharedSupport).unwrap();
        assert_eq!(rep.rows.len(), 5);
        for r in &rep.rows {
            assert_eq!(r.samples, 1000);
            assert_eq!(r.observed_comparable + r.observed_incomparable, r.satisfiable);
            assert_eq!(r.pair_agree + r.pair_disagree, r.satisfiable);
        }
    }

    #[test]
    fn certificates_replay() {
        let rows = builtin_rows();
        let sel: Vec<_> = rows.iter().filter(|r| r.case == Case::I).cloned().collect();
        let rep = validate_tables(&sel, 2000, &RandomSource::new(3, 0), SamplingMode::SharedSupport).unwrap();
        for cert in rep.rows.iter().flat_map(|r| &r.certificates) {
            let (ok, obs) = cert.replay(&rows).unwrap();
            assert!(ok);
            assert_eq!(obs, cert.witness.observation);
        }
    }

    #[test]
    fn disjoint_mode_is_orthogonal() {
        let r = row("5-1");
        let src = RandomSource::new(2, 0);
        for k in 0..200 {
            let inst = sample_instance(&r, &src, k, SamplingMode::DisjointSupport).unwrap();
            let obs = observe(r.case, &inst).unwrap();
            assert!(obs.overlap_first.abs() <= 1e-9 && obs.overlap_second.abs() <= 1e-9);
        }
        let r = row("4-1");
        for k in 0..200 {
            let inst = sample_instance(&r, &src, k, SamplingMode::DisjointSupport).unwrap();
            assert_eq!(inst.b, inst.b_p);
            assert!(observe(r.case, &inst).unwrap().overlap_second.abs() <= 1e-9);
        }
    }
}
