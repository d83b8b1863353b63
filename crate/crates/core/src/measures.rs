//! Entanglement measures of pure states, all functions of the Schmidt vector.
//!
//! Conventions: entropy of entanglement in bits, Rényi entropy in nats,
//! log-negativity in a caller-chosen base (default 2), `0·log 0 = 0`.
//! Negativity is `(‖ρ^{T_B}‖₁ − 1)/2`, which for a pure state with Schmidt
//! probabilities `μ` is `((Σ√μᵢ)² − 1)/2`.

use core::fmt;

use crate::error::{Error, Result};
use crate::math;
use crate::state::SchmidtVector;

/// Entropy of entanglement `−Σ μᵢ log₂ μᵢ`, in bits.
pub fn entropy_of_entanglement(v: &SchmidtVector) -> f64 {
    v.probs().iter().filter(|&&p| p > 0.0).fold(0.0, |acc, &p| acc + p * -math::log2(p))
}

/// Squared generalized concurrence `2(1 − Σ μᵢ²)`.
pub fn concurrence_squared(v: &SchmidtVector) -> f64 {
    let purity: f64 = v.probs().iter().map(|p| p * p).sum();
    (2.0 * (1.0 - purity)).max(0.0)
}

/// `((Σ √μᵢ)² − 1) / 2`.
pub fn negativity(v: &SchmidtVector) -> f64 {
    let s: f64 = v.probs().iter().map(|&p| math::sqrt(p)).sum();
    ((s * s - 1.0) / 2.0).max(0.0)
}

/// `log_base(2N + 1)`.
pub fn log_negativity(v: &SchmidtVector, base: f64) -> Result<f64> {
    check_base(base)?;
    Ok(math::ln(2.0 * negativity(v) + 1.0) / math::ln(base))
}

/// Rényi entropy of order `delta` in nats. Order 1 is the von Neumann entropy.
pub fn renyi_entropy(v: &SchmidtVector, delta: f64) -> Result<f64> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::InvalidOrder(delta));
    }
    if delta == 1.0 {
        return Ok(entropy_of_entanglement(v) * core::f64::consts::LN_2);
    }
    // Zero entries are excluded so that order 0 counts the support.
    let s: f64 = v.probs().iter().filter(|&&p| p > 0.0).map(|&p| math::powf(p, delta)).sum();
    Ok((math::ln(s) / (1.0 - delta)).max(0.0))
}

pub(crate) fn check_base(base: f64) -> Result<()> {
    if base.is_finite() && base > 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidBase(base))
    }
}

/// Which measure to evaluate, with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureKind {
    EntropyOfEntanglement,
    ConcurrenceSquared,
    Negativity,
    LogNegativity { base: f64 },
    RenyiEntropy { order: f64 },
}

impl MeasureKind {
    pub fn name(&self) -> &'static str {
        match self {
            MeasureKind::EntropyOfEntanglement => "entropy",
            MeasureKind::ConcurrenceSquared => "concurrence_squared",
            MeasureKind::Negativity => "negativity",
            MeasureKind::LogNegativity { .. } => "log_negativity",
            MeasureKind::RenyiEntropy { .. } => "renyi_entropy",
        }
    }

    pub fn units(&self) -> &'static str {
        match self {
            MeasureKind::EntropyOfEntanglement => "bits",
            MeasureKind::RenyiEntropy { .. } => "nats",
            _ => "dimensionless",
        }
    }

    pub fn parameter(&self) -> Option<f64> {
        match *self {
            MeasureKind::LogNegativity { base } => Some(base),
            MeasureKind::RenyiEntropy { order } => Some(order),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureResult {
    pub kind: MeasureKind,
    pub value: f64,
}

impl MeasureResult {
    pub fn evaluate(kind: MeasureKind, v: &SchmidtVector) -> Result<Self> {
        let value = match kind {
            MeasureKind::EntropyOfEntanglement => entropy_of_entanglement(v),
            MeasureKind::ConcurrenceSquared => concurrence_squared(v),
            MeasureKind::Negativity => negativity(v),
            MeasureKind::LogNegativity { base } => log_negativity(v, base)?,
            MeasureKind::RenyiEntropy { order } => renyi_entropy(v, order)?,
        };
        Ok(Self { kind, value })
    }
}

impl fmt::Display for MeasureResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} {}", self.kind.name(), self.value, self.kind.units())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(p: &[f64]) -> SchmidtVector {
        SchmidtVector::from_weights(p).unwrap()
    }

    const THIRD: [f64; 3] = [1.0 / 3.0; 3];

    #[test]
    fn entropy_values() {
        assert_eq!(entropy_of_entanglement(&sv(&[0.5, 0.5, 0.0])), 1.0);
        assert_eq!(entropy_of_entanglement(&sv(&[1.0, 0.0, 0.0])), 0.0);
        assert!((entropy_of_entanglement(&sv(&THIRD)) - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn concurrence_values() {
        assert_eq!(concurrence_squared(&sv(&[1.0, 0.0, 0.0])), 0.0);
        assert!((concurrence_squared(&sv(&THIRD)) - 4.0 / 3.0).abs() < 1e-12);
        assert!((concurrence_squared(&sv(&[0.5, 0.3, 0.2])) - 1.24).abs() < 1e-12);
    }

    #[test]
    fn concurrence_pairwise_form() {
        let v = sv(&[0.41, 0.33, 0.17, 0.09]);
        let p = v.probs();
        let mut pairwise = 0.0;
        for i in 0..p.len() {
            for j in (i + 1)..p.len() {
                pairwise += 4.0 * p[i] * p[j];
            }
        }
        assert!((concurrence_squared(&v) - pairwise).abs() < 1e-12);
    }

    #[test]
    fn negativity_values() {
        assert_eq!(negativity(&sv(&[1.0, 0.0, 0.0])), 0.0);
        assert!((negativity(&sv(&[0.5, 0.5, 0.0])) - 0.5).abs() < 1e-12);
        assert!((negativity(&sv(&THIRD)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_negativity_values() {
        assert_eq!(log_negativity(&sv(&[1.0, 0.0, 0.0]), 2.0).unwrap(), 0.0);
        assert!((log_negativity(&sv(&[0.5, 0.5, 0.0]), 2.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((log_negativity(&sv(&THIRD), 2.0).unwrap() - 3f64.log2()).abs() < 1e-12);
        assert_eq!(log_negativity(&sv(&THIRD), 1.0), Err(Error::InvalidBase(1.0)));
        assert!(log_negativity(&sv(&THIRD), f64::NAN).is_err());
    }

    #[test]
    fn renyi_values() {
        for d in [0.0, 0.5, 1.0, 2.0, 7.0] {
            assert_eq!(renyi_entropy(&sv(&[1.0, 0.0, 0.0]), d).unwrap(), 0.0);
        }
        assert!((renyi_entropy(&sv(&THIRD), 2.0).unwrap() - 3f64.ln()).abs() < 1e-12);
        assert!((renyi_entropy(&sv(&[0.5, 0.5, 0.0]), 0.5).unwrap() - 2f64.ln()).abs() < 1e-12);
        // Order 0 counts the support, ignoring zeros.
        assert!((renyi_entropy(&sv(&[0.5, 0.5, 0.0]), 0.0).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert_eq!(renyi_entropy(&sv(&THIRD), -0.5), Err(Error::InvalidOrder(-0.5)));
    }

    #[test]
    fn renyi_order_one_is_entropy_in_nats() {
        let v = sv(&[0.7, 0.2, 0.1]);
        let e = entropy_of_entanglement(&v) * std::f64::consts::LN_2;
        assert_eq!(renyi_entropy(&v, 1.0).unwrap(), e);
    }

    #[test]
    fn measure_result_dispatch() {
        let v = sv(&THIRD);
        let r = MeasureResult::evaluate(MeasureKind::RenyiEntropy { order: 2.0 }, &v).unwrap();
        assert_eq!(r.kind.units(), "nats");
        assert_eq!(r.kind.parameter(), Some(2.0));
        assert!((r.value - 3f64.ln()).abs() < 1e-12);
        assert_eq!(MeasureKind::EntropyOfEntanglement.units(), "bits");
        assert_eq!(MeasureKind::Negativity.parameter(), None);
    }
}
