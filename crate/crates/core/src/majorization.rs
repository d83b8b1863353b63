//! Nielsen's majorization criterion for deterministic LOCC conversion.
//!
//! `|χ⟩ → |η⟩` is possible with certainty iff `λ_χ ≺ λ_η`, i.e. every prefix
//! sum of `λ_χ` is at most the matching prefix sum of `λ_η`.

use core::fmt;

use crate::error::{Error, Result};
use crate::state::SchmidtVector;
use crate::COMPARE_EPS;

/// Four-way outcome of comparing two states under deterministic LOCC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Convertible both ways (same Schmidt vector up to tolerance).
    Equivalent,
    /// First converts to second only.
    ConvertibleAtoB,
    /// Second converts to first only.
    ConvertibleBtoA,
    /// Neither converts to the other.
    Incomparable,
}

impl Verdict {
    pub fn is_comparable(self) -> bool {
        self != Verdict::Incomparable
    }

    /// Verdict with the roles of the two states exchanged.
    pub fn swapped(self) -> Self {
        match self {
            Verdict::ConvertibleAtoB => Verdict::ConvertibleBtoA,
            Verdict::ConvertibleBtoA => Verdict::ConvertibleAtoB,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equivalent => "Equivalent",
            Verdict::ConvertibleAtoB => "ConvertibleAtoB",
            Verdict::ConvertibleBtoA => "ConvertibleBtoA",
            Verdict::Incomparable => "Incomparable",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Verdict::Equivalent,
            Verdict::ConvertibleAtoB,
            Verdict::ConvertibleBtoA,
            Verdict::Incomparable,
        ]
        .into_iter()
        .find(|v| v.as_str() == s)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// True iff `x ≺ y` (x is majorized by y). The shorter vector is zero-padded;
/// each prefix comparison allows `1e-12` absolute slack.
pub fn majorizes(y: &SchmidtVector, x: &SchmidtVector) -> bool {
    let len = x.len().max(y.len());
    let (xs, ys) = (x.padded(len), y.padded(len));
    let (mut sx, mut sy) = (0.0, 0.0);
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        if sx > sy + COMPARE_EPS {
            return false;
        }
    }
    true
}

/// Comparability of `|χ⟩` (first) and `|η⟩` (second).
pub fn classify_pair(chi: &SchmidtVector, eta: &SchmidtVector) -> Verdict {
    match (majorizes(eta, chi), majorizes(chi, eta)) {
        (true, true) => Verdict::Equivalent,
        (true, false) => Verdict::ConvertibleAtoB,
        (false, true) => Verdict::ConvertibleBtoA,
        (false, false) => Verdict::Incomparable,
    }
}

/// Sufficient condition for incomparability of two strictly ordered, strictly
/// positive 3-component Schmidt vectors:
/// `(γ₁ > δ₁ ∧ γ₃ > δ₃) ∨ (δ₁ > γ₁ ∧ δ₃ > γ₃)`.
///
/// Inputs that are not 3-dimensional or not strictly ordered are rejected.
pub fn incomparable_3x3_shortcut(gamma: &SchmidtVector, delta: &SchmidtVector) -> Result<bool> {
    for v in [gamma, delta] {
        if v.len() != 3 {
            return Err(Error::WrongDimension { expected: 3, actual: v.len() });
        }
        if !v.is_strictly_ordered(COMPARE_EPS) {
            return Err(Error::NotStrictlyOrdered);
        }
    }
    let (g, d) = (gamma.probs(), delta.probs());
    let gt = |a: f64, b: f64| a - b > COMPARE_EPS;
    Ok((gt(g[0], d[0]) && gt(g[2], d[2])) || (gt(d[0], g[0]) && gt(d[2], g[2])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(p: &[f64]) -> SchmidtVector {
        SchmidtVector::from_weights(p).unwrap()
    }

    #[test]
    fn partial_sums() {
        assert!(majorizes(&sv(&[0.6, 0.3, 0.1]), &sv(&[0.5, 0.3, 0.2])));
        assert!(!majorizes(&sv(&[0.5, 0.3, 0.2]), &sv(&[0.6, 0.3, 0.1])));
        let x = sv(&[0.45, 0.35, 0.2]);
        assert!(majorizes(&x, &x));
    }

    #[test]
    fn padding() {
        // (0.5, 0.5) ≺ (1) padded to (1, 0).
        assert!(majorizes(&sv(&[1.0]), &sv(&[0.5, 0.5])));
        assert!(!majorizes(&sv(&[0.5, 0.5]), &sv(&[1.0])));
    }

    #[test]
    fn verdicts() {
        assert_eq!(classify_pair(&sv(&[0.5, 0.3, 0.2]), &sv(&[0.6, 0.3, 0.1])), Verdict::ConvertibleAtoB);
        assert_eq!(classify_pair(&sv(&[0.6, 0.3, 0.1]), &sv(&[0.5, 0.3, 0.2])), Verdict::ConvertibleBtoA);
        assert_eq!(classify_pair(&sv(&[0.6, 0.25, 0.15]), &sv(&[0.55, 0.38, 0.07])), Verdict::Incomparable);
        assert_eq!(classify_pair(&sv(&[0.5, 0.5, 0.0]), &sv(&[0.5, 0.5, 0.0])), Verdict::Equivalent);
    }

    #[test]
    fn shortcut_cases() {
        let g = sv(&[0.6, 0.25, 0.15]);
        let d = sv(&[0.55, 0.38, 0.07]);
        assert!(incomparable_3x3_shortcut(&g, &d).unwrap());
        assert!(incomparable_3x3_shortcut(&d, &g).unwrap());
        assert!(!incomparable_3x3_shortcut(&sv(&[0.5, 0.3, 0.2]), &sv(&[0.6, 0.3, 0.1])).unwrap());
    }

    #[test]
    fn shortcut_preconditions() {
        let ok = sv(&[0.5, 0.3, 0.2]);
        assert_eq!(
            incomparable_3x3_shortcut(&sv(&[0.5, 0.5]), &ok),
            Err(Error::WrongDimension { expected: 3, actual: 2 })
        );
        assert_eq!(incomparable_3x3_shortcut(&ok, &sv(&[0.4, 0.4, 0.2])), Err(Error::NotStrictlyOrdered));
        assert_eq!(incomparable_3x3_shortcut(&ok, &sv(&[0.6, 0.4, 0.0])), Err(Error::NotStrictlyOrdered));
    }

    #[test]
    fn verdict_names_round_trip() {
        for v in [Verdict::Equivalent, Verdict::ConvertibleAtoB, Verdict::ConvertibleBtoA, Verdict::Incomparable] {
            assert_eq!(Verdict::parse(v.as_str()), Some(v));
            assert_eq!(v.swapped().swapped(), v);
        }
    }
}
