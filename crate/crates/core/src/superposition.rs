//! `|Γ⟩ = (α|ψ⟩ + β|φ⟩)/√K` for two states given in the same form.
//!
//! Vector-form components are combined index by index in physical basis order
//! (a shared Schmidt basis `|ii⟩`); sorting happens only when the Schmidt
//! vector of the result is taken. Matrix-form components are combined entry
//! by entry and the Schmidt vector comes from the singular values.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::state::{schmidt_of_state, PureState, SchmidtVector, StateForm};
use crate::{NORM_EPS, ORTHOGONAL_EPS};

/// Smallest pre-normalization squared norm accepted.
const MIN_NORM_FACTOR: f64 = 1e-12;

/// Weights and components of a two-term superposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionSpec {
    alpha: f64,
    beta: f64,
    psi: PureState,
    phi: PureState,
}

impl SuperpositionSpec {
    /// Requires `α, β ≥ 0`, `α² + β² = 1` within `1e-12`, and components of
    /// the same form and dimensions.
    pub fn new(alpha: f64, beta: f64, psi: PureState, phi: PureState) -> Result<Self> {
        if !(alpha >= 0.0 && beta >= 0.0)
            || !alpha.is_finite()
            || !beta.is_finite()
            || math::abs(alpha * alpha + beta * beta - 1.0) > NORM_EPS
        {
            return Err(Error::InvalidWeights { alpha, beta });
        }
        check_compatible(&psi, &phi)?;
        Ok(Self { alpha, beta, psi, phi })
    }

    /// Spec with `β = √(1 − α²)`.
    pub fn with_alpha(alpha: f64, psi: PureState, phi: PureState) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidWeights { alpha, beta: f64::NAN });
        }
        Self::new(alpha, math::sqrt(1.0 - alpha * alpha), psi, phi)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn psi(&self) -> &PureState {
        &self.psi
    }

    pub fn phi(&self) -> &PureState {
        &self.phi
    }
}

/// A normalized superposition and its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition {
    pub state: PureState,
    pub schmidt: SchmidtVector,
    /// `⟨ψ|φ⟩`.
    pub overlap: f64,
    /// `K`, the squared norm of `α|ψ⟩ + β|φ⟩` before normalization.
    pub norm_factor: f64,
    /// Vector form only: the squared amplitudes were not already
    /// non-increasing in basis order, so sorting reordered indices.
    pub permuted: bool,
}

impl Superposition {
    pub fn is_orthogonal(&self) -> bool {
        math::abs(self.overlap) <= ORTHOGONAL_EPS
    }
}

fn check_compatible(psi: &PureState, phi: &PureState) -> Result<()> {
    if psi.form() != phi.form() {
        return Err(Error::FormMismatch);
    }
    let (a, b) = (psi.dims(), phi.dims());
    if a != b {
        let (l, r) = if a.0 != b.0 { (a.0, b.0) } else { (a.1, b.1) };
        return Err(Error::DimensionMismatch { left: l, right: r });
    }
    Ok(())
}

/// `⟨ψ|φ⟩`: the amplitude dot product at matching basis indices (vector form)
/// or the entrywise inner product of coefficient matrices.
pub fn overlap(psi: &PureState, phi: &PureState) -> Result<f64> {
    check_compatible(psi, phi)?;
    Ok(math::dot(psi.coefficients(), phi.coefficients()))
}

/// Builds the normalized superposition described by `spec`.
pub fn superpose(spec: &SuperpositionSpec) -> Result<Superposition> {
    let overlap = overlap(&spec.psi, &spec.phi)?;
    let combined: Vec<f64> = spec
        .psi
        .coefficients()
        .iter()
        .zip(spec.phi.coefficients())
        .map(|(x, y)| spec.alpha * x + spec.beta * y)
        .collect();
    let norm_factor = math::dot(&combined, &combined);
    if !(norm_factor > MIN_NORM_FACTOR) {
        return Err(Error::VanishingSuperposition { norm_factor });
    }
    let scale = 1.0 / math::sqrt(norm_factor);
    let normalized: Vec<f64> = combined.iter().map(|c| c * scale).collect();
    let (state, permuted) = match spec.psi.form() {
        StateForm::SharedBasisVector => {
            let permuted = normalized.windows(2).any(|w| w[0] < w[1]);
            (PureState::vector(normalized)?, permuted)
        }
        StateForm::CoefficientMatrix => {
            let (rows, cols) = spec.psi.dims();
            (PureState::matrix(rows, cols, normalized)?, false)
        }
    };
    let schmidt = schmidt_of_state(&state)?;
    Ok(Superposition { state, schmidt, overlap, norm_factor, permuted })
}

/// Two independent superpositions, e.g. `(Γ, Γ′)` or `(Γ, Γ″)`.
pub fn superpose_pair(
    first: &SuperpositionSpec,
    second: &SuperpositionSpec,
) -> Result<(Superposition, Superposition)> {
    Ok((superpose(first)?, superpose(second)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::entropy_of_entanglement;
    use std::f64::consts::FRAC_1_SQRT_2 as H;

    fn vecstate(p: &[f64]) -> PureState {
        PureState::from_probabilities(p).unwrap()
    }

    #[test]
    fn overlap_values() {
        assert_eq!(overlap(&vecstate(&[1.0, 0.0, 0.0]), &vecstate(&[0.0, 1.0, 0.0])).unwrap(), 0.0);
        let s = vecstate(&[0.2, 0.5, 0.3]);
        assert!((overlap(&s, &s).unwrap() - 1.0).abs() < 1e-15);
        let o = overlap(&vecstate(&[0.5, 0.5, 0.0]), &vecstate(&[0.5, 0.0, 0.5])).unwrap();
        assert!((o - 0.5).abs() < 1e-15);
    }

    #[test]
    fn overlap_mismatch() {
        let a = vecstate(&[1.0, 0.0]);
        assert_eq!(overlap(&a, &vecstate(&[1.0, 0.0, 0.0])), Err(Error::DimensionMismatch { left: 2, right: 3 }));
        assert_eq!(overlap(&a, &a.to_matrix()), Err(Error::FormMismatch));
    }

    #[test]
    fn product_states_make_a_bell_state() {
        let spec = SuperpositionSpec::new(H, H, vecstate(&[1.0, 0.0]), vecstate(&[0.0, 1.0])).unwrap();
        let g = superpose(&spec).unwrap();
        assert!((g.schmidt.probs()[0] - 0.5).abs() < 1e-15);
        assert!((entropy_of_entanglement(&g.schmidt) - 1.0).abs() < 1e-12);
        assert!((g.norm_factor - 1.0).abs() < 1e-12);
        assert!(g.is_orthogonal());
        assert!(g.permuted == false);
    }

    #[test]
    fn bell_states_make_a_product_state() {
        let plus = PureState::matrix(2, 2, vec![H, 0.0, 0.0, H]).unwrap();
        let minus = PureState::matrix(2, 2, vec![H, 0.0, 0.0, -H]).unwrap();
        let g = superpose(&SuperpositionSpec::new(H, H, plus, minus).unwrap()).unwrap();
        assert!((g.schmidt.probs()[0] - 1.0).abs() < 1e-12);
        assert!(entropy_of_entanglement(&g.schmidt).abs() < 1e-12);
    }

    #[test]
    fn self_superposition() {
        let s = vecstate(&[0.2, 0.5, 0.3]);
        let g = superpose(&SuperpositionSpec::new(H, H, s.clone(), s.clone()).unwrap()).unwrap();
        assert!((g.norm_factor - 2.0).abs() < 1e-12);
        assert!((g.overlap - 1.0).abs() < 1e-12);
        let base = schmidt_of_state(&s).unwrap();
        for (x, y) in g.schmidt.probs().iter().zip(base.probs()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(g.permuted);
    }

    #[test]
    fn disjoint_pair_example() {
        let first = SuperpositionSpec::new(H, H, vecstate(&[1.0, 0.0]), vecstate(&[0.0, 1.0])).unwrap();
        let second = SuperpositionSpec::new(H, H, vecstate(&[0.6, 0.4, 0.0]), vecstate(&[0.0, 0.0, 1.0])).unwrap();
        let (_, g2) = superpose_pair(&first, &second).unwrap();
        let expected = [0.5, 0.3, 0.2];
        for (x, y) in g2.schmidt.probs().iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(g2.permuted);
    }

    #[test]
    fn degenerate_weight_reproduces_psi() {
        let psi = vecstate(&[0.1, 0.6, 0.3]);
        let g = superpose(&SuperpositionSpec::new(1.0, 0.0, psi.clone(), vecstate(&[0.0, 0.0, 1.0])).unwrap()).unwrap();
        assert_eq!(g.schmidt, schmidt_of_state(&psi).unwrap());
    }

    #[test]
    fn vanishing_matrix_superposition() {
        let a = PureState::matrix(1, 2, vec![H, H]).unwrap();
        let b = PureState::matrix(1, 2, vec![-H, -H]).unwrap();
        let spec = SuperpositionSpec::new(H, H, a, b).unwrap();
        assert!(matches!(superpose(&spec), Err(Error::VanishingSuperposition { .. })));
    }

    #[test]
    fn spec_validation() {
        let s = vecstate(&[1.0, 0.0]);
        assert!(matches!(SuperpositionSpec::new(0.5, 0.5, s.clone(), s.clone()), Err(Error::InvalidWeights { .. })));
        assert!(matches!(SuperpositionSpec::new(-H, H, s.clone(), s.clone()), Err(Error::InvalidWeights { .. })));
        assert!(SuperpositionSpec::new(H, H, s.clone(), vecstate(&[1.0, 0.0, 0.0])).is_err());
        let spec = SuperpositionSpec::with_alpha(0.6, s.clone(), s).unwrap();
        assert!((spec.beta() - 0.8).abs() < 1e-15);
    }
}
