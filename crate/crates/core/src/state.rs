//! Schmidt vectors, pure bipartite states and reproducible sampling.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::math;
use crate::svd::singular_values;
use crate::NORM_EPS;

/// Minimum gap and minimum entry for strictly ordered samples.
pub const STRICT_GAP: f64 = 1e-6;

/// Squared Schmidt coefficients of a pure state: non-negative, sorted
/// non-increasing, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtVector {
    probs: Vec<f64>,
}

impl SchmidtVector {
    /// Normalizes `raw` by its sum and sorts it non-increasing.
    ///
    /// Empty input, a negative (or NaN) entry and an all-zero input are
    /// rejected with distinct errors.
    pub fn from_weights(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in raw.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            return Err(Error::AllZero);
        }
        let mut probs: Vec<f64> = raw.iter().map(|x| x / total).collect();
        probs.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { probs })
    }

    /// `(1/d, …, 1/d)`.
    pub fn uniform(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { probs: vec![1.0 / d as f64; d] })
    }

    /// `(1, 0, …, 0)`.
    pub fn point_mass(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut probs = vec![0.0; d];
        probs[0] = 1.0;
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Entries with zeros appended up to `len`.
    pub fn padded(&self, len: usize) -> Vec<f64> {
        let mut out = self.probs.clone();
        if out.len() < len {
            out.resize(len, 0.0);
        }
        out
    }

    /// True when entries strictly decrease by more than `gap` and the last is above `gap`.
    pub fn is_strictly_ordered(&self, gap: f64) -> bool {
        self.probs.windows(2).all(|w| w[0] - w[1] > gap)
            && self.probs.last().is_some_and(|&x| x > gap)
    }
}

impl AsRef<[f64]> for SchmidtVector {
    fn as_ref(&self) -> &[f64] {
        &self.probs
    }
}

/// Representation of a [`PureState`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateForm {
    /// Non-negative amplitudes on a shared product basis `|ii⟩`, in physical basis order.
    SharedBasisVector,
    /// Full real coefficient matrix `M` with `|ψ⟩ = Σ M_ij |i⟩|j⟩`.
    CoefficientMatrix,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Vector(Vec<f64>),
    Matrix { rows: usize, cols: usize, data: Vec<f64> },
}

/// A normalized pure bipartite state with real amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    repr: Repr,
}

impl PureState {
    /// Shared-Schmidt-basis form `Σ c_i |ii⟩`. Amplitudes must be non-negative
    /// and square-sum to one within `1e-12`.
    pub fn vector(amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in amplitudes.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        check_norm(&amplitudes)?;
        Ok(Self { repr: Repr::Vector(amplitudes) })
    }

    /// Vector form from squared amplitudes (`c_i = √p_i`).
    pub fn from_probabilities(probs: &[f64]) -> Result<Self> {
        if let Some(index) = probs.iter().position(|p| *p < 0.0) {
            return Err(Error::NegativeEntry { index, value: probs[index] });
        }
        Self::vector(probs.iter().map(|&p| math::sqrt(p)).collect())
    }

    /// Coefficient-matrix form, row-major `rows × cols`. Entries may be signed.
    pub fn matrix(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if rows * cols != data.len() {
            return Err(Error::Shape { rows, cols, len: data.len() });
        }
        if let Some(index) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        check_norm(&data)?;
        Ok(Self { repr: Repr::Matrix { rows, cols, data } })
    }

    pub fn form(&self) -> StateForm {
        match self.repr {
            Repr::Vector(_) => StateForm::SharedBasisVector,
            Repr::Matrix { .. } => StateForm::CoefficientMatrix,
        }
    }

    /// Local dimensions `(d₁, d₂)`; a vector of length `d` is `d × d`.
    pub fn dims(&self) -> (usize, usize) {
        match &self.repr {
            Repr::Vector(v) => (v.len(), v.len()),
            Repr::Matrix { rows, cols, .. } => (*rows, *cols),
        }
    }

    /// Amplitudes of the vector form.
    pub fn amplitudes(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Vector(v) => Some(v),
            Repr::Matrix { .. } => None,
        }
    }

    /// Row-major entries of the coefficient matrix (vector form has none).
    pub fn matrix_entries(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Vector(_) => None,
            Repr::Matrix { data, .. } => Some(data),
        }
    }

    /// All stored coefficients: vector amplitudes or row-major matrix entries.
    pub fn coefficients(&self) -> &[f64] {
        match &self.repr {
            Repr::Vector(v) => v,
            Repr::Matrix { data, .. } => data,
        }
    }

    /// The same state as a coefficient matrix (vector form becomes diagonal).
    pub fn to_matrix(&self) -> PureState {
        match &self.repr {
            Repr::Vector(v) => {
                let d = v.len();
                let mut data = vec![0.0; d * d];
                for (i, &c) in v.iter().enumerate() {
                    data[i * d + i] = c;
                }
                PureState { repr: Repr::Matrix { rows: d, cols: d, data } }
            }
            Repr::Matrix { .. } => self.clone(),
        }
    }
}

fn check_norm(coefficients: &[f64]) -> Result<()> {
    let norm_sq = math::dot(coefficients, coefficients);
    if math::abs(norm_sq - 1.0) > NORM_EPS {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(())
}

/// Schmidt vector of a state: squared amplitudes for the vector form, squared
/// singular values of the coefficient matrix otherwise.
pub fn schmidt_of_state(state: &PureState) -> Result<SchmidtVector> {
    match &state.repr {
        Repr::Vector(v) => {
            let squares: Vec<f64> = v.iter().map(|c| c * c).collect();
            SchmidtVector::from_weights(&squares)
        }
        Repr::Matrix { rows, cols, data } => {
            let sv = singular_values(*rows, *cols, data)?;
            let squares: Vec<f64> = sv.iter().map(|s| s * s).collect();
            SchmidtVector::from_weights(&squares)
        }
    }
}

/// Seed plus stream id for a ChaCha8 generator. Equal pairs give equal draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomSource {
    pub seed: u64,
    pub stream: u64,
}

impl RandomSource {
    pub const fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// Independent child source for item `index`; used to give every sample
    /// its own stream so results do not depend on evaluation order.
    pub fn fork(&self, index: u64) -> Self {
        Self { seed: self.seed, stream: splitmix64(splitmix64(self.stream) ^ index) }
    }

    /// Child source keyed by a label (FNV-1a of its bytes).
    pub fn fork_named(&self, label: &str) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        self.fork(h)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Unnormalized flat-Dirichlet draw in draw order (exponential spacings).
fn flat_dirichlet<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    loop {
        // 1 - U lies in (0, 1], so -ln is finite.
        let draw: Vec<f64> = (0..d).map(|_| -math::ln(1.0 - rng.gen::<f64>())).collect();
        let total: f64 = draw.iter().sum();
        if total > 0.0 {
            return draw.into_iter().map(|x| x / total).collect();
        }
    }
}

/// Uniform draw from the probability simplex of dimension `d`, sorted.
///
/// With `strict`, draws are repeated until every entry is at least
/// [`STRICT_GAP`] and consecutive entries differ by at least [`STRICT_GAP`].
/// `strict` is ignored for `d = 1`.
pub fn sample_schmidt_simplex<R: Rng + ?Sized>(
    d: usize,
    rng: &mut R,
    strict: bool,
) -> Result<SchmidtVector> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if d == 1 {
        return Ok(SchmidtVector { probs: vec![1.0] });
    }
    loop {
        let v = SchmidtVector::from_weights(&flat_dirichlet(d, rng))?;
        if !strict || passes_strict(&v) {
            return Ok(v);
        }
    }
}

fn passes_strict(v: &SchmidtVector) -> bool {
    v.probs.windows(2).all(|w| w[0] - w[1] >= STRICT_GAP)
        && v.probs.last().is_some_and(|&x| x >= STRICT_GAP)
}

/// Uniform simplex draw placed on the basis in a uniformly random order.
pub fn sample_basis_probabilities<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Vec<f64>> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut probs = flat_dirichlet(d, rng);
    probs.shuffle(rng);
    Ok(probs)
}

/// Two probability vectors on complementary, non-empty basis supports, so the
/// corresponding vector-form states are exactly orthogonal. Needs `d ≥ 2`.
pub fn sample_disjoint_supports<R: Rng + ?Sized>(
    d: usize,
    rng: &mut R,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if d < 2 {
        return Err(Error::WrongDimension { expected: 2, actual: d });
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.shuffle(rng);
    let split = rng.gen_range(1..d);
    let mut first = vec![0.0; d];
    let mut second = vec![0.0; d];
    for (slot, p) in order[..split].iter().zip(flat_dirichlet(split, rng)) {
        first[*slot] = p;
    }
    for (slot, p) in order[split..].iter().zip(flat_dirichlet(d - split, rng)) {
        second[*slot] = p;
    }
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn from_weights_sorts_and_normalizes() {
        let v = SchmidtVector::from_weights(&[0.2, 0.5, 0.3]).unwrap();
        assert!(close(v.probs(), &[0.5, 0.3, 0.2], 1e-15));
        let v = SchmidtVector::from_weights(&[2.0, 2.0, 2.0]).unwrap();
        assert!(close(v.probs(), &[1.0 / 3.0; 3], 1e-15));
        let v = SchmidtVector::from_weights(&[0.0, 1.0]).unwrap();
        assert_eq!(v.probs(), &[1.0, 0.0]);
    }

    #[test]
    fn from_weights_errors_are_distinct() {
        assert_eq!(SchmidtVector::from_weights(&[]), Err(Error::Empty));
        assert!(matches!(
            SchmidtVector::from_weights(&[0.5, -0.1]),
            Err(Error::NegativeEntry { index: 1, .. })
        ));
        assert_eq!(SchmidtVector::from_weights(&[0.0, 0.0]), Err(Error::AllZero));
    }

    #[test]
    fn vector_state_schmidt() {
        let s = PureState::vector(vec![0.6f64.sqrt(), 0.4f64.sqrt(), 0.0]).unwrap();
        let v = schmidt_of_state(&s).unwrap();
        assert!(close(v.probs(), &[0.6, 0.4, 0.0], 1e-15));
    }

    #[test]
    fn matrix_state_schmidt() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = PureState::matrix(2, 2, vec![h, 0.0, 0.0, h]).unwrap();
        assert!(close(schmidt_of_state(&s).unwrap().probs(), &[0.5, 0.5], 1e-14));

        // [[.5,.5],[.5,.5]] = u vᵀ with u = v = (1/√2, 1/√2): one singular value 1.
        let s = PureState::matrix(2, 2, vec![0.5; 4]).unwrap();
        assert!(close(schmidt_of_state(&s).unwrap().probs(), &[1.0, 0.0], 1e-14));
    }

    #[test]
    fn state_validation() {
        assert_eq!(PureState::vector(vec![]), Err(Error::Empty));
        assert!(matches!(PureState::vector(vec![0.5, 0.5]), Err(Error::NotNormalized { .. })));
        assert!(matches!(PureState::vector(vec![-1.0]), Err(Error::NegativeEntry { .. })));
        assert!(matches!(PureState::matrix(2, 2, vec![1.0]), Err(Error::Shape { .. })));
        assert!(matches!(
            PureState::matrix(1, 2, vec![f64::NAN, 1.0]),
            Err(Error::NonFinite { index: 0 })
        ));
        // Signed entries are fine in matrix form.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(PureState::matrix(1, 2, vec![h, -h]).is_ok());
    }

    #[test]
    fn diagonal_embedding_keeps_schmidt() {
        let s = PureState::from_probabilities(&[0.1, 0.7, 0.2]).unwrap();
        let a = schmidt_of_state(&s).unwrap();
        let b = schmidt_of_state(&s.to_matrix()).unwrap();
        assert!(close(a.probs(), b.probs(), 1e-12));
        assert_eq!(s.to_matrix().dims(), (3, 3));
    }

    #[test]
    fn simplex_point_and_determinism() {
        let src = RandomSource::new(7, 0);
        assert_eq!(sample_schmidt_simplex(1, &mut src.rng(), false).unwrap().probs(), &[1.0]);
        let a = sample_schmidt_simplex(3, &mut src.rng(), false).unwrap();
        let b = sample_schmidt_simplex(3, &mut src.rng(), false).unwrap();
        assert_eq!(a, b);
        assert_eq!(sample_schmidt_simplex(0, &mut src.rng(), false), Err(Error::ZeroDimension));
    }

    #[test]
    fn strict_samples_have_gaps() {
        let mut rng = RandomSource::new(11, 3).rng();
        for _ in 0..2000 {
            let v = sample_schmidt_simplex(3, &mut rng, true).unwrap();
            let p = v.probs();
            assert!(p[0] - p[1] >= STRICT_GAP && p[1] - p[2] >= STRICT_GAP && p[2] >= STRICT_GAP);
        }
    }

    #[test]
    fn forks_differ_and_repeat() {
        let src = RandomSource::new(1, 2);
        assert_eq!(src.fork(5), src.fork(5));
        assert_ne!(src.fork(5), src.fork(6));
        assert_ne!(src.fork_named("1-1"), src.fork_named("1-2"));
        assert_eq!(src.fork(5).seed, 1);
    }

    #[test]
    fn disjoint_supports_are_orthogonal() {
        let mut rng = RandomSource::new(3, 0).rng();
        for _ in 0..500 {
            let (a, b) = sample_disjoint_supports(3, &mut rng).unwrap();
            assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!((b.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(a.iter().zip(&b).all(|(x, y)| *x == 0.0 || *y == 0.0));
        }
        assert!(sample_disjoint_supports(1, &mut rng).is_err());
    }
}
