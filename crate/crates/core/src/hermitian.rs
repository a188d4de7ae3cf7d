//! Dense real symmetric matrices: the concrete carrier of the Jordan algebra.
//!
//! Everything downstream (Jordan products, means, quadrature of matrix
//! integrands) is built on three primitives defined here: a validated
//! symmetric matrix type, a sorted spectral decomposition with functional
//! calculus on top of it, and the Loewner (positive semidefinite) order.
//! The module also owns the seeded SPD ensemble used by the verification
//! suites and the CLI `gen` command.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative asymmetry accepted (and symmetrized away) on construction.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Relative floor below which an eigenvalue does not count as positive.
pub const PD_RELATIVE_TOLERANCE: f64 = 1e-12;
/// Default scale-relative tolerance of [`loewner_compare`].
pub const DEFAULT_LOEWNER_TOLERANCE: f64 = 1e-9;
/// Eigenvalue ratio above which fractional powers are flagged as inaccurate.
pub const CONDITION_WARNING_RATIO: f64 = 1e12;

/// An element of the special Jordan algebra of real symmetric `n x n` matrices.
///
/// Invariants: `dim >= 1`, all entries finite, exactly symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: DMatrix<f64>,
}

impl HermitianMatrix {
    /// Builds a matrix from `dim * dim` row-major entries.
    ///
    /// Entries whose asymmetry is within [`SYMMETRY_TOLERANCE`] relative to
    /// `1 + max|a_ij|` are symmetrized as `(A + A^T) / 2`; larger asymmetry is
    /// rejected.
    pub fn from_row_major(dim: usize, entries: &[f64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        let expected = dim
            .checked_mul(dim)
            .ok_or_else(|| Error::InvalidInput(format!("dimension {dim} too large")))?;
        if entries.len() != expected {
            return Err(Error::InvalidInput(format!(
                "expected {expected} entries for dim {dim}, found {}",
                entries.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Validates and symmetrizes a square nalgebra matrix.
    pub fn from_dmatrix(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() == 0 || m.nrows() != m.ncols() {
            return Err(Error::InvalidInput(format!(
                "matrix must be square and non-empty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if let Some(bad) = m.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite entry {bad}")));
        }
        let max_abs = m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
        let bound = SYMMETRY_TOLERANCE * (1.0 + max_abs);
        let n = m.nrows();
        for i in 0..n {
            for j in (i + 1)..n {
                let gap = (m[(i, j)] - m[(j, i)]).abs();
                if gap > bound {
                    return Err(Error::InvalidInput(format!(
                        "matrix not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {gap:e}"
                    )));
                }
            }
        }
        Ok(Self::symmetrized(m))
    }

    /// Symmetrizes without validation. Used for results of algebraic
    /// operations on already-valid matrices.
    pub(crate) fn symmetrized(m: DMatrix<f64>) -> Self {
        let t = m.transpose();
        // halve before adding only when the plain sum overflows
        let inner = m.zip_map(&t, |x, y| {
            let s = (x + y) * 0.5;
            if s.is_finite() {
                s
            } else {
                x * 0.5 + y * 0.5
            }
        });
        HermitianMatrix { inner }
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        HermitianMatrix {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        HermitianMatrix {
            inner: DMatrix::zeros(dim, dim),
        }
    }

    /// Diagonal matrix with the given (finite) diagonal.
    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidInput("empty diagonal".into()));
        }
        Self::from_dmatrix(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    /// The 1x1 matrix `[x]`.
    pub fn scalar(x: f64) -> Result<Self> {
        Self::from_row_major(1, &[x])
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner[(i, j)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.inner
    }

    pub fn into_dmatrix(self) -> DMatrix<f64> {
        self.inner
    }

    pub fn to_row_major(&self) -> Vec<f64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm()
    }

    pub fn trace(&self) -> f64 {
        self.inner.trace()
    }

    /// Associative product `self * other`; generally not symmetric.
    pub(crate) fn matmul(&self, other: &HermitianMatrix) -> DMatrix<f64> {
        &self.inner * &other.inner
    }

    pub(crate) fn check_same_dim(&self, other: &HermitianMatrix) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidInput(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    /// `1 + ||self||_F`, the scale used by all relative tolerances.
    pub fn scale(&self) -> f64 {
        1.0 + self.frobenius_norm()
    }

    /// `||self - other||_F / (1 + max(||self||_F, ||other||_F))`.
    pub fn relative_distance(&self, other: &HermitianMatrix) -> f64 {
        let scale = 1.0 + self.frobenius_norm().max(other.frobenius_norm());
        (&self.inner - &other.inner).norm() / scale
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl Mul<f64> for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn mul(self, rhs: f64) -> HermitianMatrix {
        HermitianMatrix {
            inner: &self.inner * rhs,
        }
    }
}

impl Neg for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn neg(self) -> HermitianMatrix {
        HermitianMatrix {
            inner: -&self.inner,
        }
    }
}

/// `A = Q diag(eigenvalues) Q^T` with eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    source_norm: f64,
}

impl SpectralDecomposition {
    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthogonal matrix whose columns are the eigenvectors.
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `max|λ| / min|λ|`; infinite for singular matrices.
    pub fn condition_number(&self) -> f64 {
        let (lo, hi) = self
            .eigenvalues
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(lo, hi), l| {
                (lo.min(l.abs()), hi.max(l.abs()))
            });
        if lo == 0.0 {
            f64::INFINITY
        } else {
            hi / lo
        }
    }

    /// True when fractional powers of this matrix lose accuracy.
    pub fn is_ill_conditioned(&self) -> bool {
        self.condition_number() > CONDITION_WARNING_RATIO
    }

    /// Positive-definiteness floor `1e-12 * (1 + ||A||_F)`.
    pub fn pd_tolerance(&self) -> f64 {
        PD_RELATIVE_TOLERANCE * (1.0 + self.source_norm)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.min_eigenvalue() > self.pd_tolerance()
    }

    pub(crate) fn require_positive_definite(&self, context: &str) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::domain(
                format!("{context} not positive definite"),
                self.min_eigenvalue(),
            ))
        }
    }

    /// `Q f(Λ) Q^T`, re-symmetrized.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let q = &self.eigenvectors;
        let mut scaled = q.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let fx = f(lambda);
            scaled.column_mut(j).scale_mut(fx);
        }
        HermitianMatrix::symmetrized(scaled * q.transpose())
    }

    /// [`map`](Self::map) guarded by a predicate on every eigenvalue.
    pub fn try_map(
        &self,
        f: impl Fn(f64) -> f64,
        domain_guard: impl Fn(f64) -> bool,
    ) -> Result<HermitianMatrix> {
        if let Some(&bad) = self.eigenvalues.iter().find(|&&l| !domain_guard(l)) {
            return Err(Error::domain("eigenvalue outside function domain", bad));
        }
        let out = self.map(f);
        if out.inner.iter().any(|x| !x.is_finite()) {
            return Err(Error::Numerical("functional calculus overflowed".into()));
        }
        Ok(out)
    }

    /// `A^t`. Non-integer or negative `t` requires positive definiteness.
    pub fn power(&self, t: f64) -> Result<HermitianMatrix> {
        if !t.is_finite() {
            return Err(Error::InvalidParameter {
                name: "t",
                value: t,
                admissible: crate::error::Interval::REAL_LINE,
            });
        }
        if t == 0.0 {
            return Ok(HermitianMatrix::identity(self.eigenvalues.len()));
        }
        if t >= 0.0 && t.fract() == 0.0 && t <= i32::MAX as f64 {
            let k = t as i32;
            return self.try_map(|x| x.powi(k), |_| true);
        }
        self.require_positive_definite("matrix")?;
        self.try_map(|x| x.powf(t), |_| true)
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.map(|x| x)
    }
}

/// Symmetric eigendecomposition with eigenvalues sorted ascending.
pub fn spectral_decompose(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let norm = a.frobenius_norm();
    if !norm.is_finite() {
        return Err(Error::InvalidInput("matrix norm overflows".into()));
    }
    let eig = SymmetricEigen::try_new(a.inner.clone(), f64::EPSILON, 1000 * n.max(4))
        .ok_or_else(|| Error::Numerical("symmetric eigensolver did not converge".into()))?;
    if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("eigensolver produced non-finite values".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        source_norm: norm,
    })
}

/// `f(A)` by functional calculus, failing if any eigenvalue violates `domain_guard`.
pub fn apply_spectral_function(
    a: &HermitianMatrix,
    f: impl Fn(f64) -> f64,
    domain_guard: impl Fn(f64) -> bool,
) -> Result<HermitianMatrix> {
    spectral_decompose(a)?.try_map(f, domain_guard)
}

/// `A^t` by functional calculus.
pub fn matrix_power(a: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    spectral_decompose(a)?.power(t)
}

/// Decomposes `a` and checks it is positive definite.
pub fn positive_definite_spectrum(
    a: &HermitianMatrix,
    context: &str,
) -> Result<SpectralDecomposition> {
    let spec = spectral_decompose(a)?;
    spec.require_positive_definite(context)?;
    Ok(spec)
}

/// Outcome of comparing `A` and `B` in the Loewner order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoewnerVerdict {
    /// `A <= B`
    LessOrEqual,
    /// `A >= B`
    GreaterOrEqual,
    Equal,
    Incomparable,
}

impl LoewnerVerdict {
    /// The verdict for the swapped comparison.
    pub fn mirrored(self) -> Self {
        match self {
            LoewnerVerdict::LessOrEqual => LoewnerVerdict::GreaterOrEqual,
            LoewnerVerdict::GreaterOrEqual => LoewnerVerdict::LessOrEqual,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoewnerResult {
    pub verdict: LoewnerVerdict,
    /// Smallest eigenvalue of `B - A`.
    pub min_gap_eigenvalue: f64,
    /// Largest eigenvalue of `B - A`.
    pub max_gap_eigenvalue: f64,
    pub tolerance: f64,
    /// `1 + max(||A||_F, ||B||_F)`
    pub scale: f64,
}

impl LoewnerResult {
    /// `A <= B` holds (possibly with equality).
    pub fn is_le(&self) -> bool {
        matches!(
            self.verdict,
            LoewnerVerdict::LessOrEqual | LoewnerVerdict::Equal
        )
    }

    /// `-λ_min(B - A) / scale`, clamped at zero: how far `A <= B` is from holding.
    pub fn le_violation(&self) -> f64 {
        (-self.min_gap_eigenvalue / self.scale).max(0.0)
    }
}

/// Classifies `A` vs `B` from the extreme eigenvalues of `B - A` against
/// `±tol * (1 + max(||A||_F, ||B||_F))`.
pub fn loewner_compare(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<LoewnerResult> {
    a.check_same_dim(b)?;
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be nonnegative, got {tol}")));
    }
    let scale = 1.0 + a.frobenius_norm().max(b.frobenius_norm());
    let spec = spectral_decompose(&(b - a))?;
    let (lo, hi) = (spec.min_eigenvalue(), spec.max_eigenvalue());
    let band = tol * scale;
    let verdict = match (lo >= -band, hi <= band) {
        (true, true) => LoewnerVerdict::Equal,
        (true, false) => LoewnerVerdict::LessOrEqual,
        (false, true) => LoewnerVerdict::GreaterOrEqual,
        (false, false) => LoewnerVerdict::Incomparable,
    };
    Ok(LoewnerResult {
        verdict,
        min_gap_eigenvalue: lo,
        max_gap_eigenvalue: hi,
        tolerance: tol,
        scale,
    })
}

/// Parameters of a seeded SPD ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub dim: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub trials: usize,
    pub seed: u64,
}

impl EnsembleConfig {
    pub fn new(dim: usize, lambda_min: f64, lambda_max: f64, trials: usize, seed: u64) -> Self {
        EnsembleConfig {
            dim,
            lambda_min,
            lambda_max,
            trials,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidInput("ensemble dim must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidInput("ensemble trials must be at least 1".into()));
        }
        let (lo, hi) = (self.lambda_min, self.lambda_max);
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(Error::InvalidInput(format!(
                "eigenvalue range must satisfy 0 < lmin <= lmax, got [{lo}, {hi}]"
            )));
        }
        Ok(())
    }
}

/// Deterministic stream of random matrices for one trial.
///
/// Trial `t` of seed `s` reads ChaCha8 stream `t` of key `s`, so trials are
/// independent of evaluation order.
pub struct TrialSampler {
    config: EnsembleConfig,
    rng: ChaCha8Rng,
}

impl TrialSampler {
    pub fn new(config: &EnsembleConfig, trial_index: usize) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(trial_index as u64);
        Ok(TrialSampler {
            config: *config,
            rng,
        })
    }

    /// Haar-distributed orthogonal matrix via QR of a Gaussian matrix.
    fn orthogonal(&mut self) -> DMatrix<f64> {
        let n = self.config.dim;
        let g = DMatrix::from_fn(n, n, |_, _| self.rng.sample::<f64, _>(StandardNormal));
        let qr = g.qr();
        let r = qr.r();
        let mut q = qr.q();
        for j in 0..n {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        q
    }

    fn log_uniform_spectrum(&mut self) -> Vec<f64> {
        let (lo, hi) = (self.config.lambda_min, self.config.lambda_max);
        let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
        (0..self.config.dim)
            .map(|_| {
                let u: f64 = self.rng.random();
                (ln_lo + u * (ln_hi - ln_lo)).exp().clamp(lo, hi)
            })
            .collect()
    }

    fn from_spectrum(q: &DMatrix<f64>, spectrum: &[f64]) -> HermitianMatrix {
        let mut scaled = q.clone();
        for (j, &l) in spectrum.iter().enumerate() {
            scaled.column_mut(j).scale_mut(l);
        }
        HermitianMatrix::symmetrized(scaled * q.transpose())
    }

    /// SPD matrix with log-uniform eigenvalues in `[lambda_min, lambda_max]`.
    pub fn next_spd(&mut self) -> HermitianMatrix {
        let q = self.orthogonal();
        let spectrum = self.log_uniform_spectrum();
        Self::from_spectrum(&q, &spectrum)
    }

    /// Invertible symmetric matrix: an SPD draw with each eigenvalue's sign
    /// flipped independently with probability 1/2.
    pub fn next_invertible(&mut self) -> HermitianMatrix {
        let q = self.orthogonal();
        let mut spectrum = self.log_uniform_spectrum();
        for l in spectrum.iter_mut() {
            if self.rng.random::<bool>() {
                *l = -*l;
            }
        }
        Self::from_spectrum(&q, &spectrum)
    }

    /// Symmetric matrix with i.i.d. standard normal upper triangle.
    pub fn next_symmetric(&mut self) -> HermitianMatrix {
        let n = self.config.dim;
        let g = DMatrix::from_fn(n, n, |_, _| self.rng.sample::<f64, _>(StandardNormal));
        HermitianMatrix::symmetrized(g)
    }
}

/// The first SPD draw of trial `trial_index`; bit-identical for fixed inputs.
pub fn random_spd(config: &EnsembleConfig, trial_index: usize) -> Result<HermitianMatrix> {
    Ok(TrialSampler::new(config, trial_index)?.next_spd())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn m(rows: &[&[f64]]) -> HermitianMatrix {
        let n = rows.len();
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        HermitianMatrix::from_row_major(n, &flat).unwrap()
    }

    fn assert_close(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) {
        let d = (a - b).frobenius_norm();
        assert!(d <= tol, "distance {d:e} > {tol:e}\n{a:?}\n{b:?}");
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        assert!(HermitianMatrix::from_row_major(0, &[]).is_err());
        assert!(HermitianMatrix::from_row_major(2, &[1.0, 2.0, 3.0]).is_err());
        assert!(HermitianMatrix::from_row_major(1, &[f64::NAN]).is_err());
        assert!(HermitianMatrix::from_row_major(2, &[1.0, 2.0, 2.1, 1.0]).is_err());
        assert!(HermitianMatrix::from_row_major(usize::MAX, &[]).is_err());
    }

    #[test]
    fn tiny_asymmetry_is_symmetrized() {
        let a = HermitianMatrix::from_row_major(2, &[1.0, 2.0, 2.0 + 1e-13, 1.0]).unwrap();
        assert_eq!(a.get(0, 1), a.get(1, 0));
    }

    #[test]
    fn spectral_examples() {
        let id = spectral_decompose(&HermitianMatrix::identity(2)).unwrap();
        assert_eq!(id.eigenvalues(), &[1.0, 1.0]);
        assert_close(&id.reconstruct(), &HermitianMatrix::identity(2), 1e-12);

        let d = spectral_decompose(&HermitianMatrix::diagonal(&[3.0, 1.0]).unwrap()).unwrap();
        assert_relative_eq!(d.eigenvalues()[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(d.eigenvalues()[1], 3.0, epsilon = 1e-14);

        // lambda^2 - 4 lambda + 3 = 0
        let s = spectral_decompose(&m(&[&[2.0, 1.0], &[1.0, 2.0]])).unwrap();
        assert_relative_eq!(s.eigenvalues()[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(s.eigenvalues()[1], 3.0, epsilon = 1e-14);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let q = s.eigenvectors();
        // columns up to sign
        assert_relative_eq!((q[(0, 0)] * h - q[(1, 0)] * h).abs(), 1.0, epsilon = 1e-12);
        assert_relative_eq!((q[(0, 1)] * h + q[(1, 1)] * h).abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn functional_calculus_examples() {
        let a = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let same = apply_spectral_function(&a, |x| x, |_| true).unwrap();
        assert_close(&same, &a, 1e-10);

        let sq = apply_spectral_function(&a, |x| x * x, |_| true).unwrap();
        let direct = HermitianMatrix::from_dmatrix(a.matmul(&a)).unwrap();
        assert_close(&sq, &direct, 1e-12);
        assert_close(&sq, &m(&[&[5.0, 4.0], &[4.0, 5.0]]), 1e-12);

        let recip = apply_spectral_function(
            &HermitianMatrix::diagonal(&[2.0, 4.0]).unwrap(),
            |x| 1.0 / x,
            |x| x != 0.0,
        )
        .unwrap();
        assert_close(&recip, &HermitianMatrix::diagonal(&[0.5, 0.25]).unwrap(), 1e-15);

        let err = apply_spectral_function(&a, f64::ln, |x| x > 2.0).unwrap_err();
        match err {
            Error::DomainViolation { eigenvalue, .. } => assert_relative_eq!(eigenvalue, 1.0, epsilon = 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn functional_calculus_commutes_with_argument() {
        let a = m(&[&[3.0, 1.0, 0.5], &[1.0, 2.0, -0.3], &[0.5, -0.3, 1.0]]);
        let f = apply_spectral_function(&a, |x| x.exp(), |_| true).unwrap();
        let comm = a.matmul(&f) - f.matmul(&a);
        assert!(comm.norm() <= 1e-10 * a.frobenius_norm() * f.frobenius_norm());
    }

    #[test]
    fn power_examples() {
        let a = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        assert_close(&matrix_power(&a, 0.0).unwrap(), &HermitianMatrix::identity(2), 0.0);
        let root = matrix_power(&HermitianMatrix::diagonal(&[4.0, 9.0]).unwrap(), 0.5).unwrap();
        assert_close(&root, &HermitianMatrix::diagonal(&[2.0, 3.0]).unwrap(), 1e-14);
        let inv = matrix_power(&a, -1.0).unwrap();
        let expected = m(&[&[2.0 / 3.0, -1.0 / 3.0], &[-1.0 / 3.0, 2.0 / 3.0]]);
        assert_close(&inv, &expected, 1e-14);
    }

    #[test]
    fn power_of_indefinite_matrix() {
        let c = HermitianMatrix::diagonal(&[-2.0, 3.0]).unwrap();
        let sq = matrix_power(&c, 2.0).unwrap();
        assert_close(&sq, &HermitianMatrix::diagonal(&[4.0, 9.0]).unwrap(), 1e-14);
        assert!(matches!(
            matrix_power(&c, 0.5),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            matrix_power(&c, -1.0),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn loewner_examples() {
        let i2 = HermitianMatrix::identity(2);
        let r = loewner_compare(&i2, &(&i2 * 2.0), DEFAULT_LOEWNER_TOLERANCE).unwrap();
        assert_eq!(r.verdict, LoewnerVerdict::LessOrEqual);
        assert_relative_eq!(r.min_gap_eigenvalue, 1.0, epsilon = 1e-14);

        let a = m(&[&[2.0, 1.0], &[1.0, 2.0]]);
        assert_eq!(
            loewner_compare(&a, &a, DEFAULT_LOEWNER_TOLERANCE).unwrap().verdict,
            LoewnerVerdict::Equal
        );

        let d1 = HermitianMatrix::diagonal(&[1.0, 3.0]).unwrap();
        let d2 = HermitianMatrix::diagonal(&[2.0, 2.0]).unwrap();
        let r = loewner_compare(&d1, &d2, DEFAULT_LOEWNER_TOLERANCE).unwrap();
        assert_eq!(r.verdict, LoewnerVerdict::Incomparable);
        assert_relative_eq!(r.min_gap_eigenvalue, -1.0, epsilon = 1e-14);
        assert_relative_eq!(r.max_gap_eigenvalue, 1.0, epsilon = 1e-14);

        assert!(loewner_compare(&i2, &HermitianMatrix::identity(3), 1e-9).is_err());
    }

    #[test]
    fn ensemble_validation() {
        assert!(EnsembleConfig::new(0, 0.1, 10.0, 1, 0).validate().is_err());
        assert!(EnsembleConfig::new(2, 0.1, 10.0, 0, 0).validate().is_err());
        assert!(EnsembleConfig::new(2, 2.0, 1.0, 1, 0).validate().is_err());
        assert!(EnsembleConfig::new(2, 0.0, 1.0, 1, 0).validate().is_err());
        assert!(EnsembleConfig::new(2, 1.0, 1.0, 1, 0).validate().is_ok());
    }

    #[test]
    fn random_spd_is_deterministic_and_bounded() {
        let cfg = EnsembleConfig::new(5, 0.1, 10.0, 10, 42);
        let a = random_spd(&cfg, 3).unwrap();
        let b = random_spd(&cfg, 3).unwrap();
        assert_eq!(a.to_row_major(), b.to_row_major());
        assert_ne!(a, random_spd(&cfg, 4).unwrap());

        let lower = &HermitianMatrix::identity(5) * cfg.lambda_min;
        assert!(loewner_compare(&lower, &a, DEFAULT_LOEWNER_TOLERANCE).unwrap().is_le());
        let spec = spectral_decompose(&a).unwrap();
        assert!(spec.min_eigenvalue() >= cfg.lambda_min * (1.0 - 1e-12));
        assert!(spec.max_eigenvalue() <= cfg.lambda_max * (1.0 + 1e-12));

        let one = EnsembleConfig::new(1, 2.0, 3.0, 1, 9);
        let x = random_spd(&one, 0).unwrap().get(0, 0);
        assert!((2.0..=3.0).contains(&x));
    }

    #[test]
    fn ill_conditioning_is_flagged() {
        let a = HermitianMatrix::diagonal(&[1e-13, 1.0]).unwrap();
        assert!(spectral_decompose(&a).unwrap().is_ill_conditioned());
        let b = HermitianMatrix::diagonal(&[1e-3, 1.0]).unwrap();
        assert!(!spectral_decompose(&b).unwrap().is_ill_conditioned());
    }

    fn spd_strategy() -> impl Strategy<Value = HermitianMatrix> {
        (1usize..=6, any::<u64>(), 0usize..1000).prop_map(|(dim, seed, trial)| {
            random_spd(&EnsembleConfig::new(dim, 0.1, 10.0, 1, seed), trial).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn decomposition_reconstructs(a in spd_strategy()) {
            let s = spectral_decompose(&a).unwrap();
            let q = s.eigenvectors();
            let n = a.dim();
            prop_assert!((q.transpose() * q - DMatrix::<f64>::identity(n, n)).norm() <= 1e-10);
            prop_assert!((&s.reconstruct() - &a).frobenius_norm() <= 1e-10 * a.scale());
            prop_assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn power_roundtrip(a in spd_strategy(), t in prop::sample::select(vec![0.5, 2.0, -1.0])) {
            let back = matrix_power(&matrix_power(&a, t).unwrap(), 1.0 / t).unwrap();
            prop_assert!((&back - &a).frobenius_norm() <= 1e-8 * a.frobenius_norm());
        }

        #[test]
        fn inverse_spectrum_is_reciprocal(a in spd_strategy()) {
            let ev = spectral_decompose(&a).unwrap().eigenvalues().to_vec();
            let inv = spectral_decompose(&matrix_power(&a, -1.0).unwrap()).unwrap();
            let mut recip: Vec<f64> = ev.iter().map(|x| 1.0 / x).collect();
            recip.sort_by(f64::total_cmp);
            for (x, y) in inv.eigenvalues().iter().zip(&recip) {
                prop_assert!((x - y).abs() <= 1e-9 * y.abs());
            }
        }

        #[test]
        fn loewner_verdicts_mirror(a in spd_strategy(), seed in any::<u64>()) {
            let b = random_spd(&EnsembleConfig::new(a.dim(), 0.1, 10.0, 1, seed), 0).unwrap();
            let ab = loewner_compare(&a, &b, DEFAULT_LOEWNER_TOLERANCE).unwrap();
            let ba = loewner_compare(&b, &a, DEFAULT_LOEWNER_TOLERANCE).unwrap();
            prop_assert_eq!(ab.verdict.mirrored(), ba.verdict);
        }
    }
}
