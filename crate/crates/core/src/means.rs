//! Two-variable operator means on positive definite matrices.
//!
//! The weighted geometric mean `A #_r B = U_{A^{1/2}}((U_{A^{-1/2}} B)^r)` is
//! defined here for every `r` in the open interval `(-1, 2)`; outside `[0, 1]`
//! it is no longer a Kubo-Ando mean but keeps most algebraic identities while
//! the arithmetic/geometric/harmonic ordering reverses. Heinz, Heron and the
//! logarithmic mean are assembled from it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Interval, Result};
use crate::hermitian::{positive_definite_spectrum, spectral_decompose, HermitianMatrix, SpectralDecomposition};
use crate::jordan::quadratic_map_unchecked;
use crate::quadrature::{QuadratureKind, QuadratureRule};

/// Admissible `r` of the extended geometric mean.
pub const GEOMETRIC_DOMAIN: Interval = Interval::open(-1.0, 2.0);
/// Closed version used where endpoint powers are still meaningful (convexity checks).
pub const GEOMETRIC_DOMAIN_RELAXED: Interval = Interval::closed(-1.0, 2.0);
/// Admissible `ν` of the Heinz mean: both `ν` and `1 - ν` must lie in the geometric domain.
pub const HEINZ_DOMAIN: Interval = Interval::open(-1.0, 2.0);
/// Weights of the arithmetic, harmonic and Heron means may be any real number.
pub const WEIGHT_DOMAIN: Interval = Interval::REAL_LINE;

/// Node count of the Gauss-Legendre rule used for the logarithmic mean.
pub const DEFAULT_LOG_MEAN_NODES: usize = 33;

/// A scalar mean parameter together with the interval it was validated against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanParameter {
    value: f64,
    admissible: Interval,
}

impl MeanParameter {
    pub fn new(name: &'static str, value: f64, admissible: Interval) -> Result<Self> {
        if admissible.contains(value) {
            Ok(MeanParameter { value, admissible })
        } else {
            Err(Error::InvalidParameter {
                name,
                value,
                admissible,
            })
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn admissible(&self) -> Interval {
        self.admissible
    }
}

/// The curve `r ↦ A #_r B` with the spectral work shared across evaluations.
#[derive(Debug, Clone)]
pub struct GeometricPath {
    a_sqrt: HermitianMatrix,
    relative: SpectralDecomposition,
}

impl GeometricPath {
    /// Prepares `A^{1/2}` and the spectrum of `U_{A^{-1/2}}(B)`.
    pub fn new(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<Self> {
        a.check_same_dim(b)?;
        let a_spec = positive_definite_spectrum(a, "first argument")?;
        positive_definite_spectrum(b, "second argument")?;
        let a_sqrt = a_spec.power(0.5)?;
        let a_isqrt = a_spec.power(-0.5)?;
        let relative = spectral_decompose(&quadratic_map_unchecked(&a_isqrt, b))?;
        relative.require_positive_definite("relative operator")?;
        Ok(GeometricPath { a_sqrt, relative })
    }

    /// `A #_r B` for any finite `r`; domain checks are the caller's job.
    pub fn at(&self, r: f64) -> Result<HermitianMatrix> {
        let powered = self.relative.power(r)?;
        Ok(quadratic_map_unchecked(&self.a_sqrt, &powered))
    }

    /// True when the relative operator is too ill-conditioned for accurate powers.
    pub fn is_ill_conditioned(&self) -> bool {
        self.relative.is_ill_conditioned()
    }
}

/// `A ∇_ν B = (1 - ν) A + ν B`.
pub fn weighted_arithmetic(a: &HermitianMatrix, b: &HermitianMatrix, nu: f64) -> Result<HermitianMatrix> {
    let nu = MeanParameter::new("nu", nu, WEIGHT_DOMAIN)?.value();
    a.check_same_dim(b)?;
    Ok(&(a * (1.0 - nu)) + &(b * nu))
}

/// `A !_ν B = ((1 - ν) A^{-1} + ν B^{-1})^{-1}`.
///
/// For `ν` outside `[0, 1]` the inner combination may be indefinite; that is
/// reported as a domain violation carrying its smallest eigenvalue.
pub fn weighted_harmonic(a: &HermitianMatrix, b: &HermitianMatrix, nu: f64) -> Result<HermitianMatrix> {
    let nu = MeanParameter::new("nu", nu, WEIGHT_DOMAIN)?.value();
    a.check_same_dim(b)?;
    let a_inv = positive_definite_spectrum(a, "first argument")?.power(-1.0)?;
    let b_inv = positive_definite_spectrum(b, "second argument")?.power(-1.0)?;
    let combo = &(&a_inv * (1.0 - nu)) + &(&b_inv * nu);
    let spec = spectral_decompose(&combo)?;
    spec.require_positive_definite("harmonic combination")?;
    spec.power(-1.0)
}

/// The extended weighted geometric mean `A #_r B`, `r ∈ (-1, 2)`.
pub fn weighted_geometric(a: &HermitianMatrix, b: &HermitianMatrix, r: f64) -> Result<HermitianMatrix> {
    let r = MeanParameter::new("r", r, GEOMETRIC_DOMAIN)?.value();
    GeometricPath::new(a, b)?.at(r)
}

/// [`weighted_geometric`] on the closed interval `[-1, 2]`.
pub fn weighted_geometric_relaxed(a: &HermitianMatrix, b: &HermitianMatrix, r: f64) -> Result<HermitianMatrix> {
    let r = MeanParameter::new("r", r, GEOMETRIC_DOMAIN_RELAXED)?.value();
    GeometricPath::new(a, b)?.at(r)
}

/// Heinz mean `H_ν = (A #_ν B + A #_{1-ν} B) / 2`, `ν ∈ (-1, 2)`.
pub fn heinz(a: &HermitianMatrix, b: &HermitianMatrix, nu: f64) -> Result<HermitianMatrix> {
    let nu = MeanParameter::new("nu", nu, HEINZ_DOMAIN)?.value();
    heinz_on(&GeometricPath::new(a, b)?, nu)
}

pub(crate) fn heinz_on(path: &GeometricPath, nu: f64) -> Result<HermitianMatrix> {
    // Sum in a fixed order so that H_ν and H_{1-ν} agree bit for bit.
    let (lo, hi) = if nu <= 0.5 { (nu, 1.0 - nu) } else { (1.0 - nu, nu) };
    Ok(&(&path.at(lo)? + &path.at(hi)?) * 0.5)
}

/// Heron mean `F_ν = (1 - ν)(A # B) + ν (A ∇ B)` with unweighted `#` and `∇`.
pub fn heron(a: &HermitianMatrix, b: &HermitianMatrix, nu: f64) -> Result<HermitianMatrix> {
    let nu = MeanParameter::new("nu", nu, WEIGHT_DOMAIN)?.value();
    let path = GeometricPath::new(a, b)?;
    heron_on(&path, a, b, nu)
}

pub(crate) fn heron_on(
    path: &GeometricPath,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    nu: f64,
) -> Result<HermitianMatrix> {
    let geometric = path.at(0.5)?;
    let arithmetic = &(a + b) * 0.5;
    Ok(&(&geometric * (1.0 - nu)) + &(&arithmetic * nu))
}

/// Heron weight `α(ν) = (1 - 2ν)²` paired with the Heinz mean `H_ν`.
pub fn heron_weight(nu: f64) -> f64 {
    let d = 1.0 - 2.0 * nu;
    d * d
}

/// Logarithmic mean `L(A, B) = ∫₀¹ A #_t B dt` by a Gauss-Legendre rule on `[0, 1]`.
pub fn logarithmic_mean(a: &HermitianMatrix, b: &HermitianMatrix, rule: &QuadratureRule) -> Result<HermitianMatrix> {
    let path = GeometricPath::new(a, b)?;
    logarithmic_mean_on(&path, rule)
}

pub(crate) fn logarithmic_mean_on(path: &GeometricPath, rule: &QuadratureRule) -> Result<HermitianMatrix> {
    if rule.kind() != QuadratureKind::GaussLegendre || rule.prefactor() != 1.0 {
        return Err(Error::InvalidInput(
            "logarithmic mean requires an unscaled Gauss-Legendre rule".into(),
        ));
    }
    rule.integrate_matrix(|t| path.at(t))
}
