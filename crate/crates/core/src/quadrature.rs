//! Gauss-Jacobi rules for Beta-type weights on `[0, 1]` and the integral
//! representations of real and matrix powers built on them.
//!
//! Every measure used here has the form `c · s^a (1-s)^b ds` with
//! `a, b ∈ (-1, 0)`, i.e. integrable singularities at both ends. The
//! singular factor is absorbed into the rule weights (Golub-Welsch on the
//! Jacobi recurrence), so integrands reduce to smooth rational functions
//! and convergence is spectral. Half-line integrals over `λ ∈ (0, ∞)` are
//! mapped onto `(0, 1)` by `λ = s / (1 - s)`; nothing is truncated.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Endpoint, Error, Interval, Result};
use crate::hermitian::{positive_definite_spectrum, spectral_decompose, HermitianMatrix};
use crate::jordan::quadratic_map_unchecked;

/// Node count used when none is specified.
pub const DEFAULT_NODES: usize = 64;
/// Node count of the matrix consistency checks.
pub const CONSISTENCY_NODES: usize = 128;

const EXACTNESS_TOLERANCE: f64 = 1e-10;
const RULE_MATCH_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureKind {
    GaussJacobi,
    GaussLegendre,
}

/// Nodes and weights integrating `g(s) · c · s^a (1-s)^b` over `[0, 1]`,
/// exact for polynomial `g` of degree `2k - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    exponents: (f64, f64),
    prefactor: f64,
    kind: QuadratureKind,
}

impl QuadratureRule {
    /// Gauss-Jacobi rule for `s^a (1-s)^b` on `[0, 1]` with `k` nodes.
    pub fn gauss_jacobi(a: f64, b: f64, k: usize) -> Result<Self> {
        let weight_domain = Interval {
            lower: Endpoint::Open(-1.0),
            upper: Endpoint::Unbounded,
        };
        if !weight_domain.contains(a) {
            return Err(Error::InvalidParameter {
                name: "a",
                value: a,
                admissible: weight_domain,
            });
        }
        if !weight_domain.contains(b) {
            return Err(Error::InvalidParameter {
                name: "b",
                value: b,
                admissible: weight_domain,
            });
        }
        if k == 0 {
            return Err(Error::InvalidInput("quadrature needs at least one node".into()));
        }

        let (diag, off) = shifted_jacobi_recurrence(a, b, k);
        let mut jacobi = DMatrix::zeros(k, k);
        for i in 0..k {
            jacobi[(i, i)] = diag[i];
        }
        for (i, &o) in off.iter().enumerate() {
            jacobi[(i, i + 1)] = o;
            jacobi[(i + 1, i)] = o;
        }
        let spec = spectral_decompose(&HermitianMatrix::symmetrized(jacobi))?;
        let mass = beta_function(a + 1.0, b + 1.0);
        let nodes = spec.eigenvalues().to_vec();
        let vectors = spec.eigenvectors();
        let weights = (0..k).map(|j| mass * vectors[(0, j)] * vectors[(0, j)]).collect();

        let rule = QuadratureRule {
            nodes,
            weights,
            exponents: (a, b),
            prefactor: 1.0,
            kind: if a == 0.0 && b == 0.0 {
                QuadratureKind::GaussLegendre
            } else {
                QuadratureKind::GaussJacobi
            },
        };
        rule.check_nodes()?;
        rule.check_exactness()?;
        Ok(rule)
    }

    /// Gauss-Legendre rule on `[0, 1]`.
    pub fn gauss_legendre(k: usize) -> Result<Self> {
        Self::gauss_jacobi(0.0, 0.0, k)
    }

    fn check_nodes(&self) -> Result<()> {
        let inside = self.nodes.iter().all(|&s| s > 0.0 && s < 1.0);
        let increasing = self.nodes.windows(2).all(|w| w[0] < w[1]);
        let positive = self.weights.iter().all(|&w| w > 0.0 && w.is_finite());
        if inside && increasing && positive {
            Ok(())
        } else {
            Err(Error::Numerical(format!(
                "degenerate Gauss-Jacobi rule for exponents {:?} with {} nodes",
                self.exponents,
                self.nodes.len()
            )))
        }
    }

    /// Compares `Σ w s^j` with the exact Beta moments for `j ≤ min(3, 2k-1)`.
    fn check_exactness(&self) -> Result<()> {
        let (a, b) = self.exponents;
        let max_degree = (2 * self.nodes.len() - 1).min(3);
        let mut exact = self.expected_mass();
        for j in 0..=max_degree {
            if j > 0 {
                let i = (j - 1) as f64;
                exact *= (a + 1.0 + i) / (a + b + 2.0 + i);
            }
            let approx = self.integrate(|s| s.powi(j as i32));
            if (approx - exact).abs() > EXACTNESS_TOLERANCE * exact.abs() {
                return Err(Error::Numerical(format!(
                    "quadrature moment {j} is {approx:e}, expected {exact:e}"
                )));
            }
        }
        Ok(())
    }

    fn scaled(mut self, factor: f64) -> Self {
        for w in self.weights.iter_mut() {
            *w *= factor;
        }
        self.prefactor *= factor;
        self
    }

    /// Nodes in `(0, 1)`, strictly increasing.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `(a, b)` of the absorbed weight `s^a (1-s)^b`.
    pub fn absorbed_exponents(&self) -> (f64, f64) {
        self.exponents
    }

    /// Constant multiplying the absorbed weight.
    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_k`.
    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `prefactor · B(a + 1, b + 1)`, the exact mass of the measure.
    pub fn expected_mass(&self) -> f64 {
        let (a, b) = self.exponents;
        self.prefactor * beta_function(a + 1.0, b + 1.0)
    }

    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&s, &w)| w * g(s)).sum()
    }

    /// `Σ w_k G(s_k)` for a matrix-valued integrand, summed in node order.
    pub fn integrate_matrix(
        &self,
        g: impl Fn(f64) -> Result<HermitianMatrix>,
    ) -> Result<HermitianMatrix> {
        let mut acc: Option<HermitianMatrix> = None;
        for (&s, &w) in self.nodes.iter().zip(&self.weights) {
            let term = &g(s)? * w;
            acc = Some(match acc {
                None => term,
                Some(sum) => &sum + &term,
            });
        }
        acc.ok_or_else(|| Error::InvalidInput("empty quadrature rule".into()))
    }
}

/// Recurrence coefficients of the monic polynomials orthogonal for
/// `s^a (1-s)^b` on `[0, 1]`: the `[-1, 1]` Jacobi coefficients with
/// `α = b`, `β = a`, shifted by `s = (1 + x) / 2`.
fn shifted_jacobi_recurrence(a: f64, b: f64, k: usize) -> (Vec<f64>, Vec<f64>) {
    let (alpha, beta) = (b, a);
    let ab = alpha + beta;
    let mut diag = Vec::with_capacity(k);
    for n in 0..k {
        let x = if n == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            let m = 2.0 * n as f64 + ab;
            (beta * beta - alpha * alpha) / (m * (m + 2.0))
        };
        diag.push(0.5 * (1.0 + x));
    }
    let mut off = Vec::with_capacity(k.saturating_sub(1));
    for n in 1..k {
        let nf = n as f64;
        let m = 2.0 * nf + ab;
        // n = 1 has a removable 0/0 when α + β = -1
        let sq = if n == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * nf * (nf + alpha) * (nf + beta) * (nf + ab) / (m * m * (m + 1.0) * (m - 1.0))
        };
        off.push(0.5 * sq.sqrt());
    }
    (diag, off)
}

fn beta_function(x: f64, y: f64) -> f64 {
    statrs::function::beta::beta(x, y)
}

/// Gauss-Jacobi rule for `s^a (1-s)^b` on `[0, 1]`.
pub fn gauss_jacobi_rule(a: f64, b: f64, k: usize) -> Result<QuadratureRule> {
    QuadratureRule::gauss_jacobi(a, b, k)
}

fn check_open(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    let admissible = Interval::open(lo, hi);
    if admissible.contains(value) {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            admissible,
        })
    }
}

/// Probability measure `sin((r-1)π)/π · s^{r-2} (1-s)^{1-r} ds`, `r ∈ (1, 2)`,
/// of the integral form of `A #_r B` above the unit interval.
pub fn mu_rule(r: f64, k: usize) -> Result<QuadratureRule> {
    let r = check_open("r", r, 1.0, 2.0)?;
    Ok(QuadratureRule::gauss_jacobi(r - 2.0, 1.0 - r, k)?.scaled(((r - 1.0) * PI).sin() / PI))
}

/// Probability measure `sin((r+1)π)/π · s^r (1-s)^{-(r+1)} ds`, `r ∈ (-1, 0)`,
/// of the integral form of `A #_r B` below zero.
pub fn nu_rule(r: f64, k: usize) -> Result<QuadratureRule> {
    let r = check_open("r", r, -1.0, 0.0)?;
    Ok(QuadratureRule::gauss_jacobi(r, -(r + 1.0), k)?.scaled(((r + 1.0) * PI).sin() / PI))
}

/// Which unit-length interval the exponent `r` of `x^r` lies in.
///
/// Each band has its own numerator `x^m` in the resolvent integrands:
/// `m = 0` below zero, `m = 1` on `(0, 1)`, `m = 2` on `(1, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerBand {
    Negative,
    Fractional,
    Superlinear,
}

impl PowerBand {
    pub const ALL: [PowerBand; 3] = [PowerBand::Negative, PowerBand::Fractional, PowerBand::Superlinear];

    fn numerator_degree(self) -> i32 {
        match self {
            PowerBand::Negative => 0,
            PowerBand::Fractional => 1,
            PowerBand::Superlinear => 2,
        }
    }

    pub fn domain(self) -> Interval {
        match self {
            PowerBand::Negative => Interval::open(-1.0, 0.0),
            PowerBand::Fractional => Interval::open(0.0, 1.0),
            PowerBand::Superlinear => Interval::open(1.0, 2.0),
        }
    }

    /// `sin((r - m + 1)π) / π`, positive on the band.
    pub fn prefactor(self, r: f64) -> f64 {
        let m = self.numerator_degree() as f64;
        ((r - m + 1.0) * PI).sin() / PI
    }

    /// Band containing `r`, if any.
    pub fn of(r: f64) -> Option<PowerBand> {
        Self::ALL.into_iter().find(|b| b.domain().contains(r))
    }
}

/// Shape of the integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepresentationForm {
    /// `∫₀^∞ x^m / (λ + x) · λ^{r-m} dλ`
    Resolvent,
    /// `∫₀^∞ x^m / (1 + αx) · α^{m-1-r} dα`
    InverseResolvent,
    /// `∫₀¹ x^m / (s + (1-s)x) · s^{r-m} (1-s)^{m-1-r} ds`
    UnitInterval,
}

/// One of the nine scalar integral representations of `x^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Representation {
    pub band: PowerBand,
    pub form: RepresentationForm,
}

impl Representation {
    pub const ALL: [Representation; 9] = {
        use PowerBand::*;
        use RepresentationForm::*;
        const fn rep(band: PowerBand, form: RepresentationForm) -> Representation {
            Representation { band, form }
        }
        [
            rep(Fractional, Resolvent),
            rep(Fractional, InverseResolvent),
            rep(Fractional, UnitInterval),
            rep(Superlinear, Resolvent),
            rep(Superlinear, InverseResolvent),
            rep(Superlinear, UnitInterval),
            rep(Negative, Resolvent),
            rep(Negative, InverseResolvent),
            rep(Negative, UnitInterval),
        ]
    };

    /// Stable identifier such as `superlinear-resolvent`.
    pub fn id(&self) -> String {
        self.to_string()
    }

    pub fn parse(id: &str) -> Option<Representation> {
        Self::ALL.into_iter().find(|r| r.id() == id)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let band = match self.band {
            PowerBand::Negative => "negative",
            PowerBand::Fractional => "fractional",
            PowerBand::Superlinear => "superlinear",
        };
        let form = match self.form {
            RepresentationForm::Resolvent => "resolvent",
            RepresentationForm::InverseResolvent => "inverse-resolvent",
            RepresentationForm::UnitInterval => "unit-interval",
        };
        write!(f, "{band}-{form}")
    }
}

/// Evaluates `x^r` through the chosen integral representation with a `k`-node rule.
pub fn scalar_power_integral(x: f64, r: f64, representation: Representation, k: usize) -> Result<f64> {
    let positive = Interval {
        lower: Endpoint::Open(0.0),
        upper: Endpoint::Unbounded,
    };
    if !positive.contains(x) {
        return Err(Error::InvalidParameter {
            name: "x",
            value: x,
            admissible: positive,
        });
    }
    let band = representation.band;
    if !band.domain().contains(r) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            admissible: band.domain(),
        });
    }
    let m = band.numerator_degree();
    let numerator = x.powi(m);
    let c = band.prefactor(r);

    match representation.form {
        RepresentationForm::Resolvent => {
            // λ^p dλ with λ = s/(1-s) becomes s^p (1-s)^{-p-2} ds; one power of
            // (1-s) is pulled back into the bounded integrand.
            let p = r - m as f64;
            let rule = QuadratureRule::gauss_jacobi(p, -p - 1.0, k)?;
            Ok(c * rule.integrate(|s| {
                let lambda = s / (1.0 - s);
                numerator / (lambda + x) / (1.0 - s)
            }))
        }
        RepresentationForm::InverseResolvent => {
            let p = m as f64 - 1.0 - r;
            let rule = QuadratureRule::gauss_jacobi(p, -p - 1.0, k)?;
            Ok(c * rule.integrate(|s| {
                let alpha = s / (1.0 - s);
                numerator / (1.0 + alpha * x) / (1.0 - s)
            }))
        }
        RepresentationForm::UnitInterval => {
            let rule = match band {
                PowerBand::Superlinear => mu_rule(r, k)?,
                PowerBand::Negative => nu_rule(r, k)?,
                PowerBand::Fractional => QuadratureRule::gauss_jacobi(r - 1.0, -r, k)?.scaled(c),
            };
            Ok(rule.integrate(|s| numerator / (s + (1.0 - s) * x)))
        }
    }
}

fn check_rule_matches(rule: &QuadratureRule, expected: &QuadratureRule) -> Result<()> {
    let (a, b) = rule.absorbed_exponents();
    let (ea, eb) = expected.absorbed_exponents();
    let close = |x: f64, y: f64| (x - y).abs() <= RULE_MATCH_TOLERANCE;
    if close(a, ea) && close(b, eb) && close(rule.prefactor(), expected.prefactor()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "quadrature rule with exponents ({a}, {b}) and prefactor {} does not match the measure for this r",
            rule.prefactor()
        )))
    }
}

/// `A #_r B ≈ Σ w_k ((1-s_k) B^{-1} + s_k {B^{-1} A B^{-1}})^{-1}`, `r ∈ (1, 2)`,
/// with `rule = mu_rule(r, k)`.
pub fn geometric_mean_integral_high(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    r: f64,
    rule: &QuadratureRule,
) -> Result<HermitianMatrix> {
    let r = check_open("r", r, 1.0, 2.0)?;
    check_rule_matches(rule, &mu_rule(r, 1)?)?;
    a.check_same_dim(b)?;
    positive_definite_spectrum(a, "first argument")?;
    let b_inv = positive_definite_spectrum(b, "second argument")?.power(-1.0)?;
    let sandwich = quadratic_map_unchecked(&b_inv, a);
    rule.integrate_matrix(|s| {
        let inner = &(&b_inv * (1.0 - s)) + &(&sandwich * s);
        positive_definite_spectrum(&inner, "integrand")?.power(-1.0)
    })
}

/// `A #_r B ≈ Σ w_k ((1-s_k) {A^{-1} B A^{-1}} + s_k A^{-1})^{-1}`, `r ∈ (-1, 0)`,
/// with `rule = nu_rule(r, k)`.
pub fn geometric_mean_integral_low(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    r: f64,
    rule: &QuadratureRule,
) -> Result<HermitianMatrix> {
    let r = check_open("r", r, -1.0, 0.0)?;
    check_rule_matches(rule, &nu_rule(r, 1)?)?;
    a.check_same_dim(b)?;
    positive_definite_spectrum(b, "second argument")?;
    let a_inv = positive_definite_spectrum(a, "first argument")?.power(-1.0)?;
    let sandwich = quadratic_map_unchecked(&a_inv, b);
    rule.integrate_matrix(|s| {
        let inner = &(&sandwich * (1.0 - s)) + &(&a_inv * s);
        positive_definite_spectrum(&inner, "integrand")?.power(-1.0)
    })
}
