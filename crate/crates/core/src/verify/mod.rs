//! Seeded randomized verification of the identities and Loewner inequalities
//! satisfied by the means.
//!
//! Every trial draws its matrices from [`TrialSampler`] keyed by
//! `(seed, trial)`, so trials can run in any order or in parallel and a
//! single failing trial can be replayed from the recorded seed and index.
//! Parameter grids are fixed.

mod report;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use report::{CheckOutcome, CheckSummary, Summary, Verdict, VerificationReport};

use crate::error::{Error, Result};
use crate::hermitian::{loewner_compare, matrix_power, EnsembleConfig, HermitianMatrix, TrialSampler};
use crate::jordan::{jordan_inverse, jordan_product, quadratic_map};
use crate::means::{
    heinz_on, heron_on, heron_weight, logarithmic_mean_on, weighted_arithmetic, weighted_geometric, weighted_harmonic,
    GeometricPath, DEFAULT_LOG_MEAN_NODES,
};
use crate::quadrature::{
    geometric_mean_integral_high, geometric_mean_integral_low, mu_rule, nu_rule, scalar_power_integral, PowerBand,
    QuadratureRule, Representation, CONSISTENCY_NODES, DEFAULT_NODES,
};

/// `r` values outside `[0, 1]` exercised by the identity suite.
pub const EXTENDED_R_GRID: [f64; 6] = [-0.75, -0.5, -0.25, 1.25, 1.5, 1.75];
/// Classical weights in `(0, 1)`.
pub const CLASSICAL_R_GRID: [f64; 3] = [0.25, 0.5, 0.75];
/// `r` values of the reverse Young checks.
pub const REVERSE_YOUNG_R_GRID: [f64; 4] = [-0.75, -0.25, 1.25, 1.75];
/// Heinz weights with `H_ν ≤ F_{α(ν)}`.
pub const HEINZ_INNER_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
/// Heinz weights with `H_ν ≥ F_{α(ν)}`.
pub const HEINZ_OUTER_GRID: [f64; 4] = [-0.75, -0.25, 1.25, 1.75];
/// Heron weights bounding the logarithmic mean.
pub const LOG_HERON_GRID: [f64; 3] = [1.0 / 3.0, 0.5, 1.0];
/// Heron weights whose pairwise order is checked.
pub const HERON_MONOTONE_GRID: [f64; 4] = [1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0];
/// `(β, γ)` grid of the Heron-below-Heinz comparison.
pub const HERON_BETA_GRID: [f64; 3] = [1.0 / 3.0, 2.0 / 3.0, 1.0];
pub const HEINZ_GAMMA_GRID: [f64; 3] = [1.0, 1.25, 1.5];
/// Powers whose operator convexity is checked (closed endpoints included).
pub const CONVEX_POWER_GRID: [f64; 5] = [-1.0, -0.5, 1.0, 1.5, 2.0];
pub const CONVEX_MEAN_GRID: [f64; 2] = [-0.5, 1.5];
pub const CONVEX_LAMBDA_GRID: [f64; 3] = [0.25, 0.5, 0.75];
pub const INTEGRAL_HIGH_GRID: [f64; 3] = [1.25, 1.5, 1.75];
pub const INTEGRAL_LOW_GRID: [f64; 3] = [-0.75, -0.5, -0.25];
/// Arguments of the scalar representation grid.
pub const SCALAR_X_GRID: [f64; 4] = [0.1, 0.5, 2.0, 10.0];
const HOMOGENEITY_FACTORS: [f64; 2] = [0.5, 2.0];
const POWER_GRID: [f64; 5] = [-1.0, -0.5, 0.5, 1.0, 1.5];

/// Nine interior points of a band: `lo + 0.1, ..., lo + 0.9`.
pub fn band_grid(band: PowerBand) -> [f64; 9] {
    let lo = match band {
        PowerBand::Negative => -1.0,
        PowerBand::Fractional => 0.0,
        PowerBand::Superlinear => 1.0,
    };
    std::array::from_fn(|i| lo + (i + 1) as f64 / 10.0)
}

/// Pass thresholds of the suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Scale-relative Frobenius residual of algebraic identities.
    pub equality: f64,
    /// Scale-relative Loewner tolerance of inequalities.
    pub loewner: f64,
    /// Quadrature vs spectral evaluation of matrix means.
    pub integral: f64,
    /// Absolute error of scalar integral representations.
    pub scalar: f64,
    /// Deviation of measure masses from one.
    pub mass: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            equality: 1e-8,
            loewner: 1e-9,
            integral: 1e-6,
            scalar: 1e-7,
            mass: 1e-10,
        }
    }
}

impl Tolerances {
    /// All thresholds multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Tolerances {
            equality: self.equality * factor,
            loewner: self.loewner * factor,
            integral: self.integral * factor,
            scalar: self.scalar * factor,
            mass: self.mass * factor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteId {
    Identities,
    Inequalities,
    Convexity,
    Integral,
    All,
}

impl SuiteId {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Identities => "identities",
            SuiteId::Inequalities => "inequalities",
            SuiteId::Convexity => "convexity",
            SuiteId::Integral => "integral",
            SuiteId::All => "all",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            SuiteId::Identities,
            SuiteId::Inequalities,
            SuiteId::Convexity,
            SuiteId::Integral,
            SuiteId::All,
        ]
        .into_iter()
        .find(|id| id.as_str() == s)
        .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

/// Runs suites with configurable tolerances and node counts.
#[derive(Debug, Clone)]
pub struct Verifier {
    pub tolerances: Tolerances,
    /// Nodes of the Gauss-Jacobi rules in the integral consistency suite.
    pub integral_nodes: usize,
    /// Nodes of the Gauss-Legendre rule for the logarithmic mean.
    pub log_mean_nodes: usize,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            tolerances: Tolerances::default(),
            integral_nodes: CONSISTENCY_NODES,
            log_mean_nodes: DEFAULT_LOG_MEAN_NODES,
        }
    }
}

/// Collects the outcomes of one trial.
struct Trial<'a> {
    index: usize,
    seed: u64,
    tol: &'a Tolerances,
    outcomes: Vec<CheckOutcome>,
}

fn params(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|&(n, v)| (n.to_string(), v)).collect()
}

impl<'a> Trial<'a> {
    fn new(index: usize, seed: u64, tol: &'a Tolerances) -> Self {
        Trial {
            index,
            seed,
            tol,
            outcomes: Vec::new(),
        }
    }

    fn push(&mut self, id: &str, p: &[(&str, f64)], verdict: Verdict, magnitude: f64, tolerance: f64, note: Option<String>) {
        let magnitude = if magnitude.is_finite() { magnitude } else { f64::MAX };
        self.outcomes.push(CheckOutcome {
            check_id: id.to_string(),
            trial: self.index,
            verdict,
            violation_magnitude: magnitude,
            tolerance,
            seed: self.seed,
            parameters: params(p),
            note,
        });
    }

    fn error(&mut self, id: &str, p: &[(&str, f64)], tolerance: f64, err: Error) {
        self.push(id, p, Verdict::Fail, f64::MAX, tolerance, Some(err.to_string()));
    }

    fn graded(&mut self, id: &str, p: &[(&str, f64)], magnitude: f64, tolerance: f64) {
        let verdict = if magnitude <= tolerance { Verdict::Pass } else { Verdict::Fail };
        self.push(id, p, verdict, magnitude, tolerance, None);
    }

    /// Records `lhs = rhs` at the equality tolerance.
    fn equal(&mut self, id: &str, p: &[(&str, f64)], lhs: Result<HermitianMatrix>, rhs: Result<HermitianMatrix>) {
        let tol = self.tol.equality;
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => self.graded(id, p, l.relative_distance(&r), tol),
            (Err(e), _) | (_, Err(e)) => self.error(id, p, tol, e),
        }
    }

    /// Records `lower ≤ upper` in the Loewner order.
    fn below(&mut self, id: &str, p: &[(&str, f64)], lower: Result<HermitianMatrix>, upper: Result<HermitianMatrix>) {
        let tol = self.tol.loewner;
        let cmp = lower.and_then(|l| upper.and_then(|u| loewner_compare(&l, &u, tol)));
        match cmp {
            Ok(c) => self.graded(id, p, c.le_violation(), tol),
            Err(e) => self.error(id, p, tol, e),
        }
    }
}

fn mix(x: &HermitianMatrix, y: &HermitianMatrix, lambda: f64) -> HermitianMatrix {
    &(x * (1.0 - lambda)) + &(y * lambda)
}

fn combine<T>(x: Result<HermitianMatrix>, y: Result<HermitianMatrix>, f: T) -> Result<HermitianMatrix>
where
    T: FnOnce(HermitianMatrix, HermitianMatrix) -> HermitianMatrix,
{
    Ok(f(x?, y?))
}

impl Verifier {
    fn run_trials<F>(&self, suite: SuiteId, config: &EnsembleConfig, per_trial: F) -> Result<VerificationReport>
    where
        F: Fn(&mut Trial<'_>, &mut TrialSampler) + Sync,
    {
        config.validate()?;
        let outcomes: Vec<Vec<CheckOutcome>> = (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let mut sampler = TrialSampler::new(config, t).expect("validated config");
                let mut trial = Trial::new(t, config.seed, &self.tolerances);
                per_trial(&mut trial, &mut sampler);
                trial.outcomes
            })
            .collect();
        Ok(VerificationReport::new(
            suite.as_str(),
            *config,
            outcomes.into_iter().flatten().collect(),
        ))
    }

    /// Jordan-algebra identities and the algebraic identities of the extended
    /// geometric mean.
    pub fn identity_suite(&self, config: &EnsembleConfig) -> Result<VerificationReport> {
        self.run_trials(SuiteId::Identities, config, |t, sampler| {
            let a = sampler.next_spd();
            let b = sampler.next_spd();
            let c = sampler.next_invertible();
            identity_trial(t, &a, &b, &c);
        })
    }

    /// Young and reverse Young orderings, Heinz vs Heron, and the
    /// logarithmic/Heron/Heinz chain.
    pub fn inequality_suite(&self, config: &EnsembleConfig) -> Result<VerificationReport> {
        let log_rule = QuadratureRule::gauss_legendre(self.log_mean_nodes)?;
        self.run_trials(SuiteId::Inequalities, config, |t, sampler| {
            let a = sampler.next_spd();
            let b = sampler.next_spd();
            inequality_trial(t, &a, &b, &log_rule);
        })
    }

    /// Operator convexity of powers and separate convexity of the mean.
    pub fn convexity_suite(&self, config: &EnsembleConfig) -> Result<VerificationReport> {
        self.run_trials(SuiteId::Convexity, config, |t, sampler| {
            let a = sampler.next_spd();
            let b1 = sampler.next_spd();
            let b2 = sampler.next_spd();
            convexity_trial(t, &a, &b1, &b2);
        })
    }

    /// Quadrature evaluations of the mean against the spectral definition,
    /// plus the scalar representation grid and measure masses (recorded
    /// under trial 0).
    pub fn integral_suite(&self, config: &EnsembleConfig) -> Result<VerificationReport> {
        let k = self.integral_nodes;
        if k < 16 {
            return Err(Error::InvalidInput(format!("integral suite needs at least 16 nodes, got {k}")));
        }
        let high: Vec<_> = INTEGRAL_HIGH_GRID
            .iter()
            .map(|&r| Ok((r, mu_rule(r, k)?, mu_rule(r, 2 * k)?)))
            .collect::<Result<_>>()?;
        let low: Vec<_> = INTEGRAL_LOW_GRID
            .iter()
            .map(|&r| Ok((r, nu_rule(r, k)?, nu_rule(r, 2 * k)?)))
            .collect::<Result<_>>()?;
        let mut report = self.run_trials(SuiteId::Integral, config, |t, sampler| {
            let a = sampler.next_spd();
            let b = sampler.next_spd();
            let tol = t.tol.integral;
            for (r, rule, fine) in &high {
                integral_check(t, "integral.matrix-above-one", *r, k, tol, &a, &b, |x| {
                    geometric_mean_integral_high(&a, &b, *r, if x { fine } else { rule })
                });
            }
            for (r, rule, fine) in &low {
                integral_check(t, "integral.matrix-below-zero", *r, k, tol, &a, &b, |x| {
                    geometric_mean_integral_low(&a, &b, *r, if x { fine } else { rule })
                });
            }
        })?;
        let mut extra = Trial::new(0, config.seed, &self.tolerances);
        scalar_grid(&mut extra, DEFAULT_NODES);
        report.outcomes.extend(extra.outcomes);
        Ok(VerificationReport::new(SuiteId::Integral.as_str(), *config, report.outcomes))
    }

    pub fn run(&self, suite: SuiteId, config: &EnsembleConfig) -> Result<VerificationReport> {
        match suite {
            SuiteId::Identities => self.identity_suite(config),
            SuiteId::Inequalities => self.inequality_suite(config),
            SuiteId::Convexity => self.convexity_suite(config),
            SuiteId::Integral => self.integral_suite(config),
            SuiteId::All => {
                let parts = vec![
                    self.identity_suite(config)?,
                    self.inequality_suite(config)?,
                    self.convexity_suite(config)?,
                    self.integral_suite(config)?,
                ];
                Ok(VerificationReport::merge(SuiteId::All.as_str(), *config, parts))
            }
        }
    }
}

fn identity_trial(t: &mut Trial<'_>, a: &HermitianMatrix, b: &HermitianMatrix, c: &HermitianMatrix) {
    // Jordan-algebra structure, exercised on the indefinite draw as well.
    let c2 = jordan_product(c, c);
    let lhs = c2.clone().and_then(|c2| jordan_product(a, &c2)).and_then(|x| jordan_product(c, &x));
    let rhs = jordan_product(c, a).and_then(|ca| c2.and_then(|c2| jordan_product(&ca, &c2)));
    t.equal("identity.jordan-identity", &[], lhs, rhs);

    let lhs = quadratic_map(a, b).and_then(|aba| quadratic_map(&aba, c));
    let rhs = quadratic_map(a, c)
        .and_then(|x| quadratic_map(b, &x))
        .and_then(|x| quadratic_map(a, &x));
    t.equal("identity.fundamental-formula", &[], lhs, rhs);

    let lhs = quadratic_map(c, b).and_then(|x| jordan_inverse(c).and_then(|ci| quadratic_map(&ci, &x)));
    t.equal("identity.quadratic-map-inverse", &[], lhs, Ok(b.clone()));

    let lhs = quadratic_map(c, b).and_then(|x| jordan_inverse(&x));
    let rhs = jordan_inverse(c).and_then(|ci| jordan_inverse(b).and_then(|bi| quadratic_map(&ci, &bi)));
    t.equal("identity.triple-product-inverse", &[], lhs, rhs);

    let lhs = quadratic_map(c, b).and_then(|x| quadratic_map(c, &x));
    let rhs = jordan_product(c, c).and_then(|c2| quadratic_map(&c2, b));
    t.equal("identity.quadratic-map-square", &[], lhs, rhs);

    t.below(
        "identity.quadratic-map-positivity",
        &[],
        Ok(HermitianMatrix::zeros(b.dim())),
        quadratic_map(c, b),
    );

    for &p in &POWER_GRID {
        for &q in &POWER_GRID {
            let lhs = matrix_power(a, p).and_then(|x| matrix_power(a, q).and_then(|y| jordan_product(&x, &y)));
            t.equal("identity.power-additivity", &[("t", p), ("s", q)], lhs, matrix_power(a, p + q));
        }
    }

    // Extended geometric mean.
    let g = |x: &HermitianMatrix, y: &HermitianMatrix, r: f64| weighted_geometric(x, y, r);
    for &r in &INTEGRAL_HIGH_GRID {
        let rhs = g(a, b, 2.0 - r).and_then(|m| jordan_inverse(&m)).and_then(|m| quadratic_map(b, &m));
        t.equal("identity.reflection-above-one", &[("r", r)], g(a, b, r), rhs);
    }
    for &r in &INTEGRAL_LOW_GRID {
        let rhs = g(a, b, -r).and_then(|m| jordan_inverse(&m)).and_then(|m| quadratic_map(a, &m));
        t.equal("identity.reflection-below-zero", &[("r", r)], g(a, b, r), rhs);
    }
    let inverses = jordan_inverse(a).and_then(|ai| Ok((ai, jordan_inverse(b)?)));
    for &r in EXTENDED_R_GRID.iter().chain(&CLASSICAL_R_GRID) {
        t.equal("identity.swap", &[("r", r)], g(a, b, r), g(b, a, 1.0 - r));

        let lhs = g(a, b, r).and_then(|m| jordan_inverse(&m));
        let rhs = inverses.clone().and_then(|(ai, bi)| g(&ai, &bi, r));
        t.equal("identity.inverse", &[("r", r)], lhs, rhs);

        for &alpha in &HOMOGENEITY_FACTORS {
            for &beta in &HOMOGENEITY_FACTORS {
                let lhs = g(&(a * alpha), &(b * beta), r);
                let factor = alpha.powf(1.0 - r) * beta.powf(r);
                let rhs = g(a, b, r).map(|m| &m * factor);
                t.equal("identity.homogeneity", &[("r", r), ("alpha", alpha), ("beta", beta)], lhs, rhs);
            }
        }

        let lhs = g(a, b, r).and_then(|m| quadratic_map(c, &m));
        let rhs = quadratic_map(c, a).and_then(|ca| quadratic_map(c, b).and_then(|cb| g(&ca, &cb, r)));
        t.equal("identity.congruence", &[("r", r)], lhs, rhs);
    }
}

fn inequality_trial(t: &mut Trial<'_>, a: &HermitianMatrix, b: &HermitianMatrix, log_rule: &QuadratureRule) {
    let path = match GeometricPath::new(a, b) {
        Ok(p) => p,
        Err(e) => {
            let tol = t.tol.loewner;
            t.error("inequality.setup", &[], tol, e);
            return;
        }
    };

    for &r in &REVERSE_YOUNG_R_GRID {
        let geo = path.at(r);
        t.below(
            "inequality.reverse-young.arithmetic-below-geometric",
            &[("r", r)],
            weighted_arithmetic(a, b, r),
            geo.clone(),
        );
        harmonic_check(t, "inequality.reverse-young.geometric-below-harmonic", r, geo, weighted_harmonic(a, b, r));
    }

    for &nu in &CLASSICAL_R_GRID {
        let geo = path.at(nu);
        let id = "inequality.young.harmonic-below-geometric";
        match weighted_harmonic(a, b, nu) {
            Err(Error::DomainViolation { eigenvalue, .. }) => t.push(
                id,
                &[("nu", nu), ("harmonic_min_eigenvalue", eigenvalue)],
                Verdict::DomainViolation,
                0.0,
                t.tol.loewner,
                None,
            ),
            h => t.below(id, &[("nu", nu)], h, geo.clone()),
        }
        t.below(
            "inequality.young.geometric-below-arithmetic",
            &[("nu", nu)],
            geo,
            weighted_arithmetic(a, b, nu),
        );
    }

    let heron = |nu: f64| heron_on(&path, a, b, nu);
    for &nu in &HEINZ_INNER_GRID {
        let p = [("nu", nu), ("alpha", heron_weight(nu))];
        t.below("inequality.heinz-below-heron", &p, heinz_on(&path, nu), heron(heron_weight(nu)));
    }
    for &nu in &HEINZ_OUTER_GRID {
        let p = [("nu", nu), ("alpha", heron_weight(nu))];
        t.below("inequality.heinz-above-heron", &p, heron(heron_weight(nu)), heinz_on(&path, nu));
    }

    let log_mean = logarithmic_mean_on(&path, log_rule);
    for &beta in &LOG_HERON_GRID {
        t.below("inequality.logarithmic-below-heron", &[("beta", beta)], log_mean.clone(), heron(beta));
    }
    for (i, &b1) in HERON_MONOTONE_GRID.iter().enumerate() {
        for &b2 in &HERON_MONOTONE_GRID[i + 1..] {
            t.below("inequality.heron-monotone", &[("beta1", b1), ("beta2", b2)], heron(b1), heron(b2));
        }
    }
    for &beta in &HERON_BETA_GRID {
        for &gamma in &HEINZ_GAMMA_GRID {
            let p = [("beta", beta), ("gamma", gamma)];
            t.below("inequality.heron-below-heinz", &p, heron(beta), heinz_on(&path, gamma));
        }
    }
}

/// `geo ≤ harm`, or a domain violation when the harmonic combination is indefinite.
fn harmonic_check(
    t: &mut Trial<'_>,
    id: &str,
    r: f64,
    geo: Result<HermitianMatrix>,
    harm: Result<HermitianMatrix>,
) {
    match harm {
        Err(Error::DomainViolation { eigenvalue, .. }) => {
            let tol = t.tol.loewner;
            t.push(
                id,
                &[("r", r), ("harmonic_min_eigenvalue", eigenvalue)],
                Verdict::DomainViolation,
                0.0,
                tol,
                None,
            );
        }
        h => t.below(id, &[("r", r)], geo, h),
    }
}

fn convexity_trial(t: &mut Trial<'_>, a: &HermitianMatrix, b1: &HermitianMatrix, b2: &HermitianMatrix) {
    for &lambda in &CONVEX_LAMBDA_GRID {
        let mixed = mix(b1, b2, lambda);
        for &r in &CONVEX_POWER_GRID {
            let rhs = combine(matrix_power(b1, r), matrix_power(b2, r), |x, y| mix(&x, &y, lambda));
            t.below("convexity.power", &[("r", r), ("lambda", lambda)], matrix_power(&mixed, r), rhs);
        }
        for &r in &CONVEX_MEAN_GRID {
            let p = [("r", r), ("lambda", lambda)];
            let rhs = combine(weighted_geometric(a, b1, r), weighted_geometric(a, b2, r), |x, y| mix(&x, &y, lambda));
            t.below("convexity.mean-second-argument", &p, weighted_geometric(a, &mixed, r), rhs);
            let rhs = combine(weighted_geometric(b1, a, r), weighted_geometric(b2, a, r), |x, y| mix(&x, &y, lambda));
            t.below("convexity.mean-first-argument", &p, weighted_geometric(&mixed, a, r), rhs);
        }
    }
}

/// Compares a quadrature evaluation with the spectral mean; on failure
/// retries with twice the nodes and records the refined residual, so a
/// resolution problem (residual drops) is distinguishable from a bug.
#[allow(clippy::too_many_arguments)]
fn integral_check(
    t: &mut Trial<'_>,
    id: &str,
    r: f64,
    k: usize,
    tol: f64,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    quad: impl Fn(bool) -> Result<HermitianMatrix>,
) {
    let spectral = match weighted_geometric(a, b, r) {
        Ok(m) => m,
        Err(e) => return t.error(id, &[("r", r), ("nodes", k as f64)], tol, e),
    };
    let residual = match quad(false) {
        Ok(q) => q.relative_distance(&spectral),
        Err(e) => return t.error(id, &[("r", r), ("nodes", k as f64)], tol, e),
    };
    if residual <= tol {
        t.graded(id, &[("r", r), ("nodes", k as f64)], residual, tol);
        return;
    }
    let retry = quad(true).map(|q| q.relative_distance(&spectral)).unwrap_or(f64::MAX);
    t.graded(
        id,
        &[("r", r), ("nodes", k as f64), ("retry_nodes", (2 * k) as f64), ("retry_residual", retry)],
        residual,
        tol,
    );
}

/// Scalar representation grid and measure masses.
fn scalar_grid(t: &mut Trial<'_>, k: usize) {
    let (scalar_tol, mass_tol) = (t.tol.scalar, t.tol.mass);
    for rep in Representation::ALL {
        let id = format!("integral.scalar.{rep}");
        for r in band_grid(rep.band) {
            for &x in &SCALAR_X_GRID {
                let p = [("x", x), ("r", r), ("nodes", k as f64)];
                match scalar_power_integral(x, r, rep, k) {
                    Ok(v) => t.graded(&id, &p, (v - x.powf(r)).abs(), scalar_tol),
                    Err(e) => t.error(&id, &p, scalar_tol, e),
                }
            }
        }
    }
    for (id, band, make) in [
        ("integral.measure-mass.above-one", PowerBand::Superlinear, mu_rule as fn(f64, usize) -> Result<QuadratureRule>),
        ("integral.measure-mass.below-zero", PowerBand::Negative, nu_rule),
    ] {
        for r in band_grid(band) {
            let p = [("r", r), ("nodes", k as f64)];
            match make(r, k) {
                Ok(rule) => t.graded(id, &p, (rule.total_mass() - 1.0).abs(), mass_tol),
                Err(e) => t.error(id, &p, mass_tol, e),
            }
        }
    }
}

/// Runs the identity suite with default tolerances.
pub fn run_identity_suite(config: &EnsembleConfig) -> Result<VerificationReport> {
    Verifier::default().identity_suite(config)
}

/// Runs the inequality suite with default tolerances.
pub fn run_inequality_suite(config: &EnsembleConfig) -> Result<VerificationReport> {
    Verifier::default().inequality_suite(config)
}

/// Runs the convexity suite with default tolerances.
pub fn run_convexity_suite(config: &EnsembleConfig) -> Result<VerificationReport> {
    Verifier::default().convexity_suite(config)
}

/// Runs the integral consistency suite with `k` nodes (`k ≥ 16`).
pub fn run_integral_consistency_suite(config: &EnsembleConfig, k: usize) -> Result<VerificationReport> {
    Verifier {
        integral_nodes: k,
        ..Verifier::default()
    }
    .integral_suite(config)
}

/// Runs every suite with default tolerances and merges the outcomes.
pub fn run_all_suites(config: &EnsembleConfig) -> Result<VerificationReport> {
    Verifier::default().run(SuiteId::All, config)
}
