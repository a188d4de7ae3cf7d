//! Operator means on real symmetric positive definite matrices.
//!
//! The crate realizes the special Jordan algebra of real symmetric matrices
//! and, on top of it, the weighted geometric mean `A #_r B` extended to
//! `r ∈ (-1, 2)`, the arithmetic and harmonic means, the Heinz, Heron and
//! logarithmic means, and Gauss-Jacobi evaluations of their integral
//! representations. [`verify`] turns the algebraic identities and Loewner
//! inequalities relating them into seeded randomized checks.

pub mod error;
pub mod hermitian;
pub mod io;
pub mod jordan;
pub mod means;
pub mod quadrature;
pub mod verify;

pub use error::{Error, Interval, Result};
pub use hermitian::{
    apply_spectral_function, loewner_compare, matrix_power, random_spd, spectral_decompose, EnsembleConfig,
    HermitianMatrix, LoewnerResult, LoewnerVerdict, SpectralDecomposition, TrialSampler,
};
pub use jordan::{jordan_inverse, jordan_product, quadratic_map};
pub use means::{
    heinz, heron, logarithmic_mean, weighted_arithmetic, weighted_geometric, weighted_harmonic, MeanParameter,
};
pub use quadrature::{
    gauss_jacobi_rule, geometric_mean_integral_high, geometric_mean_integral_low, mu_rule, nu_rule,
    scalar_power_integral, PowerBand, QuadratureRule, Representation, RepresentationForm,
};
pub use verify::{
    run_all_suites, run_convexity_suite, run_identity_suite, run_inequality_suite, run_integral_consistency_suite, CheckOutcome,
    SuiteId, Tolerances, Verdict, VerificationReport, Verifier,
};
