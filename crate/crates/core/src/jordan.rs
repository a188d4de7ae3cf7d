//! Jordan product, quadratic representation `U_A` and Jordan inverse.
//!
//! `U_A(B) = {ABA}` is evaluated through the Jordan-algebraic formula
//! `2 (A∘B)∘A - A²∘B` rather than the associative product `ABA`, so the
//! identity `{ABA} = ABA` of special algebras stays a checkable fact.

use crate::error::{Error, Result};
use crate::hermitian::{spectral_decompose, HermitianMatrix};

/// `A∘B = (AB + BA) / 2`.
pub fn jordan_product(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    a.check_same_dim(b)?;
    Ok(jordan_product_unchecked(a, b))
}

pub(crate) fn jordan_product_unchecked(a: &HermitianMatrix, b: &HermitianMatrix) -> HermitianMatrix {
    // (AB + (AB)^T) / 2 since both factors are symmetric
    HermitianMatrix::symmetrized(a.matmul(b))
}

/// `U_A(B) = {ABA} = 2 (A∘B)∘A - A²∘B`.
pub fn quadratic_map(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    a.check_same_dim(b)?;
    Ok(quadratic_map_unchecked(a, b))
}

pub(crate) fn quadratic_map_unchecked(a: &HermitianMatrix, b: &HermitianMatrix) -> HermitianMatrix {
    let ab = jordan_product_unchecked(a, b);
    let twice = jordan_product_unchecked(&ab, a);
    let a2 = jordan_product_unchecked(a, a);
    let tail = jordan_product_unchecked(&a2, b);
    &(&twice * 2.0) - &tail
}

/// The Jordan inverse of `A`: the unique `B` with `A∘B = I` and `A²∘B = A`.
/// Requires every eigenvalue to be bounded away from zero.
pub fn jordan_inverse(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let spec = spectral_decompose(a)?;
    let tol = spec.pd_tolerance();
    let smallest = spec
        .eigenvalues()
        .iter()
        .copied()
        .min_by(|x, y| x.abs().total_cmp(&y.abs()))
        .unwrap_or(0.0);
    if smallest.abs() <= tol {
        return Err(Error::domain("matrix is singular", smallest));
    }
    spec.try_map(|x| 1.0 / x, |_| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{
        loewner_compare, matrix_power, EnsembleConfig, TrialSampler, DEFAULT_LOEWNER_TOLERANCE,
    };
    use proptest::prelude::*;

    fn m(n: usize, e: &[f64]) -> HermitianMatrix {
        HermitianMatrix::from_row_major(n, e).unwrap()
    }

    fn close(a: &HermitianMatrix, b: &HermitianMatrix, rel: f64) -> bool {
        a.relative_distance(b) <= rel
    }

    #[test]
    fn product_examples() {
        let b = m(2, &[1.0, 2.0, 2.0, 5.0]);
        assert_eq!(jordan_product(&HermitianMatrix::identity(2), &b).unwrap(), b);
        assert_eq!(
            jordan_product(&HermitianMatrix::scalar(2.0).unwrap(), &HermitianMatrix::scalar(3.0).unwrap())
                .unwrap()
                .get(0, 0),
            6.0
        );
        // diag(1,2)*[[0,1],[1,0]] = [[0,1],[2,0]]; its transpose averaged gives off-diagonal 1.5
        let p = jordan_product(&HermitianMatrix::diagonal(&[1.0, 2.0]).unwrap(), &m(2, &[0.0, 1.0, 1.0, 0.0]))
            .unwrap();
        assert_eq!(p, m(2, &[0.0, 1.5, 1.5, 0.0]));
        assert!(jordan_product(&b, &HermitianMatrix::identity(3)).is_err());
    }

    #[test]
    fn quadratic_map_examples() {
        let b = m(2, &[1.0, 2.0, 2.0, 5.0]);
        assert!(close(&quadratic_map(&HermitianMatrix::identity(2), &b).unwrap(), &b, 1e-15));
        let a = m(2, &[2.0, 1.0, 1.0, 2.0]);
        let a2 = HermitianMatrix::from_dmatrix(a.matmul(&a)).unwrap();
        assert!(close(&quadratic_map(&a, &HermitianMatrix::identity(2)).unwrap(), &a2, 1e-15));
        let s = quadratic_map(&HermitianMatrix::scalar(2.0).unwrap(), &HermitianMatrix::scalar(3.0).unwrap())
            .unwrap();
        assert_eq!(s.get(0, 0), 12.0);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(jordan_inverse(&HermitianMatrix::identity(3)).unwrap(), HermitianMatrix::identity(3));
        let d = jordan_inverse(&HermitianMatrix::diagonal(&[2.0, 4.0]).unwrap()).unwrap();
        assert!(close(&d, &HermitianMatrix::diagonal(&[0.5, 0.25]).unwrap(), 1e-15));
        let inv = jordan_inverse(&m(2, &[2.0, 1.0, 1.0, 2.0])).unwrap();
        let expected = m(2, &[2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0]);
        assert!(close(&inv, &expected, 1e-14));
        assert!(matches!(
            jordan_inverse(&HermitianMatrix::diagonal(&[1.0, 0.0]).unwrap()),
            Err(Error::DomainViolation { .. })
        ));
        // indefinite but invertible is fine
        let c = jordan_inverse(&HermitianMatrix::diagonal(&[-2.0, 4.0]).unwrap()).unwrap();
        assert!(close(&c, &HermitianMatrix::diagonal(&[-0.5, 0.25]).unwrap(), 1e-15));
    }

    fn triple(seed: u64, trial: usize, dim: usize) -> (HermitianMatrix, HermitianMatrix, HermitianMatrix) {
        let cfg = EnsembleConfig::new(dim, 0.1, 10.0, 1, seed);
        let mut s = TrialSampler::new(&cfg, trial).unwrap();
        (s.next_spd(), s.next_spd(), s.next_invertible())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn jordan_identity_holds(seed in any::<u64>(), dim in 1usize..=8) {
            let cfg = EnsembleConfig::new(dim, 0.1, 10.0, 1, seed);
            let mut s = TrialSampler::new(&cfg, 0).unwrap();
            let (a, b) = (s.next_symmetric(), s.next_symmetric());
            let a2 = jordan_product(&a, &a).unwrap();
            let lhs = jordan_product(&a, &jordan_product(&b, &a2).unwrap()).unwrap();
            let rhs = jordan_product(&jordan_product(&a, &b).unwrap(), &a2).unwrap();
            prop_assert!(close(&lhs, &rhs, 1e-9));
        }

        #[test]
        fn quadratic_map_matches_associative_triple(seed in any::<u64>(), dim in 1usize..=8) {
            let (a, b, c) = triple(seed, 0, dim);
            let jordan = quadratic_map(&c, &a).unwrap();
            let assoc = HermitianMatrix::from_dmatrix(c.matmul(&a) * c.as_dmatrix()).unwrap();
            prop_assert!(close(&jordan, &assoc, 1e-10));
            prop_assert!(close(&quadratic_map(&a, &b).unwrap(),
                &HermitianMatrix::from_dmatrix(a.matmul(&b) * a.as_dmatrix()).unwrap(), 1e-10));
        }

        #[test]
        fn fundamental_formula(seed in any::<u64>(), dim in 1usize..=8) {
            let (a, b, c) = triple(seed, 1, dim);
            let aba = quadratic_map(&a, &b).unwrap();
            let lhs = quadratic_map(&aba, &c).unwrap();
            let rhs = quadratic_map(&a, &quadratic_map(&b, &quadratic_map(&a, &c).unwrap()).unwrap()).unwrap();
            prop_assert!(close(&lhs, &rhs, 1e-9));
        }

        #[test]
        fn quadratic_map_of_inverse_inverts(seed in any::<u64>(), dim in 1usize..=8) {
            let (a, b, c) = triple(seed, 2, dim);
            for x in [&a, &c] {
                let xi = jordan_inverse(x).unwrap();
                let back = quadratic_map(&xi, &quadratic_map(x, &b).unwrap()).unwrap();
                prop_assert!(close(&back, &b, 1e-9));
            }
        }

        #[test]
        fn inverse_of_triple_product(seed in any::<u64>(), dim in 1usize..=8) {
            let (a, b, _) = triple(seed, 3, dim);
            let lhs = jordan_inverse(&quadratic_map(&a, &b).unwrap()).unwrap();
            let ai = jordan_inverse(&a).unwrap();
            let bi = jordan_inverse(&b).unwrap();
            let rhs = quadratic_map(&ai, &bi).unwrap();
            prop_assert!(close(&lhs, &rhs, 1e-9));
        }

        #[test]
        fn quadratic_map_squares(seed in any::<u64>(), dim in 1usize..=8) {
            let (a, b, c) = triple(seed, 4, dim);
            for x in [&a, &c] {
                let twice = quadratic_map(x, &quadratic_map(x, &b).unwrap()).unwrap();
                let x2 = jordan_product(x, x).unwrap();
                prop_assert!(close(&twice, &quadratic_map(&x2, &b).unwrap(), 1e-9));
            }
        }

        #[test]
        fn quadratic_map_preserves_positivity(seed in any::<u64>(), dim in 1usize..=8) {
            let (_, b, c) = triple(seed, 5, dim);
            let u = quadratic_map(&c, &b).unwrap();
            let z = HermitianMatrix::zeros(dim);
            prop_assert!(loewner_compare(&z, &u, DEFAULT_LOEWNER_TOLERANCE).unwrap().is_le());
        }

        #[test]
        fn inverse_satisfies_defining_equations(seed in any::<u64>(), dim in 1usize..=8) {
            let (_, _, c) = triple(seed, 6, dim);
            let ci = jordan_inverse(&c).unwrap();
            let c2 = jordan_product(&c, &c).unwrap();
            let id = HermitianMatrix::identity(dim);
            let tol = 1e-9 * c.frobenius_norm();
            prop_assert!((&jordan_product(&c, &ci).unwrap() - &id).frobenius_norm() <= tol.max(1e-9));
            prop_assert!((&jordan_product(&c2, &ci).unwrap() - &c).frobenius_norm() <= tol);
        }

        #[test]
        fn powers_add_under_jordan_product(
            seed in any::<u64>(),
            dim in 1usize..=8,
            t in prop::sample::select(vec![-1.0, -0.5, 0.5, 1.0, 1.5]),
            s in prop::sample::select(vec![-1.0, -0.5, 0.5, 1.0, 1.5]),
        ) {
            let (a, _, _) = triple(seed, 7, dim);
            let lhs = jordan_product(&matrix_power(&a, t).unwrap(), &matrix_power(&a, s).unwrap()).unwrap();
            let rhs = matrix_power(&a, t + s).unwrap();
            prop_assert!((&lhs - &rhs).frobenius_norm() <= 1e-9 * rhs.frobenius_norm());
        }
    }
}
