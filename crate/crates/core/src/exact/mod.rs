//! Exact integer and rational linear algebra on tree Laplacians.
//!
//! Multiplicities of the irrational eigenvalues `2(1 - cos(rπ/s))` are
//! computed as the largest power of their minimal polynomial dividing the
//! characteristic polynomial; for symmetric matrices algebraic and geometric
//! multiplicity agree.

mod lambda;
mod matrix;
mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use lambda::LambdaParam;
pub use matrix::{bareiss_rank, char_poly, laplacian, rational_nullity, rational_nullspace, IntMatrix};
pub use poly::{cyclotomic, root_multiplicity, IntPolynomial};

use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("divisor is a nonzero constant")]
    ConstantDivisor,
    #[error("invalid eigenvalue parameters q={q}, b={b} (need q >= 1 and 0 <= b < q)")]
    InvalidLambda { q: u64, b: u64 },
}

pub fn minimal_poly_lambda(lp: &LambdaParam) -> IntPolynomial {
    lp.minimal_polynomial()
}

/// Exact `m_T(λ)` for `λ = 2(1 - cos(rπ/s))`.
pub fn multiplicity_exact(tree: &Tree, lp: &LambdaParam) -> usize {
    let p = char_poly(&laplacian(tree, false));
    root_multiplicity(&p, &lp.minimal_polynomial()).expect("characteristic polynomial is monic")
}

/// Exact `m_T(λ)` for rational `λ`.
pub fn multiplicity_rational(tree: &Tree, lambda: &BigRational) -> usize {
    rational_nullity(&laplacian(tree, false), lambda)
}

/// `m_T(1)`.
pub fn unit_multiplicity(tree: &Tree) -> usize {
    multiplicity_rational(tree, &BigRational::from_integer(BigInt::from(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_examples() {
        let unit = LambdaParam::new(1, 0).unwrap();
        assert_eq!(multiplicity_exact(&Tree::star(3), &unit), 2);
        assert_eq!(
            multiplicity_exact(&Tree::spider(&[2, 2, 2]), &LambdaParam::new(2, 0).unwrap()),
            2
        );
        assert_eq!(
            multiplicity_exact(&Tree::spider(&[2, 2, 2]), &LambdaParam::new(2, 1).unwrap()),
            2
        );
        assert_eq!(multiplicity_exact(&Tree::path(4), &unit), 0);
        assert_eq!(unit_multiplicity(&Tree::star(5)), 4);
    }
}
