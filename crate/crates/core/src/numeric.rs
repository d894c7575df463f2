//! Floating-point oracle: cyclic Jacobi eigendecomposition, eigenvalue
//! clustering, residuals and numeric rank.

use thiserror::Error;

use crate::exact::IntMatrix;
use crate::tree::Tree;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
pub const MIN_CLUSTER_TAU: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("matrix is not symmetric")]
    NonSymmetric,
    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("vector is identically zero")]
    ZeroVector,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no vectors given")]
    EmptyInput,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub clusters: Vec<Cluster>,
    pub tolerance: f64,
}

impl Spectrum {
    /// Groups sorted eigenvalues whose consecutive gaps are `≤ tau`; the
    /// representative is the cluster mean.
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, tau: f64) -> Spectrum {
        eigenvalues.sort_by(f64::total_cmp);
        let mut clusters: Vec<Cluster> = Vec::new();
        let mut start = 0;
        for i in 1..=eigenvalues.len() {
            if i == eigenvalues.len() || eigenvalues[i] - eigenvalues[i - 1] > tau {
                let members = &eigenvalues[start..i];
                clusters.push(Cluster {
                    value: members.iter().sum::<f64>() / members.len() as f64,
                    multiplicity: members.len(),
                });
                start = i;
            }
        }
        Spectrum {
            eigenvalues,
            clusters,
            tolerance: tau,
        }
    }

    /// Multiplicity of the cluster within `tolerance` of `lambda`, or 0.
    pub fn multiplicity_near(&self, lambda: f64) -> usize {
        self.clusters
            .iter()
            .filter(|c| (c.value - lambda).abs() <= self.tolerance)
            .map(|c| c.multiplicity)
            .sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).max().unwrap_or(0)
    }
}

/// Eigenvalues and, optionally, orthonormal eigenvectors (`vectors[k]` pairs
/// with `spectrum.eigenvalues[k]`).
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub spectrum: Spectrum,
    pub vectors: Option<Vec<Vec<f64>>>,
}

pub fn eigen_symmetric(m: &IntMatrix, tol: f64) -> Result<Spectrum, NumericError> {
    if !m.is_symmetric() {
        return Err(NumericError::NonSymmetric);
    }
    Ok(jacobi(m.to_f64(), m.order(), tol, DEFAULT_MAX_SWEEPS, false)?.spectrum)
}

/// Cyclic Jacobi on a dense symmetric matrix (row-major, order `n`). Stops
/// when the off-diagonal Frobenius norm is `≤ tol·‖A‖_F`; clusters with
/// `τ = max(1e-8, 1e3·tol·‖A‖_F)`.
pub fn jacobi(
    mut a: Vec<f64>,
    n: usize,
    tol: f64,
    max_sweeps: usize,
    want_vectors: bool,
) -> Result<Decomposition, NumericError> {
    assert_eq!(a.len(), n * n);
    for i in 0..n {
        for j in 0..i {
            if a[i * n + j] != a[j * n + i] {
                return Err(NumericError::NonSymmetric);
            }
        }
    }
    let norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut v = if want_vectors {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        Some(id)
    } else {
        None
    };
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let threshold = tol * norm;
    let mut sweeps = 0;
    while off(&a) > threshold {
        if sweeps == max_sweeps {
            return Err(NumericError::NoConvergence(max_sweeps));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let tau = MIN_CLUSTER_TAU.max(1e3 * tol * norm);
    let vectors = v.map(|v| {
        order
            .iter()
            .map(|&col| (0..n).map(|k| v[k * n + col]).collect())
            .collect()
    });
    Ok(Decomposition {
        spectrum: Spectrum::from_eigenvalues(eigenvalues, tau),
        vectors,
    })
}

/// `‖L_T x - λx‖_∞ / ‖x‖_∞`, with `x` indexed by `label - 1`.
pub fn residual_norm(tree: &Tree, lambda: f64, x: &[f64]) -> Result<f64, NumericError> {
    if x.len() != tree.order() {
        return Err(NumericError::DimensionMismatch {
            expected: tree.order(),
            got: x.len(),
        });
    }
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Err(NumericError::ZeroVector);
    }
    let worst = tree
        .vertices()
        .map(|v| {
            let lx = tree.degree(v) as f64 * x[v - 1] - tree.neighbors(v).iter().map(|&w| x[w - 1]).sum::<f64>();
            (lx - lambda * x[v - 1]).abs()
        })
        .fold(0.0f64, f64::max);
    Ok(worst / scale)
}

/// Rank by Gram–Schmidt with column pivoting: at each step the remaining
/// vector of largest residual norm is taken; it counts while that norm
/// exceeds `tol` times the largest original norm.
pub fn numeric_rank(vectors: &[Vec<f64>], tol: f64) -> Result<usize, NumericError> {
    let first = vectors.first().ok_or(NumericError::EmptyInput)?;
    let dim = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
        return Err(NumericError::DimensionMismatch {
            expected: dim,
            got: bad.len(),
        });
    }
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let largest = vectors.iter().map(|v| norm(v)).fold(0.0, f64::max);
    if largest == 0.0 {
        return Ok(0);
    }
    let mut work: Vec<Vec<f64>> = vectors.to_vec();
    let mut rank = 0;
    while !work.is_empty() {
        let (idx, best) = work
            .iter()
            .enumerate()
            .map(|(i, v)| (i, norm(v)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        if best <= tol * largest {
            break;
        }
        let pivot: Vec<f64> = work.swap_remove(idx).iter().map(|x| x / best).collect();
        rank += 1;
        for v in work.iter_mut() {
            let dot: f64 = v.iter().zip(&pivot).map(|(a, b)| a * b).sum();
            for (x, p) in v.iter_mut().zip(&pivot) {
                *x -= dot * p;
            }
        }
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::laplacian;

    #[test]
    fn small_spectra() {
        let s = eigen_symmetric(&laplacian(&Tree::path(2), false), DEFAULT_TOL).unwrap();
        assert!((s.eigenvalues[0]).abs() < 1e-12 && (s.eigenvalues[1] - 2.0).abs() < 1e-12);

        let s = eigen_symmetric(&laplacian(&Tree::path(3), false), DEFAULT_TOL).unwrap();
        for (got, want) in s.eigenvalues.iter().zip([0.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }

        let s = eigen_symmetric(&laplacian(&Tree::star(3), false), DEFAULT_TOL).unwrap();
        let clusters: Vec<(i64, usize)> = s
            .clusters
            .iter()
            .map(|c| (c.value.round() as i64, c.multiplicity))
            .collect();
        assert_eq!(clusters, vec![(0, 1), (1, 2), (4, 1)]);
        assert_eq!(s.multiplicity_near(1.0), 2);
        assert_eq!(s.max_multiplicity(), 2);
    }

    #[test]
    fn rejects_non_symmetric() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(
            eigen_symmetric(&m, DEFAULT_TOL).unwrap_err(),
            NumericError::NonSymmetric
        );
    }

    #[test]
    fn sweep_cap_is_enforced() {
        let m = laplacian(&Tree::star(4), false);
        assert_eq!(
            jacobi(m.to_f64(), 5, DEFAULT_TOL, 0, false).unwrap_err(),
            NumericError::NoConvergence(0)
        );
    }

    #[test]
    fn eigenvectors_are_orthonormal_eigenpairs() {
        let t = Tree::spider(&[1, 2, 3]);
        let m = laplacian(&t, false);
        let d = jacobi(m.to_f64(), t.order(), DEFAULT_TOL, DEFAULT_MAX_SWEEPS, true).unwrap();
        let vecs = d.vectors.unwrap();
        for (lambda, x) in d.spectrum.eigenvalues.iter().zip(&vecs) {
            assert!(residual_norm(&t, *lambda, x).unwrap() < 1e-10);
        }
        assert_eq!(numeric_rank(&vecs, 1e-10).unwrap(), t.order());
    }

    #[test]
    fn residual_examples() {
        let star = Tree::star(3);
        assert_eq!(residual_norm(&star, 1.0, &[0.0, 1.0, -1.0, 0.0]).unwrap(), 0.0);
        let h = 3f64.sqrt() / 2.0;
        assert!(residual_norm(&Tree::path(3), 1.0, &[h, 0.0, -h]).unwrap() < 1e-15);
        assert_eq!(residual_norm(&star, 0.0, &[1.0; 4]).unwrap(), 0.0);
        assert_eq!(
            residual_norm(&star, 0.0, &[0.0; 4]).unwrap_err(),
            NumericError::ZeroVector
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(numeric_rank(&[vec![1.0, 0.0], vec![0.0, 1.0]], 1e-10).unwrap(), 2);
        assert_eq!(numeric_rank(&[vec![1.0, 1.0], vec![2.0, 2.0]], 1e-10).unwrap(), 1);
        assert_eq!(numeric_rank(&[], 1e-10).unwrap_err(), NumericError::EmptyInput);
    }

    #[test]
    fn clustering_respects_tau() {
        let s = Spectrum::from_eigenvalues(vec![1.0, 1.0 + 1e-10, 2.0, 0.0], 1e-8);
        assert_eq!(s.clusters.len(), 3);
        assert_eq!(s.clusters[1].multiplicity, 2);
        assert_eq!(s.clusters.iter().map(|c| c.multiplicity).sum::<usize>(), 4);
    }
}
