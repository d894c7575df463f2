//! Explicit eigenvectors: path eigenpairs, internal-zero path vectors,
//! zero-extension across a glued vertex, pendant pruning, prescribed-zero
//! null vectors and the `p - 1` eigenbasis of trees whose pendant distances
//! satisfy the `2q mod (2q+1)` congruence.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{laplacian, rational_nullspace, ExactError, LambdaParam};
use crate::tree::{Glued, Label, Restricted, Tree, TreeError, TreePath};

/// Absolute threshold for "this entry is zero" on cosine-built vectors.
pub const ZERO_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("index j={j} out of range for a path on {n} vertices")]
    IndexOutOfRange { n: usize, j: usize },
    #[error("distance {k} is not congruent to {q} mod {}", 2 * q + 1)]
    CongruenceViolated { k: usize, q: u64 },
    #[error("vector is not zero at the shared vertex {0}")]
    NonzeroAtSharedVertex(Label),
    #[error("vertex {0} is not a pendant vertex")]
    NotPendant(Label),
    #[error("vector is not zero at pendant {0}")]
    NonzeroAtPendant(Label),
    #[error("tree has no major vertex")]
    NoMajorVertex,
    #[error("vector is identically zero")]
    ZeroVector,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Lambda(#[from] ExactError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// `vector[label - 1]` is the component at `label`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub lambda: f64,
    pub param: Option<LambdaParam>,
    pub vector: Vec<f64>,
}

impl EigenPair {
    fn check_len(&self, n: usize) -> Result<(), ConstructionError> {
        if self.vector.len() != n {
            return Err(ConstructionError::DimensionMismatch {
                expected: n,
                got: self.vector.len(),
            });
        }
        if self.vector.iter().all(|v| v.abs() <= ZERO_TOL) {
            return Err(ConstructionError::ZeroVector);
        }
        Ok(())
    }
}

/// The eigenvalue `2(1 - cos(πj/n))` expressed as a [`LambdaParam`] when the
/// reduced ratio `j/n` has odd numerator and odd denominator `≥ 3`.
fn param_for_ratio(j: usize, n: usize) -> Option<LambdaParam> {
    use num_integer::Integer;
    if j == 0 {
        return None;
    }
    let g = j.gcd(&n);
    let (r, s) = ((j / g) as u64, (n / g) as u64);
    if r % 2 == 1 && s % 2 == 1 && s >= 3 {
        LambdaParam::new((s - 1) / 2, (r - 1) / 2).ok()
    } else {
        None
    }
}

/// `λ_j = 2(1 - cos(πj/n))` with `x_ν = cos(πj/n · (ν - ½))` on `P_n`
/// labeled `1 ~ 2 ~ ... ~ n`.
pub fn path_eigenpair(n: usize, j: usize) -> Result<EigenPair, ConstructionError> {
    if n == 0 || j >= n {
        return Err(ConstructionError::IndexOutOfRange { n, j });
    }
    let theta = PI * j as f64 / n as f64;
    Ok(EigenPair {
        lambda: 2.0 * (1.0 - theta.cos()),
        param: param_for_ratio(j, n),
        vector: (1..=n).map(|nu| (theta * (nu as f64 - 0.5)).cos()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InternalZero {
    pub pair: EigenPair,
    /// `k1 + 1`; the component there is zero.
    pub zero_vertex: Label,
}

fn cosine_vector(len: usize, lp: &LambdaParam) -> Vec<f64> {
    let (r, s) = lp.ratio();
    let gamma = r as f64 / s as f64;
    (1..=len).map(|j| (gamma * (j as f64 - 0.5) * PI).cos()).collect()
}

/// Eigenvector on the path of `k1 + k2 + 1` vertices for
/// `λ = 2(1 - cos((2b+1)π/(2q+1)))` vanishing at vertex `k1 + 1`; requires
/// `k1 ≡ k2 ≡ q mod (2q+1)`.
pub fn path_internal_zero_vector(k1: usize, k2: usize, q: u64, b: u64) -> Result<InternalZero, ConstructionError> {
    let lp = LambdaParam::new(q, b)?;
    for k in [k1, k2] {
        if k as u64 % (2 * q + 1) != q {
            return Err(ConstructionError::CongruenceViolated { k, q });
        }
    }
    let mut vector = cosine_vector(k1 + k2 + 1, &lp);
    // cos of an odd multiple of π/2
    vector[k1] = 0.0;
    Ok(InternalZero {
        pair: EigenPair {
            lambda: lp.value(),
            param: Some(lp),
            vector,
        },
        zero_vertex: k1 + 1,
    })
}

/// Extends an eigenpair of `t1` by zeros over `t2` glued at
/// `shared = (vertex of t1, vertex of t2)`.
pub fn extend_by_zeros(
    t1: &Tree,
    t2: &Tree,
    shared: (Label, Label),
    pair: &EigenPair,
) -> Result<(Glued, EigenPair), ConstructionError> {
    pair.check_len(t1.order())?;
    let glued = t1.glue_at_vertex(t2, shared)?;
    if pair.vector[shared.0 - 1].abs() > ZERO_TOL {
        return Err(ConstructionError::NonzeroAtSharedVertex(shared.0));
    }
    let mut vector = pair.vector.clone();
    vector.resize(glued.tree.order(), 0.0);
    let out = EigenPair {
        lambda: pair.lambda,
        param: pair.param,
        vector,
    };
    Ok((glued, out))
}

/// Restricts an eigenpair vanishing at pendant `u` to `t - u`.
pub fn prune_pendant_zero(t: &Tree, pair: &EigenPair, u: Label) -> Result<(Restricted, EigenPair), ConstructionError> {
    pair.check_len(t.order())?;
    if u == 0 || u > t.order() || t.order() < 2 || t.degree(u) != 1 {
        return Err(ConstructionError::NotPendant(u));
    }
    if pair.vector[u - 1].abs() > ZERO_TOL {
        return Err(ConstructionError::NonzeroAtPendant(u));
    }
    let w = t.neighbors(u)[0];
    let rest = t.remove_branch(&TreePath { vertices: vec![u, w] }, w)?;
    let vector = rest.old_labels.iter().map(|&v| pair.vector[v - 1]).collect();
    let out = EigenPair {
        lambda: pair.lambda,
        param: pair.param,
        vector,
    };
    Ok((rest, out))
}

/// A nonzero rational vector in `ker(L_T - λI)` vanishing on `omega`, or
/// `None` when that subspace is trivial. The first basis vector of the
/// reduced-row-echelon null space is returned.
pub fn nullspace_with_zeros(t: &Tree, lambda: &BigRational, omega: &BTreeSet<Label>) -> Option<Vec<BigRational>> {
    let n = t.order();
    let l = laplacian(t, false);
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = BigRational::from_integer(l.get(i, j).clone());
                    if i == j {
                        v - lambda
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    for &w in omega.iter().filter(|&&w| w >= 1 && w <= n) {
        let mut row = vec![BigRational::zero(); n];
        row[w - 1] = BigRational::one();
        rows.push(row);
    }
    rational_nullspace(&rows, n).into_iter().next()
}

/// One pendant-pair path of the recursive construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathRecord {
    pub u: Label,
    pub w: Label,
    /// The single major vertex on the `u`–`w` path (the zero of the path
    /// vector).
    pub anchor: Label,
    pub k1: usize,
    pub k2: usize,
    pub n1: usize,
    pub n2: usize,
    pub delta: u64,
}

/// One recursion step: the path vector added and the component `H` the
/// recursion continued on (`None` after the last step).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub path: PathRecord,
    /// Vertices of `H` (labels of the input tree), ascending.
    pub component: Option<Vec<Label>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionTrace {
    pub q: u64,
    pub b: u64,
    /// `(2b+1, 2q+1)`, unreduced.
    pub gamma: (u64, u64),
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalBasis {
    pub lambda: LambdaParam,
    pub pairs: Vec<EigenPair>,
    pub trace: ConstructionTrace,
}

/// First pendant pair `(u, w)`, `u < w`, of `t` whose connecting path
/// contains exactly one major vertex; returns the pair and that vertex.
fn pick_pair(t: &Tree) -> Option<(Label, Label, Label)> {
    let pendants = t.pendants();
    for (i, &u) in pendants.iter().enumerate() {
        for &w in &pendants[i + 1..] {
            let path = t.path_unchecked(u, w);
            let mut majors = path.vertices.iter().filter(|&&x| t.degree(x) >= 3);
            if let (Some(&v), None) = (majors.next(), majors.next()) {
                return Some((u, w, v));
            }
        }
    }
    None
}

/// The `p - 1` independent eigenvectors for `λ = 2(1 - cos((2b+1)π/(2q+1)))`
/// of a tree with a major vertex whose pendant pairs all satisfy
/// `d ≡ 2q mod (2q+1)`.
///
/// Repeatedly takes the first pendant pair `(u, w)` whose path meets exactly
/// one major vertex `v`, records the internal-zero vector on that path, and
/// deletes the leg of `u` (keeping `v`). Once the remainder is a path, the
/// internal-zero vector on it, split at the last anchor, completes the basis.
pub fn eigenbasis_extremal(t: &Tree, q: u64, b: u64) -> Result<ExtremalBasis, ConstructionError> {
    let lp = LambdaParam::new(q, b)?;
    if t.majors().is_empty() {
        return Err(ConstructionError::NoMajorVertex);
    }
    let modulus = 2 * q + 1;
    let pendants = t.pendants();
    for (i, &u) in pendants.iter().enumerate() {
        for &w in &pendants[i + 1..] {
            let d = t.dist(u, w);
            if d as u64 % modulus != 2 * q {
                return Err(ConstructionError::CongruenceViolated { k: d, q });
            }
        }
    }

    let n = t.order();
    let mut current = Restricted {
        tree: t.clone(),
        old_labels: t.vertices().collect(),
    };
    let mut pairs = Vec::new();
    let mut steps: Vec<TraceStep> = Vec::new();
    let mut last_anchor = None;

    loop {
        let h = &current.tree;
        let to_t = |x: Label| current.old_labels[x - 1];
        let (u, w, v, done) = match pick_pair(h) {
            Some((u, w, v)) => (u, w, v, false),
            None => {
                let ends = h.pendants();
                let v = last_anchor.expect("a major vertex was processed");
                let v_local = current.old_labels.binary_search(&v).expect("anchor survives") + 1;
                (ends[0], ends[1], v_local, true)
            }
        };
        let path = h.path_unchecked(u, w);
        let (k1, k2) = (h.dist(u, v), h.dist(v, w));
        let iz = path_internal_zero_vector(k1, k2, q, b)?;
        let mut vector = vec![0.0; n];
        for (x, val) in path.vertices.iter().zip(&iz.pair.vector) {
            vector[to_t(*x) - 1] = *val;
        }
        pairs.push(EigenPair {
            lambda: lp.value(),
            param: Some(lp),
            vector,
        });
        let m = modulus as usize;
        let record = PathRecord {
            u: to_t(u),
            w: to_t(w),
            anchor: to_t(v),
            k1,
            k2,
            n1: k1 / m,
            n2: k2 / m,
            delta: (2 * b + 1) * (k1 / m + k2 / m + 1) as u64,
        };
        if done {
            steps.push(TraceStep {
                path: record,
                component: None,
            });
            break;
        }
        last_anchor = Some(to_t(v));
        let leg = h.path_unchecked(u, v);
        let next = h.remove_branch(&leg, v)?;
        let old_labels: Vec<Label> = next.old_labels.iter().map(|&x| to_t(x)).collect();
        steps.push(TraceStep {
            path: record,
            component: Some(old_labels.clone()),
        });
        current = Restricted {
            tree: next.tree,
            old_labels,
        };
    }

    Ok(ExtremalBasis {
        lambda: lp,
        pairs,
        trace: ConstructionTrace {
            q,
            b,
            gamma: (2 * b + 1, modulus),
            steps,
        },
    })
}

/// Forced pattern of a signless-Laplacian eigenvector for eigenvalue 1 along
/// the walk from a pendant to its nearest major vertex, with `c = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignlessPattern {
    /// From the pendant to the major vertex inclusive.
    pub path: Vec<Label>,
    /// `c, 0, -c, c, 0, -c, ...` along `path`.
    pub values: Vec<f64>,
    pub major: Label,
    pub major_value: f64,
    /// `d(start, major) mod 3`.
    pub residue: usize,
}

pub fn signless_pattern_vector(t: &Tree, start: Label) -> Result<SignlessPattern, ConstructionError> {
    if start == 0 || start > t.order() || t.order() < 2 || t.degree(start) != 1 {
        return Err(ConstructionError::NotPendant(start));
    }
    let mut path = vec![start];
    let mut prev = start;
    let mut cur = t.neighbors(start)[0];
    loop {
        path.push(cur);
        match t.degree(cur) {
            1 => return Err(ConstructionError::NoMajorVertex),
            2 => {
                let next = t.neighbors(cur).iter().copied().find(|&x| x != prev).expect("degree 2");
                prev = cur;
                cur = next;
            }
            _ => break,
        }
    }
    let values: Vec<f64> = (1..=path.len())
        .map(|i| match i % 3 {
            1 => 1.0,
            2 => 0.0,
            _ => -1.0,
        })
        .collect();
    Ok(SignlessPattern {
        major: cur,
        major_value: *values.last().expect("nonempty"),
        residue: (path.len() - 1) % 3,
        path,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{eigen_symmetric, numeric_rank, residual_norm};
    use num_bigint::BigInt;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn path_eigenpair_examples() {
        let h = 3f64.sqrt() / 2.0;
        let e = path_eigenpair(3, 1).unwrap();
        assert!((e.lambda - 1.0).abs() < 1e-12);
        assert!(close(&e.vector, &[h, 0.0, -h]));
        assert_eq!(e.param, Some(LambdaParam::new(1, 0).unwrap()));

        let e = path_eigenpair(7, 0).unwrap();
        assert_eq!(e.lambda, 0.0);
        assert!(close(&e.vector, &[1.0; 7]));
        assert_eq!(e.param, None);

        let e = path_eigenpair(2, 1).unwrap();
        let r = 2f64.sqrt() / 2.0;
        assert!((e.lambda - 2.0).abs() < 1e-12);
        assert!(close(&e.vector, &[r, -r]));
        assert_eq!(e.param, None);

        assert_eq!(
            path_eigenpair(3, 3).unwrap_err(),
            ConstructionError::IndexOutOfRange { n: 3, j: 3 }
        );
    }

    #[test]
    fn path_eigenpairs_have_small_residual() {
        for n in 1..=40 {
            let t = Tree::path(n);
            for j in 0..n {
                let e = path_eigenpair(n, j).unwrap();
                assert!(residual_norm(&t, e.lambda, &e.vector).unwrap() < 1e-12, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn internal_zero_examples() {
        let h = 3f64.sqrt() / 2.0;
        let iz = path_internal_zero_vector(1, 1, 1, 0).unwrap();
        assert_eq!(iz.zero_vertex, 2);
        assert!(close(&iz.pair.vector, &[h, 0.0, -h]));

        let iz = path_internal_zero_vector(1, 4, 1, 0).unwrap();
        assert!(close(&iz.pair.vector, &[h, 0.0, -h, -h, 0.0, h]));
        assert!(residual_norm(&Tree::path(6), 1.0, &iz.pair.vector).unwrap() < 1e-12);

        let iz = path_internal_zero_vector(2, 2, 2, 0).unwrap();
        assert_eq!(iz.zero_vertex, 3);
        assert_eq!(iz.pair.vector[2], 0.0);
        assert!((iz.pair.lambda - 2.0 * (1.0 - (PI / 5.0).cos())).abs() < 1e-15);
        assert!((iz.pair.vector[0] - (PI / 10.0).cos()).abs() < 1e-15);

        assert_eq!(
            path_internal_zero_vector(2, 1, 1, 0).unwrap_err(),
            ConstructionError::CongruenceViolated { k: 2, q: 1 }
        );
        assert!(matches!(
            path_internal_zero_vector(1, 1, 1, 1),
            Err(ConstructionError::Lambda(_))
        ));
    }

    #[test]
    fn extend_examples() {
        let h = 3f64.sqrt() / 2.0;
        let pair = path_internal_zero_vector(1, 1, 1, 0).unwrap().pair;
        let (glued, ext) = extend_by_zeros(&Tree::path(3), &Tree::path(2), (2, 1), &pair).unwrap();
        assert_eq!(glued.tree.degree(2), 3);
        assert!(close(&ext.vector, &[h, 0.0, -h, 0.0]));
        assert!(residual_norm(&glued.tree, 1.0, &ext.vector).unwrap() < 1e-15);

        let zero = EigenPair {
            lambda: 1.0,
            param: None,
            vector: vec![0.0; 3],
        };
        assert_eq!(
            extend_by_zeros(&Tree::path(3), &Tree::path(2), (2, 1), &zero).unwrap_err(),
            ConstructionError::ZeroVector
        );
        assert_eq!(
            extend_by_zeros(&Tree::path(3), &Tree::path(2), (1, 1), &pair).unwrap_err(),
            ConstructionError::NonzeroAtSharedVertex(1)
        );

        // spider(2,2,2) from P_5 plus a third leg at the middle.
        let pair = path_internal_zero_vector(2, 2, 2, 0).unwrap().pair;
        let (glued, ext) = extend_by_zeros(&Tree::path(5), &Tree::path(3), (3, 1), &pair).unwrap();
        assert_eq!(glued.tree.majors(), vec![3]);
        assert!(residual_norm(&glued.tree, pair.lambda, &ext.vector).unwrap() < 1e-12);
    }

    #[test]
    fn prune_examples() {
        let star = Tree::star(3);
        let pair = EigenPair {
            lambda: 1.0,
            param: None,
            vector: vec![0.0, 1.0, -1.0, 0.0],
        };
        let (rest, out) = prune_pendant_zero(&star, &pair, 4).unwrap();
        assert_eq!(rest.old_labels, vec![1, 2, 3]);
        assert!(rest.tree.is_path());
        assert_eq!(out.vector, vec![0.0, 1.0, -1.0]);
        assert_eq!(residual_norm(&rest.tree, 1.0, &out.vector).unwrap(), 0.0);
        // the neighbor (center) is zero
        assert_eq!(out.vector[0], 0.0);

        let h = 3f64.sqrt() / 2.0;
        let p3 = EigenPair {
            lambda: 1.0,
            param: None,
            vector: vec![h, 0.0, -h],
        };
        assert_eq!(
            prune_pendant_zero(&Tree::path(3), &p3, 1).unwrap_err(),
            ConstructionError::NonzeroAtPendant(1)
        );
        assert_eq!(
            prune_pendant_zero(&Tree::path(3), &p3, 2).unwrap_err(),
            ConstructionError::NotPendant(2)
        );
    }

    #[test]
    fn nullspace_with_zeros_examples() {
        let v = nullspace_with_zeros(&Tree::star(3), &int(1), &BTreeSet::from([2])).unwrap();
        assert!(v[0].is_zero() && v[1].is_zero());
        assert_eq!(&v[2], &-v[3].clone());
        assert!(!v[2].is_zero());

        let v = nullspace_with_zeros(&Tree::path(3), &int(1), &BTreeSet::new()).unwrap();
        assert_eq!(v, vec![int(-1), int(0), int(1)]);

        assert_eq!(nullspace_with_zeros(&Tree::path(4), &int(1), &BTreeSet::new()), None);
    }

    fn check_basis(t: &Tree, q: u64, b: u64) -> ExtremalBasis {
        let basis = eigenbasis_extremal(t, q, b).unwrap();
        let p = t.pendants().len();
        assert_eq!(basis.pairs.len(), p - 1);
        assert_eq!(basis.trace.steps.len(), p - 1);
        let lambda = basis.lambda.value();
        for pair in &basis.pairs {
            assert!(residual_norm(t, lambda, &pair.vector).unwrap() <= 1e-10);
            for m in t.majors() {
                assert!(pair.vector[m - 1].abs() <= ZERO_TOL);
                for s in t.vertices() {
                    if t.dist(s, m) as u64 % (2 * q + 1) == 0 {
                        assert!(pair.vector[s - 1].abs() <= ZERO_TOL);
                    }
                }
            }
        }
        let vectors: Vec<Vec<f64>> = basis.pairs.iter().map(|e| e.vector.clone()).collect();
        assert_eq!(numeric_rank(&vectors, 1e-8).unwrap(), p - 1);
        let spectrum = eigen_symmetric(&laplacian(t, false), 1e-12).unwrap();
        assert_eq!(spectrum.multiplicity_near(lambda), p - 1);
        for step in &basis.trace.steps {
            let r = &step.path;
            assert_eq!(r.k1 as u64 % (2 * q + 1), q);
            assert_eq!(r.k2 as u64 % (2 * q + 1), q);
            assert!(r.delta > 0 && r.delta < (r.k1 + r.k2 + 1) as u64);
        }
        basis
    }

    #[test]
    fn eigenbasis_examples() {
        let basis = check_basis(&Tree::star(3), 1, 0);
        assert!((basis.lambda.value() - 1.0).abs() < 1e-15);

        let basis = check_basis(&Tree::spider(&[2, 2, 2]), 2, 0);
        assert!((basis.lambda.value() - 0.381966).abs() < 1e-6);
        check_basis(&Tree::spider(&[2, 2, 2]), 2, 1);

        let t = Tree::spider(&[1, 1, 4]);
        let basis = check_basis(&t, 1, 0);
        // long leg: 4 ~ 5 ~ 6 ~ 7, vertex 6 is at distance 3 from the center
        assert_eq!(t.dist(1, 6), 3);
        for pair in &basis.pairs {
            assert!(pair.vector[5].abs() <= ZERO_TOL);
        }
        assert_eq!(crate::exact::rational_nullity(&laplacian(&t, false), &int(1)), 2);
    }

    #[test]
    fn eigenbasis_on_larger_trees() {
        // two majors joined by a path of length 3, every leg of length 1
        let t = Tree::from_edges(8, &[(1, 2), (1, 3), (1, 4), (4, 5), (5, 6), (6, 7), (6, 8)]).unwrap();
        check_basis(&t, 1, 0);
        // q = 2: legs of length 2, majors 5 apart
        let mut edges = vec![(1, 2), (2, 3), (1, 4), (4, 5)];
        let chain = [1, 6, 7, 8, 9, 10];
        for w in chain.windows(2) {
            edges.push((w[0], w[1]));
        }
        edges.extend([(10, 11), (11, 12), (10, 13), (13, 14)]);
        let t = Tree::from_edges(14, &edges).unwrap();
        let basis = check_basis(&t, 2, 0);
        assert_eq!(basis.trace.gamma, (1, 5));
        check_basis(&t, 2, 1);
    }

    #[test]
    fn eigenbasis_errors() {
        assert_eq!(
            eigenbasis_extremal(&Tree::path(3), 1, 0).unwrap_err(),
            ConstructionError::NoMajorVertex
        );
        assert!(matches!(
            eigenbasis_extremal(&Tree::spider(&[1, 2, 2]), 1, 0),
            Err(ConstructionError::CongruenceViolated { .. })
        ));
    }

    #[test]
    fn signless_pattern_examples() {
        let t = Tree::spider(&[2, 3, 3]);
        let pat = signless_pattern_vector(&t, 3).unwrap();
        assert_eq!(pat.path, vec![3, 2, 1]);
        assert_eq!(pat.values, vec![1.0, 0.0, -1.0]);
        assert_eq!(pat.major_value, -1.0);
        assert_eq!(pat.residue, 2);

        let pat = signless_pattern_vector(&Tree::spider(&[1, 1, 2]), 2).unwrap();
        assert_eq!(pat.values, vec![1.0, 0.0]);
        assert_eq!(pat.major_value, 0.0);

        assert_eq!(
            signless_pattern_vector(&Tree::path(3), 1).unwrap_err(),
            ConstructionError::NoMajorVertex
        );
        assert_eq!(
            signless_pattern_vector(&Tree::path(3), 2).unwrap_err(),
            ConstructionError::NotPendant(2)
        );
    }

    #[test]
    fn zero_propagation_on_paths() {
        // components at vertices 2q+1 apart vanish together
        for n in 1..=60usize {
            for j in 0..n {
                let Some(lp) = param_for_ratio(j, n) else { continue };
                let step = 2 * lp.q() as usize + 1;
                let x = path_eigenpair(n, j).unwrap().vector;
                for u in 0..n {
                    for v in (u + step..n).step_by(step) {
                        assert_eq!(x[u].abs() <= ZERO_TOL, x[v].abs() <= ZERO_TOL, "n={n} j={j}");
                    }
                }
            }
        }
    }
}
