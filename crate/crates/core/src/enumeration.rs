//! Free trees up to isomorphism, generated as centroid-rooted canonical
//! level sequences, plus the oracle-checked catalog built on top of them.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::characterization::{classify_m1_with, has_unit_extremal, ClassificationReport, M1Class};
use crate::exact::{laplacian, multiplicity_exact, unit_multiplicity};
use crate::numeric::{eigen_symmetric, DEFAULT_TOL};
use crate::tree::{Label, Tree};

pub const DEFAULT_CAP: usize = 16;
pub const PRUFER_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("order {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("oracle disagreement: {detail}\nedge list:\n{edges}")]
    OracleDisagreement { detail: String, edges: String },
}

/// Depths of a rooted tree in preorder, children visited in the order that
/// makes the sequence lexicographically largest.
pub type LevelSequence = Vec<u8>;

fn rooted_canonical(adj: &[Vec<usize>], root: usize, parent: Option<usize>) -> LevelSequence {
    let mut children: Vec<LevelSequence> = adj[root]
        .iter()
        .filter(|&&c| Some(c) != parent)
        .map(|&c| rooted_canonical(adj, c, Some(root)))
        .collect();
    children.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![0u8];
    for c in children {
        out.extend(c.into_iter().map(|d| d + 1));
    }
    out
}

/// Centroids of a tree given by 0-based adjacency lists (one or two).
fn centroids(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    (0..n)
        .filter(|&v| {
            let largest = adj[v]
                .iter()
                .map(|&w| if parent[w] == v { size[w] } else { n - size[v] })
                .max()
                .unwrap_or(0);
            2 * largest <= n
        })
        .collect()
}

fn canonical_from_adjacency(adj: &[Vec<usize>]) -> LevelSequence {
    match centroids(adj).as_slice() {
        [c] => rooted_canonical(adj, *c, None),
        [a, b] => {
            let sa = rooted_canonical(adj, *a, None);
            let sb = rooted_canonical(adj, *b, None);
            // Rooted at the centroid whose own half is larger; both
            // rootings are canonical, so the larger sequence decides.
            let half_a = rooted_canonical(adj, *a, Some(*b));
            let half_b = rooted_canonical(adj, *b, Some(*a));
            if half_a >= half_b {
                sa
            } else {
                sb
            }
        }
        _ => unreachable!("a tree has one or two centroids"),
    }
}

/// Isomorphism-class key: the canonical level sequence rooted at the
/// centroid, or for two centroids at the one whose half is
/// lexicographically larger.
pub fn canonical_levels(t: &Tree) -> LevelSequence {
    let adj: Vec<Vec<usize>> = t
        .vertices()
        .map(|v| t.neighbors(v).iter().map(|&w| w - 1).collect())
        .collect();
    canonical_from_adjacency(&adj)
}

/// Relabels `t` along its canonical rooted form (preorder, root `1`).
/// Isomorphic siblings are ordered by their smallest original input label,
/// and two centroids with isomorphic halves by original label, so the result
/// depends only on the tree and its original labels, never on edge order.
/// The relabeled tree keeps the original labels.
pub fn canonical_relabel(t: &Tree) -> Tree {
    let adj: Vec<Vec<usize>> = t
        .vertices()
        .map(|v| t.neighbors(v).iter().map(|&w| w - 1).collect())
        .collect();
    let orig = t.original_labels();
    let root = match centroids(&adj).as_slice() {
        [c] => *c,
        [a, b] => {
            let half_a = rooted_canonical(&adj, *a, Some(*b));
            let half_b = rooted_canonical(&adj, *b, Some(*a));
            match half_a.cmp(&half_b) {
                std::cmp::Ordering::Greater => *a,
                std::cmp::Ordering::Less => *b,
                std::cmp::Ordering::Equal => {
                    if orig[*a] < orig[*b] {
                        *a
                    } else {
                        *b
                    }
                }
            }
        }
        _ => unreachable!("a tree has one or two centroids"),
    };
    fn min_orig(adj: &[Vec<usize>], v: usize, parent: usize, orig: &[u64]) -> u64 {
        adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| min_orig(adj, w, v, orig))
            .fold(orig[v], u64::min)
    }
    fn visit(adj: &[Vec<usize>], v: usize, parent: usize, orig: &[u64], out: &mut Vec<(usize, usize)>) {
        let mut children: Vec<(LevelSequence, u64, usize)> = adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| (rooted_canonical(adj, w, Some(v)), min_orig(adj, w, v, orig), w))
            .collect();
        children.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        for (_, _, w) in children {
            out.push((v, w));
            visit(adj, w, v, orig, out);
        }
    }
    let mut order = vec![(usize::MAX, root)];
    visit(&adj, root, usize::MAX, orig, &mut order);
    let mut new_label = vec![0; t.order()];
    for (i, &(_, v)) in order.iter().enumerate() {
        new_label[v] = i + 1;
    }
    let edges = order[1..].iter().map(|&(p, v)| (new_label[p], new_label[v])).collect();
    let original = order.iter().map(|&(_, v)| orig[v]).collect();
    Tree::build(t.order(), edges, original)
}

pub fn levels_to_string(levels: &[u8]) -> String {
    levels.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

pub fn canonical_form(t: &Tree) -> String {
    levels_to_string(&canonical_levels(t))
}

/// Tree of a level sequence: vertex `i + 1` is the `i`-th entry, its parent
/// the nearest earlier entry one level up.
pub fn tree_from_levels(levels: &[u8]) -> Tree {
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    let mut last_at_depth: Vec<Label> = Vec::new();
    for (i, &d) in levels.iter().enumerate() {
        let d = d as usize;
        last_at_depth.truncate(d);
        if d > 0 {
            edges.push((last_at_depth[d - 1], i + 1));
        }
        last_at_depth.push(i + 1);
    }
    Tree::from_edges(levels.len(), &edges).expect("level sequences describe trees")
}

/// Subtree sizes of every position of a level sequence.
fn subtree_sizes(levels: &[u8]) -> Vec<usize> {
    let n = levels.len();
    (0..n)
        .map(|i| 1 + levels[i + 1..].iter().take_while(|&&d| d > levels[i]).count())
        .collect()
}

/// Whether the root of a canonical rooted sequence is the chosen centroid.
fn is_centroid_rooted(levels: &[u8]) -> bool {
    let n = levels.len();
    let sizes = subtree_sizes(levels);
    let mut i = 1;
    while i < n {
        let s = sizes[i];
        if 2 * s > n {
            return false;
        }
        if 2 * s == n {
            let other: LevelSequence = levels[i..i + s].iter().map(|d| d - 1).collect();
            let mut own = levels[..i].to_vec();
            own.extend_from_slice(&levels[i + s..]);
            return own >= other;
        }
        i += s;
    }
    true
}

/// Canonical level sequences of all rooted trees on `n` vertices in
/// decreasing lexicographic order (path first, star last).
fn rooted_sequences(n: usize) -> impl Iterator<Item = LevelSequence> {
    let mut next = Some((0..n as u8).collect::<LevelSequence>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        if let Some(p) = cur.iter().rposition(|&d| d > 1) {
            let q = cur[..p]
                .iter()
                .rposition(|&d| d == cur[p] - 1)
                .expect("parent level exists");
            let mut succ = cur.clone();
            for i in p..succ.len() {
                succ[i] = succ[i - (p - q)];
            }
            next = Some(succ);
        }
        Some(cur)
    })
}

/// Canonical level sequences of the free trees on `n` vertices, ascending.
pub fn free_tree_sequences(n: usize) -> Result<Vec<LevelSequence>, EnumerationError> {
    if n == 0 || n > DEFAULT_CAP {
        return Err(EnumerationError::CapExceeded { n, cap: DEFAULT_CAP });
    }
    let mut out: Vec<LevelSequence> = rooted_sequences(n).filter(|s| is_centroid_rooted(s)).collect();
    out.reverse();
    Ok(out)
}

/// One tree per isomorphism class on `n` vertices, in ascending canonical
/// order, labeled in level-sequence order.
pub fn free_trees(n: usize) -> Result<Vec<Tree>, EnumerationError> {
    Ok(free_tree_sequences(n)?.iter().map(|s| tree_from_levels(s)).collect())
}

fn prufer_decode(seq: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut adj = vec![Vec::new(); n];
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        adj[leaf].push(x);
        adj[x].push(leaf);
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    adj[rest[0]].push(rest[1]);
    adj[rest[1]].push(rest[0]);
    adj
}

/// Number of isomorphism classes among all labeled trees on `n` vertices,
/// found by decoding every Prüfer sequence.
pub fn prufer_count_oracle(n: usize) -> Result<usize, EnumerationError> {
    if n > PRUFER_CAP {
        return Err(EnumerationError::CapExceeded { n, cap: PRUFER_CAP });
    }
    if n <= 2 {
        return Ok(usize::from(n > 0));
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let classes: HashSet<LevelSequence> = (0..total)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, mut code| {
            let mut seq = vec![0; len];
            for slot in seq.iter_mut() {
                *slot = code % n;
                code /= n;
            }
            acc.insert(canonical_from_adjacency(&prufer_decode(&seq, n)));
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(classes.len())
}

/// `P_n`, `K_{1,k}` or `spider(l_1,...)` with legs ascending.
pub fn recognize(t: &Tree) -> Option<String> {
    if t.is_path() {
        return Some(format!("P_{}", t.order()));
    }
    let majors = t.majors();
    if majors.len() != 1 {
        return None;
    }
    let m = majors[0];
    if t.degree(m) == t.order() - 1 {
        return Some(format!("K_{{1,{}}}", t.order() - 1));
    }
    let mut legs: Vec<usize> = t.pendants().iter().map(|&u| t.dist(u, m)).collect();
    legs.sort_unstable();
    Some(format!(
        "spider({})",
        legs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogFilter {
    Extremal,
    UnitP1,
    UnitP2,
    All,
}

impl CatalogFilter {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "extremal" => Some(CatalogFilter::Extremal),
            "unit_p1" => Some(CatalogFilter::UnitP1),
            "unit_p2" => Some(CatalogFilter::UnitP2),
            "all" => Some(CatalogFilter::All),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogFilter::Extremal => "extremal",
            CatalogFilter::UnitP1 => "unit_p1",
            CatalogFilter::UnitP2 => "unit_p2",
            CatalogFilter::All => "all",
        }
    }

    fn accepts(&self, r: &ClassificationReport) -> bool {
        match self {
            CatalogFilter::Extremal => r.extremal,
            CatalogFilter::UnitP1 => r.m1_class == M1Class::PMinus1,
            CatalogFilter::UnitP2 => r.m1_class == M1Class::PMinus2,
            CatalogFilter::All => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub canonical_form: String,
    pub name: Option<String>,
    pub edges: Vec<(Label, Label)>,
    /// Largest eigenvalue-cluster size of the numeric spectrum.
    pub max_multiplicity: usize,
    pub report: ClassificationReport,
}

/// Classifies `t` and cross-checks the verdicts against the exact and
/// numeric oracles.
pub fn checked_report(t: &Tree) -> Result<(ClassificationReport, usize), EnumerationError> {
    let fail = |detail: String| EnumerationError::OracleDisagreement {
        detail,
        edges: t.to_edge_list_string(),
    };
    let exact_unit = unit_multiplicity(t);
    let report = classify_m1_with(t, Some(exact_unit));
    let p = report.p;
    let spectrum = eigen_symmetric(&laplacian(t, false), DEFAULT_TOL).map_err(|e| fail(e.to_string()))?;
    let numeric_extremal = p >= 1 && spectrum.clusters.iter().any(|c| c.multiplicity == p - 1);
    if numeric_extremal != report.extremal {
        return Err(fail(format!(
            "congruence verdict {} but numeric spectrum {} a cluster of size p-1 = {}",
            report.extremal,
            if numeric_extremal { "has" } else { "lacks" },
            p as i64 - 1
        )));
    }
    for lp in &report.lambda_set {
        let m = multiplicity_exact(t, lp);
        if m != p - 1 {
            return Err(fail(format!("exact multiplicity of {lp} is {m}, expected {}", p - 1)));
        }
    }
    if has_unit_extremal(t) != (p >= 1 && exact_unit == p - 1) {
        return Err(fail(format!("unit test disagrees with exact m(T,1) = {exact_unit}")));
    }
    if !report.is_consistent() {
        return Err(fail(format!(
            "class {} disagrees with exact m(T,1) = {exact_unit} (p = {p})",
            report.m1_class.as_str()
        )));
    }
    Ok((report, spectrum.max_multiplicity()))
}

/// Every tree of order `1..=n_max` passing `filter`, sorted by order then
/// canonical level sequence. Trees are processed in parallel on the current
/// rayon pool; the result does not depend on the pool size.
pub fn build_catalog(n_max: usize, filter: CatalogFilter) -> Result<Vec<CatalogEntry>, EnumerationError> {
    if n_max > DEFAULT_CAP {
        return Err(EnumerationError::CapExceeded {
            n: n_max,
            cap: DEFAULT_CAP,
        });
    }
    let mut sequences = Vec::new();
    for n in 1..=n_max {
        sequences.extend(free_tree_sequences(n)?);
    }
    let results: Vec<Result<Option<CatalogEntry>, EnumerationError>> = sequences
        .par_iter()
        .map(|levels| {
            let t = tree_from_levels(levels);
            let (report, max_multiplicity) = checked_report(&t)?;
            if !filter.accepts(&report) {
                return Ok(None);
            }
            Ok(Some(CatalogEntry {
                canonical_form: levels_to_string(levels),
                name: recognize(&t),
                edges: t.edges().to_vec(),
                max_multiplicity,
                report,
            }))
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(e) = r? {
            out.push(e);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_small() {
        let counts: Vec<usize> = (1..=10).map(|n| free_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert_eq!(
            free_trees(17).unwrap_err(),
            EnumerationError::CapExceeded { n: 17, cap: 16 }
        );
    }

    #[test]
    fn n4_is_path_and_star() {
        let names: Vec<String> = free_trees(4).unwrap().iter().map(|t| recognize(t).unwrap()).collect();
        assert_eq!(names, vec!["K_{1,3}", "P_4"]);
    }

    #[test]
    fn prufer_small() {
        assert_eq!(prufer_count_oracle(2), Ok(1));
        assert_eq!(prufer_count_oracle(5), Ok(3));
        assert_eq!(prufer_count_oracle(7), Ok(11));
        assert!(prufer_count_oracle(10).is_err());
    }

    #[test]
    fn canonical_form_is_label_independent() {
        let a = Tree::spider(&[1, 2, 3]);
        let b = Tree::from_edge_list(&[(7, 3), (3, 9), (9, 4), (4, 1), (4, 2), (2, 5)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&Tree::spider(&[1, 1, 4])));
        // bicentroidal: P_4
        assert_eq!(canonical_form(&Tree::path(4)), "0,1,2,1");
    }

    #[test]
    fn emitted_sequences_are_their_own_canonical_form() {
        for n in 2..=10 {
            for s in free_tree_sequences(n).unwrap() {
                let t = tree_from_levels(&s);
                assert_eq!(canonical_levels(&t), s);
                let again =
                    Tree::from_edge_list(&t.edges().iter().map(|&(u, v)| (u as u64, v as u64)).collect::<Vec<_>>())
                        .unwrap();
                assert_eq!(again, t);
            }
        }
    }

    #[test]
    fn canonical_relabel_ignores_edge_order() {
        let edges = [(10u64, 20u64), (20, 30), (30, 40), (20, 50), (50, 60), (20, 70)];
        let a = canonical_relabel(&Tree::from_edge_list(&edges).unwrap());
        let mut rev = edges.to_vec();
        rev.reverse();
        let rev: Vec<(u64, u64)> = rev.into_iter().map(|(u, v)| (v, u)).collect();
        let b = canonical_relabel(&Tree::from_edge_list(&rev).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.original_labels(), b.original_labels());
        assert_eq!(a.original_labels()[0], 20);
        assert_eq!(
            canonical_form(&a),
            canonical_levels(&a)
                .iter()
                .map(u8::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        // P_2 has two isomorphic halves; the smaller original label wins
        let p2 = canonical_relabel(&Tree::from_edge_list(&[(9, 4)]).unwrap());
        assert_eq!(p2.original_labels(), &[4, 9]);
    }

    #[test]
    fn recognition() {
        assert_eq!(recognize(&Tree::path(1)).unwrap(), "P_1");
        assert_eq!(recognize(&Tree::star(5)).unwrap(), "K_{1,5}");
        assert_eq!(recognize(&Tree::spider(&[4, 1, 1])).unwrap(), "spider(1,1,4)");
        let ds = Tree::from_edges(6, &[(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        assert_eq!(recognize(&ds), None);
    }

    #[test]
    fn small_catalogs() {
        assert_eq!(build_catalog(4, CatalogFilter::All).unwrap().len(), 5);
        let unit_p2: Vec<Option<String>> = build_catalog(5, CatalogFilter::UnitP2)
            .unwrap()
            .into_iter()
            .map(|e| e.name)
            .collect();
        for want in ["spider(1,1,2)", "P_4", "P_5", "P_2"] {
            assert!(
                unit_p2.contains(&Some(want.to_string())),
                "{want} missing from {unit_p2:?}"
            );
        }
        for e in build_catalog(7, CatalogFilter::UnitP1).unwrap() {
            let t = tree_from_levels(
                &e.canonical_form
                    .split(',')
                    .map(|x| x.parse().unwrap())
                    .collect::<Vec<u8>>(),
            );
            assert_eq!(e.report.unit_multiplicity + 1, e.report.p);
            if !t.is_path() {
                let ps = t.pendants();
                for (i, &u) in ps.iter().enumerate() {
                    for &w in &ps[i + 1..] {
                        assert_eq!(t.dist(u, w) % 3, 2);
                    }
                }
            }
        }
    }
}
