//! Labeled trees: validation, vertex classes, distances, paths and the two
//! surgery operations used throughout (gluing at a vertex, removing a
//! pendant branch).
//!
//! Vertices are always labeled `1..=n`. Trees read from an edge list are
//! relabeled by first appearance; the raw input labels are kept in
//! [`Tree::original_labels`] for reporting.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// A vertex label in `1..=n`.
pub type Label = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("edge list is empty")]
    EmptyInput,
    #[error("self loop at vertex {0}")]
    SelfLoop(u64),
    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(u64, u64),
    #[error("edge {0} -- {1} closes a cycle")]
    CycleDetected(u64, u64),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("vertex label {label} out of range 1..={n}")]
    LabelOutOfRange { label: Label, n: usize },
    #[error("invalid identification: {0}")]
    InvalidIdentification(String),
    #[error("anchor {0} is not the last vertex of the branch path")]
    AnchorNotOnPath(Label),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Immutable labeled tree with sorted adjacency lists and a lazily filled,
/// thread-safe distance cache (one BFS per source).
pub struct Tree {
    n: usize,
    edges: Vec<(Label, Label)>,
    adjacency: Vec<Vec<Label>>,
    original: Vec<u64>,
    distances: Vec<OnceLock<Vec<usize>>>,
}

impl Clone for Tree {
    fn clone(&self) -> Self {
        Tree {
            n: self.n,
            edges: self.edges.clone(),
            adjacency: self.adjacency.clone(),
            original: self.original.clone(),
            distances: self.distances.clone(),
        }
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adjacency == other.adjacency
    }
}

impl Eq for Tree {}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Tree {
    /// Validates an arbitrary edge list and relabels its vertices to
    /// `1..=n` in order of first appearance.
    pub fn from_edge_list(pairs: &[(u64, u64)]) -> Result<Tree, TreeError> {
        if pairs.is_empty() {
            return Err(TreeError::EmptyInput);
        }
        let mut original: Vec<u64> = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mut intern = |raw: u64, original: &mut Vec<u64>| -> Label {
            *index.entry(raw).or_insert_with(|| {
                original.push(raw);
                original.len()
            })
        };
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == b {
                return Err(TreeError::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(TreeError::DuplicateEdge(a, b));
            }
            let u = intern(a, &mut original);
            let v = intern(b, &mut original);
            edges.push((u, v));
        }
        let n = original.len();
        let mut uf = UnionFind::new(n);
        for (&(u, v), &(a, b)) in edges.iter().zip(pairs) {
            if !uf.union(u - 1, v - 1) {
                return Err(TreeError::CycleDetected(a, b));
            }
        }
        let components = uf.components();
        if components != 1 {
            return Err(TreeError::Disconnected { components });
        }
        Ok(Tree::build(n, edges, original))
    }

    /// Builds a tree from edges already labeled `1..=n`. `n = 1` with no
    /// edges gives the single-vertex tree.
    pub fn from_edges(n: usize, edges: &[(Label, Label)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::EmptyInput);
        }
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(TreeError::LabelOutOfRange { label: w, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u as u64));
            }
        }
        let mut uf = UnionFind::new(n);
        for &(u, v) in edges {
            if !uf.union(u - 1, v - 1) {
                return Err(TreeError::CycleDetected(u as u64, v as u64));
            }
        }
        let components = uf.components();
        if components != 1 {
            return Err(TreeError::Disconnected { components });
        }
        Ok(Tree::build(n, edges.to_vec(), (1..=n as u64).collect()))
    }

    pub fn single_vertex() -> Tree {
        Tree::build(1, Vec::new(), vec![1])
    }

    /// The path `1 ~ 2 ~ ... ~ n`.
    pub fn path(n: usize) -> Tree {
        assert!(n >= 1);
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Tree::build(n, edges, (1..=n as u64).collect())
    }

    /// The star `K_{1,k}` with center 1.
    pub fn star(k: usize) -> Tree {
        let edges: Vec<_> = (2..=k + 1).map(|i| (1, i)).collect();
        Tree::build(k + 1, edges, (1..=k as u64 + 1).collect())
    }

    /// A spider: center 1 with legs of the given lengths, labeled leg by leg
    /// outward from the center.
    pub fn spider(legs: &[usize]) -> Tree {
        let mut edges = Vec::new();
        let mut next = 2;
        for &len in legs {
            assert!(len >= 1, "spider legs must have length >= 1");
            let mut prev = 1;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        let n = next - 1;
        Tree::build(n, edges, (1..=n as u64).collect())
    }

    pub(crate) fn build(n: usize, edges: Vec<(Label, Label)>, original: Vec<u64>) -> Tree {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u - 1].push(v);
            adjacency[v - 1].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Tree {
            n,
            edges,
            adjacency,
            original,
            distances: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Label, Label)] {
        &self.edges
    }

    /// Raw labels from the input, indexed by `label - 1`.
    pub fn original_labels(&self) -> &[u64] {
        &self.original
    }

    pub fn neighbors(&self, v: Label) -> &[Label] {
        &self.adjacency[v - 1]
    }

    pub fn degree(&self, v: Label) -> usize {
        self.adjacency[v - 1].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Label> {
        1..=self.n
    }

    pub fn pendants(&self) -> Vec<Label> {
        self.vertices().filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn majors(&self) -> Vec<Label> {
        self.vertices().filter(|&v| self.degree(v) >= 3).collect()
    }

    pub fn is_path(&self) -> bool {
        self.adjacency.iter().all(|a| a.len() <= 2)
    }

    fn check(&self, v: Label) -> Result<(), TreeError> {
        if v == 0 || v > self.n {
            Err(TreeError::LabelOutOfRange { label: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Distances from `source` to every vertex, indexed by `label - 1`.
    pub fn distances_from(&self, source: Label) -> &[usize] {
        self.distances[source - 1].get_or_init(|| {
            let mut dist = vec![usize::MAX; self.n];
            let mut queue = VecDeque::new();
            dist[source - 1] = 0;
            queue.push_back(source);
            while let Some(u) = queue.pop_front() {
                let du = dist[u - 1];
                for &w in self.neighbors(u) {
                    if dist[w - 1] == usize::MAX {
                        dist[w - 1] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
    }

    pub fn distance(&self, u: Label, v: Label) -> Result<usize, TreeError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.dist(u, v))
    }

    /// Unchecked distance for internal use.
    pub(crate) fn dist(&self, u: Label, v: Label) -> usize {
        self.distances_from(v)[u - 1]
    }

    /// The unique path from `u` to `v`. For `u == v` this is the single
    /// vertex `[u]`.
    pub fn path_between(&self, u: Label, v: Label) -> Result<TreePath, TreeError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.path_unchecked(u, v))
    }

    pub(crate) fn path_unchecked(&self, u: Label, v: Label) -> TreePath {
        let to_v = self.distances_from(v);
        let mut vertices = vec![u];
        let mut cur = u;
        while cur != v {
            let d = to_v[cur - 1];
            cur = *self
                .neighbors(cur)
                .iter()
                .find(|&&w| to_v[w - 1] + 1 == d)
                .expect("tree is connected");
            vertices.push(cur);
        }
        TreePath { vertices }
    }

    pub fn classify_vertices(&self) -> VertexClassification {
        let degrees: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        let pendants: BTreeSet<Label> = self.pendants().into_iter().collect();
        let majors: BTreeSet<Label> = self.majors().into_iter().collect();
        let quasi_pendants = self
            .vertices()
            .filter(|&v| self.neighbors(v).iter().any(|w| pendants.contains(w)))
            .collect();
        VertexClassification {
            pendants,
            majors,
            quasi_pendants,
            degrees,
        }
    }

    /// Vertices at distance `≡ 1 (mod 3)` from every pendant vertex.
    pub fn nodes_mod3(&self) -> BTreeSet<Label> {
        let pendants = self.pendants();
        self.vertices()
            .filter(|&eta| pendants.iter().all(|&u| self.dist(eta, u) % 3 == 1))
            .collect()
    }

    /// `T1 ∘ T2`: identifies `shared.0` in `self` with `shared.1` in `other`.
    /// Labels of `self` are kept; the remaining vertices of `other` get
    /// labels `n1 + 1, ...` in ascending order of their old labels.
    pub fn glue_at_vertex(&self, other: &Tree, shared: (Label, Label)) -> Result<Glued, TreeError> {
        let (a, b) = shared;
        if a == 0 || a > self.n {
            return Err(TreeError::InvalidIdentification(format!(
                "vertex {a} is not in the first tree (order {})",
                self.n
            )));
        }
        if b == 0 || b > other.n {
            return Err(TreeError::InvalidIdentification(format!(
                "vertex {b} is not in the second tree (order {})",
                other.n
            )));
        }
        let mut map = vec![0; other.n];
        let mut next = self.n + 1;
        for w in other.vertices() {
            if w == b {
                map[w - 1] = a;
            } else {
                map[w - 1] = next;
                next += 1;
            }
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (map[u - 1], map[v - 1])));
        let n = self.n + other.n - 1;
        let original = (1..=n as u64).collect();
        Ok(Glued {
            tree: Tree::build(n, edges, original),
            second_map: map,
        })
    }

    /// Deletes every vertex of `path` except its last vertex `keep_anchor`
    /// and returns the component containing the anchor, relabeled to
    /// `1..=n'` in ascending order of old labels.
    pub fn remove_branch(&self, path: &TreePath, keep_anchor: Label) -> Result<Restricted, TreeError> {
        self.check(keep_anchor)?;
        if path.vertices.last() != Some(&keep_anchor) {
            return Err(TreeError::AnchorNotOnPath(keep_anchor));
        }
        for &v in &path.vertices {
            self.check(v)?;
        }
        let removed: HashSet<Label> = path.vertices[..path.vertices.len() - 1].iter().copied().collect();
        let mut keep = vec![false; self.n];
        let mut stack = vec![keep_anchor];
        keep[keep_anchor - 1] = true;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !keep[w - 1] && !removed.contains(&w) {
                    keep[w - 1] = true;
                    stack.push(w);
                }
            }
        }
        let kept: Vec<Label> = self.vertices().filter(|&v| keep[v - 1]).collect();
        Ok(self.induced(&kept))
    }

    /// Induced subtree on a connected vertex set, relabeled by ascending
    /// old label.
    pub(crate) fn induced(&self, kept: &[Label]) -> Restricted {
        let mut sorted = kept.to_vec();
        sorted.sort_unstable();
        let mut new_label = vec![0; self.n];
        for (i, &v) in sorted.iter().enumerate() {
            new_label[v - 1] = i + 1;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_label[u - 1] != 0 && new_label[v - 1] != 0)
            .map(|&(u, v)| (new_label[u - 1], new_label[v - 1]))
            .collect();
        let original = sorted.iter().map(|&v| self.original[v - 1]).collect();
        Restricted {
            tree: Tree::build(sorted.len(), edges, original),
            old_labels: sorted,
        }
    }

    /// Renders the tree in the edge-list text format.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassification {
    pub pendants: BTreeSet<Label>,
    pub majors: BTreeSet<Label>,
    pub quasi_pendants: BTreeSet<Label>,
    /// Indexed by `label - 1`.
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePath {
    pub vertices: Vec<Label>,
}

impl TreePath {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains(&self, v: Label) -> bool {
        self.vertices.contains(&v)
    }
}

/// Result of [`Tree::glue_at_vertex`]: `second_map[w - 1]` is the new label
/// of vertex `w` of the second tree.
#[derive(Debug, Clone)]
pub struct Glued {
    pub tree: Tree,
    pub second_map: Vec<Label>,
}

/// A subtree relabeled to `1..=n'`; `old_labels[i - 1]` is the label of new
/// vertex `i` in the parent tree.
#[derive(Debug, Clone)]
pub struct Restricted {
    pub tree: Tree,
    pub old_labels: Vec<Label>,
}

/// Parses the edge-list format: one `u v` pair per line, `#` comments and
/// blank lines ignored.
pub fn parse_edge_list(text: &str) -> Result<Vec<(u64, u64)>, TreeError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let line_no = i + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(TreeError::Parse {
                line: line_no,
                message: format!("expected two vertex labels, found {}", fields.len()),
            });
        }
        let parse = |s: &str| -> Result<u64, TreeError> {
            match s.parse::<u64>() {
                Ok(0) | Err(_) => Err(TreeError::Parse {
                    line: line_no,
                    message: format!("`{s}` is not a positive integer"),
                }),
                Ok(v) => Ok(v),
            }
        };
        pairs.push((parse(fields[0])?, parse(fields[1])?));
    }
    if pairs.is_empty() {
        return Err(TreeError::EmptyInput);
    }
    Ok(pairs)
}

pub fn parse_tree(text: &str) -> Result<Tree, TreeError> {
    Tree::from_edge_list(&parse_edge_list(text)?)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[Label]) -> BTreeSet<Label> {
        v.iter().copied().collect()
    }

    #[test]
    fn edge_list_builds_small_trees() {
        let p3 = Tree::from_edge_list(&[(1, 2), (2, 3)]).unwrap();
        assert_eq!(p3.order(), 3);
        assert!(p3.is_path());
        let star = Tree::from_edge_list(&[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(star.order(), 4);
        assert_eq!(star.degree(1), 3);
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            Tree::from_edge_list(&[(1, 2), (3, 4)]).unwrap_err(),
            TreeError::Disconnected { components: 2 }
        );
        assert_eq!(
            Tree::from_edge_list(&[(1, 2), (2, 3), (3, 1)]).unwrap_err(),
            TreeError::CycleDetected(3, 1)
        );
        assert_eq!(
            Tree::from_edge_list(&[(1, 2), (2, 1)]).unwrap_err(),
            TreeError::DuplicateEdge(2, 1)
        );
        assert_eq!(Tree::from_edge_list(&[(5, 5)]).unwrap_err(), TreeError::SelfLoop(5));
        assert_eq!(Tree::from_edge_list(&[]).unwrap_err(), TreeError::EmptyInput);
    }

    #[test]
    fn relabels_by_first_appearance() {
        let t = Tree::from_edge_list(&[(10, 7), (7, 42)]).unwrap();
        assert_eq!(t.original_labels(), &[10, 7, 42]);
        assert_eq!(t.edges(), &[(1, 2), (2, 3)]);
        assert_eq!(t.neighbors(2), &[1, 3]);
    }

    #[test]
    fn classification_examples() {
        let c = Tree::star(3).classify_vertices();
        assert_eq!(c.pendants, set(&[2, 3, 4]));
        assert_eq!(c.majors, set(&[1]));
        assert_eq!(c.quasi_pendants, set(&[1]));
        assert_eq!(c.degrees, vec![3, 1, 1, 1]);

        let c = Tree::path(5).classify_vertices();
        assert_eq!(c.pendants, set(&[1, 5]));
        assert!(c.majors.is_empty());

        let c = Tree::spider(&[2, 2, 2]).classify_vertices();
        assert_eq!(c.pendants.len(), 3);
        assert_eq!(c.majors.len(), 1);
    }

    #[test]
    fn single_vertex_has_no_pendants() {
        let t = Tree::single_vertex();
        assert_eq!(t.order(), 1);
        assert!(t.pendants().is_empty());
        assert!(t.is_path());
        assert_eq!(t.distance(1, 1).unwrap(), 0);
    }

    #[test]
    fn distances_and_paths() {
        let star = Tree::star(3);
        assert_eq!(star.distance(2, 3).unwrap(), 2);
        assert_eq!(Tree::path(5).distance(1, 5).unwrap(), 4);
        assert_eq!(star.distance(4, 4).unwrap(), 0);
        assert_eq!(
            star.distance(1, 9).unwrap_err(),
            TreeError::LabelOutOfRange { label: 9, n: 4 }
        );

        assert_eq!(Tree::path(3).path_between(1, 3).unwrap().vertices, vec![1, 2, 3]);
        assert_eq!(star.path_between(2, 4).unwrap().vertices, vec![2, 1, 4]);
        let spider = Tree::spider(&[2, 2, 2]);
        // Pendants are 3, 5, 7 with center 1.
        let p = spider.path_between(3, 7).unwrap();
        assert_eq!(p.length(), 4);
        assert!(p.contains(1));
        assert!(spider.path_between(0, 1).is_err());
    }

    #[test]
    fn glue_examples() {
        // P_3 glued at its middle vertex with an endpoint of P_2.
        let g = Tree::path(3).glue_at_vertex(&Tree::path(2), (2, 1)).unwrap();
        assert_eq!(g.tree.order(), 4);
        assert_eq!(g.tree.degree(2), 3);
        assert_eq!(g.second_map, vec![2, 4]);

        let g = Tree::path(2).glue_at_vertex(&Tree::path(2), (2, 1)).unwrap();
        assert!(g.tree.is_path());
        assert_eq!(g.tree.order(), 3);

        let a = Tree::path(3).glue_at_vertex(&Tree::path(3), (1, 1)).unwrap().tree;
        let b = a.glue_at_vertex(&Tree::path(3), (1, 1)).unwrap().tree;
        assert_eq!(b.order(), 7);
        assert_eq!(b.majors(), vec![1]);
        assert!(b.pendants().iter().all(|&u| b.dist(u, 1) == 2));

        assert!(matches!(
            Tree::path(2).glue_at_vertex(&Tree::path(2), (3, 1)),
            Err(TreeError::InvalidIdentification(_))
        ));
    }

    #[test]
    fn remove_branch_examples() {
        let star = Tree::star(3);
        let r = star.remove_branch(&TreePath { vertices: vec![2, 1] }, 1).unwrap();
        assert!(r.tree.is_path());
        assert_eq!(r.tree.order(), 3);
        assert_eq!(r.old_labels, vec![1, 3, 4]);

        // spider(1,1,2): center 1, short legs 2 and 3, long leg 4 - 5.
        let s = Tree::spider(&[1, 1, 2]);
        let r = s
            .remove_branch(
                &TreePath {
                    vertices: vec![5, 4, 1],
                },
                1,
            )
            .unwrap();
        assert!(r.tree.is_path());
        assert_eq!(r.tree.order(), 3);

        let r = Tree::path(5)
            .remove_branch(
                &TreePath {
                    vertices: vec![1, 2, 3],
                },
                3,
            )
            .unwrap();
        assert_eq!(r.old_labels, vec![3, 4, 5]);
        assert!(r.tree.is_path());

        assert_eq!(
            Tree::path(5)
                .remove_branch(
                    &TreePath {
                        vertices: vec![1, 2, 3]
                    },
                    2
                )
                .unwrap_err(),
            TreeError::AnchorNotOnPath(2)
        );
    }

    #[test]
    fn nodes_examples() {
        assert_eq!(Tree::path(3).nodes_mod3(), set(&[2]));
        assert_eq!(Tree::star(3).nodes_mod3(), set(&[1]));
    }

    #[test]
    fn parser_reports_line_numbers() {
        let text = "# star\n1 2\n\n1 3\n1 x\n";
        assert_eq!(
            parse_edge_list(text).unwrap_err(),
            TreeError::Parse {
                line: 5,
                message: "`x` is not a positive integer".into()
            }
        );
        assert!(matches!(
            parse_edge_list("1 2 3\n"),
            Err(TreeError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 2\n"),
            Err(TreeError::Parse { line: 1, .. })
        ));
        assert_eq!(parse_edge_list("# nothing\n").unwrap_err(), TreeError::EmptyInput);
        let t = parse_tree("1 2\n 2 3 \n").unwrap();
        assert_eq!(t.to_edge_list_string(), "1 2\n2 3\n");
    }
}
