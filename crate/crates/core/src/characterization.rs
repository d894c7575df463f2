//! Combinatorial deciders: the pendant-distance congruence for multiplicity
//! `p - 1`, the admissible eigenvalue set, and the classification of the
//! multiplicity of eigenvalue 1 into `p - 1`, `p - 2` or neither.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{unit_multiplicity, LambdaParam};
use crate::tree::{Label, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterizationError {
    #[error("tree has fewer than two pendant vertices")]
    TooFewPendants,
    #[error("tree does not attain multiplicity p - 1 for any eigenvalue")]
    NotExtremal,
    #[error("every eigenvalue of a path is simple; no distinguished eigenvalue set")]
    PathTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceCertificate {
    /// gcd of `d(α, β) + 1` over distinct pendant pairs.
    pub g: u64,
    /// Odd divisors of `g` that are at least 3, ascending.
    pub admissible_moduli: Vec<u64>,
    /// `(modulus - 1) / 2` for each modulus.
    pub q_list: Vec<u64>,
    pub is_path: bool,
}

impl CongruenceCertificate {
    pub fn from_gcd(g: u64, is_path: bool) -> Self {
        let admissible_moduli: Vec<u64> = (3..=g).step_by(2).filter(|d| g % d == 0).collect();
        let q_list = admissible_moduli.iter().map(|m| (m - 1) / 2).collect();
        CongruenceCertificate {
            g,
            admissible_moduli,
            q_list,
            is_path,
        }
    }
}

pub fn pendant_distance_gcd(t: &Tree) -> Result<u64, CharacterizationError> {
    let pendants = t.pendants();
    if pendants.len() < 2 {
        return Err(CharacterizationError::TooFewPendants);
    }
    let mut g = 0u64;
    for (i, &u) in pendants.iter().enumerate() {
        for &w in &pendants[i + 1..] {
            g = g.gcd(&(t.dist(u, w) as u64 + 1));
        }
    }
    Ok(g)
}

pub fn admissible_q(t: &Tree) -> Result<CongruenceCertificate, CharacterizationError> {
    Ok(CongruenceCertificate::from_gcd(pendant_distance_gcd(t)?, t.is_path()))
}

/// Whether some eigenvalue has multiplicity `p - 1`: paths always, other
/// trees iff some `q ≥ 1` has `(2q+1) | g`. The single vertex is not
/// extremal and has no certificate.
pub fn is_extremal(t: &Tree) -> (bool, Option<CongruenceCertificate>) {
    match admissible_q(t) {
        Ok(cert) => (cert.is_path || !cert.q_list.is_empty(), Some(cert)),
        Err(_) => (false, None),
    }
}

/// `2(1 - cos((2b+1)π/(2q+1)))` for every admissible `q` and `0 ≤ b < q`,
/// deduplicated by reduced ratio, in canonical parameters, ascending.
pub fn lambda_set_from_gcd(g: u64) -> Vec<LambdaParam> {
    let cert = CongruenceCertificate::from_gcd(g, false);
    let set: BTreeSet<LambdaParam> = cert
        .q_list
        .iter()
        .flat_map(|&q| (0..q).map(move |b| LambdaParam::new(q, b).expect("b < q").canonical()))
        .collect();
    set.into_iter().collect()
}

pub fn extremal_lambda_set(t: &Tree) -> Result<Vec<LambdaParam>, CharacterizationError> {
    let (extremal, cert) = is_extremal(t);
    let cert = cert.ok_or(CharacterizationError::NotExtremal)?;
    if cert.is_path {
        return Err(CharacterizationError::PathTree);
    }
    if !extremal {
        return Err(CharacterizationError::NotExtremal);
    }
    Ok(lambda_set_from_gcd(cert.g))
}

/// `m_T(1) = p - 1`, decided combinatorially.
pub fn has_unit_extremal(t: &Tree) -> bool {
    match admissible_q(t) {
        Ok(cert) if cert.is_path => t.order() % 3 == 0,
        Ok(cert) => cert.g % 3 == 0,
        Err(_) => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum OmegaType {
    A,
    B,
}

/// Residues `d(u_j, m) mod 3` of three legs, as an unordered multiset.
pub fn omega_type(residues: [usize; 3]) -> Option<OmegaType> {
    let mut r = residues.map(|x| x % 3);
    r.sort_unstable();
    if r.iter().filter(|&&x| x == 1).count() == 2 {
        Some(OmegaType::A)
    } else if r == [0, 0, 2] {
        Some(OmegaType::B)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMembership {
    /// All pendant pairs at distance `≡ 2 mod 3`.
    pub in_q: bool,
    /// A path on `n ≡ 2 mod 3` vertices.
    pub in_p: bool,
    /// Set only for trees with one major vertex and three pendants.
    pub omega: Option<OmegaType>,
}

pub fn family_membership(t: &Tree) -> FamilyMembership {
    let pendants = t.pendants();
    let in_q = pendants
        .iter()
        .enumerate()
        .all(|(i, &u)| pendants[i + 1..].iter().all(|&w| t.dist(u, w) % 3 == 2));
    let in_p = t.is_path() && t.order() % 3 == 2;
    let majors = t.majors();
    let omega = if majors.len() == 1 && pendants.len() == 3 {
        let m = majors[0];
        omega_type([0, 1, 2].map(|j| t.dist(pendants[j], m)))
    } else {
        None
    };
    FamilyMembership { in_q, in_p, omega }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreLeg {
    pub pendant: Label,
    pub length: usize,
    pub residue: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AttachmentFamily {
    /// A tree whose pendant pairs are all `≡ 2 mod 3`, glued at one of its
    /// nodes.
    Q,
    /// A path on `≡ 2 mod 3` vertices, glued at an end.
    P,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attachment {
    /// Core vertex where the component is glued.
    pub at: Label,
    pub family: AttachmentFamily,
    /// Vertices of the attached component including `at`, ascending.
    pub vertices: Vec<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaWitness {
    pub omega: OmegaType,
    pub major: Label,
    pub legs: Vec<CoreLeg>,
    pub attachments: Vec<Attachment>,
}

/// A component of `T - a` hanging off core vertex `a`, with `a` excluded.
struct Branch {
    vertices: Vec<Label>,
    /// A bare path from `a` whose vertex count is `≡ 1 mod 3`; with `a` it
    /// forms a path on `≡ 2 mod 3` vertices ending at `a`.
    p_like: bool,
    /// Every pendant at distance `≡ 1` from `a`, pendants pairwise `≡ 2`.
    q_like: bool,
}

fn branch(t: &Tree, a: Label, root: Label) -> Branch {
    let mut vertices = vec![root];
    let mut stack = vec![(root, a)];
    while let Some((v, parent)) = stack.pop() {
        for &w in t.neighbors(v) {
            if w != parent {
                vertices.push(w);
                stack.push((w, v));
            }
        }
    }
    vertices.sort_unstable();
    let pendants: Vec<Label> = vertices.iter().copied().filter(|&v| t.degree(v) == 1).collect();
    let is_bare_path = pendants.len() == 1 && vertices.iter().all(|&v| t.degree(v) <= 2);
    let q_like = pendants.iter().all(|&u| t.dist(a, u) % 3 == 1)
        && pendants
            .iter()
            .enumerate()
            .all(|(i, &u)| pendants[i + 1..].iter().all(|&w| t.dist(u, w) % 3 == 2));
    Branch {
        p_like: is_bare_path && vertices.len() % 3 == 1,
        q_like,
        vertices,
    }
}

/// Splits the branches at `a` into attachments, or `None` if impossible.
/// Branches that are bare paths can stand alone; other admissible branches
/// must share one Q-component (at least two branches, so that `a` is not a
/// pendant of it) and may borrow one bare-path branch to reach that size.
fn attach_at(t: &Tree, a: Label, branches: Vec<Branch>) -> Option<Vec<Attachment>> {
    if branches.iter().any(|b| !b.q_like) {
        return None;
    }
    let (mut flex, q_only): (Vec<Branch>, Vec<Branch>) = branches.into_iter().partition(|b| b.p_like);
    let mut out = Vec::new();
    if !q_only.is_empty() {
        let mut group = q_only;
        if group.len() == 1 {
            if flex.is_empty() {
                return None;
            }
            group.push(flex.remove(0));
        }
        let mut vertices: Vec<Label> = group.iter().flat_map(|b| b.vertices.iter().copied()).collect();
        vertices.push(a);
        vertices.sort_unstable();
        out.push(Attachment {
            at: a,
            family: AttachmentFamily::Q,
            vertices,
        });
    }
    for b in flex {
        let mut vertices = b.vertices;
        vertices.push(a);
        vertices.sort_unstable();
        out.push(Attachment {
            at: a,
            family: AttachmentFamily::P,
            vertices,
        });
    }
    debug_assert!(t.degree(a) >= 1);
    Some(out)
}

fn try_core(t: &Tree, m: Label, legs: [Label; 3]) -> Option<GammaWitness> {
    let lengths = legs.map(|u| t.dist(u, m));
    let omega = omega_type(lengths)?;
    let paths = legs.map(|u| t.path_unchecked(u, m).vertices);
    let mut on_core = vec![false; t.order()];
    for p in &paths {
        for &v in p {
            on_core[v - 1] = true;
        }
    }
    let mut attachments = Vec::new();
    let mut visit = |a: Label, allowed: bool| -> Option<()> {
        let branches: Vec<Branch> = t
            .neighbors(a)
            .iter()
            .filter(|&&c| !on_core[c - 1])
            .map(|&c| branch(t, a, c))
            .collect();
        if branches.is_empty() {
            return Some(());
        }
        if !allowed {
            return None;
        }
        attachments.extend(attach_at(t, a, branches)?);
        Some(())
    };
    visit(m, lengths.iter().any(|&k| k % 3 == 1))?;
    for (j, p) in paths.iter().enumerate() {
        for &a in &p[..p.len() - 1] {
            visit(a, t.dist(a, legs[j]) % 3 == 1)?;
        }
    }
    attachments.sort_by(|x, y| (x.at, &x.vertices).cmp(&(y.at, &y.vertices)));
    Some(GammaWitness {
        omega,
        major: m,
        legs: (0..3)
            .map(|j| CoreLeg {
                pendant: legs[j],
                length: lengths[j],
                residue: lengths[j] % 3,
            })
            .collect(),
        attachments,
    })
}

/// Searches for a core (major vertex `m` and three pendants reached through
/// distinct neighbors of `m` with an Ω residue pattern) such that everything
/// off the core decomposes into admissible attachments. Cores are tried in
/// order of `m`, then of the pendant triple; the first witness is returned.
pub fn in_gamma(t: &Tree) -> (bool, Option<GammaWitness>) {
    let pendants = t.pendants();
    if pendants.len() < 3 {
        return (false, None);
    }
    for m in t.majors() {
        // first hop from m toward each pendant
        let hop: Vec<Label> = pendants.iter().map(|&u| t.path_unchecked(m, u).vertices[1]).collect();
        for i in 0..pendants.len() {
            for j in i + 1..pendants.len() {
                if hop[i] == hop[j] {
                    continue;
                }
                for k in j + 1..pendants.len() {
                    if hop[k] == hop[i] || hop[k] == hop[j] {
                        continue;
                    }
                    if let Some(w) = try_core(t, m, [pendants[i], pendants[j], pendants[k]]) {
                        return (true, Some(w));
                    }
                }
            }
        }
    }
    (false, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum M1Class {
    #[serde(rename = "p-1")]
    PMinus1,
    #[serde(rename = "p-2")]
    PMinus2,
    #[serde(rename = "other")]
    Other,
}

impl M1Class {
    pub fn as_str(&self) -> &'static str {
        match self {
            M1Class::PMinus1 => "p-1",
            M1Class::PMinus2 => "p-2",
            M1Class::Other => "other",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub p: usize,
    pub extremal: bool,
    pub certificate: Option<CongruenceCertificate>,
    /// Empty for paths (every eigenvalue is simple there).
    pub lambda_set: Vec<LambdaParam>,
    pub unit_multiplicity: usize,
    pub m1_class: M1Class,
    pub gamma_witness: Option<GammaWitness>,
}

impl ClassificationReport {
    /// Whether the combinatorial class agrees with the exact `m(T, 1)`.
    pub fn is_consistent(&self) -> bool {
        let p = self.p as i64;
        let m = self.unit_multiplicity as i64;
        match self.m1_class {
            M1Class::PMinus1 => m == p - 1,
            M1Class::PMinus2 => m == p - 2,
            M1Class::Other => m != p - 1 && m != p - 2,
        }
    }
}

/// Combinatorial class of `m(T, 1)`; `exact` recomputes it by rational
/// elimination when `None`.
pub fn classify_m1_with(t: &Tree, exact: Option<usize>) -> ClassificationReport {
    let (extremal, certificate) = is_extremal(t);
    let lambda_set = match &certificate {
        Some(c) if extremal && !c.is_path => lambda_set_from_gcd(c.g),
        _ => Vec::new(),
    };
    let mut gamma_witness = None;
    let m1_class = if t.order() == 1 {
        M1Class::Other
    } else if t.is_path() {
        if t.order() % 3 == 0 {
            M1Class::PMinus1
        } else {
            M1Class::PMinus2
        }
    } else if has_unit_extremal(t) {
        M1Class::PMinus1
    } else {
        let (member, w) = in_gamma(t);
        gamma_witness = w;
        if member {
            M1Class::PMinus2
        } else {
            M1Class::Other
        }
    };
    ClassificationReport {
        n: t.order(),
        p: t.pendants().len(),
        extremal,
        certificate,
        lambda_set,
        unit_multiplicity: exact.unwrap_or_else(|| unit_multiplicity(t)),
        m1_class,
        gamma_witness,
    }
}

pub fn classify_m1(t: &Tree) -> ClassificationReport {
    classify_m1_with(t, None)
}
