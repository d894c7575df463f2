//! The command implementations behind the `lapmult` binary. Each returns a
//! JSON envelope plus a plain-text rendering; the binary only parses flags,
//! picks the rendering and maps errors to exit codes.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::characterization::{
    classify_m1_with, family_membership, has_unit_extremal, is_extremal, ClassificationReport,
};
use crate::constructions::{eigenbasis_extremal, ZERO_TOL};
use crate::enumeration::{build_catalog, canonical_relabel, CatalogEntry, CatalogFilter, EnumerationError};
use crate::exact::{char_poly, laplacian, multiplicity_exact, unit_multiplicity};
use crate::numeric::{eigen_symmetric, numeric_rank, residual_norm, Spectrum};
use crate::report::{envelope, input_echo, poly_json, round15, to_pretty};
use crate::tree::{parse_tree, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommandError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    OracleDisagreement(String),
}

impl CommandError {
    /// 1 for I/O, 2 for parse or validation errors, 3 for oracle
    /// disagreement.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Io(_) => 1,
            CommandError::Invalid(_) => 2,
            CommandError::OracleDisagreement(_) => 3,
        }
    }
}

impl From<EnumerationError> for CommandError {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::CapExceeded { .. } => CommandError::Invalid(e.to_string()),
            EnumerationError::OracleDisagreement { .. } => CommandError::OracleDisagreement(e.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub text: String,
    /// Set when the combinatorial verdicts and the oracles disagree; the
    /// report is still produced.
    pub disagreement: Option<String>,
}

/// Parses an edge list and relabels it canonically.
pub fn load_tree(text: &str) -> Result<Tree, CommandError> {
    let t = parse_tree(text).map_err(|e| CommandError::Invalid(e.to_string()))?;
    Ok(canonical_relabel(&t))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn fmt_f(x: f64) -> String {
    format!("{}", round15(x))
}

/// Extremal verdict, eigenvalue set, unit classification and oracle checks.
pub fn check(text: &str, tol: f64) -> Result<Output, CommandError> {
    let start = Instant::now();
    let t = load_tree(text)?;
    let p = t.pendants().len();
    let spectrum = eigen_symmetric(&laplacian(&t, false), tol).map_err(|e| CommandError::Invalid(e.to_string()))?;
    let exact_unit = unit_multiplicity(&t);
    let report = classify_m1_with(&t, Some(exact_unit));
    let (extremal, _) = is_extremal(&t);

    let mut lambda_rows = Vec::new();
    let mut exact_ok = true;
    for lp in &report.lambda_set {
        let exact = multiplicity_exact(&t, lp);
        exact_ok &= exact + 1 == p;
        let mut row = to_value(lp);
        let obj = row.as_object_mut().expect("object");
        obj.insert("minimal_polynomial".into(), poly_json(&lp.minimal_polynomial()));
        obj.insert("exact_multiplicity".into(), json!(exact));
        obj.insert(
            "numeric_multiplicity".into(),
            json!(spectrum.multiplicity_near(lp.value())),
        );
        lambda_rows.push(row);
    }
    let numeric_extremal = p >= 1 && spectrum.clusters.iter().any(|c| c.multiplicity + 1 == p);
    let unit_ok = report.is_consistent() && has_unit_extremal(&t) == (p >= 1 && exact_unit + 1 == p);
    let agree = exact_ok && unit_ok && numeric_extremal == extremal;

    let payload = json!({
        "certificate": report.certificate,
        "extremal": extremal,
        "lambda_set": lambda_rows,
        "unit": {
            "multiplicity": exact_unit,
            "class": report.m1_class,
            "family": family_membership(&t),
            "gamma_witness": report.gamma_witness,
        },
        "oracles": {
            "numeric_max_multiplicity": spectrum.max_multiplicity(),
            "numeric_extremal": numeric_extremal,
            "exact_multiplicities_match": exact_ok,
            "unit_class_consistent": unit_ok,
            "agree": agree,
        },
    });
    let disagreement = (!agree).then(|| format!("oracle disagreement for tree:\n{}", t.to_edge_list_string()));
    let json = envelope(
        "check",
        input_echo(&t),
        json!({ "tol": tol }),
        payload,
        elapsed_ms(start),
    );
    let text = render_check(&t, &report, &json["payload"]);
    Ok(Output {
        json,
        text,
        disagreement,
    })
}

fn render_check(t: &Tree, report: &ClassificationReport, payload: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n = {}, p = {}", t.order(), report.p);
    match &report.certificate {
        Some(c) => {
            let _ = writeln!(s, "pendant distance gcd g = {} (admissible q: {:?})", c.g, c.q_list);
        }
        None => {
            let _ = writeln!(s, "fewer than two pendant vertices");
        }
    }
    let _ = writeln!(
        s,
        "extremal (multiplicity p-1): {}{}",
        if report.extremal { "yes" } else { "no" },
        if t.is_path() && t.order() > 1 {
            " (path: every eigenvalue is simple)"
        } else {
            ""
        }
    );
    for row in payload["lambda_set"].as_array().into_iter().flatten() {
        let _ = writeln!(
            s,
            "  lambda = 2(1 - cos({} π)) ≈ {}  minimal polynomial {}  multiplicity {} (numeric {})",
            row["ratio"].as_str().unwrap_or("?"),
            row["value"],
            row["minimal_polynomial"],
            row["exact_multiplicity"],
            row["numeric_multiplicity"],
        );
    }
    let _ = writeln!(
        s,
        "m(T,1) = {} ({})",
        report.unit_multiplicity,
        report.m1_class.as_str()
    );
    if let Some(w) = &report.gamma_witness {
        let legs: Vec<String> = w.legs.iter().map(|l| format!("{}:{}", l.pendant, l.length)).collect();
        let _ = writeln!(
            s,
            "  witness: core {:?} at {} with legs [{}], {} attachment(s)",
            w.omega,
            w.major,
            legs.join(", "),
            w.attachments.len()
        );
    }
    let _ = writeln!(
        s,
        "oracles agree: {}",
        if payload["oracles"]["agree"].as_bool() == Some(true) {
            "yes"
        } else {
            "NO"
        }
    );
    s
}

/// Result of [`eigenbasis`]: the report plus the vectors as CSV (one row
/// per vector, one column per vertex label).
#[derive(Debug, Clone)]
pub struct EigenbasisOutput {
    pub output: Output,
    pub vectors_csv: String,
}

pub fn eigenbasis(text: &str, q: u64, b: u64, tol: f64) -> Result<EigenbasisOutput, CommandError> {
    let start = Instant::now();
    let t = load_tree(text)?;
    let basis = eigenbasis_extremal(&t, q, b).map_err(|e| CommandError::Invalid(e.to_string()))?;
    let lambda = basis.lambda.value();
    let vectors: Vec<Vec<f64>> = basis.pairs.iter().map(|e| e.vector.clone()).collect();
    let residuals: Vec<f64> = vectors
        .iter()
        .map(|x| residual_norm(&t, lambda, x).expect("constructed vectors are nonzero"))
        .collect();
    let rank = numeric_rank(&vectors, 1e-8).expect("at least one vector");
    let majors = t.majors();
    let zero_at_majors = vectors
        .iter()
        .all(|x| majors.iter().all(|&m| x[m - 1].abs() <= ZERO_TOL));
    let modulus = (2 * q + 1) as usize;
    let zero_at_congruent = vectors.iter().all(|x| {
        t.vertices()
            .filter(|&s| majors.iter().any(|&m| t.dist(s, m) % modulus == 0))
            .all(|s| x[s - 1].abs() <= ZERO_TOL)
    });
    let p = t.pendants().len();
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let payload = json!({
        "lambda": basis.lambda,
        "vectors": vectors,
        "residuals": residuals,
        "max_residual": max_residual,
        "rank": rank,
        "expected_rank": p - 1,
        "zero_at_majors": zero_at_majors,
        "zero_at_congruent_vertices": zero_at_congruent,
        "trace": basis.trace,
    });
    let ok = max_residual <= 1e-10 && rank + 1 == p && zero_at_majors && zero_at_congruent;
    let mut csv = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["vector".to_string()];
    header.extend(t.vertices().map(|v| v.to_string()));
    csv.write_record(&header).expect("in-memory write");
    for (i, x) in vectors.iter().enumerate() {
        let mut row = vec![(i + 1).to_string()];
        row.extend(x.iter().map(|&v| fmt_f(v)));
        csv.write_record(&row).expect("in-memory write");
    }
    let vectors_csv = String::from_utf8(csv.into_inner().expect("flush")).expect("utf8");

    let mut s = String::new();
    let _ = writeln!(s, "lambda = {} ≈ {}", basis.lambda, fmt_f(lambda));
    let _ = writeln!(
        s,
        "{} vectors, rank {}, max residual {:.3e}",
        vectors.len(),
        rank,
        max_residual
    );
    let _ = writeln!(
        s,
        "zero at major vertices: {zero_at_majors}; at congruent vertices: {zero_at_congruent}"
    );
    for step in &basis.trace.steps {
        let r = &step.path;
        let _ = writeln!(
            s,
            "  path {}..{} through {}: k1={} k2={} N1={} N2={} delta={}",
            r.u, r.w, r.anchor, r.k1, r.k2, r.n1, r.n2, r.delta
        );
    }
    Ok(EigenbasisOutput {
        output: Output {
            json: envelope(
                "eigenbasis",
                input_echo(&t),
                json!({ "q": q, "b": b, "tol": tol }),
                payload,
                elapsed_ms(start),
            ),
            text: s,
            disagreement: (!ok).then(|| "constructed eigenbasis failed its certificate checks".to_string()),
        },
        vectors_csv,
    })
}

fn spectrum_json(s: &Spectrum) -> Value {
    json!({
        "eigenvalues": s.eigenvalues,
        "clusters": s.clusters.iter().map(|c| json!({"value": c.value, "multiplicity": c.multiplicity})).collect::<Vec<_>>(),
        "cluster_tolerance": s.tolerance,
    })
}

/// Numeric spectrum, characteristic polynomial and, for paths, the
/// closed-form eigenvalues.
pub fn spectrum(text: &str, tol: f64, signless: bool) -> Result<Output, CommandError> {
    let start = Instant::now();
    let t = load_tree(text)?;
    let m = laplacian(&t, signless);
    let spec = eigen_symmetric(&m, tol).map_err(|e| CommandError::Invalid(e.to_string()))?;
    let mut payload = json!({
        "matrix": if signless { "signless" } else { "laplacian" },
        "spectrum": spectrum_json(&spec),
        "characteristic_polynomial": poly_json(&char_poly(&m)),
    });
    let mut s = String::new();
    for c in &spec.clusters {
        let _ = writeln!(s, "{:>20}  x{}", fmt_f(c.value), c.multiplicity);
    }
    if t.is_path() {
        // Path spectra are the same for L and Q.
        let n = t.order();
        let closed: Vec<f64> = (0..n)
            .map(|j| 2.0 * (1.0 - (std::f64::consts::PI * j as f64 / n as f64).cos()))
            .collect();
        let mut sorted = closed.clone();
        sorted.sort_by(f64::total_cmp);
        let deviation = sorted
            .iter()
            .zip(&spec.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        payload["path_closed_form"] = json!({ "eigenvalues": closed, "max_deviation": deviation });
        let _ = writeln!(s, "path: closed form matches within {deviation:.3e}");
    }
    Ok(Output {
        json: envelope(
            "spectrum",
            input_echo(&t),
            json!({ "tol": tol, "signless": signless }),
            payload,
            elapsed_ms(start),
        ),
        text: s,
        disagreement: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogFormat {
    Csv,
    Json,
    Dot,
}

impl CatalogFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(CatalogFormat::Csv),
            "json" => Some(CatalogFormat::Json),
            "dot" => Some(CatalogFormat::Dot),
            _ => None,
        }
    }
}

/// Column names of the catalog CSV; each is a key of the JSON entry or of
/// its `report`.
pub const CATALOG_COLUMNS: [&str; 13] = [
    "n",
    "p",
    "canonical_form",
    "name",
    "extremal",
    "g",
    "q_list",
    "lambda_set",
    "unit_multiplicity",
    "m1_class",
    "omega",
    "max_multiplicity",
    "edges",
];

fn catalog_csv(entries: &[CatalogEntry]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CATALOG_COLUMNS).expect("in-memory write");
    for e in entries {
        let r = &e.report;
        let join = |items: Vec<String>| items.join(" ");
        w.write_record([
            r.n.to_string(),
            r.p.to_string(),
            e.canonical_form.clone(),
            e.name.clone().unwrap_or_default(),
            r.extremal.to_string(),
            r.certificate.as_ref().map(|c| c.g.to_string()).unwrap_or_default(),
            join(
                r.certificate
                    .as_ref()
                    .map(|c| c.q_list.iter().map(u64::to_string).collect())
                    .unwrap_or_default(),
            ),
            join(
                r.lambda_set
                    .iter()
                    .map(|l| {
                        let (a, b) = l.ratio();
                        format!("{a}/{b}")
                    })
                    .collect(),
            ),
            r.unit_multiplicity.to_string(),
            r.m1_class.as_str().to_string(),
            r.gamma_witness
                .as_ref()
                .map(|w| format!("{:?}", w.omega))
                .unwrap_or_default(),
            e.max_multiplicity.to_string(),
            join(e.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect()),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn catalog_dot(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    for (i, e) in entries.iter().enumerate() {
        let title = e.name.clone().unwrap_or_else(|| e.canonical_form.clone());
        let _ = writeln!(s, "graph T{} {{", i + 1);
        let _ = writeln!(
            s,
            "  label=\"{} | p={} | m(T,1)={} ({})\";",
            title,
            e.report.p,
            e.report.unit_multiplicity,
            e.report.m1_class.as_str()
        );
        let _ = writeln!(s, "  node [shape=circle];");
        if e.edges.is_empty() {
            let _ = writeln!(s, "  1;");
        }
        for (u, v) in &e.edges {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        let _ = writeln!(s, "}}");
    }
    s
}

/// The full catalog rendered in `format`, and its entry count.
pub fn enumerate(max_n: usize, filter: CatalogFilter, format: CatalogFormat) -> Result<(String, usize), CommandError> {
    let start = Instant::now();
    let entries = build_catalog(max_n, filter)?;
    let body = match format {
        CatalogFormat::Csv => catalog_csv(&entries),
        CatalogFormat::Dot => catalog_dot(&entries),
        CatalogFormat::Json => {
            let payload = json!({ "count": entries.len(), "entries": entries });
            let v = envelope(
                "enumerate",
                Value::Null,
                json!({ "max_n": max_n, "filter": filter.as_str() }),
                payload,
                elapsed_ms(start),
            );
            to_pretty(&v) + "\n"
        }
    };
    Ok((body, entries.len()))
}
