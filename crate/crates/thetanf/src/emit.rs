//! Deterministic JSON and text reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thetanf_core::{BigInt, BigRational, DimBound, DimBoundMode, IntMatrix};

use crate::analysis::{Analysis, FieldResult, SkippedField};
use crate::config::{OutputFormat, RunConfig, DISPLAY_PRECISION};
use crate::error::{PipelineError, Result};
use crate::report::{GroupReport, Independence, Witness};

pub const SCHEMA_VERSION: u32 = 1;

/// Arbitrary-size integer written as a bare JSON number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&self.0.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

fn int(b: &BigInt) -> Int {
    Int(b.clone())
}

fn matrix(m: &IntMatrix) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| int(&m[(i, j)])).collect()).collect()
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub config: ConfigView,
    pub fields: Vec<FieldView>,
    pub skipped: Vec<SkipView>,
    pub groups: Vec<GroupView>,
}

#[derive(Debug, Serialize)]
pub struct ConfigView {
    pub precision: u64,
    pub degree_range: [usize; 2],
    pub lll_delta: String,
    pub require_fundamental: bool,
    pub require_coprime: bool,
    pub galois: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct MetadataView {
    pub weight: String,
    pub level: Int,
    pub character_disc: Int,
}

#[derive(Debug, Serialize)]
pub struct CheckView {
    pub name: &'static str,
    pub outcome: &'static str,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct FieldView {
    pub index: usize,
    pub label: String,
    pub polynomial: String,
    pub coefficients: Vec<Int>,
    pub degree: usize,
    pub galois: Option<String>,
    pub disc: Int,
    pub trace_ideal: Int,
    pub gram: Vec<Vec<Int>>,
    pub det: Int,
    pub form_disc: Int,
    pub level: Int,
    pub minimum: Int,
    pub smallest_prime: Option<u64>,
    pub precision: u64,
    /// Nonzero `[t, c_t]`, constant term included.
    pub theta: Vec<[u64; 2]>,
    pub theta_leading: String,
    pub metadata: MetadataView,
    pub checks: Vec<CheckView>,
}

#[derive(Debug, Serialize)]
pub struct SkipView {
    pub index: usize,
    pub label: String,
    pub reasons: Vec<ReasonView>,
}

#[derive(Debug, Serialize)]
pub struct ReasonView {
    pub kind: &'static str,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct IndependenceView {
    pub verdict: &'static str,
    pub rank: usize,
    pub precision: u64,
}

#[derive(Debug, Serialize)]
pub struct CollisionView {
    pub a: String,
    pub b: String,
    pub shared_prime: Option<u64>,
    pub shared_minimum: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct EqualView {
    pub a: String,
    pub b: String,
    pub witness: &'static str,
    pub matrix: Option<Vec<Vec<Int>>>,
}

#[derive(Debug, Serialize)]
pub struct DimBoundView {
    pub d: u64,
    pub level: u64,
    pub mode: &'static str,
    pub main_term: String,
    pub main_term_floor: Int,
    pub lambda_product: Int,
    pub sol_count: u64,
    pub sqrt_bound: u64,
    pub lower_bound: String,
    pub heuristic: bool,
}

#[derive(Debug, Serialize)]
pub struct GroupView {
    pub disc: Int,
    pub fields: Vec<String>,
    pub indices: Vec<usize>,
    pub independence: IndependenceView,
    pub collisions: Vec<CollisionView>,
    pub equal_theta: Vec<EqualView>,
    pub dim_bound: Option<DimBoundView>,
    pub main_term_exceeds_count: Option<bool>,
}

fn rational(q: &BigRational) -> String {
    q.to_string()
}

pub fn mode_name(m: DimBoundMode) -> &'static str {
    match m {
        DimBoundMode::Paper => "paper",
        DimBoundMode::ExactTerms => "exact",
    }
}

pub fn dim_bound_view(b: &DimBound) -> DimBoundView {
    DimBoundView {
        d: b.d,
        level: b.level,
        mode: mode_name(b.mode),
        main_term: rational(&b.main_term),
        main_term_floor: Int(b.main_term_floor()),
        lambda_product: int(&b.lambda_product),
        sol_count: b.sol_count,
        sqrt_bound: b.sqrt_bound,
        lower_bound: rational(&b.lower_bound),
        heuristic: b.heuristic,
    }
}

pub fn independence_view(i: &Independence, k: usize) -> IndependenceView {
    match *i {
        Independence::IndependentAt { precision } => {
            IndependenceView { verdict: "independent_at", rank: k, precision }
        }
        Independence::Undetermined { rank, precision } => {
            IndependenceView { verdict: "undetermined", rank, precision }
        }
    }
}

/// Leading terms as printed in tables: exponents below [`DISPLAY_PRECISION`].
pub fn leading_terms(r: &FieldResult) -> String {
    r.theta.truncate(DISPLAY_PRECISION - 1).display_terms()
}

pub fn field_view(r: &FieldResult) -> FieldView {
    let rec = r.record();
    let inv = &r.invariants;
    FieldView {
        index: r.index,
        label: r.label.clone(),
        polynomial: rec.poly.to_string(),
        coefficients: rec.poly.coeffs().iter().map(int).collect(),
        degree: rec.degree(),
        galois: rec.galois_group.clone(),
        disc: int(r.disc()),
        trace_ideal: int(&r.lattice.m),
        gram: matrix(r.form.gram()),
        det: int(&inv.det),
        form_disc: int(&inv.disc),
        level: int(&inv.level),
        minimum: int(&inv.minimum),
        smallest_prime: r.theta.smallest_represented_prime(),
        precision: r.theta.precision(),
        theta: std::iter::once([0, r.theta.coeff(0)]).chain(r.theta.support().map(|(t, c)| [t, c])).collect(),
        theta_leading: leading_terms(r),
        metadata: MetadataView {
            weight: r.metadata.weight.to_string(),
            level: int(&r.metadata.level),
            character_disc: int(&r.metadata.character_disc),
        },
        checks: r
            .checks
            .iter()
            .map(|c| CheckView { name: c.name, outcome: c.outcome.as_str(), detail: c.detail.clone() })
            .collect(),
    }
}

fn skip_view(s: &SkippedField) -> SkipView {
    SkipView {
        index: s.index,
        label: s.label.clone(),
        reasons: s.reasons.iter().map(|r| ReasonView { kind: r.tag(), detail: r.to_string() }).collect(),
    }
}

fn group_view(g: &GroupReport) -> GroupView {
    let name = |i: usize| g.labels[i].clone();
    GroupView {
        disc: int(&g.disc),
        fields: g.labels.clone(),
        indices: g.indices.clone(),
        independence: independence_view(&g.independence, g.len()),
        collisions: g
            .collisions
            .iter()
            .map(|c| CollisionView {
                a: name(c.a),
                b: name(c.b),
                shared_prime: c.shared_prime,
                shared_minimum: c.shared_minimum,
            })
            .collect(),
        equal_theta: g
            .equal_theta
            .iter()
            .map(|e| {
                let (witness, m) = match &e.witness {
                    Witness::Found(u) => ("found", Some(matrix(u))),
                    Witness::NotFound => ("not_found", None),
                    Witness::NotAttempted => ("not_attempted", None),
                };
                EqualView { a: name(e.a), b: name(e.b), witness, matrix: m }
            })
            .collect(),
        dim_bound: g.dim_bound.as_ref().map(dim_bound_view),
        main_term_exceeds_count: g.main_term_exceeds_count(),
    }
}

pub fn build_report(analysis: &Analysis, groups: &[GroupReport], config: &RunConfig) -> Report {
    Report {
        schema: SCHEMA_VERSION,
        config: ConfigView {
            precision: config.precision,
            degree_range: [*config.degrees.start(), *config.degrees.end()],
            lll_delta: rational(&config.delta),
            require_fundamental: config.require_fundamental,
            require_coprime: config.require_coprime,
            galois: config.galois.clone(),
        },
        fields: analysis.results.iter().map(field_view).collect(),
        skipped: analysis.skipped.iter().map(skip_view).collect(),
        groups: groups.iter().map(group_view).collect(),
    }
}

pub fn render_json(analysis: &Analysis, groups: &[GroupReport], config: &RunConfig) -> String {
    let mut s = serde_json::to_string_pretty(&build_report(analysis, groups, config))
        .expect("report serialization cannot fail");
    s.push('\n');
    s
}

/// Upper triangle with `*` below the diagonal, rows separated by `;`.
pub fn gram_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| if j < i { "*".to_string() } else { m[(i, j)].to_string() })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let pad = width[i] - c.chars().count();
                s.push_str(c);
                s.push_str(&" ".repeat(pad + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub fn render_text(analysis: &Analysis, groups: &[GroupReport], config: &RunConfig) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "theta series of trace-zero forms (schema {SCHEMA_VERSION}, precision B = {}, LLL delta {})",
        config.precision, config.delta
    )
    .unwrap();
    writeln!(s, "fields: {} analysed, {} skipped\n", analysis.results.len(), analysis.skipped.len()).unwrap();

    let rows: Vec<Vec<String>> = analysis
        .results
        .iter()
        .map(|r| {
            let flags: Vec<&str> = r
                .checks
                .iter()
                .filter(|c| c.outcome != crate::analysis::Outcome::Pass)
                .map(|c| c.name)
                .collect();
            vec![
                r.label.clone(),
                r.record().poly.to_string(),
                r.disc().to_string(),
                gram_text(r.form.gram()),
                r.invariants.level.to_string(),
                r.invariants.minimum.to_string(),
                leading_terms(r),
                if flags.is_empty() { "ok".into() } else { flags.join(",") },
            ]
        })
        .collect();
    s.push_str(&table(&["label", "polynomial", "d", "gram", "level", "min", "theta", "checks"], &rows));

    if !analysis.skipped.is_empty() {
        s.push_str("\nskipped\n");
        let rows: Vec<Vec<String>> = analysis
            .skipped
            .iter()
            .map(|k| {
                vec![
                    k.index.to_string(),
                    k.label.clone(),
                    k.reasons.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
                ]
            })
            .collect();
        s.push_str(&table(&["index", "label", "reasons"], &rows));
    }

    s.push_str("\ngroups\n");
    let rows: Vec<Vec<String>> = groups
        .iter()
        .map(|g| {
            let verdict = match g.independence {
                Independence::IndependentAt { precision } => format!("independent_at({precision})"),
                Independence::Undetermined { rank, precision } => format!("undetermined(rank {rank}, B {precision})"),
            };
            let collisions: Vec<String> = g
                .collisions
                .iter()
                .map(|c| {
                    let mut parts = Vec::new();
                    if let Some(p) = c.shared_prime {
                        parts.push(format!("prime {p}"));
                    }
                    if let Some(m) = c.shared_minimum {
                        parts.push(format!("min {m}"));
                    }
                    format!("{}~{}: {}", g.labels[c.a], g.labels[c.b], parts.join(", "))
                })
                .collect();
            vec![
                g.disc.to_string(),
                g.len().to_string(),
                verdict,
                g.dim_bound.as_ref().map_or("-".into(), |b| b.main_term.to_string()),
                if collisions.is_empty() { "-".into() } else { collisions.join("; ") },
            ]
        })
        .collect();
    s.push_str(&table(&["d", "fields", "independence", "dim main term", "collisions"], &rows));
    s
}

pub fn render(analysis: &Analysis, groups: &[GroupReport], config: &RunConfig) -> String {
    match config.format {
        OutputFormat::Json => render_json(analysis, groups, config),
        OutputFormat::Text => render_text(analysis, groups, config),
    }
}

/// Writes `report.json` or `report.txt` into `dir`, creating it if needed.
pub fn emit_reports(
    analysis: &Analysis,
    groups: &[GroupReport],
    config: &RunConfig,
    dir: &Path,
) -> Result<PathBuf> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| PipelineError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let name = match config.format {
        OutputFormat::Json => "report.json",
        OutputFormat::Text => "report.txt",
    };
    let path = dir.join(name);
    std::fs::write(&path, render(analysis, groups, config)).map_err(io(&path))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_ints_are_numbers() {
        let v = serde_json::to_string(&Int(BigInt::from(10).pow(30))).unwrap();
        assert_eq!(v, "1000000000000000000000000000000");
    }

    #[test]
    fn empty_report_is_valid_json() {
        let c = RunConfig::default();
        let s = render_json(&Analysis::default(), &[], &c);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], 1);
        assert!(v["fields"].as_array().unwrap().is_empty());
        assert!(v["groups"].as_array().unwrap().is_empty());
        assert!(render_text(&Analysis::default(), &[], &c).contains("0 analysed"));
    }

    #[test]
    fn gram_layout() {
        let m = IntMatrix::from_i64_rows(&[[2, 1], [1, 4]]);
        assert_eq!(gram_text(&m), "[2 1; * 4]");
    }

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxyz  1\n");
    }
}
