//! Validation and per-field analysis.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thetanf_core::arith::is_fundamental_discriminant;
use thetanf_core::modular::theta_metadata;
use thetanf_core::numfield::{irreducibility, make_order, Irreducibility};
use thetanf_core::{
    BigInt, Error as CoreError, FieldRecord, FormInvariants, OrderBasis, QuadraticForm, ThetaMetadata,
    ThetaSeries, TraceZeroLattice,
};

use crate::config::RunConfig;
use crate::error::{PipelineError, Result};

/// Why a record was not analysed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    DegreeOutsideRange(usize),
    GaloisMismatch { wanted: String, found: String },
    NotSeparable,
    Reducible { root: BigInt },
    NotTotallyReal,
    NotMaximal(BigInt),
    NotAnOrder(String),
    DiscMismatch { computed: BigInt, claimed: BigInt },
    NotFundamental(BigInt),
    NotCoprime { degree: usize, disc: BigInt },
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkipReason::DegreeOutsideRange(n) => write!(f, "degree {n} outside the configured range"),
            SkipReason::GaloisMismatch { wanted, found } => write!(f, "Galois group {found}, wanted {wanted}"),
            SkipReason::NotSeparable => f.write_str("polynomial has a repeated root"),
            SkipReason::Reducible { root } => write!(f, "reducible: integer root {root}"),
            SkipReason::NotTotallyReal => f.write_str("not totally real"),
            SkipReason::NotMaximal(p) => write!(f, "power basis not maximal at {p}; supply a basis"),
            SkipReason::NotAnOrder(why) => write!(f, "basis does not span an order: {why}"),
            SkipReason::DiscMismatch { computed, claimed } => {
                write!(f, "discriminant {computed} differs from claimed {claimed}")
            }
            SkipReason::NotFundamental(d) => write!(f, "discriminant {d} is not fundamental"),
            SkipReason::NotCoprime { degree, disc } => write!(f, "gcd({degree}, {disc}) > 1"),
        }
    }
}

impl SkipReason {
    /// Short machine-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            SkipReason::DegreeOutsideRange(_) => "DegreeOutsideRange",
            SkipReason::GaloisMismatch { .. } => "GaloisMismatch",
            SkipReason::NotSeparable => "NotSeparable",
            SkipReason::Reducible { .. } => "Reducible",
            SkipReason::NotTotallyReal => "NotTotallyReal",
            SkipReason::NotMaximal(_) => "NotMaximal",
            SkipReason::NotAnOrder(_) => "NotAnOrder",
            SkipReason::DiscMismatch { .. } => "DiscMismatch",
            SkipReason::NotFundamental(_) => "NotFundamental",
            SkipReason::NotCoprime { .. } => "NotCoprime",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Accept(Box<OrderBasis>),
    Skip(Vec<SkipReason>),
}

impl Validation {
    pub fn is_accept(&self) -> bool {
        matches!(self, Validation::Accept(_))
    }
}

/// Structural checks stop at the first failure; the hypothesis checks
/// (fundamental discriminant, `gcd(n, d) = 1`) only run on a valid order.
pub fn validate_field(rec: &FieldRecord, config: &RunConfig) -> Validation {
    let mut reasons = Vec::new();
    if let (Some(wanted), Some(found)) = (&config.galois, &rec.galois_group) {
        if wanted != found {
            reasons.push(SkipReason::GaloisMismatch { wanted: wanted.clone(), found: found.clone() });
        }
    }
    match structural(rec, config) {
        Err(r) => {
            reasons.push(r);
            Validation::Skip(reasons)
        }
        Ok(order) => {
            let n = rec.degree();
            let d = &order.disc;
            if config.require_fundamental && !is_fundamental_discriminant(d) {
                reasons.push(SkipReason::NotFundamental(d.clone()));
            }
            if config.require_coprime && !d.gcd(&BigInt::from(n)).is_one() {
                reasons.push(SkipReason::NotCoprime { degree: n, disc: d.clone() });
            }
            if reasons.is_empty() {
                Validation::Accept(Box::new(order))
            } else {
                Validation::Skip(reasons)
            }
        }
    }
}

fn structural(rec: &FieldRecord, config: &RunConfig) -> Result<OrderBasis, SkipReason> {
    let n = rec.degree();
    if !config.degrees.contains(&n) {
        return Err(SkipReason::DegreeOutsideRange(n));
    }
    if rec.poly.discriminant().is_err() {
        return Err(SkipReason::NotSeparable);
    }
    if let Irreducibility::IntegerRoot(root) = irreducibility(&rec.poly) {
        return Err(SkipReason::Reducible { root });
    }
    if !rec.poly.is_totally_real().unwrap_or(false) {
        return Err(SkipReason::NotTotallyReal);
    }
    make_order(rec.clone()).map_err(|e| match e {
        CoreError::NotMaximal(p) => SkipReason::NotMaximal(p),
        CoreError::DiscMismatch { computed, claimed } => SkipReason::DiscMismatch { computed, claimed },
        CoreError::NotSeparable => SkipReason::NotSeparable,
        other => SkipReason::NotAnOrder(other.to_string()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// Outside the hypotheses of the statement being checked, or not decided.
    Flag,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Flag => "flag",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, outcome: Outcome, detail: impl Into<String>) -> Self {
        Self { name, outcome, detail: detail.into() }
    }
}

/// Everything computed for one accepted field.
#[derive(Debug, Clone)]
pub struct FieldResult {
    /// Position in the input corpus.
    pub index: usize,
    pub label: String,
    pub lattice: TraceZeroLattice,
    pub form: QuadraticForm,
    pub invariants: FormInvariants,
    pub theta: ThetaSeries,
    pub metadata: ThetaMetadata,
    pub checks: Vec<Check>,
}

impl FieldResult {
    pub fn record(&self) -> &FieldRecord {
        &self.lattice.order.field
    }

    pub fn order(&self) -> &OrderBasis {
        &self.lattice.order
    }

    pub fn degree(&self) -> usize {
        self.record().degree()
    }

    pub fn disc(&self) -> &BigInt {
        &self.lattice.order.disc
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// A record that did not pass validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedField {
    pub index: usize,
    pub label: String,
    pub reasons: Vec<SkipReason>,
}

/// All results of a corpus run, each list in input order.
#[derive(Debug, Clone, Default)]
pub struct Analysis {
    pub results: Vec<FieldResult>,
    pub skipped: Vec<SkippedField>,
}

pub fn label_of(rec: &FieldRecord) -> String {
    rec.label.clone().unwrap_or_else(|| rec.poly.to_string())
}

/// Validates and analyses a single record.
pub fn analyze_field(rec: &FieldRecord, config: &RunConfig) -> Result<FieldResult> {
    analyze_indexed(0, rec, config)?.map_err(|s| PipelineError::Rejected {
        label: s.label,
        reasons: s.reasons.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
    })
}

fn analyze_indexed(
    index: usize,
    rec: &FieldRecord,
    config: &RunConfig,
) -> Result<std::result::Result<FieldResult, SkippedField>> {
    let label = label_of(rec);
    match validate_field(rec, config) {
        Validation::Skip(reasons) => Ok(Err(SkippedField { index, label, reasons })),
        Validation::Accept(order) => analyze_order(index, label, *order, config).map(Ok),
    }
}

fn analyze_order(index: usize, label: String, order: OrderBasis, config: &RunConfig) -> Result<FieldResult> {
    let core = |source: CoreError| PipelineError::Field { label: label.clone(), source };
    let n = order.field.degree();
    let d = order.disc.clone();
    let irreducible = irreducibility(&order.field.poly);
    let lattice = thetanf_core::numfield::trace_zero_lattice(order).map_err(core)?;
    let form = QuadraticForm::new(lattice.gram.clone()).map_err(core)?;
    let invariants = form.invariants().map_err(core)?;
    let theta = form.theta_series_with_delta(config.precision, &config.delta).map_err(core)?;
    let metadata = theta_metadata(n, &d).map_err(core)?;

    let nb = BigInt::from(n);
    let fundamental = is_fundamental_discriminant(&d);
    let coprime = d.gcd(&nb).is_one();
    let m2 = &lattice.m * &lattice.m;
    let mut checks = Vec::new();

    let lemma = invariants.det.is_positive() && &invariants.det * &m2 == &nb * &d;
    checks.push(Check::new(
        "lemma_det",
        if lemma { Outcome::Pass } else { Outcome::Fail },
        format!("det {} vs n·d/m² = {}·{}/{}", invariants.det, n, d, m2),
    ));
    let gram = form.gram();
    let even = (0..form.rank()).all(|i| gram[(i, i)].is_even());
    checks.push(Check::new(
        "even_diagonal",
        if even { Outcome::Pass } else { Outcome::Fail },
        if even { "all diagonal entries even".to_string() } else { "odd diagonal entry".to_string() },
    ));
    let two_nd = &metadata.level;
    let divides = (two_nd % &invariants.level).is_zero();
    checks.push(Check::new(
        "level_divides_2nd",
        match (divides, fundamental && coprime) {
            (true, _) => Outcome::Pass,
            (false, true) => Outcome::Fail,
            (false, false) => Outcome::Flag,
        },
        format!("level {} | {two_nd}", invariants.level),
    ));
    checks.push(Check::new(
        "coprimality",
        if coprime { Outcome::Pass } else { Outcome::Flag },
        format!("gcd({n}, {d}) = {}", d.gcd(&nb)),
    ));
    checks.push(Check::new(
        "fundamental_disc",
        if fundamental { Outcome::Pass } else { Outcome::Flag },
        format!("d = {d}"),
    ));
    checks.push(match irreducible {
        Irreducibility::Certified => Check::new("irreducible", Outcome::Pass, "certified by factorization patterns mod p"),
        _ => Check::new("irreducible", Outcome::Flag, "no linear factor; irreducibility not certified"),
    });
    if n == 3 && fundamental {
        let nd = &nb * &d;
        checks.push(Check::new(
            "level_equals_nd",
            if invariants.level == nd { Outcome::Pass } else { Outcome::Flag },
            format!("level {} vs nd = {nd}", invariants.level),
        ));
    }
    if config.galois.is_some() {
        checks.push(match &order_galois(&lattice) {
            Some(g) => Check::new("galois", Outcome::Pass, format!("tagged {g}")),
            None => Check::new("galois", Outcome::Flag, "no Galois tag; filter not applied"),
        });
    }

    for c in &checks {
        if matches!(c.name, "lemma_det" | "even_diagonal") && c.outcome != Outcome::Pass {
            return Err(PipelineError::Invariant { label, detail: format!("{}: {}", c.name, c.detail) });
        }
    }
    Ok(FieldResult { index, label, lattice, form, invariants, theta, metadata, checks })
}

fn order_galois(l: &TraceZeroLattice) -> Option<&String> {
    l.order.field.galois_group.as_ref()
}

/// Runs validation and analysis over a corpus. Work is spread over a thread
/// pool; the output order is the input order regardless of scheduling.
pub fn analyze_corpus(records: &[FieldRecord], config: &RunConfig) -> Result<Analysis> {
    config.validate()?;
    let run = || -> Vec<Result<std::result::Result<FieldResult, SkippedField>>> {
        records.par_iter().enumerate().map(|(i, r)| analyze_indexed(i, r, config)).collect()
    };
    let outcomes = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| PipelineError::Config(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut analysis = Analysis::default();
    for o in outcomes {
        match o? {
            Ok(r) => analysis.results.push(r),
            Err(s) => analysis.skipped.push(s),
        }
    }
    Ok(analysis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use thetanf_core::Polynomial;

    fn rec(c: &[i64]) -> FieldRecord {
        FieldRecord::new(Polynomial::from_i64(c).unwrap())
    }

    fn reasons(v: Validation) -> Vec<&'static str> {
        match v {
            Validation::Skip(r) => r.iter().map(SkipReason::tag).collect(),
            Validation::Accept(_) => vec![],
        }
    }

    #[test]
    fn validation_examples() {
        let c = RunConfig::default();
        assert_eq!(reasons(validate_field(&rec(&[1, 0, 1]), &c)), ["NotTotallyReal"]);
        assert_eq!(reasons(validate_field(&rec(&[-5, 0, 1]), &c)), ["NotMaximal"]);
        assert!(validate_field(&rec(&[16, 5, -9, -2, 1]), &c).is_accept());
        assert_eq!(reasons(validate_field(&rec(&[-1, -2, 0, 1]), &c)), ["Reducible"]);
        assert_eq!(reasons(validate_field(&rec(&[1, -2, 1]), &c)), ["NotSeparable"]);
        assert_eq!(reasons(validate_field(&rec(&[-2, 0, 1]), &c)), ["NotCoprime"]);
        assert_eq!(reasons(validate_field(&rec(&[-3, 0, 1]), &c)), ["NotCoprime"]);
    }

    #[test]
    fn hypotheses_become_flags_when_not_required() {
        let c = RunConfig { require_coprime: false, ..RunConfig::default() };
        let r = analyze_field(&rec(&[-2, 0, 1]), &c).unwrap();
        assert_eq!(r.check("coprimality").unwrap().outcome, Outcome::Flag);
        assert_eq!(r.check("lemma_det").unwrap().outcome, Outcome::Pass);
        assert_eq!(r.invariants.det, BigInt::from(4));
    }

    #[test]
    fn galois_filter() {
        let c = RunConfig { galois: Some("S4".into()), ..RunConfig::default() };
        let mut r = rec(&[16, 5, -9, -2, 1]);
        assert_eq!(analyze_field(&r, &c).unwrap().check("galois").unwrap().outcome, Outcome::Flag);
        r.galois_group = Some("D4".into());
        assert_eq!(reasons(validate_field(&r, &c)), ["GaloisMismatch"]);
        r.galois_group = Some("S4".into());
        assert_eq!(analyze_field(&r, &c).unwrap().check("galois").unwrap().outcome, Outcome::Pass);
    }

    #[test]
    fn degree_filter() {
        let c = RunConfig { degrees: 3..=7, ..RunConfig::default() };
        assert_eq!(reasons(validate_field(&rec(&[-1, -1, 1]), &c)), ["DegreeOutsideRange"]);
    }

    #[test]
    fn cubic_level() {
        let r = analyze_field(&rec(&[-1, -4, 0, 1]), &RunConfig::default()).unwrap();
        assert_eq!(r.invariants.level, BigInt::from(687));
        assert_eq!(r.check("level_equals_nd").unwrap().outcome, Outcome::Pass);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let recs: Vec<_> = [&[-1, -1, 1][..], &[-1, -4, 0, 1], &[1, 0, 1], &[16, 5, -9, -2, 1]]
            .iter()
            .map(|c| rec(c))
            .collect();
        let one = analyze_corpus(&recs, &RunConfig { threads: Some(1), ..RunConfig::default() }).unwrap();
        let four = analyze_corpus(&recs, &RunConfig { threads: Some(4), ..RunConfig::default() }).unwrap();
        assert_eq!(one.skipped, four.skipped);
        let idx = |a: &Analysis| a.results.iter().map(|r| (r.index, r.theta.clone())).collect::<Vec<_>>();
        assert_eq!(idx(&one), idx(&four));
        assert_eq!(one.skipped[0].index, 2);
    }
}
