//! Grouping by discriminant, independence and collision experiments.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use thetanf_core::arith::is_squarefree_u64;
use thetanf_core::linalg::rank_exact;
use thetanf_core::modular::dim_lower_bound;
use thetanf_core::qform::isometry;
use thetanf_core::{BigInt, BigRational, DimBound, DimBoundMode, IntMatrix};

use crate::analysis::FieldResult;
use crate::config::RunConfig;

/// Verdict on the theta series of one discriminant group.
///
/// A rank deficiency only says that the truncations are dependent; it never
/// certifies a relation between the full series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Independence {
    IndependentAt { precision: u64 },
    Undetermined { rank: usize, precision: u64 },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::IndependentAt { .. })
    }
}

/// Two fields of a group sharing their smallest represented prime or their
/// minimum. Positions refer to the group's field list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub a: usize,
    pub b: usize,
    pub shared_prime: Option<u64>,
    pub shared_minimum: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Rank above the isometry cut-off, or the search errored.
    NotAttempted,
    Found(IntMatrix),
    /// Equal truncated theta series without an isometry. For ternary forms
    /// this contradicts Schiemann's theorem at large precision and is
    /// treated as a suspected bug.
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaComparison {
    pub equal: bool,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualPair {
    pub a: usize,
    pub b: usize,
    pub witness: Witness,
}

/// Largest form rank for which [`theta_equal`] looks for an isometry.
pub const WITNESS_RANK: usize = 3;

#[derive(Debug, Clone)]
pub struct GroupReport {
    pub disc: BigInt,
    /// Corpus positions of the fields, in input order.
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    pub rank: usize,
    pub independence: Independence,
    pub collisions: Vec<Collision>,
    pub equal_theta: Vec<EqualPair>,
    /// Present when `d` is odd and squarefree.
    pub dim_bound: Option<DimBound>,
}

impl GroupReport {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Whether the main term of the dimension bound exceeds the field count.
    pub fn main_term_exceeds_count(&self) -> Option<bool> {
        self.dim_bound
            .as_ref()
            .map(|b| b.main_term > BigRational::from_integer(BigInt::from(self.len())))
    }
}

/// Coefficient-wise comparison up to `precision`, capped at what both series
/// carry. For equal series of rank at most [`WITNESS_RANK`] an isometry is
/// searched for and verified.
pub fn theta_equal(r1: &FieldResult, r2: &FieldResult, precision: u64) -> ThetaComparison {
    let b = precision.min(r1.theta.precision()).min(r2.theta.precision());
    let equal = r1.form.rank() == r2.form.rank() && r1.theta.agrees_up_to(&r2.theta, b);
    let witness = if !equal || r1.form.rank() > WITNESS_RANK {
        Witness::NotAttempted
    } else {
        match isometry(&r1.form, &r2.form) {
            Ok(Some(u)) => Witness::Found(u),
            Ok(None) => Witness::NotFound,
            Err(_) => Witness::NotAttempted,
        }
    };
    ThetaComparison { equal, witness }
}

/// Rank of the stacked coefficient rows `c_0..c_B`.
pub fn coefficient_rank(fields: &[&FieldResult], precision: u64) -> usize {
    let rows: Vec<Vec<BigInt>> = fields
        .iter()
        .map(|r| (0..=precision).map(|t| BigInt::from(r.theta.coeff(t))).collect())
        .collect();
    if rows.is_empty() {
        return 0;
    }
    rank_exact(&IntMatrix::from_rows(rows).expect("rows have equal length"))
}

fn dim_bound_for(d: &BigInt) -> Option<DimBound> {
    let d = d.to_u64()?;
    if d <= 1 || d % 2 == 0 || !is_squarefree_u64(d) {
        return None;
    }
    dim_lower_bound(d, DimBoundMode::Paper).ok()
}

/// Groups results by discriminant (ascending) and runs the per-group
/// experiments at `config.precision`.
pub fn group_and_report(results: &[FieldResult], config: &RunConfig) -> Vec<GroupReport> {
    let mut groups: BTreeMap<&BigInt, Vec<&FieldResult>> = BTreeMap::new();
    for r in results {
        groups.entry(r.disc()).or_default().push(r);
    }
    let b = config.precision;
    groups
        .into_iter()
        .map(|(d, mut fields)| {
            fields.sort_by_key(|r| r.index);
            let rank = coefficient_rank(&fields, b);
            let independence = if rank == fields.len() {
                Independence::IndependentAt { precision: b }
            } else {
                Independence::Undetermined { rank, precision: b }
            };
            let mut collisions = Vec::new();
            let mut equal_theta = Vec::new();
            for i in 0..fields.len() {
                for j in i + 1..fields.len() {
                    let (x, y) = (fields[i], fields[j]);
                    let px = x.theta.smallest_represented_prime();
                    let shared_prime = px.filter(|_| px == y.theta.smallest_represented_prime());
                    let mx = &x.invariants.minimum;
                    let shared_minimum = (mx == &y.invariants.minimum).then(|| mx.to_u64()).flatten();
                    if shared_prime.is_some() || shared_minimum.is_some() {
                        collisions.push(Collision { a: i, b: j, shared_prime, shared_minimum });
                    }
                    let cmp = theta_equal(x, y, b);
                    if cmp.equal {
                        equal_theta.push(EqualPair { a: i, b: j, witness: cmp.witness });
                    }
                }
            }
            GroupReport {
                disc: d.clone(),
                indices: fields.iter().map(|r| r.index).collect(),
                labels: fields.iter().map(|r| r.label.clone()).collect(),
                rank,
                independence,
                collisions,
                equal_theta,
                dim_bound: dim_bound_for(d),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{analyze_corpus, analyze_field};
    use thetanf_core::{FieldRecord, Polynomial};

    fn rec(c: &[i64]) -> FieldRecord {
        FieldRecord::new(Polynomial::from_i64(c).unwrap())
    }

    fn config() -> RunConfig {
        RunConfig::default().with_precision(60)
    }

    #[test]
    fn shifted_copy_is_undetermined_with_witness() {
        let f = rec(&[-1, -4, 0, 1]);
        let g = FieldRecord::new(f.poly.translate(&BigInt::from(-1)));
        let a = analyze_corpus(&[f, g], &config()).unwrap();
        let reports = group_and_report(&a.results, &config());
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].independence, Independence::Undetermined { rank: 1, precision: 60 });
        assert_eq!(reports[0].equal_theta.len(), 1);
        let Witness::Found(u) = &reports[0].equal_theta[0].witness else { panic!("no witness") };
        assert_eq!(a.results[0].form.gram().congruent(u).unwrap(), *a.results[1].form.gram());
    }

    #[test]
    fn groups_ascend_and_singletons_are_independent() {
        let recs = [rec(&[-4, -1, 1]), rec(&[-1, -1, 1]), rec(&[-3, -1, 1])];
        let a = analyze_corpus(&recs, &config()).unwrap();
        let reports = group_and_report(&a.results, &config());
        let ds: Vec<_> = reports.iter().map(|g| g.disc.clone()).collect();
        assert_eq!(ds, [BigInt::from(5), BigInt::from(13), BigInt::from(17)]);
        assert!(reports.iter().all(|g| g.independence.is_independent()));
        assert_eq!(reports[0].indices, [1]);
        assert!(reports.iter().all(|g| g.main_term_exceeds_count() == Some(true)));
    }

    #[test]
    fn unequal_thetas() {
        let a = analyze_field(&rec(&[-1, -1, 1]), &config()).unwrap();
        let b = analyze_field(&rec(&[-3, -1, 1]), &config()).unwrap();
        let cmp = theta_equal(&a, &b, 60);
        assert!(!cmp.equal);
        assert_eq!(cmp.witness, Witness::NotAttempted);
        assert!(theta_equal(&a, &a, 60).equal);
    }
}
