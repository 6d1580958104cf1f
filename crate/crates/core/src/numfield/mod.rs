//! Number fields given by a monic polynomial, their orders, and the
//! trace-zero lattice `O_K^0` with the trace form.
//!
//! All traces come from Newton power sums: no embedding is ever evaluated
//! numerically.

mod dedekind;
mod irreducible;
mod poly;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::square_prime_divisors;
use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, kernel_saturated, IntMatrix, RatMatrix};

pub use dedekind::dedekind_is_p_maximal;
pub use irreducible::{irreducibility, Irreducibility};
pub use poly::Polynomial;

pub const MIN_DEGREE: usize = 2;
pub const MAX_DEGREE: usize = 7;

/// An input field: defining polynomial plus optional basis and metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldRecord {
    pub poly: Polynomial,
    /// Rows are integral basis elements in power-basis coordinates.
    pub basis: Option<RatMatrix>,
    pub label: Option<String>,
    pub galois_group: Option<String>,
    pub claimed_disc: Option<BigInt>,
}

impl FieldRecord {
    pub fn new(poly: Polynomial) -> Self {
        Self { poly, basis: None, label: None, galois_group: None, claimed_disc: None }
    }

    pub fn with_basis(mut self, basis: RatMatrix) -> Self {
        self.basis = Some(basis);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }
}

/// A ℤ-basis of an order (the maximal one, for valid inputs) with its traces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderBasis {
    pub field: FieldRecord,
    pub basis_matrix: RatMatrix,
    /// `Tr(b_i)` for each basis element.
    pub trace_vector: Vec<BigInt>,
    /// `Tr(b_i b_j)`.
    pub trace_gram: IntMatrix,
    pub disc: BigInt,
}

/// `O_K^0` in order coordinates with its even Gram matrix `Tr(α_i α_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceZeroLattice {
    pub order: OrderBasis,
    /// `(n−1) × n`, rows in order-basis coordinates.
    pub basis: IntMatrix,
    pub gram: IntMatrix,
    /// Positive generator of `Tr(O_K) = mℤ`.
    pub m: BigInt,
}

/// Power sums `p_0..=p_count` of a root of `f`.
pub fn power_traces(f: &Polynomial, count: usize) -> Vec<BigInt> {
    f.power_traces(count)
}

pub fn disc_poly(f: &Polynomial) -> Result<BigInt> {
    f.discriminant()
}

pub fn count_real_roots(f: &Polynomial) -> Result<usize> {
    f.count_real_roots()
}

/// The matrix `P_ij = Tr(θ^{i+j})`, `0 ≤ i, j < n`.
fn power_trace_matrix(f: &Polynomial) -> IntMatrix {
    let n = f.degree();
    let p = f.power_traces(2 * n - 2);
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = p[i + j].clone();
        }
    }
    m
}

fn integral(m: &RatMatrix, what: &str) -> Result<IntMatrix> {
    m.to_integer().ok_or_else(|| Error::NotAnOrder(format!("{what} has non-integral entries")))
}

/// Trace Gram `T_ij = Tr(b_i b_j) = (B·P·Bᵀ)_ij` of a basis given in
/// power-basis coordinates.
fn trace_gram_of(f: &Polynomial, basis: &RatMatrix) -> Result<IntMatrix> {
    let p = power_trace_matrix(f).to_rational();
    let t = basis.mul(&p)?.mul(&basis.transpose())?;
    integral(&t, "trace Gram matrix")
}

/// Recomputes the trace Gram matrix of an order from its basis.
pub fn trace_gram(order: &OrderBasis) -> Result<IntMatrix> {
    trace_gram_of(&order.field.poly, &order.basis_matrix)
}

/// Validates a field record and returns a basis of its ring of integers.
///
/// With an explicit basis, the trace form must be integral and the
/// discriminant is the determinant of the trace Gram matrix. Without one,
/// the power basis is used and must pass Dedekind's criterion at every prime
/// whose square divides the polynomial discriminant.
pub fn make_order(rec: FieldRecord) -> Result<OrderBasis> {
    let f = &rec.poly;
    let n = f.degree();
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    let poly_disc = f.discriminant()?;
    let (basis_matrix, disc) = match &rec.basis {
        Some(b) => {
            if b.rows() != n || b.cols() != n {
                return Err(Error::NotAnOrder(format!(
                    "basis is {}x{}, expected {n}x{n}",
                    b.rows(),
                    b.cols()
                )));
            }
            if b.det()?.is_zero() {
                return Err(Error::NotAnOrder("basis is singular".into()));
            }
            let t = trace_gram_of(f, b)?;
            (b.clone(), det_bareiss(&t)?)
        }
        None => {
            for p in square_prime_divisors(&poly_disc) {
                if !dedekind_is_p_maximal(f, &p)? {
                    return Err(Error::NotMaximal(p));
                }
            }
            (RatMatrix::identity(n), poly_disc)
        }
    };
    if let Some(claimed) = &rec.claimed_disc {
        if *claimed != disc {
            return Err(Error::DiscMismatch { computed: disc, claimed: claimed.clone() });
        }
    }
    let traces = f.power_traces(n - 1);
    let tv: Vec<BigRational> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| &basis_matrix[(i, k)] * BigRational::from_integer(traces[k].clone()))
                .sum()
        })
        .collect();
    let trace_vector = tv
        .into_iter()
        .map(|q| q.is_integer().then(|| q.to_integer()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotAnOrder("basis element with non-integral trace".into()))?;
    let trace_gram = trace_gram_of(f, &basis_matrix)?;
    Ok(OrderBasis { field: rec, basis_matrix, trace_vector, trace_gram, disc })
}

/// The trace-zero sublattice with its Gram matrix, checked against the
/// determinant identity `|det| = n·d/m²`.
pub fn trace_zero_lattice(order: OrderBasis) -> Result<TraceZeroLattice> {
    let f = &order.field.poly;
    let n = f.degree();
    if f.count_real_roots()? != n {
        return Err(Error::NotTotallyReal);
    }
    let tv = IntMatrix::row_vector(order.trace_vector.clone());
    let basis = kernel_saturated(&tv);
    if basis.rows() != n - 1 {
        return Err(Error::InternalInvariantViolation(format!(
            "trace kernel has rank {}, expected {}",
            basis.rows(),
            n - 1
        )));
    }
    let gram = basis.mul(&order.trace_gram)?.mul(&basis.transpose())?;
    let m = order.trace_vector.iter().fold(BigInt::zero(), |acc, t| acc.gcd(t));
    for i in 0..n - 1 {
        if gram[(i, i)].is_odd() {
            return Err(Error::InternalInvariantViolation(format!(
                "odd diagonal entry {} in trace-zero Gram",
                gram[(i, i)]
            )));
        }
    }
    let det = det_bareiss(&gram)?;
    let expected = BigInt::from(n) * &order.disc;
    if &det * &m * &m != expected.abs() || !det.is_positive() {
        return Err(Error::InternalInvariantViolation(format!(
            "det of trace-zero Gram is {det}, expected n·d/m² = {expected}/{}",
            &m * &m
        )));
    }
    Ok(TraceZeroLattice { order, basis, gram, m })
}

impl TraceZeroLattice {
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// Convenience: polynomial → order → lattice.
    pub fn from_record(rec: FieldRecord) -> Result<Self> {
        trace_zero_lattice(make_order(rec)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn power_basis_grams() {
        let o = make_order(FieldRecord::new(poly(&[-1, -1, 1]))).unwrap();
        assert_eq!(o.trace_gram, IntMatrix::from_i64_rows(&[[2, 1], [1, 3]]));
        assert_eq!(o.disc, 5.into());
        let t = trace_gram_of(&poly(&[-5, 0, 1]), &RatMatrix::identity(2)).unwrap();
        assert_eq!(t, IntMatrix::from_i64_rows(&[[2, 0], [0, 10]]));
    }

    #[test]
    fn golden_ratio_basis() {
        let b = RatMatrix::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 2)]]).unwrap();
        let o = make_order(FieldRecord::new(poly(&[-5, 0, 1])).with_basis(b)).unwrap();
        assert_eq!(o.trace_gram, IntMatrix::from_i64_rows(&[[2, 1], [1, 3]]));
        assert_eq!(o.disc, 5.into());
        assert_eq!(trace_gram(&o).unwrap(), o.trace_gram);
    }

    #[test]
    fn rejects() {
        assert_eq!(
            make_order(FieldRecord::new(poly(&[-5, 0, 1]))).unwrap_err(),
            Error::NotMaximal(2.into())
        );
        let bad = RatMatrix::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 2)]]).unwrap();
        assert!(matches!(
            make_order(FieldRecord::new(poly(&[-5, 0, 1])).with_basis(bad)),
            Err(Error::NotAnOrder(_))
        ));
        let mut rec = FieldRecord::new(poly(&[-1, -1, 1]));
        rec.claimed_disc = Some(7.into());
        assert!(matches!(make_order(rec), Err(Error::DiscMismatch { .. })));
        assert_eq!(make_order(FieldRecord::new(poly(&[1, 1]))).unwrap_err(), Error::DegreeOutOfRange(1));
        assert_eq!(
            TraceZeroLattice::from_record(FieldRecord::new(poly(&[1, 0, 1]))).unwrap_err(),
            Error::NotTotallyReal
        );
    }

    #[test]
    fn quadratic_lattices() {
        let b = RatMatrix::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 2)]]).unwrap();
        let l = TraceZeroLattice::from_record(FieldRecord::new(poly(&[-5, 0, 1])).with_basis(b)).unwrap();
        assert_eq!(l.gram, IntMatrix::from_i64_rows(&[[10]]));
        assert_eq!(l.m, 1.into());

        let l = TraceZeroLattice::from_record(FieldRecord::new(poly(&[-3, 0, 1]))).unwrap();
        assert_eq!(l.gram, IntMatrix::from_i64_rows(&[[6]]));
        assert_eq!(l.m, 2.into());
        assert_eq!(l.order.disc, 12.into());
    }

    #[test]
    fn table_quartic() {
        let l = TraceZeroLattice::from_record(FieldRecord::new(poly(&[16, 5, -9, -2, 1]))).unwrap();
        assert_eq!(l.rank(), 3);
        assert_eq!(det_bareiss(&l.gram).unwrap(), BigInt::from(142148));
        for i in 0..3 {
            let s: BigInt = (0..4).map(|j| &l.basis[(i, j)] * &l.order.trace_vector[j]).sum();
            assert!(s.is_zero());
        }
    }
}
