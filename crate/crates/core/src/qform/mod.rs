//! Even integral quadratic forms `Φ(x) = ½·xᵀGx`.

mod enumerate;
mod isometry;
mod theta;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, ldl, IntMatrix};

pub use enumerate::ShortVectors;
pub use isometry::isometry;
pub use theta::ThetaSeries;

/// An even symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    gram: IntMatrix,
}

/// Invariants of a nonsingular form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariants {
    pub det: BigInt,
    /// `(−1)^{r(r−1)/2}·det`.
    pub disc: BigInt,
    pub level: BigInt,
    /// Least nonzero value of `Φ`.
    pub minimum: BigInt,
    /// `d_Φ`: `det`, `−det` or `det/2` for rank `≡ 0`, `≡ 2`, odd (mod 4).
    pub character_disc: BigInt,
}

impl QuadraticForm {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotEven);
        }
        if (0..gram.rows()).any(|i| gram[(i, i)].is_odd()) {
            return Err(Error::NotEven);
        }
        Ok(Self { gram })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows))
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// `Φ(x)` for an integer vector.
    pub fn value(&self, x: &[BigInt]) -> BigInt {
        let r = self.rank();
        let mut s = BigInt::zero();
        for i in 0..r {
            for j in 0..r {
                s += &x[i] * &self.gram[(i, j)] * &x[j];
            }
        }
        s / 2
    }

    pub fn det(&self) -> BigInt {
        det_bareiss(&self.gram).expect("square")
    }

    /// `(−1)^{r(r−1)/2}·det(G)`.
    pub fn form_disc(&self) -> BigInt {
        let r = self.rank();
        let d = self.det();
        if (r * r.saturating_sub(1) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        ldl(&self.gram).is_ok()
    }

    /// Adjugate `det(G)·G⁻¹`.
    fn adjugate(&self) -> Result<IntMatrix> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::SingularForm);
        }
        let inv = self.gram.to_rational().inverse()?;
        let dq = num_rational::BigRational::from_integer(d);
        let scaled: Vec<_> = inv.entries().iter().map(|q| q * &dq).collect();
        let r = self.rank();
        let m = crate::linalg::RatMatrix::from_vec(r, r, scaled)?;
        m.to_integer()
            .ok_or_else(|| Error::InternalInvariantViolation("adjugate not integral".into()))
    }

    /// Least `N > 0` with `N·G⁻¹` an even integer matrix.
    pub fn level(&self) -> Result<BigInt> {
        let adj = self.adjugate()?;
        let d = self.det().abs();
        let two_d: BigInt = &d * 2;
        let r = self.rank();
        let mut n = BigInt::one();
        for i in 0..r {
            for j in 0..r {
                let a = &adj[(i, j)];
                let term = if i == j { &two_d / two_d.gcd(a) } else { &d / d.gcd(a) };
                n = n.lcm(&term);
            }
        }
        Ok(n)
    }

    /// `d_Φ` as in the automorphy statement for theta series of rank `r`.
    pub fn character_disc(&self) -> BigInt {
        let d = self.det();
        match self.rank() % 4 {
            0 => d,
            2 => -d,
            _ => d / 2,
        }
    }

    /// Counts `c_t = #{x ≠ 0 : Φ(x) = t}` for `0 ≤ t ≤ bound`; index 0 is 0.
    pub fn representation_counts(&self, bound: u64) -> Result<Vec<u64>> {
        self.counts_with(&ShortVectors::new(self)?, bound)
    }

    fn counts_with(&self, sv: &ShortVectors, bound: u64) -> Result<Vec<u64>> {
        let mut counts = alloc::vec![0u64; bound as usize + 1];
        sv.for_each_half(bound, |_, phi| counts[phi as usize] += 2);
        Ok(counts)
    }

    pub fn theta_series(&self, bound: u64) -> Result<ThetaSeries> {
        if self.rank() == 0 {
            return Ok(ThetaSeries::constant(bound));
        }
        let mut c = self.representation_counts(bound)?;
        c[0] = 1;
        Ok(ThetaSeries::from_coeffs(c))
    }

    /// [`theta_series`](Self::theta_series) with LLL run at the given `delta`.
    /// The coefficients do not depend on `delta`, only the running time does.
    pub fn theta_series_with_delta(&self, bound: u64, delta: &BigRational) -> Result<ThetaSeries> {
        if self.rank() == 0 {
            return Ok(ThetaSeries::constant(bound));
        }
        let mut c = self.counts_with(&ShortVectors::with_delta(self, delta)?, bound)?;
        c[0] = 1;
        Ok(ThetaSeries::from_coeffs(c))
    }

    /// Least nonzero value of `Φ`.
    pub fn minimum(&self) -> Result<u64> {
        if self.rank() == 0 {
            return Err(Error::Unsupported("minimum of a rank-0 form".into()));
        }
        let sv = ShortVectors::new(self)?;
        let mut bound = sv.least_basis_value();
        loop {
            let mut best: Option<u64> = None;
            sv.for_each_half(bound, |_, phi| best = Some(best.map_or(phi, |b| b.min(phi))));
            if let Some(b) = best {
                return Ok(b);
            }
            bound *= 2;
        }
    }

    pub fn invariants(&self) -> Result<FormInvariants> {
        let level = self.level()?;
        Ok(FormInvariants {
            det: self.det(),
            disc: self.form_disc(),
            level,
            minimum: BigInt::from(self.minimum()?),
            character_disc: self.character_disc(),
        })
    }
}
