use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// Exact factorization `G = L·diag(D)·Lᵀ` of a positive definite matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ldl {
    /// Unit lower-triangular.
    pub l: RatMatrix,
    /// Strictly positive pivots.
    pub d: Vec<BigRational>,
}

pub fn ldl(g: &IntMatrix) -> Result<Ldl> {
    if !g.is_symmetric() {
        return Err(Error::Dimension("LDL of a non-symmetric matrix".into()));
    }
    let n = g.rows();
    let mut l = RatMatrix::identity(n);
    let mut d: Vec<BigRational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut dj = BigRational::from_integer(g[(j, j)].clone());
        for k in 0..j {
            dj -= &l[(j, k)] * &l[(j, k)] * &d[k];
        }
        if !dj.is_positive() {
            return Err(Error::NotPositiveDefinite { index: j + 1 });
        }
        for i in j + 1..n {
            let mut v = BigRational::from_integer(g[(i, j)].clone());
            for k in 0..j {
                v -= &l[(i, k)] * &l[(j, k)] * &d[k];
            }
            l[(i, j)] = v / &dj;
        }
        d.push(dj);
    }
    Ok(Ldl { l, d })
}

impl Ldl {
    /// `L·diag(D)·Lᵀ`, for verification.
    pub fn reconstruct(&self) -> RatMatrix {
        let n = self.d.len();
        let mut ld = self.l.clone();
        for i in 0..n {
            for j in 0..n {
                ld[(i, j)] = &ld[(i, j)] * &self.d[j];
            }
        }
        &ld * &self.l.transpose()
    }

    pub fn is_unit_lower(&self) -> bool {
        let n = self.d.len();
        (0..n).all(|i| {
            self.l[(i, i)].is_one() && (i + 1..n).all(|j| self.l[(i, j)].is_zero())
        })
    }
}
