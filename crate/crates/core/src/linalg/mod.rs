//! Exact integer and rational linear algebra.

mod det;
mod hnf;
mod ldl;
mod lll;

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use det::{det_bareiss, rank_exact};
pub use hnf::{hnf_with_transform, kernel_saturated};
pub use ldl::{ldl, Ldl};
pub use lll::{is_lll_reduced, lll_gram, lll_gram_default, Lll};

/// Dense row-major matrix over ℤ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Dense row-major matrix over ℚ. `BigRational` keeps every entry reduced with
/// a positive denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

macro_rules! dense_common {
    ($ty:ident, $elem:ty) => {
        impl $ty {
            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self { rows, cols, data: (0..rows * cols).map(|_| <$elem>::zero()).collect() }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m[(i, i)] = <$elem>::one();
                }
                m
            }

            pub fn from_vec(rows: usize, cols: usize, data: Vec<$elem>) -> Result<Self> {
                if data.len() != rows * cols {
                    return Err(Error::Dimension(format!(
                        "{} entries for a {}x{} matrix",
                        data.len(),
                        rows,
                        cols
                    )));
                }
                Ok(Self { rows, cols, data })
            }

            pub fn from_rows(rows: Vec<Vec<$elem>>) -> Result<Self> {
                let r = rows.len();
                let c = rows.first().map_or(0, Vec::len);
                if rows.iter().any(|row| row.len() != c) {
                    return Err(Error::Dimension("ragged rows".into()));
                }
                Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
            }

            #[inline]
            pub fn rows(&self) -> usize {
                self.rows
            }

            #[inline]
            pub fn cols(&self) -> usize {
                self.cols
            }

            #[inline]
            pub fn is_square(&self) -> bool {
                self.rows == self.cols
            }

            pub fn row(&self, i: usize) -> &[$elem] {
                &self.data[i * self.cols..(i + 1) * self.cols]
            }

            pub fn row_vecs(&self) -> Vec<Vec<$elem>> {
                (0..self.rows).map(|i| self.row(i).to_vec()).collect()
            }

            pub fn entries(&self) -> &[$elem] {
                &self.data
            }

            pub fn transpose(&self) -> Self {
                let mut t = Self::zeros(self.cols, self.rows);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        t[(j, i)] = self[(i, j)].clone();
                    }
                }
                t
            }

            pub fn is_symmetric(&self) -> bool {
                self.is_square()
                    && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
            }

            pub fn swap_rows(&mut self, a: usize, b: usize) {
                if a != b {
                    for j in 0..self.cols {
                        self.data.swap(a * self.cols + j, b * self.cols + j);
                    }
                }
            }

            pub fn swap_cols(&mut self, a: usize, b: usize) {
                if a != b {
                    for i in 0..self.rows {
                        self.data.swap(i * self.cols + a, i * self.cols + b);
                    }
                }
            }

            pub fn mul(&self, rhs: &Self) -> Result<Self> {
                if self.cols != rhs.rows {
                    return Err(Error::Dimension(format!(
                        "cannot multiply {}x{} by {}x{}",
                        self.rows, self.cols, rhs.rows, rhs.cols
                    )));
                }
                let mut out = Self::zeros(self.rows, rhs.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = &self[(i, k)];
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..rhs.cols {
                            let prod = a * &rhs[(k, j)];
                            out[(i, j)] += prod;
                        }
                    }
                }
                Ok(out)
            }
        }

        impl Index<(usize, usize)> for $ty {
            type Output = $elem;
            #[inline]
            fn index(&self, (i, j): (usize, usize)) -> &$elem {
                debug_assert!(i < self.rows && j < self.cols);
                &self.data[i * self.cols + j]
            }
        }

        impl IndexMut<(usize, usize)> for $ty {
            #[inline]
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut $elem {
                debug_assert!(i < self.rows && j < self.cols);
                &mut self.data[i * self.cols + j]
            }
        }

        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                $ty::mul(self, rhs).expect("matrix dimensions")
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("[")?;
                for i in 0..self.rows {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    for j in 0..self.cols {
                        if j > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{}", self[(i, j)])?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
        }
    };
}

dense_common!(IntMatrix, BigInt);
dense_common!(RatMatrix, BigRational);

impl IntMatrix {
    /// Convenience constructor for tests and literals.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(v).expect("rectangular literal")
    }

    /// Matrix with one row.
    pub fn row_vector(v: Vec<BigInt>) -> Self {
        let n = v.len();
        Self { rows: 1, cols: n, data: v }
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    /// `Pᵀ · self · P`.
    pub fn congruent(&self, p: &IntMatrix) -> Result<IntMatrix> {
        p.transpose().mul(self)?.mul(p)
    }

    /// Inverse of a unimodular matrix, computed exactly over ℚ and checked
    /// to be integral.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let inv = self.to_rational().inverse()?;
        inv.to_integer()
            .ok_or_else(|| Error::Dimension("matrix is not unimodular".into()))
    }
}

impl RatMatrix {
    pub fn from_integer_matrix(m: &IntMatrix) -> Self {
        m.to_rational()
    }

    /// Entries as integers, if every denominator is one.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.data.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    /// Scales by the common denominator `c` and returns `(c·self, c)`.
    pub fn clear_denominators(&self) -> (IntMatrix, BigInt) {
        let c = self.common_denominator();
        let cq = BigRational::from_integer(c.clone());
        let data = self.data.iter().map(|q| (q * &cq).to_integer()).collect();
        (IntMatrix { rows: self.rows, cols: self.cols, data }, c)
    }

    /// Exact determinant via the Bareiss determinant of the cleared matrix.
    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let (m, c) = self.clear_denominators();
        let d = det_bareiss(&m)?;
        Ok(BigRational::new(d, num_traits::pow(c, self.rows)))
    }

    /// Gauss–Jordan inverse over ℚ.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or_else(|| Error::Dimension("singular matrix".into()))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= t;
                    let t = &f * &inv[(col, j)];
                    inv[(r, j)] -= t;
                }
            }
        }
        Ok(inv)
    }
}

/// `sign(x)` as `-1`, `0` or `1`.
pub(crate) fn signum(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_transpose() {
        let a = IntMatrix::from_i64_rows(&[[1, 2, 3], [4, 5, 6]]);
        let at = a.transpose();
        let g = &a * &at;
        assert_eq!(g, IntMatrix::from_i64_rows(&[[14, 32], [32, 77]]));
        assert!(g.is_symmetric());
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn unimodular_inverse() {
        let u = IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]);
        let v = u.inverse_unimodular().unwrap();
        assert_eq!(&u * &v, IntMatrix::identity(2));
        assert!(IntMatrix::from_i64_rows(&[[2, 0], [0, 1]]).inverse_unimodular().is_err());
    }

    #[test]
    fn rational_det() {
        let half = BigRational::new(1.into(), 2.into());
        let m = RatMatrix::from_rows(alloc::vec![
            alloc::vec![BigRational::one(), BigRational::zero()],
            alloc::vec![half.clone(), half.clone()],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), half);
    }
}
