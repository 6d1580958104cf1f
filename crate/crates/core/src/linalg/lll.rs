use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ldl, IntMatrix};
use crate::error::{Error, Result};

/// Result of Gram-matrix LLL: `gram = transformᵀ · G · transform`.
///
/// Column `j` of `transform` holds the coordinates of the `j`-th reduced basis
/// vector in the input basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lll {
    pub gram: IntMatrix,
    pub transform: IntMatrix,
}

/// Nearest integer, ties toward zero, so that `|μ| = 1/2` is left alone.
fn nearest(q: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if q.abs() <= half {
        BigInt::zero()
    } else {
        q.round().to_integer()
    }
}

/// b_k ← b_k − f·b_j, applied to the Gram matrix and the transform.
fn reduce(g: &mut IntMatrix, u: &mut IntMatrix, k: usize, j: usize, f: &BigInt) {
    let n = g.rows();
    for i in 0..n {
        let d = f * &g[(i, j)];
        g[(i, k)] -= d;
    }
    for i in 0..n {
        let d = f * &g[(j, i)];
        g[(k, i)] -= d;
    }
    for i in 0..u.rows() {
        let d = f * &u[(i, j)];
        u[(i, k)] -= d;
    }
}

/// LLL reduction of a positive definite Gram matrix with exact rational
/// Gram–Schmidt data. `delta` must lie in `(1/4, 1]`.
pub fn lll_gram(g: &IntMatrix, delta: &BigRational) -> Result<Lll> {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    if *delta <= quarter || *delta > BigRational::one() {
        return Err(Error::Unsupported(alloc::format!("LLL delta {delta} outside (1/4, 1]")));
    }
    let n = g.rows();
    let mut gram = g.clone();
    let mut u = IntMatrix::identity(n);
    ldl(&gram)?;
    let mut k = 1;
    while k < n {
        let f = ldl(&gram)?;
        let mut mu_k: alloc::vec::Vec<BigRational> = (0..k).map(|j| f.l[(k, j)].clone()).collect();
        for j in (0..k).rev() {
            let q = nearest(&mu_k[j]);
            if q.is_zero() {
                continue;
            }
            reduce(&mut gram, &mut u, k, j, &q);
            let qr = BigRational::from_integer(q);
            mu_k[j] -= &qr;
            for i in 0..j {
                mu_k[i] -= &qr * &f.l[(j, i)];
            }
        }
        let mu = &mu_k[k - 1];
        let lhs = f.d[k].clone();
        let rhs = (delta - mu * mu) * &f.d[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            gram.swap_rows(k, k - 1);
            gram.swap_cols(k, k - 1);
            u.swap_cols(k, k - 1);
            k = if k > 1 { k - 1 } else { 1 };
        }
    }
    Ok(Lll { gram, transform: u })
}

/// [`lll_gram`] with `delta = 3/4`.
pub fn lll_gram_default(g: &IntMatrix) -> Result<Lll> {
    lll_gram(g, &BigRational::new(BigInt::from(3), BigInt::from(4)))
}

/// Checks size reduction and the Lovász condition on a Gram matrix.
pub fn is_lll_reduced(g: &IntMatrix, delta: &BigRational) -> Result<bool> {
    let f = ldl(g)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let n = g.rows();
    for i in 0..n {
        for j in 0..i {
            if f.l[(i, j)].abs() > half {
                return Ok(false);
            }
        }
        if i > 0 {
            let mu = &f.l[(i, i - 1)];
            if f.d[i] < (delta - mu * mu) * &f.d[i - 1] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det_bareiss;

    fn three_quarters() -> BigRational {
        BigRational::new(3.into(), 4.into())
    }

    #[test]
    fn already_reduced() {
        let g = IntMatrix::from_i64_rows(&[[2, 1], [1, 2]]);
        let r = lll_gram_default(&g).unwrap();
        assert_eq!(r.gram, g);
        assert_eq!(r.transform, IntMatrix::identity(2));
    }

    #[test]
    fn skewed_binary() {
        // shortest vectors of [[10,9],[9,10]] have norm 2 (±(1,-1))
        let g = IntMatrix::from_i64_rows(&[[10, 9], [9, 10]]);
        let r = lll_gram_default(&g).unwrap();
        assert_eq!(r.gram[(0, 0)], BigInt::from(2));
        assert_eq!(det_bareiss(&r.gram).unwrap(), BigInt::from(19));
        assert_eq!(g.congruent(&r.transform).unwrap(), r.gram);
        assert!(is_lll_reduced(&r.gram, &three_quarters()).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let g = IntMatrix::from_i64_rows(&[[2, 3], [3, 2]]);
        assert_eq!(lll_gram_default(&g).unwrap_err(), Error::NotPositiveDefinite { index: 2 });
        let quarter = BigRational::new(1.into(), 4.into());
        assert!(lll_gram(&IntMatrix::identity(2), &quarter).is_err());
    }
}
