use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, signum, IntMatrix};

/// Monic polynomial over ℤ, coefficients constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    /// Builds a monic polynomial of degree at least one. Trailing zero
    /// coefficients are stripped before the checks.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::DegreeOutOfRange(coeffs.len().saturating_sub(1)));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::NonMonic);
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `f(x + c)`, by repeated synthetic division.
    pub fn translate(&self, c: &BigInt) -> Polynomial {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c * &a[j + 1];
                a[j] += t;
            }
        }
        Polynomial { coeffs: a }
    }

    fn derivative(&self) -> Vec<BigInt> {
        self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
    }

    /// Power sums `p_k = Tr(θ^k)` for `k = 0..=count`, from Newton's identities.
    pub fn power_traces(&self, count: usize) -> Vec<BigInt> {
        let n = self.degree();
        let a = &self.coeffs;
        let mut p: Vec<BigInt> = Vec::with_capacity(count + 1);
        p.push(BigInt::from(n));
        for k in 1..=count {
            let mut s = if k <= n { BigInt::from(k) * &a[n - k] } else { BigInt::zero() };
            for i in 1..=k.min(n) {
                if i == k {
                    break;
                }
                s += &a[n - i] * &p[k - i];
            }
            p.push(-s);
        }
        p
    }

    /// Discriminant `(-1)^{n(n-1)/2} Res(f, f')`, the resultant taken as the
    /// Sylvester determinant.
    pub fn discriminant(&self) -> Result<BigInt> {
        let n = self.degree();
        let res = det_bareiss(&sylvester(&self.coeffs, &self.derivative()))?;
        if res.is_zero() {
            return Err(Error::NotSeparable);
        }
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -res } else { res })
    }

    /// Number of distinct real roots via a Sturm sequence.
    pub fn count_real_roots(&self) -> Result<usize> {
        self.discriminant()?;
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let mut seq: Vec<Vec<BigRational>> = vec![to_q(&self.coeffs), to_q(&self.derivative())];
        loop {
            let len = seq.len();
            let r = rem(&seq[len - 2], &seq[len - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r.into_iter().map(|c| -c).collect());
        }
        let changes = |signs: Vec<i32>| -> usize {
            let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
            nz.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at_pos: Vec<i32> = seq.iter().map(|p| qsign(p.last().unwrap())).collect();
        let at_neg: Vec<i32> = seq
            .iter()
            .map(|p| {
                let s = qsign(p.last().unwrap());
                if (p.len() - 1) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        Ok(changes(at_neg) - changes(at_pos))
    }

    pub fn is_totally_real(&self) -> Result<bool> {
        Ok(self.count_real_roots()? == self.degree())
    }
}

fn qsign(q: &BigRational) -> i32 {
    signum(q.numer())
}

/// Remainder of `a` modulo `b` over ℚ, trimmed of trailing zeros.
fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let f = &r[top] / &lead;
        for i in 0..=db {
            let t = &f * &b[i];
            r[top - db + i] -= t;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Sylvester matrix of `f` and `g` (coefficients constant term first).
fn sylvester(f: &[BigInt], g: &[BigInt]) -> IntMatrix {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for row in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s[(row, row + k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s[(n + row, row + k)] = c.clone();
        }
    }
    s
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn construction() {
        assert_eq!(Polynomial::from_i64(&[5, 0, 2]), Err(Error::NonMonic));
        assert_eq!(Polynomial::from_i64(&[1]), Err(Error::DegreeOutOfRange(0)));
        assert_eq!(p(&[16, 5, -9, -2, 1]).to_string(), "x^4 - 2x^3 - 9x^2 + 5x + 16");
        assert_eq!(p(&[-1, -4, 0, 1]).to_string(), "x^3 - 4x - 1");
    }

    #[test]
    fn discriminants() {
        assert_eq!(p(&[-1, -1, 1]).discriminant().unwrap(), 5.into());
        assert_eq!(p(&[-5, 0, 1]).discriminant().unwrap(), 20.into());
        // -4p^3 - 27q^2 with p = -4, q = -1
        assert_eq!(p(&[-1, -4, 0, 1]).discriminant().unwrap(), 229.into());
        assert_eq!(p(&[16, 5, -9, -2, 1]).discriminant().unwrap(), 35537.into());
        assert_eq!(p(&[1, 2, 1]).discriminant(), Err(Error::NotSeparable));
    }

    #[test]
    fn real_roots() {
        assert_eq!(p(&[1, 0, 1]).count_real_roots().unwrap(), 0);
        assert_eq!(p(&[-5, 0, 1]).count_real_roots().unwrap(), 2);
        assert_eq!(p(&[16, 5, -9, -2, 1]).count_real_roots().unwrap(), 4);
        assert_eq!(p(&[-2, 0, 0, 1]).count_real_roots().unwrap(), 1);
        assert_eq!(p(&[0, 1, 0, 1]).count_real_roots().unwrap(), 1);
    }

    #[test]
    fn newton_sums() {
        assert_eq!(p(&[-1, -1, 1]).power_traces(2), ints(&[2, 1, 3]));
        assert_eq!(p(&[-5, 0, 1]).power_traces(2), ints(&[2, 0, 10]));
        assert_eq!(p(&[-1, -4, 0, 1]).power_traces(3), ints(&[3, 0, 8, 3]));
    }

    #[test]
    fn translation() {
        // f(x) = x^2 - 5, f(x - 1) = x^2 - 2x - 4
        assert_eq!(p(&[-5, 0, 1]).translate(&BigInt::from(-1)), p(&[-4, -2, 1]));
        let f = p(&[16, 5, -9, -2, 1]);
        assert_eq!(f.translate(&2.into()).translate(&(-2).into()), f);
        assert_eq!(f.translate(&3.into()).discriminant(), f.discriminant());
    }
}
