use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row operation helpers applied to `H` and its transform `U` in lockstep.
struct Rows<'a> {
    h: &'a mut IntMatrix,
    u: &'a mut IntMatrix,
}

impl Rows<'_> {
    /// (row_r, row_i) ← (s·row_r + t·row_i, p·row_r + q·row_i)
    fn combine(&mut self, r: usize, i: usize, s: &BigInt, t: &BigInt, p: &BigInt, q: &BigInt) {
        for m in [&mut *self.h, &mut *self.u] {
            for j in 0..m.cols() {
                let a = m[(r, j)].clone();
                let b = m[(i, j)].clone();
                m[(r, j)] = s * &a + t * &b;
                m[(i, j)] = p * &a + q * &b;
            }
        }
    }

    /// row_k ← row_k − f·row_r
    fn sub_multiple(&mut self, k: usize, r: usize, f: &BigInt) {
        for m in [&mut *self.h, &mut *self.u] {
            for j in 0..m.cols() {
                let d = f * &m[(r, j)];
                m[(k, j)] -= d;
            }
        }
    }

    fn negate(&mut self, r: usize) {
        for m in [&mut *self.h, &mut *self.u] {
            for j in 0..m.cols() {
                let v = -&m[(r, j)];
                m[(r, j)] = v;
            }
        }
    }
}

/// Row-style Hermite normal form `H = U·M` with `U` unimodular.
///
/// Nonzero rows come first, pivots are positive and strictly increase in
/// column index, and entries above a pivot lie in `[0, pivot)`.
pub fn hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let (rows, cols) = (m.rows(), m.cols());
    let mut ops = Rows { h: &mut h, u: &mut u };
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if ops.h[(i, col)].is_zero() {
                continue;
            }
            let a = ops.h[(r, col)].clone();
            let b = ops.h[(i, col)].clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let p = -(&b / &g);
            let q = &a / &g;
            ops.combine(r, i, &s, &t, &p, &q);
        }
        if ops.h[(r, col)].is_zero() {
            continue;
        }
        if ops.h[(r, col)].is_negative() {
            ops.negate(r);
        }
        let pivot = ops.h[(r, col)].clone();
        for k in 0..r {
            let f = ops.h[(k, col)].div_floor(&pivot);
            if !f.is_zero() {
                ops.sub_multiple(k, r, &f);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Basis (as rows) of the integer kernel `{x ∈ ℤⁿ : M·xᵀ = 0}`.
///
/// The basis is saturated: it spans every integer vector of the rational
/// kernel. Rows are returned in Hermite normal form.
pub fn kernel_saturated(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let (h, u) = hnf_with_transform(&m.transpose());
    let rank = (0..h.rows()).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
    let mut k = IntMatrix::zeros(n - rank, n);
    for (dst, src) in (rank..n).enumerate() {
        for j in 0..n {
            k[(dst, j)] = u[(src, j)].clone();
        }
    }
    hnf_with_transform(&k).0
}
