//! Exact Fincke–Pohst enumeration of `{x : Φ(x) ≤ B}`.
//!
//! The Gram matrix is LLL-reduced first and then factored as `L·D·Lᵀ` over ℚ,
//! so `xᵀGx = Σ_i D_i (x_i + Σ_{j>i} L_ji x_j)²`. Coordinates are fixed from
//! the last one down. At each level the admissible integers form an interval
//! around `−c`; it is walked outward from the nearest integer and every
//! comparison is an exact rational one.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::QuadraticForm;
use crate::error::Result;
use crate::linalg::{ldl, lll_gram, lll_gram_default, IntMatrix, Lll, RatMatrix};

/// Enumerator over the lattice points of bounded norm of a positive definite form.
#[derive(Debug, Clone)]
pub struct ShortVectors {
    reduced: IntMatrix,
    transform: IntMatrix,
    l: RatMatrix,
    d: Vec<BigRational>,
}

impl ShortVectors {
    pub fn new(q: &QuadraticForm) -> Result<Self> {
        Self::from_lll(q, lll_gram_default(q.gram())?)
    }

    /// Same as [`new`](Self::new) with an explicit LLL parameter.
    pub fn with_delta(q: &QuadraticForm, delta: &BigRational) -> Result<Self> {
        Self::from_lll(q, lll_gram(q.gram(), delta)?)
    }

    fn from_lll(q: &QuadraticForm, lll: Lll) -> Result<Self> {
        debug_assert_eq!(q.rank(), lll.gram.rows());
        let f = ldl(&lll.gram)?;
        Ok(Self { reduced: lll.gram, transform: lll.transform, l: f.l, d: f.d })
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    /// Reduced Gram matrix `Uᵀ·G·U`.
    pub fn reduced_gram(&self) -> &IntMatrix {
        &self.reduced
    }

    /// The unimodular `U` with `Uᵀ·G·U` reduced.
    pub fn transform(&self) -> &IntMatrix {
        &self.transform
    }

    /// Smallest `Φ` value among the reduced basis vectors.
    pub fn least_basis_value(&self) -> u64 {
        (0..self.rank())
            .map(|i| (&self.reduced[(i, i)] / 2u32).to_u64().unwrap_or(u64::MAX))
            .min()
            .unwrap_or(0)
            .max(1)
    }

    /// Calls `f(x, Φ(x))` once for each pair `±x` with `0 < Φ(x) ≤ bound`,
    /// choosing the sign that makes the last nonzero coordinate positive.
    /// Coordinates refer to the reduced basis.
    pub fn for_each_half<F: FnMut(&[i64], u64)>(&self, bound: u64, mut f: F) {
        let r = self.rank();
        if r == 0 {
            return;
        }
        let total = BigRational::from_integer(BigInt::from(bound) * 2u32);
        let mut x = vec![0i64; r];
        self.search(r - 1, &mut x, &total, &total, true, &mut f);
    }

    /// Like [`for_each_half`](Self::for_each_half) but visits both `x` and `−x`.
    pub fn for_each<F: FnMut(&[i64], u64)>(&self, bound: u64, mut f: F) {
        self.for_each_half(bound, |x, phi| {
            f(x, phi);
            let neg: Vec<i64> = x.iter().map(|v| -v).collect();
            f(&neg, phi);
        });
    }

    /// All vectors with `Φ(x) = value`, in reduced coordinates.
    pub fn vectors_of_value(&self, value: u64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.for_each(value, |x, phi| {
            if phi == value {
                out.push(x.to_vec());
            }
        });
        out
    }

    /// Maps reduced coordinates back to coordinates in the input basis.
    pub fn to_input_coords(&self, x: &[i64]) -> Vec<BigInt> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| &self.transform[(i, j)] * BigInt::from(x[j])).sum())
            .collect()
    }

    fn search<F: FnMut(&[i64], u64)>(
        &self,
        level: usize,
        x: &mut [i64],
        remaining: &BigRational,
        total: &BigRational,
        zero_above: bool,
        f: &mut F,
    ) {
        let dl = &self.d[level];
        let mut c = BigRational::zero();
        if !zero_above {
            for j in level + 1..x.len() {
                if x[j] != 0 {
                    c += &self.l[(j, level)] * BigRational::from_integer(x[j].into());
                }
            }
        }
        let cost = |v: i64| -> BigRational {
            let y = &c + BigRational::from_integer(v.into());
            dl * &y * &y
        };
        let visit = |v: i64, x: &mut [i64], f: &mut F| -> bool {
            let used = cost(v);
            if &used > remaining {
                return false;
            }
            x[level] = v;
            let rest = remaining - used;
            let still_zero = zero_above && v == 0;
            if level == 0 {
                if !still_zero {
                    let q = (total - &rest).to_integer();
                    f(x, (q / 2u32).to_u64().expect("norm fits in u64"));
                }
            } else {
                self.search(level - 1, x, &rest, total, still_zero, f);
            }
            x[level] = 0;
            true
        };
        if zero_above {
            // half space: this coordinate is the last possibly nonzero one
            let mut v = 0;
            while visit(v, x, f) {
                v += 1;
            }
            return;
        }
        let centre = (-c.clone()).round().to_integer().to_i64().expect("coordinate fits in i64");
        if !visit(centre, x, f) {
            return;
        }
        let mut v = centre + 1;
        while visit(v, x, f) {
            v += 1;
        }
        let mut v = centre - 1;
        while visit(v, x, f) {
            v -= 1;
        }
    }
}
