//! Isometry search for positive definite forms of rank at most 4.
//!
//! Both forms are LLL-reduced. The `j`-th reduced basis vector of the target
//! must map to a vector of the source with the same norm, so candidates come
//! from the finite list of source vectors of that norm. A depth-first search
//! assigns images column by column and prunes on the pairwise inner products.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{QuadraticForm, ShortVectors};
use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, IntMatrix};

pub const MAX_ISOMETRY_RANK: usize = 4;

struct Candidate {
    coords: Vec<i64>,
    /// `R1·v`, for inner products against other candidates.
    image: Vec<BigInt>,
}

fn inner(a: &Candidate, b: &Candidate) -> BigInt {
    a.coords.iter().zip(&b.image).map(|(&x, y)| BigInt::from(x) * y).sum()
}

/// Returns a unimodular `U` with `Uᵀ·G1·U = G2`, or `None` if the forms are
/// not isometric. The witness is verified before it is returned.
pub fn isometry(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<Option<IntMatrix>> {
    let r = f1.rank();
    if r > MAX_ISOMETRY_RANK || f2.rank() > MAX_ISOMETRY_RANK {
        return Err(Error::UnsupportedRank(r.max(f2.rank())));
    }
    if f2.rank() != r {
        return Ok(None);
    }
    if r == 0 {
        return Ok(Some(IntMatrix::identity(0)));
    }
    let s1 = ShortVectors::new(f1)?;
    let s2 = ShortVectors::new(f2)?;
    if f1.det() != f2.det() {
        return Ok(None);
    }
    let r1 = s1.reduced_gram();
    let r2 = s2.reduced_gram();

    let mut lists: Vec<Vec<Candidate>> = Vec::with_capacity(r);
    for j in 0..r {
        let norm = (&r2[(j, j)] / 2u32).to_u64().expect("reduced norm fits in u64");
        let list: Vec<Candidate> = s1
            .vectors_of_value(norm)
            .into_iter()
            .map(|coords| {
                let image = (0..r)
                    .map(|i| (0..r).map(|k| &r1[(i, k)] * BigInt::from(coords[k])).sum())
                    .collect();
                Candidate { coords, image }
            })
            .collect();
        if list.is_empty() {
            return Ok(None);
        }
        lists.push(list);
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(r);
    if !assign(&lists, r2, &mut chosen) {
        return Ok(None);
    }

    let mut v = IntMatrix::zeros(r, r);
    for (j, &idx) in chosen.iter().enumerate() {
        for i in 0..r {
            v[(i, j)] = BigInt::from(lists[j][idx].coords[i]);
        }
    }
    if det_bareiss(&v)?.abs() != BigInt::from(1) {
        return Err(Error::InternalInvariantViolation("isometry witness not unimodular".into()));
    }
    let u = s1.transform().mul(&v)?.mul(&s2.transform().inverse_unimodular()?)?;
    if f1.gram().congruent(&u)? != *f2.gram() {
        return Err(Error::InternalInvariantViolation("isometry witness failed verification".into()));
    }
    Ok(Some(u))
}

fn assign(lists: &[Vec<Candidate>], target: &IntMatrix, chosen: &mut Vec<usize>) -> bool {
    let j = chosen.len();
    if j == lists.len() {
        return true;
    }
    'cand: for (idx, c) in lists[j].iter().enumerate() {
        for (i, &prev) in chosen.iter().enumerate() {
            if inner(&lists[i][prev], c) != target[(i, j)] {
                continue 'cand;
            }
        }
        chosen.push(idx);
        if assign(lists, target, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
