use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use thetanf_core::linalg::{
    det_bareiss, hnf_with_transform, is_lll_reduced, kernel_saturated, ldl, lll_gram, rank_exact,
};
use thetanf_core::{BigInt, IntMatrix};

fn matrix(rows: usize, cols: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(range, rows * cols)
        .prop_map(move |v| IntMatrix::from_vec(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap())
}

fn any_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| matrix(r, c, -6..=6))
}

fn cofactor_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> =
                (1..n).map(|i| (0..n).filter(|&k| k != j).map(|k| m[(i, k)].clone()).collect()).collect();
            let sub = if n == 1 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_rows(minor).unwrap() };
            let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            sign * &m[(0, j)] * cofactor_det(&sub)
        })
        .sum()
}

/// Rank by Gauss–Jordan elimination over ℚ.
fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.row_vecs().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for k in 0..cols {
                    let d = &f * &a[rank][k];
                    a[i][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn symmetric_pd(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
        // B·Bᵀ + I is positive definite; doubling makes it even
        let b = IntMatrix::from_vec(n, n, v.into_iter().map(BigInt::from).collect()).unwrap();
        let mut g = b.mul(&b.transpose()).unwrap();
        for i in 0..n {
            g[(i, i)] += 1;
        }
        let entries = g.entries().iter().map(|x| x * 2).collect();
        IntMatrix::from_vec(n, n, entries).unwrap()
    })
}

fn maximal_minor_gcd(k: &IntMatrix) -> BigInt {
    let (r, n) = (k.rows(), k.cols());
    let mut g = BigInt::zero();
    let mut cols: Vec<usize> = (0..r).collect();
    loop {
        let sub: Vec<Vec<BigInt>> = (0..r).map(|i| cols.iter().map(|&j| k[(i, j)].clone()).collect()).collect();
        g = num_integer::Integer::gcd(&g, &det_bareiss(&IntMatrix::from_rows(sub).unwrap()).unwrap());
        // next combination
        let mut i = r;
        while i > 0 && cols[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return g;
        }
        cols[i - 1] += 1;
        for j in i..r {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in (1usize..=4).prop_flat_map(|n| matrix(n, n, -9..=9))) {
        prop_assert_eq!(det_bareiss(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn rank_matches_rational_elimination(m in any_matrix(6)) {
        prop_assert_eq!(rank_exact(&m), rational_rank(&m));
    }

    #[test]
    fn rank_of_low_rank_products(
        (a, b) in (1usize..=6, 1usize..=6, 1usize..=3).prop_flat_map(|(r, c, k)| (matrix(r, k, -5..=5), matrix(k, c, -5..=5)))
    ) {
        let p = a.mul(&b).unwrap();
        prop_assert_eq!(rank_exact(&p), rational_rank(&p));
        prop_assert!(rank_exact(&p) <= a.cols());
    }

    #[test]
    fn hnf_is_unimodular_echelon(m in any_matrix(5)) {
        let (h, u) = hnf_with_transform(&m);
        prop_assert_eq!(det_bareiss(&u).unwrap().abs(), BigInt::one());
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                None => seen_zero = true,
                Some(p) => {
                    prop_assert!(!seen_zero, "zero row above a nonzero row");
                    prop_assert!(last_pivot.is_none_or(|q| p > q));
                    prop_assert!(h[(i, p)].is_positive());
                    for k in 0..i {
                        prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
                    }
                    last_pivot = Some(p);
                }
            }
        }
        prop_assert_eq!(last_pivot.map_or(0, |_| (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()), rank_exact(&m));
    }

    #[test]
    fn kernel_is_saturated(m in (1usize..=3, 2usize..=5).prop_flat_map(|(r, c)| matrix(r, c, -6..=6))) {
        let k = kernel_saturated(&m);
        prop_assert_eq!(k.rows(), m.cols() - rank_exact(&m));
        if k.rows() > 0 {
            prop_assert!(m.mul(&k.transpose()).unwrap().entries().iter().all(Zero::is_zero));
            prop_assert_eq!(rank_exact(&k), k.rows());
            prop_assert_eq!(maximal_minor_gcd(&k), BigInt::one());
        }
    }

    #[test]
    fn ldl_reconstructs(g in (1usize..=4).prop_flat_map(symmetric_pd)) {
        let f = ldl(&g).unwrap();
        prop_assert!(f.is_unit_lower());
        prop_assert_eq!(f.reconstruct(), g.to_rational());
        prop_assert!(f.d.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn lll_is_a_reduced_congruence(g in (1usize..=4).prop_flat_map(symmetric_pd)) {
        let delta = BigRational::new(3.into(), 4.into());
        let r = lll_gram(&g, &delta).unwrap();
        prop_assert_eq!(det_bareiss(&r.transform).unwrap().abs(), BigInt::one());
        prop_assert_eq!(g.congruent(&r.transform).unwrap(), r.gram.clone());
        prop_assert_eq!(det_bareiss(&r.gram).unwrap(), det_bareiss(&g).unwrap());
        prop_assert!(is_lll_reduced(&r.gram, &delta).unwrap());
    }
}

#[test]
fn determinant_fixture() {
    let m = IntMatrix::from_i64_rows(&[[321, 1038, -505], [1038, 851, -861], [-505, -861, 245]]);
    assert_eq!(det_bareiss(&m).unwrap(), BigInt::from(250617979));
    assert_eq!(cofactor_det(&m), BigInt::from(250617979));
}
