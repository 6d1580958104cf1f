//! Kronecker symbols, quadratic characters, theta-series metadata and a lower
//! bound for the dimension of the weight-2 newform space at level `2d`.

use alloc::format;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{ceil_sqrt_u64, factor_u64, is_squarefree_u64};
use crate::error::{Error, Result};

/// Value of `(a/2)` for odd `a`, indexed by `a mod 8`.
const TAB2: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

/// The Kronecker symbol `(a/b)`.
///
/// `(a/0)` is 1 only for `a = 1`; together with `(a/−1) = −1` for negative
/// `a` and complete multiplicativity in `b` this forces `(−1/0) = 0`.
pub fn kronecker(a: i64, b: i64) -> i8 {
    let (mut a, mut b) = (a as i128, b as i128);
    if b == 0 {
        return i8::from(a == 1);
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let v = b.trailing_zeros();
    b >>= v;
    let mut k: i8 = if v % 2 == 0 { 1 } else { TAB2[(a & 7) as usize] };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    // b is odd and positive from here on
    loop {
        if a == 0 {
            return if b == 1 { k } else { 0 };
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 {
            k *= TAB2[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}

/// Squarefree part `d_f` of `d = d_f·d_s²`, keeping the sign.
pub fn squarefree_part(d: i64) -> i64 {
    assert!(d != 0, "squarefree part of zero");
    let core: i64 = factor_u64(d.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p as i64)
        .product();
    core * d.signum()
}

/// `D_d`: `d_f` when `d_f ≡ 1 (mod 4)`, otherwise `4·d_f`.
pub fn fundamental_d(d: i64) -> i64 {
    let df = squarefree_part(d);
    if df.rem_euclid(4) == 1 {
        df
    } else {
        4 * df
    }
}

/// `χ_d(n) = (D_d / n)`.
pub fn chi(d: i64, n: i64) -> i8 {
    kronecker(fundamental_d(d), n)
}

/// The quadratic character `χ_d`, with conductor `|D_d|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterSpec {
    pub defining: i64,
    pub conductor: u64,
}

impl CharacterSpec {
    pub fn new(d: i64) -> Self {
        let defining = fundamental_d(d);
        Self { defining, conductor: defining.unsigned_abs() }
    }

    pub fn eval(&self, n: i64) -> i8 {
        kronecker(self.defining, n)
    }
}

/// Weight, level and character of the theta series of a degree-`n` field:
/// `θ_K ∈ M_{(n−1)/2}(Γ₀(2nd), (δ_n·n·d / ·))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaMetadata {
    pub degree: usize,
    pub field_disc: BigInt,
    pub weight: Ratio<i64>,
    pub level: BigInt,
    /// `(−1)^{(n−1)/2}·n·d` for odd `n`, `n·d/2` for even `n`.
    pub character_disc: BigInt,
}

pub fn theta_metadata(n: usize, d: &BigInt) -> Result<ThetaMetadata> {
    if !(2..=7).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    if !d.is_positive() {
        return Err(Error::Unsupported(format!("field discriminant {d} must be positive")));
    }
    let nd = BigInt::from(n) * d;
    let character_disc = if n % 2 == 1 {
        if ((n - 1) / 2) % 2 == 1 {
            -nd.clone()
        } else {
            nd.clone()
        }
    } else {
        &nd / 2
    };
    Ok(ThetaMetadata {
        degree: n,
        field_disc: d.clone(),
        weight: Ratio::new(n as i64 - 1, 2),
        level: nd * 2,
        character_disc,
    })
}

/// Number of `x mod N` with `x² + 1 ≡ 0 (mod N)`, for squarefree `N`.
pub fn count_solutions_x2_plus_1(n: u64) -> Result<u64> {
    if !is_squarefree_u64(n) {
        return Err(Error::Unsupported(format!("N = {n} is not a positive squarefree integer")));
    }
    Ok(factor_u64(n)
        .into_iter()
        .map(|(p, _)| match p {
            2 => 1,
            p if p % 4 == 1 => 2,
            _ => 0,
        })
        .product())
}

/// `λ(r, s, p)` for `r ≥ 1` and `0 ≤ s ≤ r`.
pub fn lambda_p(r: u32, s: u32, p: u64) -> Result<BigInt> {
    if r == 0 || s > r {
        return Err(Error::Unsupported(format!("lambda({r}, {s}, {p}) outside 0 <= s <= r, r >= 1")));
    }
    let pb = BigInt::from(p);
    let pow = |e: u32| num_traits::pow(pb.clone(), e as usize);
    Ok(if 2 * s > r {
        pow(r - s) * 2
    } else if r % 2 == 0 {
        let rp = r / 2;
        pow(rp) + pow(rp - 1)
    } else {
        pow((r - 1) / 2) * 2
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DimBoundMode {
    /// Both correction sums bounded by `⌈√(2d)⌉`, then `dim M₀ = 1` subtracted.
    Paper,
    /// Correction terms evaluated with unit coefficient. Heuristic: the
    /// coefficient of the `x² + 1` sum is unspecified.
    ExactTerms,
}

/// Lower bound for `dim S₂^new(Γ₀(2d), (2d/·))` via the crude estimate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimBound {
    pub d: u64,
    /// `N = 2d`.
    pub level: u64,
    pub mode: DimBoundMode,
    /// `(N/12)·∏_{p|N}(1 + 1/p)`.
    pub main_term: BigRational,
    /// `∏_{p|N} λ(1, 1, p)`.
    pub lambda_product: BigInt,
    /// `#{x mod N : x² + 1 ≡ 0}`.
    pub sol_count: u64,
    /// `⌈√(2d)⌉`.
    pub sqrt_bound: u64,
    pub lower_bound: BigRational,
    pub heuristic: bool,
}

pub fn dim_lower_bound(d: u64, mode: DimBoundMode) -> Result<DimBound> {
    if d <= 1 || d % 2 == 0 || !is_squarefree_u64(d) {
        return Err(Error::Unsupported(format!("dimension bound needs odd squarefree d > 1, got {d}")));
    }
    let n = d.checked_mul(2).ok_or_else(|| Error::Unsupported("2d overflows".into()))?;
    let primes = factor_u64(n);
    let mut main_term = BigRational::new(BigInt::from(n), BigInt::from(12));
    let mut lambda_product = BigInt::one();
    for &(p, e) in &primes {
        main_term *= BigRational::new(BigInt::from(p + 1), BigInt::from(p));
        lambda_product *= lambda_p(e, e, p)?;
    }
    let sol_count = count_solutions_x2_plus_1(n)?;
    let sqrt_bound = ceil_sqrt_u64(n);
    let one = BigRational::one();
    let lower_bound = match mode {
        DimBoundMode::Paper => {
            &main_term - BigRational::from_integer(BigInt::from(2 * sqrt_bound)) - &one
        }
        DimBoundMode::ExactTerms => {
            &main_term
                - BigRational::new(lambda_product.clone(), BigInt::from(2))
                - BigRational::from_integer(BigInt::from(sol_count))
                - &one
        }
    };
    Ok(DimBound {
        d,
        level: n,
        mode,
        main_term,
        lambda_product,
        sol_count,
        sqrt_bound,
        lower_bound,
        heuristic: mode == DimBoundMode::ExactTerms,
    })
}

impl DimBound {
    /// `main_term` rounded down, for display.
    pub fn main_term_floor(&self) -> BigInt {
        self.main_term.floor().to_integer()
    }

    pub fn main_term_f64(&self) -> f64 {
        let n = self.main_term.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.main_term.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Legendre symbol by Euler's criterion.
    fn euler(a: i64, p: i64) -> i8 {
        let mut r = 1i64;
        let mut base = a.rem_euclid(p);
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        match r {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn listed_properties() {
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(5, 0), 0);
        assert_eq!(kronecker(-1, 0), 0);
        assert_eq!(kronecker(3, 2), -1);
        assert_eq!(kronecker(7, 2), 1);
        assert_eq!(kronecker(2, 15), 1);
        assert_eq!(kronecker(-7, -1), -1);
        assert_eq!(kronecker(7, -1), 1);
        assert_eq!(kronecker(6, 9), 0);
    }

    #[test]
    fn legendre_agrees_with_euler() {
        for p in [3i64, 5, 7, 11, 13, 101, 199] {
            for a in 1..p {
                assert_eq!(kronecker(a, p), euler(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_d(5), 5);
        assert_eq!(fundamental_d(12), 12);
        assert_eq!(fundamental_d(45), 5);
        assert_eq!(fundamental_d(8), 8);
        assert_eq!(fundamental_d(-3), -3);
        assert_eq!(fundamental_d(-1), -4);
        assert_eq!(CharacterSpec::new(12).conductor, 12);
    }

    #[test]
    fn characters() {
        assert_eq!(chi(5, 2), -1);
        assert_eq!(chi(12, 5), -1);
        for d in [5, 12, -3, 35537, 71074] {
            assert_eq!(chi(d, 1), 1);
        }
    }

    #[test]
    fn metadata() {
        let m = theta_metadata(4, &35537.into()).unwrap();
        assert_eq!(m.weight, Ratio::new(3, 2));
        assert_eq!(m.level, 284296.into());
        assert_eq!(m.character_disc, 71074.into());
        let m = theta_metadata(2, &5.into()).unwrap();
        assert_eq!((m.weight, m.level, m.character_disc), (Ratio::new(1, 2), 20.into(), 5.into()));
        let m = theta_metadata(3, &229.into()).unwrap();
        assert_eq!((m.weight, m.level, m.character_disc), (Ratio::from_integer(1), 1374.into(), (-687).into()));
        let m = theta_metadata(5, &14641.into()).unwrap();
        assert_eq!(m.character_disc, (5 * 14641).into());
        assert!(theta_metadata(8, &5.into()).is_err());
    }

    #[test]
    fn x2_plus_1() {
        let brute = |n: u64| (0..n).filter(|x| (x * x + 1) % n == 0).count() as u64;
        for n in [1u64, 2, 5, 6, 10, 13, 26, 65, 130, 35537 * 2] {
            assert_eq!(count_solutions_x2_plus_1(n).unwrap(), brute(n), "N = {n}");
        }
        assert!(count_solutions_x2_plus_1(4).is_err());
    }

    #[test]
    fn lambda_cases() {
        for p in [2, 3, 5, 35537] {
            assert_eq!(lambda_p(1, 1, p).unwrap(), 2.into());
        }
        assert_eq!(lambda_p(2, 1, 3).unwrap(), 4.into());
        assert_eq!(lambda_p(3, 1, 5).unwrap(), 10.into());
        assert!(lambda_p(1, 2, 3).is_err());
    }

    #[test]
    fn dimension_bound() {
        let b = dim_lower_bound(35537, DimBoundMode::Paper).unwrap();
        assert_eq!(b.main_term, BigRational::new(17769.into(), 2.into()));
        assert_eq!(b.sqrt_bound, 267);
        assert_eq!(b.lower_bound, BigRational::new(17769.into(), 2.into()) - BigRational::from_integer(535.into()));
        let e = dim_lower_bound(35537, DimBoundMode::ExactTerms).unwrap();
        assert_eq!(e.lambda_product, 4.into());
        assert_eq!(e.sol_count, 2);
        assert!(e.heuristic && !b.heuristic);
        let b = dim_lower_bound(15, DimBoundMode::Paper).unwrap();
        assert_eq!(b.main_term, BigRational::from_integer(6.into()));
        assert!(b.lower_bound < b.main_term);
        assert!(dim_lower_bound(12, DimBoundMode::Paper).is_err());
        assert!(dim_lower_bound(45, DimBoundMode::Paper).is_err());
    }
}
