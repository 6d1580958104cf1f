//! Small integer helpers: trial-division factoring, squarefree tests, roots.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Prime factorization of `n > 0` by trial division, as `(p, e)` pairs in
/// increasing order of `p`.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    for p in [2u64, 3] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut p = 5u64;
    let mut step = 2;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += step;
        step = 6 - step;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let f = factor_u64(n);
    f.len() == 1 && f[0] == (n, 1)
}

pub fn is_squarefree_u64(n: u64) -> bool {
    n > 0 && factor_u64(n).iter().all(|&(_, e)| e == 1)
}

/// Smallest integer `s` with `s*s >= n`.
pub fn ceil_sqrt_u64(n: u64) -> u64 {
    let s = n.sqrt();
    if s * s == n {
        s
    } else {
        s + 1
    }
}

/// Primes `p` with `p^2 | n` for a nonzero integer `n`.
///
/// Trial division runs up to the cube root of `|n|`; the cofactor left after
/// that has at most two prime factors, so it carries a square factor exactly
/// when it is itself a perfect square.
pub fn square_prime_divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(!n.is_zero(), "square_prime_divisors of zero");
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2u32);
    loop {
        if &p * &p * &p > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e >= 2 {
            out.push(p.clone());
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if rest > BigInt::one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            out.push(r);
        }
    }
    out
}

pub fn is_squarefree_big(n: &BigInt) -> bool {
    !n.is_zero() && square_prime_divisors(n).is_empty()
}

/// True for discriminants of quadratic fields: `d ≡ 1 (mod 4)` squarefree, or
/// `d = 4m` with `m ≡ 2, 3 (mod 4)` squarefree. `1` is excluded.
pub fn is_fundamental_discriminant(d: &BigInt) -> bool {
    if d.is_zero() || d.is_one() {
        return false;
    }
    let r4 = d.mod_floor(&BigInt::from(4u32)).to_u32().unwrap_or(0);
    match r4 {
        1 => is_squarefree_big(d),
        0 => {
            let m: BigInt = d / 4;
            let m4 = m.mod_floor(&BigInt::from(4u32)).to_u32().unwrap_or(0);
            (m4 == 2 || m4 == 3) && is_squarefree_big(&m)
        }
        _ => false,
    }
}
