//! Irreducibility over ℚ, certified through factorization patterns mod p.
//!
//! For a prime `p` not dividing `disc(f)`, the degrees of the irreducible
//! factors of `f mod p` bound the degrees a rational factor could have: any
//! factor over ℚ of degree `k` forces `k` to be a subset sum of every such
//! pattern. If no `k` in `1..n` survives all primes tried, `f` is irreducible.
//! The test is one-sided; some irreducible polynomials (for instance those
//! with Galois group `V4`) never lose every candidate.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::dedekind::Fp;
use super::Polynomial;
use crate::arith::{factor_u64, is_prime_u64};

/// Outcome of [`irreducibility`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    /// Proven irreducible over ℚ.
    Certified,
    /// `f` has the integer root given.
    IntegerRoot(BigInt),
    /// No linear factor, but the pattern test did not finish.
    Uncertified,
}

const PRIME_LIMIT: u64 = 600;

fn mulmod_poly(a: &Fp, b: &Fp, m: &Fp) -> Fp {
    a.mul(b).divrem(m).1
}

fn powmod_poly(base: &Fp, mut e: u64, m: &Fp) -> Fp {
    let mut r = Fp::new(base.p, vec![1]);
    let mut b = base.divrem(m).1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_poly(&r, &b, m);
        }
        b = mulmod_poly(&b, &b, m);
        e >>= 1;
    }
    r
}

/// Degrees of the irreducible factors of a squarefree monic `f` over 𝔽_p.
fn factor_degrees(f: &Fp) -> Vec<usize> {
    let p = f.p;
    let x = Fp::new(p, vec![0, 1]);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut k = 1;
    while 2 * k <= rest.degree() {
        h = powmod_poly(&h, p, &rest);
        let mut diff = h.c.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = Fp::new(p, diff).gcd(&rest);
        if g.degree() > 0 {
            out.extend(core::iter::repeat_n(k, g.degree() / k));
            rest = rest.divrem(&g).0;
            h = h.divrem(&rest).1;
        }
        k += 1;
    }
    if rest.degree() > 0 {
        out.push(rest.degree());
    }
    out
}

fn integer_root(f: &Polynomial) -> Option<BigInt> {
    let c = f.coeffs();
    if c[0].is_zero() {
        return Some(BigInt::zero());
    }
    let c0 = c[0].abs().to_u64()?;
    let mut divisors = vec![1u64];
    for (q, e) in factor_u64(c0) {
        let base = divisors.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= q;
            divisors.extend(base.iter().map(|d| d * pk));
        }
    }
    divisors.sort_unstable();
    for d in divisors {
        for r in [BigInt::from(d), -BigInt::from(d)] {
            let v = c.iter().rev().fold(BigInt::zero(), |acc, a| acc * &r + a);
            if v.is_zero() {
                return Some(r);
            }
        }
    }
    None
}

/// Decides irreducibility of a separable monic polynomial as far as the
/// mod-p pattern test allows.
pub fn irreducibility(f: &Polynomial) -> Irreducibility {
    if let Some(r) = integer_root(f) {
        return Irreducibility::IntegerRoot(r);
    }
    let n = f.degree();
    if n <= 3 {
        return Irreducibility::Certified;
    }
    let Ok(disc) = f.discriminant() else {
        return Irreducibility::Uncertified;
    };
    // bit k set: a factor of degree k is still possible
    let mut open: u64 = ((1u64 << n) - 1) & !1;
    for p in (3..PRIME_LIMIT).filter(|&p| is_prime_u64(p)) {
        if (&disc % p).is_zero() {
            continue;
        }
        let reduced: Vec<u64> =
            f.coeffs().iter().map(|a| a.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect();
        let mut sums: u64 = 1;
        for d in factor_degrees(&Fp::new(p, reduced)) {
            sums |= sums << d;
        }
        open &= sums;
        if open == 0 {
            return Irreducibility::Certified;
        }
    }
    Irreducibility::Uncertified
}
