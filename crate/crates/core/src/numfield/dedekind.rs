//! Dedekind's p-maximality criterion for `ℤ[θ]`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::Polynomial;
use crate::error::{Error, Result};

/// Dense polynomial over 𝔽_p, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) struct Fp {
    pub(super) p: u64,
    pub(super) c: Vec<u64>,
}

impl Fp {
    pub(super) fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Fp { p, c }
    }

    pub(super) fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub(super) fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut base, mut e, mut r) = (a % self.p, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulmod(r, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        r
    }

    pub(super) fn monic(&self) -> Fp {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let i = self.inv(lc);
                Fp::new(self.p, self.c.iter().map(|&x| self.mulmod(x, i)).collect())
            }
        }
    }

    pub(super) fn mul(&self, o: &Fp) -> Fp {
        if self.is_zero() || o.is_zero() {
            return Fp::new(self.p, Vec::new());
        }
        let mut out = alloc::vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mulmod(a, b)) % self.p;
            }
        }
        Fp::new(self.p, out)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub(super) fn divrem(&self, d: &Fp) -> (Fp, Fp) {
        let p = self.p;
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (Fp::new(p, Vec::new()), self.clone());
        }
        let dl = d.c.len() - 1;
        let li = self.inv(d.c[dl]);
        let mut q = alloc::vec![0u64; r.len() - dl];
        for top in (dl..r.len()).rev() {
            let f = self.mulmod(r[top], li);
            q[top - dl] = f;
            if f == 0 {
                continue;
            }
            for (i, &dc) in d.c.iter().enumerate() {
                let idx = top - dl + i;
                r[idx] = (r[idx] + p - self.mulmod(f, dc)) % p;
            }
        }
        (Fp::new(p, q), Fp::new(p, r))
    }

    pub(super) fn gcd(&self, o: &Fp) -> Fp {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> Fp {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| self.mulmod(x, (i as u64) % self.p))
            .collect();
        Fp::new(self.p, c)
    }

    /// Product of the distinct monic irreducible factors.
    fn radical(&self) -> Fp {
        if self.degree() == 0 {
            return Fp::new(self.p, alloc::vec![1]);
        }
        let d = self.derivative();
        if d.is_zero() {
            // a(x) = b(x^p) = b(x)^p over 𝔽_p
            let root: Vec<u64> = self.c.iter().step_by(self.p as usize).copied().collect();
            return Fp::new(self.p, root).radical();
        }
        let c = self.gcd(&d);
        let w = self.divrem(&c).0.monic();
        let rc = c.radical();
        let g = w.gcd(&rc);
        w.mul(&rc).divrem(&g).0.monic()
    }
}

/// Dedekind's criterion: true iff `ℤ[θ]` is maximal at the prime `p`.
///
/// Writes `f ≡ g·h (mod p)` with `g` the radical of `f mod p`, sets
/// `F = (f − g·h)/p`, and tests `gcd(F̄, ḡ, h̄) = 1` over 𝔽_p.
pub fn dedekind_is_p_maximal(f: &Polynomial, p: &BigInt) -> Result<bool> {
    let pu = p
        .to_u64()
        .filter(|&q| q >= 2)
        .ok_or_else(|| Error::Unsupported(alloc::format!("Dedekind test at p = {p}")))?;
    let reduce = |v: &[BigInt]| -> Vec<u64> {
        v.iter().map(|c| c.mod_floor(p).to_u64().unwrap()).collect()
    };
    let fbar = Fp::new(pu, reduce(f.coeffs()));
    let g = fbar.radical();
    let h = fbar.divrem(&g).0;
    let lift = |a: &Fp| -> Vec<BigInt> { a.c.iter().map(|&x| BigInt::from(x)).collect() };
    let (gz, hz) = (lift(&g), lift(&h));
    let mut gh = alloc::vec![BigInt::zero(); gz.len() + hz.len() - 1];
    for (i, a) in gz.iter().enumerate() {
        for (j, b) in hz.iter().enumerate() {
            gh[i + j] += a * b;
        }
    }
    let fc = f.coeffs();
    let len = fc.len().max(gh.len());
    let diff: Vec<BigInt> = (0..len)
        .map(|i| {
            let a = fc.get(i).cloned().unwrap_or_default();
            let b = gh.get(i).cloned().unwrap_or_default();
            let d = a - b;
            debug_assert!((&d % p).is_zero());
            d / p
        })
        .collect();
    let big_f = Fp::new(pu, reduce(&diff));
    let common = big_f.gcd(&g).gcd(&h);
    Ok(common.degree() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c).unwrap()
    }

    #[test]
    fn radical_handles_pth_powers() {
        // (x + 1)^2 over 𝔽_2 has zero derivative
        let a = Fp::new(2, alloc::vec![1, 0, 1]);
        assert_eq!(a.radical(), Fp::new(2, alloc::vec![1, 1]));
        // x^2 (x+1)^3 over 𝔽_3
        let b = Fp::new(3, alloc::vec![0, 0, 1, 3, 3, 1]);
        assert_eq!(b.radical(), Fp::new(3, alloc::vec![0, 1, 1]));
    }

    #[test]
    fn criterion() {
        assert!(!dedekind_is_p_maximal(&poly(&[-5, 0, 1]), &2.into()).unwrap());
        assert!(dedekind_is_p_maximal(&poly(&[-1, -1, 1]), &2.into()).unwrap());
        assert!(dedekind_is_p_maximal(&poly(&[-1, -4, 0, 1]), &229.into()).unwrap());
        // x^2 - 12: index 2 over ℤ[√3]
        assert!(!dedekind_is_p_maximal(&poly(&[-12, 0, 1]), &2.into()).unwrap());
        // x^2 - 3 has disc 12 but ℤ[√3] is maximal
        assert!(dedekind_is_p_maximal(&poly(&[-3, 0, 1]), &2.into()).unwrap());
        // index 14 = 2·7 order of the first disc-4024049 quartic
        let k1 = poly(&[20, 46, -37, -1, 1]);
        assert!(!dedekind_is_p_maximal(&k1, &2.into()).unwrap());
        assert!(!dedekind_is_p_maximal(&k1, &7.into()).unwrap());
    }
}
