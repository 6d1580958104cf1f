use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::arith::is_prime_u64;

/// Truncated theta series `Σ_{t ≤ B} c_t q^t`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaSeries {
    coeffs: Vec<u64>,
}

impl ThetaSeries {
    pub fn constant(precision: u64) -> Self {
        let mut coeffs = vec![0; precision as usize + 1];
        coeffs[0] = 1;
        Self { coeffs }
    }

    /// `coeffs[t] = c_t`; the precision is `coeffs.len() − 1`.
    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        assert!(!coeffs.is_empty(), "theta series needs c_0");
        Self { coeffs }
    }

    pub fn precision(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `c_t`, or 0 beyond the precision.
    pub fn coeff(&self, t: u64) -> u64 {
        self.coeffs.get(t as usize).copied().unwrap_or(0)
    }

    /// Drops coefficients above `precision`.
    pub fn truncate(&self, precision: u64) -> ThetaSeries {
        let n = (precision as usize + 1).min(self.coeffs.len());
        Self { coeffs: self.coeffs[..n].to_vec() }
    }

    /// Nonzero `(t, c_t)` with `t ≥ 1`.
    pub fn support(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.coeffs.iter().enumerate().skip(1).filter(|(_, &c)| c != 0).map(|(t, &c)| (t as u64, c))
    }

    /// Least `t ≥ 1` with `c_t > 0` within the precision.
    pub fn minimum(&self) -> Option<u64> {
        self.support().next().map(|(t, _)| t)
    }

    pub fn smallest_represented_prime(&self) -> Option<u64> {
        self.support().map(|(t, _)| t).find(|&t| is_prime_u64(t))
    }

    /// Coefficient-wise equality up to `precision`.
    pub fn agrees_up_to(&self, other: &ThetaSeries, precision: u64) -> bool {
        (0..=precision).all(|t| self.coeff(t) == other.coeff(t))
    }

    /// Plain-text q-expansion, e.g. `1 + 2q^23 + 2q^27 + O(q^30)`.
    pub fn display_terms(&self) -> String {
        let mut s = String::new();
        for (t, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push_str(" + ");
            }
            match (t, c) {
                (0, _) => write!(s, "{c}").unwrap(),
                (1, 1) => s.push('q'),
                (1, _) => write!(s, "{c}q").unwrap(),
                (_, 1) => write!(s, "q^{t}").unwrap(),
                _ => write!(s, "{c}q^{t}").unwrap(),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        write!(s, " + O(q^{})", self.coeffs.len()).unwrap();
        s
    }
}

impl fmt::Display for ThetaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_terms())
    }
}
