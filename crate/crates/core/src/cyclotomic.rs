//! Exact arithmetic in `Z[ζ_p]` for prime `p`.
//!
//! Elements are stored in the power basis `1, ζ, ..., ζ^{p-2}`; a power
//! `ζ^{p-1}` is folded back using `1 + ζ + ... + ζ^{p-1} = 0`. This basis is
//! a `Z`-basis of `Z[ζ_p]`, so equality is coefficient-wise.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    fn check_p(p: u32) -> Result<()> {
        if !is_prime(p as u64) {
            return Err(Error::param(format!(
                "cyclotomic integers need a prime modulus, got {p}"
            )));
        }
        Ok(())
    }

    pub fn zero(p: u32) -> Result<Self> {
        Self::check_p(p)?;
        Ok(Self {
            p,
            coeffs: vec![BigInt::zero(); p as usize - 1],
        })
    }

    pub fn from_integer(p: u32, value: impl Into<BigInt>) -> Result<Self> {
        let mut z = Self::zero(p)?;
        z.coeffs[0] = value.into();
        Ok(z)
    }

    /// `ζ_p^k`.
    pub fn zeta_pow(p: u32, k: u64) -> Result<Self> {
        let mut counts = vec![BigInt::zero(); p as usize];
        Self::check_p(p)?;
        counts[(k % p as u64) as usize] = BigInt::from(1);
        Ok(Self::fold(p, counts))
    }

    /// `Σ_a counts[a] ζ^a` for `counts` of length `p` (the redundant basis).
    pub fn from_residue_counts<T: Into<BigInt> + Clone>(p: u32, counts: &[T]) -> Result<Self> {
        Self::check_p(p)?;
        if counts.len() != p as usize {
            return Err(Error::param(format!(
                "expected {p} residue counts, got {}",
                counts.len()
            )));
        }
        Ok(Self::fold(p, counts.iter().cloned().map(Into::into).collect()))
    }

    /// Reduce a length-`p` coefficient vector in `1, ζ, ..., ζ^{p-1}`.
    fn fold(p: u32, mut redundant: Vec<BigInt>) -> Self {
        let top = redundant.pop().expect("p >= 2");
        for c in redundant.iter_mut() {
            *c -= &top;
        }
        Self {
            p,
            coeffs: redundant,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational_integer(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        self.is_rational_integer().then(|| &self.coeffs[0])
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut redundant = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            redundant[(p - i) % p] += c;
        }
        Self::fold(self.p, redundant)
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing Z[ζ_{}] and Z[ζ_{}]", self.p, other.p);
    }

    /// Numeric value, for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let c: f64 = c.to_string().parse().unwrap_or(f64::NAN);
            let a = 2.0 * std::f64::consts::PI * i as f64 / self.p as f64;
            re += c * a.cos();
            im += c * a.sin();
        }
        (re, im)
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.same_field(rhs);
        CyclotomicInteger {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl AddAssign<&CyclotomicInteger> for CyclotomicInteger {
    fn add_assign(&mut self, rhs: &CyclotomicInteger) {
        self.same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self + &(-rhs)
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.same_field(rhs);
        let p = self.p as usize;
        let mut redundant = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                redundant[(i + j) % p] += a * b;
            }
        }
        CyclotomicInteger::fold(self.p, redundant)
    }
}

impl Mul<&BigInt> for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: &BigInt) -> CyclotomicInteger {
        CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * rhs).collect(),
        }
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}ζ")?,
                _ => write!(f, "{mag}ζ^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_all_roots_vanishes() {
        for p in [2u32, 3, 5, 7, 11] {
            let mut acc = CyclotomicInteger::zero(p).unwrap();
            for k in 0..p as u64 {
                acc += &CyclotomicInteger::zeta_pow(p, k).unwrap();
            }
            assert!(acc.is_zero(), "p={p}: {acc}");
        }
    }

    #[test]
    fn zeta_has_order_p() {
        for p in [2u32, 3, 5, 7] {
            let z = CyclotomicInteger::zeta_pow(p, 1).unwrap();
            let mut acc = CyclotomicInteger::from_integer(p, 1).unwrap();
            for k in 1..=p as u64 {
                acc = &acc * &z;
                assert_eq!(acc, CyclotomicInteger::zeta_pow(p, k).unwrap());
            }
            assert_eq!(acc, CyclotomicInteger::from_integer(p, 1).unwrap());
        }
    }

    #[test]
    fn conjugation() {
        let z = CyclotomicInteger::zeta_pow(5, 2).unwrap();
        assert_eq!(z.conj(), CyclotomicInteger::zeta_pow(5, 3).unwrap());
        // ζ + ζ̄ is real but not rational for p = 5; |ζ|² = 1.
        let prod = &z * &z.conj();
        assert_eq!(prod.as_integer(), Some(&BigInt::from(1)));
    }

    #[test]
    fn residue_counts() {
        // N = (0, 3, 3) for p = 3 is 3ζ + 3ζ² = -3.
        let c = CyclotomicInteger::from_residue_counts(3, &[0u32, 3, 3]).unwrap();
        assert_eq!(c.as_integer(), Some(&BigInt::from(-3)));
        let c = CyclotomicInteger::from_residue_counts(3, &[1u32, 2, 0]).unwrap();
        assert!(!c.is_rational_integer());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(CyclotomicInteger::zero(4).is_err());
        assert!(CyclotomicInteger::zero(1).is_err());
    }

    #[test]
    fn display() {
        let c = CyclotomicInteger::from_residue_counts(5, &[3i32, -1, 0, 2, 0]).unwrap();
        assert_eq!(c.to_string(), "3 - 1ζ + 2ζ^3");
    }
}
