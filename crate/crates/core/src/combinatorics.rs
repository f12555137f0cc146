//! Exact binomials, multinomials and Krawtchouk values.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::types::TypeVector;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Signed binomial with `binom(n, k) = 0` for `k < 0` or `k > n`.
pub(crate) fn binomial_i(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        BigInt::from(binomial(n as u64, k as u64))
    }
}

/// `n! / Π t_i!` for `parts` summing to `n`.
pub fn multinomial(n: u32, parts: &TypeVector) -> Result<BigUint> {
    if parts.n() != n {
        return Err(Error::param(format!(
            "parts {parts} sum to {}, expected {n}",
            parts.n()
        )));
    }
    Ok(multinomial_of(parts.counts()))
}

/// Multinomial of raw counts (the total is their sum).
pub fn multinomial_of(parts: &[u32]) -> BigUint {
    // Product of binomials over prefix sums keeps intermediates small.
    let mut acc = BigUint::one();
    let mut total = 0u64;
    for &t in parts {
        total += t as u64;
        acc *= binomial(total, t as u64);
    }
    acc
}

/// `K_r(w) = Σ_j (-1)^j binom(w, j) binom(n-w, r-j)`.
pub fn krawtchouk(n: u32, r: u32, w: u32) -> Result<BigInt> {
    if r > n || w > n {
        return Err(Error::param(format!(
            "krawtchouk needs 0 <= r, w <= n; got n={n}, r={r}, w={w}"
        )));
    }
    let (n, r, w) = (n as i64, r as i64, w as i64);
    let mut acc = BigInt::zero();
    for j in 0..=r.min(w) {
        let term = binomial_i(w, j) * binomial_i(n - w, r - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}
