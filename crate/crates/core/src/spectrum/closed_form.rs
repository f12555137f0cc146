//! Closed forms used as independent cross-checks of the character-sum engine.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::combinatorics::{binomial, multinomial_of};
use crate::error::{Error, Result};
use crate::types::TypeVector;

/// Sign of the `3xyz` term in `(x³+y³+z³ ± 3xyz)^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

/// All coefficients of `(x³+y³+z³ ± 3xyz)^l`, by `l` successive
/// multiplications. Indexed by the exponents of `x` and `y`; the exponent of
/// `z` is `3l` minus both.
#[derive(Debug, Clone)]
pub struct BalancedPower {
    l: u32,
    coeffs: Vec<BigInt>,
}

impl BalancedPower {
    pub fn new(l: u32, sign: Sign) -> Self {
        let n = 3 * l as usize;
        let side = n + 1;
        let mut coeffs = vec![BigInt::zero(); side * side];
        coeffs[0] = BigInt::from(1);
        let cross = match sign {
            Sign::Minus => BigInt::from(-3),
            Sign::Plus => BigInt::from(3),
        };
        for step in 0..l as usize {
            let deg = 3 * step;
            let mut next = vec![BigInt::zero(); side * side];
            for a in 0..=deg {
                for b in 0..=deg - a {
                    let c = &coeffs[a * side + b];
                    if c.is_zero() {
                        continue;
                    }
                    next[(a + 3) * side + b] += c;
                    next[a * side + b + 3] += c;
                    next[a * side + b] += c;
                    next[(a + 1) * side + b + 1] += c * &cross;
                }
            }
            coeffs = next;
        }
        Self { l, coeffs }
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Coefficient of `x^{t0} y^{t1} z^{t2}`.
    pub fn coefficient(&self, t: &TypeVector) -> Result<BigInt> {
        if t.p() != 3 || t.n() != 3 * self.l {
            return Err(Error::param(format!(
                "type {t} is not a 3-partition of {}",
                3 * self.l
            )));
        }
        let side = 3 * self.l as usize + 1;
        Ok(self.coeffs[t.count(0) as usize * side + t.count(1) as usize].clone())
    }
}

/// Coefficient of `x^{t0} y^{t1} z^{t2}` in `(x³+y³+z³−3xyz)^l`.
pub fn balanced_coefficient(l: u32, t: &TypeVector) -> Result<BigInt> {
    BalancedPower::new(l, Sign::Minus).coefficient(t)
}

fn exact_integer(value: BigRational, what: impl FnOnce() -> String) -> Result<BigInt> {
    if !value.is_integer() {
        return Err(Error::invariant(format!("{} is {value}, not an integer", what())));
    }
    Ok(value.to_integer())
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `multinomial(n; l,l,l) / multinomial(n; T)`, exact.
pub fn balanced_ratio(t: &TypeVector) -> Result<BigRational> {
    let n = t.n();
    if t.p() != 3 || !n.is_multiple_of(3) {
        return Err(Error::param(format!("type {t} is not a ternary type of length 3l")));
    }
    let l = n / 3;
    Ok(ratio(multinomial_of(&[l, l, l]), multinomial_of(t.counts())))
}

/// Eigenvalue of `O_{3l,3}` at type `T` from the balanced-power closed form.
pub fn orthogonality_eigenvalue(t: &TypeVector) -> Result<BigInt> {
    let table = BalancedPower::new(t.n() / 3, Sign::Minus);
    orthogonality_eigenvalue_from(&table, t)
}

/// Same as [`orthogonality_eigenvalue`], reusing a precomputed table.
pub fn orthogonality_eigenvalue_from(table: &BalancedPower, t: &TypeVector) -> Result<BigInt> {
    let coeff = table.coefficient(t)?;
    let value = balanced_ratio(t)? * BigRational::from_integer(coeff);
    exact_integer(value, || format!("closed-form λ{t}"))
}

/// `M / multinomial(n;T) · h(T)` with `h` the coefficient of
/// `(x³+y³+z³+3xyz)^l`: an upper bound on `|λ(T)|`.
pub fn orthogonality_abs_bound_from(plus: &BalancedPower, t: &TypeVector) -> Result<BigRational> {
    Ok(balanced_ratio(t)? * BigRational::from_integer(plus.coefficient(t)?))
}

/// `λ(0, t1, t2) = M · C(l, t1/3) / C(n, t1)`, for `t1 ≡ 0 (mod 3)`.
/// `λ(1, t1, t2) = −n · M · C(l−1, (t1−1)/3) / multinomial(n; 1, t1, t2)`.
/// `λ(2, t1, t2) = 9 · M · C(l, 2) · C(l−2, (t1−2)/3) / multinomial(n; 2, t1, t2)`.
/// Returns `None` outside `t0 ≤ 2` with all parts congruent mod 3.
pub fn small_t0_eigenvalue(t: &TypeVector) -> Result<Option<BigInt>> {
    let n = t.n();
    if t.p() != 3 || !n.is_multiple_of(3) {
        return Err(Error::param(format!("type {t} is not a ternary type of length 3l")));
    }
    let l = n as u64 / 3;
    let (t0, t1, t2) = (t.count(0), t.count(1), t.count(2));
    if t0 > 2 || t1 % 3 != t0 || t2 % 3 != t0 {
        return Ok(None);
    }
    let m = BigInt::from(multinomial_of(&[l as u32; 3]));
    let k = (t1 - t0) as u64 / 3;
    let (num, den): (BigInt, BigUint) = match t0 {
        0 => (m * BigInt::from(binomial(l, k)), binomial(n as u64, t1 as u64)),
        1 => (
            -(m * BigInt::from(n) * BigInt::from(binomial(l - 1, k))),
            multinomial_of(t.counts()),
        ),
        _ => {
            if l < 2 {
                return Ok(None);
            }
            (
                m * BigInt::from(9) * BigInt::from(binomial(l, 2)) * BigInt::from(binomial(l - 2, k)),
                multinomial_of(t.counts()),
            )
        }
    };
    let value = BigRational::new(num, BigInt::from(den));
    exact_integer(value, || format!("small-t0 closed form at {t}")).map(Some)
}

/// `λ(1,1,n−2) = −M/(n−1)` for `n = 3l`.
pub fn orthogonality_lambda_min(l: u32) -> Result<BigInt> {
    let n = 3 * l;
    if l == 0 {
        return Err(Error::param("l must be >= 1"));
    }
    let m = BigInt::from(multinomial_of(&[l, l, l]));
    let value = BigRational::new(-m, BigInt::from(n - 1));
    exact_integer(value, || format!("λ(1,1,{})", n - 2))
}

/// `λ(2,2,n−4) = 2M/((n−1)(n−2))` for `n = 3l ≥ 6`.
pub fn orthogonality_second_largest(l: u32) -> Result<BigInt> {
    if l < 2 {
        return Err(Error::param("l must be >= 2"));
    }
    let n = 3 * l as u64;
    let m = BigInt::from(multinomial_of(&[l, l, l]));
    let value = BigRational::new(m * 2, BigInt::from((n - 1) * (n - 2)));
    exact_integer(value, || format!("λ(2,2,{})", n - 4))
}

/// `λ_min(G_5) = −(3l−2)/l² · multinomial(3l−3; l−1, l−1, l−1)` for
/// `G_5 = Cay(Z_3^{3l−1}, type (l−1, l, l))`.
pub fn g5_lambda_min(l: u32) -> Result<BigInt> {
    if l < 1 {
        return Err(Error::param("l must be >= 1"));
    }
    let m = BigInt::from(multinomial_of(&[l - 1, l - 1, l - 1]));
    let l = l as u64;
    let value = BigRational::new(-(m * BigInt::from(3 * l - 2)), BigInt::from(l * l));
    exact_integer(value, || "λ_min(G_5)".to_string())
}

/// Eigenvalue of `G_5` at type `T` of length `3l−1`:
/// `multinomial(3l−1; l−1,l,l)/multinomial(3l−1; T) ·
///  [(x³+y³+z³−3xyz)^{l−1}(x²+y²+z²−xy−yz−xz)][T]`.
pub fn g5_eigenvalue(l: u32, t: &TypeVector) -> Result<BigInt> {
    if l < 1 || t.p() != 3 || t.n() != 3 * l - 1 {
        return Err(Error::param(format!("type {t} does not index a character of G_5 at l={l}")));
    }
    let table = BalancedPower::new(l - 1, Sign::Minus);
    let (t0, t1, t2) = (t.count(0) as i64, t.count(1) as i64, t.count(2) as i64);
    // Quadratic factor: monomials (exponent shift, coefficient).
    let quad: [([i64; 3], i64); 6] = [
        ([2, 0, 0], 1),
        ([0, 2, 0], 1),
        ([0, 0, 2], 1),
        ([1, 1, 0], -1),
        ([0, 1, 1], -1),
        ([1, 0, 1], -1),
    ];
    let mut coeff = BigInt::zero();
    for (shift, c) in quad {
        let rest = [t0 - shift[0], t1 - shift[1], t2 - shift[2]];
        if rest.iter().any(|&x| x < 0) {
            continue;
        }
        let rest = TypeVector::new(rest.iter().map(|&x| x as u32).collect())?;
        coeff += table.coefficient(&rest)? * c;
    }
    let value = ratio(multinomial_of(&[l - 1, l, l]), multinomial_of(t.counts()))
        * BigRational::from_integer(coeff);
    exact_integer(value, || format!("closed-form λ_G5{t}"))
}

/// Eigenvalue of `H(n,2)` at weight `w`: `(n−2w)²/2 − n/2`.
pub fn hamming_eigenvalue(n: u32, w: u32) -> BigInt {
    let d = BigInt::from(n as i64 - 2 * w as i64);
    (&d * &d - BigInt::from(n)) / 2
}

/// Spectral lower bound on `χ_q(H(n,2))`: `n` for even `n`, `n+1` for odd.
pub fn hamming_spectral_bound(n: u32) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::Domain(format!("H({n},2) has no edges")));
    }
    let max = hamming_eigenvalue(n, 0);
    let min = (0..=n).map(|w| hamming_eigenvalue(n, w)).min().expect("n >= 2");
    Ok(BigInt::from(1) + max.div_ceil(&min.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(c: &[u32]) -> TypeVector {
        TypeVector::new(c.to_vec()).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn balanced_coefficients() {
        assert_eq!(balanced_coefficient(1, &tv(&[1, 1, 1])).unwrap(), int(-3));
        assert_eq!(balanced_coefficient(1, &tv(&[0, 0, 3])).unwrap(), int(1));
        assert_eq!(balanced_coefficient(2, &tv(&[1, 1, 4])).unwrap(), int(-6));
        assert_eq!(balanced_coefficient(2, &tv(&[0, 1, 5])).unwrap(), int(0));
        assert!(balanced_coefficient(2, &tv(&[1, 1, 1])).is_err());
    }

    #[test]
    fn plus_and_minus_tables() {
        // With t0 <= 2 the number of xyz factors is forced to t0.
        let minus = BalancedPower::new(3, Sign::Minus);
        let plus = BalancedPower::new(3, Sign::Plus);
        for t in [[0u32, 0, 9], [1, 1, 7], [2, 2, 5], [0, 3, 6], [1, 4, 4]] {
            let t = tv(&t);
            assert_eq!(minus.coefficient(&t).unwrap().abs(), plus.coefficient(&t).unwrap());
        }
        // x³y³z³: 3! - 27 against 3! + 27.
        assert_eq!(minus.coefficient(&tv(&[3, 3, 3])).unwrap(), int(-21));
        assert_eq!(plus.coefficient(&tv(&[3, 3, 3])).unwrap(), int(33));
    }

    #[test]
    fn orthogonality_closed_forms() {
        assert_eq!(orthogonality_eigenvalue(&tv(&[1, 1, 4])).unwrap(), int(-18));
        assert_eq!(orthogonality_eigenvalue(&tv(&[0, 0, 6])).unwrap(), int(90));
        assert_eq!(orthogonality_eigenvalue(&tv(&[2, 2, 5])).unwrap(), int(60));
        assert_eq!(orthogonality_lambda_min(1).unwrap(), int(-3));
        assert_eq!(orthogonality_lambda_min(2).unwrap(), int(-18));
        assert_eq!(orthogonality_second_largest(3).unwrap(), int(60));
    }

    #[test]
    fn small_t0_matches_table() {
        for l in 1..=6u32 {
            let table = BalancedPower::new(l, Sign::Minus);
            for t in crate::types::enumerate_types(3, 3 * l, true).unwrap() {
                if let Some(v) = small_t0_eigenvalue(&t).unwrap() {
                    assert_eq!(v, orthogonality_eigenvalue_from(&table, &t).unwrap(), "{t}");
                }
            }
        }
    }

    #[test]
    fn g5_closed_forms() {
        assert_eq!(g5_lambda_min(2).unwrap(), int(-6));
        assert_eq!(g5_lambda_min(3).unwrap(), int(-70));
        assert_eq!(g5_eigenvalue(2, &tv(&[0, 1, 4])).unwrap(), int(-6));
        assert_eq!(g5_eigenvalue(2, &tv(&[0, 0, 5])).unwrap(), int(30));
    }

    #[test]
    fn hamming() {
        assert_eq!(hamming_eigenvalue(6, 1), int(5));
        assert_eq!(hamming_eigenvalue(6, 3), int(-3));
        for n in 2..=16u32 {
            let expected = if n % 2 == 0 { n } else { n + 1 };
            assert_eq!(hamming_spectral_bound(n).unwrap(), int(expected as i64));
        }
        assert!(hamming_spectral_bound(1).is_err());
    }
}
