//! Exhaustive per-`l` verification of the extremal eigenvalue statements for
//! `O_{3l,3}` and of the inequalities their proofs reduce to.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, multinomial_of};
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::spectrum::closed_form::{self, BalancedPower, Sign};
use crate::spectrum::{eigenvalue_of_type, CayleySpec};
use crate::types::{enumerate_types, TypeVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub claim: String,
    #[serde(rename = "type")]
    pub type_vector: TypeVector,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(rename = "type")]
    pub type_vector: TypeVector,
    #[serde(with = "crate::decimal")]
    pub eigenvalue: BigInt,
}

/// Outcome of [`verify_extremal_claims`] at one `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalVerdict {
    pub l: u32,
    pub n: u32,
    pub canonical_types: usize,
    /// `λ(0,0,n)`.
    #[serde(with = "crate::decimal")]
    pub lambda_max: BigInt,
    /// `λ(1,1,n−2)` and `−M/(n−1)`.
    #[serde(with = "crate::decimal")]
    pub lambda_min: BigInt,
    #[serde(with = "crate::decimal")]
    pub lambda_min_expected: BigInt,
    /// `λ(2,2,n−4)` and `2M/((n−1)(n−2))`, for `n ≥ 9`.
    #[serde(with = "crate::decimal::option")]
    pub second_largest: Option<BigInt>,
    #[serde(with = "crate::decimal::option")]
    pub second_largest_expected: Option<BigInt>,
    /// Largest `|λ|` over types other than `(0,0,n)`.
    pub abs_second: Witness,
    /// Largest `|λ|` over types other than `(0,0,n)` and `(1,1,n−2)`.
    pub abs_third: Option<Witness>,
    pub counterexamples: Vec<Counterexample>,
    pub passed: bool,
}

pub fn verify_extremal_claims(l: u32) -> Result<ExtremalVerdict> {
    verify_extremal_claims_with(l, Strategy::default())
}

/// Evaluates every canonical type of `Z_3^{3l}` with the character-sum
/// engine, cross-checks each value against the balanced-power closed form,
/// and checks both extremal statements. Violations are collected, not raised.
pub fn verify_extremal_claims_with(l: u32, strategy: Strategy) -> Result<ExtremalVerdict> {
    if l == 0 {
        return Err(Error::param("l must be >= 1"));
    }
    let n = 3 * l;
    let spec = CayleySpec::new(3, n, [TypeVector::balanced(3, n)?])?;
    let table = BalancedPower::new(l, Sign::Minus);
    let types: Vec<TypeVector> = enumerate_types(3, n, true)?.collect();
    let values = par::map_collect(strategy, &types, |t| -> Result<BigInt> {
        let engine = eigenvalue_of_type(&spec, t)?;
        let closed = closed_form::orthogonality_eigenvalue_from(&table, t)?;
        if engine != closed {
            return Err(Error::invariant(format!(
                "O_{{{n},3}} at {t}: engine {engine}, closed form {closed}"
            )));
        }
        Ok(engine)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let find = |counts: [u32; 3]| -> BigInt {
        let t = TypeVector::from_counts_unchecked(counts.to_vec());
        let i = types.iter().position(|x| *x == t).expect("canonical type present");
        values[i].clone()
    };
    let top = [0, 0, n];
    let min_type = [1, 1, n - 2];
    let lambda_max = find(top);
    let lambda_min = find(min_type);
    let lambda_min_expected = closed_form::orthogonality_lambda_min(l)?;

    let mut counterexamples = Vec::new();
    let ce = |claim: &str, t: &TypeVector, detail: String| Counterexample {
        claim: claim.to_string(),
        type_vector: t.clone(),
        detail,
    };
    let top_t = TypeVector::from_counts_unchecked(top.to_vec());
    let min_t = TypeVector::from_counts_unchecked(min_type.to_vec());
    if lambda_max != BigInt::from(multinomial_of(&[l, l, l])) {
        counterexamples.push(ce("largest", &top_t, format!("λ = {lambda_max}, expected multinomial(n;l,l,l)")));
    }
    if lambda_min != lambda_min_expected || !lambda_min.is_negative() {
        counterexamples.push(ce(
            "smallest-value",
            &min_t,
            format!("λ = {lambda_min}, expected {lambda_min_expected}"),
        ));
    }

    let third_applies = n >= 9;
    let second_t = TypeVector::from_counts_unchecked(if n >= 4 { vec![2, 2, n - 4] } else { top.to_vec() });
    let (second_largest, second_largest_expected) = if third_applies {
        let got = find([2, 2, n - 4]);
        let expected = closed_form::orthogonality_second_largest(l)?;
        if got != expected || !got.is_positive() {
            counterexamples.push(ce("second-largest-value", &second_t, format!("λ = {got}, expected {expected}")));
        }
        (Some(got), Some(expected))
    } else {
        (None, None)
    };

    let mut abs_second: Option<Witness> = None;
    let mut abs_third: Option<Witness> = None;
    for (t, v) in types.iter().zip(&values) {
        if *t == top_t {
            continue;
        }
        if abs_second.as_ref().is_none_or(|w| v.abs() > w.eigenvalue.abs()) {
            abs_second = Some(Witness { type_vector: t.clone(), eigenvalue: v.clone() });
        }
        if v.abs() > lambda_min.abs() {
            counterexamples.push(ce("goal", t, format!("|λ| = {} > |λ(1,1,n-2)| = {}", v.abs(), lambda_min.abs())));
        }
        if *t == min_t {
            continue;
        }
        if abs_third.as_ref().is_none_or(|w| v.abs() > w.eigenvalue.abs()) {
            abs_third = Some(Witness { type_vector: t.clone(), eigenvalue: v.clone() });
        }
        if let Some(second) = &second_largest {
            if v.abs() > second.abs() {
                counterexamples.push(ce(
                    "second-largest",
                    t,
                    format!("|λ| = {} > |λ(2,2,n-4)| = {}", v.abs(), second),
                ));
            }
        }
    }

    Ok(ExtremalVerdict {
        l,
        n,
        canonical_types: types.len(),
        lambda_max,
        lambda_min,
        lambda_min_expected,
        second_largest,
        second_largest_expected,
        abs_second: abs_second.expect("n >= 3 gives at least two canonical types"),
        abs_third,
        passed: counterexamples.is_empty(),
        counterexamples,
    })
}

/// Outcome of [`verify_appendix_claims`] at one `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppendixVerdict {
    pub l: u32,
    pub n: u32,
    /// Base-case types (`t0 ≤ 2`, parts congruent mod 3) examined.
    pub base_cases: usize,
    /// Of those, how many had `|λ| = M/multinomial(n;T) · h(T)` confirmed.
    pub equality_confirmed: usize,
    /// Types with all parts `≥ 3` whose induction polynomials were checked.
    pub induction_cases: usize,
    pub counterexamples: Vec<Counterexample>,
    pub passed: bool,
}

fn cubic_sum(t: &[i64; 3]) -> BigInt {
    t.iter().map(|&x| BigInt::from(x * (x - 1) * (x - 2))).sum()
}

/// `(n−4)(n−2)n − Σ t(t−1)(t−2) − 3 t0 t1 t2`.
pub fn induction_poly_g(t: [u32; 3]) -> BigInt {
    let t = t.map(i64::from);
    let n = t[0] + t[1] + t[2];
    BigInt::from((n - 4) * (n - 2) * n) - cubic_sum(&t) - BigInt::from(3 * t[0] * t[1] * t[2])
}

/// `n(n−4)(n−5) − Σ t(t−1)(t−2) − 3 t0 t1 t2`.
pub fn induction_poly_f(t: [u32; 3]) -> BigInt {
    let t = t.map(i64::from);
    let n = t[0] + t[1] + t[2];
    BigInt::from(n * (n - 4) * (n - 5)) - cubic_sum(&t) - BigInt::from(3 * t[0] * t[1] * t[2])
}

/// Checks, as exact integer comparisons, every canonical type of
/// `Z_3^{3l}` against the reductions used for the extremal statements:
///
/// * for `t0 ≤ 2`: the small-`t0` closed form equals the eigenvalue; `|λ|`
///   equals the `+3xyz` bound; the reduced binomial inequalities hold and are
///   equivalent to the direct comparisons with `|λ(1,1,n−2)|` and (for
///   `n ≥ 9`) `|λ(2,2,n−4)|`;
/// * for all parts `≥ 3`: the induction polynomials `g` and `f` are
///   non-negative;
/// * for every type with congruent parts: `h ≤ multinomial/(n−1)`, and for
///   `n ≥ 9` also `h ≤ 2·multinomial/((n−1)(n−2))` away from the top two.
pub fn verify_appendix_claims(l: u32) -> Result<AppendixVerdict> {
    if l == 0 {
        return Err(Error::param("l must be >= 1"));
    }
    let n = 3 * l;
    let nn = n as u64;
    let lu = l as u64;
    let minus = BalancedPower::new(l, Sign::Minus);
    let plus = BalancedPower::new(l, Sign::Plus);
    let lambda_min = closed_form::orthogonality_lambda_min(l)?.abs();
    let second = if n >= 9 { Some(closed_form::orthogonality_second_largest(l)?) } else { None };

    let mut counterexamples = Vec::new();
    let mut base_cases = 0;
    let mut equality_confirmed = 0;
    let mut induction_cases = 0;
    let mut push = |claim: &str, t: &TypeVector, detail: String| {
        counterexamples.push(Counterexample {
            claim: claim.to_string(),
            type_vector: t.clone(),
            detail,
        })
    };

    for t in enumerate_types(3, n, true)? {
        let [t0, t1, t2] = [t.count(0), t.count(1), t.count(2)];
        if t1 % 3 != t0 % 3 || t2 % 3 != t0 % 3 {
            let h = plus.coefficient(&t)?;
            if !h.is_zero() || !minus.coefficient(&t)?.is_zero() {
                push("non-congruent-vanishes", &t, format!("h = {h}"));
            }
            continue;
        }
        let is_top = [t0, t1] == [0, 0];
        let is_min = [t0, t1] == [1, 1];
        let mult = BigInt::from(multinomial_of(t.counts()));
        let h = plus.coefficient(&t)?;
        if !is_top {
            // h ≤ multinomial/(n−1)
            if h.clone() * BigInt::from(n - 1) > mult {
                push("h-bound-smallest", &t, format!("h = {h}, multinomial = {mult}"));
            }
            if second.is_some()
                && !is_min && h.clone() * BigInt::from((nn - 1) * (nn - 2)) > mult.clone() * 2 {
                    push("h-bound-second", &t, format!("h = {h}, multinomial = {mult}"));
                }
        }
        if t0 >= 3 {
            induction_cases += 1;
            let g = induction_poly_g([t0, t1, t2]);
            let f = induction_poly_f([t0, t1, t2]);
            if g.is_negative() {
                push("induction-g", &t, format!("g = {g}"));
            }
            if f.is_negative() {
                push("induction-f", &t, format!("f = {f}"));
            }
            continue;
        }
        if is_top {
            continue;
        }
        base_cases += 1;
        let lambda = closed_form::orthogonality_eigenvalue_from(&minus, &t)?;
        match closed_form::small_t0_eigenvalue(&t)? {
            Some(v) if v == lambda => {}
            other => push("small-t0-closed-form", &t, format!("closed form {other:?}, λ = {lambda}")),
        }
        let bound = closed_form::orthogonality_abs_bound_from(&plus, &t)?;
        if BigRational::from_integer(lambda.abs()) == bound {
            equality_confirmed += 1;
        } else {
            push("abs-equality", &t, format!("|λ| = {}, bound = {bound}", lambda.abs()));
        }

        // Reduced inequalities: lhs_factor · C(l', k) ≤ C(n', t1).
        let k = (t1 - t0) as u64 / 3;
        let t1u = t1 as u64;
        let (small, big) = match t0 {
            0 => (binomial(lu, k), binomial(nn, t1u)),
            1 => (binomial(lu - 1, k), binomial(nn - 1, t1u)),
            _ => (binomial(lu.saturating_sub(2), k), binomial(nn.saturating_sub(2), t1u)),
        };
        let small = BigInt::from(small);
        let big = BigInt::from(big);
        // Smallest eigenvalue: factor n−1 (t0 ≤ 1) or n−3 (t0 = 2).
        if !is_min {
            let factor = BigInt::from(if t0 == 2 { nn - 3 } else { nn - 1 });
            let reduced = &factor * &small <= big;
            let direct = lambda.abs() <= lambda_min;
            if !reduced {
                push("base-smallest", &t, format!("{factor}·{small} > {big}"));
            }
            if reduced != direct {
                push("base-smallest-equivalence", &t, format!("reduced {reduced}, direct {direct}"));
            }
        }
        // Second largest, n ≥ 9: twice the factor (n−1)(n−2)/2 or (n−2)(n−3)/2.
        if let Some(second) = &second {
            if !is_min {
                let twice = BigInt::from(if t0 == 2 { (nn - 2) * (nn - 3) } else { (nn - 1) * (nn - 2) });
                let reduced = &twice * &small <= &big * 2;
                let direct = lambda.abs() <= *second;
                if !reduced {
                    push("base-second", &t, format!("({twice}/2)·{small} > {big}"));
                }
                if reduced != direct {
                    push("base-second-equivalence", &t, format!("reduced {reduced}, direct {direct}"));
                }
            }
        }
    }

    Ok(AppendixVerdict {
        l,
        n,
        base_cases,
        equality_confirmed,
        induction_cases,
        passed: counterexamples.is_empty(),
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_l_pass() {
        let v = verify_extremal_claims(1).unwrap();
        assert!(v.passed, "{:?}", v.counterexamples);
        assert_eq!(v.lambda_min, BigInt::from(-3));
        assert!(v.second_largest.is_none());

        let v = verify_extremal_claims(2).unwrap();
        assert!(v.passed);
        assert_eq!(v.lambda_min, BigInt::from(-18));
        assert_eq!(v.abs_second.type_vector.counts(), &[1, 1, 4]);

        let v = verify_extremal_claims(3).unwrap();
        assert!(v.passed);
        assert_eq!(v.second_largest, Some(BigInt::from(60)));
        assert_eq!(v.abs_third.unwrap().eigenvalue, BigInt::from(60));
    }

    #[test]
    fn induction_polynomials_at_base() {
        assert_eq!(induction_poly_g([3, 3, 3]), BigInt::from(216));
        assert_eq!(induction_poly_f([3, 3, 3]), BigInt::from(81));
    }

    #[test]
    fn appendix_small_l() {
        for l in 1..=10 {
            let v = verify_appendix_claims(l).unwrap();
            assert!(v.passed, "l={l}: {:?}", v.counterexamples);
            assert_eq!(v.base_cases, v.equality_confirmed);
        }
    }
}
