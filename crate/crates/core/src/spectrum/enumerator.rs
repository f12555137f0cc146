//! Complete weight enumerators of codes over `Z_p` and the MacWilliams
//! transform, expanded with exact cyclotomic coefficients.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::combinatorics::multinomial_of;
use crate::cyclotomic::{is_prime, CyclotomicInteger};
use crate::error::{Error, Result};
use crate::spectrum::residue_distribution;
use crate::types::{type_of, TypeVector};

/// `A_C = Σ_T A[T] x_0^{t_0} ⋯ x_{p−1}^{t_{p−1}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    p: u32,
    n: u32,
    coeffs: BTreeMap<TypeVector, BigUint>,
}

impl WeightEnumerator {
    /// Zero coefficients are dropped.
    pub fn new(p: u32, n: u32, coeffs: impl IntoIterator<Item = (TypeVector, BigUint)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (t, c) in coeffs {
            if t.p() != p || t.n() != n {
                return Err(Error::param(format!("monomial {t} is not a {p}-partition of {n}")));
            }
            if !c.is_zero() {
                *map.entry(t).or_insert_with(BigUint::zero) += c;
            }
        }
        Ok(Self { p, n, coeffs: map })
    }

    /// Enumerator of an explicit list of words.
    pub fn of_words(p: u32, n: u32, words: &[Vec<u32>]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(words.len());
        for w in words {
            if w.len() != n as usize {
                return Err(Error::param(format!("word of length {} in a length-{n} code", w.len())));
            }
            coeffs.push((type_of(w, p)?, BigUint::from(1u32)));
        }
        Self::new(p, n, coeffs)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<TypeVector, BigUint> {
        &self.coeffs
    }

    pub fn coefficient(&self, t: &TypeVector) -> BigUint {
        self.coeffs.get(t).cloned().unwrap_or_default()
    }

    /// `A_C(1, …, 1)`.
    pub fn size(&self) -> BigUint {
        self.coeffs.values().sum()
    }
}

/// All `Z_p`-linear combinations of `generators`, sorted and deduplicated.
pub fn span(p: u32, n: u32, generators: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    if !is_prime(p as u64) {
        return Err(Error::param(format!("linear codes need a prime field, got p={p}")));
    }
    let mut words: BTreeSet<Vec<u32>> = BTreeSet::new();
    words.insert(vec![0; n as usize]);
    for g in generators {
        if g.len() != n as usize || g.iter().any(|&x| x >= p) {
            return Err(Error::param(format!("generator {g:?} is not in Z_{p}^{n}")));
        }
        let mut next = BTreeSet::new();
        for w in &words {
            for a in 0..p {
                next.insert(w.iter().zip(g).map(|(x, y)| (x + a * y) % p).collect());
            }
        }
        words = next;
    }
    Ok(words.into_iter().collect())
}

/// `{u : u·c = 0 for every c in code}` by enumeration of `Z_p^n`.
pub fn dual_code(p: u32, n: u32, code: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let total = (p as u64).pow(n);
    let mut out = Vec::new();
    let mut u = vec![0u32; n as usize];
    for idx in 0..total {
        let mut x = idx;
        for slot in u.iter_mut() {
            *slot = (x % p as u64) as u32;
            x /= p as u64;
        }
        if code
            .iter()
            .all(|c| c.iter().zip(&u).map(|(a, b)| a * b).sum::<u32>() % p == 0)
        {
            out.push(u.clone());
        }
    }
    out.sort();
    out
}

/// Homogeneous polynomial in `p` variables with cyclotomic coefficients.
type Poly = BTreeMap<Vec<u32>, CyclotomicInteger>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out: Poly = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let term = ca * cb;
            match out.get_mut(&e) {
                Some(acc) => *acc += &term,
                None => {
                    out.insert(e, term);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Successive powers `L^0, …, L^n` of a linear form.
fn powers(p: u32, linear: &Poly, n: u32) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let one: Poly = [(vec![0; p as usize], CyclotomicInteger::from_integer(p, 1).expect("prime"))].into();
    out.push(one);
    for k in 0..n as usize {
        out.push(poly_mul(&out[k], linear));
    }
    out
}

/// `(1/|C|) · A_C(L_0, …, L_{p−1})` with `L_a = Σ_b ζ^{ab} x_b`: the
/// enumerator of the dual code. Every output coefficient must be a
/// non-negative rational integer divisible by `code_size`.
pub fn macwilliams_transform(enumerator: &WeightEnumerator, code_size: &BigUint) -> Result<WeightEnumerator> {
    let p = enumerator.p;
    let n = enumerator.n;
    if !is_prime(p as u64) {
        return Err(Error::param(format!("MacWilliams transform needs prime p, got {p}")));
    }
    if code_size.is_zero() {
        return Err(Error::param("code size must be positive"));
    }
    let forms: Vec<Vec<Poly>> = (0..p)
        .map(|a| {
            let mut linear: Poly = BTreeMap::new();
            for b in 0..p {
                let mut e = vec![0; p as usize];
                e[b as usize] = 1;
                linear.insert(e, CyclotomicInteger::zeta_pow(p, (a * b) as u64).expect("prime"));
            }
            powers(p, &linear, n)
        })
        .collect();

    let mut total: Poly = BTreeMap::new();
    for (t, c) in &enumerator.coeffs {
        let mut term = forms[0][t.count(0) as usize].clone();
        for a in 1..p as usize {
            term = poly_mul(&term, &forms[a][t.count(a) as usize]);
        }
        let c = BigInt::from(c.clone());
        for (e, v) in term {
            let v = &v * &c;
            match total.get_mut(&e) {
                Some(acc) => *acc += &v,
                None => {
                    total.insert(e, v);
                }
            }
        }
    }

    let size = BigInt::from(code_size.clone());
    let mut out = Vec::new();
    for (e, v) in total {
        let t = TypeVector::new(e)?;
        let value = v.as_integer().ok_or_else(|| {
            Error::invariant(format!("transformed coefficient at {t} is {v}, not a rational integer"))
        })?;
        if value.is_negative() {
            return Err(Error::invariant(format!("transformed coefficient at {t} is negative: {value}")));
        }
        let (q, r) = value.div_rem(&size);
        if !r.is_zero() {
            return Err(Error::invariant(format!(
                "transformed coefficient at {t} is {value}, not divisible by |C| = {code_size}"
            )));
        }
        out.push((t, q.to_biguint().expect("non-negative")));
    }
    WeightEnumerator::new(p, n, out)
}

/// Both sides of `multinomial(n;S)·N_0(S→T) = multinomial(n;T)·N_0(T→S)`,
/// where `N_0(S→T)` counts vectors of type `T` orthogonal to a fixed vector
/// of type `S`.
pub fn duality_check(s: &TypeVector, t: &TypeVector) -> Result<(BigUint, BigUint)> {
    let n_st = residue_distribution(s, t)?.swap_remove(0);
    let n_ts = residue_distribution(t, s)?.swap_remove(0);
    Ok((multinomial_of(s.counts()) * n_st, multinomial_of(t.counts()) * n_ts))
}
