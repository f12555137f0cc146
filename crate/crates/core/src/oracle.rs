//! Brute-force ground truth: direct character sums over all of `Z_p^n`,
//! explicit edges, and exhaustive homomorphism checks.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::budget::Budget;
use crate::combinatorics::multinomial_of;
use crate::cyclotomic::{is_prime, CyclotomicInteger};
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::spectrum::{CayleySpec, SpectrumEntry, SpectrumReport};
use crate::types::{enumerate_types, type_of, TypeVector};

/// Tolerance for the floating-point oracle at composite `p`.
pub const NUMERIC_TOLERANCE: f64 = 1e-6;

/// Largest modulus [`DenseGroupVector`] can hold.
pub const MAX_DENSE_P: u32 = 16;

/// A vector of `Z_p^n`, `n ≤ 64`, stored as digit planes: bit `j` of
/// `planes[a-1]` is set iff coordinate `j` equals `a`. For `p = 2` this is a
/// single machine word and the dot product is one popcount.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DenseGroupVector {
    n: u32,
    planes: [u64; MAX_DENSE_P as usize - 1],
}

impl DenseGroupVector {
    pub fn from_digits(p: u32, digits: &[u32]) -> Result<Self> {
        if !(2..=MAX_DENSE_P).contains(&p) {
            return Err(Error::param(format!("dense vectors support 2 <= p <= {MAX_DENSE_P}, got {p}")));
        }
        if digits.len() > 64 {
            return Err(Error::param(format!("dense vectors support n <= 64, got {}", digits.len())));
        }
        let mut planes = [0u64; MAX_DENSE_P as usize - 1];
        for (j, &d) in digits.iter().enumerate() {
            if d >= p {
                return Err(Error::param(format!("entry {d} out of range for Z_{p}")));
            }
            if d > 0 {
                planes[d as usize - 1] |= 1 << j;
            }
        }
        Ok(Self {
            n: digits.len() as u32,
            planes,
        })
    }

    /// Vertex `idx` in base `p`, least significant digit first.
    pub fn from_index(p: u32, n: u32, idx: u64) -> Result<Self> {
        Self::from_digits(p, &index_digits(p, n, idx))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn digits(&self, p: u32) -> Vec<u32> {
        (0..self.n)
            .map(|j| {
                (1..p)
                    .find(|&a| self.planes[a as usize - 1] >> j & 1 == 1)
                    .unwrap_or(0)
            })
            .collect()
    }

    pub fn type_vector(&self, p: u32) -> TypeVector {
        let mut counts = vec![0u32; p as usize];
        let mut nonzero = 0;
        for a in 1..p {
            let c = self.planes[a as usize - 1].count_ones();
            counts[a as usize] = c;
            nonzero += c;
        }
        counts[0] = self.n - nonzero;
        TypeVector::from_counts_unchecked(counts)
    }

    /// `Σ_j u_j w_j mod p`.
    pub fn dot(&self, other: &Self, p: u32) -> u32 {
        let mut acc = 0u64;
        for a in 1..p as usize {
            let pa = self.planes[a - 1];
            if pa == 0 {
                continue;
            }
            for b in 1..p as usize {
                let c = (pa & other.planes[b - 1]).count_ones() as u64;
                acc += (a * b) as u64 * c;
            }
        }
        (acc % p as u64) as u32
    }
}

pub fn index_digits(p: u32, n: u32, mut idx: u64) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = (idx % p as u64) as u32;
            idx /= p as u64;
            d
        })
        .collect()
}

pub fn digits_index(p: u32, digits: &[u32]) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64)
}

fn vertex_count(p: u32, n: u32) -> Result<u64> {
    (p as u64)
        .checked_pow(n)
        .filter(|_| n <= 64)
        .ok_or_else(|| Error::param(format!("Z_{p}^{n} is too large to enumerate")))
}

/// Every element of the connection set, as digit vectors in index order.
pub fn generator_vectors(spec: &CayleySpec, budget: &Budget) -> Result<Vec<Vec<u32>>> {
    let (p, n) = (spec.p(), spec.n());
    let total = vertex_count(p, n)?;
    budget.check_oracle(total as u128)?;
    let mut out = Vec::new();
    for idx in 0..total {
        let d = index_digits(p, n, idx);
        if spec.is_generator_type(&type_of(&d, p)?) {
            out.push(d);
        }
    }
    Ok(out)
}

fn check_work(spec: &CayleySpec, budget: &Budget) -> Result<u64> {
    let total = vertex_count(spec.p(), spec.n())?;
    let degree: u128 = spec
        .degree()
        .try_into()
        .map_err(|_| Error::param("connection set too large for the oracle"))?;
    budget.check_oracle(total as u128 * degree.max(1))?;
    Ok(total)
}

/// Per-chunk aggregation: type -> (value, number of vertices seen).
type Partial<V> = BTreeMap<TypeVector, (V, u64)>;

fn merge<V: PartialEq + std::fmt::Debug>(parts: Vec<Result<Partial<V>>>) -> Result<Partial<V>> {
    let mut out: Partial<V> = BTreeMap::new();
    for part in parts {
        for (t, (v, c)) in part? {
            match out.get_mut(&t) {
                Some((existing, count)) => {
                    if *existing != v {
                        return Err(Error::invariant(format!(
                            "eigenvalue is not constant on type {t}: {existing:?} and {v:?}"
                        )));
                    }
                    *count += c;
                }
                None => {
                    out.insert(t, (v, c));
                }
            }
        }
    }
    Ok(out)
}

pub fn brute_spectrum(spec: &CayleySpec, budget: &Budget) -> Result<SpectrumReport> {
    brute_spectrum_with(spec, budget, Strategy::default())
}

/// `Σ_{s∈S} ζ^{v·s}` for every `v ∈ Z_p^n`, exact, grouped by the type of `v`.
/// Within-type constancy and multiplicities are checked, not assumed.
pub fn brute_spectrum_with(spec: &CayleySpec, budget: &Budget, strategy: Strategy) -> Result<SpectrumReport> {
    let (p, n) = (spec.p(), spec.n());
    if !is_prime(p as u64) {
        return Err(Error::param(format!(
            "exact oracle needs prime p, got {p}; use brute_spectrum_numeric"
        )));
    }
    let total = check_work(spec, budget)?;
    let gens: Vec<DenseGroupVector> = generator_vectors(spec, budget)?
        .iter()
        .map(|d| DenseGroupVector::from_digits(p, d))
        .collect::<Result<_>>()?;

    let parts = par::map_chunks(strategy, total, |range| -> Result<Partial<BigInt>> {
        let mut local: Partial<BigInt> = BTreeMap::new();
        let mut counts = vec![0u64; p as usize];
        for idx in range {
            let v = DenseGroupVector::from_index(p, n, idx)?;
            counts.iter_mut().for_each(|c| *c = 0);
            for s in &gens {
                counts[v.dot(s, p) as usize] += 1;
            }
            let value = CyclotomicInteger::from_residue_counts(p, &counts)?;
            let t = v.type_vector(p);
            let lambda = value.as_integer().cloned().ok_or_else(|| {
                Error::invariant(format!("eigenvalue {value} at vertex {idx} of type {t} is not an integer"))
            })?;
            match local.get_mut(&t) {
                Some((existing, count)) => {
                    if *existing != lambda {
                        return Err(Error::invariant(format!(
                            "eigenvalue is not constant on type {t}: {existing} and {lambda}"
                        )));
                    }
                    *count += 1;
                }
                None => {
                    local.insert(t, (lambda, 1));
                }
            }
        }
        Ok(local)
    });
    let mut grouped = merge(parts)?;

    let mut entries = Vec::new();
    for t in enumerate_types(p, n, false)? {
        let (lambda, count) = grouped
            .remove(&t)
            .ok_or_else(|| Error::invariant(format!("no vertex of type {t} visited")))?;
        let multiplicity = multinomial_of(t.counts());
        if multiplicity != BigUint::from(count) {
            return Err(Error::invariant(format!(
                "type {t}: saw {count} vertices, expected {multiplicity}"
            )));
        }
        entries.push(SpectrumEntry {
            type_vector: t,
            eigenvalue: lambda,
            multiplicity,
        });
    }
    SpectrumReport::from_entries(spec.clone(), entries)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericEntry {
    #[serde(rename = "type")]
    pub type_vector: TypeVector,
    pub eigenvalue: f64,
    pub multiplicity: u64,
}

/// Floating-point spectrum for any modulus. Not a certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericSpectrumReport {
    pub p: u32,
    pub n: u32,
    pub generators: Vec<TypeVector>,
    pub entries: Vec<NumericEntry>,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub tolerance: f64,
    pub label: &'static str,
}

/// Complex-valued character sums at any `p ≥ 2`. Eigenvalues must be real
/// and constant on types up to [`NUMERIC_TOLERANCE`].
pub fn brute_spectrum_numeric(spec: &CayleySpec, budget: &Budget, strategy: Strategy) -> Result<NumericSpectrumReport> {
    let (p, n) = (spec.p(), spec.n());
    let total = check_work(spec, budget)?;
    let gens: Vec<DenseGroupVector> = generator_vectors(spec, budget)?
        .iter()
        .map(|d| DenseGroupVector::from_digits(p, d))
        .collect::<Result<_>>()?;
    let roots: Vec<(f64, f64)> = (0..p)
        .map(|a| {
            let angle = 2.0 * std::f64::consts::PI * a as f64 / p as f64;
            (angle.cos(), angle.sin())
        })
        .collect();

    let parts = par::map_chunks(strategy, total, |range| -> Result<Vec<(TypeVector, f64)>> {
        let mut out = Vec::new();
        let mut counts = vec![0u64; p as usize];
        for idx in range {
            let v = DenseGroupVector::from_index(p, n, idx)?;
            counts.iter_mut().for_each(|c| *c = 0);
            for s in &gens {
                counts[v.dot(s, p) as usize] += 1;
            }
            let (re, im) = counts.iter().zip(&roots).fold((0.0, 0.0), |(re, im), (&c, &(x, y))| {
                (re + c as f64 * x, im + c as f64 * y)
            });
            if im.abs() > NUMERIC_TOLERANCE {
                return Err(Error::invariant(format!("eigenvalue at vertex {idx} has imaginary part {im}")));
            }
            out.push((v.type_vector(p), re));
        }
        Ok(out)
    });

    let mut grouped: BTreeMap<TypeVector, (f64, u64)> = BTreeMap::new();
    for part in parts {
        for (t, value) in part? {
            let slot = grouped.entry(t.clone()).or_insert((value, 0));
            if (slot.0 - value).abs() > NUMERIC_TOLERANCE {
                return Err(Error::invariant(format!(
                    "eigenvalue is not constant on type {t}: {} and {value}",
                    slot.0
                )));
            }
            slot.1 += 1;
        }
    }
    let mut entries = Vec::new();
    for t in enumerate_types(p, n, false)? {
        let (eigenvalue, multiplicity) = grouped.remove(&t).expect("every type occurs");
        entries.push(NumericEntry {
            type_vector: t,
            eigenvalue,
            multiplicity,
        });
    }
    let lambda_max = entries.iter().map(|e| e.eigenvalue).fold(f64::NEG_INFINITY, f64::max);
    let lambda_min = entries.iter().map(|e| e.eigenvalue).fold(f64::INFINITY, f64::min);
    Ok(NumericSpectrumReport {
        p,
        n,
        generators: spec.generators().iter().cloned().collect(),
        entries,
        lambda_max,
        lambda_min,
        tolerance: NUMERIC_TOLERANCE,
        label: "numeric, not certified",
    })
}

/// Unordered edges `{u, u+s}` as vertex indices with `u < u+s`, each once.
pub struct EdgeIter {
    p: u32,
    n: u32,
    total: u64,
    gens: Vec<Vec<u32>>,
    u: u64,
    u_digits: Vec<u32>,
    g: usize,
}

impl Iterator for EdgeIter {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        while self.u < self.total {
            while self.g < self.gens.len() {
                let s = &self.gens[self.g];
                self.g += 1;
                let w: Vec<u32> = self.u_digits.iter().zip(s).map(|(a, b)| (a + b) % self.p).collect();
                let w = digits_index(self.p, &w);
                if self.u < w {
                    return Some((self.u, w));
                }
            }
            self.u += 1;
            self.g = 0;
            self.u_digits = index_digits(self.p, self.n, self.u);
        }
        None
    }
}

pub fn adjacency_pairs(spec: &CayleySpec, budget: &Budget) -> Result<EdgeIter> {
    let total = check_work(spec, budget)?;
    let (p, n) = (spec.p(), spec.n());
    Ok(EdgeIter {
        p,
        n,
        total,
        gens: generator_vectors(spec, budget)?,
        u: 0,
        u_digits: index_digits(p, n, 0),
        g: 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeViolation {
    pub u: Vec<u32>,
    pub w: Vec<u32>,
    pub image_u: Vec<u32>,
    pub image_w: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomomorphismVerdict {
    pub edges_checked: u64,
    pub violation: Option<EdgeViolation>,
}

impl HomomorphismVerdict {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `map` sends every edge of `src` to an edge of `dst`.
pub fn check_homomorphism<F>(map: F, src: &CayleySpec, dst: &CayleySpec, budget: &Budget) -> Result<HomomorphismVerdict>
where
    F: Fn(&[u32]) -> Vec<u32>,
{
    if src.p() != dst.p() {
        return Err(Error::param("source and target graphs use different moduli"));
    }
    let p = src.p();
    let mut edges_checked = 0;
    for (u, w) in adjacency_pairs(src, budget)? {
        let u = index_digits(p, src.n(), u);
        let w = index_digits(p, src.n(), w);
        let (fu, fw) = (map(&u), map(&w));
        edges_checked += 1;
        let adjacent = fu.len() == dst.n() as usize
            && fw.len() == dst.n() as usize
            && fu.iter().chain(&fw).all(|&x| x < p)
            && {
                let diff: Vec<u32> = fu.iter().zip(&fw).map(|(a, b)| (a + p - b) % p).collect();
                dst.is_generator_type(&type_of(&diff, p)?)
            };
        if !adjacent {
            return Ok(HomomorphismVerdict {
                edges_checked,
                violation: Some(EdgeViolation {
                    u,
                    w,
                    image_u: fu,
                    image_w: fw,
                }),
            });
        }
    }
    Ok(HomomorphismVerdict {
        edges_checked,
        violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::spectrum::full_spectrum;

    fn tv(c: &[u32]) -> TypeVector {
        TypeVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn dense_vectors_round_trip() {
        let d = [1u32, 2, 0, 2, 1];
        let v = DenseGroupVector::from_digits(3, &d).unwrap();
        assert_eq!(v.digits(3), d);
        assert_eq!(v.type_vector(3), tv(&[1, 2, 2]));
        assert_eq!(v.type_vector(3), type_of(&d, 3).unwrap());
        let w = DenseGroupVector::from_digits(3, &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(v.dot(&w, 3), 0);
        assert_eq!(digits_index(3, &index_digits(3, 5, 200)), 200);
        assert!(DenseGroupVector::from_digits(3, &[3]).is_err());
    }

    #[test]
    fn brute_matches_engine_on_small_graphs() {
        let budget = Budget::default();
        for spec in [
            families::orthogonality(3, 1).unwrap(),
            families::orthogonality(3, 2).unwrap(),
            families::hamming(8, 2).unwrap(),
            families::g5(2).unwrap(),
        ] {
            assert_eq!(
                brute_spectrum(&spec, &budget).unwrap(),
                full_spectrum(&spec, &budget).unwrap()
            );
        }
    }

    #[test]
    fn bipartite_spectrum_is_symmetric() {
        let spec = CayleySpec::new(2, 4, [tv(&[3, 1]), tv(&[1, 3])]).unwrap();
        let r = brute_spectrum(&spec, &Budget::default()).unwrap();
        let mut values: Vec<BigInt> = r.entries().iter().map(|e| e.eigenvalue.clone()).collect();
        let mut negated: Vec<BigInt> = values.iter().map(|v| -v).collect();
        values.sort();
        negated.sort();
        assert_eq!(values, negated);
    }

    #[test]
    fn edge_counts() {
        let budget = Budget::default();
        let edges: Vec<_> = adjacency_pairs(&families::hamming(2, 2).unwrap(), &budget)
            .unwrap()
            .collect();
        assert_eq!(edges, vec![(0, 3), (1, 2)]);
        assert_eq!(adjacency_pairs(&families::hamming(3, 2).unwrap(), &budget).unwrap().count(), 12);
        assert_eq!(adjacency_pairs(&families::orthogonality(3, 1).unwrap(), &budget).unwrap().count(), 81);
    }

    #[test]
    fn budget_is_enforced() {
        let spec = families::orthogonality(3, 3).unwrap();
        let err = brute_spectrum(&spec, &Budget::default()).unwrap_err();
        assert!(matches!(err, Error::Budget { budget: "max_oracle_work", .. }));
    }

    #[test]
    fn numeric_oracle_for_composite_modulus() {
        let spec = CayleySpec::new(4, 4, [tv(&[1, 1, 1, 1])]).unwrap();
        let r = brute_spectrum_numeric(&spec, &Budget::default(), Strategy::Sequential).unwrap();
        assert_eq!(r.label, "numeric, not certified");
        assert!((r.lambda_max - 24.0).abs() < NUMERIC_TOLERANCE);
        let total: u64 = r.entries.iter().map(|e| e.multiplicity).sum();
        assert_eq!(total, 256);
        assert!(brute_spectrum(&spec, &Budget::default()).is_err());
    }

    #[test]
    fn homomorphisms() {
        let budget = Budget::default();
        let h4 = families::hamming(4, 2).unwrap();
        assert!(check_homomorphism(|x| x.to_vec(), &h4, &h4, &budget).unwrap().passed());
        // Dropping a coordinate is not a homomorphism of H(4,2) into H(3,2).
        let h3 = families::hamming(3, 2).unwrap();
        let v = check_homomorphism(|x| x[..3].to_vec(), &h4, &h3, &budget).unwrap();
        assert!(!v.passed());
    }
}
