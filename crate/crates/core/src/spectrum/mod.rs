//! Exact spectra of Cayley graphs `Cay(Z_p^n, S)` where `S` is a union of
//! type classes.
//!
//! The eigenvalue at character `v` is `Σ_{s∈S} ζ_p^{v·s}`, which depends only
//! on the type of `v`. [`full_spectrum`] evaluates it once per ordered type
//! with the convolution in [`engine`], and weights it by the type's size.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::combinatorics::multinomial_of;
use crate::cyclotomic::{is_prime, CyclotomicInteger};
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::types::{enumerate_types, ordered_type_count, TypeVector};

pub mod claims;
pub mod closed_form;
pub mod engine;
pub mod enumerator;

pub use engine::residue_distribution;

/// `Cay(Z_p^n, ∪ type classes)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleySpec {
    p: u32,
    n: u32,
    generators: BTreeSet<TypeVector>,
}

impl CayleySpec {
    /// Validates that every generator lives in `Z_p^n`, none is the zero
    /// type, and the union is closed under negation. `p` need not be prime
    /// here; exact spectra require it, the numeric oracle does not.
    pub fn new(p: u32, n: u32, generators: impl IntoIterator<Item = TypeVector>) -> Result<Self> {
        if p < 2 {
            return Err(Error::param(format!("p must be >= 2, got {p}")));
        }
        let generators: BTreeSet<TypeVector> = generators.into_iter().collect();
        for g in &generators {
            if g.p() != p || g.n() != n {
                return Err(Error::param(format!(
                    "generator type {g} is not a {p}-partition of {n}"
                )));
            }
            if g.is_zero() {
                return Err(Error::param(format!(
                    "generator type {g} is the zero vector"
                )));
            }
        }
        for g in &generators {
            let neg = g.negated();
            if !generators.contains(&neg) {
                return Err(Error::param(format!(
                    "generator set is not closed under negation: {g} present, {neg} missing"
                )));
            }
        }
        Ok(Self { p, n, generators })
    }

    /// Like [`CayleySpec::new`], adding the negation of every generator.
    pub fn symmetrized(p: u32, n: u32, generators: impl IntoIterator<Item = TypeVector>) -> Result<Self> {
        let mut all: BTreeSet<TypeVector> = BTreeSet::new();
        for g in generators {
            all.insert(g.negated());
            all.insert(g);
        }
        Self::new(p, n, all)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &BTreeSet<TypeVector> {
        &self.generators
    }

    pub fn is_generator_type(&self, t: &TypeVector) -> bool {
        self.generators.contains(t)
    }

    /// `|S| = Σ_g multinomial(n; g)`.
    pub fn degree(&self) -> BigUint {
        self.generators.iter().map(|g| multinomial_of(g.counts())).sum()
    }

    /// True when the generators are exactly the balanced type of `Z_3^{3l}`,
    /// i.e. the graph is the orthogonality graph `O_{3l,3}`.
    pub fn is_ternary_orthogonality_graph(&self) -> bool {
        self.p == 3
            && self.n.is_multiple_of(3)
            && self.generators.len() == 1
            && self.generators.iter().next() == TypeVector::balanced(3, self.n).ok().as_ref()
    }

    fn require_prime(&self) -> Result<()> {
        if !is_prime(self.p as u64) {
            return Err(Error::param(format!(
                "exact spectra need prime p, got {} (use the numeric oracle)",
                self.p
            )));
        }
        Ok(())
    }
}

/// `Σ_{s of type gen_type} ζ_p^{v·s}` for `v` of type `v_type`.
pub fn character_sum_by_type(v_type: &TypeVector, gen_type: &TypeVector) -> Result<CyclotomicInteger> {
    let counts = residue_distribution(v_type, gen_type)?;
    CyclotomicInteger::from_residue_counts(v_type.p(), &counts)
}

/// Eigenvalue of `spec` at any character of type `v_type`.
pub fn eigenvalue_of_type(spec: &CayleySpec, v_type: &TypeVector) -> Result<BigInt> {
    spec.require_prime()?;
    if v_type.p() != spec.p || v_type.n() != spec.n {
        return Err(Error::param(format!(
            "type {v_type} does not index a character of Z_{}^{}",
            spec.p, spec.n
        )));
    }
    let p = spec.p as usize;
    let mut totals = vec![BigUint::zero(); p];
    for g in &spec.generators {
        for (acc, c) in totals.iter_mut().zip(residue_distribution(v_type, g)?) {
            *acc += c;
        }
    }
    let value = CyclotomicInteger::from_residue_counts(spec.p, &totals)?;
    value.as_integer().cloned().ok_or_else(|| {
        Error::invariant(format!(
            "eigenvalue at type {v_type} is {value}, not a rational integer \
             (generator set not negation-closed?)"
        ))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub type_vector: TypeVector,
    pub eigenvalue: BigInt,
    pub multiplicity: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extreme {
    pub value: BigInt,
    pub witness: TypeVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    spec: CayleySpec,
    entries: Vec<SpectrumEntry>,
    lambda_max: Extreme,
    lambda_min: Extreme,
}

impl SpectrumReport {
    /// Assemble a report from one entry per ordered type. Witnesses are the
    /// first type (in the given order) attaining each extreme.
    pub fn from_entries(spec: CayleySpec, entries: Vec<SpectrumEntry>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::invariant("spectrum with no entries"))?;
        let mut lambda_max = Extreme {
            value: first.eigenvalue.clone(),
            witness: first.type_vector.clone(),
        };
        let mut lambda_min = lambda_max.clone();
        for e in &entries[1..] {
            if e.eigenvalue > lambda_max.value {
                lambda_max = Extreme {
                    value: e.eigenvalue.clone(),
                    witness: e.type_vector.clone(),
                };
            }
            if e.eigenvalue < lambda_min.value {
                lambda_min = Extreme {
                    value: e.eigenvalue.clone(),
                    witness: e.type_vector.clone(),
                };
            }
        }
        Ok(Self {
            spec,
            entries,
            lambda_max,
            lambda_min,
        })
    }

    pub fn spec(&self) -> &CayleySpec {
        &self.spec
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn eigenvalue(&self, t: &TypeVector) -> Option<&BigInt> {
        self.entries
            .iter()
            .find(|e| &e.type_vector == t)
            .map(|e| &e.eigenvalue)
    }

    pub fn lambda_max(&self) -> &Extreme {
        &self.lambda_max
    }

    pub fn lambda_min(&self) -> &Extreme {
        &self.lambda_min
    }

    /// Distinct eigenvalues, descending.
    pub fn distinct_eigenvalues(&self) -> Vec<BigInt> {
        let set: BTreeSet<&BigInt> = self.entries.iter().map(|e| &e.eigenvalue).collect();
        set.into_iter().rev().cloned().collect()
    }

    /// `Σ m = p^n`, `Σ mλ = 0` and `Σ mλ² = p^n · |S|`.
    pub fn verify_trace_identities(&self) -> Result<()> {
        let order = BigUint::from(self.spec.p).pow(self.spec.n);
        let mut mult_sum = BigUint::zero();
        let mut first = BigInt::zero();
        let mut second = BigInt::zero();
        for e in &self.entries {
            let m = BigInt::from(e.multiplicity.clone());
            mult_sum += &e.multiplicity;
            first += &m * &e.eigenvalue;
            second += &m * &e.eigenvalue * &e.eigenvalue;
        }
        if mult_sum != order {
            return Err(Error::invariant(format!(
                "multiplicities sum to {mult_sum}, expected {order}"
            )));
        }
        if !first.is_zero() {
            return Err(Error::invariant(format!("trace Σ mλ = {first}, expected 0")));
        }
        let expected = BigInt::from(order * self.spec.degree());
        if second != expected {
            return Err(Error::invariant(format!(
                "Σ mλ² = {second}, expected p^n·|S| = {expected}"
            )));
        }
        Ok(())
    }

    pub fn to_document(&self) -> SpectrumDocument {
        SpectrumDocument {
            p: self.spec.p,
            n: self.spec.n,
            generators: self.spec.generators.iter().cloned().collect(),
            entries: self
                .entries
                .iter()
                .map(|e| EntryDocument {
                    type_vector: e.type_vector.clone(),
                    eigenvalue: e.eigenvalue.clone(),
                    multiplicity: e.multiplicity.clone(),
                })
                .collect(),
            lambda_max: self.lambda_max.value.clone(),
            lambda_min: self.lambda_min.value.clone(),
            bound: spectral_lower_bound(self).ok(),
        }
    }

    pub fn from_document(doc: &SpectrumDocument) -> Result<Self> {
        let spec = CayleySpec::new(doc.p, doc.n, doc.generators.iter().cloned())?;
        let entries = doc
            .entries
            .iter()
            .map(|e| SpectrumEntry {
                type_vector: e.type_vector.clone(),
                eigenvalue: e.eigenvalue.clone(),
                multiplicity: e.multiplicity.clone(),
            })
            .collect();
        let report = Self::from_entries(spec, entries)?;
        if report.lambda_max.value != doc.lambda_max || report.lambda_min.value != doc.lambda_min {
            return Err(Error::param("document extremes disagree with its entries"));
        }
        Ok(report)
    }
}

/// JSON shape of a [`SpectrumReport`]. Big integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub p: u32,
    pub n: u32,
    pub generators: Vec<TypeVector>,
    pub entries: Vec<EntryDocument>,
    #[serde(with = "crate::decimal")]
    pub lambda_max: BigInt,
    #[serde(with = "crate::decimal")]
    pub lambda_min: BigInt,
    #[serde(with = "crate::decimal::option")]
    pub bound: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDocument {
    #[serde(rename = "type")]
    pub type_vector: TypeVector,
    #[serde(with = "crate::decimal")]
    pub eigenvalue: BigInt,
    #[serde(with = "crate::decimal")]
    pub multiplicity: BigUint,
}

pub fn full_spectrum(spec: &CayleySpec, budget: &Budget) -> Result<SpectrumReport> {
    full_spectrum_with(spec, budget, Strategy::default())
}

/// One entry per ordered type of `Z_p^n`. For `O_{3l,3}` every entry is also
/// checked against the closed form in [`closed_form::orthogonality_eigenvalue`].
pub fn full_spectrum_with(spec: &CayleySpec, budget: &Budget, strategy: Strategy) -> Result<SpectrumReport> {
    spec.require_prime()?;
    budget.check_types(ordered_type_count(spec.p, spec.n))?;
    let types: Vec<TypeVector> = enumerate_types(spec.p, spec.n, false)?.collect();
    let results = par::map_collect(strategy, &types, |t| -> Result<SpectrumEntry> {
        Ok(SpectrumEntry {
            eigenvalue: eigenvalue_of_type(spec, t)?,
            multiplicity: multinomial_of(t.counts()),
            type_vector: t.clone(),
        })
    });
    let entries = results.into_iter().collect::<Result<Vec<_>>>()?;

    if spec.is_ternary_orthogonality_graph() {
        let l = spec.n / 3;
        let table = closed_form::BalancedPower::new(l, closed_form::Sign::Minus);
        for e in &entries {
            let closed = closed_form::orthogonality_eigenvalue_from(&table, &e.type_vector)?;
            if closed != e.eigenvalue {
                return Err(Error::invariant(format!(
                    "O_{{{},3}} at type {}: engine gives {}, closed form gives {}",
                    spec.n, e.type_vector, e.eigenvalue, closed
                )));
            }
        }
    }
    SpectrumReport::from_entries(spec.clone(), entries)
}

/// `⌈1 - λ_max/λ_min⌉`, exact.
pub fn spectral_lower_bound(report: &SpectrumReport) -> Result<BigInt> {
    let max = &report.lambda_max.value;
    let min = &report.lambda_min.value;
    if !min.is_negative() {
        return Err(Error::Domain(format!(
            "λ_min = {min} is not negative; the graph has no edges"
        )));
    }
    // 1 - max/min = 1 + max/|min|, and |min| > 0.
    Ok(BigInt::one() + max.div_ceil(&min.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn tv(c: &[u32]) -> TypeVector {
        TypeVector::new(c.to_vec()).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn spec_validation() {
        assert!(CayleySpec::new(3, 3, [tv(&[3, 0, 0])]).is_err());
        assert!(CayleySpec::new(3, 3, [tv(&[1, 2, 0])]).is_err());
        assert!(CayleySpec::new(3, 3, [tv(&[1, 2, 0]), tv(&[1, 0, 2])]).is_ok());
        assert!(CayleySpec::new(3, 4, [tv(&[1, 1, 1])]).is_err());
        let s = CayleySpec::symmetrized(3, 3, [tv(&[1, 2, 0])]).unwrap();
        assert_eq!(s.generators().len(), 2);
    }

    #[test]
    fn character_sums() {
        let c = character_sum_by_type(&tv(&[4, 2]), &tv(&[4, 2])).unwrap();
        assert_eq!(c.as_integer(), Some(&int(-1)));
        let c = character_sum_by_type(&tv(&[1, 1, 1]), &tv(&[1, 1, 1])).unwrap();
        assert_eq!(c.as_integer(), Some(&int(-3)));
        let c = character_sum_by_type(&tv(&[6, 0, 0]), &tv(&[1, 2, 3])).unwrap();
        assert_eq!(c.as_integer(), Some(&int(60)));
        // A single non-self-negating class has a non-real sum.
        let c = character_sum_by_type(&tv(&[2, 1, 0]), &tv(&[0, 3, 0])).unwrap();
        assert_eq!(c, CyclotomicInteger::zeta_pow(3, 1).unwrap());
    }

    #[test]
    fn orthogonality_graph_eigenvalues() {
        let o63 = families::orthogonality(3, 2).unwrap();
        assert_eq!(eigenvalue_of_type(&o63, &tv(&[1, 1, 4])).unwrap(), int(-18));
        assert_eq!(eigenvalue_of_type(&o63, &tv(&[0, 0, 6])).unwrap(), int(90));
        let o93 = families::orthogonality(3, 3).unwrap();
        assert_eq!(eigenvalue_of_type(&o93, &tv(&[2, 2, 5])).unwrap(), int(60));
    }

    #[test]
    fn small_full_spectra() {
        let budget = Budget::default();
        let o33 = full_spectrum(&families::orthogonality(3, 1).unwrap(), &budget).unwrap();
        assert_eq!(o33.eigenvalue(&tv(&[0, 0, 3])), Some(&int(6)));
        assert_eq!(o33.eigenvalue(&tv(&[1, 1, 1])), Some(&int(-3)));
        assert_eq!(o33.eigenvalue(&tv(&[0, 1, 2])), Some(&int(0)));
        o33.verify_trace_identities().unwrap();

        let h62 = full_spectrum(&families::hamming(6, 2).unwrap(), &budget).unwrap();
        assert_eq!(h62.distinct_eigenvalues(), vec![int(15), int(5), int(-1), int(-3)]);
        assert_eq!(h62.lambda_min().value, int(-3));

        let c4 = full_spectrum(&families::hamming(2, 1).unwrap(), &budget).unwrap();
        assert_eq!(c4.distinct_eigenvalues(), vec![int(2), int(0), int(-2)]);
    }

    #[test]
    fn budget_is_enforced() {
        let budget = Budget {
            max_types: 10,
            ..Budget::default()
        };
        let err = full_spectrum(&families::orthogonality(3, 2).unwrap(), &budget).unwrap_err();
        assert!(matches!(err, Error::Budget { budget: "max_types", required: 28, .. }));
    }

    #[test]
    fn composite_modulus_rejected() {
        let spec = CayleySpec::new(4, 4, [tv(&[1, 1, 1, 1])]).unwrap();
        assert!(full_spectrum(&spec, &Budget::default()).is_err());
    }

    #[test]
    fn lower_bounds() {
        let budget = Budget::default();
        let r = full_spectrum(&families::orthogonality(3, 2).unwrap(), &budget).unwrap();
        assert_eq!(spectral_lower_bound(&r).unwrap(), int(6));
        let r = full_spectrum(&families::hamming(12, 2).unwrap(), &budget).unwrap();
        assert_eq!((r.lambda_max().value.clone(), r.lambda_min().value.clone()), (int(66), int(-6)));
        assert_eq!(spectral_lower_bound(&r).unwrap(), int(12));
        let r = full_spectrum(&families::hamming(7, 2).unwrap(), &budget).unwrap();
        assert_eq!(spectral_lower_bound(&r).unwrap(), int(8));
    }

    #[test]
    fn lower_bound_rounds_up() {
        // 1 - 5/(-2) = 3.5 -> 4
        let spec = families::hamming(2, 1).unwrap();
        let report = SpectrumReport::from_entries(
            spec,
            vec![
                SpectrumEntry { type_vector: tv(&[2, 0]), eigenvalue: int(5), multiplicity: BigUint::one() },
                SpectrumEntry { type_vector: tv(&[0, 2]), eigenvalue: int(-2), multiplicity: BigUint::one() },
            ],
        )
        .unwrap();
        assert_eq!(spectral_lower_bound(&report).unwrap(), int(4));
    }

    #[test]
    fn edgeless_graph_has_no_bound() {
        let spec = families::hamming(3, 1).unwrap();
        let report = SpectrumReport::from_entries(
            spec,
            vec![SpectrumEntry { type_vector: tv(&[3, 0]), eigenvalue: int(0), multiplicity: BigUint::one() }],
        )
        .unwrap();
        assert!(matches!(spectral_lower_bound(&report), Err(Error::Domain(_))));
    }

    #[test]
    fn document_shape() {
        let r = full_spectrum(&families::hamming(2, 2).unwrap(), &Budget::default()).unwrap();
        let json = serde_json::to_string(&r.to_document()).unwrap();
        assert_eq!(
            json,
            r#"{"p":2,"n":2,"generators":[[0,2]],"entries":[{"type":[0,2],"eigenvalue":"1","multiplicity":"1"},{"type":[1,1],"eigenvalue":"-1","multiplicity":"2"},{"type":[2,0],"eigenvalue":"1","multiplicity":"1"}],"lambda_max":"1","lambda_min":"-1","bound":"2"}"#
        );
        let doc: SpectrumDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(SpectrumReport::from_document(&doc).unwrap(), r);
    }
}
