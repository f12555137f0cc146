//! Types of vectors over `Z_p`: ordered non-negative `p`-partitions of `n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symbol counts `(t_0, ..., t_{p-1})` of a vector in `Z_p^n`.
///
/// Stored ordered; [`TypeVector::canonical`] sorts ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct TypeVector {
    counts: Vec<u32>,
}

impl TypeVector {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::param(format!(
                "a type needs at least 2 entries (p >= 2), got {}",
                counts.len()
            )));
        }
        Ok(Self { counts })
    }

    /// Type of the zero vector, `(n, 0, ..., 0)`.
    pub fn zero(p: u32, n: u32) -> Self {
        let mut counts = vec![0; p as usize];
        counts[0] = n;
        Self { counts }
    }

    /// The balanced type `(n/p, ..., n/p)`.
    pub fn balanced(p: u32, n: u32) -> Result<Self> {
        if p < 2 || !n.is_multiple_of(p) {
            return Err(Error::param(format!("no balanced type for p={p}, n={n}")));
        }
        Ok(Self {
            counts: vec![n / p; p as usize],
        })
    }

    pub fn p(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn n(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, symbol: usize) -> u32 {
        self.counts[symbol]
    }

    pub fn is_zero(&self) -> bool {
        self.counts[1..].iter().all(|&c| c == 0)
    }

    pub fn canonical(&self) -> Self {
        let mut counts = self.counts.clone();
        counts.sort_unstable();
        Self { counts }
    }

    pub fn is_canonical(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] <= w[1])
    }

    /// Type of `-v` when `v` has this type: `(t_0, t_{p-1}, ..., t_1)`.
    pub fn negated(&self) -> Self {
        let mut counts = Vec::with_capacity(self.counts.len());
        counts.push(self.counts[0]);
        counts.extend(self.counts[1..].iter().rev());
        Self { counts }
    }

    /// A fixed representative vector: `t_0` zeros, then `t_1` ones, and so on.
    pub fn representative(&self) -> Vec<u32> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(symbol, &c)| std::iter::repeat_n(symbol as u32, c as usize))
            .collect()
    }

    /// `Σ_i i·t_i mod p`, the coordinate sum of any vector of this type.
    pub fn weighted_sum_mod_p(&self) -> u32 {
        let p = self.p() as u64;
        let s: u64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(i, &c)| i as u64 * c as u64)
            .sum();
        (s % p) as u32
    }

    pub(crate) fn from_counts_unchecked(counts: Vec<u32>) -> Self {
        debug_assert!(counts.len() >= 2);
        Self { counts }
    }
}

impl TryFrom<Vec<u32>> for TypeVector {
    type Error = Error;

    fn try_from(counts: Vec<u32>) -> Result<Self> {
        Self::new(counts)
    }
}

impl From<TypeVector> for Vec<u32> {
    fn from(t: TypeVector) -> Self {
        t.counts
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Number of ordered types, `binom(n+p-1, p-1)`, saturating at `u128::MAX`.
pub fn ordered_type_count(p: u32, n: u32) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..p as u128 {
        // binom(n+i, i) = binom(n+i-1, i-1) * (n+i) / i, exact at each step
        match acc.checked_mul(n as u128 + i) {
            Some(v) => acc = v / i,
            None => return u128::MAX,
        }
    }
    acc
}

/// Iterator over ordered (or canonical) `p`-partitions of `n` in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct TypeIter {
    n: u32,
    canonical: bool,
    current: Option<Vec<u32>>,
}

impl Iterator for TypeIter {
    type Item = TypeVector;

    fn next(&mut self) -> Option<TypeVector> {
        let cur = self.current.take()?;
        self.current = successor(&cur, self.n, self.canonical);
        Some(TypeVector::from_counts_unchecked(cur))
    }
}

fn first(p: usize, n: u32, canonical: bool, floor: u32) -> Option<Vec<u32>> {
    // Lexicographically smallest tail of length p summing to n, with every
    // entry >= floor in canonical mode (so the tail stays non-decreasing).
    let floor = if canonical { floor } else { 0 };
    if (floor as u64) * (p as u64) > n as u64 {
        return None;
    }
    let mut v = vec![floor; p];
    v[p - 1] = n - floor * (p as u32 - 1);
    Some(v)
}

fn successor(cur: &[u32], n: u32, canonical: bool) -> Option<Vec<u32>> {
    let p = cur.len();
    // Increment position i (< p-1), reset the tail i+1.. to its smallest form.
    for i in (0..p - 1).rev() {
        let prefix_sum: u32 = cur[..i].iter().sum();
        let candidate = cur[i] + 1;
        let remaining = match n.checked_sub(prefix_sum + candidate) {
            Some(r) => r,
            None => continue,
        };
        let tail_len = p - 1 - i;
        if let Some(tail) = first(tail_len, remaining, canonical, candidate) {
            let mut next = cur[..i].to_vec();
            next.push(candidate);
            next.extend(tail);
            return Some(next);
        }
    }
    None
}

/// Every ordered non-negative `p`-partition of `n` exactly once; with
/// `canonical`, only the non-decreasing ones.
pub fn enumerate_types(p: u32, n: u32, canonical: bool) -> Result<TypeIter> {
    if p < 2 {
        return Err(Error::param(format!("p must be >= 2, got {p}")));
    }
    Ok(TypeIter {
        n,
        canonical,
        current: first(p as usize, n, canonical, 0),
    })
}

/// Symbol counts of `v` over `Z_p`.
pub fn type_of(v: &[u32], p: u32) -> Result<TypeVector> {
    if p < 2 {
        return Err(Error::param(format!("p must be >= 2, got {p}")));
    }
    let mut counts = vec![0u32; p as usize];
    for (j, &x) in v.iter().enumerate() {
        if x >= p {
            return Err(Error::param(format!(
                "entry {x} at coordinate {j} is outside Z_{p}"
            )));
        }
        counts[x as usize] += 1;
    }
    Ok(TypeVector { counts })
}
