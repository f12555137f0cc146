//! Set families over `[n]`: BIBD verification, separation profiles, and the
//! BIBD constructions used for `H(n,2)` upper bounds.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod construct;
pub mod gf;
pub mod hadamard;

pub use construct::{paley_design, twin_prime_design};
pub use gf::GaloisField;
pub use hadamard::{hadamard_design, menon_design};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BibdParams {
    pub k: usize,
    pub lambda: usize,
    pub r: usize,
    pub b: usize,
}

/// Points `0..n` and a multiset of blocks, each a sorted set of points.
/// Blocks are kept in sorted order, so equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    n: usize,
    blocks: Vec<Vec<usize>>,
    params: Option<BibdParams>,
}

impl Design {
    pub fn new(n: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut out = Vec::new();
        for mut block in blocks {
            block.sort_unstable();
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::param(format!("block {block:?} repeats a point")));
            }
            if let Some(&x) = block.last() {
                if x >= n {
                    return Err(Error::param(format!("block {block:?} has a point outside 0..{n}")));
                }
            }
            out.push(block);
        }
        out.sort();
        Ok(Self {
            n,
            blocks: out,
            params: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn params(&self) -> Option<BibdParams> {
        self.params
    }

    /// Runs [`verify_bibd`] and records the parameters on success.
    pub fn verified(mut self) -> std::result::Result<Self, BibdFailure> {
        self.params = Some(verify_bibd(&self)?);
        Ok(self)
    }

    /// A copy without block `index`.
    pub fn without_block(&self, index: usize) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.remove(index);
        Self {
            n: self.n,
            blocks,
            params: None,
        }
    }

    /// `count[i][j]`, `i < j`: blocks containing both points.
    fn pair_counts(&self) -> Vec<Vec<usize>> {
        let mut counts = vec![vec![0usize; self.n]; self.n];
        for block in &self.blocks {
            for (a, &i) in block.iter().enumerate() {
                for &j in &block[a + 1..] {
                    counts[i][j] += 1;
                }
            }
        }
        counts
    }

    fn replication(&self) -> Vec<usize> {
        let mut r = vec![0usize; self.n];
        for block in &self.blocks {
            for &i in block {
                r[i] += 1;
            }
        }
        r
    }

    pub fn to_document(&self) -> DesignDocument {
        DesignDocument {
            n: self.n,
            blocks: self.blocks.clone(),
            params: self.params,
        }
    }

    /// Rebuilds the design; if the document claims parameters they are
    /// re-verified, never trusted.
    pub fn from_document(doc: &DesignDocument) -> Result<Self> {
        let design = Self::new(doc.n, doc.blocks.iter().cloned())?;
        match doc.params {
            None => Ok(design),
            Some(claimed) => {
                let design = design
                    .verified()
                    .map_err(|f| Error::param(format!("design file claims {claimed:?} but {f}")))?;
                if design.params != Some(claimed) {
                    return Err(Error::param(format!(
                        "design file claims {claimed:?}, verification gives {:?}",
                        design.params
                    )));
                }
                Ok(design)
            }
        }
    }
}

/// JSON form: `{n, blocks, params}` with 0-based points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignDocument {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BibdParams>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BibdFailure {
    NoBlocks,
    TooFewPoints { n: usize },
    BlockSize { block: usize, size: usize, expected: usize },
    PairCoverage { pair: (usize, usize), count: usize, expected: usize },
    Replication { point: usize, count: usize, expected: usize },
    Identity { detail: String },
}

impl fmt::Display for BibdFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoBlocks => write!(f, "family has no blocks"),
            Self::TooFewPoints { n } => write!(f, "{n} points cannot carry a pair condition"),
            Self::BlockSize { block, size, expected } => {
                write!(f, "block {block} has size {size}, expected {expected}")
            }
            Self::PairCoverage { pair, count, expected } => write!(
                f,
                "pair {{{}, {}}} lies in {count} blocks, expected {expected}",
                pair.0, pair.1
            ),
            Self::Replication { point, count, expected } => {
                write!(f, "point {point} lies in {count} blocks, expected {expected}")
            }
            Self::Identity { detail } => write!(f, "parameter identity fails: {detail}"),
        }
    }
}

/// Uniform block size `k`, pair coverage `λ` (possibly 0) and replication
/// `r`, plus `bk = nr` and `λ(n−1) = r(k−1)`.
pub fn verify_bibd(d: &Design) -> std::result::Result<BibdParams, BibdFailure> {
    if d.blocks.is_empty() {
        return Err(BibdFailure::NoBlocks);
    }
    if d.n < 2 {
        return Err(BibdFailure::TooFewPoints { n: d.n });
    }
    let k = d.blocks[0].len();
    for (i, block) in d.blocks.iter().enumerate() {
        if block.len() != k {
            return Err(BibdFailure::BlockSize {
                block: i,
                size: block.len(),
                expected: k,
            });
        }
    }
    let counts = d.pair_counts();
    let lambda = counts[0][1];
    for (i, row) in counts.iter().enumerate() {
        if let Some((j, &count)) = row.iter().enumerate().skip(i + 1).find(|&(_, &c)| c != lambda) {
            return Err(BibdFailure::PairCoverage {
                pair: (i, j),
                count,
                expected: lambda,
            });
        }
    }
    let reps = d.replication();
    let r = reps[0];
    for (point, &count) in reps.iter().enumerate() {
        if count != r {
            return Err(BibdFailure::Replication {
                point,
                count,
                expected: r,
            });
        }
    }
    let b = d.b();
    if b * k != d.n * r {
        return Err(BibdFailure::Identity {
            detail: format!("bk = {} but nr = {}", b * k, d.n * r),
        });
    }
    if lambda * (d.n - 1) != r * k.saturating_sub(1) {
        return Err(BibdFailure::Identity {
            detail: format!("λ(n−1) = {} but r(k−1) = {}", lambda * (d.n - 1), r * k.saturating_sub(1)),
        });
    }
    Ok(BibdParams { k, lambda, r, b })
}

/// For each pair `{i,j}`, the number of blocks containing exactly one of
/// them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationProfile {
    pub b: usize,
    /// Present iff every pair is separated equally often.
    pub theta: Option<usize>,
    /// The full pair map when `theta` is absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<BTreeMap<String, usize>>,
}

pub fn separation_profile(d: &Design) -> SeparationProfile {
    let reps = d.replication();
    let both = d.pair_counts();
    let mut map: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..d.n {
        for j in i + 1..d.n {
            map.insert((i, j), reps[i] + reps[j] - 2 * both[i][j]);
        }
    }
    let mut values = map.values();
    let theta = match values.next() {
        Some(&first) if values.all(|&v| v == first) => Some(first),
        _ => None,
    };
    SeparationProfile {
        b: d.b(),
        theta,
        counts: theta.is_none().then(|| {
            map.into_iter()
                .map(|((i, j), c)| (format!("{i},{j}"), c))
                .collect()
        }),
    }
}

/// `χ_q(H(n,2)) ≤ 2θ = 4(r−λ)` for a verified BIBD with
/// `4k(n−k) ≥ n(n−1)`. When `k > 1` this equals `4λ(n−k)/(k−1)`; the two
/// are checked against each other. Returns `None` when the condition fails.
pub fn design_upper_bound(d: &Design) -> Result<Option<u64>> {
    let params = d
        .params
        .ok_or_else(|| Error::param("design_upper_bound needs a verified design"))?;
    let BibdParams { k, lambda, r, b } = params;
    let n = d.n as u64;
    let (k, lambda, r) = (k as u64, lambda as u64, r as u64);
    if 4 * k * (n - k) < n * (n - 1) {
        return Ok(None);
    }
    let two_theta = 4 * (r - lambda);
    if k > 1 {
        let num = 4 * lambda * (n - k);
        if !num.is_multiple_of(k - 1) || num / (k - 1) != two_theta {
            return Err(Error::invariant(format!(
                "4λ(n−k)/(k−1) = {num}/{} disagrees with 4(r−λ) = {two_theta}",
                k - 1
            )));
        }
    }
    if two_theta < b as u64 {
        return Err(Error::invariant(format!(
            "4k(n−k) ≥ n(n−1) holds but 2θ = {two_theta} < b = {b}"
        )));
    }
    Ok(Some(two_theta))
}
