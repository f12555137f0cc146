//! Named Cayley graph families.

use crate::error::{Error, Result};
use crate::spectrum::CayleySpec;
use crate::types::TypeVector;

fn tv(counts: Vec<u32>) -> Result<TypeVector> {
    TypeVector::new(counts)
}

/// `O_{pl,p} = Cay(Z_p^{pl}, balanced type)`.
pub fn orthogonality(p: u32, l: u32) -> Result<CayleySpec> {
    if l == 0 {
        return Err(Error::param("l must be >= 1"));
    }
    CayleySpec::new(p, p * l, [TypeVector::balanced(p, p * l)?])
}

/// `Cay(Z_2^n, L_r)`; `r = 2` gives the distance-2 Hamming graph `H(n,2)`.
pub fn hamming(n: u32, r: u32) -> Result<CayleySpec> {
    if r == 0 || r > n {
        return Err(Error::param(format!("weight {r} out of range 1..={n}")));
    }
    CayleySpec::new(2, n, [tv(vec![n - r, r])?])
}

/// `Cay(Z_2^n, L_{r_1} ∪ L_{r_2} ∪ …)`.
pub fn binary_weights(n: u32, weights: &[u32]) -> Result<CayleySpec> {
    let mut gens = Vec::new();
    for &r in weights {
        if r == 0 || r > n {
            return Err(Error::param(format!("weight {r} out of range 1..={n}")));
        }
        gens.push(tv(vec![n - r, r])?);
    }
    CayleySpec::new(2, n, gens)
}

/// Types obtained from `parent` by removing one coordinate carrying
/// each symbol: the connection set of the check-bit subgraph.
pub fn check_bit_children(parent: &TypeVector) -> Result<Vec<TypeVector>> {
    if parent.n() == 0 {
        return Err(Error::param("cannot shorten a length-0 type"));
    }
    let mut out = Vec::new();
    for i in 0..parent.p() as usize {
        if parent.count(i) == 0 {
            continue;
        }
        let mut c = parent.counts().to_vec();
        c[i] -= 1;
        out.push(tv(c)?);
    }
    Ok(out)
}

/// `Cay(Z_p^{n−1}, ∪ check_bit_children(T))` for each generator type `T`
/// of `parent`.
pub fn check_bit_subgraph(parent: &CayleySpec) -> Result<CayleySpec> {
    let mut gens = Vec::new();
    for g in parent.generators() {
        for c in check_bit_children(g)? {
            if !c.is_zero() {
                gens.push(c);
            }
        }
    }
    CayleySpec::symmetrized(parent.p(), parent.n() - 1, gens)
}

/// `G_1 = Cay(Z_2^{4t−1}, (2t, 2t−1) ∪ (2t−1, 2t))`.
pub fn g1(t: u32) -> Result<CayleySpec> {
    if t == 0 {
        return Err(Error::param("t must be >= 1"));
    }
    binary_weights(4 * t - 1, &[2 * t - 1, 2 * t])
}

/// `G_2 = Cay(Z_2^{4t−2}, (2t−1, 2t−1) ∪ (2t−2, 2t))`.
pub fn g2(t: u32) -> Result<CayleySpec> {
    if t == 0 {
        return Err(Error::param("t must be >= 1"));
    }
    binary_weights(4 * t - 2, &[2 * t - 1, 2 * t])
}

/// `G_3 = Cay(Z_3^{3l−1}, (l−1,l,l) ∪ (l,l−1,l) ∪ (l,l,l−1))`.
pub fn g3(l: u32) -> Result<CayleySpec> {
    g4(3, l)
}

/// `G_4 = Cay(Z_p^{lp−1}, (l−1,l,…,l) ∪ … ∪ (l,…,l,l−1))`.
pub fn g4(p: u32, l: u32) -> Result<CayleySpec> {
    check_bit_subgraph(&orthogonality(p, l)?)
}

/// `G_5 = Cay(Z_3^{3l−1}, (l−1, l, l))`.
pub fn g5(l: u32) -> Result<CayleySpec> {
    if l == 0 {
        return Err(Error::param("l must be >= 1"));
    }
    CayleySpec::new(3, 3 * l - 1, [tv(vec![l - 1, l, l])?])
}

/// `G_6 = Cay(Z_3^{3l−2}, (l−2,l,l) ∪ (l−1,l−1,l) ∪ (l−1,l,l−1))`.
pub fn g6(l: u32) -> Result<CayleySpec> {
    if l < 2 {
        return Err(Error::param("l must be >= 2"));
    }
    check_bit_subgraph(&g5(l)?)
}

/// `Cay(Z_2^{4t−1}, (2t−1, 2t))`.
pub fn feng(t: u32) -> Result<CayleySpec> {
    if t == 0 {
        return Err(Error::param("t must be >= 1"));
    }
    hamming(4 * t - 1, 2 * t)
}

/// Append `−Σ x_i` so that the result has zero coordinate sum mod `p`.
pub fn check_bit_embed(x: &[u32], p: u32) -> Vec<u32> {
    let s = x.iter().map(|&v| v as u64).sum::<u64>() % p as u64;
    let mut out = x.to_vec();
    out.push(((p as u64 - s) % p as u64) as u32);
    out
}

/// Append a zero coordinate.
pub fn zero_pad(x: &[u32]) -> Vec<u32> {
    let mut out = x.to_vec();
    out.push(0);
    out
}

/// Drop the last coordinate.
pub fn project(x: &[u32]) -> Vec<u32> {
    x[..x.len().saturating_sub(1)].to_vec()
}
