//! ±1 matrices: Sylvester and Kronecker-power constructions, and the
//! designs read off from them.

use super::Design;
use crate::error::{Error, Result};

pub type SignMatrix = Vec<Vec<i8>>;

pub fn kronecker(a: &SignMatrix, b: &SignMatrix) -> SignMatrix {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for row_a in a {
        for row_b in b {
            out.push(row_a.iter().flat_map(|&x| row_b.iter().map(move |&y| x * y)).collect());
        }
    }
    out
}

/// Sylvester matrix of order `2^k` by repeated doubling.
pub fn sylvester(k: u32) -> SignMatrix {
    let h2: SignMatrix = vec![vec![1, 1], vec![1, -1]];
    let mut h: SignMatrix = vec![vec![1]];
    for _ in 0..k {
        h = kronecker(&h, &h2);
    }
    h
}

/// `H Hᵀ = N I`.
pub fn is_hadamard(h: &SignMatrix) -> bool {
    let n = h.len();
    h.iter().all(|r| r.len() == n)
        && (0..n).all(|i| {
            (0..n).all(|j| {
                let dot: i64 = h[i].iter().zip(&h[j]).map(|(&a, &b)| (a * b) as i64).sum();
                dot == if i == j { n as i64 } else { 0 }
            })
        })
}

/// Multiply rows and columns by signs so that the first row and column are
/// all `+1`.
pub fn normalize(h: &SignMatrix) -> SignMatrix {
    let mut out = h.clone();
    for row in out.iter_mut() {
        if row[0] < 0 {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    let first = out[0].clone();
    for row in out.iter_mut() {
        for (x, &s) in row.iter_mut().zip(&first) {
            *x *= s;
        }
    }
    out
}

fn verified(d: Design, name: &str) -> Result<Design> {
    d.verified()
        .map_err(|f| Error::invariant(format!("{name} construction is not a BIBD: {f}")))
}

/// From the normalized Sylvester matrix of order `N = 2^{t+2}`: points are
/// columns `1..N`, and row `i ≥ 1` gives the block of columns where it is
/// `+1`. A `(2^{t+2}−1, 2^{t+1}−1, 2^t−1)` design.
pub fn hadamard_design(t: u32) -> Result<Design> {
    if t < 1 {
        return Err(Error::param("hadamard designs need t >= 1"));
    }
    if t > 12 {
        return Err(Error::param(format!("t = {t} is beyond the supported order 2^14")));
    }
    let h = normalize(&sylvester(t + 2));
    if t <= 6 && !is_hadamard(&h) {
        return Err(Error::invariant("Sylvester matrix is not Hadamard"));
    }
    let n = h.len();
    let blocks = h[1..]
        .iter()
        .map(|row| (1..n).filter(|&j| row[j] == 1).map(|j| j - 1).collect::<Vec<_>>());
    let d = verified(Design::new(n - 1, blocks)?, "Hadamard")?;
    let p = d.params().expect("verified");
    let (k, lambda) = ((1usize << (t + 1)) - 1, (1usize << t) - 1);
    if (p.k, p.lambda) != (k, lambda) {
        return Err(Error::invariant(format!("Hadamard design at t={t} verified as {p:?}")));
    }
    Ok(d)
}

/// `J − 2I` of order 4: a regular Hadamard matrix with row sums 2.
pub fn menon_base() -> SignMatrix {
    (0..4)
        .map(|i| (0..4).map(|j| if i == j { -1 } else { 1 }).collect())
        .collect()
}

/// The `a`-th Kronecker power of [`menon_base`]: regular Hadamard of order
/// `4^a = 4s²` with `s = 2^{a−1}`. Block `i` is the set of columns where
/// row `i` is `−1`, giving a `(4s², 2s²−s, s²−s)` design.
pub fn menon_design(a: u32) -> Result<Design> {
    if a < 1 {
        return Err(Error::param("menon designs need a >= 1"));
    }
    if a > 6 {
        return Err(Error::param(format!("a = {a} is beyond the supported order 4^6")));
    }
    let base = menon_base();
    let mut h = base.clone();
    for _ in 1..a {
        h = kronecker(&h, &base);
    }
    let n = h.len();
    let s = 1usize << (a - 1);
    if a <= 3 && !is_hadamard(&h) {
        return Err(Error::invariant("Kronecker power is not Hadamard"));
    }
    if let Some(i) = h.iter().position(|r| r.iter().map(|&x| x as i64).sum::<i64>() != 2 * s as i64) {
        return Err(Error::invariant(format!("row {i} does not sum to 2s")));
    }
    let blocks = h
        .iter()
        .map(|row| (0..n).filter(|&j| row[j] == -1).collect::<Vec<_>>());
    let d = verified(Design::new(n, blocks)?, "Menon")?;
    let p = d.params().expect("verified");
    if (p.k, p.lambda) != (2 * s * s - s, s * s - s) {
        return Err(Error::invariant(format!("Menon design at a={a} verified as {p:?}")));
    }
    Ok(d)
}
