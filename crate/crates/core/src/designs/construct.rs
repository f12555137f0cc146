use std::collections::BTreeSet;

use super::gf::{prime_power, GaloisField};
use super::Design;
use crate::error::{Error, Result};

fn verified(d: Design, name: &str) -> Result<Design> {
    d.verified()
        .map_err(|f| Error::invariant(format!("{name} construction is not a BIBD: {f}")))
}

/// Translates of the nonzero squares of `GF(q)`, `q ≡ 3 (mod 4)`:
/// a `(q, (q−1)/2, (q−3)/4)` design.
pub fn paley_design(q: u64) -> Result<Design> {
    if q % 4 != 3 || prime_power(q).is_none() {
        return Err(Error::param(format!("Paley designs need a prime power q ≡ 3 (mod 4), got {q}")));
    }
    let f = GaloisField::new(q)?;
    let squares = f.nonzero_squares()?;
    let blocks = f
        .elements()
        .map(|x| squares.iter().map(|&s| f.add(s, x) as usize).collect::<Vec<_>>());
    let d = verified(Design::new(q as usize, blocks)?, "Paley")?;
    let p = d.params().expect("verified");
    if (p.k as u64, p.lambda as u64) != ((q - 1) / 2, (q - 3) / 4) {
        return Err(Error::invariant(format!("Paley({q}) verified as {p:?}")));
    }
    Ok(d)
}

/// Translates of `{(x,y) : x,y ≠ 0, χ(x)χ(y) = 1} ∪ {(x,0)}` in
/// `GF(q) × GF(q+2)`: a `(q²+2q, (q²+2q−1)/2, (q²+2q−3)/4)` design.
/// Point `(x, y)` is numbered `x·(q+2) + y`.
pub fn twin_prime_design(q: u64) -> Result<Design> {
    if q.is_multiple_of(2) || prime_power(q).is_none() || prime_power(q + 2).is_none() {
        return Err(Error::param(format!(
            "twin prime power designs need q and q+2 both odd prime powers, got q={q}"
        )));
    }
    let f1 = GaloisField::new(q)?;
    let f2 = GaloisField::new(q + 2)?;
    let w = q as usize + 2;
    let mut base: BTreeSet<(u32, u32)> = BTreeSet::new();
    for x in f1.elements() {
        base.insert((x, 0));
        if x == 0 {
            continue;
        }
        for y in 1..f2.order() {
            if f1.quadratic_character(x)? * f2.quadratic_character(y)? == 1 {
                base.insert((x, y));
            }
        }
    }
    let mut blocks = Vec::new();
    for a in f1.elements() {
        for b in f2.elements() {
            blocks.push(
                base.iter()
                    .map(|&(x, y)| f1.add(x, a) as usize * w + f2.add(y, b) as usize)
                    .collect::<Vec<_>>(),
            );
        }
    }
    let v = q * (q + 2);
    let d = verified(Design::new(v as usize, blocks)?, "twin prime power")?;
    let p = d.params().expect("verified");
    if (p.k as u64, p.lambda as u64) != ((v - 1) / 2, (v - 3) / 4) {
        return Err(Error::invariant(format!("twin prime power design at q={q} verified as {p:?}")));
    }
    Ok(d)
}
