//! Type-indexed character sums.
//!
//! For `v` of type `t` and the class `S_g` of all vectors of type `g`, count
//! the `s ∈ S_g` with `v·s = a` for each residue `a`. Coordinates of a fixed
//! representative of `v` fall into symbol classes of sizes `t_a`. Choosing
//! `s` amounts to choosing, per class, how many of its coordinates carry each
//! symbol `b` (a composition `m_a` of `t_a`), subject to `Σ_a m_a = g`.
//! A class with symbol `a` contributes `a·Σ_b b·m_{a,b}` to the dot product
//! and `multinomial(t_a; m_a)` arrangements. The DP runs over classes with
//! state = symbols consumed so far; the largest class is fixed by the others.
//! Cost is polynomial in `n` for fixed `p`; nothing of size `p^n` is touched.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::combinatorics::multinomial_of;
use crate::error::{Error, Result};
use crate::types::{enumerate_types, TypeVector};

trait Counter: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_product(&mut self, a: &Self, b: &Self);
    fn from_big(v: &BigUint) -> Self;
    fn into_big(self) -> BigUint;
}

impl Counter for u128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        // Every partial count is bounded by |S_g|, which the caller has
        // checked to fit in 127 bits.
        *self += a * b;
    }
    fn from_big(v: &BigUint) -> Self {
        v.to_u128().expect("checked by caller")
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Counter for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn from_big(v: &BigUint) -> Self {
        v.clone()
    }
    fn into_big(self) -> BigUint {
        self
    }
}

struct Composition<C> {
    parts: Vec<u32>,
    arrangements: C,
    /// `Σ_b b·m_b mod p`.
    weight: u32,
    /// Offset of this composition in the dense state index.
    offset: usize,
}

/// Number of `s` of type `gen_type` with `v·s ≡ a (mod p)`, indexed by `a`,
/// for any `v` of type `v_type`.
pub fn residue_distribution(v_type: &TypeVector, gen_type: &TypeVector) -> Result<Vec<BigUint>> {
    if v_type.p() != gen_type.p() || v_type.n() != gen_type.n() {
        return Err(Error::param(format!(
            "type {v_type} and generator type {gen_type} live in different groups"
        )));
    }
    let class_size_bound = multinomial_of(gen_type.counts());
    if class_size_bound.bits() <= 127 {
        Ok(distribution::<u128>(v_type, gen_type))
    } else {
        Ok(distribution::<BigUint>(v_type, gen_type))
    }
}

fn distribution<C: Counter>(v_type: &TypeVector, gen_type: &TypeVector) -> Vec<BigUint> {
    let p = v_type.p() as usize;
    let g = gen_type.counts();

    // Dense mixed-radix index over consumed-symbol vectors c <= g.
    let mut strides = vec![1usize; p];
    for b in 1..p {
        strides[b] = strides[b - 1] * (g[b - 1] as usize + 1);
    }
    let num_states = strides[p - 1] * (g[p - 1] as usize + 1);
    let decode = |mut idx: usize, out: &mut [u32]| {
        for b in 0..p {
            let radix = g[b] as usize + 1;
            out[b] = (idx % radix) as u32;
            idx /= radix;
        }
    };

    let mut classes: Vec<(u32, u32)> = v_type
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &t)| t > 0)
        .map(|(a, &t)| (a as u32, t))
        .collect();
    classes.sort_by_key(|&(a, t)| (t, a));
    let Some((last_symbol, _)) = classes.pop() else {
        // n = 0: the empty vector pairs with itself to 0.
        let mut out = vec![<BigUint as Zero>::zero(); p];
        out[0] = BigUint::from(1u32);
        return out;
    };

    let mut table: Vec<C> = vec![C::zero(); num_states * p];
    table[0] = C::from_big(&BigUint::from(1u32));
    let mut active: Vec<usize> = vec![0];
    let mut consumed = vec![0u32; p];

    for &(symbol, size) in &classes {
        let comps: Vec<Composition<C>> = enumerate_types(p as u32, size, false)
            .expect("p >= 2")
            .filter(|m| m.counts().iter().zip(g).all(|(mb, gb)| mb <= gb))
            .map(|m| {
                let parts = m.counts().to_vec();
                let weight = parts
                    .iter()
                    .enumerate()
                    .map(|(b, &mb)| b as u64 * mb as u64)
                    .sum::<u64>()
                    % p as u64;
                let offset = parts.iter().zip(&strides).map(|(&mb, &s)| mb as usize * s).sum();
                Composition {
                    arrangements: C::from_big(&multinomial_of(&parts)),
                    parts,
                    weight: weight as u32,
                    offset,
                }
            })
            .collect();

        let mut next: Vec<C> = vec![C::zero(); num_states * p];
        let mut touched = vec![false; num_states];
        let mut next_active = Vec::new();
        for &idx in &active {
            decode(idx, &mut consumed);
            for comp in &comps {
                if consumed
                    .iter()
                    .zip(&comp.parts)
                    .zip(g)
                    .any(|((c, m), gb)| c + m > *gb)
                {
                    continue;
                }
                let target = idx + comp.offset;
                if !touched[target] {
                    touched[target] = true;
                    next_active.push(target);
                }
                let shift = (symbol as usize * comp.weight as usize) % p;
                for r in 0..p {
                    let src = &table[idx * p + r];
                    if src.is_zero() {
                        continue;
                    }
                    next[target * p + (r + shift) % p].add_product(src, &comp.arrangements);
                }
            }
        }
        table = next;
        active = next_active;
    }

    let mut out = vec![<BigUint as Zero>::zero(); p];
    let mut remaining = vec![0u32; p];
    for &idx in &active {
        decode(idx, &mut consumed);
        for b in 0..p {
            remaining[b] = g[b] - consumed[b];
        }
        let weight: u64 = remaining
            .iter()
            .enumerate()
            .map(|(b, &r)| b as u64 * r as u64)
            .sum::<u64>()
            % p as u64;
        let shift = (last_symbol as usize * weight as usize) % p;
        let arrangements = C::from_big(&multinomial_of(&remaining));
        for r in 0..p {
            let src = &table[idx * p + r];
            if src.is_zero() {
                continue;
            }
            let mut term = C::zero();
            term.add_product(src, &arrangements);
            out[(r + shift) % p] += term.into_big();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(c: &[u32]) -> TypeVector {
        TypeVector::new(c.to_vec()).unwrap()
    }

    fn nums(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    /// Direct enumeration over all of Z_p^n.
    fn brute(v_type: &TypeVector, gen: &TypeVector) -> Vec<BigUint> {
        let p = v_type.p();
        let n = v_type.n();
        let v = v_type.representative();
        let mut out = vec![0u64; p as usize];
        let total = (p as u64).pow(n);
        for idx in 0..total {
            let mut s = Vec::with_capacity(n as usize);
            let mut x = idx;
            for _ in 0..n {
                s.push((x % p as u64) as u32);
                x /= p as u64;
            }
            if crate::types::type_of(&s, p).unwrap() != *gen {
                continue;
            }
            let dot: u64 = v.iter().zip(&s).map(|(&a, &b)| a as u64 * b as u64).sum();
            out[(dot % p as u64) as usize] += 1;
        }
        nums(&out)
    }

    #[test]
    fn frozen_small_cases() {
        // Frozen from brute force: 7 even / 8 odd overlaps of weight-2 words
        // with a fixed weight-2 word in Z_2^6.
        assert_eq!(residue_distribution(&tv(&[4, 2]), &tv(&[4, 2])).unwrap(), nums(&[7, 8]));
        assert_eq!(
            residue_distribution(&tv(&[1, 1, 1]), &tv(&[1, 1, 1])).unwrap(),
            nums(&[0, 3, 3])
        );
        assert_eq!(
            residue_distribution(&tv(&[1, 1, 4]), &tv(&[2, 2, 2])).unwrap(),
            nums(&[18, 36, 36])
        );
        assert_eq!(
            residue_distribution(&tv(&[2, 2, 5]), &tv(&[3, 3, 3])).unwrap(),
            nums(&[600, 540, 540])
        );
    }

    #[test]
    fn zero_vector_sees_whole_class() {
        let d = residue_distribution(&tv(&[5, 0, 0]), &tv(&[1, 2, 2])).unwrap();
        assert_eq!(d, nums(&[30, 0, 0]));
        let d = residue_distribution(&tv(&[0, 0]), &tv(&[0, 0])).unwrap();
        assert_eq!(d, nums(&[1, 0]));
    }

    #[test]
    fn matches_enumeration_for_all_small_type_pairs() {
        for (p, n) in [(2u32, 5u32), (3, 4), (5, 3), (4, 3), (7, 2)] {
            let types: Vec<_> = enumerate_types(p, n, false).unwrap().collect();
            for v in &types {
                for g in &types {
                    assert_eq!(
                        residue_distribution(v, g).unwrap(),
                        brute(v, g),
                        "p={p} v={v} g={g}"
                    );
                }
            }
        }
    }

    #[test]
    fn wide_path_agrees_with_narrow_path() {
        let v = tv(&[3, 4, 5]);
        let g = tv(&[4, 4, 4]);
        assert_eq!(distribution::<u128>(&v, &g), distribution::<BigUint>(&v, &g));
    }

    #[test]
    fn mismatched_groups_rejected() {
        assert!(residue_distribution(&tv(&[1, 1]), &tv(&[1, 1, 0])).is_err());
        assert!(residue_distribution(&tv(&[1, 1]), &tv(&[1, 2])).is_err());
    }
}
