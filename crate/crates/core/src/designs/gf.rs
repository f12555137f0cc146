//! Finite fields `GF(p^m)` as polynomials over `Z_p` modulo a monic
//! irreducible, with log/antilog tables for multiplication.

use crate::cyclotomic::is_prime;
use crate::error::{Error, Result};

/// `q = p^m` with `p` prime, if it is one.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        m += 1;
    }
    (x == 1 && is_prime(p)).then_some((p as u32, m))
}

/// Elements are integers `0..q` encoding `Σ c_i x^i` as `Σ c_i p^i`.
#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u32,
    m: u32,
    q: u32,
    /// `modulus[i]` is the coefficient of `x^i`, `i = 0..=m`; monic.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn poly_of(p: u32, m: u32, mut a: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let c = a % p;
            a /= p;
            c
        })
        .collect()
}

fn poly_rem(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    // `den` is monic of degree den.len() - 1.
    let mut r = num.to_vec();
    let d = den.len() - 1;
    while r.len() > d {
        let lead = *r.last().expect("non-empty");
        let shift = r.len() - 1 - d;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mulmod(p: u32, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(p, &prod, modulus)
}

fn monic(p: u32, degree: u32, lower: u32) -> Vec<u32> {
    let mut f = poly_of(p, degree, lower);
    f.push(1);
    f
}

/// No monic factor of degree `1..=m/2`, by trial division.
pub fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let m = f.len() as u32 - 1;
    for d in 1..=m / 2 {
        for lower in 0..p.pow(d) {
            if poly_rem(p, f, &monic(p, d, lower)).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible of degree `m` over `Z_p`, ordering candidates
/// `x^m + Σ c_i x^i` by the integer `Σ c_i p^i`.
pub fn first_irreducible(p: u32, m: u32) -> Vec<u32> {
    (0..p.pow(m))
        .map(|lower| monic(p, m, lower))
        .find(|f| is_irreducible(p, f))
        .expect("irreducible polynomials exist in every degree")
}

fn prime_factors(mut x: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            out.push(d);
            while x.is_multiple_of(d) {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

impl GaloisField {
    pub const MAX_ORDER: u64 = 1 << 20;

    pub fn new(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::param(format!("{q} is not a prime power")))?;
        if q > Self::MAX_ORDER {
            return Err(Error::param(format!("GF({q}) exceeds the supported order {}", Self::MAX_ORDER)));
        }
        let q = q as u32;
        let modulus = first_irreducible(p, m);
        if !is_irreducible(p, &modulus) {
            return Err(Error::invariant(format!("modulus {modulus:?} is reducible")));
        }
        let mut field = Self {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables()?;
        Ok(field)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mulmod(
            self.p,
            &poly_of(self.p, self.m, a),
            &poly_of(self.p, self.m, b),
            &self.modulus,
        );
        prod.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Find a primitive element and tabulate its powers.
    fn build_tables(&mut self) -> Result<()> {
        let order = self.q - 1;
        let factors = prime_factors(order);
        let g = (1..self.q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, (order / r) as u64) != 1))
            .ok_or_else(|| Error::invariant(format!("GF({}) has no primitive element", self.q)))?;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; self.q as usize];
        let mut x = 1;
        for i in 0..order {
            if log[x as usize] != u32::MAX {
                return Err(Error::invariant(format!("element {g} has order {i} < {order}")));
            }
            exp.push(x);
            log[x as usize] = i;
            x = self.slow_mul(x, g);
        }
        if x != 1 {
            return Err(Error::invariant(format!("g^{order} = {x}, expected 1")));
        }
        self.exp = exp;
        self.log = log;
        Ok(())
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.exp.get(1).copied().unwrap_or(1)
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn add(&self, mut a: u32, mut b: u32) -> u32 {
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.m {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, mut a: u32) -> u32 {
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.m {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let k = (self.log[a as usize] as u128 * e as u128) % (self.q as u128 - 1);
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::param("zero has no inverse"));
        }
        let k = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Ok(self.exp[k as usize])
    }

    /// Quadratic character via `a^{(q−1)/2}`: `1`, `−1`, or `0` at zero.
    /// Requires odd `q`.
    pub fn quadratic_character(&self, a: u32) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::param("quadratic character needs odd q"));
        }
        if a == 0 {
            return Ok(0);
        }
        match self.pow(a, (self.q as u64 - 1) / 2) {
            1 => Ok(1),
            x if x == self.neg(1) => Ok(-1),
            x => Err(Error::invariant(format!("a^((q-1)/2) = {x} is neither 1 nor -1"))),
        }
    }

    pub fn nonzero_squares(&self) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for a in 1..self.q {
            if self.quadratic_character(a)? == 1 {
                out.push(a);
            }
        }
        Ok(out)
    }
}
