//! Finite fields GF(p^k) for p in {2, 3}, small enough for log tables.
//!
//! An element is stored as the integer whose base-p digits are its
//! coefficients in the polynomial basis 1, x, x^2, ...

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

type Cache<K, V> = OnceLock<Mutex<HashMap<K, &'static V>>>;

static FIELDS: Cache<(u32, u32), Gf> = OnceLock::new();
static EMBEDDINGS: Cache<(u32, Vec<u32>, u32), Embedding> = OnceLock::new();

#[derive(Clone, Debug)]
pub struct Gf {
    pub p: u32,
    pub k: u32,
    pub size: u32,
    /// monic modulus, low coefficient first, length k + 1
    pub modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Gf {
    fn eq(&self, o: &Gf) -> bool {
        self.p == o.p && self.modulus == o.modulus
    }
}

impl Gf {
    /// The field with a primitive modulus, chosen as the least one in
    /// digit order so the construction is deterministic.
    pub fn new(p: u32, k: u32) -> Result<Gf> {
        if !(p == 2 || p == 3) || k == 0 || p.pow(k) > 1 << 16 {
            return Err(Error::InvalidPayload(format!("GF({p}^{k}) is not supported")));
        }
        let size = p.pow(k);
        for tail in 0..size {
            let mut modulus = digits(tail, p, k);
            modulus.push(1);
            if modulus[0] == 0 {
                continue;
            }
            if let Some((exp, log)) = tables(p, k, &modulus) {
                return Ok(Gf { p, k, size, modulus, exp, log });
            }
        }
        Err(Error::Construction(format!("no primitive polynomial of degree {k} over GF({p})")))
    }

    pub fn binary(k: u32) -> Result<Gf> {
        Gf::new(2, k)
    }

    /// A shared copy of `Gf::new(p, k)`; the tables are built once per process.
    pub fn cached(p: u32, k: u32) -> Result<&'static Gf> {
        let mut m = FIELDS.get_or_init(Default::default).lock().expect("field cache");
        if let Some(f) = m.get(&(p, k)) {
            return Ok(f);
        }
        let f: &'static Gf = Box::leak(Box::new(Gf::new(p, k)?));
        m.insert((p, k), f);
        Ok(f)
    }

    /// GF(p^2k) with the embedding of `self`, both cached.
    pub fn quadratic_extension(&self) -> Result<(&'static Gf, &'static Embedding)> {
        let big = Gf::cached(self.p, 2 * self.k)?;
        let key = (self.p, self.modulus.clone(), 2 * self.k);
        let mut m = EMBEDDINGS.get_or_init(Default::default).lock().expect("embedding cache");
        if let Some(e) = m.get(&key) {
            return Ok((big, e));
        }
        let e: &'static Embedding = Box::leak(Box::new(self.embedding(big)?));
        m.insert(key, e);
        Ok((big, e))
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The image of an integer under Z -> GF(p).
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % 3 + b % 3) % 3) * place;
            a /= 3;
            b /= 3;
            place *= 3;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((3 - a % 3) % 3) * place;
            a /= 3;
            place *= 3;
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
        let n = self.size - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| {
            let n = self.size - 1;
            self.exp[((n - self.log[a as usize]) % n) as usize]
        })
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Frobenius `a -> a^p`.
    pub fn frob(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// Inverse Frobenius `a -> a^(p^(k-1))`; in characteristic 2 the square root.
    pub fn frob_inv(&self, a: u32) -> u32 {
        self.pow(a, (self.p as u64).pow(self.k - 1))
    }

    /// Absolute trace to GF(p).
    pub fn trace(&self, a: u32) -> u32 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.k {
            t = self.add(t, x);
            x = self.frob(x);
        }
        t
    }

    /// A root of `e^2 + e = c` (characteristic 2), if there is one here.
    /// The map `e -> e^2 + e` is F_2-linear with kernel {0, 1}, so this is
    /// Gaussian elimination on a k x k bit matrix.
    pub fn artin_schreier(&self, c: u32) -> Option<u32> {
        assert_eq!(self.p, 2, "Artin-Schreier roots are only used in characteristic 2");
        if self.trace(c) != 0 {
            return None;
        }
        let k = self.k as usize;
        // column j is the image of the basis vector 2^j
        let cols: Vec<u32> = (0..k).map(|j| self.add(self.mul(1 << j, 1 << j), 1 << j)).collect();
        // rows: equations for each output bit, augmented by c
        let mut rows: Vec<(u32, u32)> = (0..k).map(|i| ((0..k).fold(0, |m, j| m | ((cols[j] >> i) & 1) << j), (c >> i) & 1)).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..k {
            let Some(p) = (r..k).find(|&i| rows[i].0 >> col & 1 == 1) else { continue };
            rows.swap(r, p);
            for i in 0..k {
                if i != r && rows[i].0 >> col & 1 == 1 {
                    rows[i].0 ^= rows[r].0;
                    rows[i].1 ^= rows[r].1;
                }
            }
            pivots.push(col);
            r += 1;
        }
        if rows[r..].iter().any(|row| row.1 == 1) {
            return None;
        }
        let e = pivots.iter().enumerate().fold(0, |e, (i, &col)| e | rows[i].1 << col);
        debug_assert_eq!(self.add(self.mul(e, e), e), c);
        Some(e)
    }

    /// An embedding of `self` into `big` (which must contain it): the image
    /// of the generator is a root of our modulus in `big`, the least one.
    pub fn embedding(&self, big: &Gf) -> Result<Embedding> {
        if self.p != big.p || !big.k.is_multiple_of(self.k) {
            return Err(Error::InvalidPayload(format!("GF({}^{}) does not embed in GF({}^{})", self.p, self.k, big.p, big.k)));
        }
        let eval = |x: u32| self.modulus.iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, x), c));
        let root = (0..big.size).find(|&x| eval(x) == 0).ok_or_else(|| Error::Construction("no root of the modulus".into()))?;
        let powers: Vec<u32> = (0..self.k).map(|i| big.pow(root, i as u64)).collect();
        Ok(Embedding { p: self.p, k: self.k, powers })
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }
}

/// A field homomorphism GF(p^k) -> GF(p^m), given on the polynomial basis.
#[derive(Clone, Debug)]
pub struct Embedding {
    p: u32,
    k: u32,
    powers: Vec<u32>,
}

impl Embedding {
    pub fn apply(&self, big: &Gf, a: u32) -> u32 {
        digits(a, self.p, self.k).iter().zip(&self.powers).fold(0, |acc, (&d, &x)| {
            let mut t = 0;
            for _ in 0..d {
                t = big.add(t, x);
            }
            big.add(acc, t)
        })
    }
}

fn digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

/// Exp/log tables when `x` generates the multiplicative group mod `modulus`.
fn tables(p: u32, k: u32, modulus: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let size = p.pow(k);
    let n = size - 1;
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; size as usize];
    let mut cur = vec![0u32; k as usize];
    cur[0] = 1;
    let pack = |v: &[u32]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
    for i in 0..n {
        let a = pack(&cur);
        if i > 0 && a == 1 {
            return None;
        }
        exp[i as usize] = a;
        log[a as usize] = i;
        // multiply by x and reduce
        let top = cur[k as usize - 1];
        for j in (1..k as usize).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..k as usize {
            cur[j] = (cur[j] + (p - modulus[j] % p) * top) % p;
        }
    }
    (pack(&cur) == 1).then_some((exp, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, k) in [(2, 1), (2, 4), (3, 2), (3, 3)] {
            let f = Gf::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.frob(f.frob_inv(a)), a);
                for b in f.elements() {
                    for c in [0, 1, f.size - 1] {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn artin_schreier_matches_the_trace() {
        let f = Gf::binary(8).unwrap();
        let mut solvable = 0;
        for c in f.elements() {
            match f.artin_schreier(c) {
                Some(e) => {
                    assert_eq!(f.add(f.mul(e, e), e), c);
                    solvable += 1;
                }
                None => assert_eq!(f.trace(c), 1),
            }
        }
        assert_eq!(solvable, 128);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = Gf::binary(4).unwrap();
        let big = Gf::binary(8).unwrap();
        let e = small.embedding(&big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e.apply(&big, small.mul(a, b)), big.mul(e.apply(&big, a), e.apply(&big, b)));
                assert_eq!(e.apply(&big, small.add(a, b)), big.add(e.apply(&big, a), e.apply(&big, b)));
            }
        }
    }

    #[test]
    fn large_fields_build() {
        assert_eq!(Gf::binary(16).unwrap().size, 65536);
        assert_eq!(Gf::new(3, 8).unwrap().size, 6561);
    }
}
