//! The Leech lattice in MOG coordinates.
//!
//! Vectors carry their true integer coefficients in the orthonormal basis
//! nu_1..nu_24 of R^24; the inner product is `-(x . y) / 8`, so every norm
//! below carries an explicit division by 8.

use std::fs;
use std::io::Write;
use std::ops::{Add, Neg, Sub};
use std::path::Path;
use std::sync::OnceLock;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::mog::{self, positions, steiner, Mask, Position, SteinerSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeechVector(pub [i32; 24]);

impl LeechVector {
    pub const ZERO: LeechVector = LeechVector([0; 24]);

    pub fn from_mask(m: Mask, value: i32) -> LeechVector {
        let mut c = [0; 24];
        for p in positions(m) {
            c[p.index()] = value;
        }
        LeechVector(c)
    }

    /// Euclidean dot product of the coordinates.
    pub fn dot(&self, o: &LeechVector) -> i64 {
        self.0.iter().zip(o.0.iter()).map(|(a, b)| *a as i64 * *b as i64).sum()
    }

    /// Sum of squared coordinates; the norm is `-sq / 8`.
    pub fn sq(&self) -> i64 {
        self.dot(self)
    }

    pub fn inner(&self, o: &LeechVector) -> Ratio<i64> {
        Ratio::new(-self.dot(o), 8)
    }

    pub fn norm(&self) -> Ratio<i64> {
        self.inner(self)
    }

    pub fn scale(&self, k: i32) -> LeechVector {
        LeechVector(self.0.map(|x| x * k))
    }
}

impl Add for LeechVector {
    type Output = LeechVector;
    fn add(self, o: LeechVector) -> LeechVector {
        let mut c = self.0;
        for i in 0..24 {
            c[i] += o.0[i];
        }
        LeechVector(c)
    }
}

impl Sub for LeechVector {
    type Output = LeechVector;
    fn sub(self, o: LeechVector) -> LeechVector {
        self + (-o)
    }
}

impl Neg for LeechVector {
    type Output = LeechVector;
    fn neg(self) -> LeechVector {
        LeechVector(self.0.map(|x| -x))
    }
}

/// The named vectors used in the root diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    /// The zero vector.
    Empty,
    /// `[P]`: -3 at P, 1 elsewhere.
    Point(Position),
    /// `[P^]`: 5 at P, 1 elsewhere.
    Hat(Position),
    /// `[L]`: 2 on the five points of a line and on the three Romans.
    Line(Mask),
    /// `[Q]`: 2 on the six points of an oval and on its two Romans.
    Oval(Mask),
}

pub fn named_vector(n: Named) -> Result<LeechVector> {
    let s = steiner();
    let v = match n {
        Named::Empty => LeechVector::ZERO,
        Named::Point(p) => {
            let mut c = [1; 24];
            c[p.index()] = -3;
            LeechVector(c)
        }
        Named::Hat(p) => {
            let mut c = [1; 24];
            c[p.index()] = 5;
            LeechVector(c)
        }
        Named::Line(l) => {
            if !s.is_line(l) {
                return Err(Error::InvalidPayload(format!("{} is not a line", mog::mask_label(l))));
            }
            LeechVector::from_mask(l | mog::romans_mask(), 2)
        }
        Named::Oval(q) => {
            let romans = s.oval_romans(q)?;
            let m = romans.iter().fold(q, |m, r| m | r.position().bit());
            LeechVector::from_mask(m, 2)
        }
    };
    debug_assert!(contains(&v));
    Ok(v)
}

/// Parses a `(tag, payload)` pair: tags `empty`, `P`, `Phat`, `L`, `Q`.
pub fn parse_named(tag: &str, payload: &str) -> Result<Named> {
    let s = steiner();
    Ok(match tag {
        "empty" => Named::Empty,
        "P" => Named::Point(mog::parse_point(payload)?),
        "Phat" => Named::Hat(mog::parse_point(payload)?),
        "L" => Named::Line(s.parse_line(payload)?),
        "Q" => Named::Oval(mog::parse_point_set(payload)?),
        _ => return Err(Error::UnknownLabel(format!("tag {tag}"))),
    })
}

/// Lattice membership by the Golay congruences: all coordinates share the
/// parity m; the positions congruent to 2 + m (mod 4) form a codeword; and the
/// coordinate sum is 4m (mod 8).
pub fn contains(v: &LeechVector) -> bool {
    contains_with(steiner(), v)
}

pub fn contains_with(s: &SteinerSystem, v: &LeechVector) -> bool {
    let m = v.0[0].rem_euclid(2);
    if v.0.iter().any(|x| x.rem_euclid(2) != m) {
        return false;
    }
    let target = 2 + m;
    let set: Mask = (0..24).filter(|&i| v.0[i].rem_euclid(4) == target).fold(0, |a, i| a | 1 << i);
    let sum: i32 = v.0.iter().sum();
    s.is_codeword(set) && sum.rem_euclid(8) == 4 * m
}

/// Upper-triangular integer basis of the lattice spanned by the generators
/// `nu_Omega - 4 nu_inf` and `2 nu_K`, used as an independent membership oracle.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    rows: Vec<[i64; 24]>,
}

impl LatticeBasis {
    pub fn from_generators() -> LatticeBasis {
        let s = steiner();
        let inf = mog::parse_point("i").unwrap();
        let mut gens: Vec<[i64; 24]> = Vec::with_capacity(760);
        let mut g = [1i64; 24];
        g[inf.index()] = -3;
        gens.push(g);
        for &o in s.octads() {
            let mut v = [0i64; 24];
            for p in positions(o) {
                v[p.index()] = 2;
            }
            gens.push(v);
        }
        LatticeBasis::hermite(&gens)
    }

    fn hermite(gens: &[[i64; 24]]) -> LatticeBasis {
        let mut piv: Vec<Option<[i64; 24]>> = vec![None; 24];
        for g in gens {
            let mut v = *g;
            for c in 0..24 {
                if v[c] == 0 {
                    continue;
                }
                match piv[c] {
                    None => {
                        if v[c] < 0 {
                            v = v.map(|x| -x);
                        }
                        piv[c] = Some(v);
                        break;
                    }
                    Some(r) => {
                        // replace (r, v) by (gcd row, eliminated row)
                        let (gd, a, b) = ext_gcd(r[c], v[c]);
                        let (p, q) = (r[c] / gd, v[c] / gd);
                        let mut nr = [0i64; 24];
                        let mut nv = [0i64; 24];
                        for k in 0..24 {
                            nr[k] = a * r[k] + b * v[k];
                            nv[k] = p * v[k] - q * r[k];
                        }
                        if nr[c] < 0 {
                            nr = nr.map(|x| -x);
                        }
                        piv[c] = Some(nr);
                        v = nv;
                    }
                }
            }
            reduce_above(&mut piv);
        }
        LatticeBasis { rows: piv.into_iter().map(|r| r.expect("generators span R^24")).collect() }
    }

    pub fn rows(&self) -> &[[i64; 24]] {
        &self.rows
    }

    pub fn det(&self) -> i64 {
        self.rows.iter().enumerate().map(|(i, r)| r[i]).product()
    }

    /// Coefficients of `v` in the basis, if it is a lattice member.
    pub fn solve(&self, v: &LeechVector) -> Option<[i64; 24]> {
        let mut w: [i64; 24] = v.0.map(|x| x as i64);
        let mut coef = [0i64; 24];
        for c in 0..24 {
            let r = &self.rows[c];
            if w[c] % r[c] != 0 {
                return None;
            }
            let k = w[c] / r[c];
            coef[c] = k;
            for j in c..24 {
                w[j] -= k * r[j];
            }
        }
        Some(coef)
    }

    pub fn contains(&self, v: &LeechVector) -> bool {
        self.solve(v).is_some()
    }
}

fn reduce_above(piv: &mut [Option<[i64; 24]>]) {
    for c in 0..24 {
        let Some(r) = piv[c] else { continue };
        for i in 0..c {
            if let Some(mut row) = piv[i] {
                let q = row[c].div_euclid(r[c]);
                if q != 0 {
                    for k in 0..24 {
                        row[k] -= q * r[k];
                    }
                    piv[i] = Some(row);
                }
            }
        }
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

/// The three coordinate shapes of the minimal vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    /// (+-2^8, 0^16) on an octad.
    Octad,
    /// (-+3, +-1^23).
    Odd,
    /// (+-4^2, 0^22).
    Pair,
}

#[derive(Clone, Debug)]
pub struct MinimalShell {
    vectors: Vec<LeechVector>,
}

impl MinimalShell {
    /// Enumerates the norm -4 vectors from the three shapes, in canonical order.
    pub fn enumerate() -> MinimalShell {
        let s = steiner();
        let mut v = Vec::with_capacity(196_560);
        for &o in s.octads() {
            let pos: Vec<usize> = positions(o).map(|p| p.index()).collect();
            for signs in 0u32..256 {
                if signs.count_ones() % 2 == 1 {
                    continue;
                }
                let mut c = [0; 24];
                for (k, &i) in pos.iter().enumerate() {
                    c[i] = if signs >> k & 1 == 1 { -2 } else { 2 };
                }
                v.push(LeechVector(c));
            }
        }
        for p in 0..24 {
            for &w in s.codewords() {
                let mut c = [1; 24];
                c[p] = -3;
                for q in positions(w) {
                    c[q.index()] = -c[q.index()];
                }
                v.push(LeechVector(c));
            }
        }
        for i in 0..24 {
            for j in i + 1..24 {
                for (a, b) in [(4, 4), (4, -4), (-4, 4), (-4, -4)] {
                    let mut c = [0; 24];
                    c[i] = a;
                    c[j] = b;
                    v.push(LeechVector(c));
                }
            }
        }
        v.par_sort_unstable();
        MinimalShell { vectors: v }
    }

    pub fn vectors(&self) -> &[LeechVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn shape(v: &LeechVector) -> Shape {
        if v.0.iter().all(|x| x % 2 != 0) {
            Shape::Odd
        } else if v.0.iter().any(|x| x.abs() == 4) {
            Shape::Pair
        } else {
            Shape::Octad
        }
    }

    pub fn contains(&self, v: &LeechVector) -> bool {
        self.vectors.binary_search(v).is_ok()
    }

    const MAGIC: &'static [u8; 8] = b"K3LSHELL";
    const VERSION: u32 = 1;

    /// Writes the shell as `magic, version, count, count*24 i8, sha256(prefix)`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(16 + self.vectors.len() * 24 + 32);
        buf.extend_from_slice(Self::MAGIC);
        buf.extend_from_slice(&Self::VERSION.to_le_bytes());
        buf.extend_from_slice(&(self.vectors.len() as u32).to_le_bytes());
        for v in &self.vectors {
            buf.extend(v.0.iter().map(|x| *x as i8 as u8));
        }
        let digest = Sha256::digest(&buf);
        buf.extend_from_slice(&digest);
        let mut f = fs::File::create(path)?;
        f.write_all(&buf)?;
        Ok(())
    }

    /// Loads a cache written by `save`, checking version, checksum, order and membership.
    pub fn load(path: &Path) -> Result<MinimalShell> {
        let buf = fs::read(path)?;
        let bad = |m: &str| Error::Fixture(format!("shell cache {}: {m}", path.display()));
        if buf.len() < 48 || &buf[..8] != Self::MAGIC {
            return Err(bad("bad header"));
        }
        let (body, digest) = buf.split_at(buf.len() - 32);
        if Sha256::digest(body).as_slice() != digest {
            return Err(bad("checksum mismatch"));
        }
        let version = u32::from_le_bytes(body[8..12].try_into().unwrap());
        let count = u32::from_le_bytes(body[12..16].try_into().unwrap()) as usize;
        if version != Self::VERSION {
            return Err(bad(&format!("version {version}")));
        }
        let data = &body[16..];
        if data.len() != count * 24 {
            return Err(bad("length mismatch"));
        }
        let vectors: Vec<LeechVector> = data
            .chunks_exact(24)
            .map(|c| {
                let mut a = [0; 24];
                for (i, b) in c.iter().enumerate() {
                    a[i] = *b as i8 as i32;
                }
                LeechVector(a)
            })
            .collect();
        let ok = vectors.len() == 196_560
            && vectors.windows(2).all(|w| w[0] < w[1])
            && vectors.par_iter().all(|v| v.sq() == 32 && contains(v));
        if !ok {
            return Err(bad("contents are not the minimal shell"));
        }
        Ok(MinimalShell { vectors })
    }
}

static SHELL: OnceLock<MinimalShell> = OnceLock::new();

/// The shared minimal shell, built once.
pub fn minimal_shell() -> &'static MinimalShell {
    SHELL.get_or_init(MinimalShell::enumerate)
}

/// Installs a shell loaded from a cache file; returns false if one is already built.
pub fn install_minimal_shell(shell: MinimalShell) -> bool {
    SHELL.set(shell).is_ok()
}

/// Visits every norm -6 vector (16,773,120 of them) in parallel. Shapes:
/// (+-2^12) on a dodecad, (-+3^3, +-1^21), (+-4, +-2^8) with the 4 off the
/// octad, and (+-5, +-1^23).
pub fn for_each_shell6<F>(f: F)
where
    F: Fn(&LeechVector) + Sync + Send,
{
    let s = steiner();
    let dodecads: Vec<Mask> = s.codewords().iter().copied().filter(|w| w.count_ones() == 12).collect();
    dodecads.par_iter().for_each(|&d| {
        let pos: Vec<usize> = positions(d).map(|p| p.index()).collect();
        for signs in 0u32..4096 {
            if signs.count_ones() % 2 == 1 {
                continue;
            }
            let mut c = [0; 24];
            for (k, &i) in pos.iter().enumerate() {
                c[i] = if signs >> k & 1 == 1 { -2 } else { 2 };
            }
            f(&LeechVector(c));
        }
    });
    let triples = mog::subsets(mog::ALL, 3);
    triples.par_iter().for_each(|&t| {
        for &w in s.codewords() {
            let mut c = [1; 24];
            for p in positions(t) {
                c[p.index()] = -3;
            }
            for q in positions(w) {
                c[q.index()] = -c[q.index()];
            }
            f(&LeechVector(c));
        }
    });
    s.octads().par_iter().for_each(|&o| {
        let pos: Vec<usize> = positions(o).map(|p| p.index()).collect();
        for off in positions(mog::ALL & !o) {
            for four in [4, -4] {
                for signs in 0u32..256 {
                    if signs.count_ones() % 2 == 0 {
                        continue;
                    }
                    let mut c = [0; 24];
                    c[off.index()] = four;
                    for (k, &i) in pos.iter().enumerate() {
                        c[i] = if signs >> k & 1 == 1 { -2 } else { 2 };
                    }
                    f(&LeechVector(c));
                }
            }
        }
    });
    (0..24usize).into_par_iter().for_each(|p| {
        for &w in s.codewords() {
            let mut c = [1; 24];
            c[p] = 5;
            for q in positions(w) {
                c[q.index()] = -c[q.index()];
            }
            f(&LeechVector(c));
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_norms() {
        let p = mog::parse_point("(0,0)").unwrap();
        let s = steiner();
        assert_eq!(named_vector(Named::Empty).unwrap().norm(), Ratio::from_integer(0));
        assert_eq!(named_vector(Named::Point(p)).unwrap().norm(), Ratio::from_integer(-4));
        assert_eq!(named_vector(Named::Hat(p)).unwrap().norm(), Ratio::from_integer(-6));
        let l = s.parse_line("y=x").unwrap();
        assert_eq!(named_vector(Named::Line(l)).unwrap().norm(), Ratio::from_integer(-4));
    }

    #[test]
    fn q0_has_romans_two_and_three() {
        let q0 = mog::parse_point_set("Q0").unwrap();
        let v = named_vector(Named::Oval(q0)).unwrap();
        let support: Vec<&str> = (0..24).filter(|&i| v.0[i] != 0).map(|i| Position(i as u8).sylvester()).collect();
        assert_eq!(support.len(), 8);
        assert!(support.contains(&"II") && support.contains(&"III") && !support.contains(&"I"));
    }

    #[test]
    fn non_oval_payload_is_rejected() {
        let l = steiner().parse_line("y=x").unwrap();
        let six = l | mog::parse_point("(0,1)").unwrap().bit();
        assert!(named_vector(Named::Oval(six)).is_err());
        assert!(named_vector(Named::Line(six)).is_err());
    }

    #[test]
    fn generator_equals_point_vector() {
        let inf = mog::parse_point("i").unwrap();
        let mut g = [1; 24];
        g[inf.index()] = -3;
        assert_eq!(LeechVector(g), named_vector(Named::Point(inf)).unwrap());
        assert_eq!(LeechVector(g).norm(), Ratio::from_integer(-4));
    }

    #[test]
    fn basis_determinant() {
        let b = LatticeBasis::from_generators();
        assert_eq!(b.det().abs(), 1 << 36);
    }

    #[test]
    fn unit_vector_is_not_a_member() {
        let mut c = [0; 24];
        c[0] = 1;
        assert!(!contains(&LeechVector(c)));
        let o = steiner().octads()[0];
        let mut v = LeechVector::from_mask(o, 2);
        v.0[mog::positions(!o & mog::ALL).next().unwrap().index()] = 1;
        assert!(!contains(&v));
    }
}
