//! The even unimodular lattice II_{1,25} = U + Leech, Leech roots, Dynkin
//! recognition and orthogonal projection.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::leech::{self, LeechVector};
use crate::linalg::{self, IMat};

pub type Q = Ratio<i64>;

/// `m f + n g + lambda` with f^2 = g^2 = 0 and f.g = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LorentzVector {
    pub m: i64,
    pub n: i64,
    pub lambda: LeechVector,
}

impl LorentzVector {
    pub fn new(m: i64, n: i64, lambda: LeechVector) -> LorentzVector {
        LorentzVector { m, n, lambda }
    }

    /// Eight times the pairing; exact even off the lattice.
    pub fn pair8(&self, o: &LorentzVector) -> i64 {
        8 * (self.m * o.n + self.n * o.m) - self.lambda.dot(&o.lambda)
    }

    pub fn pair(&self, o: &LorentzVector) -> i64 {
        let p = self.pair8(o);
        assert!(p % 8 == 0, "pairing of non-lattice vectors");
        p / 8
    }

    pub fn norm(&self) -> i64 {
        self.pair(self)
    }

    pub fn class(&self) -> Class {
        let mut c = [Q::zero(); 26];
        c[0] = Q::from_integer(self.m);
        c[1] = Q::from_integer(self.n);
        for i in 0..24 {
            c[2 + i] = Q::from_integer(self.lambda.0[i] as i64);
        }
        Class(c)
    }
}

/// The Leech root `(-1 - <l,l>/2, 1, l)` of norm -2.
pub fn leech_root(lambda: LeechVector) -> Result<LorentzVector> {
    if !leech::contains(&lambda) {
        return Err(Error::InvalidPayload("not a Leech lattice vector".into()));
    }
    // <l,l> = -sq/8, so m = -1 + sq/16
    let sq = lambda.sq();
    Ok(LorentzVector::new(-1 + sq / 16, 1, lambda))
}

/// A rational class in II_{1,25} (x) Q, stored by its 26 ambient coordinates
/// (m, n, lambda_1..lambda_24).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Class(pub [Q; 26]);

impl Class {
    pub fn zero() -> Class {
        Class([Q::zero(); 26])
    }

    pub fn pair(&self, o: &Class) -> Q {
        let c = &self.0;
        let d = &o.0;
        let mut dot = Q::zero();
        for i in 2..26 {
            dot += c[i] * d[i];
        }
        c[0] * d[1] + c[1] * d[0] - dot / 8
    }

    pub fn norm(&self) -> Q {
        self.pair(self)
    }

    /// Integral point of II_{1,25}.
    pub fn to_lattice(&self) -> Option<LorentzVector> {
        if self.0.iter().any(|x| !x.is_integer()) {
            return None;
        }
        let mut l = [0i32; 24];
        for i in 0..24 {
            l[i] = self.0[2 + i].to_integer() as i32;
        }
        let lambda = LeechVector(l);
        leech::contains(&lambda).then(|| LorentzVector::new(self.0[0].to_integer(), self.0[1].to_integer(), lambda))
    }

    /// Least k >= 1 with k * self in II_{1,25}.
    pub fn multiplier(&self) -> i64 {
        let den = self.0.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
        // the Leech lattice contains 8 Z^24, so 8 * den always works
        (1..=8 * den).find(|k| (*self * Q::from_integer(*k)).to_lattice().is_some()).expect("8 * denominator is integral")
    }
}

impl Add for Class {
    type Output = Class;
    fn add(self, o: Class) -> Class {
        let mut c = self.0;
        for i in 0..26 {
            c[i] += o.0[i];
        }
        Class(c)
    }
}

impl Sub for Class {
    type Output = Class;
    fn sub(self, o: Class) -> Class {
        self + (-o)
    }
}

impl Neg for Class {
    type Output = Class;
    fn neg(self) -> Class {
        Class(self.0.map(|x| -x))
    }
}

impl Mul<Q> for Class {
    type Output = Class;
    fn mul(self, k: Q) -> Class {
        Class(self.0.map(|x| x * k))
    }
}

impl std::iter::Sum for Class {
    fn sum<I: Iterator<Item = Class>>(it: I) -> Class {
        it.fold(Class::zero(), |a, b| a + b)
    }
}

pub fn gram(vs: &[LorentzVector]) -> Vec<Vec<i64>> {
    vs.iter().map(|a| vs.iter().map(|b| a.pair(b)).collect()).collect()
}

pub fn class_gram(cs: &[Class]) -> Vec<Vec<Q>> {
    cs.iter().map(|a| cs.iter().map(|b| a.pair(b)).collect()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dynkin {
    A(usize),
    D(usize),
    E(usize),
}

impl Dynkin {
    pub fn rank(self) -> usize {
        match self {
            Dynkin::A(n) | Dynkin::D(n) | Dynkin::E(n) => n,
        }
    }

    /// Absolute determinant of the Cartan matrix.
    pub fn det(self) -> i64 {
        match self {
            Dynkin::A(n) => n as i64 + 1,
            Dynkin::D(_) => 4,
            Dynkin::E(n) => 9 - n as i64,
        }
    }

    /// Negative Cartan matrix (diagonal -2, edges 1) in a standard labelling.
    pub fn gram(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = -2;
        }
        let mut edge = |a: usize, b: usize| {
            g[a][b] = 1;
            g[b][a] = 1;
        };
        match self {
            Dynkin::A(_) => (1..n).for_each(|i| edge(i - 1, i)),
            Dynkin::D(_) => {
                (1..n - 1).for_each(|i| edge(i - 1, i));
                edge(n - 3, n - 1);
            }
            Dynkin::E(_) => {
                // chain 0..n-2 with the extra node on the third
                (1..n - 1).for_each(|i| edge(i - 1, i));
                edge(2, n - 1);
            }
        }
        g
    }
}

impl fmt::Display for Dynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dynkin::A(n) => write!(f, "A{n}"),
            Dynkin::D(n) => write!(f, "D{n}"),
            Dynkin::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for Dynkin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Dynkin> {
        let bad = || Error::UnknownLabel(s.to_string());
        let (l, n) = s.split_at(1);
        let n: usize = n.parse().map_err(|_| bad())?;
        match (l, n) {
            ("A", 1..) => Ok(Dynkin::A(n)),
            ("D", 4..) => Ok(Dynkin::D(n)),
            ("E", 6..=8) => Ok(Dynkin::E(n)),
            _ => Err(bad()),
        }
    }
}

/// A root lattice type as a sorted multiset of components, written `D4+D5`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AdeType(pub Vec<Dynkin>);

impl AdeType {
    pub fn new(mut v: Vec<Dynkin>) -> AdeType {
        v.sort();
        AdeType(v)
    }

    pub fn det(&self) -> i64 {
        self.0.iter().map(|d| d.det()).product()
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|d| d.rank()).sum()
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for AdeType {
    type Err = Error;
    fn from_str(s: &str) -> Result<AdeType> {
        Ok(AdeType::new(s.split('+').map(|p| p.trim().parse()).collect::<Result<_>>()?))
    }
}

impl Serialize for AdeType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AdeType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<AdeType, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn components(n: usize, adj: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for w in 0..n {
                if !seen[w] && w != v && adj(v, w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Arm lengths (in vertices) hanging off `center` in a tree component.
fn arms(comp: &[usize], center: usize, adj: &dyn Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut out = Vec::new();
    for &start in comp.iter().filter(|&&w| w != center && adj(center, w)) {
        let (mut prev, mut cur, mut len) = (center, start, 1);
        loop {
            let next: Vec<usize> = comp.iter().copied().filter(|&w| w != prev && w != cur && adj(cur, w)).collect();
            match next.as_slice() {
                [] => break,
                [w] => {
                    prev = cur;
                    cur = *w;
                    len += 1;
                }
                _ => return Vec::new(),
            }
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Recognizes a root lattice from its Gram matrix (diagonal -2, off-diagonal 0 or 1).
pub fn ade_type(g: &[Vec<i64>]) -> Result<AdeType> {
    let n = g.len();
    for i in 0..n {
        if g[i][i] != -2 {
            return Err(Error::NotAde(format!("root {i} has norm {}", g[i][i])));
        }
        for j in 0..n {
            if i != j && !(g[i][j] == 0 || g[i][j] == 1) {
                return Err(Error::NotAde(format!("pairing {} between roots {i} and {j}", g[i][j])));
            }
        }
    }
    if !linalg::is_negative_definite(&linalg::imat(g)) {
        return Err(Error::NotNegativeDefinite);
    }
    let adj = |a: usize, b: usize| g[a][b] == 1;
    let mut out = Vec::new();
    for comp in components(n, &adj) {
        let k = comp.len();
        let deg = |v: usize| comp.iter().filter(|&&w| w != v && adj(v, w)).count();
        let edges: usize = comp.iter().map(|&v| deg(v)).sum::<usize>() / 2;
        let branch: Vec<usize> = comp.iter().copied().filter(|&v| deg(v) >= 3).collect();
        let fail = || Error::NotAde(format!("component {comp:?}"));
        if edges != k - 1 {
            return Err(fail());
        }
        let d = match branch.as_slice() {
            [] => Dynkin::A(k),
            [c] if deg(*c) == 3 => match arms(&comp, *c, &adj).as_slice() {
                [1, 1, _] => Dynkin::D(k),
                [1, 2, 2] => Dynkin::E(6),
                [1, 2, 3] => Dynkin::E(7),
                [1, 2, 4] => Dynkin::E(8),
                _ => return Err(fail()),
            },
            _ => return Err(fail()),
        };
        out.push(d);
    }
    Ok(AdeType::new(out))
}

/// Extended Dynkin types of reducible fibers, written `~A15`, `~D7`, `~E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberType(pub Dynkin);

impl FiberType {
    pub fn components(self) -> usize {
        self.0.rank() + 1
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "~{}", self.0)
    }
}

impl FromStr for FiberType {
    type Err = Error;
    fn from_str(s: &str) -> Result<FiberType> {
        let t = s.strip_prefix('~').ok_or_else(|| Error::UnknownLabel(s.into()))?;
        Ok(FiberType(t.parse()?))
    }
}

/// Validates a fiber `F = sum mult_i C_i` against the extended Dynkin
/// diagrams: all C_i^2 = -2, F.C_i = 0, connected, multiplicities primitive,
/// and the diagram shape names the type.
pub fn extended_fiber_type(g: &[Vec<Q>], mult: &[i64]) -> Result<FiberType> {
    let n = g.len();
    let bad = |m: String| Error::ShapeMismatch(m);
    if n < 2 || mult.len() != n {
        return Err(bad(format!("{n} components")));
    }
    let gi: Vec<Vec<i64>> = g
        .iter()
        .map(|r| r.iter().map(|x| if x.is_integer() { Ok(x.to_integer()) } else { Err(bad(format!("pairing {x}"))) }).collect())
        .collect::<Result<_>>()?;
    for i in 0..n {
        if gi[i][i] != -2 {
            return Err(bad(format!("component {i} has square {}", gi[i][i])));
        }
        let fc: i64 = (0..n).map(|j| gi[i][j] * mult[j]).sum();
        if fc != 0 {
            return Err(bad(format!("F . C{i} = {fc}")));
        }
    }
    if mult.iter().any(|m| *m <= 0) || mult.iter().fold(0i64, |a, b| a.gcd(b)) != 1 {
        return Err(bad("multiplicities are not primitive positive".into()));
    }
    let adj = |a: usize, b: usize| gi[a][b] != 0;
    if components(n, &adj).len() != 1 {
        return Err(bad("fiber is disconnected".into()));
    }
    if n == 2 {
        return if gi[0][1] == 2 { Ok(FiberType(Dynkin::A(1))) } else { Err(bad("two components".into())) };
    }
    if (0..n).any(|i| (0..n).any(|j| i != j && !(gi[i][j] == 0 || gi[i][j] == 1))) {
        return Err(bad("multiple edge".into()));
    }
    let all: Vec<usize> = (0..n).collect();
    let deg = |v: usize| (0..n).filter(|&w| w != v && adj(v, w)).count();
    let edges = (0..n).map(deg).sum::<usize>() / 2;
    if edges == n {
        return if (0..n).all(|v| deg(v) == 2) { Ok(FiberType(Dynkin::A(n - 1))) } else { Err(bad("cycle with tails".into())) };
    }
    if edges != n - 1 {
        return Err(bad("not a tree or cycle".into()));
    }
    let branch: Vec<usize> = (0..n).filter(|&v| deg(v) >= 3).collect();
    let t = match branch.as_slice() {
        [c] if deg(*c) == 4 && n == 5 => Dynkin::D(4),
        [a, b] if deg(*a) == 3 && deg(*b) == 3 => Dynkin::D(n - 1),
        [c] if deg(*c) == 3 => match arms(&all, *c, &adj).as_slice() {
            [2, 2, 2] => Dynkin::E(6),
            [1, 3, 3] => Dynkin::E(7),
            [1, 2, 5] => Dynkin::E(8),
            a => return Err(bad(format!("arms {a:?}"))),
        },
        _ => return Err(bad("branching".into())),
    };
    Ok(FiberType(t))
}

/// An ordered list of Leech roots spanning a negative definite root lattice.
#[derive(Clone, Debug)]
pub struct RootBasis {
    pub roots: Vec<LorentzVector>,
    pub gram: Vec<Vec<i64>>,
    pub ade: AdeType,
}

impl RootBasis {
    pub fn new(roots: Vec<LorentzVector>) -> Result<RootBasis> {
        for r in &roots {
            if r.n != 1 || r.norm() != -2 {
                return Err(Error::InvalidPayload("basis vector is not a Leech root".into()));
            }
        }
        let gram = gram(&roots);
        let ade = ade_type(&gram)?;
        Ok(RootBasis { roots, gram, ade })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn extend(&self, r: LorentzVector) -> Result<RootBasis> {
        let mut v = self.roots.clone();
        v.push(r);
        RootBasis::new(v)
    }

    /// Number of basis roots pairing to 1 with root `i`.
    pub fn valence(&self, i: usize) -> usize {
        (0..self.len()).filter(|&j| j != i && self.gram[i][j] == 1).count()
    }
}

/// The projection of a class to the orthogonal complement of a root basis.
#[derive(Clone, Debug)]
pub struct Projection {
    pub delta: Class,
    pub norm: Q,
    pub multiplier: i64,
}

/// delta = r - sum c_i alpha_i with delta . alpha_i = 0, solved exactly.
pub fn project(r: &Class, basis: &[Class]) -> Result<Projection> {
    let big = |q: Q| BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()));
    let g: Vec<Vec<BigRational>> = basis.iter().map(|a| basis.iter().map(|b| big(a.pair(b))).collect()).collect();
    let rhs: Vec<BigRational> = basis.iter().map(|a| big(a.pair(r))).collect();
    let c = linalg::solve(&g, &rhs).ok_or(Error::Singular)?;
    let mut delta = *r;
    for (ci, a) in c.iter().zip(basis) {
        let q = Q::new(ci.numer().to_i64().unwrap(), ci.denom().to_i64().unwrap());
        delta = delta - *a * q;
    }
    debug_assert!(basis.iter().all(|a| a.pair(&delta).is_zero()));
    Ok(Projection { norm: delta.norm(), multiplier: delta.multiplier(), delta })
}

/// A Z-basis of II_{1,25}: f, g, then the Leech basis rows.
pub fn lattice_basis() -> Vec<Class> {
    let lb = leech::LatticeBasis::from_generators();
    let mut out = Vec::with_capacity(26);
    let mut f = Class::zero();
    f.0[0] = Q::one();
    let mut g = Class::zero();
    g.0[1] = Q::one();
    out.push(f);
    out.push(g);
    for row in lb.rows() {
        let mut c = Class::zero();
        for i in 0..24 {
            c.0[2 + i] = Q::from_integer(row[i]);
        }
        out.push(c);
    }
    out
}

/// Integer Gram matrix of classes that pair integrally.
pub fn int_gram(cs: &[Class]) -> Result<IMat> {
    cs.iter()
        .map(|a| {
            cs.iter()
                .map(|b| {
                    let p = a.pair(b);
                    if p.is_integer() {
                        Ok(BigInt::from(p.to_integer()))
                    } else {
                        Err(Error::InvalidPayload(format!("non-integral pairing {p}")))
                    }
                })
                .collect()
        })
        .collect()
}

/// Z-basis of the orthogonal complement of `roots` in II_{1,25}.
pub fn orthogonal_complement(roots: &[Class]) -> Result<Vec<Class>> {
    let basis = lattice_basis();
    let m: IMat = roots
        .iter()
        .map(|r| {
            basis
                .iter()
                .map(|b| {
                    let p = r.pair(b);
                    if p.is_integer() {
                        Ok(BigInt::from(p.to_integer()))
                    } else {
                        Err(Error::InvalidPayload("root is not integral".into()))
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let k = linalg::integer_kernel(&m, 26);
    Ok(k
        .iter()
        .map(|col| {
            let mut c = Class::zero();
            for (x, b) in col.iter().zip(&basis) {
                let x = x.to_i64().expect("kernel entries fit i64");
                if x != 0 {
                    c = c + *b * Q::from_integer(x);
                }
            }
            c
        })
        .collect())
}

/// Lattice invariants of a Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeInvariants {
    pub rank: usize,
    pub det: String,
    pub signature: (usize, usize),
    pub divisors: Vec<String>,
}

impl LatticeInvariants {
    pub fn of(g: &IMat) -> LatticeInvariants {
        let (p, n, _) = linalg::signature(&linalg::to_rational(g));
        LatticeInvariants {
            rank: linalg::rank(g),
            det: linalg::det(g).to_string(),
            signature: (p, n),
            divisors: linalg::smith_divisors(g).into_iter().filter(|d| !d.is_one()).map(|d| d.to_string()).collect(),
        }
    }

    pub fn abs_det(&self) -> i64 {
        self.det.trim_start_matches('-').parse().unwrap_or(0)
    }
}

/// Gram matrix of U + (sum of negative definite root lattices).
pub fn block_gram(blocks: &[Dynkin]) -> IMat {
    let mut parts: Vec<Vec<Vec<i64>>> = vec![vec![vec![0, 1], vec![1, 0]]];
    parts.extend(blocks.iter().map(|d| d.gram()));
    let n: usize = parts.iter().map(|p| p.len()).sum();
    let mut g = vec![vec![BigInt::zero(); n]; n];
    let mut off = 0;
    for p in &parts {
        for i in 0..p.len() {
            for j in 0..p.len() {
                g[off + i][off + j] = BigInt::from(p[i][j]);
            }
        }
        off += p.len();
    }
    g
}

/// Histogram helper keyed by exact rationals rendered as strings.
pub fn q_key(q: Q) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn count_by<K: Ord, I: IntoIterator<Item = K>>(it: I) -> BTreeMap<K, usize> {
    let mut m = BTreeMap::new();
    for k in it {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leech::{named_vector, Named};
    use crate::mog::Roman;
    use num_traits::Signed;

    fn hat(r: Roman) -> LorentzVector {
        leech_root(named_vector(Named::Hat(r.position())).unwrap()).unwrap()
    }

    #[test]
    fn r0_is_d4() {
        let a0 = leech_root(LeechVector::ZERO).unwrap();
        assert_eq!((a0.m, a0.n), (-1, 1));
        let a1 = hat(Roman::I);
        assert_eq!((a1.m, a1.n), (2, 1));
        assert_eq!(a0.pair(&a1), 1);
        let b = RootBasis::new(vec![a0, a1, hat(Roman::II), hat(Roman::III)]).unwrap();
        assert_eq!(b.ade.to_string(), "D4");
        assert_eq!(b.valence(0), 3);
    }

    #[test]
    fn dynkin_determinants() {
        for d in [Dynkin::A(1), Dynkin::A(5), Dynkin::D(4), Dynkin::D(9), Dynkin::E(6), Dynkin::E(7), Dynkin::E(8)] {
            let g = linalg::imat(&d.gram());
            assert_eq!(linalg::det(&g).abs(), BigInt::from(d.det()), "{d}");
            assert_eq!(ade_type(&d.gram()).unwrap(), AdeType(vec![d]));
        }
    }

    #[test]
    fn non_ade_rejected() {
        // a 4-cycle is affine A3, not definite
        let c4 = vec![vec![-2, 1, 0, 1], vec![1, -2, 1, 0], vec![0, 1, -2, 1], vec![1, 0, 1, -2]];
        assert!(ade_type(&c4).is_err());
    }

    #[test]
    fn affine_shapes() {
        let q = |g: Vec<Vec<i64>>| g.into_iter().map(|r| r.into_iter().map(Q::from_integer).collect()).collect::<Vec<Vec<Q>>>();
        // ~D4: centre with four leaves, multiplicities 2,1,1,1,1
        let mut g = vec![vec![0i64; 5]; 5];
        for i in 0..5 {
            g[i][i] = -2;
        }
        for l in 1..5 {
            g[0][l] = 1;
            g[l][0] = 1;
        }
        assert_eq!(extended_fiber_type(&q(g.clone()), &[2, 1, 1, 1, 1]).unwrap().to_string(), "~D4");
        assert!(extended_fiber_type(&q(g), &[1, 1, 1, 1, 1]).is_err());
        let a1 = vec![vec![-2, 2], vec![2, -2]];
        assert_eq!(extended_fiber_type(&q(a1), &[1, 1]).unwrap().to_string(), "~A1");
    }

    #[test]
    fn ade_type_round_trips() {
        let t: AdeType = "D5+D4".parse().unwrap();
        assert_eq!(t.to_string(), "D4+D5");
        assert_eq!(t.det(), 16);
    }
}
