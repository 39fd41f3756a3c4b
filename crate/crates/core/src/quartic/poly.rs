//! Sparse multivariate polynomials over GF(p), p in {2, 3}.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration
//! order is lexicographic and the last term is the leading one.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quartic::field::Gf;

#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    pub p: u32,
    pub vars: Vec<String>,
}

impl Ring {
    pub fn new(p: u32, vars: &[&str]) -> Arc<Ring> {
        assert!(p == 2 || p == 3, "characteristic {p} is not supported");
        Arc::new(Ring { p, vars: vars.iter().map(|s| s.to_string()).collect() })
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownLabel(name.into()))
    }
}

pub type Exp = Vec<u16>;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub ring: Arc<Ring>,
    pub terms: BTreeMap<Exp, u32>,
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Poly {
        let mut p = Poly::zero(ring);
        p.add_term(vec![0; ring.vars.len()], c.rem_euclid(ring.p as i64) as u32);
        p
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Poly> {
        let i = ring.index(name)?;
        let mut e = vec![0; ring.vars.len()];
        e[i] = 1;
        let mut p = Poly::zero(ring);
        p.add_term(e, 1);
        Ok(p)
    }

    /// Parses sums of products of variables, integers, parentheses and
    /// powers: `s_a*(x*y+z*w)^2 + x*y*z*w`.
    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Poly> {
        let toks = tokenize(s)?;
        let mut p = Parser { ring, toks, i: 0 };
        let out = p.sum()?;
        if p.i != p.toks.len() {
            return Err(Error::InvalidPayload(format!("trailing input in {s:?}")));
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Exp, c: u32) {
        let p = self.ring.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot = (*slot + c) % p;
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Poly) {
        assert!(Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring, "polynomials from different rings");
    }

    pub fn scale(&self, c: i64) -> Poly {
        let c = c.rem_euclid(self.ring.p as i64) as u32;
        let mut out = Poly::zero(&self.ring);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut out = Poly::constant(&self.ring, 1);
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        out
    }

    /// Replaces every variable by the given image (one per variable).
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.vars.len());
        let target = images.first().map(|p| p.ring.clone()).unwrap_or_else(|| self.ring.clone());
        let mut cache: Vec<BTreeMap<u16, Poly>> = vec![BTreeMap::new(); images.len()];
        let mut out = Poly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(&target, *c as i64);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let pw = cache[i].entry(k).or_insert_with(|| images[i].pow(k as u32)).clone();
                    t = &t * &pw;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Substitutes the named variables, leaving the others alone.
    pub fn substitute(&self, subs: &[(&str, Poly)]) -> Result<Poly> {
        let mut images: Vec<Poly> = self.ring.vars.iter().map(|v| Poly::var(&self.ring, v)).collect::<Result<_>>()?;
        for (name, img) in subs {
            images[self.ring.index(name)?] = img.clone();
        }
        Ok(self.compose(&images))
    }

    pub fn derivative(&self, name: &str) -> Result<Poly> {
        let i = self.ring.index(name)?;
        let mut out = Poly::zero(&self.ring);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * (e[i] as u32 % self.ring.p));
        }
        Ok(out)
    }

    fn leading(&self) -> Option<(&Exp, &u32)> {
        self.terms.iter().next_back()
    }

    /// `self = q * g + r` by lex-order division; `r` collects the terms no
    /// leading monomial of `g` divides.
    pub fn div_rem(&self, g: &Poly) -> (Poly, Poly) {
        self.check(g);
        let p = self.ring.p;
        let (ge, gc) = g.leading().map(|(e, c)| (e.clone(), *c)).expect("division by zero polynomial");
        let ginv = (1..p).find(|x| x * gc % p == 1).unwrap();
        let mut q = Poly::zero(&self.ring);
        let mut r = Poly::zero(&self.ring);
        let mut f = self.clone();
        while let Some((fe, fc)) = f.leading().map(|(e, c)| (e.clone(), *c)) {
            if fe.iter().zip(&ge).all(|(a, b)| a >= b) {
                let me: Exp = fe.iter().zip(&ge).map(|(a, b)| a - b).collect();
                let mc = fc * ginv % p;
                let mut m = Poly::zero(&self.ring);
                m.add_term(me, mc);
                f = &f - &(&m * g);
                q = &q + &m;
            } else {
                f.terms.remove(&fe);
                r.add_term(fe, fc);
            }
        }
        (q, r)
    }

    pub fn divide_exact(&self, g: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(g);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible(r.to_string()))
        }
    }

    /// Evaluates at a point of GF(p^k)^n.
    pub fn eval(&self, f: &Gf, point: &[u32]) -> u32 {
        assert_eq!(f.p, self.ring.p);
        self.terms.iter().fold(0, |acc, (e, c)| {
            let t = e.iter().zip(point).fold(f.from_int(*c as i64), |t, (&k, &x)| f.mul(t, f.pow(x, k as u64)));
            f.add(acc, t)
        })
    }

    /// Moves the polynomial into another ring whose variables include ours.
    pub fn lift(&self, ring: &Arc<Ring>) -> Result<Poly> {
        let map: Vec<usize> = self.ring.vars.iter().map(|v| ring.index(v)).collect::<Result<_>>()?;
        let mut out = Poly::zero(ring);
        for (e, c) in &self.terms {
            let mut f = vec![0; ring.vars.len()];
            for (i, &k) in e.iter().enumerate() {
                f[map[i]] = k;
            }
            out.add_term(f, *c);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        // leading term first
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.ring.vars[i].clone() } else { format!("{}^{k}", self.ring.vars[i]) })
                .collect();
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (mono.is_empty(), *c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => f.write_str(&mono.join("*"))?,
                (false, c) => write!(f, "{c}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.ring.p)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.check(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.check(o);
        let p = self.ring.p;
        let mut acc: BTreeMap<Exp, u32> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e: Exp = a.iter().zip(b).map(|(u, v)| u + v).collect();
                let s = acc.entry(e).or_insert(0);
                *s = (*s + x * y) % p;
            }
        }
        acc.retain(|_, v| *v != 0);
        Poly { ring: self.ring.clone(), terms: acc }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Name(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect::<String>().parse().map_err(|_| Error::InvalidPayload(s.into()))?));
        } else if c.is_alphabetic() {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(cs[st..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::InvalidPayload(format!("unexpected {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    toks: Vec<Tok>,
    i: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i)
    }

    fn sum(&mut self) -> Result<Poly> {
        let mut neg = false;
        if self.peek() == Some(&Tok::Sym('-')) {
            neg = true;
            self.i += 1;
        }
        let mut acc = self.product()?;
        if neg {
            acc = -&acc;
        }
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.i += 1;
            let t = self.product()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Sym('*')) {
            self.i += 1;
            let t = self.power()?;
            acc = &acc * &t;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            self.i += 1;
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    self.i += 1;
                    return Ok(base.pow(k as u32));
                }
                _ => return Err(Error::InvalidPayload("exponent must be a number".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let t = self.peek().cloned().ok_or_else(|| Error::InvalidPayload("unexpected end of input".into()))?;
        self.i += 1;
        match t {
            Tok::Num(n) => Ok(Poly::constant(self.ring, n)),
            Tok::Name(n) => Poly::var(self.ring, &n),
            Tok::Sym('(') => {
                let e = self.sum()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return Err(Error::InvalidPayload("missing )".into()));
                }
                self.i += 1;
                Ok(e)
            }
            t => Err(Error::InvalidPayload(format!("unexpected {t:?}"))),
        }
    }
}
