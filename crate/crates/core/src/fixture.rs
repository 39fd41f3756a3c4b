//! Versioned per-case fixtures: generators, expected counts, curve names,
//! drawn graphs, fibrations and lattice claims.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexKind;
use crate::leech::{named_vector, parse_named, LeechVector};
use crate::lorentz::{leech_root, Class, LorentzVector, Q};

pub const FIXTURE_VERSION: u32 = 1;

/// A named Leech root `(1, 1, [..])`-style generator or a raw Lorentz vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum VectorSpec {
    #[serde(rename = "empty")]
    Empty,
    P { payload: String },
    Phat { payload: String },
    L { payload: String },
    Q { payload: String },
    #[serde(rename = "raw")]
    Raw { m: i64, n: i64, coords: Vec<i32> },
}

impl VectorSpec {
    pub fn vector(&self) -> Result<LorentzVector> {
        let named = |tag: &str, p: &str| -> Result<LorentzVector> { leech_root(named_vector(parse_named(tag, p)?)?) };
        match self {
            VectorSpec::Empty => leech_root(LeechVector::ZERO),
            VectorSpec::P { payload } => named("P", payload),
            VectorSpec::Phat { payload } => named("Phat", payload),
            VectorSpec::L { payload } => named("L", payload),
            VectorSpec::Q { payload } => named("Q", payload),
            VectorSpec::Raw { m, n, coords } => {
                let c: [i32; 24] = coords.as_slice().try_into().map_err(|_| Error::Fixture("raw vector needs 24 coordinates".into()))?;
                let v = LorentzVector::new(*m, *n, LeechVector(c));
                if !crate::leech::contains(&v.lambda) {
                    return Err(Error::Fixture("raw vector is not in the lattice".into()));
                }
                Ok(v)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            VectorSpec::Empty => "(-1,1,0)".into(),
            VectorSpec::P { payload } => format!("[{payload}]"),
            VectorSpec::Phat { payload } => format!("[^{payload}]"),
            VectorSpec::L { payload } | VectorSpec::Q { payload } => format!("[{payload}]"),
            VectorSpec::Raw { m, n, .. } => format!("({m},{n},raw)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedTags {
    pub orthogonal: IndexMap<String, usize>,
    pub extension: IndexMap<String, usize>,
}

/// A face class `scale * proj(root)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub root: VectorSpec,
    pub scale: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meets: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derived {
    pub name: String,
    pub expr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Compare {
    /// the curve vertices are exactly the roots orthogonal to the basis
    Orthogonal,
    /// only the named pairings are checked
    Named,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSpec {
    pub name: String,
    pub kind: VertexKind,
    #[serde(default, rename = "class", skip_serializing_if = "Option::is_none")]
    pub class: Option<VectorSpec>,
}

/// An edge whose drawn weight disagrees with the computed pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub edge: (String, String, String),
    pub drawn: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub id: String,
    pub what: String,
    pub compare: Compare,
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub errata: Option<Vec<Erratum>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivalent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub lhs: String,
    pub rhs: String,
    pub value: String,
    pub what: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSpec {
    pub kind: String,
    /// absent when only the type of the fiber is known
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationSpec {
    pub id: String,
    pub what: String,
    pub fibers: Vec<FiberSpec>,
    pub sections: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mw_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsSpec {
    pub blocks: Vec<String>,
    pub rank: usize,
    pub abs_det: u64,
    pub divisors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub version: u32,
    pub case_id: String,
    pub anchor: String,
    pub description: String,
    pub generators: Vec<VectorSpec>,
    pub expected_ade: String,
    pub expected_orthogonal: usize,
    pub expected_extensions: IndexMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_counts: Option<IndexMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_tags: Option<ExpectedTags>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_map: Option<IndexMap<String, VectorSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<IndexMap<String, FaceSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived: Option<Vec<Derived>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graphs: Option<Vec<GraphSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<Claim>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibrations: Option<Vec<FibrationSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ns: Option<NsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<Vec<String>>,
}

const SHIPPED: [(&str, &str); 9] = [
    ("generic-d4", include_str!("../fixtures/generic-d4.json")),
    ("generic-d4d4", include_str!("../fixtures/generic-d4d4.json")),
    ("jacobian-ordinary", include_str!("../fixtures/jacobian-ordinary.json")),
    ("jacobian-prank1", include_str!("../fixtures/jacobian-prank1.json")),
    ("product-EF-ordinary", include_str!("../fixtures/product-EF-ordinary.json")),
    ("product-EE-ordinary", include_str!("../fixtures/product-EE-ordinary.json")),
    ("product-EF-mixed", include_str!("../fixtures/product-EF-mixed.json")),
    ("kkm-e6", include_str!("../fixtures/kkm-e6.json")),
    ("kkm-e6a1", include_str!("../fixtures/kkm-e6a1.json")),
];

/// The shipped fixture text for a case id.
pub fn shipped_text(case: &str) -> Result<&'static str> {
    SHIPPED.iter().find(|(c, _)| *c == case).map(|(_, t)| *t).ok_or_else(|| Error::UnknownCase(case.into()))
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        let f: Fixture = serde_json::from_str(text)?;
        if f.version != FIXTURE_VERSION {
            return Err(Error::Fixture(format!("unsupported fixture version {}", f.version)));
        }
        Ok(f)
    }

    pub fn shipped(case: &str) -> Result<Fixture> {
        Fixture::parse(shipped_text(case)?)
    }

    /// Serialization in the shipped layout (one-space indent, trailing newline).
    pub fn to_json(&self) -> String {
        let mut buf = Vec::new();
        let fmt = serde_json::ser::PrettyFormatter::with_indent(b" ");
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
        self.serialize(&mut ser).expect("fixture serializes");
        let mut s = String::from_utf8(buf).expect("utf-8");
        s.push('\n');
        s
    }

    /// A schema-valid skeleton with the generators left empty.
    pub fn template(case: &str) -> Fixture {
        Fixture {
            version: FIXTURE_VERSION,
            case_id: case.into(),
            anchor: String::new(),
            description: String::new(),
            generators: Vec::new(),
            expected_ade: String::new(),
            expected_orthogonal: 0,
            expected_extensions: IndexMap::new(),
            expected_counts: Some(IndexMap::new()),
            expected_tags: None,
            curve_map: Some(IndexMap::new()),
            faces: None,
            derived: None,
            graphs: None,
            claims: None,
            fibrations: None,
            ns: None,
            notes: None,
        }
    }

    pub fn generator_vectors(&self) -> Result<Vec<LorentzVector>> {
        self.generators.iter().map(|g| g.vector()).collect()
    }
}

/// A parsed linear combination of named classes, terms in first-use order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr(pub Vec<(String, Q)>);

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Name(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let bad = |m: &str| Error::Fixture(format!("expression {s:?}: {m}"));
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '/') {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            let q = match t.split_once('/') {
                Some((a, b)) => Q::new(a.parse().map_err(|_| bad("number"))?, b.parse().map_err(|_| bad("number"))?),
                None => Q::from_integer(t.parse().map_err(|_| bad("number"))?),
            };
            out.push(Tok::Num(q));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '\'' || cs[i] == '^') {
                i += 1;
            }
            out.push(Tok::Name(cs[st..i].iter().collect()));
        } else if "()+-".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(bad(&format!("unexpected {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i)
    }

    fn sum(&mut self) -> Result<Vec<(String, Q)>> {
        let mut out: Vec<(String, Q)> = Vec::new();
        let mut sign = Q::from_integer(1);
        if let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek() {
            if *c == '-' {
                sign = -sign;
            }
            self.i += 1;
        }
        loop {
            for (n, q) in self.term()? {
                add_term(&mut out, n, q * sign);
            }
            match self.peek() {
                Some(Tok::Sym(c @ ('+' | '-'))) => {
                    sign = Q::from_integer(if *c == '-' { -1 } else { 1 });
                    self.i += 1;
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<Vec<(String, Q)>> {
        let mut coef = Q::from_integer(1);
        if let Some(Tok::Num(q)) = self.peek() {
            coef = *q;
            self.i += 1;
        }
        match self.peek().cloned() {
            Some(Tok::Name(n)) => {
                self.i += 1;
                Ok(vec![(n, coef)])
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return Err(Error::Fixture("unbalanced parenthesis".into()));
                }
                self.i += 1;
                Ok(inner.into_iter().map(|(n, q)| (n, q * coef)).collect())
            }
            t => Err(Error::Fixture(format!("unexpected token {t:?}"))),
        }
    }
}

fn add_term(out: &mut Vec<(String, Q)>, n: String, q: Q) {
    match out.iter_mut().find(|(m, _)| *m == n) {
        Some(e) => e.1 += q,
        None => out.push((n, q)),
    }
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let mut p = Parser { toks: tokenize(s)?, i: 0 };
        let terms = p.sum()?;
        if p.i != p.toks.len() {
            return Err(Error::Fixture(format!("trailing input in {s:?}")));
        }
        Ok(Expr(terms.into_iter().filter(|(_, q)| *q != Q::from_integer(0)).collect()))
    }

    pub fn eval(&self, env: &HashMap<String, Class>) -> Result<Class> {
        self.0
            .iter()
            .map(|(n, q)| env.get(n).map(|c| *c * *q).ok_or_else(|| Error::UnknownLabel(n.clone())))
            .sum()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(n, _)| n.as_str())
    }
}

/// Parses `"-3/4"` or `"2"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Fixture(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => Ok(Q::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)),
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn expressions() {
        let e = Expr::parse("2(T1+E12+E2)+E13-E14").unwrap();
        assert_eq!(e.0, vec![("T1".into(), q(2)), ("E12".into(), q(2)), ("E2".into(), q(2)), ("E13".into(), q(1)), ("E14".into(), q(-1))]);
        let e = Expr::parse("F-(E2+E5'+2(E6'+E1^0))").unwrap();
        assert_eq!(e.0[2], ("E5'".into(), q(-1)));
        assert_eq!(e.0[3], ("E6'".into(), q(-2)));
        assert_eq!(e.0[4], ("E1^0".into(), q(-2)));
        let e = Expr::parse("3/2A - A").unwrap();
        assert_eq!(e.0, vec![("A".into(), Q::new(1, 2))]);
        assert!(Expr::parse("2(A+B").is_err());
        assert!(Expr::parse("A*B").is_err());
    }

    #[test]
    fn shipped_fixtures_round_trip() {
        for (case, text) in SHIPPED {
            let f = Fixture::parse(text).unwrap();
            assert_eq!(f.case_id, case);
            assert_eq!(f.to_json(), text, "{case}");
        }
    }

    #[test]
    fn template_parses() {
        let t = Fixture::template("complex-generic");
        assert_eq!(Fixture::parse(&t.to_json()).unwrap(), t);
    }
}
