//! Equation-level identities for the quartic models, each checked exactly.
//!
//! Parameter square roots are variables: `sa^2` plays the role of alpha.
//! Every identity is first screened at random points of a large finite
//! field and then settled by exact division.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quartic::field::Gf;
use crate::quartic::poly::{Poly, Ring};
use crate::report::{CheckResult, Status};

pub const IDS: [&str; 13] = [
    "cremona_ordinary",
    "transl_phi1_phi2",
    "psi_equal_params",
    "singular_points_ordinary",
    "prank1_sigma",
    "prank1_phi",
    "prank1_singular_points",
    "frobenius_quotient",
    "delta0_mod2",
    "appendix_substitution",
    "corollary_scaling",
    "kkm_ordinary_dual",
    "kkm_supersingular_dual",
];

pub const SCREEN_POINTS: usize = 100;

/// The ordinary Kummer quartic with sqrt(alpha), sqrt(beta), sqrt(gamma) as `sa, sb, sc`.
pub const ORDINARY: &str = "(sa*(x*y+z*w) + sb*(x*z+y*w) + sc*(x*w+y*z))^2 + x*y*z*w";
/// The Kummer quartic for p-rank one.
pub const PRANK1: &str = "be^2*x^4 + al^2*x^2*z^2 + x^2*z*w + x*y*z^2 + y^2*w^2 + z^4";

#[derive(Clone, Debug)]
pub enum Claim {
    /// `lhs = cofactor * rhs`
    Divides { lhs: Poly, rhs: Poly, cofactor: String },
    Vanishes(Poly),
}

#[derive(Clone, Debug)]
pub struct Part {
    pub label: String,
    pub claim: Claim,
}

#[derive(Clone, Debug)]
pub struct Identity {
    pub id: &'static str,
    pub anchor: &'static str,
    pub parts: Vec<Part>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub status: Status,
    pub cofactor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remainder: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn parse(r: &Arc<Ring>, s: &str) -> Poly {
    Poly::parse(r, s).unwrap_or_else(|e| panic!("catalog polynomial {s:?}: {e}"))
}

fn images(r: &Arc<Ring>, xs: &[&str]) -> Vec<Poly> {
    xs.iter().map(|s| parse(r, s)).collect()
}

/// Images for the geometry variables, identity on the rest of the ring.
fn map4(r: &Arc<Ring>, xs: [&str; 4]) -> Vec<Poly> {
    let mut out = images(r, &xs);
    out.extend(r.vars[4..].iter().map(|v| parse(r, v)));
    out
}

fn divides(label: &str, lhs: Poly, rhs: Poly, cofactor: &str) -> Part {
    Part { label: label.into(), claim: Claim::Divides { lhs, rhs, cofactor: cofactor.into() } }
}

/// `f` and its partials in `x, y, z, w` vanish at each point.
fn singular_at(r: &Arc<Ring>, f: &Poly, points: &[[i64; 4]]) -> Vec<Part> {
    let mut out = Vec::new();
    for pt in points {
        let img: Vec<Poly> = pt.iter().map(|&c| Poly::constant(r, c)).chain(r.vars[4..].iter().map(|v| parse(r, v))).collect();
        let name = format!("({},{},{},{})", pt[0], pt[1], pt[2], pt[3]);
        out.push(Part { label: format!("F{name}"), claim: Claim::Vanishes(f.compose(&img)) });
        for v in ["x", "y", "z", "w"] {
            let d = f.derivative(v).expect("geometry variable");
            out.push(Part { label: format!("dF/d{v}{name}"), claim: Claim::Vanishes(d.compose(&img)) });
        }
    }
    out
}

pub fn identity(id: &str) -> Result<Identity> {
    let ord = || Ring::new(2, &["x", "y", "z", "w", "sa", "sb", "sc"]);
    let pr1 = || Ring::new(2, &["x", "y", "z", "w", "al", "be"]);
    let (anchor, parts) = match id {
        "cremona_ordinary" => {
            let r = ord();
            let f = parse(&r, ORDINARY);
            let lhs = f.compose(&map4(&r, ["y*z*w", "x*z*w", "x*y*w", "x*y*z"]));
            ("the Cremona transformation preserves the ordinary Kummer quartic", vec![divides("sigma", lhs, f, "(x*y*z*w)^2")])
        }
        "transl_phi1_phi2" => {
            let r = ord();
            let f = parse(&r, ORDINARY);
            let p1 = f.compose(&map4(&r, ["y", "x", "w", "z"]));
            let p2 = f.compose(&map4(&r, ["z", "w", "x", "y"]));
            ("the two translations are automorphisms of the ordinary quartic", vec![divides("phi1", p1, f.clone(), "1"), divides("phi2", p2, f, "1")])
        }
        "psi_equal_params" => {
            let r = ord();
            let f = parse(&r, ORDINARY);
            let mut parts = Vec::new();
            for (label, from, to, perm) in [
                ("psi_ab", "sb", "sa", ["x", "z", "y", "w"]),
                ("psi_bc", "sc", "sb", ["x", "y", "w", "z"]),
                ("psi_ca", "sa", "sc", ["x", "w", "z", "y"]),
            ] {
                let g = f.substitute(&[(from, parse(&r, to))])?;
                parts.push(divides(label, g.compose(&map4(&r, perm)), g, "1"));
            }
            ("with two equal parameters the coordinate swap is an involution of the quartic", parts)
        }
        "singular_points_ordinary" => {
            let r = ord();
            let f = parse(&r, ORDINARY);
            let pts = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
            ("the four coordinate points are singular on the ordinary quartic", singular_at(&r, &f, &pts))
        }
        "prank1_sigma" => {
            let r = pr1();
            let g = parse(&r, PRANK1);
            let lhs = g.compose(&map4(&r, ["x*z^2", "y*z^2", "be*x^2*z", "be*x^2*w"]));
            ("the Cremona involution acts on the p-rank one quartic", vec![divides("sigma", lhs, g, "be^2*x^4*z^4")])
        }
        "prank1_phi" => {
            let r = pr1();
            let g = parse(&r, PRANK1);
            let lhs = g.compose(&map4(&r, ["z", "w", "be*x", "be*y"]));
            ("the linear involution acts on the p-rank one quartic", vec![divides("phi", lhs, g, "be^2")])
        }
        "prank1_singular_points" => {
            let r = pr1();
            let g = parse(&r, PRANK1);
            ("the p-rank one quartic is singular at its two named points", singular_at(&r, &g, &[[0, 0, 0, 1], [0, 1, 0, 0]]))
        }
        "frobenius_quotient" => {
            let r = Ring::new(2, &["x", "y", "z", "w", "A", "B", "C", "D"]);
            let lhs = parse(&r, "(A*(x^2*y^2+z^2*w^2) + B*(x^2*z^2+y^2*w^2) + C*(x^2*w^2+y^2*z^2))^2 - D^2*x^2*y^2*z^2*w^2");
            let rhs = parse(&r, "(A*(x^2*y^2+z^2*w^2) + B*(x^2*z^2+y^2*w^2) + C*(x^2*w^2+y^2*z^2) + D*x*y*z*w)^2");
            ("in characteristic 2 the Goepel quotient with E = 0 is the Frobenius image", vec![divides("S/F", lhs, rhs, "1")])
        }
        "delta0_mod2" => {
            let r = Ring::new(2, &["A", "B", "C", "D", "E"]);
            let lhs = parse(&r, "(4*A^2 + 4*B^2 + 4*C^2 - D^2 - 16*E^2)*E - 4*A*B*C");
            ("the Segre cubic reduces to D^2 E modulo 2", vec![divides("Delta0", lhs, parse(&r, "D^2*E"), "1")])
        }
        "appendix_substitution" => {
            let r = Ring::new(2, &["x", "y", "z", "w", "t", "a", "bt", "c"]);
            let dbl = parse(&r, "t^2 + x*y*z*t + (x+y+z)^2*(a*x*y + bt*x*z + c*y*z)^2");
            let lhs = dbl.substitute(&[("t", parse(&r, "(x+y+z)^2*w"))])?;
            let quartic = parse(&r, "((x*w+c*y*z) + (y*w+bt*x*z) + (z*w+a*x*y))^2 + x*y*z*w");
            ("the Artin-Schreier double plane becomes the normal-form quartic", vec![divides("t", lhs, quartic, "(x+y+z)^2")])
        }
        "corollary_scaling" => {
            let r = ord();
            // (a, bt, c) = (gamma, beta, alpha)
            let thm = parse(&r, "((x*w+sa^2*y*z) + (y*w+sb^2*x*z) + (z*w+sc^2*x*y))^2 + x*y*z*w");
            let lhs = thm.compose(&map4(&r, ["sa*x", "sb*y", "sc*z", "sa*sb*sc*w"]));
            let rhs = parse(&r, "sa^2*(x*w+y*z)^2 + sb^2*(y*w+x*z)^2 + sc^2*(z*w+x*y)^2 + x*y*z*w");
            ("rescaling the normal-form quartic gives the Igusa-form Kummer quartic", vec![divides("scale", lhs, rhs, "(sa*sb*sc)^2")])
        }
        "kkm_ordinary_dual" => {
            let r = Ring::new(3, &["x", "y", "z", "X", "Y", "Z", "lam"]);
            let dual = parse(&r, "(Y*Z+Z*X+X*Y)^3 - lam*X^2*Y^2*Z^2");
            let lhs = dual.substitute(&[("X", parse(&r, "y*z")), ("Y", parse(&r, "z*x")), ("Z", parse(&r, "x*y"))])?;
            ("the Cremona transform of the ordinary dual curve is the plane cubic", vec![divides("cremona", lhs, parse(&r, "(x+y+z)^3 - lam*x*y*z"), "(x*y*z)^3")])
        }
        "kkm_supersingular_dual" => {
            let r = Ring::new(3, &["x", "y", "z", "X", "Y", "Z"]);
            let dual = parse(&r, "X^4*Y^2 - (Y^2-X*Z)^3 + (Y^2-X*Z)*X^4");
            let lhs = dual.substitute(&[("X", parse(&r, "z^2")), ("Y", parse(&r, "-y*z")), ("Z", parse(&r, "y^2-x*z"))])?;
            ("the supersingular dual curve pulls back to the Weierstrass cubic", vec![divides("map", lhs, parse(&r, "y^2*z - x^3 + x*z^2"), "z^9")])
        }
        other => return Err(Error::UnknownLabel(other.into())),
    };
    let id = IDS.iter().find(|&&i| i == id).copied().expect("catalog id");
    Ok(Identity { id, anchor, parts })
}

fn ring_of(part: &Part) -> &Arc<Ring> {
    match &part.claim {
        Claim::Divides { lhs, .. } => &lhs.ring,
        Claim::Vanishes(p) => &p.ring,
    }
}

/// Evaluates each claim at random points of GF(2^16) or GF(3^8) and
/// returns the first point where it fails.
pub fn screen(ident: &Identity, seed: u64) -> Option<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = ring_of(ident.parts.first()?);
    let field = if ring.p == 2 { Gf::cached(2, 16) } else { Gf::cached(3, 8) }.expect("screening field");
    let cofactors: Vec<Option<Poly>> = ident
        .parts
        .iter()
        .map(|p| match &p.claim {
            Claim::Divides { lhs, cofactor, .. } => Some(parse(&lhs.ring, cofactor)),
            Claim::Vanishes(_) => None,
        })
        .collect();
    for _ in 0..SCREEN_POINTS {
        let pt: Vec<u32> = (0..ring.vars.len()).map(|_| rng.gen_range(0..field.size)).collect();
        for (part, cof) in ident.parts.iter().zip(&cofactors) {
            let ok = match (&part.claim, cof) {
                (Claim::Divides { lhs, rhs, .. }, Some(c)) => lhs.eval(field, &pt) == field.mul(c.eval(field, &pt), rhs.eval(field, &pt)),
                (Claim::Vanishes(p), _) => p.eval(field, &pt) == 0,
                _ => unreachable!(),
            };
            if !ok {
                let at = ring.vars.iter().zip(&pt).map(|(v, x)| format!("{v}={x}")).collect::<Vec<_>>().join(", ");
                return Some((part.label.clone(), at));
            }
        }
    }
    None
}

pub fn verify_identity(id: &str) -> Result<IdentityReport> {
    let ident = identity(id)?;
    let seed = IDS.iter().position(|&i| i == id).unwrap_or(0) as u64 + 0x5eed;
    let mut cofs: Vec<String> = Vec::new();
    for p in &ident.parts {
        let c = match &p.claim {
            Claim::Divides { cofactor, .. } => cofactor.clone(),
            Claim::Vanishes(_) => "0".into(),
        };
        if !cofs.contains(&c) {
            cofs.push(c);
        }
    }
    let mut rep = IdentityReport { id: id.into(), status: Status::Pass, cofactor: cofs.join("; "), remainder: None, counterexample: None };
    if let Some((label, at)) = screen(&ident, seed) {
        rep.status = Status::Fail;
        rep.counterexample = Some(format!("{label} at {at}"));
        return Ok(rep);
    }
    for p in &ident.parts {
        match &p.claim {
            Claim::Divides { lhs, rhs, cofactor } => match lhs.divide_exact(rhs) {
                Ok(q) if q == parse(&lhs.ring, cofactor) => {}
                Ok(q) => {
                    rep.status = Status::Fail;
                    rep.cofactor = q.to_string();
                    return Ok(rep);
                }
                Err(Error::NotDivisible(r)) => {
                    rep.status = Status::Fail;
                    rep.remainder = Some(format!("{}: {r}", p.label));
                    return Ok(rep);
                }
                Err(e) => return Err(e),
            },
            Claim::Vanishes(f) if !f.is_zero() => {
                rep.status = Status::Fail;
                rep.remainder = Some(format!("{}: {f}", p.label));
                return Ok(rep);
            }
            Claim::Vanishes(_) => {}
        }
    }
    Ok(rep)
}

pub fn verify_all() -> Vec<IdentityReport> {
    IDS.par_iter().map(|id| verify_identity(id).expect("catalog ids are known")).collect()
}

pub fn as_check(rep: &IdentityReport) -> CheckResult {
    let anchor = identity(&rep.id).map(|i| i.anchor).unwrap_or("");
    let mut c = CheckResult::verdict(format!("identity/{}", rep.id), anchor, rep.passed(), "exact", if rep.passed() { "exact" } else { "fails" })
        .detail(format!("cofactor {}", rep.cofactor));
    if let Some(r) = rep.remainder.as_ref().or(rep.counterexample.as_ref()) {
        c = c.detail(format!("cofactor {}; {r}", rep.cofactor));
    }
    c
}
