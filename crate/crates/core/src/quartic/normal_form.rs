//! Reduction of an ordinary genus-2 curve `y^2 + (x^2+x)y + f6(x) = 0`
//! over GF(2^k) to the normal form `y^2 + (x^2+x)y + (ax^3+bx+c)^2 = 0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quartic::field::Gf;
use crate::quartic::poly::{Poly, Ring};

/// An element of GF(2^k) or of the quadratic extension GF(2^2k).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scalar {
    Base(u32),
    Quadratic(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    /// `y -> y + d(x)`, low coefficient first, with no quadratic term
    pub d: [u32; 4],
    /// the constant in `y -> y + e(x^2+x)`
    pub e: Scalar,
}

impl NormalForm {
    /// `b~ = a + b + c`, the middle constant of the quartic.
    pub fn b_tilde(&self, f: &Gf) -> u32 {
        f.add(f.add(self.a, self.b), self.c)
    }
}

/// `f + d^2 + (x^2+x) d`: the effect of `y -> y + d(x)` on the constant term.
pub fn shift(f: &Gf, f6: &[u32; 7], d: &[u32]) -> [u32; 7] {
    let mut out = *f6;
    for (i, &di) in d.iter().enumerate() {
        out[2 * i] = f.add(out[2 * i], f.mul(di, di));
        out[i + 1] = f.add(out[i + 1], di);
        out[i + 2] = f.add(out[i + 2], di);
    }
    out
}

/// The sextic `(ax^3+bx+c)^2`.
pub fn square_form(f: &Gf, a: u32, b: u32, c: u32) -> [u32; 7] {
    [f.mul(c, c), 0, f.mul(b, b), 0, 0, 0, f.mul(a, a)]
}

/// `(e^2+e)(x^4+x^2)` added to `f6`, for `e` in the base field.
pub fn shift_e(f: &Gf, f6: &[u32; 7], e: u32) -> [u32; 7] {
    let r = f.add(f.mul(e, e), e);
    let mut out = *f6;
    out[2] = f.add(out[2], r);
    out[4] = f.add(out[4], r);
    out
}

pub fn normal_form(f: &Gf, f6: &[u32; 7]) -> Result<NormalForm> {
    if f.p != 2 {
        return Err(Error::InvalidPayload("normal forms live in characteristic 2".into()));
    }
    // kill x, x^3, x^5
    let d = [f6[1], f6[3], 0, f6[5]];
    let g = shift(f, f6, &d);
    debug_assert!(g[1] == 0 && g[3] == 0 && g[5] == 0);
    // g = f3^2 with f3 = sum sqrt(g_2i) x^i
    let f3: Vec<u32> = (0..4).map(|i| f.frob_inv(g[2 * i])).collect();
    let q = f3[2];
    // y -> y + e(x^2+x) with e^2 + e = q^2 removes the quadratic term and moves q into b
    let (a, b, c) = (f3[3], f.add(f3[1], q), f3[0]);
    let qq = f.mul(q, q);
    let e = match f.artin_schreier(qq) {
        Some(e) => Scalar::Base(e),
        None => {
            let (big, emb) = f.quadratic_extension().map_err(|_| Error::Unsolvable(format!("e^2+e = {qq} has no root in GF(2^{}) and the extension is too large", f.k)))?;
            let e = big.artin_schreier(emb.apply(big, qq)).ok_or_else(|| Error::Unsolvable("Artin-Schreier over the quadratic extension".into()))?;
            Scalar::Quadratic(e)
        }
    };
    if c == 0 || a == 0 || f.add(f.add(a, b), c) == 0 {
        return Err(Error::InvalidPayload(format!("singular at a Weierstrass point: (a, b, c) = ({a}, {b}, {c})")));
    }
    let nf = NormalForm { a, b, c, d, e };
    // the transformed equation is exactly the normal form
    let r = f.mul(q, q);
    let mut h = g;
    h[2] = f.add(h[2], r);
    h[4] = f.add(h[4], r);
    if h != square_form(f, a, b, c) {
        return Err(Error::Construction("normal form reduction does not close up".into()));
    }
    Ok(nf)
}

/// The sextic of the Igusa form with constants alpha, beta, gamma.
pub fn igusa_sextic(f: &Gf, al: u32, be: u32, ga: u32) -> [u32; 7] {
    // gamma x^3 (x+1)^2 + alpha x (x+1)^2 + beta x^2 (x+1)
    let mut s = [0u32; 7];
    s[5] = ga;
    s[3] = f.add(ga, al);
    s[1] = al;
    s[3] = f.add(s[3], be);
    s[2] = be;
    s
}

/// `(a, b, c) = (gamma, alpha+beta+gamma, alpha)` via the explicit chain of
/// substitutions; `epsilon` solves `e^2 + e = gamma`.
pub fn igusa_to_normal(f: &Gf, al: u32, be: u32, ga: u32) -> Result<(NormalForm, Scalar)> {
    let s = igusa_sextic(f, al, be, ga);
    let dd = [al, f.add(f.add(al, be), ga), 0, ga];
    let g = shift(f, &s, &dd);
    let mid = [f.mul(al, al), 0, f.add(f.mul(dd[1], dd[1]), ga), 0, ga, 0, f.mul(ga, ga)];
    if g != mid {
        return Err(Error::Construction("first Igusa substitution".into()));
    }
    let eps = match f.artin_schreier(ga) {
        Some(e) => Scalar::Base(e),
        None => {
            let (big, emb) = f.quadratic_extension().map_err(|_| Error::Unsolvable(format!("e^2+e = gamma over GF(2^{})", f.k)))?;
            Scalar::Quadratic(big.artin_schreier(emb.apply(big, ga)).ok_or_else(|| Error::Unsolvable("e^2+e = gamma".into()))?)
        }
    };
    let nf = normal_form(f, &s)?;
    let expect = (ga, dd[1], al);
    if (nf.a, nf.b, nf.c) != expect {
        return Err(Error::Construction(format!("Igusa constants {:?} != {:?}", (nf.a, nf.b, nf.c), expect)));
    }
    Ok((nf, eps))
}

/// The substitution chain over F2[x, y, al, be, eps] with gamma = eps^2 + eps.
/// Returns the intermediate and final equations, which must match the
/// displayed ones.
pub fn igusa_chain_symbolic() -> Result<()> {
    let r = Ring::new(2, &["x", "y", "al", "be", "eps"]);
    let p = |s: &str| Poly::parse(&r, s);
    let ga = p("eps^2 + eps")?;
    let with_ga = |s: &str| -> Result<Poly> {
        let r2 = Ring::new(2, &["x", "y", "al", "be", "eps", "ga"]);
        Poly::parse(&r2, s)?.compose(&[p("x")?, p("y")?, p("al")?, p("be")?, p("eps")?, ga.clone()]).lift(&r)
    };
    let curve = with_ga("y^2 + (x^2+x)*y + ga*x^3*(x+1)^2 + al*x*(x+1)^2 + be*x^2*(x+1)")?;
    let step1 = curve.substitute(&[("y", with_ga("y + ga*x^3 + (al+be+ga)*x + al")?)])?;
    let mid = with_ga("y^2 + (x^2+x)*y + ga^2*x^6 + ga*x^4 + ((al+be+ga)^2 + ga)*x^2 + al^2")?;
    if step1 != mid {
        return Err(Error::Construction(format!("first substitution gives {step1}")));
    }
    let step2 = step1.substitute(&[("y", p("y + eps*(x^2+x)")?)])?;
    let fin = with_ga("y^2 + (x^2+x)*y + (ga*x^3 + (al+be+ga)*x + al)^2")?;
    if step2 != fin {
        return Err(Error::Construction(format!("second substitution gives {step2}")));
    }
    Ok(())
}

/// Outcome of a batch of random round trips.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundTrip {
    pub trials: usize,
    pub failures: Vec<String>,
}

fn nonzero(f: &Gf, rng: &mut ChaCha8Rng) -> u32 {
    rng.gen_range(1..f.size)
}

/// `n` random normal forms and `n` random Igusa forms.
pub fn round_trip(f: &Gf, n: usize, seed: u64) -> RoundTrip {
    let mut out = round_trip_normal(f, n, seed);
    let ig = round_trip_igusa(f, n, seed ^ 0x1905a);
    out.trials += ig.trials;
    out.failures.extend(ig.failures);
    out
}

/// Random normal forms pushed through random changes of variables and
/// reduced again.
pub fn round_trip_normal(f: &Gf, n: usize, seed: u64) -> RoundTrip {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = RoundTrip::default();
    while out.trials < n {
        let (a, c) = (nonzero(f, &mut rng), nonzero(f, &mut rng));
        let b = rng.gen_range(0..f.size);
        if f.add(f.add(a, b), c) == 0 {
            continue;
        }
        let d: Vec<u32> = (0..4).map(|_| rng.gen_range(0..f.size)).collect();
        let e = rng.gen_range(0..f.size);
        let f6 = shift_e(f, &shift(f, &square_form(f, a, b, c), &d), e);
        out.trials += 1;
        match normal_form(f, &f6) {
            Ok(nf) if (nf.a, nf.b, nf.c) == (a, b, c) => {}
            Ok(nf) => out.failures.push(format!("normal form of {f6:?}: got {:?}, expected {:?}", (nf.a, nf.b, nf.c), (a, b, c))),
            Err(e) => out.failures.push(format!("normal form of {f6:?}: {e}")),
        }
    }
    out
}

/// Random Igusa forms through `igusa_to_normal`; `epsilon` may need the
/// quadratic extension, so this requires 2k <= 16.
pub fn round_trip_igusa(f: &Gf, n: usize, seed: u64) -> RoundTrip {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = RoundTrip::default();
    while out.trials < n {
        let (al, be, ga) = (nonzero(f, &mut rng), nonzero(f, &mut rng), nonzero(f, &mut rng));
        out.trials += 1;
        if let Err(e) = igusa_to_normal(f, al, be, ga) {
            out.failures.push(format!("Igusa form {:?}: {e}", (al, be, ga)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_forms_are_fixed() {
        let f = Gf::binary(8).unwrap();
        let nf = normal_form(&f, &square_form(&f, 3, 7, 11)).unwrap();
        assert_eq!((nf.a, nf.b, nf.c), (3, 7, 11));
        assert_eq!(nf.e, Scalar::Base(0));
    }

    #[test]
    fn smoothness_guards() {
        let f = Gf::binary(8).unwrap();
        assert!(normal_form(&f, &square_form(&f, 3, 7, 0)).is_err());
        assert!(normal_form(&f, &square_form(&f, 0, 7, 1)).is_err());
        assert!(normal_form(&f, &square_form(&f, 1, 0, 1)).is_err());
    }

    #[test]
    fn small_round_trip() {
        let f = Gf::binary(4).unwrap();
        assert_eq!(round_trip(&f, 50, 7).failures, Vec::<String>::new());
    }

    #[test]
    fn symbolic_igusa_chain() {
        igusa_chain_symbolic().unwrap();
    }
}
