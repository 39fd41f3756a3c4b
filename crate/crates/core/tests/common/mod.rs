//! Property predicates shared by the proptest suite and the acceptance run.
#![allow(dead_code)]

use k3leech::leech::{self, LatticeBasis, LeechVector};
use k3leech::linalg;
use k3leech::lorentz::{ade_type, leech_root, project, AdeType, Class, Dynkin};
use k3leech::quartic::Poly;
use num_traits::Zero;

/// Possible pairings of two Leech roots over minimal vectors.
pub const PAIR_VALUES: [i64; 7] = [-2, 0, 1, 2, 3, 4, 6];

/// pair(r_l, r_m) = -2 - <l-m, l-m>/2, with a value in `PAIR_VALUES`.
pub fn pairing_law(l: &LeechVector, m: &LeechVector) -> Result<i64, String> {
    let (a, b) = (leech_root(*l).map_err(|e| e.to_string())?, leech_root(*m).map_err(|e| e.to_string())?);
    let d = (*l - *m).norm();
    let want = num_rational::Ratio::from_integer(-2) - d / 2;
    let got = a.pair(&b);
    if !want.is_integer() || want.to_integer() != got {
        return Err(format!("pair {got}, law gives {want}"));
    }
    if !PAIR_VALUES.contains(&got) {
        return Err(format!("pair {got} outside {PAIR_VALUES:?}"));
    }
    Ok(got)
}

/// An integer combination of the lattice basis rows.
pub fn combination(basis: &LatticeBasis, coeffs: &[i64]) -> LeechVector {
    let mut c = [0i64; 24];
    for (row, k) in basis.rows().iter().zip(coeffs) {
        for i in 0..24 {
            c[i] += k * row[i];
        }
    }
    LeechVector(c.map(|x| x as i32))
}

/// Norm in 2Z_{<=0} and never -2; the vector is a member by construction.
pub fn even_without_roots(v: &LeechVector) -> Result<(), String> {
    if !leech::contains(v) {
        return Err(format!("{v:?} is not a member"));
    }
    let n = v.norm();
    if !n.is_integer() || n.to_integer() % 2 != 0 || n.to_integer() > 0 {
        return Err(format!("norm {n}"));
    }
    if n.to_integer() == -2 {
        return Err("a root in the Leech lattice".into());
    }
    Ok(())
}

/// Block gram of the components, conjugated by `perm`; recognition must
/// return the type and |det| must follow the product rule.
pub fn ade_law(parts: &[Dynkin], perm: &[usize]) -> Result<(), String> {
    let n: usize = parts.iter().map(|d| d.rank()).sum();
    let mut g = vec![vec![0i64; n]; n];
    let mut off = 0;
    for d in parts {
        let b = d.gram();
        for i in 0..d.rank() {
            for j in 0..d.rank() {
                g[off + i][off + j] = b[i][j];
            }
        }
        off += d.rank();
    }
    let h: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| g[perm[i]][perm[j]]).collect()).collect();
    let want = AdeType::new(parts.to_vec());
    let got = ade_type(&h).map_err(|e| e.to_string())?;
    if got != want {
        return Err(format!("recognized {got}, built {want}"));
    }
    let det = linalg::det(&linalg::imat(&h));
    let abs = if det < 0.into() { -det } else { det };
    if abs != want.det().into() {
        return Err(format!("|det| {abs}, product rule {}", want.det()));
    }
    Ok(())
}

/// delta is orthogonal to the basis and projecting it again changes nothing.
pub fn projection_orthogonal(r: &Class, basis: &[Class]) -> Result<(), String> {
    let p = project(r, basis).map_err(|e| e.to_string())?;
    if let Some(a) = basis.iter().find(|a| !a.pair(&p.delta).is_zero()) {
        return Err(format!("delta . alpha = {}", a.pair(&p.delta)));
    }
    let again = project(&p.delta, basis).map_err(|e| e.to_string())?;
    if again.delta != p.delta {
        return Err("projection is not idempotent".into());
    }
    Ok(())
}

/// substitute(f^2, v -> g) = substitute(f, v -> g)^2 in characteristic 2.
pub fn frobenius_linear(f: &Poly, v: &str, g: &Poly) -> Result<(), String> {
    let lhs = f.pow(2).substitute(&[(v, g.clone())]).map_err(|e| e.to_string())?;
    let rhs = f.substitute(&[(v, g.clone())]).map_err(|e| e.to_string())?.pow(2);
    if lhs != rhs {
        return Err(format!("{lhs} != {rhs}"));
    }
    Ok(())
}

pub fn dynkin_from(kind: u8, n: usize) -> Dynkin {
    match kind % 3 {
        0 => Dynkin::A(1 + n % 8),
        1 => Dynkin::D(4 + n % 5),
        _ => Dynkin::E(6 + n % 3),
    }
}
