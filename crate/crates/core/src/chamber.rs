//! Faces of Conway's chamber restricted to the orthogonal complement of a
//! root basis: orthogonal Leech roots (the (-2)-curves) and the roots that
//! extend the basis to a larger root lattice (the extra faces).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixture::{parse_q, Fixture, VectorSpec};
use crate::graph::{Graph, VertexKind};
use crate::leech::{self, LeechVector};
use crate::lorentz::{project, q_key, AdeType, Class, LorentzVector, Projection, RootBasis, Q};
use crate::mog::{self, coordinate_lines, mask_label, romans_mask, steiner};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    GenericD4,
    GenericD4D4,
    JacobianOrdinary,
    JacobianPrank1,
    ProductEfOrdinary,
    ProductEeOrdinary,
    ProductEfMixed,
    KkmE6,
    KkmE6A1,
}

impl CaseId {
    pub const ALL: [CaseId; 9] = [
        CaseId::GenericD4,
        CaseId::GenericD4D4,
        CaseId::JacobianOrdinary,
        CaseId::JacobianPrank1,
        CaseId::ProductEfOrdinary,
        CaseId::ProductEeOrdinary,
        CaseId::ProductEfMixed,
        CaseId::KkmE6,
        CaseId::KkmE6A1,
    ];

    /// The five characteristic 2 surfaces with a full face table.
    pub const SURFACES: [CaseId; 5] =
        [CaseId::JacobianOrdinary, CaseId::JacobianPrank1, CaseId::ProductEfOrdinary, CaseId::ProductEeOrdinary, CaseId::ProductEfMixed];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::GenericD4 => "generic-d4",
            CaseId::GenericD4D4 => "generic-d4d4",
            CaseId::JacobianOrdinary => "jacobian-ordinary",
            CaseId::JacobianPrank1 => "jacobian-prank1",
            CaseId::ProductEfOrdinary => "product-EF-ordinary",
            CaseId::ProductEeOrdinary => "product-EE-ordinary",
            CaseId::ProductEfMixed => "product-EF-mixed",
            CaseId::KkmE6 => "kkm-e6",
            CaseId::KkmE6A1 => "kkm-e6a1",
        }
    }

    pub fn fixture(self) -> Result<Fixture> {
        Fixture::shipped(self.as_str())
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<CaseId> {
        CaseId::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| Error::UnknownCase(s.into()))
    }
}

/// The stored generators of a case, checked against the claimed type.
pub fn standard_basis(case: CaseId) -> Result<RootBasis> {
    basis_from_fixture(&case.fixture()?)
}

pub fn basis_from_fixture(f: &Fixture) -> Result<RootBasis> {
    let b = RootBasis::new(f.generator_vectors()?)?;
    let want: AdeType = f.expected_ade.parse()?;
    if b.ade != want {
        return Err(Error::Fixture(format!("{}: basis has type {} but {} is claimed", f.case_id, b.ade, want)));
    }
    Ok(b)
}

fn alpha0() -> LorentzVector {
    LorentzVector::new(-1, 1, LeechVector::ZERO)
}

fn alpha0_index(b: &RootBasis) -> Result<usize> {
    b.roots.iter().position(|r| *r == alpha0()).ok_or_else(|| Error::Construction("basis does not contain alpha0".into()))
}

/// A root `(m, n, l)` with `n = 1` pairs with alpha0 as `m - 1`. Roots
/// orthogonal to alpha0 therefore have `m = 1` and `l` minimal; that makes
/// the orthogonal search over the minimal shell complete.
pub fn orthogonal_roots(b: &RootBasis) -> Result<Vec<LorentzVector>> {
    alpha0_index(b)?;
    let shell = leech::minimal_shell();
    let mut out: Vec<LorentzVector> = shell
        .vectors()
        .par_iter()
        .map(|l| LorentzVector::new(1, 1, *l))
        .filter(|r| b.roots.iter().all(|a| r.pair8(a) == 0))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ExtensionRoot {
    pub root: LorentzVector,
    pub ade: AdeType,
    pub projection: Projection,
}

/// Whether a search restricted to the minimal shell (plus the norm -6
/// shell when `shell6` is set) finds every extension root. A Leech root
/// `(m, 1, l)` pairs with alpha0 as `m - 1` and `m = -1 + |l|^2/16`, so an
/// extension root with pairing 0 or 1 with alpha0 has `l` of norm -4 or -6.
/// When alpha0 already has three neighbours in the basis a fourth one would
/// break the Dynkin shape, so only norm -4 remains.
pub fn extension_search_complete(b: &RootBasis, shell6: bool) -> Result<bool> {
    let i = alpha0_index(b)?;
    Ok(shell6 || b.valence(i) >= 3)
}

/// All Leech roots `r` with pairings in {0, 1} against the basis, not all
/// zero, such that the basis plus `r` is still a negative definite root
/// lattice; grouped by the resulting type and sorted.
pub fn extension_roots(b: &RootBasis, shell6: bool) -> Result<BTreeMap<AdeType, Vec<ExtensionRoot>>> {
    if !extension_search_complete(b, shell6)? {
        return Err(Error::Construction("alpha0 has fewer than three neighbours; enable the norm -6 shell".into()));
    }
    let accept = |r: &LorentzVector| {
        let mut any = false;
        for a in &b.roots {
            match r.pair8(a) {
                0 => {}
                8 => any = true,
                _ => return false,
            }
        }
        any
    };
    let mut cands: Vec<LorentzVector> =
        leech::minimal_shell().vectors().par_iter().map(|l| LorentzVector::new(1, 1, *l)).filter(|r| accept(r)).collect();
    if shell6 {
        let more = Mutex::new(Vec::new());
        leech::for_each_shell6(|l| {
            let r = LorentzVector::new(2, 1, *l);
            if accept(&r) {
                more.lock().unwrap().push(r);
            }
        });
        cands.extend(more.into_inner().unwrap());
    }
    cands.sort();
    let basis: Vec<Class> = b.roots.iter().map(|r| r.class()).collect();
    let found: Vec<ExtensionRoot> = cands
        .par_iter()
        .filter_map(|r| {
            let ext = b.extend(*r).ok()?;
            let projection = project(&r.class(), &basis).ok()?;
            Some(ExtensionRoot { root: *r, ade: ext.ade, projection })
        })
        .collect();
    let mut out: BTreeMap<AdeType, Vec<ExtensionRoot>> = BTreeMap::new();
    for e in found {
        out.entry(e.ade.clone()).or_default().push(e);
    }
    Ok(out)
}

/// The dictionary name of a Leech root `(m, 1, l)` when `l` is one of the
/// named vectors, else a raw spec.
pub fn describe(r: &LorentzVector) -> VectorSpec {
    let c = &r.lambda.0;
    let raw = || VectorSpec::Raw { m: r.m, n: r.n, coords: c.to_vec() };
    if r.n != 1 {
        return raw();
    }
    if c.iter().all(|&x| x == 0) {
        return VectorSpec::Empty;
    }
    let count = |v: i32| c.iter().filter(|&&x| x == v).count();
    let pos_of = |v: i32| c.iter().position(|&x| x == v).unwrap();
    if count(1) == 23 && count(-3) == 1 {
        return VectorSpec::P { payload: mog::Position(pos_of(-3) as u8).sylvester().into() };
    }
    if count(1) == 23 && count(5) == 1 {
        return VectorSpec::Phat { payload: mog::Position(pos_of(5) as u8).sylvester().into() };
    }
    if count(2) == 8 && count(0) == 16 {
        let o = (0..24).filter(|&i| c[i] == 2).fold(0u32, |m, i| m | 1 << i);
        if steiner().is_octad(o) {
            let romans = (o & romans_mask()).count_ones();
            let plane = o & !romans_mask();
            if romans == 3 {
                if let Some((name, _)) = coordinate_lines().into_iter().find(|(_, m)| *m == plane) {
                    return VectorSpec::L { payload: name };
                }
            }
            if romans == 2 {
                return VectorSpec::Q { payload: mask_label(plane) };
            }
        }
    }
    raw()
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionSummary {
    pub ade: String,
    pub count: usize,
    pub norms: BTreeMap<String, usize>,
    pub multipliers: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug)]
pub struct FaceReport {
    pub case: String,
    pub basis: RootBasis,
    pub orthogonal: Vec<LorentzVector>,
    pub extensions: BTreeMap<AdeType, Vec<ExtensionRoot>>,
    /// every face keyed by its norm: curves at -2 and projected extension roots
    pub counts_by_norm: BTreeMap<String, usize>,
}

impl FaceReport {
    pub fn total_faces(&self) -> usize {
        self.counts_by_norm.values().sum()
    }

    pub fn extension_counts(&self) -> BTreeMap<String, usize> {
        self.extensions.iter().map(|(k, v)| (k.to_string(), v.len())).collect()
    }

    pub fn summaries(&self) -> Vec<ExtensionSummary> {
        self.extensions
            .iter()
            .map(|(k, v)| ExtensionSummary {
                ade: k.to_string(),
                count: v.len(),
                norms: crate::lorentz::count_by(v.iter().map(|e| q_key(e.projection.norm))),
                multipliers: crate::lorentz::count_by(v.iter().map(|e| e.projection.multiplier)),
            })
            .collect()
    }

    pub fn extension_list(&self) -> impl Iterator<Item = &ExtensionRoot> {
        self.extensions.values().flatten()
    }
}

pub fn face_report(case: CaseId, shell6: bool) -> Result<FaceReport> {
    report_for(&case.fixture()?, shell6)
}

pub fn report_for(f: &Fixture, shell6: bool) -> Result<FaceReport> {
    let basis = basis_from_fixture(f)?;
    let orthogonal = orthogonal_roots(&basis)?;
    let extensions = extension_roots(&basis, shell6)?;
    let mut counts = BTreeMap::new();
    if !orthogonal.is_empty() {
        counts.insert("-2".to_string(), orthogonal.len());
    }
    for e in extensions.values().flatten() {
        *counts.entry(q_key(e.projection.norm)).or_insert(0) += 1;
    }
    Ok(FaceReport { case: f.case_id.clone(), basis, orthogonal, extensions, counts_by_norm: counts })
}

/// Name of each orthogonal root from the fixture's curve map, falling back
/// to the dictionary label.
/// The D4+D4 to D4+D5 extension roots indexed by permutations `s` of F4:
/// the line through the points `(a, s(a))` for even `s`, and for odd `s`
/// the oval of those points with the points at infinity of slopes 0 and inf.
/// Returns (even, odd) counts and whether the 24 roots are exactly the
/// computed extension roots.
pub fn permutation_split(rep: &FaceReport) -> Result<(usize, usize, bool)> {
    let s = steiner();
    let els = mog::F4::ELEMENTS;
    let mut expected = Vec::new();
    let (mut even, mut odd) = (0, 0);
    for p in permutations(4) {
        let pts: Vec<mog::Position> = (0..4).map(|i| mog::Position::affine(els[i], els[p[i]])).collect();
        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let named = if inversions % 2 == 0 {
            let line = s.line_through(pts[0], pts[1]).ok_or_else(|| Error::Construction("no line".into()))?;
            if pts.iter().any(|q| line & q.bit() == 0) {
                return Err(Error::Construction(format!("the points of {p:?} are not collinear")));
            }
            even += 1;
            leech::Named::Line(line)
        } else {
            odd += 1;
            let oval = pts.iter().fold(0, |m, q| m | q.bit())
                | mog::Position::infinity(mog::Slope::Fin(mog::F4::ZERO)).bit()
                | mog::Position::infinity(mog::Slope::Inf).bit();
            leech::Named::Oval(oval)
        };
        expected.push(LorentzVector::new(1, 1, leech::named_vector(named)?));
    }
    expected.sort();
    let mut got: Vec<LorentzVector> = rep.extension_list().map(|e| e.root).collect();
    got.sort();
    Ok((even, odd, got == expected))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn curve_names(f: &Fixture, roots: &[LorentzVector]) -> Result<Vec<String>> {
    let mut by_vec: HashMap<LorentzVector, String> = HashMap::new();
    if let Some(cm) = &f.curve_map {
        for (n, s) in cm {
            by_vec.insert(s.vector()?, n.clone());
        }
    }
    Ok(roots.iter().map(|r| by_vec.get(r).cloned().unwrap_or_else(|| describe(r).label())).collect())
}

/// The chamber graph: curves, then every extension face (scaled as in the
/// fixture when it is named there), with exact pairings as weights.
pub fn incidence_graph(f: &Fixture, rep: &FaceReport) -> Result<(Graph, Vec<Class>)> {
    let mut names = curve_names(f, &rep.orthogonal)?;
    let mut kinds = vec![VertexKind::Curve; names.len()];
    let mut classes: Vec<Class> = rep.orthogonal.iter().map(|r| r.class()).collect();
    let mut named: HashMap<LorentzVector, (String, Q)> = HashMap::new();
    if let Some(faces) = &f.faces {
        for (n, s) in faces {
            named.insert(s.root.vector()?, (n.clone(), parse_q(&s.scale)?));
        }
    }
    for (ade, list) in &rep.extensions {
        for (k, e) in list.iter().enumerate() {
            let (n, scale) = named.get(&e.root).cloned().unwrap_or_else(|| (format!("{ade}#{}", k + 1), Q::from_integer(1)));
            names.push(n);
            kinds.push(VertexKind::Face);
            classes.push(e.projection.delta * scale);
        }
    }
    let g = Graph::from_pairing(names, kinds, |i, j| classes[i].pair(&classes[j]));
    Ok((g, classes))
}

/// The graph of pairings among the orthogonal roots alone.
pub fn orthogonal_graph(roots: &[LorentzVector], names: Vec<String>) -> Graph {
    let n = roots.len();
    Graph::from_pairing(names, vec![VertexKind::Curve; n], |i, j| Q::from_integer(roots[i].pair(&roots[j])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_ids_round_trip() {
        for c in CaseId::ALL {
            assert_eq!(c.as_str().parse::<CaseId>().unwrap(), c);
        }
        assert!("table-one".parse::<CaseId>().is_err());
    }

    #[test]
    fn describe_inverts_the_dictionary() {
        let specs = [
            VectorSpec::Empty,
            VectorSpec::P { payload: "i0.14.23".into() },
            VectorSpec::Phat { payload: "II".into() },
            VectorSpec::L { payload: "y=x".into() },
            VectorSpec::L { payload: "14".into() },
            VectorSpec::Q { payload: "Q0".into() },
        ];
        for s in specs {
            let v = s.vector().unwrap();
            assert_eq!(describe(&v).vector().unwrap(), v, "{s:?}");
        }
    }
}
