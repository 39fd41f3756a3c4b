//! Runs a selection of checks over a selection of cases.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::chamber::{self, describe, CaseId, FaceReport};
use crate::error::{Error, Result};
use crate::leech::{self, MinimalShell, Shape};
use crate::lorentz::count_by;
use crate::mog;
use crate::quartic::{self, catalog, Gf};
use crate::report::CheckResult;
use crate::surface::{self, SurfaceModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Steiner,
    Minimal,
    Faces,
    Graphs,
    Ns,
    Fibrations,
    Deltas,
    SixteenSix,
    Identities,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::Steiner,
        CheckKind::Minimal,
        CheckKind::Faces,
        CheckKind::Graphs,
        CheckKind::Ns,
        CheckKind::Fibrations,
        CheckKind::Deltas,
        CheckKind::SixteenSix,
        CheckKind::Identities,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Steiner => "steiner",
            CheckKind::Minimal => "minimal",
            CheckKind::Faces => "faces",
            CheckKind::Graphs => "graphs",
            CheckKind::Ns => "ns",
            CheckKind::Fibrations => "fibrations",
            CheckKind::Deltas => "deltas",
            CheckKind::SixteenSix => "sixteen-six",
            CheckKind::Identities => "identities",
        }
    }

    /// Checks that need a case model.
    fn per_case(self) -> bool {
        !matches!(self, CheckKind::Steiner | CheckKind::Minimal | CheckKind::Identities)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<CheckKind> {
        CheckKind::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| Error::UnknownLabel(format!("check {s}")))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub cases: Vec<CaseId>,
    pub checks: Vec<CheckKind>,
    pub shell6: bool,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig { cases: CaseId::ALL.to_vec(), checks: CheckKind::ALL.to_vec(), shell6: false }
    }
}

/// Parses a comma-separated list where `all` selects everything.
pub fn parse_list<T: FromStr<Err = Error> + Copy>(s: &str, all: &[T]) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            return Ok(all.to_vec());
        }
        out.push(part.parse()?);
    }
    Ok(out)
}

/// Every selected check, in a fixed order: global checks first, then each
/// case in `CaseId` order. Errors become failed checks so that later checks
/// still run.
pub fn run(cfg: &RunConfig) -> Vec<CheckResult> {
    let mut checks: Vec<CheckKind> = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    let mut cases = cfg.cases.clone();
    cases.sort();
    cases.dedup();
    let mut out = Vec::new();
    if checks.contains(&CheckKind::Steiner) {
        out.extend(steiner_checks());
    }
    if checks.contains(&CheckKind::Minimal) {
        out.extend(minimal_checks());
    }
    if checks.iter().any(|c| c.per_case()) {
        let per: Vec<Vec<CheckResult>> = cases.par_iter().map(|&case| case_checks(case, &checks, cfg.shell6)).collect();
        out.extend(per.into_iter().flatten());
        if checks.contains(&CheckKind::Graphs) && (cases.contains(&CaseId::KkmE6) || cases.contains(&CaseId::KkmE6A1)) {
            out.extend(surface::check_kkm_restriction().unwrap_or_else(|e| vec![CheckResult::error("kkm/restriction", "the E6+A1 restriction", e)]));
        }
    }
    if checks.contains(&CheckKind::Identities) {
        out.extend(identity_checks());
    }
    out
}

pub fn steiner_checks() -> Vec<CheckResult> {
    let s = match mog::SteinerSystem::build() {
        Ok(s) => s,
        Err(e) => return vec![CheckResult::error("steiner/build", "the Steiner system from the MOG", e)],
    };
    let octads = s.octads();
    let hist = s
        .class_histogram()
        .map(|h| ["3+5", "2+6", "1+7", "0+8"].iter().map(|t| h.get(t).copied().unwrap_or(0).to_string()).collect::<Vec<_>>().join("/"))
        .unwrap_or_else(|e| e.to_string());
    let mut five: HashSet<u32> = HashSet::new();
    let mut total = 0usize;
    for &o in octads {
        for t in mog::subsets(o, 5) {
            total += 1;
            five.insert(t);
        }
    }
    let enumerator = s.weight_enumerator().iter().map(|(w, n)| format!("{w}:{n}")).collect::<Vec<_>>().join(" ");
    vec![
        CheckResult::compare("steiner/octads", "the Golay code has 759 octads", 759, octads.len()),
        CheckResult::compare("steiner/classes", "octads by class: lines, ovals, and the two mixed kinds", "21/168/360/210", hist)
            .detail("Romans+plane points: 3+5, 2+6, 1+7, 0+8"),
        CheckResult::compare("steiner/five-subsets", "every 5-subset lies in exactly one octad", "42504 of 42504, each once", format!("{} of 42504, {}", five.len(), if total == five.len() { "each once".to_string() } else { format!("{total} incidences") })),
        CheckResult::compare("steiner/weights", "weight enumerator of the Golay code", "0:1 8:759 12:2576 16:759 24:1", enumerator),
    ]
}

pub fn minimal_checks() -> Vec<CheckResult> {
    let shell = leech::minimal_shell();
    minimal_checks_for(shell)
}

pub fn minimal_checks_for(shell: &MinimalShell) -> Vec<CheckResult> {
    let v = shell.vectors();
    let shapes = count_by(v.iter().map(MinimalShell::shape));
    let get = |s: Shape| shapes.get(&s).copied().unwrap_or(0);
    let members = v.par_iter().filter(|x| x.sq() == 32 && leech::contains(x)).count();
    vec![
        CheckResult::compare("minimal/count", "the minimal vectors of the Leech lattice", 196_560, v.len()),
        CheckResult::compare(
            "minimal/shapes",
            "octad, odd and pair shapes",
            "97152/98304/1104",
            format!("{}/{}/{}", get(Shape::Octad), get(Shape::Odd), get(Shape::Pair)),
        ),
        CheckResult::compare("minimal/membership", "every minimal vector has norm -4 and lies in the lattice", v.len(), members),
    ]
}

pub fn identity_checks() -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = catalog::verify_all().iter().map(catalog::as_check).collect();
    out.push(match quartic::normal_form::igusa_chain_symbolic() {
        Ok(()) => CheckResult::compare("identity/igusa_chain", "the two substitutions take the Igusa form to the normal form", "exact", "exact"),
        Err(e) => CheckResult::error("identity/igusa_chain", "the two substitutions take the Igusa form to the normal form", e),
    });
    for k in [4, 8, 16] {
        let f = Gf::binary(k).expect("binary field");
        // the Igusa round trip needs the quadratic extension, so GF(2^16) skips it
        let rt = if k < 16 {
            quartic::round_trip(&f, ROUND_TRIPS, 0xa11ce + k as u64)
        } else {
            quartic::normal_form::round_trip_normal(&f, ROUND_TRIPS, 0xa11ce + k as u64)
        };
        out.push(
            CheckResult::compare(format!("identity/round-trip/GF(2^{k})"), "normal form recovers (a, b, c) after random changes of variables", "0 failures", format!("{} failures", rt.failures.len()))
                .detail(format!("{} trials{}", rt.trials, rt.failures.first().map(|s| format!("; first failure: {s}")).unwrap_or_default())),
        );
    }
    out
}

pub const ROUND_TRIPS: usize = 1000;

fn case_checks(case: CaseId, checks: &[CheckKind], shell6: bool) -> Vec<CheckResult> {
    let build = || -> Result<SurfaceModel> {
        let f = case.fixture()?;
        let faces = chamber::report_for(&f, shell6)?;
        SurfaceModel::assemble(case, f, faces)
    };
    let m = match build() {
        Ok(m) => m,
        Err(e) => return vec![CheckResult::error(format!("{case}/model"), "the case fixture and its chamber faces", e).case(case.as_str())],
    };
    let mut out = Vec::new();
    let mut push = |name: &str, r: Result<Vec<CheckResult>>| match r {
        Ok(v) => out.extend(v),
        Err(e) => out.push(CheckResult::error(format!("{case}/{name}"), name, e).case(case.as_str())),
    };
    for &c in checks {
        match c {
            CheckKind::Faces => {
                push("faces", face_table(&m.faces, &m.fixture, case, shell6));
                push("curve-map", m.check_curves());
                push("faces", m.check_faces());
                push("derived", m.check_derived());
                push("claims", m.check_claims());
            }
            CheckKind::Graphs => push("graphs", m.check_graphs()),
            CheckKind::Ns => push("ns", m.check_ns()),
            CheckKind::Fibrations => push("fibrations", m.check_fibrations()),
            CheckKind::Deltas if case == CaseId::JacobianOrdinary => push("deltas", surface::check_delta_formulas(&m)),
            CheckKind::SixteenSix if case == CaseId::JacobianOrdinary => push("sixteen-six", surface::check_16_6(&m)),
            _ => {}
        }
    }
    out
}

fn show<K: fmt::Display, V: fmt::Display>(m: &BTreeMap<K, V>) -> String {
    if m.is_empty() {
        return "none".into();
    }
    m.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join(", ")
}

/// Counts of orthogonal roots, extension roots and faces against the fixture.
pub fn face_table(rep: &FaceReport, f: &crate::fixture::Fixture, case: CaseId, shell6: bool) -> Result<Vec<CheckResult>> {
    let id = |s: &str| format!("{case}/{s}");
    let mut out = vec![CheckResult::compare(id("orthogonal"), format!("roots orthogonal to the {} basis", f.expected_ade), f.expected_orthogonal, rep.orthogonal.len())];
    let want: BTreeMap<String, usize> = f.expected_extensions.clone().into_iter().collect();
    let complete = chamber::extension_search_complete(&rep.basis, shell6)?;
    out.push(
        CheckResult::compare(id("extensions"), "roots extending the basis to a larger root lattice", show(&want), show(&rep.extension_counts()))
            .detail(if complete { "search space: norm -4 and, where needed, norm -6 Leech vectors".into() } else { "search limited to norm -4 Leech vectors; pass --shell6 to scan norm -6 as well".to_string() }),
    );
    if let Some(c) = &f.expected_counts {
        let want: BTreeMap<String, usize> = c.clone().into_iter().collect();
        out.push(CheckResult::compare(id("face-norms"), "faces counted by norm", show(&want), show(&rep.counts_by_norm)));
    }
    if let Some(t) = &f.expected_tags {
        let tag = |s: crate::fixture::VectorSpec| serde_json::to_value(s).ok().and_then(|v| v["tag"].as_str().map(String::from)).unwrap_or_default();
        let got = count_by(rep.orthogonal.iter().map(|r| tag(describe(r))));
        let want: BTreeMap<String, usize> = t.orthogonal.clone().into_iter().collect();
        out.push(CheckResult::compare(id("orthogonal-kinds"), "orthogonal roots by dictionary kind", show(&want), show(&got)));
        let got = count_by(rep.extension_list().map(|e| tag(describe(&e.root))));
        let want: BTreeMap<String, usize> = t.extension.clone().into_iter().collect();
        out.push(CheckResult::compare(id("extension-kinds"), "extension roots by dictionary kind", show(&want), show(&got)));
    }
    if case == CaseId::JacobianOrdinary {
        let mut by_norm: BTreeMap<String, BTreeMap<i64, usize>> = BTreeMap::new();
        for e in rep.extension_list() {
            *by_norm.entry(crate::lorentz::q_key(e.projection.norm)).or_default().entry(e.projection.multiplier).or_default() += 1;
        }
        let got = by_norm.iter().map(|(n, m)| format!("{n}: x{}", m.keys().map(|k| k.to_string()).collect::<Vec<_>>().join("/"))).collect::<Vec<_>>().join(", ");
        out.push(CheckResult::compare(id("multipliers"), "type (b) and (c) faces need 2 delta, type (d) faces need 4 delta", "-1: x2, -3/4: x4", got));
    }
    if case == CaseId::GenericD4D4 {
        let (even, odd, exact) = chamber::permutation_split(rep)?;
        out.push(CheckResult::verdict(
            id("permutations"),
            "extension roots are lines for even and ovals for odd permutations of F4",
            exact && even == 12 && odd == 12,
            "12 even lines + 12 odd ovals, exactly the extension roots",
            format!("{even} even lines + {odd} odd ovals{}", if exact { ", exactly the extension roots" } else { ", not the extension roots" }),
        ));
    }
    Ok(out.into_iter().map(|c| c.case(case.as_str())).collect())
}
