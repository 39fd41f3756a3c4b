use std::collections::BTreeMap;

use k3leech::chamber::{describe, face_report, CaseId};
use k3leech::lorentz::{q_key, Q};

fn tag(s: &k3leech::fixture::VectorSpec) -> String {
    serde_json::to_value(s).unwrap()["tag"].as_str().unwrap().to_string()
}

#[test]
fn every_case_matches_its_fixture() {
    for case in CaseId::ALL {
        let f = case.fixture().unwrap();
        let rep = face_report(case, false).unwrap();
        assert_eq!(rep.orthogonal.len(), f.expected_orthogonal, "{case}");
        let want: BTreeMap<String, usize> = f.expected_extensions.clone().into_iter().collect();
        assert_eq!(rep.extension_counts(), want, "{case}");
        if let Some(c) = &f.expected_counts {
            let want: BTreeMap<String, usize> = c.clone().into_iter().collect();
            assert_eq!(rep.counts_by_norm, want, "{case}");
        }
        if let Some(t) = &f.expected_tags {
            let got: BTreeMap<String, usize> = k3leech::lorentz::count_by(rep.orthogonal.iter().map(|r| tag(&describe(r))));
            assert_eq!(got, t.orthogonal.clone().into_iter().collect(), "{case}");
            let got: BTreeMap<String, usize> = k3leech::lorentz::count_by(rep.extension_list().map(|e| tag(&describe(&e.root))));
            assert_eq!(got, t.extension.clone().into_iter().collect(), "{case}");
        }
    }
}

#[test]
fn face_norms_lie_strictly_between_minus_two_and_zero() {
    for case in CaseId::ALL {
        let rep = face_report(case, false).unwrap();
        for e in rep.extension_list() {
            assert!(e.projection.norm > Q::from_integer(-2) && e.projection.norm < Q::from_integer(0), "{case}");
            for a in &rep.basis.roots {
                assert_eq!(e.projection.delta.pair(&a.class()), Q::from_integer(0));
            }
        }
    }
}

#[test]
fn jacobian_multipliers() {
    let rep = face_report(CaseId::JacobianOrdinary, false).unwrap();
    for e in rep.extension_list() {
        let want = if q_key(e.projection.norm) == "-3/4" { 4 } else { 2 };
        assert_eq!(e.projection.multiplier, want);
    }
    assert_eq!(rep.total_faces(), 38);
}
