use k3leech::chamber::CaseId;
use k3leech::report::CheckResult;
use k3leech::surface::{check_16_6, check_delta_formulas, check_kkm_restriction, SurfaceModel};

fn assert_all(checks: &[CheckResult]) {
    let bad: Vec<&CheckResult> = checks.iter().filter(|c| !c.passed()).collect();
    assert!(bad.is_empty(), "{:#?}", bad);
}

#[test]
fn every_fixture_check_passes() {
    for case in CaseId::ALL {
        let m = SurfaceModel::load(case).unwrap();
        let checks = m.check_all();
        for c in &checks {
            eprintln!("{:?} {} | {} | {}", c.status, c.id, c.expected, c.actual);
        }
        assert_all(&checks);
    }
}

#[test]
fn jacobian_formulas_and_sixteen_six() {
    let m = SurfaceModel::load(CaseId::JacobianOrdinary).unwrap();
    let d = check_delta_formulas(&m).unwrap();
    assert_eq!(d.len(), 4);
    assert_all(&d);
    assert_all(&check_16_6(&m).unwrap());
}

#[test]
fn kkm_restriction() {
    assert_all(&check_kkm_restriction().unwrap());
}
