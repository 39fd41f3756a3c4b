//! Randomized property suites; `cargo test -p k3leech --test properties`.

mod common;

use std::sync::OnceLock;

use common::*;
use k3leech::chamber::{standard_basis, CaseId};
use k3leech::leech::{minimal_shell, LatticeBasis};
use k3leech::lorentz::{leech_root, Class};
use k3leech::quartic::catalog::{ORDINARY, PRANK1};
use k3leech::quartic::{Poly, Ring};
use proptest::prelude::*;

fn basis() -> &'static LatticeBasis {
    static B: OnceLock<LatticeBasis> = OnceLock::new();
    B.get_or_init(LatticeBasis::from_generators)
}

fn case_bases() -> &'static Vec<Vec<Class>> {
    static B: OnceLock<Vec<Vec<Class>>> = OnceLock::new();
    B.get_or_init(|| CaseId::ALL.iter().map(|&c| standard_basis(c).unwrap().roots.iter().map(|r| r.class()).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn leech_root_pairing_law(i in 0usize..196_560, j in 0usize..196_560) {
        let v = minimal_shell().vectors();
        prop_assert!(pairing_law(&v[i], &v[j]).is_ok(), "{:?}", pairing_law(&v[i], &v[j]));
    }

    #[test]
    fn lattice_vectors_are_even_and_never_roots(coeffs in prop::collection::vec(-3i64..=3, 24)) {
        let v = combination(basis(), &coeffs);
        prop_assert!(even_without_roots(&v).is_ok(), "{:?}", even_without_roots(&v));
    }

    #[test]
    fn ade_determinant_law(kinds in prop::collection::vec((0u8..3, 0usize..8), 1..4), seed in any::<u64>()) {
        let parts: Vec<_> = kinds.iter().map(|&(k, n)| dynkin_from(k, n)).collect();
        let n: usize = parts.iter().map(|d| d.rank()).sum();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert!(ade_law(&parts, &perm).is_ok(), "{:?}", ade_law(&parts, &perm));
    }

    #[test]
    fn projections_are_orthogonal(case in 0usize..9, i in 0usize..196_560) {
        let r = leech_root(minimal_shell().vectors()[i]).unwrap().class();
        let b = &case_bases()[case];
        prop_assert!(projection_orthogonal(&r, b).is_ok());
    }

    #[test]
    fn frobenius_is_additive(which in 0usize..2, v in 0usize..4, g in "[xyzw]\\*[xyzw]( \\+ [xyzw])?") {
        let (vars, text): (&[&str], &str) = if which == 0 {
            (&["x", "y", "z", "w", "sa", "sb", "sc"], ORDINARY)
        } else {
            (&["x", "y", "z", "w", "al", "be"], PRANK1)
        };
        let r = Ring::new(2, vars);
        let f = Poly::parse(&r, text).unwrap();
        let g = Poly::parse(&r, &g).unwrap();
        prop_assert!(frobenius_linear(&f, ["x", "y", "z", "w"][v], &g).is_ok());
    }

    #[test]
    fn squaring_is_additive_in_characteristic_two(a in "[xy](\\*[xy])?", b in "[xy](\\*[xy])?( \\+ 1)?") {
        let r = Ring::new(2, &["x", "y"]);
        let (f, g) = (Poly::parse(&r, &a).unwrap(), Poly::parse(&r, &b).unwrap());
        prop_assert_eq!((&f + &g).pow(2), &f.pow(2) + &g.pow(2));
    }
}

#[test]
fn the_minimal_shell_has_no_roots() {
    assert!(minimal_shell().vectors().iter().all(|v| v.sq() == 32));
}

#[test]
fn octads_meet_in_zero_two_or_four() {
    let o = k3leech::mog::steiner().octads();
    for (i, a) in o.iter().enumerate() {
        for b in &o[i + 1..] {
            assert!(matches!((a & b).count_ones(), 0 | 2 | 4));
        }
    }
}

#[test]
fn minimal_differences_have_the_listed_norms() {
    let v = minimal_shell().vectors();
    let allowed = [0, -4, -6, -8, -10, -12, -16];
    for i in (0..v.len()).step_by(997) {
        for j in (0..v.len()).step_by(1009) {
            let n = (v[i] - v[j]).norm();
            assert!(n.is_integer() && allowed.contains(&n.to_integer()), "{n}");
        }
    }
}
