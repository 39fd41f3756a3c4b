use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use k3leech::chamber::{self, CaseId};
use k3leech::leech::{minimal_shell, MinimalShell};
use k3leech::lorentz::{ade_type, Dynkin};
use k3leech::mog::SteinerSystem;
use k3leech::quartic::{self, normal_form, Gf};

fn steiner(c: &mut Criterion) {
    c.bench_function("steiner system", |b| b.iter(|| SteinerSystem::build().unwrap()));
}

fn shell(c: &mut Criterion) {
    let mut g = c.benchmark_group("minimal shell");
    g.sample_size(10);
    g.bench_function("enumerate", |b| b.iter(MinimalShell::enumerate));
    let v = minimal_shell().vectors()[12345];
    g.bench_function("lookup", |b| b.iter(|| minimal_shell().contains(black_box(&v))));
    g.finish();
}

fn chamber(c: &mut Criterion) {
    minimal_shell();
    let mut g = c.benchmark_group("chamber");
    g.sample_size(10);
    for case in [CaseId::GenericD4, CaseId::JacobianOrdinary, CaseId::ProductEeOrdinary] {
        g.bench_function(case.as_str(), |b| b.iter(|| chamber::face_report(case, false).unwrap()));
    }
    g.finish();
}

fn ade(c: &mut Criterion) {
    let g = Dynkin::E(8).gram();
    c.bench_function("recognize E8", |b| b.iter(|| ade_type(black_box(&g)).unwrap()));
}

fn quartics(c: &mut Criterion) {
    let mut g = c.benchmark_group("quartic");
    g.sample_size(10);
    g.bench_function("cremona identity", |b| b.iter(|| quartic::verify_identity("cremona_ordinary").unwrap()));
    let f = Gf::binary(8).unwrap();
    let f6 = [3, 5, 7, 11, 13, 17, 19];
    g.bench_function("normal form GF(2^8)", |b| b.iter(|| normal_form(&f, black_box(&f6))));
    g.finish();
}

criterion_group!(benches, steiner, shell, chamber, ade, quartics);
criterion_main!(benches);
