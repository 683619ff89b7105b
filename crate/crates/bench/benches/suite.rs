use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use fermata_core::moduli::syz_pipeline;
use fermata_core::sdr::SdrComplex;
use fermata_core::{
    sample_fermat_points, Field, GaussianRational, Quiver, StabilityFunction, ThinRep, C64,
};

fn qi(s: &str) -> GaussianRational {
    <GaussianRational as Field>::parse(s).unwrap()
}

fn quiver_construction(c: &mut Criterion) {
    c.bench_function("tensor_quiver_n4", |b| {
        b.iter(|| Quiver::tensor_power(4).unwrap())
    });
    c.bench_function("tensor_quiver_n5", |b| {
        b.iter(|| Quiver::tensor_power(5).unwrap())
    });
    c.bench_function("beilinson_quiver_n6", |b| {
        b.iter(|| Quiver::beilinson(6).unwrap())
    });
}

fn stability_verdict(c: &mut Criterion) {
    let q = Arc::new(Quiver::beilinson(5).unwrap());
    let coords: Vec<GaussianRational> = ["1", "2", "-1", "3", "i"].iter().map(|s| qi(s)).collect();
    let rep = ThinRep::from_point(q, &coords).unwrap();
    let z = StabilityFunction::standard(5).unwrap();
    c.bench_function("thin_stability_verdict_n5", |b| {
        b.iter(|| z.is_stable(&rep).unwrap())
    });
    let zm = z.mirror();
    c.bench_function("mirror_stability_verdict_n5", |b| {
        b.iter(|| zm.is_stable(&rep).unwrap())
    });
}

fn sdr_differentials(c: &mut Criterion) {
    let q = Arc::new(Quiver::beilinson(4).unwrap());
    let coords: Vec<GaussianRational> = ["1", "-1", "2", "i"].iter().map(|s| qi(s)).collect();
    let rep = ThinRep::from_point(q, &coords).unwrap();
    c.bench_function("sdr_build_and_check_n4", |b| {
        b.iter(|| {
            let cx = SdrComplex::from_rep_unchecked(rep.rep()).unwrap();
            cx.check().unwrap();
        })
    });
}

fn full_pipeline(c: &mut Criterion) {
    let z3 = StabilityFunction::standard(3).unwrap();
    let pts_qi = sample_fermat_points::<GaussianRational>(3, 3, 7).unwrap();
    c.bench_function("pipeline_n3_exact", |b| {
        b.iter(|| syz_pipeline(3, &z3, &pts_qi, "bench", Some(7)).unwrap())
    });
    let z4 = StabilityFunction::standard(4).unwrap();
    let pts_c = sample_fermat_points::<C64>(4, 8, 7).unwrap();
    c.bench_function("pipeline_n4_numeric", |b| {
        b.iter(|| syz_pipeline(4, &z4, &pts_c, "bench", Some(7)).unwrap())
    });
}

criterion_group!(
    benches,
    quiver_construction,
    stability_verdict,
    sdr_differentials,
    full_pipeline
);
criterion_main!(benches);
