use affine_descent::affine::AffineWeyl;
use affine_descent::gkm::{self, HbarMode, MomentGraph};
use affine_descent::par;
use affine_descent::rational::{random_vector, RationalVector};
use affine_descent::rootdata::Isogeny;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn stabilizer_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("stabilizer_sweep");
    for label in ["A2", "G2"] {
        let aw = AffineWeyl::from_label(label, Isogeny::Adjoint).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let points: Vec<RationalVector> = (0..200).map(|_| random_vector(&mut rng, aw.rank(), 12)).collect();
        let zero = RationalVector::zero(aw.rank());
        let orders = |x: &RationalVector| aw.stabilizer(x, &zero).unwrap().order();
        group.bench_with_input(BenchmarkId::new("parallel", label), &points, |b, p| b.iter(|| par::map(p, orders)));
        group.bench_with_input(BenchmarkId::new("sequential", label), &points, |b, p| {
            b.iter(|| par::map_sequential(p, orders))
        });
    }
    group.finish();
}

fn section_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("section_sweep");
    group.sample_size(10);
    let aw = AffineWeyl::from_label("A2", Isogeny::Adjoint).unwrap();
    let graphs: Vec<MomentGraph> = ["s0s1", "s1s2", "s2s0", "s0s1s2"]
        .iter()
        .map(|w| MomentGraph::interval(&aw, &aw.parse(w).unwrap()).unwrap())
        .collect();
    let dims = |g: &MomentGraph| gkm::section_space(g, 4, HbarMode::Formal).dims();
    group.bench_function("parallel", |b| b.iter(|| par::map(&graphs, dims)));
    group.bench_function("sequential", |b| b.iter(|| par::map_sequential(&graphs, dims)));
    group.finish();
}

criterion_group!(benches, stabilizer_sweep, section_sweep);
criterion_main!(benches);
