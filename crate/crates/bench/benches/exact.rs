use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qdiff_bench::diagonals;
use qdiff_core::homology::{hexagon_check, random_nilpotent_complex};
use qdiff_core::{
    attach, cohomology_table, envelope_abstract, fixtures, inner_differential, q_factorial, tensor_calculus,
    BilinearProduct, CochainAlgebra, QMode, Scalar, Values, Variant,
};

fn scalars(c: &mut Criterion) {
    // q_binomial is memoized, so time the uncached products and inverses
    let mut g = c.benchmark_group("scalars");
    for mode in [QMode::Generic, QMode::RootOfUnity(7)] {
        g.bench_with_input(BenchmarkId::new("q_factorial 12", mode), &mode, |b, &mode| {
            b.iter(|| q_factorial(black_box(12), mode))
        });
        let x = &q_factorial(6, mode) - &Scalar::q_pow(3, mode);
        g.bench_with_input(BenchmarkId::new("inverse", mode), &x, |b, x| b.iter(|| black_box(x).inv()));
    }
    g.finish();
}

fn envelopes(c: &mut Criterion) {
    let mut g = c.benchmark_group("envelope");
    g.sample_size(10);
    let mode = QMode::RootOfUnity(3);
    let [c2, c3] = diagonals(mode);
    g.bench_function("abstract C^2 N=3 deg 5", |b| b.iter(|| envelope_abstract(&c2, 5, mode).unwrap()));
    g.bench_function("abstract C^3 N=3 deg 4", |b| b.iter(|| envelope_abstract(&c3, 4, mode).unwrap()));
    g.bench_function("tensor calculus C^2 N=3 deg 6", |b| {
        b.iter(|| tensor_calculus(&c2, 6, mode, Variant::D).unwrap())
    });
    g.finish();
}

fn cohomology(c: &mut Criterion) {
    let mut g = c.benchmark_group("cohomology");
    g.sample_size(10);
    let mode = QMode::RootOfUnity(3);
    let m3 = fixtures::matrix_units(3, mode);
    let e = fixtures::cyclic_shift(3, &[1, 2, 3], mode);
    let view = inner_differential(&m3, &e, 8).unwrap().complex_view().unwrap();
    g.bench_function("p*M3 table window 8", |b| b.iter(|| cohomology_table(&view)));

    let p = BilinearProduct::from_algebra(&fixtures::dual_numbers(mode)).unwrap();
    g.bench_function("Hochschild dual numbers window 6", |b| {
        b.iter(|| {
            let cochains = CochainAlgebra::new(p.clone(), Values::Algebra, 6);
            let d = cochains.delta_q_map().unwrap();
            cohomology_table(&attach(cochains, d, mode).unwrap().complex_view().unwrap())
        })
    });

    let (random, _) = random_nilpotent_complex(5, 10, 40, 7, QMode::RootOfUnity(5));
    g.bench_function("hexagon (1,2) random N=5", |b| b.iter(|| hexagon_check(&random, 1, 2).unwrap()));
    g.finish();
}

criterion_group!(benches, scalars, envelopes, cohomology);
criterion_main!(benches);
