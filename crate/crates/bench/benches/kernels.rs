use criterion::{black_box, criterion_group, criterion_main, Criterion};

use outfn_core::exactla::{FiniteRep, RationalMatrix};
use outfn_core::exactla::eps_decomposition;
use outfn_core::glrep::{check_not_factoring, induce, psi, verify_closed_formulas, Mu};
use outfn_core::graphact::{builtin_action, Graph};
use outfn_core::word::{verify_gersten, Automorphism};

fn word_kernels(c: &mut Criterion) {
    c.bench_function("gersten n=4", |b| b.iter(|| verify_gersten(black_box(4)).unwrap()));
    let g = Automorphism::rho(5, 1, 5).unwrap().compose(&Automorphism::lambda(5, 1, 5).unwrap().inverse()).unwrap();
    c.bench_function("psi n=5", |b| b.iter(|| psi(black_box(&g)).unwrap()));
}

fn linear_algebra(c: &mut Criterion) {
    let rows: Vec<Vec<i64>> = (0..12).map(|i| (0..12).map(|j| ((i * 7 + j * 3) % 11) as i64 - 5).collect()).collect();
    let m = RationalMatrix::from_i64_rows(&rows);
    c.bench_function("kernel 12x12", |b| b.iter(|| black_box(&m).kernel_basis()));
    c.bench_function("inverse 12x12", |b| b.iter(|| black_box(&m).inverse()));
    let rep = FiniteRep::abelianization(5).unwrap().exterior_square().unwrap();
    c.bench_function("eps decomposition out5 ext2", |b| b.iter(|| eps_decomposition(black_box(&rep), 5).unwrap()));
}

fn glrep_kernels(c: &mut Criterion) {
    c.bench_function("section4 n=4", |b| b.iter(|| verify_closed_formulas(black_box(4)).unwrap()));
    let mut group = c.benchmark_group("induce");
    group.sample_size(10);
    group.bench_function("induce n=3", |b| b.iter(|| induce(black_box(3), Mu::Symmetric).unwrap()));
    let rep = induce(4, Mu::Exterior).unwrap();
    group.bench_function("relators n=4", |b| b.iter(|| black_box(&rep).check_relators().unwrap()));
    group.bench_function("certificate n=4", |b| b.iter(|| check_not_factoring(black_box(&rep)).unwrap()));
    group.finish();
}

fn graph_kernels(c: &mut Criterion) {
    let cover = Graph::cover_of_rose(6).unwrap();
    c.bench_function("h1 basis cover:6", |b| b.iter(|| black_box(&cover).h1_basis()));
    let action = builtin_action("cage:7", "G6").unwrap();
    c.bench_function("homology rep cage:7 G6", |b| b.iter(|| black_box(&action).homology_rep().unwrap()));
}

criterion_group!(benches, word_kernels, linear_algebra, glrep_kernels, graph_kernels);
criterion_main!(benches);
