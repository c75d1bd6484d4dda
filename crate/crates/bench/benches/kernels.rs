use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mpcodes::format::parse_mp;
use mpcodes::{DistanceConfig, Field, Matrix, MpCode};

fn fixture(name: &str) -> MpCode {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/");
    parse_mp(&std::fs::read_to_string(format!("{path}{name}")).unwrap())
        .unwrap()
        .mp
}

fn field_ops(c: &mut Criterion) {
    // x^17 + x^3 + 1: too large for the lookup tables
    let mut big = vec![0u32; 18];
    big[0] = 1;
    big[3] = 1;
    big[17] = 1;
    let fields = [
        Field::of_order(8).unwrap(),
        Field::of_order(32).unwrap(),
        Field::with_modulus(2, 17, &big).unwrap(),
    ];
    for f in fields {
        let q = f.order();
        let a = f.elem(q - 3).unwrap();
        let b = f.elem(q / 2 + 1).unwrap();
        c.bench_function(&format!("mul q={q}"), |bench| {
            bench.iter(|| f.mul(black_box(a), black_box(b)))
        });
        c.bench_function(&format!("inv q={q}"), |bench| {
            bench.iter(|| f.inv(black_box(a)))
        });
    }
}

fn linear_algebra(c: &mut Criterion) {
    let mp = fixture("f8_galois_dual.mp");
    let g = mp.generator();
    c.bench_function("rref 9x50 GF(8)", |b| b.iter(|| black_box(&g).rref()));
    let h = mp.expand().parity_check();
    c.bench_function("kernel 41x50 GF(8)", |b| {
        b.iter(|| black_box(&h).kernel_basis())
    });
    let f = Field::of_order(9).unwrap();
    let a =
        Matrix::from_tokens(&f, &["0 a 0 0", "1 1 a^3 a^2", "a 2 a^7 0", "1 0 a^2 a^2"]).unwrap();
    c.bench_function("inverse 4x4 GF(9)", |b| b.iter(|| black_box(&a).inverse()));
}

fn mp_kernels(c: &mut Criterion) {
    let mp = fixture("f8_galois_dual.mp");
    c.bench_function("expand [50,9] GF(8)", |b| {
        b.iter(|| black_box(&mp).expand())
    });
    c.bench_function("full-rank dual [50,41] GF(8)", |b| {
        b.iter(|| black_box(&mp).dual_full_rank(2))
    });
    let rd = fixture("f4_rank_deficient.mp");
    c.bench_function("partition dual [24,4] GF(4)", |b| {
        b.iter(|| black_box(&rd).dual_general(0))
    });
    let so = fixture("f4_so_5x3.mp");
    c.bench_function("self-orthogonality check 5x3", |b| {
        b.iter(|| black_box(&so).check_self_orthogonal(1))
    });
}

fn distance(c: &mut Criterion) {
    let cfg = DistanceConfig::default();
    let mut group = c.benchmark_group("distance");
    group.sample_size(10);
    let enumerated = fixture("f5_dc_3x4.mp").expand();
    group.bench_function("enumeration [20,11] GF(5)", |b| {
        b.iter(|| enumerated.min_distance(&cfg))
    });
    let low = fixture("f8_galois_dual.mp").dual(2).unwrap();
    group.bench_function("low-weight [50,41] GF(8)", |b| {
        b.iter(|| low.min_distance(&cfg))
    });
    group.finish();
}

criterion_group!(benches, field_ops, linear_algebra, mp_kernels, distance);
criterion_main!(benches);
