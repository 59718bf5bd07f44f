use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gupdelta_core::laplace_table::TableEntry;
use gupdelta_core::numerics::{laplace_forward, talbot_inverse, Quadratures, TalbotSpec};
use gupdelta_core::report::{run_suite, Suite};
use num_complex::Complex64;

fn transforms(c: &mut Criterion) {
    let quad = Quadratures::default();
    let spec = TalbotSpec::default();
    c.bench_function("laplace_forward/table-entry-1", |b| {
        b.iter(|| laplace_forward(|t| TableEntry::Plain.time_domain(1.0, 0.5, t), black_box(1.0), &quad).unwrap())
    });
    c.bench_function("talbot_inverse/table-entry-1", |b| {
        b.iter(|| {
            talbot_inverse(
                |s: Complex64| TableEntry::Plain.transform(1.0, 0.5, s),
                black_box(1.0),
                &spec,
            )
            .unwrap()
        })
    });
    let cfg = gupdelta_bench::config();
    c.bench_function("suite/laplace-table", |b| b.iter(|| run_suite(Suite::LaplaceTable, &cfg)));
}

criterion_group!(benches, transforms);
criterion_main!(benches);
