use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use relconv::algebra::finite_quantale;
use relconv::conv::{check_lifting, LiftMode, LiftOptions};
use relconv::interval::{segment_monoid, FinPoset};
use relconv::relstruct::rel_of_psg;
use relconv::Exec;

fn lifting_sweep(c: &mut Criterion) {
    let q = finite_quantale("chain4").unwrap();
    let mut group = c.benchmark_group("check_lifting");
    group.sample_size(10);
    for n in [2, 3, 4] {
        let m = rel_of_psg(&segment_monoid(&FinPoset::chain(n), false)).unwrap();
        for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            let opts = LiftOptions { exec, ..LiftOptions::default() };
            group.bench_with_input(BenchmarkId::new(label, format!("fusion 0..{n}")), &m, |b, m| {
                b.iter(|| black_box(check_lifting(m, &q, LiftMode::Unital, &opts).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, lifting_sweep);
criterion_main!(benches);
