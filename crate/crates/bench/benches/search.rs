use criterion::{criterion_group, criterion_main, Criterion};
use minsupp_core::search::exists_with_support_at_most;
use minsupp_core::{find_minimum, EigenRange, SearchBudget};

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("minimum/n3q3_u2", |b| {
        b.iter(|| find_minimum(3, 3, EigenRange::single(2), &SearchBudget::new(6)).unwrap())
    });
    group.bench_function("exhaust/n3q3_u01_s8", |b| {
        b.iter(|| {
            exists_with_support_at_most(
                3,
                3,
                EigenRange::new(0, 1).unwrap(),
                8,
                &SearchBudget::new(8),
            )
            .unwrap()
        })
    });
    group.bench_function("exhaust/n2q5_u1_s7", |b| {
        b.iter(|| {
            exists_with_support_at_most(2, 5, EigenRange::single(1), 7, &SearchBudget::new(7))
                .unwrap()
        })
    });
    let unpruned = SearchBudget {
        symmetry_pruning: false,
        ..SearchBudget::new(5)
    };
    group.bench_function("exhaust_unpruned/n2q4_u1_s5", |b| {
        b.iter(|| exists_with_support_at_most(2, 4, EigenRange::single(1), 5, &unpruned).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_search);
criterion_main!(benches);
