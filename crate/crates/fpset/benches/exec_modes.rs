//! Parallel versus sequential execution on the data-parallel hot paths.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fpset::classify::all_fps;
use fpset::fps::broue_oracle;
use fpset::group::{subgroups_up_to_conjugacy, sylow_sym};
use fpset::{Caps, Exec, GroupHandle, Point};

const MODES: [(&str, Exec); 2] = [
    ("parallel", Exec::Parallel),
    ("sequential", Exec::Sequential),
];

fn caps(exec: Exec) -> Caps {
    Caps {
        exec,
        ..Caps::default()
    }
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    for (p, q, n) in [(2, 2, 3), (3, 2, 3), (2, 2, 4)] {
        for (name, exec) in MODES {
            let id = BenchmarkId::new(name, format!("p{p}_q{q}_n{n}"));
            g.bench_function(id, |b| {
                b.iter(|| broue_oracle(black_box(p), q, n, &caps(exec)).unwrap())
            });
        }
    }
    g.finish();
}

fn subgroup_classes(c: &mut Criterion) {
    let mut g = c.benchmark_group("subgroup_classes");
    g.sample_size(10);
    for (deg, p) in [(6u32, 2u32), (8, 2), (6, 3)] {
        let sylow = sylow_sym(deg, p);
        let domain: Vec<Point> = (1..=deg).collect();
        let sym = GroupHandle::symmetric(&domain);
        for (name, exec) in MODES {
            let id = BenchmarkId::new(name, format!("S{deg}_p{p}"));
            g.bench_function(id, |b| {
                b.iter(|| subgroups_up_to_conjugacy(&sylow, &sym, 1_000_000, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    for (p, q, d) in [(2usize, 2usize, 8usize), (3, 3, 6)] {
        for (name, exec) in MODES {
            let id = BenchmarkId::new(name, format!("p{p}_q{q}_deg{d}"));
            g.bench_function(id, |b| {
                b.iter(|| all_fps(p as u32, q, d, &caps(exec)).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, oracle, subgroup_classes, classification);
criterion_main!(benches);
