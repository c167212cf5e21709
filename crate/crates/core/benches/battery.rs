use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use isym::exactq::{Rat, RatFunc};
use isym::grouplab::Sl2Lab;
use isym::iqg::IParameters;
use isym::parallel::ExecMode;
use isym::satake::catalog_entry;
use isym::uq::{battery_with, check_serre_with, BatteryConfig, Rhs4};

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn battery_build(c: &mut Criterion) {
    let d = catalog_entry("A2-split").unwrap();
    let mut g = c.benchmark_group("battery build A2 q=1");
    g.sample_size(10);
    for (name, mode) in MODES {
        let cfg = BatteryConfig {
            mode,
            ..BatteryConfig::depth(2)
        };
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| battery_with::<Rat>(d.datum(), &cfg).unwrap())
        });
    }
    g.finish();
}

fn serre(c: &mut Criterion) {
    let d = catalog_entry("A2-split").unwrap();
    let battery = battery_with::<RatFunc>(d.datum(), &BatteryConfig::depth(1)).unwrap().modules;
    let mut g = c.benchmark_group("relations A2 generic q");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_serre_with(d.datum(), &battery, Rhs4::Standard, mode))
        });
    }
    g.finish();
}

fn sl2_enumeration(c: &mut Criterion) {
    let d = catalog_entry("SL2-split").unwrap();
    let lab = Sl2Lab::new(&d, &IParameters::default_for(&d), 11).unwrap();
    let mut g = c.benchmark_group("SL2(F_11) fixed points");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let group = lab.enumerate(mode);
                lab.fixed_points(&group, mode).elements.len()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, battery_build, serre, sl2_enumeration);
criterion_main!(benches);
