use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use syncmdp::afa::{emptiness, pre_sequence};
use syncmdp::fixtures;
use syncmdp::oracle::oracle_sure;
use syncmdp::random::{random_afa, random_mdp};
use syncmdp::reach::iterate_pre;
use syncmdp::strategy::{symbolic_outcome, synth_sure_eventually};
use syncmdp::{decide_support, Distribution, FnKind, Limits, StateSet, SyncMode, WinMode};

fn pre_sequences(c: &mut Criterion) {
    let l = Limits::default();
    let mut g = c.benchmark_group("pre_sequence");
    for n in [2, 3, 4] {
        let m = fixtures::fig4(n);
        let t = m.set_of(&["q_T"]).unwrap();
        g.bench_with_input(BenchmarkId::new("fig4", n), &m, |b, m| b.iter(|| iterate_pre(m, &t, &l).unwrap()));
    }
    for n in [6, 10, 14] {
        let a = random_afa(n as u64, n, 3, 2).unwrap();
        g.bench_with_input(BenchmarkId::new("random_afa", n), &a, |b, a| {
            b.iter(|| (pre_sequence(a, &l).unwrap(), emptiness(a, 0, &l).unwrap()))
        });
    }
    g.finish();
}

fn deciders(c: &mut Criterion) {
    let l = Limits::default();
    let mut g = c.benchmark_group("decide");
    // almost-sure eventually and the oracle are exponential in the state count
    for n in [6, 8, 10] {
        let m = random_mdp(n as u64, n, 3, 2).unwrap();
        let init = StateSet::singleton(n, 0);
        let t = StateSet::from_states(n, [1, 2]);
        for (sync, mode) in [
            (SyncMode::Eventually, WinMode::LimitSure),
            (SyncMode::Eventually, WinMode::AlmostSure),
            (SyncMode::Weakly, WinMode::AlmostSure),
            (SyncMode::Strongly, WinMode::AlmostSure),
        ] {
            let id = BenchmarkId::new(format!("{mode}-{sync}"), n);
            g.bench_with_input(id, &m, |b, m| {
                b.iter(|| decide_support(m, sync, mode, FnKind::Sum, &init, &t, &l).unwrap())
            });
        }
        g.bench_with_input(BenchmarkId::new("oracle-sure-weakly", n), &m, |b, m| {
            b.iter(|| oracle_sure(m, 0, &t, SyncMode::Weakly, FnKind::Sum, l.support_graph_cap).unwrap())
        });
    }
    g.finish();
}

fn strategies(c: &mut Criterion) {
    let l = Limits::default();
    let m = fixtures::fig4(3);
    let q0 = m.state("q_init").unwrap();
    let t = m.set_of(&["q_T"]).unwrap();
    let init = StateSet::singleton(m.num_states(), q0);
    c.bench_function("synth_sure_eventually/fig4_3", |b| b.iter(|| synth_sure_eventually(&m, &init, &t, &l).unwrap()));
    let (s, n) = synth_sure_eventually(&m, &init, &t, &l).unwrap();
    let d0 = Distribution::dirac(m.num_states(), q0);
    c.bench_function("symbolic_outcome/fig4_3", |b| b.iter(|| symbolic_outcome(&m, &d0, &s, n, &l).unwrap()));
}

criterion_group!(benches, pre_sequences, deciders, strategies);
criterion_main!(benches);
