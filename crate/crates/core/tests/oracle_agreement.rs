use syncmdp::oracle::oracle_sure;
use syncmdp::random::random_corpus_mdp;
use syncmdp::{decide_support, FnKind, Limits, StateSet, SyncMode, WinMode};

fn targets(n: usize) -> Vec<StateSet> {
    let mut out: Vec<StateSet> = (0..n).map(|q| StateSet::singleton(n, q)).collect();
    for a in 0..n {
        for b in a + 1..n {
            out.push(StateSet::from_states(n, [a, b]));
        }
    }
    out
}

#[test]
fn sure_mode_matches_support_graph() {
    let l = Limits::default();
    for seed in 0..500 {
        let m = random_corpus_mdp(seed, 6, 3, 3).unwrap();
        let n = m.num_states();
        for t in targets(n) {
            for q in 0..n {
                let init = StateSet::singleton(n, q);
                for sync in SyncMode::ALL {
                    for kind in [FnKind::Sum, FnKind::Max] {
                        let d = decide_support(&m, sync, WinMode::Sure, kind, &init, &t, &l).unwrap();
                        let o = oracle_sure(&m, q, &t, sync, kind, l.support_graph_cap).unwrap();
                        assert_eq!(d.answer, o, "seed {seed} {sync} {kind} from {q} target {t:?}");
                    }
                }
            }
        }
    }
}
