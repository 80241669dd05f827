//! Weakly synchronizing: sure and almost-sure (limit-sure coincides with almost-sure).

use crate::error::{Error, Result};
use crate::eventually::{search_support, support_region, LimitAnalysis};
use crate::limits::Limits;
use crate::model::Mdp;
use crate::oracle::support_graph;
use crate::reach::{iterate_pre, pre};
use crate::set::StateSet;
use crate::verdict::{Decision, Witness};

fn pre_n(m: &Mdp, s: &StateSet, n: usize) -> StateSet {
    (0..n).fold(s.clone(), |acc, _| pre(m, &acc))
}

/// Largest `S ⊆ t` with `S ⊆ Pre^n(S)`.
pub fn recurrent_core(m: &Mdp, t: &StateSet, n: usize) -> StateSet {
    let mut x = t.clone();
    loop {
        let y = t.intersection(&pre_n(m, &x, n));
        if y == x {
            return x;
        }
        x = y;
    }
}

fn period_bound(m: &Mdp, limits: &Limits) -> (usize, bool) {
    let full = if m.num_states() >= 63 { usize::MAX } else { 1usize << m.num_states() };
    (full.min(limits.weakly_period_cap), full > limits.weakly_period_cap)
}

/// Candidate sets `S_n` in increasing `n`, with their predecessor sequences.
fn for_each_core(
    m: &Mdp,
    t: &StateSet,
    limits: &Limits,
    mut visit: impl FnMut(usize, &StateSet, &[StateSet]) -> Option<Witness>,
) -> Result<Option<Witness>> {
    let (bound, _) = period_bound(m, limits);
    for n in 1..=bound {
        let s = recurrent_core(m, t, n);
        if s.is_empty() {
            continue;
        }
        let seq = iterate_pre(m, &s, limits)?;
        if let Some(w) = visit(n, &s, &seq.items) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Sure weakly synchronizing in `t`: some `S ⊆ t` with `S ⊆ Pre^n(S)`, `n ≥ 1`,
/// and `init ⊆ Pre^m(S)`. Smallest `n` first, then smallest `m`.
///
/// Periods up to `2^|Q|` may be needed. When that exceeds the period cap and no
/// smaller period works, the answer comes from [`sure_weakly_forward`].
pub fn sure_weakly(m: &Mdp, init: &StateSet, t: &StateSet, limits: &Limits) -> Result<Decision> {
    let found = for_each_core(m, t, limits, |n, s, seq| {
        seq.iter().position(|x| init.is_subset(x)).map(|reach| Witness::Recurrent { set: s.clone(), reach, period: n })
    })?;
    if found.is_none() && period_bound(m, limits).1 {
        return sure_weakly_forward(m, init, t, limits);
    }
    Ok(Decision::from_option(found))
}

/// Büchi search over the supports reachable from `init`: some support inside `t`
/// is reachable and lies on a cycle. The witness set is that support, `reach` its
/// distance from `init` and `period` the shortest cycle through it.
pub fn sure_weakly_forward(m: &Mdp, init: &StateSet, t: &StateSet, limits: &Limits) -> Result<Decision> {
    let g = support_graph(m, init, limits.support_graph_cap)?;
    let dist = distances(&g.edges, &g.edges[0..0], 0);
    let mut good: Vec<usize> = (0..g.nodes.len()).filter(|&i| dist[i].is_some() && g.nodes[i].is_subset(t)).collect();
    good.sort_by_key(|&i| (dist[i], i));
    for i in good {
        let back = distances(&g.edges, &g.edges[i..=i], usize::MAX);
        if let Some(d) = back[i] {
            let set = g.nodes[i].clone();
            return Ok(Decision::yes(Witness::Recurrent { set, reach: dist[i].unwrap(), period: d + 1 }));
        }
    }
    Ok(Decision::no())
}

/// Breadth-first distances from `start`, or from the successors listed in `first`
/// (at distance 0) when `first` is nonempty.
fn distances(edges: &[Vec<usize>], first: &[Vec<usize>], start: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; edges.len()];
    let mut queue = std::collections::VecDeque::new();
    let seeds: Vec<usize> = if first.is_empty() { vec![start] } else { first[0].clone() };
    for s in seeds {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(i) = queue.pop_front() {
        for &j in &edges[i] {
            if dist[j].is_none() {
                dist[j] = Some(dist[i].unwrap() + 1);
                queue.push_back(j);
            }
        }
    }
    dist
}

/// States whose Dirac distribution is sure weakly synchronizing in `t`.
pub fn sure_weakly_region(m: &Mdp, t: &StateSet, limits: &Limits) -> Result<StateSet> {
    if period_bound(m, limits).1 {
        let mut region = m.empty_set();
        for q in 0..m.num_states() {
            if sure_weakly(m, &StateSet::singleton(m.num_states(), q), t, limits)?.answer {
                region.insert(q);
            }
        }
        return Ok(region);
    }
    let mut region = m.empty_set();
    for_each_core(m, t, limits, |_, _, seq| {
        for x in seq {
            region.union_with(x);
        }
        None
    })?;
    Ok(region)
}

/// Exhaustive version of [`sure_weakly`] enumerating every `S ⊆ t`; exact but exponential in `|t|`.
pub fn sure_weakly_exhaustive(m: &Mdp, init: &StateSet, t: &StateSet, limits: &Limits) -> Result<bool> {
    if t.len() > limits.subset_states_cap {
        return Err(Error::limit("target too large for exhaustive enumeration"));
    }
    let members = t.to_vec();
    for mask in 1u64..(1u64 << members.len()) {
        let s = StateSet::from_states(
            m.num_states(),
            members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &q)| q),
        );
        let seq = iterate_pre(m, &s, limits)?;
        let recurrent = (1..=seq.len()).any(|n| s.is_subset(seq.get(n)));
        if recurrent && seq.items.iter().any(|x| init.is_subset(x)) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn weak_limit(m: &Mdp, t: &StateSet, u: &StateSet, limits: &Limits) -> Result<Option<Witness>> {
    let target = pre(m, &t.intersection(u));
    let support = pre(m, u);
    Ok(LimitAnalysis::new(m, &target, &support, limits)?.decide(u))
}

/// Almost-sure weakly synchronizing in `t`: some `U` is surely reached and from
/// support `U` mass `1 - ε` can be brought into `Pre(t ∩ U)` while all of it
/// stays in `Pre(U)`.
pub fn almost_sure_weakly(m: &Mdp, init: &StateSet, t: &StateSet, limits: &Limits) -> Result<Decision> {
    search_support(m, init, limits, |u| weak_limit(m, t, u, limits))
}

pub fn almost_sure_weakly_region(m: &Mdp, t: &StateSet, limits: &Limits) -> Result<StateSet> {
    support_region(m, limits, |u| Ok(weak_limit(m, t, u, limits)?.is_some()))
}

/// Same answer as [`almost_sure_weakly`].
pub fn limit_sure_weakly(m: &Mdp, init: &StateSet, t: &StateSet, limits: &Limits) -> Result<Decision> {
    almost_sure_weakly(m, init, t, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::MdpDef;

    fn l() -> Limits {
        Limits::default()
    }

    fn s(m: &Mdp, names: &[&str]) -> StateSet {
        m.set_of(names).unwrap()
    }

    #[test]
    fn sure_cases() {
        let m = fixtures::fig1();
        let q3 = s(&m, &["q3"]);
        assert!(!sure_weakly(&m, &s(&m, &["q_init"]), &q3, &l()).unwrap().answer);
        let d = sure_weakly(&m, &q3, &q3, &l()).unwrap();
        assert_eq!(d.witness, Some(Witness::Recurrent { set: q3.clone(), reach: 0, period: 1 }));
        let m11 = fixtures::fig11();
        assert!(sure_weakly(&m11, &s(&m11, &["q_init"]), &m11.full_set(), &l()).unwrap().answer);
    }

    #[test]
    fn almost_sure_cases() {
        let m3 = fixtures::fig3();
        assert!(almost_sure_weakly(&m3, &s(&m3, &["q_init"]), &s(&m3, &["q2"]), &l()).unwrap().answer);
        let m9 = fixtures::fig9();
        assert!(almost_sure_weakly(&m9, &s(&m9, &["q_init"]), &s(&m9, &["q4"]), &l()).unwrap().answer);
        let m1 = fixtures::fig1();
        assert!(!almost_sure_weakly(&m1, &s(&m1, &["q_init"]), &s(&m1, &["q2"]), &l()).unwrap().answer);
        let m10 = fixtures::fig10();
        assert!(limit_sure_weakly(&m10, &s(&m10, &["q_init"]), &s(&m10, &["q3"]), &l()).unwrap().answer);
        assert!(limit_sure_weakly(&m10, &s(&m10, &["q_init"]), &m10.full_set(), &l()).unwrap().answer);
    }

    // With the target `Pre(T) ∩ Pre(U)` instead of `Pre(T ∩ U)` this instance would be
    // accepted, although from `u` the mass can never be 1 - ε inside `t` and
    // return to `u` afterwards.
    #[test]
    fn nesting_matters() {
        let mut d = MdpDef::new(&["u", "q", "t", "x"], &["a", "b"]);
        d.uniform("u", &["a", "b"], &["q"])
            .uniform("q", &["a"], &["t"])
            .uniform("q", &["b"], &["u"])
            .uniform("t", &["a", "b"], &["x"])
            .uniform("x", &["a", "b"], &["x"]);
        let m = d.build().unwrap();
        let t = s(&m, &["t"]);
        let u = s(&m, &["u"]);
        assert!(!almost_sure_weakly(&m, &u, &t, &l()).unwrap().answer);
        assert!(!sure_weakly(&m, &u, &t, &l()).unwrap().answer);
    }

    #[test]
    fn core_search_matches_exhaustive_on_fixtures() {
        for m in [fixtures::fig1(), fixtures::fig3(), fixtures::fig9(), fixtures::fig12()] {
            let n = m.num_states();
            for mask in 1u64..(1 << n) {
                let t = StateSet::from_mask(n, mask);
                for q in 0..n {
                    let init = StateSet::singleton(n, q);
                    assert_eq!(
                        sure_weakly(&m, &init, &t, &l()).unwrap().answer,
                        sure_weakly_exhaustive(&m, &init, &t, &l()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn above_period_cap_uses_supports() {
        let m = fixtures::fig4(2);
        let tight = Limits { weakly_period_cap: 4, ..l() };
        let init = s(&m, &["q_init"]);
        for t in [s(&m, &["q_T"]), s(&m, &["q_init", "q_T"]), m.full_set()] {
            let a = sure_weakly(&m, &init, &t, &l()).unwrap().answer;
            assert_eq!(sure_weakly(&m, &init, &t, &tight).unwrap().answer, a);
            assert_eq!(sure_weakly_forward(&m, &init, &t, &l()).unwrap().answer, a);
        }
        let d = sure_weakly_forward(&m, &init, &m.full_set(), &l()).unwrap();
        let Some(Witness::Recurrent { set, reach, period }) = d.witness else { panic!("expected a witness") };
        assert!(set.is_subset(&pre_n(&m, &set, period)));
        assert!(init.is_subset(&pre_n(&m, &set, reach)));
        let tiny = Limits { support_graph_cap: 2, weakly_period_cap: 4, ..l() };
        assert!(matches!(sure_weakly(&m, &init, &m.empty_set(), &tiny), Err(Error::ResourceLimit(_))));
    }
}
