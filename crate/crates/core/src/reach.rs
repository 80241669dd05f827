//! Predecessor operator, the classical reachability and safety regions, and
//! the two counter products used by the synchronizing procedures.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{Mdp, Prob};
use crate::sequence::{Periodic, PrePairSequence, PreSequence};
use crate::set::{ActionId, StateId, StateSet};

/// Anything with finitely many states and actions and a successor relation.
///
/// The algorithms here only look at supports, so products are built as
/// [`Arena`]s without probabilities.
pub trait Game {
    fn num_states(&self) -> usize;
    fn num_actions(&self) -> usize;
    /// Successors of `q` under `a`, sorted, no repeats.
    fn succ(&self, q: StateId, a: ActionId) -> &[StateId];
}

impl Game for Mdp {
    fn num_states(&self) -> usize {
        Mdp::num_states(self)
    }
    fn num_actions(&self) -> usize {
        Mdp::num_actions(self)
    }
    fn succ(&self, q: StateId, a: ActionId) -> &[StateId] {
        self.row(q, a).successors()
    }
}

/// A support-only transition structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    n: usize,
    na: usize,
    succ: Vec<Vec<StateId>>,
}

impl Arena {
    /// `succ[q * na + a]` lists the successors of `q` under `a`.
    pub fn new(n: usize, na: usize, mut succ: Vec<Vec<StateId>>) -> Self {
        assert_eq!(succ.len(), n * na);
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        Arena { n, na, succ }
    }
}

impl Game for Arena {
    fn num_states(&self) -> usize {
        self.n
    }
    fn num_actions(&self) -> usize {
        self.na
    }
    fn succ(&self, q: StateId, a: ActionId) -> &[StateId] {
        &self.succ[q * self.na + a]
    }
}

fn subset_of(succ: &[StateId], s: &StateSet) -> bool {
    succ.iter().all(|&x| s.contains(x))
}

/// `Pre(T)`: states with an action whose successors all lie in `t`.
pub fn pre<G: Game>(g: &G, t: &StateSet) -> StateSet {
    let n = g.num_states();
    StateSet::from_states(n, (0..n).filter(|&q| (0..g.num_actions()).any(|a| subset_of(g.succ(q, a), t))))
}

/// Smallest action `a` with `post(q, a) ⊆ t`.
pub fn action_into<G: Game>(g: &G, q: StateId, t: &StateSet) -> Option<ActionId> {
    (0..g.num_actions()).find(|&a| subset_of(g.succ(q, a), t))
}

pub fn iterate_pre<G: Game>(g: &G, t: &StateSet, limits: &Limits) -> Result<PreSequence> {
    Periodic::detect(t.clone(), |s| pre(g, s), limits.sequence_cap)
}

pub fn iterate_pre_pair<G: Game>(g: &G, t: &StateSet, u: &StateSet, limits: &Limits) -> Result<PrePairSequence> {
    if !t.is_subset(u) {
        return Err(Error::input("pair sequence needs the target inside the support set"));
    }
    Periodic::detect((t.clone(), u.clone()), |(a, b)| (pre(g, a), pre(g, b)), limits.sequence_cap)
}

fn predecessors<G: Game>(g: &G) -> Vec<Vec<(StateId, ActionId)>> {
    let mut pred = vec![Vec::new(); g.num_states()];
    for q in 0..g.num_states() {
        for a in 0..g.num_actions() {
            for &s in g.succ(q, a) {
                pred[s].push((q, a));
            }
        }
    }
    pred
}

/// Sure-reachability region together with a memoryless witness: `choice[q]` is
/// the action to play in `q` (unset on the target and outside the region).
pub fn sure_reach_strategy<G: Game>(g: &G, target: &StateSet) -> (StateSet, Vec<Option<ActionId>>) {
    let (n, na) = (g.num_states(), g.num_actions());
    let pred = predecessors(g);
    let mut missing: Vec<usize> = (0..n * na).map(|i| g.succ(i / na, i % na).len()).collect();
    let mut region = target.clone();
    let mut choice = vec![None; n];
    let mut queue: VecDeque<StateId> = target.iter().collect();
    while let Some(s) = queue.pop_front() {
        for &(q, a) in &pred[s] {
            let k = &mut missing[q * na + a];
            *k -= 1;
            if *k == 0 && !region.contains(q) {
                region.insert(q);
                choice[q] = Some(a);
                queue.push_back(q);
            }
        }
    }
    (region, choice)
}

/// States from which some strategy makes every path reach `target`.
pub fn sure_reach_region<G: Game>(g: &G, target: &StateSet) -> StateSet {
    sure_reach_strategy(g, target).0
}

/// Greatest fixpoint of `X ↦ t ∩ Pre(X)`.
pub fn sure_safety_region<G: Game>(g: &G, t: &StateSet) -> StateSet {
    let (n, na) = (g.num_states(), g.num_actions());
    let pred = predecessors(g);
    let mut safe_actions = vec![0usize; n];
    let mut action_ok = vec![false; n * na];
    for q in t.iter() {
        for a in 0..na {
            if subset_of(g.succ(q, a), t) {
                action_ok[q * na + a] = true;
                safe_actions[q] += 1;
            }
        }
    }
    let mut region = t.clone();
    let mut queue: VecDeque<StateId> = t.iter().filter(|&q| safe_actions[q] == 0).collect();
    for &q in &queue {
        region.remove(q);
    }
    while let Some(s) = queue.pop_front() {
        for &(q, a) in &pred[s] {
            if region.contains(q) && action_ok[q * na + a] {
                action_ok[q * na + a] = false;
                safe_actions[q] -= 1;
                if safe_actions[q] == 0 {
                    region.remove(q);
                    queue.push_back(q);
                }
            }
        }
    }
    region
}

/// Almost-sure reachability region with a memoryless witness.
///
/// Inside the region, `choice[q]` keeps the play in the region and moves
/// closer to the target with positive probability. Target states have no choice.
pub fn almost_sure_reach_strategy<G: Game>(g: &G, target: &StateSet) -> (StateSet, Vec<Option<ActionId>>) {
    let (n, na) = (g.num_states(), g.num_actions());
    let pred = predecessors(g);
    let mut w = StateSet::full(n);
    loop {
        let allowed: Vec<bool> = (0..n * na).map(|i| subset_of(g.succ(i / na, i % na), &w)).collect();
        let (y, choice) = positive_attractor(&pred, &allowed, na, &w, target);
        if y == w {
            return (w, choice);
        }
        w = y;
    }
}

// Layered backward search from `target ∩ w` through allowed actions; the first
// layer at which a state is hit fixes its action (smallest index among those hitting).
fn positive_attractor(
    pred: &[Vec<(StateId, ActionId)>],
    allowed: &[bool],
    na: usize,
    w: &StateSet,
    target: &StateSet,
) -> (StateSet, Vec<Option<ActionId>>) {
    let mut y = target.intersection(w);
    let mut choice = vec![None; pred.len()];
    let mut layer: Vec<StateId> = y.to_vec();
    while !layer.is_empty() {
        let mut next: Vec<StateId> = Vec::new();
        for &s in &layer {
            for &(q, a) in &pred[s] {
                if w.contains(q) && !y.contains(q) && allowed[q * na + a] {
                    match choice[q] {
                        None => {
                            choice[q] = Some(a);
                            next.push(q);
                        }
                        Some(b) if a < b => choice[q] = Some(a),
                        _ => {}
                    }
                }
            }
        }
        for &q in &next {
            y.insert(q);
        }
        layer = next;
    }
    (y, choice)
}

/// States from which `target` is reached with probability one (equivalently, in the limit).
pub fn almost_sure_reach_region<G: Game>(g: &G, target: &StateSet) -> StateSet {
    almost_sure_reach_strategy(g, target).0
}

/// `M_Z × [r]`: only `Z`-safe actions are kept, others lead to a sink.
///
/// State `⟨q, i⟩` has index `q * r + i`; the sink is the last state.
#[derive(Debug, Clone)]
pub struct CounterProduct {
    pub arena: Arena,
    pub base_states: usize,
    pub period: usize,
    pub sink: Option<StateId>,
}

impl CounterProduct {
    pub fn index(&self, q: StateId, i: usize) -> StateId {
        q * self.period + i
    }

    /// `s × {i}` as a set of product states.
    pub fn layer(&self, s: &StateSet, i: usize) -> StateSet {
        StateSet::from_states(self.arena.num_states(), s.iter().map(|q| self.index(q, i)))
    }

    /// Rebuilds the product as an MDP, copying probabilities from `m`.
    pub fn to_mdp(&self, m: &Mdp) -> Result<Mdp> {
        let r = self.period;
        let mut states = Vec::new();
        for q in 0..self.base_states {
            for i in 0..r {
                states.push(format!("<{},{}>", m.state_name(q), i));
            }
        }
        if self.sink.is_some() {
            states.push("sink".into());
        }
        let mut trans = Vec::with_capacity(states.len());
        for p in 0..self.arena.num_states() {
            let mut per_action = Vec::new();
            for a in 0..m.num_actions() {
                let succ = self.arena.succ(p, a);
                if Some(p) == self.sink || succ == [self.sink.unwrap_or(usize::MAX)] {
                    per_action.push(vec![(succ[0], Prob::from_integer(1.into()))]);
                } else {
                    let q = p / r;
                    per_action.push(succ.iter().copied().zip(m.row(q, a).iter().map(|(_, pr)| pr.clone())).collect());
                }
            }
            trans.push(per_action);
        }
        Mdp::from_parts(states, m.action_names().to_vec(), trans)
    }
}

fn check_cap(states: usize, limits: &Limits) -> Result<()> {
    if states > limits.state_cap {
        return Err(Error::limit(format!("product would have {states} states (cap {})", limits.state_cap)));
    }
    Ok(())
}

/// Support-only `M_Z × [r]` from the periodic block `zs[i] = Pre^i(Z)`, `i < r`.
pub fn counter_product<G: Game>(g: &G, zs: &[StateSet], limits: &Limits) -> Result<CounterProduct> {
    let (n, na, r) = (g.num_states(), g.num_actions(), zs.len());
    if r == 0 {
        return Err(Error::input("period must be at least 1"));
    }
    check_cap(n * r + 1, limits)?;
    let sink = n * r;
    let mut succ = Vec::with_capacity((n * r + 1) * na);
    for q in 0..n {
        for i in 0..r {
            let j = (i + r - 1) % r;
            for a in 0..na {
                let s = g.succ(q, a);
                if subset_of(s, &zs[j]) {
                    succ.push(s.iter().map(|&x| x * r + j).collect());
                } else {
                    succ.push(vec![sink]);
                }
            }
        }
    }
    succ.extend((0..na).map(|_| vec![sink]));
    Ok(CounterProduct { arena: Arena::new(n * r + 1, na, succ), base_states: n, period: r, sink: Some(sink) })
}

/// `M_Z × [r]` as an MDP; requires `Pre^r(Z) = Z`.
pub fn product_mod_counter(m: &Mdp, z: &StateSet, r: usize, limits: &Limits) -> Result<Mdp> {
    if r == 0 {
        return Err(Error::input("period must be at least 1"));
    }
    let mut zs = vec![z.clone()];
    for _ in 1..r {
        let next = pre(m, zs.last().unwrap());
        zs.push(next);
    }
    if pre(m, zs.last().unwrap()) != *z {
        return Err(Error::input(format!("Pre^{r}(Z) differs from Z")));
    }
    counter_product(m, &zs, limits)?.to_mdp(m)
}

/// Support-only `M × [ℓ]`: every action decrements the counter modulo `ℓ`.
pub fn cycle_product<G: Game>(g: &G, ell: usize, limits: &Limits) -> Result<CounterProduct> {
    let (n, na) = (g.num_states(), g.num_actions());
    if ell == 0 {
        return Err(Error::input("cycle length must be at least 1"));
    }
    check_cap(n * ell, limits)?;
    let mut succ = Vec::with_capacity(n * ell * na);
    for q in 0..n {
        for i in 0..ell {
            let j = (i + ell - 1) % ell;
            for a in 0..na {
                succ.push(g.succ(q, a).iter().map(|&x| x * ell + j).collect());
            }
        }
    }
    Ok(CounterProduct { arena: Arena::new(n * ell, na, succ), base_states: n, period: ell, sink: None })
}

/// `M × [ℓ]` as an MDP.
pub fn product_cycle_counter(m: &Mdp, ell: usize, limits: &Limits) -> Result<Mdp> {
    cycle_product(m, ell, limits)?.to_mdp(m)
}
