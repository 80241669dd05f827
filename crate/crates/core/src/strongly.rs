//! Always and strongly synchronizing.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::Result;
use crate::limits::Limits;
use crate::model::{duplicate_outside, Mdp, WinMode};
use crate::reach::{almost_sure_reach_region, cycle_product, sure_reach_region, sure_safety_region, Game};
use crate::set::{ActionId, StateId, StateSet};
use crate::verdict::{Decision, DeterministicCycle, Witness};

/// Always synchronizing with `sum_T`: the support must lie in the sure safety region.
/// The three winning modes coincide.
pub fn always_sum(m: &Mdp, init: &StateSet, t: &StateSet) -> Decision {
    let region = sure_safety_region(m, t);
    if init.is_subset(&region) {
        Decision::yes(Witness::Region { set: region })
    } else {
        Decision::no()
    }
}

/// Largest `X ⊆ t` where every state has a probability-one move into `X`.
pub fn deterministic_safety_region(m: &Mdp, t: &StateSet) -> StateSet {
    let mut x = t.clone();
    loop {
        let y = StateSet::from_states(
            m.num_states(),
            x.iter()
                .filter(|&q| (0..m.num_actions()).any(|a| matches!(m.row(q, a).successors(), [s] if x.contains(*s)))),
        );
        if y == x {
            return x;
        }
        x = y;
    }
}

/// Always synchronizing with `max_T`: the initial distribution must be Dirac on a
/// state of `t` with an infinite deterministic path inside `t`.
pub fn always_max(m: &Mdp, init: &StateSet, t: &StateSet) -> Decision {
    let region = deterministic_safety_region(m, t);
    if init.len() == 1 && init.is_subset(&region) {
        Decision::yes(Witness::Region { set: region })
    } else {
        Decision::no()
    }
}

/// Graph with an edge `q → q'` whenever some action moves from `q` to `q'` with
/// probability one; the edge weight is the smallest such action.
pub fn deterministic_graph(m: &Mdp) -> DiGraph<StateId, ActionId> {
    let mut g = DiGraph::with_capacity(m.num_states(), m.num_states());
    for q in 0..m.num_states() {
        g.add_node(q);
    }
    for q in 0..m.num_states() {
        let mut seen = Vec::new();
        for a in 0..m.num_actions() {
            if let [s] = m.row(q, a).successors() {
                if !seen.contains(s) {
                    seen.push(*s);
                    g.add_edge(NodeIndex::new(q), NodeIndex::new(*s), a);
                }
            }
        }
    }
    g
}

fn sorted_edges(g: &DiGraph<StateId, ActionId>, q: StateId) -> Vec<(StateId, ActionId)> {
    let mut out: Vec<_> =
        g.edges(NodeIndex::new(q)).map(|e| (petgraph::visit::EdgeRef::target(&e).index(), *e.weight())).collect();
    out.sort_unstable();
    out
}

/// SCCs that carry a cycle, ordered by smallest member.
///
/// Bottom SCCs alone do not suffice: a bottom SCC may be a single state
/// without a self-loop while the only cycles sit in SCCs above it.
pub fn cyclic_sccs(g: &DiGraph<StateId, ActionId>) -> Vec<Vec<StateId>> {
    let mut out: Vec<Vec<StateId>> = tarjan_scc(g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<StateId> = c.into_iter().map(|n| n.index()).collect();
            v.sort_unstable();
            v
        })
        .filter(|c| c.len() > 1 || sorted_edges(g, c[0]).iter().any(|(s, _)| *s == c[0]))
        .collect();
    out.sort();
    out
}

/// DFS frame: state, remaining successors, action used to leave it.
type Frame = (StateId, Vec<(StateId, ActionId)>, Option<ActionId>);

/// First simple cycle met by a depth-first search inside `scc` from its smallest state.
pub fn first_cycle(g: &DiGraph<StateId, ActionId>, scc: &[StateId]) -> DeterministicCycle {
    let n = g.node_count();
    let mut on_stack = vec![false; n];
    let mut visited = vec![false; n];
    let start = scc[0];
    let mut stack: Vec<Frame> = Vec::new();
    let push = |q: StateId, stack: &mut Vec<_>, on_stack: &mut Vec<bool>, visited: &mut Vec<bool>| {
        let mut succ = sorted_edges(g, q);
        succ.retain(|(s, _)| scc.binary_search(s).is_ok());
        succ.reverse();
        stack.push((q, succ, None));
        on_stack[q] = true;
        visited[q] = true;
    };
    push(start, &mut stack, &mut on_stack, &mut visited);
    loop {
        let top = stack.len() - 1;
        let Some((s, a)) = stack[top].1.pop() else {
            let (q, _, _) = stack.pop().expect("a cyclic SCC has a cycle through its smallest state");
            on_stack[q] = false;
            continue;
        };
        stack[top].2 = Some(a);
        if on_stack[s] {
            let from = stack.iter().position(|(q, _, _)| *q == s).unwrap();
            let mut states: Vec<StateId> = stack[from..].iter().map(|(q, _, _)| *q).collect();
            let actions: Vec<ActionId> = stack[from..].iter().map(|(_, _, a)| a.unwrap()).collect();
            states.push(s);
            return DeterministicCycle { states, actions };
        }
        if !visited[s] {
            push(s, &mut stack, &mut on_stack, &mut visited);
        }
    }
}

/// Strongly synchronizing with `max_T`.
///
/// States outside `t` are duplicated so only `t` can hold deterministic cycles.
/// For one cycle of each cyclic SCC of the deterministic graph and each of its
/// rotations, the support must reach `⟨q̂_0, 0⟩` in `M × [ℓ]`.
pub fn strongly_max(m: &Mdp, init: &StateSet, t: &StateSet, mode: WinMode, limits: &Limits) -> Result<Decision> {
    let dup = duplicate_outside(m, t)?;
    let m2 = &dup.mdp;
    let init2 = dup.lift(init);
    let g = deterministic_graph(m2);
    for scc in cyclic_sccs(&g) {
        let cycle = first_cycle(&g, &scc);
        let ell = cycle.len();
        let product = cycle_product(m2, ell, limits)?;
        let start = product.layer(&init2, 0);
        for k in 0..ell {
            let rotated = cycle.rotate(k);
            let goal = StateSet::singleton(product.arena.num_states(), product.index(rotated.states[0], 0));
            let region = match mode {
                WinMode::Sure => sure_reach_region(&product.arena, &goal),
                WinMode::AlmostSure | WinMode::LimitSure => almost_sure_reach_region(&product.arena, &goal),
            };
            if start.is_subset(&region) {
                let states = rotated.states.iter().map(|&q| dup.origin[q]).collect();
                let cycle = DeterministicCycle { states, actions: rotated.actions };
                return Ok(Decision::yes(Witness::Cycle { cycle }));
            }
        }
    }
    Ok(Decision::no())
}

/// Strongly synchronizing with `sum_T`: reach the sure safety region of `t`.
pub fn strongly_sum(m: &Mdp, init: &StateSet, t: &StateSet, mode: WinMode) -> Decision {
    let safe = sure_safety_region(m, t);
    let region = match mode {
        WinMode::Sure => sure_reach_region(m, &safe),
        WinMode::AlmostSure | WinMode::LimitSure => almost_sure_reach_region(m, &safe),
    };
    if !safe.is_empty() && init.is_subset(&region) {
        Decision::yes(Witness::Region { set: safe })
    } else {
        Decision::no()
    }
}
