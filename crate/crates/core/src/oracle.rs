//! Brute-force oracles: forward search over belief supports for the sure
//! winning mode, and direct length-by-length evaluation of automata.
//!
//! The support graph doubles as the sure weakly decider's fallback above its
//! period cap; below the cap the two share nothing beyond the model types.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::afa::Afa;
use crate::error::{Error, Result};
use crate::model::{FnKind, Mdp, SyncMode};
use crate::set::{StateId, StateSet};

/// Reachable part of the support graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGraph {
    /// `nodes[0]` is the start support.
    pub nodes: Vec<StateSet>,
    pub edges: Vec<Vec<usize>>,
}

/// All supports reachable from `s` in one step: one action per state of `s`.
pub fn support_successors(m: &Mdp, s: &StateSet) -> BTreeSet<StateSet> {
    let mut acc: BTreeSet<StateSet> = BTreeSet::from([StateSet::empty(m.num_states())]);
    for q in s.iter() {
        let posts: BTreeSet<&StateSet> = (0..m.num_actions()).map(|a| m.post(q, a)).collect();
        acc = acc.iter().flat_map(|x| posts.iter().map(move |p| x.union(p))).collect();
    }
    acc
}

pub fn support_graph(m: &Mdp, from: &StateSet, cap: usize) -> Result<SupportGraph> {
    if from.is_empty() {
        return Err(Error::input("empty start support"));
    }
    let mut index: HashMap<StateSet, usize> = HashMap::from([(from.clone(), 0)]);
    let mut nodes = vec![from.clone()];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let mut out = Vec::new();
        for s in support_successors(m, &nodes[i]) {
            let next = nodes.len();
            let j = *index.entry(s.clone()).or_insert(next);
            if j == next {
                if nodes.len() >= cap {
                    return Err(Error::limit(format!("support graph exceeds {cap} nodes")));
                }
                nodes.push(s);
            }
            out.push(j);
        }
        edges.push(out);
        i += 1;
    }
    Ok(SupportGraph { nodes, edges })
}

fn reachable(g: &SupportGraph, from: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; g.nodes.len()];
    let mut queue: VecDeque<usize> = from.into_iter().collect();
    while let Some(i) = queue.pop_front() {
        if !std::mem::replace(&mut seen[i], true) {
            queue.extend(g.edges[i].iter().copied());
        }
    }
    seen
}

/// Largest set of `good` nodes where each has a successor in the set.
fn safe_nodes(g: &SupportGraph, good: &[bool]) -> Vec<bool> {
    let mut x = good.to_vec();
    loop {
        let y: Vec<bool> = (0..x.len()).map(|i| x[i] && g.edges[i].iter().any(|&j| x[j])).collect();
        if y == x {
            return x;
        }
        x = y;
    }
}

/// Sure-mode answer from the Dirac distribution on `q0`, by search in the support graph.
pub fn oracle_sure(m: &Mdp, q0: StateId, t: &StateSet, sync: SyncMode, kind: FnKind, cap: usize) -> Result<bool> {
    let g = support_graph(m, &StateSet::singleton(m.num_states(), q0), cap)?;
    let good: Vec<bool> = g.nodes.iter().map(|s| s.is_subset(t) && (kind == FnKind::Sum || s.len() == 1)).collect();
    let from_start = reachable(&g, [0]);
    Ok(match sync {
        SyncMode::Always => safe_nodes(&g, &good)[0],
        SyncMode::Eventually => (0..good.len()).any(|i| good[i] && from_start[i]),
        SyncMode::Weakly => {
            (0..good.len()).filter(|&i| good[i] && from_start[i]).any(|i| reachable(&g, g.edges[i].iter().copied())[i])
        }
        SyncMode::Strongly => {
            let safe = safe_nodes(&g, &good);
            (0..safe.len()).any(|i| safe[i] && from_start[i])
        }
    })
}

/// `accepted[n]` tells whether the word of length `n` is accepted from `q`,
/// for `n ≤ max_len`, evaluated from the run semantics one length at a time.
pub fn afa_accepted_lengths(a: &Afa, q: StateId, max_len: usize) -> Vec<bool> {
    let n = a.num_states();
    let mut acc: Vec<bool> = (0..n).map(|p| a.accepting().contains(p)).collect();
    let mut out = vec![acc[q]];
    for _ in 0..max_len {
        acc = (0..n).map(|p| a.clauses(p).iter().any(|c| c.iter().all(|s| acc[s]))).collect();
        out.push(acc[q]);
    }
    out
}

/// Emptiness by checking every length below `2^|Q|`.
pub fn afa_empty_brute(a: &Afa, q: StateId) -> bool {
    let b = 1usize << a.num_states();
    !afa_accepted_lengths(a, q, b).into_iter().any(|x| x)
}

/// Finiteness by checking the window `[2^|Q|, 2^(|Q|+1))`, which covers a full
/// period of the eventually periodic acceptance sequence.
pub fn afa_finite_brute(a: &Afa, q: StateId) -> bool {
    let b = 1usize << a.num_states();
    !afa_accepted_lengths(a, q, 2 * b)[b..].iter().any(|&x| x)
}
