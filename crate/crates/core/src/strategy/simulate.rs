use std::collections::BTreeMap;

use num_traits::Zero;

use super::{FiniteStrategy, ModeId};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{eval_target, Distribution, Mdp, Prob, TargetFunction};
use crate::set::StateId;

/// `d_0, d_1, ..., d_N` produced by a strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeSequence {
    pub dists: Vec<Distribution>,
}

impl OutcomeSequence {
    pub fn horizon(&self) -> usize {
        self.dists.len() - 1
    }
}

/// Exact distributions over states for `horizon` steps.
///
/// The mass is tracked jointly over (mode, state) since different histories
/// reaching the same state may be in different modes.
pub fn symbolic_outcome(
    m: &Mdp,
    d0: &Distribution,
    s: &FiniteStrategy,
    horizon: usize,
    limits: &Limits,
) -> Result<OutcomeSequence> {
    if horizon > limits.horizon_cap {
        return Err(Error::limit(format!("horizon {horizon} exceeds the cap {}", limits.horizon_cap)));
    }
    if d0.len() != m.num_states() || s.num_states() != m.num_states() || s.num_actions() != m.num_actions() {
        return Err(Error::input("strategy, distribution and model disagree on dimensions"));
    }
    let mut joint: BTreeMap<(ModeId, StateId), Prob> = BTreeMap::new();
    for (q, p) in d0.masses().iter().enumerate() {
        if !p.is_zero() {
            joint.insert((s.initial(), q), p.clone());
        }
    }
    let mut dists = vec![d0.clone()];
    for _ in 0..horizon {
        let mut next: BTreeMap<(ModeId, StateId), Prob> = BTreeMap::new();
        for ((mode, q), p) in &joint {
            let a = s.next_move(*mode, *q);
            for (q2, pr) in m.row(*q, a).iter() {
                *next.entry((s.update(*mode, a, q2), q2)).or_insert_with(Prob::zero) += p * pr;
            }
        }
        let mut mass = vec![Prob::zero(); m.num_states()];
        for ((_, q), p) in &next {
            mass[*q] += p;
        }
        dists.push(Distribution::new(mass)?);
        joint = next;
    }
    Ok(OutcomeSequence { dists })
}

/// Which synchronization patterns a finite outcome exhibits at threshold `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub always: bool,
    pub eventually: bool,
    /// Some index in the last third of the horizon reaches `p`.
    pub weakly_within: bool,
    /// Every index in the last third of the horizon reaches `p`.
    pub strongly_within: bool,
}

pub fn classify_outcome(seq: &OutcomeSequence, f: &TargetFunction, p: &Prob) -> Result<Classification> {
    let hits: Vec<bool> = seq.dists.iter().map(|d| eval_target(d, f).map(|v| v >= *p)).collect::<Result<_>>()?;
    let n = seq.horizon();
    let tail = &hits[n - n / 3..];
    Ok(Classification {
        always: hits.iter().all(|&h| h),
        eventually: hits.iter().any(|&h| h),
        weakly_within: tail.iter().any(|&h| h),
        strongly_within: tail.iter().all(|&h| h),
    })
}
