//! Finite-memory strategies, exact simulation and synthesis.

mod simulate;
mod synth;

pub use simulate::{classify_outcome, symbolic_outcome, Classification, OutcomeSequence};
pub use synth::{
    epsilon_schedule, synth_almost_sure_schedule, synth_always, synth_eventually_epsilon, synth_strongly,
    synth_sure_eventually, synth_sure_weakly, AlmostSureSchedule, Objective,
};

use crate::error::{Error, Result};
use crate::set::{ActionId, StateId};

/// Index of a memory mode.
pub type ModeId = usize;

/// A pure finite-state transducer: the move depends on the current mode and
/// state, and the mode is updated after each step from the action played and
/// the state reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStrategy {
    modes: Vec<String>,
    initial: ModeId,
    num_states: usize,
    num_actions: usize,
    next: Vec<Vec<ActionId>>,
    update: Vec<Vec<Vec<ModeId>>>,
}

impl FiniteStrategy {
    /// `next[m][q]` is the action in mode `m` at state `q`; `update[m][a][q]`
    /// the mode after playing `a` and reaching `q`.
    pub fn new(
        modes: Vec<String>,
        initial: ModeId,
        num_states: usize,
        num_actions: usize,
        next: Vec<Vec<ActionId>>,
        update: Vec<Vec<Vec<ModeId>>>,
    ) -> Result<Self> {
        let k = modes.len();
        let ok = k > 0
            && initial < k
            && next.len() == k
            && update.len() == k
            && next.iter().all(|row| row.len() == num_states && row.iter().all(|&a| a < num_actions))
            && update.iter().all(|per_a| {
                per_a.len() == num_actions
                    && per_a.iter().all(|row| row.len() == num_states && row.iter().all(|&m| m < k))
            });
        if !ok {
            return Err(Error::input("strategy tables do not match the declared modes, states and actions"));
        }
        Ok(FiniteStrategy { modes, initial, num_states, num_actions, next, update })
    }

    /// One mode, `choice[q]` at every step.
    pub fn memoryless(num_actions: usize, choice: Vec<ActionId>) -> Self {
        Self::lasso(num_actions, Vec::new(), vec![choice])
    }

    /// Plays `prefix[0], prefix[1], ...` one step each, then repeats `cycle` forever.
    /// Each entry maps states to actions. Uses `prefix.len() + cycle.len()` modes.
    pub fn lasso(num_actions: usize, prefix: Vec<Vec<ActionId>>, cycle: Vec<Vec<ActionId>>) -> Self {
        assert!(!cycle.is_empty(), "a lasso needs a nonempty cycle");
        let p = prefix.len();
        let k = p + cycle.len();
        let n = cycle[0].len();
        let next: Vec<Vec<ActionId>> = prefix.into_iter().chain(cycle).collect();
        let succ = |m: ModeId| if m + 1 < k { m + 1 } else { p };
        let update = (0..k).map(|m| vec![vec![succ(m); n]; num_actions]).collect();
        let modes = (0..k).map(|m| format!("m{m}")).collect();
        FiniteStrategy { modes, initial: 0, num_states: n, num_actions, next, update }
    }

    /// Time-indexed: `steps[i]` at step `i`, then `steps.last()` forever.
    /// An empty schedule plays the first action everywhere.
    pub fn schedule(num_states: usize, num_actions: usize, mut steps: Vec<Vec<ActionId>>) -> Self {
        let last = steps.pop().unwrap_or_else(|| vec![0; num_states]);
        Self::lasso(num_actions, steps, vec![last])
    }

    pub fn num_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn mode_names(&self) -> &[String] {
        &self.modes
    }

    pub fn initial(&self) -> ModeId {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_actions(&self) -> usize {
        self.num_actions
    }

    pub fn next_move(&self, mode: ModeId, q: StateId) -> ActionId {
        self.next[mode][q]
    }

    pub fn update(&self, mode: ModeId, a: ActionId, q: StateId) -> ModeId {
        self.update[mode][a][q]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lasso_wraps() {
        let s = FiniteStrategy::lasso(2, vec![vec![0, 0]], vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(s.num_modes(), 3);
        assert_eq!(s.update(0, 0, 1), 1);
        assert_eq!(s.update(1, 1, 0), 2);
        assert_eq!(s.update(2, 0, 0), 1);
        assert_eq!(FiniteStrategy::schedule(3, 2, vec![]).num_modes(), 1);
        assert!(FiniteStrategy::new(vec!["m".into()], 0, 1, 1, vec![vec![1]], vec![vec![vec![0]]]).is_err());
    }
}
