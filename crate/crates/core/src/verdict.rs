use crate::model::AnalysisQuery;
use crate::set::{ActionId, StateId, StateSet};

/// A cycle `q̂_0 →a_0 q̂_1 → ... → q̂_ℓ = q̂_0` of probability-one transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicCycle {
    /// `ℓ + 1` states, the last equal to the first.
    pub states: Vec<StateId>,
    /// `ℓ` actions.
    pub actions: Vec<ActionId>,
}

impl DeterministicCycle {
    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    /// The same cycle started at position `k`.
    pub fn rotate(&self, k: usize) -> DeterministicCycle {
        let l = self.len();
        let states: Vec<StateId> = (0..=l).map(|i| self.states[(i + k) % l]).collect();
        let actions = (0..l).map(|i| self.actions[(i + k) % l]).collect();
        DeterministicCycle { states, actions }
    }
}

/// Evidence attached to a positive answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The support is inside `Pre^n(T)`.
    Steps { n: usize },
    /// Limit-sure with exact support through the counter product: prefix `k`,
    /// period `r` of the pair sequence and the shift `s` of the initial layer.
    Product { prefix: usize, period: usize, shift: usize },
    /// Almost-sure via a support set `U` reached surely in `steps` steps.
    Support { set: StateSet, steps: usize, limit: Box<Witness> },
    /// Sure weakly: `S ⊆ Pre^period(S)` and the support is in `Pre^reach(S)`.
    Recurrent { set: StateSet, reach: usize, period: usize },
    /// The safe set the play is kept in (or driven into).
    Region { set: StateSet },
    /// Deterministic cycle used for strongly synchronizing with max.
    Cycle { cycle: DeterministicCycle },
    /// Max objective won through one target state.
    Singleton { state: StateId, inner: Box<Witness> },
}

/// Answer of a decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub answer: bool,
    pub witness: Option<Witness>,
}

impl Decision {
    pub fn yes(w: Witness) -> Self {
        Decision { answer: true, witness: Some(w) }
    }

    pub fn no() -> Self {
        Decision { answer: false, witness: None }
    }

    pub fn from_option(w: Option<Witness>) -> Self {
        match w {
            Some(w) => Decision::yes(w),
            None => Decision::no(),
        }
    }
}

/// A query with its answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub query: AnalysisQuery,
    pub answer: bool,
    pub witness: Option<Witness>,
    /// Set when the answer was obtained through an equivalent mode.
    pub note: Option<String>,
}
