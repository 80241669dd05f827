/// Resource bounds shared by the analyses.
///
/// Every procedure that can blow up (products, sequence iteration, subset
/// enumeration, simulation) checks the relevant field and fails with
/// [`Error::ResourceLimit`](crate::Error::ResourceLimit) instead of running away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of states of any constructed MDP (products, duplicates).
    pub state_cap: usize,
    /// Maximum number of iterations when looking for a repeat in a set sequence.
    pub sequence_cap: usize,
    /// Largest state space for which subsets are enumerated.
    pub subset_states_cap: usize,
    /// Maximum number of simulated steps.
    pub horizon_cap: usize,
    /// Maximum number of nodes explored in the support graph.
    pub support_graph_cap: usize,
    /// Largest period tried by the sure weakly procedure.
    pub weakly_period_cap: usize,
}

pub const STATE_CAP_ENV: &str = "SYNC_MDP_STATE_CAP";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            state_cap: 1_000_000,
            sequence_cap: 1 << 20,
            subset_states_cap: 20,
            horizon_cap: 100_000,
            support_graph_cap: 1 << 16,
            weakly_period_cap: 1024,
        }
    }
}

impl Limits {
    /// Defaults, with the state cap overridden by `SYNC_MDP_STATE_CAP` when set.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(cap) = std::env::var(STATE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            l.state_cap = cap;
        }
        l
    }
}
