//! Witness strategies read off the decision procedures.

use num_traits::{One, Signed, Zero};

use super::FiniteStrategy;
use crate::error::{Error, Result};
use crate::eventually::{almost_sure_eventually, LimitAnalysis};
use crate::limits::Limits;
use crate::model::{Distribution, FnKind, Mdp, Prob, WinMode};
use crate::reach::{
    action_into, almost_sure_reach_strategy, cycle_product, iterate_pre, pre, sure_reach_strategy, sure_safety_region,
    Game,
};
use crate::sequence::PreSequence;
use crate::set::{ActionId, StateSet};
use crate::strongly::{deterministic_safety_region, strongly_max};
use crate::verdict::Witness;
use crate::weakly::{almost_sure_weakly, sure_weakly};

/// One step of a time-indexed strategy: the action for each state.
type Step = Vec<ActionId>;

fn not_winning(what: &str) -> Error {
    Error::input(format!("{what}: the instance is not winning"))
}

/// Distribution after one step playing `acts[q]` in each state `q`.
fn image(m: &Mdp, d: &Distribution, acts: &[ActionId]) -> Distribution {
    let mut mass = vec![Prob::zero(); m.num_states()];
    for (q, p) in d.masses().iter().enumerate() {
        if p.is_positive() {
            for (s, pr) in m.row(q, acts[q]).iter() {
                mass[s] += p * pr;
            }
        }
    }
    Distribution::new(mass).expect("image of a distribution is a distribution")
}

/// `n` steps moving `Pre^n(X)` into `X`, where `seq` is the predecessor sequence of `X`.
fn countdown(m: &Mdp, seq: &PreSequence, n: usize) -> Vec<Step> {
    (0..n)
        .map(|i| {
            let into = seq.get(n - i - 1);
            (0..m.num_states()).map(|q| action_into(m, q, into).unwrap_or(0)).collect()
        })
        .collect()
}

/// Countdown with separate tracks: states in `Pre^j(t)` head for `t`, others
/// in `Pre^j(u)` for `u`.
fn two_track_countdown(m: &Mdp, t_seq: &PreSequence, u_seq: &PreSequence, n: usize) -> Vec<Step> {
    (0..n)
        .map(|i| {
            let j = n - i;
            (0..m.num_states())
                .map(|q| {
                    if t_seq.get(j).contains(q) {
                        action_into(m, q, t_seq.get(j - 1))
                    } else {
                        action_into(m, q, u_seq.get(j - 1))
                    }
                    .unwrap_or(0)
                })
                .collect()
        })
        .collect()
}

/// Countdown strategy with `max(n, 1)` modes reaching `t` surely after `n` steps.
pub fn synth_sure_eventually(
    m: &Mdp,
    init: &StateSet,
    t: &StateSet,
    limits: &Limits,
) -> Result<(FiniteStrategy, usize)> {
    let seq = iterate_pre(m, t, limits)?;
    let n = seq.position(|s| init.is_subset(s)).ok_or_else(|| not_winning("sure eventually"))?;
    Ok((FiniteStrategy::schedule(m.num_states(), m.num_actions(), countdown(m, &seq, n)), n))
}

/// Strategy reaching `S ⊆ t` in `reach` steps and returning to it every `period` steps.
/// Returns the strategy with `reach` and `period`.
pub fn synth_sure_weakly(
    m: &Mdp,
    init: &StateSet,
    t: &StateSet,
    limits: &Limits,
) -> Result<(FiniteStrategy, usize, usize)> {
    let Some(Witness::Recurrent { set, reach, period }) = sure_weakly(m, init, t, limits)?.witness else {
        return Err(not_winning("sure weakly"));
    };
    let seq = iterate_pre(m, &set, limits)?;
    let s = FiniteStrategy::lasso(m.num_actions(), countdown(m, &seq, reach), countdown(m, &seq, period));
    Ok((s, reach, period))
}

/// Memoryless strategy keeping the play synchronized at every step.
pub fn synth_always(m: &Mdp, init: &StateSet, t: &StateSet, kind: FnKind) -> Result<FiniteStrategy> {
    let n = m.num_states();
    let acts = match kind {
        FnKind::Sum => {
            let safe = sure_safety_region(m, t);
            if !init.is_subset(&safe) {
                return Err(not_winning("always"));
            }
            (0..n).map(|q| action_into(m, q, &safe).unwrap_or(0)).collect()
        }
        FnKind::Max => {
            let safe = deterministic_safety_region(m, t);
            if init.len() != 1 || !init.is_subset(&safe) {
                return Err(not_winning("always"));
            }
            (0..n)
                .map(|q| {
                    (0..m.num_actions())
                        .find(|&a| matches!(m.row(q, a).successors(), [s] if safe.contains(*s)))
                        .unwrap_or(0)
                })
                .collect()
        }
    };
    Ok(FiniteStrategy::memoryless(m.num_actions(), acts))
}

fn reach<G: Game>(g: &G, goal: &StateSet, mode: WinMode) -> (StateSet, Vec<Option<ActionId>>) {
    match mode {
        WinMode::Sure => sure_reach_strategy(g, goal),
        WinMode::AlmostSure | WinMode::LimitSure => almost_sure_reach_strategy(g, goal),
    }
}

/// Strongly synchronizing witness.
///
/// Sum: memoryless, reach the safety region of `t` then stay in it.
/// Max: counter modulo the cycle length; on the cycle at the right phase follow
/// it, elsewhere play the product reachability strategy towards the cycle.
pub fn synth_strongly(
    m: &Mdp,
    init: &StateSet,
    t: &StateSet,
    kind: FnKind,
    mode: WinMode,
    limits: &Limits,
) -> Result<FiniteStrategy> {
    let n = m.num_states();
    match kind {
        FnKind::Sum => {
            let safe = sure_safety_region(m, t);
            let (region, choice) = reach(m, &safe, mode);
            if safe.is_empty() || !init.is_subset(&region) {
                return Err(not_winning("strongly"));
            }
            let acts = (0..n)
                .map(|q| if safe.contains(q) { action_into(m, q, &safe) } else { choice[q] }.unwrap_or(0))
                .collect();
            Ok(FiniteStrategy::memoryless(m.num_actions(), acts))
        }
        FnKind::Max => {
            let Some(Witness::Cycle { cycle }) = strongly_max(m, init, t, mode, limits)?.witness else {
                return Err(not_winning("strongly"));
            };
            let ell = cycle.len();
            let product = cycle_product(m, ell, limits)?;
            let goal = StateSet::singleton(product.arena.num_states(), product.index(cycle.states[0], 0));
            let (_, choice) = reach(&product.arena, &goal, mode);
            let steps = (0..ell)
                .map(|i| {
                    (0..n)
                        .map(|q| {
                            if q == cycle.states[i] {
                                cycle.actions[i]
                            } else {
                                choice[product.index(q, (ell - i) % ell)].unwrap_or(0)
                            }
                        })
                        .collect()
                })
                .collect();
            Ok(FiniteStrategy::lasso(m.num_actions(), Vec::new(), steps))
        }
    }
}

/// Time-indexed steps after which mass at least `1 - eps` is in `t ∩ u` and all
/// mass is in `u`, starting from `d0`.
pub fn epsilon_schedule(
    m: &Mdp,
    d0: &Distribution,
    t: &StateSet,
    u: &StateSet,
    eps: &Prob,
    limits: &Limits,
) -> Result<Vec<Step>> {
    if !eps.is_positive() {
        return Err(Error::input("epsilon must be positive"));
    }
    let t = t.intersection(u);
    let init = d0.support();
    let analysis = LimitAnalysis::new(m, &t, u, limits)?;
    if let Some(n) = analysis.sure.position(|s| init.is_subset(s)) {
        return Ok(countdown(m, &analysis.sure, n));
    }
    let shift = analysis.shift_for(&init).ok_or_else(|| not_winning("limit-sure eventually"))?;
    let r = analysis.period();
    let k = analysis.prefix;
    let r_seq = iterate_pre(m, &analysis.r_set, limits)?;
    let product = &analysis.product;
    let (_, choice) = almost_sure_reach_strategy(&product.arena, &product.layer(&analysis.r_set, 0));
    let goal = Prob::one() - eps;
    let mut steps = Vec::new();
    let mut d = d0.clone();
    let mut j = 0usize;
    loop {
        let c = (shift + r - j % r) % r;
        if c == 0 && d.mass_in(&analysis.r_set) >= goal {
            break;
        }
        if j >= limits.horizon_cap {
            return Err(Error::limit("no step within the horizon cap reaches the requested mass"));
        }
        let prev = (c + r - 1) % r;
        let acts: Step = (0..m.num_states())
            .map(|q| {
                if r_seq.get(c).contains(q) { action_into(m, q, r_seq.get(prev)) } else { choice[product.index(q, c)] }
                    .unwrap_or(0)
            })
            .collect();
        d = image(m, &d, &acts);
        steps.push(acts);
        j += 1;
    }
    let u_seq = iterate_pre(m, u, limits)?;
    steps.extend(two_track_countdown(m, &analysis.sure, &u_seq, k));
    Ok(steps)
}

/// Strategy and step `n` with `d_n(t) ≥ 1 - eps` and `d_n(u) = 1`.
pub fn synth_eventually_epsilon(
    m: &Mdp,
    d0: &Distribution,
    t: &StateSet,
    u: &StateSet,
    eps: &Prob,
    limits: &Limits,
) -> Result<(FiniteStrategy, usize)> {
    if !t.is_subset(u) {
        return Err(Error::input("target must be a subset of the support set"));
    }
    let steps = epsilon_schedule(m, d0, t, u, eps, limits)?;
    let n = steps.len();
    Ok((FiniteStrategy::schedule(m.num_states(), m.num_actions(), steps), n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Eventually,
    Weakly,
}

/// A finite prefix of an almost-sure strategy.
#[derive(Debug, Clone)]
pub struct AlmostSureSchedule {
    pub strategy: FiniteStrategy,
    /// Set `U` reached surely before the first phase.
    pub support: StateSet,
    /// Step at which all mass is first in `U`.
    pub approach: usize,
    /// `phase_ends[i - 1]` is the step where phase `i` has mass `≥ 1 - 2^-i` in the target.
    pub phase_ends: Vec<usize>,
}

/// Concatenates `phases` witnesses with `ε_i = 2^-i` after moving all mass into
/// the support set `U` of the almost-sure characterization.
pub fn synth_almost_sure_schedule(
    m: &Mdp,
    d0: &Distribution,
    t: &StateSet,
    objective: Objective,
    phases: usize,
    limits: &Limits,
) -> Result<AlmostSureSchedule> {
    let init = d0.support();
    let decision = match objective {
        Objective::Eventually => almost_sure_eventually(m, &init, t, limits)?,
        Objective::Weakly => almost_sure_weakly(m, &init, t, limits)?,
    };
    let Some(Witness::Support { set: u, steps: approach, .. }) = decision.witness else {
        return Err(not_winning("almost-sure"));
    };
    let mut steps = countdown(m, &iterate_pre(m, &u, limits)?, approach);
    let mut d = steps.iter().fold(d0.clone(), |d, acts| image(m, &d, acts));
    let tu = t.intersection(&u);
    let (target, support) = match objective {
        Objective::Eventually => (tu.clone(), u.clone()),
        Objective::Weakly => (pre(m, &tu), pre(m, &u)),
    };
    let mut phase_ends = Vec::with_capacity(phases);
    let two = Prob::from_integer(2.into());
    let mut eps = Prob::one();
    for _ in 0..phases {
        eps /= &two;
        let mut phase = epsilon_schedule(m, &d, &target, &support, &eps, limits)?;
        if objective == Objective::Weakly {
            phase.push(
                (0..m.num_states())
                    .map(|q| {
                        if target.contains(q) { action_into(m, q, &tu) } else { action_into(m, q, &u) }.unwrap_or(0)
                    })
                    .collect(),
            );
        }
        for acts in &phase {
            d = image(m, &d, acts);
        }
        steps.extend(phase);
        phase_ends.push(steps.len());
    }
    let strategy = FiniteStrategy::schedule(m.num_states(), m.num_actions(), steps);
    Ok(AlmostSureSchedule { strategy, support: u, approach, phase_ends })
}
