use crate::error::{Error, Result};
use crate::eventually::{almost_sure_eventually, limit_sure_eventually, sure_eventually};
use crate::limits::Limits;
use crate::model::{AnalysisQuery, FnKind, Mdp, SyncMode, WinMode};
use crate::set::StateSet;
use crate::strongly::{always_max, always_sum, strongly_max, strongly_sum};
use crate::verdict::{Decision, Verdict, Witness};
use crate::weakly::{almost_sure_weakly, sure_weakly};

/// Note attached to answers obtained through the almost-sure procedure.
pub const VIA_ALMOST_SURE: &str = "decided via almost-sure equivalence";

/// Decides `sum_T` for the given objective and mode from initial support `init`.
pub fn decide_sum(
    m: &Mdp,
    sync: SyncMode,
    mode: WinMode,
    init: &StateSet,
    t: &StateSet,
    limits: &Limits,
) -> Result<Decision> {
    Ok(match (sync, mode) {
        (SyncMode::Always, _) => always_sum(m, init, t),
        (SyncMode::Eventually, WinMode::Sure) => sure_eventually(m, init, t, limits)?,
        (SyncMode::Eventually, WinMode::AlmostSure) => almost_sure_eventually(m, init, t, limits)?,
        (SyncMode::Eventually, WinMode::LimitSure) => limit_sure_eventually(m, init, t, limits)?,
        (SyncMode::Weakly, WinMode::Sure) => sure_weakly(m, init, t, limits)?,
        (SyncMode::Weakly, _) => almost_sure_weakly(m, init, t, limits)?,
        (SyncMode::Strongly, _) => strongly_sum(m, init, t, mode),
    })
}

/// Decides `max_T`: directly for always and strongly, as a union over the
/// singleton targets otherwise.
pub fn decide_max(
    m: &Mdp,
    sync: SyncMode,
    mode: WinMode,
    init: &StateSet,
    t: &StateSet,
    limits: &Limits,
) -> Result<Decision> {
    if t.is_empty() {
        return Err(Error::input("max over an empty target"));
    }
    match sync {
        SyncMode::Always => Ok(always_max(m, init, t)),
        SyncMode::Strongly => strongly_max(m, init, t, mode, limits),
        SyncMode::Eventually | SyncMode::Weakly => {
            for q in t.iter() {
                let d = decide_sum(m, sync, mode, init, &StateSet::singleton(m.num_states(), q), limits)?;
                if let Some(w) = d.witness {
                    return Ok(Decision::yes(Witness::Singleton { state: q, inner: Box::new(w) }));
                }
            }
            Ok(Decision::no())
        }
    }
}

/// Decides from an explicit initial support.
pub fn decide_support(
    m: &Mdp,
    sync: SyncMode,
    mode: WinMode,
    kind: FnKind,
    init: &StateSet,
    t: &StateSet,
    limits: &Limits,
) -> Result<Decision> {
    if init.universe() != m.num_states() || t.universe() != m.num_states() {
        return Err(Error::input("set does not match the model's state space"));
    }
    if init.is_empty() {
        return Err(Error::input("empty initial support"));
    }
    match kind {
        FnKind::Sum => decide_sum(m, sync, mode, init, t, limits),
        FnKind::Max => decide_max(m, sync, mode, init, t, limits),
    }
}

/// Answers a full query.
pub fn decide(m: &Mdp, query: &AnalysisQuery, limits: &Limits) -> Result<Verdict> {
    if query.initial.len() != m.num_states() {
        return Err(Error::input("initial distribution does not match the model's state space"));
    }
    let init = query.initial.support();
    let d = decide_support(m, query.sync, query.mode, query.function.kind, &init, &query.function.target, limits)?;
    let delegated = query.mode == WinMode::LimitSure && matches!(query.sync, SyncMode::Weakly | SyncMode::Strongly);
    Ok(Verdict {
        query: query.clone(),
        answer: d.answer,
        witness: d.witness,
        note: delegated.then(|| VIA_ALMOST_SURE.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{Distribution, TargetFunction};

    fn query(m: &Mdp, sync: SyncMode, mode: WinMode, f: TargetFunction, from: &str) -> AnalysisQuery {
        AnalysisQuery { sync, mode, function: f, initial: Distribution::dirac(m.num_states(), m.state(from).unwrap()) }
    }

    #[test]
    fn max_is_union_of_singletons() {
        let m = fixtures::fig1();
        let l = Limits::default();
        let t = m.set_of(&["q2", "q3"]).unwrap();
        let v = decide(&m, &query(&m, SyncMode::Eventually, WinMode::LimitSure, TargetFunction::max(t), "q_init"), &l)
            .unwrap();
        assert!(v.answer);
        assert!(matches!(v.witness, Some(Witness::Singleton { state: 2, .. })));
        let m10 = fixtures::fig10();
        let t = m10.set_of(&["q2", "q3"]).unwrap();
        let v = decide(&m10, &query(&m10, SyncMode::Weakly, WinMode::LimitSure, TargetFunction::max(t), "q_init"), &l)
            .unwrap();
        assert!(v.answer);
        assert_eq!(v.note.as_deref(), Some(VIA_ALMOST_SURE));
        let empty = TargetFunction::max(m.empty_set());
        assert!(decide(&m, &query(&m, SyncMode::Eventually, WinMode::Sure, empty, "q_init"), &l).is_err());
    }

    #[test]
    fn always_modes_agree() {
        let m = fixtures::fig13();
        let l = Limits::default();
        let t = m.set_of(&["q_init", "q2"]).unwrap();
        let answers: Vec<bool> = WinMode::ALL
            .iter()
            .map(|&mode| {
                decide(&m, &query(&m, SyncMode::Always, mode, TargetFunction::sum(t.clone()), "q2"), &l).unwrap().answer
            })
            .collect();
        assert_eq!(answers, vec![true; 3]);
    }
}
