//! Eventually synchronizing: sure, almost-sure, and limit-sure (with exact support).

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::Mdp;
use crate::reach::{almost_sure_reach_region, counter_product, iterate_pre, iterate_pre_pair, CounterProduct};
use crate::sequence::PreSequence;
use crate::set::StateSet;
use crate::verdict::{Decision, Witness};

/// Does `init ⊆ Pre^n(t)` hold for some `n`?
pub fn sure_eventually(m: &Mdp, init: &StateSet, t: &StateSet, limits: &Limits) -> Result<Decision> {
    let seq = iterate_pre(m, t, limits)?;
    Ok(Decision::from_option(seq.position(|s| init.is_subset(s)).map(|n| Witness::Steps { n })))
}

/// Everything needed to answer limit-sure eventually synchronizing in `t`
/// with support `u`, for any initial support.
#[derive(Debug, Clone)]
pub struct LimitAnalysis {
    /// `Pre^i(t)`, for the sure branch.
    pub sure: PreSequence,
    /// Prefix `k` of the pair sequence.
    pub prefix: usize,
    /// `R = Pre^k(t)`.
    pub r_set: StateSet,
    /// `Z = Pre^k(u)`.
    pub z_set: StateSet,
    /// `M_Z × [r]`.
    pub product: CounterProduct,
    /// Almost-sure region of `R × {0}` in the product.
    pub region: StateSet,
}

impl LimitAnalysis {
    /// Analyses target `t ∩ u` with support `u`.
    pub fn new(m: &Mdp, t: &StateSet, u: &StateSet, limits: &Limits) -> Result<Self> {
        let t = t.intersection(u);
        let sure = iterate_pre(m, &t, limits)?;
        let pairs = iterate_pre_pair(m, &t, u, limits)?;
        let k = pairs.prefix_len;
        let (r_set, z_set) = pairs.items[k].clone();
        let zs: Vec<StateSet> = pairs.periodic_part().iter().map(|(_, z)| z.clone()).collect();
        let product = counter_product(m, &zs, limits)?;
        let region = almost_sure_reach_region(&product.arena, &product.layer(&r_set, 0));
        Ok(LimitAnalysis { sure, prefix: k, r_set, z_set, product, region })
    }

    pub fn period(&self) -> usize {
        self.product.period
    }

    /// Smallest shift `s` with `init × {s}` inside the almost-sure region.
    pub fn shift_for(&self, init: &StateSet) -> Option<usize> {
        (0..self.period()).find(|&s| init.iter().all(|q| self.region.contains(self.product.index(q, s))))
    }

    pub fn decide(&self, init: &StateSet) -> Option<Witness> {
        if let Some(n) = self.sure.position(|s| init.is_subset(s)) {
            return Some(Witness::Steps { n });
        }
        self.shift_for(init).map(|shift| Witness::Product { prefix: self.prefix, period: self.period(), shift })
    }
}

/// Limit-sure eventually synchronizing in `t` with all mass in `u` at the synchronizing step.
pub fn limit_sure_eventually_support(
    m: &Mdp,
    init: &StateSet,
    t: &StateSet,
    u: &StateSet,
    limits: &Limits,
) -> Result<Decision> {
    if !t.is_subset(u) {
        return Err(Error::input("target must be a subset of the support set"));
    }
    Ok(Decision::from_option(LimitAnalysis::new(m, t, u, limits)?.decide(init)))
}

pub fn limit_sure_eventually(m: &Mdp, init: &StateSet, t: &StateSet, limits: &Limits) -> Result<Decision> {
    limit_sure_eventually_support(m, init, t, &m.full_set(), limits)
}

/// Candidate sets in order of increasing size, then lexicographically.
pub(crate) fn subsets_by_size(n: usize, limits: &Limits) -> Result<impl Iterator<Item = StateSet>> {
    if n > limits.subset_states_cap {
        return Err(Error::limit(format!(
            "subset enumeration over {n} states exceeds the cap of {}",
            limits.subset_states_cap
        )));
    }
    Ok((1..=n).flat_map(move |k| Combinations::new(n, k).map(move |c| StateSet::from_states(n, c))))
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Shared search for the almost-sure characterizations: some `U` is reached surely
/// from `init` and `limit(U)` holds from the uniform distribution over `U`.
pub(crate) fn search_support(
    m: &Mdp,
    init: &StateSet,
    limits: &Limits,
    mut limit: impl FnMut(&StateSet) -> Result<Option<Witness>>,
) -> Result<Decision> {
    for u in subsets_by_size(m.num_states(), limits)? {
        let seq = iterate_pre(m, &u, limits)?;
        let Some(steps) = seq.position(|s| init.is_subset(s)) else { continue };
        if let Some(w) = limit(&u)? {
            return Ok(Decision::yes(Witness::Support { set: u, steps, limit: Box::new(w) }));
        }
    }
    Ok(Decision::no())
}

/// States from which some `U` with `limit(U)` is surely reached.
pub(crate) fn support_region(
    m: &Mdp,
    limits: &Limits,
    mut limit: impl FnMut(&StateSet) -> Result<bool>,
) -> Result<StateSet> {
    let mut region = m.empty_set();
    for u in subsets_by_size(m.num_states(), limits)? {
        if limit(&u)? {
            for s in iterate_pre(m, &u, limits)?.items {
                region.union_with(&s);
            }
        }
    }
    Ok(region)
}

/// Almost-sure eventually synchronizing in `t`.
pub fn almost_sure_eventually(m: &Mdp, init: &StateSet, t: &StateSet, limits: &Limits) -> Result<Decision> {
    search_support(m, init, limits, |u| Ok(LimitAnalysis::new(m, &t.intersection(u), u, limits)?.decide(u)))
}

/// States `q` whose Dirac distribution is almost-sure eventually synchronizing in `t`.
pub fn almost_sure_eventually_region(m: &Mdp, t: &StateSet, limits: &Limits) -> Result<StateSet> {
    support_region(m, limits, |u| Ok(LimitAnalysis::new(m, &t.intersection(u), u, limits)?.decide(u).is_some()))
}
