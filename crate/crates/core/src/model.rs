use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::set::{ActionId, StateId, StateSet};

/// Exact probability.
pub type Prob = BigRational;

/// Parses `"p/q"`, an integer or a decimal such as `"0.125"` into an exact rational.
pub fn parse_rational(text: &str) -> std::result::Result<Prob, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty number".into());
    }
    if let Some((n, d)) = text.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| format!("bad numerator in `{text}`"))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| format!("bad denominator in `{text}`"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty()) || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("not a number: `{text}`"));
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).unwrap();
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn format_rational(p: &Prob) -> String {
    if p.is_integer() {
        p.numer().to_string()
    } else {
        format!("{}/{}", p.numer(), p.denom())
    }
}

/// One transition row `δ(q, a)`: successors in increasing order with their probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    succ: Vec<StateId>,
    prob: Vec<Prob>,
    post: StateSet,
}

impl Row {
    pub fn successors(&self) -> &[StateId] {
        &self.succ
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, &Prob)> + '_ {
        self.succ.iter().copied().zip(self.prob.iter())
    }

    pub fn post(&self) -> &StateSet {
        &self.post
    }
}

/// A finite Markov decision process with exact rational transition probabilities.
///
/// Every action is available in every state. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mdp {
    states: Vec<String>,
    actions: Vec<String>,
    rows: Vec<Vec<Row>>,
    state_index: HashMap<String, StateId>,
    action_index: HashMap<String, ActionId>,
    eta: Prob,
}

impl Mdp {
    /// Builds an MDP from dense rows `trans[q][a] = [(q', p), ...]`.
    pub fn from_parts(states: Vec<String>, actions: Vec<String>, trans: Vec<Vec<Vec<(StateId, Prob)>>>) -> Result<Mdp> {
        let mut problems = name_problems("state", &states);
        problems.extend(name_problems("action", &actions));
        if trans.len() != states.len() {
            problems.push(format!("expected {} transition blocks, got {}", states.len(), trans.len()));
        }
        if !problems.is_empty() {
            return Err(Error::InvalidModel(problems));
        }
        let n = states.len();
        let mut rows = Vec::with_capacity(n);
        for (q, per_action) in trans.into_iter().enumerate() {
            if per_action.len() != actions.len() {
                problems.push(format!(
                    "state {}: expected {} actions, got {}",
                    states[q],
                    actions.len(),
                    per_action.len()
                ));
                continue;
            }
            let mut out = Vec::with_capacity(actions.len());
            for (a, mut succ) in per_action.into_iter().enumerate() {
                succ.sort_by_key(|(s, _)| *s);
                let where_ = || format!("row ({}, {})", states[q], actions[a]);
                if succ.is_empty() {
                    problems.push(format!("{}: no successors", where_()));
                }
                if succ.windows(2).any(|w| w[0].0 == w[1].0) {
                    problems.push(format!("{}: repeated successor", where_()));
                }
                if succ.iter().any(|(s, _)| *s >= n) {
                    problems.push(format!("{}: successor index out of range", where_()));
                    continue;
                }
                if succ.iter().any(|(_, p)| !p.is_positive()) {
                    problems.push(format!("{}: non-positive probability", where_()));
                }
                let total: Prob = succ.iter().map(|(_, p)| p.clone()).sum();
                if !total.is_one() {
                    problems.push(format!("{}: probabilities sum to {}", where_(), format_rational(&total)));
                }
                let post = StateSet::from_states(n, succ.iter().map(|(s, _)| *s));
                let (s, p): (Vec<_>, Vec<_>) = succ.into_iter().unzip();
                out.push(Row { succ: s, prob: p, post });
            }
            rows.push(out);
        }
        if !problems.is_empty() {
            return Err(Error::InvalidModel(problems));
        }
        let eta = rows.iter().flatten().flat_map(|r| r.prob.iter()).min().cloned().unwrap_or_else(Prob::one);
        let state_index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let action_index = actions.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(Mdp { states, actions, rows, state_index, action_index, eta })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn action_names(&self) -> &[String] {
        &self.actions
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn action_name(&self, a: ActionId) -> &str {
        &self.actions[a]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied()
    }

    pub fn action_id(&self, name: &str) -> Option<ActionId> {
        self.action_index.get(name).copied()
    }

    /// Looks up a state by name, failing with an input error.
    pub fn state(&self, name: &str) -> Result<StateId> {
        self.state_id(name).ok_or_else(|| Error::input(format!("unknown state `{name}`")))
    }

    /// Set of the named states.
    pub fn set_of(&self, names: &[&str]) -> Result<StateSet> {
        let mut s = self.empty_set();
        for n in names {
            s.insert(self.state(n)?);
        }
        Ok(s)
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.num_states())
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.num_states())
    }

    pub fn row(&self, q: StateId, a: ActionId) -> &Row {
        &self.rows[q][a]
    }

    /// `post(q, a)`, the support of `δ(q, a)`.
    pub fn post(&self, q: StateId, a: ActionId) -> &StateSet {
        &self.rows[q][a].post
    }

    /// Smallest positive transition probability.
    pub fn eta(&self) -> &Prob {
        &self.eta
    }

    /// Names of the members of `s`.
    pub fn names_of(&self, s: &StateSet) -> Vec<String> {
        s.iter().map(|q| self.states[q].clone()).collect()
    }

    /// The unvalidated description of this model, as read and written by the file format.
    pub fn to_def(&self) -> MdpDef {
        let mut rows = Vec::new();
        for q in 0..self.num_states() {
            for a in 0..self.num_actions() {
                let r = self.row(q, a);
                rows.push(RowDef {
                    from: self.states[q].clone(),
                    action: self.actions[a].clone(),
                    to: r.iter().map(|(s, p)| (self.states[s].clone(), Some(p.clone()))).collect(),
                });
            }
        }
        MdpDef { states: self.states.clone(), actions: self.actions.clone(), rows }
    }

    /// Same supports, probabilities replaced by `weights(q, a, successors)`.
    pub fn reweighted(&self, mut weights: impl FnMut(StateId, ActionId, &[StateId]) -> Vec<Prob>) -> Result<Mdp> {
        let trans = (0..self.num_states())
            .map(|q| {
                (0..self.num_actions())
                    .map(|a| {
                        let succ = self.row(q, a).successors();
                        succ.iter().copied().zip(weights(q, a, succ)).collect()
                    })
                    .collect()
            })
            .collect();
        Mdp::from_parts(self.states.clone(), self.actions.clone(), trans)
    }
}

fn name_problems(kind: &str, names: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    if names.is_empty() {
        out.push(format!("no {kind}s declared"));
    }
    let mut seen = HashMap::new();
    for n in names {
        if n.is_empty() {
            out.push(format!("empty {kind} name"));
        }
        if seen.insert(n.as_str(), ()).is_some() {
            out.push(format!("duplicate {kind} `{n}`"));
        }
    }
    out
}

/// A transition row as written in a model document; `None` probabilities mean uniform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowDef {
    pub from: String,
    pub action: String,
    pub to: Vec<(String, Option<Prob>)>,
}

/// An unvalidated, name-based model description.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MdpDef {
    pub states: Vec<String>,
    pub actions: Vec<String>,
    pub rows: Vec<RowDef>,
}

impl MdpDef {
    pub fn new(states: &[&str], actions: &[&str]) -> Self {
        MdpDef {
            states: states.iter().map(|s| s.to_string()).collect(),
            actions: actions.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Adds rows for each listed action going uniformly to `to`.
    pub fn uniform(&mut self, from: &str, actions: &[&str], to: &[&str]) -> &mut Self {
        for a in actions {
            self.rows.push(RowDef {
                from: from.into(),
                action: a.to_string(),
                to: to.iter().map(|s| (s.to_string(), None)).collect(),
            });
        }
        self
    }

    /// Adds a row with explicit probabilities.
    pub fn weighted(&mut self, from: &str, action: &str, to: &[(&str, Prob)]) -> &mut Self {
        self.rows.push(RowDef {
            from: from.into(),
            action: action.into(),
            to: to.iter().map(|(s, p)| (s.to_string(), Some(p.clone()))).collect(),
        });
        self
    }

    pub fn build(&self) -> Result<Mdp> {
        let problems = validate_mdp(self);
        if !problems.is_empty() {
            return Err(Error::InvalidModel(problems));
        }
        let n = self.states.len();
        let sidx: HashMap<&str, usize> = self.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let aidx: HashMap<&str, usize> = self.actions.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut trans = vec![vec![Vec::new(); self.actions.len()]; n];
        for r in &self.rows {
            let k = r.to.len();
            trans[sidx[r.from.as_str()]][aidx[r.action.as_str()]] =
                r.to.iter()
                    .map(|(s, p)| {
                        let p = p.clone().unwrap_or_else(|| Prob::new(BigInt::one(), BigInt::from(k)));
                        (sidx[s.as_str()], p)
                    })
                    .collect();
        }
        Mdp::from_parts(self.states.clone(), self.actions.clone(), trans)
    }
}

/// Checks a model description; returns one message per violated invariant.
pub fn validate_mdp(def: &MdpDef) -> Vec<String> {
    let mut out = name_problems("state", &def.states);
    out.extend(name_problems("action", &def.actions));
    let states: HashMap<&str, usize> = def.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let actions: HashMap<&str, usize> = def.actions.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut seen = HashMap::new();
    for r in &def.rows {
        let here = format!("row ({}, {})", r.from, r.action);
        let (Some(&q), Some(&a)) = (states.get(r.from.as_str()), actions.get(r.action.as_str())) else {
            if !states.contains_key(r.from.as_str()) {
                out.push(format!("{here}: unknown state `{}`", r.from));
            }
            if !actions.contains_key(r.action.as_str()) {
                out.push(format!("{here}: unknown action `{}`", r.action));
            }
            continue;
        };
        if seen.insert((q, a), ()).is_some() {
            out.push(format!("{here}: defined twice"));
        }
        if r.to.is_empty() {
            out.push(format!("{here}: no successors"));
            continue;
        }
        let mut targets = HashMap::new();
        for (s, _) in &r.to {
            if !states.contains_key(s.as_str()) {
                out.push(format!("{here}: unknown successor `{s}`"));
            }
            if targets.insert(s.as_str(), ()).is_some() {
                out.push(format!("{here}: successor `{s}` listed twice"));
            }
        }
        let given = r.to.iter().filter(|(_, p)| p.is_some()).count();
        if given == 0 {
            continue;
        }
        if given != r.to.len() {
            out.push(format!("{here}: probabilities given for some successors only"));
            continue;
        }
        if r.to.iter().any(|(_, p)| !p.as_ref().unwrap().is_positive()) {
            out.push(format!("{here}: non-positive probability"));
        }
        let total: Prob = r.to.iter().map(|(_, p)| p.clone().unwrap()).sum();
        if !total.is_one() {
            out.push(format!("{here}: probabilities sum to {}", format_rational(&total)));
        }
    }
    for (qi, q) in def.states.iter().enumerate() {
        for (ai, a) in def.actions.iter().enumerate() {
            if !seen.contains_key(&(qi, ai)) && states.len() == def.states.len() && actions.len() == def.actions.len() {
                out.push(format!("row ({q}, {a}): missing"));
            }
        }
    }
    out
}

/// An exact probability distribution over the states `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Distribution {
    mass: Vec<Prob>,
}

impl Distribution {
    /// Validates that the masses are non-negative and sum to one.
    pub fn new(mass: Vec<Prob>) -> Result<Self> {
        if mass.iter().any(|p| p.is_negative()) {
            return Err(Error::input("negative probability mass"));
        }
        let total: Prob = mass.iter().cloned().sum();
        if !total.is_one() {
            return Err(Error::input(format!("distribution sums to {}", format_rational(&total))));
        }
        Ok(Distribution { mass })
    }

    pub fn dirac(len: usize, q: StateId) -> Self {
        let mut mass = vec![Prob::zero(); len];
        mass[q] = Prob::one();
        Distribution { mass }
    }

    /// Uniform distribution over a nonempty set.
    pub fn uniform(s: &StateSet) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::input("uniform distribution over the empty set"));
        }
        let p = Prob::new(BigInt::one(), BigInt::from(s.len()));
        let mut mass = vec![Prob::zero(); s.universe()];
        for q in s.iter() {
            mass[q] = p.clone();
        }
        Ok(Distribution { mass })
    }

    pub fn from_pairs(len: usize, pairs: &[(StateId, Prob)]) -> Result<Self> {
        let mut mass = vec![Prob::zero(); len];
        for (q, p) in pairs {
            if *q >= len {
                return Err(Error::input(format!("state index {q} out of range")));
            }
            mass[*q] += p;
        }
        Distribution::new(mass)
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn get(&self, q: StateId) -> &Prob {
        &self.mass[q]
    }

    pub fn masses(&self) -> &[Prob] {
        &self.mass
    }

    pub fn support(&self) -> StateSet {
        StateSet::from_states(self.len(), (0..self.len()).filter(|&q| self.mass[q].is_positive()))
    }

    /// Total mass on `s`.
    pub fn mass_in(&self, s: &StateSet) -> Prob {
        s.iter().map(|q| self.mass[q].clone()).sum()
    }

    /// The state carrying all the mass, if any.
    pub fn dirac_state(&self) -> Option<StateId> {
        self.mass.iter().position(|p| p.is_one())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FnKind {
    Sum,
    Max,
}

/// `sum_T` or `max_T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetFunction {
    pub kind: FnKind,
    pub target: StateSet,
}

impl TargetFunction {
    pub fn sum(target: StateSet) -> Self {
        TargetFunction { kind: FnKind::Sum, target }
    }

    pub fn max(target: StateSet) -> Self {
        TargetFunction { kind: FnKind::Max, target }
    }
}

pub fn eval_target(d: &Distribution, f: &TargetFunction) -> Result<Prob> {
    match f.kind {
        FnKind::Sum => Ok(d.mass_in(&f.target)),
        FnKind::Max => {
            f.target.iter().map(|q| d.get(q).clone()).max().ok_or_else(|| Error::input("max over an empty target"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SyncMode {
    Always,
    Eventually,
    Weakly,
    Strongly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WinMode {
    Sure,
    AlmostSure,
    LimitSure,
}

impl SyncMode {
    pub const ALL: [SyncMode; 4] = [SyncMode::Always, SyncMode::Eventually, SyncMode::Weakly, SyncMode::Strongly];
}

impl WinMode {
    pub const ALL: [WinMode; 3] = [WinMode::Sure, WinMode::AlmostSure, WinMode::LimitSure];
}

macro_rules! named_enum {
    ($ty:ty, $($variant:path => $name:literal),+) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $name),+ })
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($variant),)+
                    other => Err(Error::input(format!(
                        "unknown value `{other}` (expected one of: {})",
                        [$($name),+].join(", ")
                    ))),
                }
            }
        }
    };
}

named_enum!(FnKind, FnKind::Sum => "sum", FnKind::Max => "max");
named_enum!(SyncMode, SyncMode::Always => "always", SyncMode::Eventually => "eventually",
    SyncMode::Weakly => "weakly", SyncMode::Strongly => "strongly");
named_enum!(WinMode, WinMode::Sure => "sure", WinMode::AlmostSure => "almost-sure", WinMode::LimitSure => "limit-sure");

/// A membership question: is `initial` winning for the objective?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisQuery {
    pub sync: SyncMode,
    pub mode: WinMode,
    pub function: TargetFunction,
    pub initial: Distribution,
}

fn fresh_name(taken: &HashMap<String, StateId>, base: String) -> String {
    let mut name = base;
    while taken.contains_key(&name) {
        name.push('\'');
    }
    name
}

/// Adds a fresh state whose every action leads to `d0`; returns the new model and that state.
pub fn dirac_wrap(m: &Mdp, d0: &Distribution) -> Result<(Mdp, StateId)> {
    if d0.len() != m.num_states() {
        return Err(Error::input("distribution size does not match the model"));
    }
    let n = m.num_states();
    let mut states = m.states.clone();
    states.push(fresh_name(&m.state_index, "init".into()));
    let mut trans: Vec<Vec<Vec<(StateId, Prob)>>> = (0..n)
        .map(|q| (0..m.num_actions()).map(|a| m.row(q, a).iter().map(|(s, p)| (s, p.clone())).collect()).collect())
        .collect();
    let to_d0: Vec<(StateId, Prob)> =
        d0.masses().iter().enumerate().filter(|(_, p)| p.is_positive()).map(|(q, p)| (q, p.clone())).collect();
    trans.push(vec![to_d0; m.num_actions()]);
    Ok((Mdp::from_parts(states, m.actions.clone(), trans)?, n))
}

/// Result of a state duplication: the new model and the copies of each original state.
#[derive(Debug, Clone)]
pub struct Duplicated {
    pub mdp: Mdp,
    /// `copies[q]` lists the new states standing for `q` (one or two).
    pub copies: Vec<Vec<StateId>>,
    /// Original state of each new state.
    pub origin: Vec<StateId>,
}

impl Duplicated {
    /// All copies of the members of `s`.
    pub fn lift(&self, s: &StateSet) -> StateSet {
        StateSet::from_states(self.mdp.num_states(), s.iter().flat_map(|q| self.copies[q].iter().copied()))
    }

    /// Splits each state's mass equally between its copies.
    pub fn lift_distribution(&self, d: &Distribution) -> Distribution {
        let mut mass = vec![Prob::zero(); self.mdp.num_states()];
        for (q, cs) in self.copies.iter().enumerate() {
            let share = d.get(q) / Prob::from_integer(BigInt::from(cs.len()));
            for &c in cs {
                mass[c] = share.clone();
            }
        }
        Distribution { mass }
    }
}

/// Duplicates every state outside `keep`; mass entering a duplicated state splits
/// equally between its two copies.
pub fn duplicate_outside(m: &Mdp, keep: &StateSet) -> Result<Duplicated> {
    let mut states = Vec::new();
    let mut copies = Vec::with_capacity(m.num_states());
    let mut origin = Vec::new();
    for q in 0..m.num_states() {
        let name = m.state_name(q);
        if keep.contains(q) {
            copies.push(vec![states.len()]);
            states.push(name.to_string());
            origin.push(q);
        } else {
            copies.push(vec![states.len(), states.len() + 1]);
            states.push(format!("{name}_1"));
            states.push(format!("{name}_2"));
            origin.extend([q, q]);
        }
    }
    let taken: HashMap<String, StateId> = m.state_index.clone();
    let mut used = HashMap::new();
    for (i, s) in states.iter_mut().enumerate() {
        if !keep.contains(origin[i]) {
            *s = fresh_name(&taken, s.clone());
            *s = fresh_name(&used, s.clone());
        }
        used.insert(s.clone(), i);
    }
    let two = Prob::from_integer(BigInt::from(2));
    let trans = origin
        .iter()
        .map(|&q| {
            (0..m.num_actions())
                .map(|a| {
                    let mut row = Vec::new();
                    for (s, p) in m.row(q, a).iter() {
                        match copies[s].as_slice() {
                            [c] => row.push((*c, p.clone())),
                            cs => row.extend(cs.iter().map(|&c| (c, p / &two))),
                        }
                    }
                    row
                })
                .collect()
        })
        .collect();
    let mdp = Mdp::from_parts(states, m.actions.clone(), trans)?;
    Ok(Duplicated { mdp, copies, origin })
}

/// Duplicates every state except `keep`.
pub fn duplicate_except(m: &Mdp, keep: StateId) -> Result<Duplicated> {
    duplicate_outside(m, &StateSet::singleton(m.num_states(), keep))
}
