//! One-letter alternating automata with transition formulas in disjunctive normal form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{Mdp, Prob};
use crate::sequence::{Periodic, PreSequence};
use crate::set::{StateId, StateSet};

/// `⟨Q, δ, F⟩` where `δ(q)` is a disjunction of conjunctions (clauses) of states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Afa {
    states: Vec<String>,
    delta: Vec<Vec<StateSet>>,
    accepting: StateSet,
    index: HashMap<String, StateId>,
}

impl Afa {
    pub fn new(states: Vec<String>, delta: Vec<Vec<StateSet>>, accepting: StateSet) -> Result<Self> {
        let n = states.len();
        let mut problems = Vec::new();
        let mut index = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                problems.push(format!("duplicate state `{s}`"));
            }
        }
        if delta.len() != n {
            problems.push(format!("expected {n} transition formulas, got {}", delta.len()));
        }
        for (q, clauses) in delta.iter().enumerate().take(n) {
            if clauses.is_empty() {
                problems.push(format!("state `{}` has no clause", states[q]));
            }
            if clauses.iter().any(|c| c.is_empty() || c.universe() != n) {
                problems.push(format!("state `{}` has an empty or malformed clause", states[q]));
            }
        }
        if accepting.universe() != n {
            problems.push("accepting set has the wrong universe".into());
        }
        if !problems.is_empty() {
            return Err(Error::InvalidModel(problems));
        }
        Ok(Afa { states, delta, accepting, index })
    }

    /// Builds from names: `delta[i]` lists the clauses of state `states[i]`.
    pub fn from_names(states: &[&str], delta: &[&[&[&str]]], accepting: &[&str]) -> Result<Self> {
        let names: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let n = names.len();
        let lookup =
            |s: &str| states.iter().position(|x| *x == s).ok_or_else(|| Error::input(format!("unknown state `{s}`")));
        let mut d = Vec::new();
        for clauses in delta {
            let mut cs = Vec::new();
            for c in clauses.iter() {
                let mut set = StateSet::empty(n);
                for s in c.iter() {
                    set.insert(lookup(s)?);
                }
                cs.push(set);
            }
            d.push(cs);
        }
        let mut f = StateSet::empty(n);
        for s in accepting {
            f.insert(lookup(s)?);
        }
        Afa::new(names, d, f)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.index.get(name).copied()
    }

    pub fn state(&self, name: &str) -> Result<StateId> {
        self.state_id(name).ok_or_else(|| Error::input(format!("unknown state `{name}`")))
    }

    pub fn clauses(&self, q: StateId) -> &[StateSet] {
        &self.delta[q]
    }

    pub fn accepting(&self) -> &StateSet {
        &self.accepting
    }

    /// Same transitions, different accepting set.
    pub fn with_accepting(&self, accepting: StateSet) -> Result<Self> {
        Afa::new(self.states.clone(), self.delta.clone(), accepting)
    }
}

/// `{q | some clause of δ(q) is contained in s}`.
pub fn acc_step(a: &Afa, s: &StateSet) -> StateSet {
    let n = a.num_states();
    StateSet::from_states(n, (0..n).filter(|&q| a.delta[q].iter().any(|c| c.is_subset(s))))
}

pub fn pre_sequence(a: &Afa, limits: &Limits) -> Result<PreSequence> {
    Periodic::detect(a.accepting.clone(), |s| acc_step(a, s), limits.sequence_cap)
}

/// States accepting the word of length `n`.
pub fn acc_n(a: &Afa, n: usize, limits: &Limits) -> Result<StateSet> {
    Ok(pre_sequence(a, limits)?.get(n).clone())
}

/// Is the language of `a` from `q` empty?
pub fn emptiness(a: &Afa, q: StateId, limits: &Limits) -> Result<bool> {
    Ok(!pre_sequence(a, limits)?.items.iter().any(|s| s.contains(q)))
}

/// Is the language of `a` from `q` finite?
pub fn finiteness(a: &Afa, q: StateId, limits: &Limits) -> Result<bool> {
    Ok(!pre_sequence(a, limits)?.periodic_part().iter().any(|s| s.contains(q)))
}

/// Is the language finite from every state?
pub fn universal_finiteness(a: &Afa, limits: &Limits) -> Result<bool> {
    Ok(pre_sequence(a, limits)?.items.iter().any(|s| s.is_empty()))
}

/// Each clause becomes an action leading uniformly to its states.
///
/// Clause lists are padded to a common length by repeating the last clause.
pub fn afa_to_mdp(a: &Afa) -> Result<Mdp> {
    let width = a.delta.iter().map(|c| c.len()).max().unwrap_or(1);
    let actions = (1..=width).map(|k| format!("a{k}")).collect();
    let trans = a
        .delta
        .iter()
        .map(|clauses| {
            (0..width)
                .map(|k| {
                    let c = &clauses[k.min(clauses.len() - 1)];
                    let p = Prob::new(BigInt::one(), BigInt::from(c.len()));
                    c.iter().map(|s| (s, p.clone())).collect()
                })
                .collect()
        })
        .collect();
    Mdp::from_parts(a.states.clone(), actions, trans)
}

/// `δ(q) = ⋁_a ⋀ post(q, a)` with accepting set `t`; identical clauses are merged.
pub fn mdp_to_afa(m: &Mdp, t: &StateSet) -> Result<Afa> {
    let delta = (0..m.num_states())
        .map(|q| {
            let mut cs: Vec<StateSet> = Vec::new();
            for a in 0..m.num_actions() {
                let p = m.post(q, a);
                if !cs.contains(p) {
                    cs.push(p.clone());
                }
            }
            cs
        })
        .collect();
    Afa::new(m.state_names().to_vec(), delta, t.clone())
}

/// The first `count` primes starting from 3.
pub fn odd_primes(count: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(count);
    let mut c = 3;
    while out.len() < count {
        if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            out.push(c);
        }
        c += 2;
    }
    out
}

/// Layout of the automaton produced by [`build_uf_gadget`].
#[derive(Debug, Clone)]
pub struct Gadget {
    pub afa: Afa,
    /// Entry state `x`.
    pub entry: StateId,
    /// `components[i][j]` is state `j` of the cycle of length `primes[i]`.
    pub components: Vec<Vec<StateId>>,
    pub primes: Vec<usize>,
}

impl Gadget {
    /// Product of the cycle lengths.
    pub fn primorial(&self) -> usize {
        self.primes.iter().product()
    }

    /// Number of states added to the copy of the input.
    pub fn gadget_states(&self) -> usize {
        1 + self.primes.iter().sum::<usize>()
    }
}

/// Automaton whose language is infinite from some state exactly when the
/// language of `a` from `q0` is nonempty.
///
/// Adds an entry `x` branching into `|Q|` cycles of distinct odd prime lengths,
/// every clause of the copied automaton gets `x` added, and `q0` gets an extra
/// self-loop clause. Accepting: `F`, `x`, and each cycle state but the last.
pub fn build_uf_gadget(a: &Afa, q0: StateId) -> Result<Gadget> {
    let n = a.num_states();
    if q0 >= n {
        return Err(Error::input("q0 out of range"));
    }
    let primes = odd_primes(n);
    let total = n + 1 + primes.iter().sum::<usize>();
    let entry = n;
    let mut names = a.states.clone();
    let mut taken: HashMap<String, ()> = names.iter().map(|s| (s.clone(), ())).collect();
    let mut fresh = |base: String| {
        let mut s = base;
        while taken.contains_key(&s) {
            s.push('\'');
        }
        taken.insert(s.clone(), ());
        s
    };
    names.push(fresh("x".into()));
    let mut components = Vec::new();
    let mut next = n + 1;
    for (i, &p) in primes.iter().enumerate() {
        let ids: Vec<StateId> = (next..next + p).collect();
        for j in 0..p {
            names.push(fresh(format!("c{}_{}", i + 1, j)));
        }
        next += p;
        components.push(ids);
    }
    let lift = |s: &StateSet| StateSet::from_states(total, s.iter());
    let with_x = |s: &StateSet| {
        let mut c = lift(s);
        c.insert(entry);
        c
    };
    let mut delta: Vec<Vec<StateSet>> = Vec::with_capacity(total);
    for q in 0..n {
        let mut cs: Vec<StateSet> = a.delta[q].iter().map(with_x).collect();
        if q == q0 {
            cs.insert(0, StateSet::singleton(total, q0));
        }
        delta.push(cs);
    }
    delta.push(components.iter().map(|c| StateSet::singleton(total, c[0])).collect());
    for c in &components {
        for j in 0..c.len() {
            delta.push(vec![StateSet::from_states(total, [entry, c[(j + 1) % c.len()]])]);
        }
    }
    let mut acc = lift(&a.accepting);
    acc.insert(entry);
    for c in &components {
        for &s in &c[..c.len() - 1] {
            acc.insert(s);
        }
    }
    Ok(Gadget { afa: Afa::new(names, delta, acc)?, entry, components, primes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::reach::iterate_pre;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn fig5_sequence() {
        let a = fixtures::afa_fig5();
        let s = |names: &[&str]| StateSet::from_states(6, names.iter().map(|n| a.state(n).unwrap()));
        assert_eq!(acc_step(&a, a.accepting()), s(&["q2", "q3"]));
        let seq = pre_sequence(&a, &l()).unwrap();
        assert_eq!(seq.items, vec![s(&["q1", "q3", "q4"]), s(&["q2", "q3"]), s(&["q1", "q2"]), s(&["q_init", "q2"])]);
        assert_eq!((seq.prefix_len, seq.period), (2, 2));
        let qi = a.state("q_init").unwrap();
        assert!(acc_n(&a, 3, &l()).unwrap().contains(qi));
        assert!(!emptiness(&a, qi, &l()).unwrap());
        assert!(!finiteness(&a, qi, &l()).unwrap());
        assert!(!universal_finiteness(&a, &l()).unwrap());
        for n in 0..40 {
            let accepted = acc_n(&a, n, &l()).unwrap().contains(qi);
            assert_eq!(accepted, n > 1 && n % 2 == 1, "length {n}");
        }
    }

    #[test]
    fn trivial_automata() {
        let a = Afa::from_names(&["p", "q"], &[&[&["p"]], &[&["p", "q"]]], &[]).unwrap();
        let seq = pre_sequence(&a, &l()).unwrap();
        assert_eq!(seq.items, vec![StateSet::empty(2)]);
        assert_eq!((seq.prefix_len, seq.period), (0, 1));
        assert!(emptiness(&a, 0, &l()).unwrap() && finiteness(&a, 1, &l()).unwrap());
        assert!(universal_finiteness(&a, &l()).unwrap());
        assert!(acc_step(&a, &StateSet::empty(2)).is_empty());
        assert_eq!(acc_step(&a, &StateSet::full(2)), StateSet::full(2));

        let loops = Afa::from_names(&["p"], &[&[&["p"]]], &["p"]).unwrap();
        assert!(!finiteness(&loops, 0, &l()).unwrap());
        assert!(!emptiness(&loops, 0, &l()).unwrap());
        let seq = pre_sequence(&loops, &l()).unwrap();
        assert_eq!(seq.items.len(), 1);
    }

    #[test]
    fn conversions_agree_with_pre() {
        let a = fixtures::afa_fig5();
        let m = afa_to_mdp(&a).unwrap();
        assert_eq!(m.num_actions(), 2);
        let seq = iterate_pre(&m, a.accepting(), &l()).unwrap();
        assert_eq!(seq.items, pre_sequence(&a, &l()).unwrap().items);
        let back = mdp_to_afa(&fixtures::fig5(), a.accepting()).unwrap();
        for q in 0..6 {
            let mut x: Vec<_> = back.clauses(q).to_vec();
            let mut y: Vec<_> = a.clauses(q).to_vec();
            x.sort();
            y.sort();
            assert_eq!(x, y, "state {}", a.state_names()[q]);
        }
        let single = Afa::from_names(&["s"], &[&[&["s"]]], &["s"]).unwrap();
        let sm = afa_to_mdp(&single).unwrap();
        assert_eq!(sm.post(0, 0).to_vec(), vec![0]);
    }

    #[test]
    fn gadget_shape() {
        let a = Afa::from_names(&["p", "q"], &[&[&["q"]], &[&["q"]]], &[]).unwrap();
        let g = build_uf_gadget(&a, 0).unwrap();
        assert_eq!(g.primes, vec![3, 5]);
        assert_eq!(g.gadget_states(), 1 + 3 + 5);
        assert_eq!(g.afa.num_states(), 2 + 9);
        // empty language from p, so the gadget must die out everywhere
        assert!(universal_finiteness(&g.afa, &l()).unwrap());
        let seq = pre_sequence(&g.afa, &l()).unwrap();
        for i in 0..=g.primorial() {
            assert_eq!(seq.get(i).contains(g.entry), i < g.primorial(), "step {i}");
        }
        assert_eq!(odd_primes(4), vec![3, 5, 7, 11]);
    }
}
