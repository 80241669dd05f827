//! Seeded random instances. The same seed and parameters always give the same value.

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::afa::Afa;
use crate::error::{Error, Result};
use crate::model::{Mdp, Prob};
use crate::set::StateSet;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// States `q0..`, actions `a0..`; each row has `1..=branching` successors with uniform probabilities.
pub fn random_mdp(seed: u64, nq: usize, na: usize, branching: usize) -> Result<Mdp> {
    if nq == 0 || na == 0 || branching == 0 || branching > nq {
        return Err(Error::input("need nq, na >= 1 and 1 <= branching <= nq"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trans = (0..nq)
        .map(|_| {
            (0..na)
                .map(|_| {
                    let k = rng.random_range(1..=branching);
                    let mut succ = sample(&mut rng, nq, k).into_vec();
                    succ.sort_unstable();
                    let p = Prob::new(BigInt::from(1), BigInt::from(k));
                    succ.into_iter().map(|s| (s, p.clone())).collect()
                })
                .collect()
        })
        .collect();
    Mdp::from_parts(names("q", nq), names("a", na), trans)
}

/// Instance with dimensions drawn from the seed: `1..=max_states` states,
/// `1..=max_actions` actions, branching up to `max_branching`.
pub fn random_corpus_mdp(seed: u64, max_states: usize, max_actions: usize, max_branching: usize) -> Result<Mdp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    let nq = rng.random_range(1..=max_states.max(1));
    let na = rng.random_range(1..=max_actions.max(1));
    let br = rng.random_range(1..=max_branching.clamp(1, nq));
    random_mdp(seed, nq, na, br)
}

/// Same supports, fresh positive probabilities drawn from integer weights `1..=9`.
pub fn rerandomize(m: &Mdp, seed: u64) -> Result<Mdp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    m.reweighted(|_, _, succ| {
        let w: Vec<u32> = succ.iter().map(|_| rng.random_range(1..=9)).collect();
        let total: u32 = w.iter().sum();
        w.into_iter().map(|x| Prob::new(BigInt::from(x), BigInt::from(total))).collect()
    })
}

/// States `s0..`; each state has `1..=clauses` clauses of `1..=clause_size`
/// distinct states; each state is accepting with probability one half.
pub fn random_afa(seed: u64, nq: usize, clauses: usize, clause_size: usize) -> Result<Afa> {
    if nq == 0 || clauses == 0 || clause_size == 0 || clause_size > nq {
        return Err(Error::input("need nq, clauses >= 1 and 1 <= clause_size <= nq"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = (0..nq)
        .map(|_| {
            let c = rng.random_range(1..=clauses);
            (0..c)
                .map(|_| {
                    let k = rng.random_range(1..=clause_size);
                    StateSet::from_states(nq, sample(&mut rng, nq, k))
                })
                .collect()
        })
        .collect();
    let accepting = StateSet::from_states(nq, (0..nq).filter(|_| rng.random_bool(0.5)));
    Afa::new(names("s", nq), delta, accepting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{write_afa, write_model};
    use sha2::{Digest, Sha256};

    fn digest(text: &str) -> String {
        Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_mdp(7, 4, 2, 3).unwrap(), random_mdp(7, 4, 2, 3).unwrap());
        assert_eq!(random_afa(7, 4, 2, 2).unwrap(), random_afa(7, 4, 2, 2).unwrap());
        let one = random_mdp(3, 1, 2, 1).unwrap();
        assert_eq!(one.post(0, 0).to_vec(), vec![0]);
        assert!(random_mdp(1, 2, 1, 3).is_err());
    }

    #[test]
    fn rerandomize_keeps_supports() {
        let m = random_mdp(11, 5, 3, 3).unwrap();
        let r = rerandomize(&m, 99).unwrap();
        for q in 0..5 {
            for a in 0..3 {
                assert_eq!(m.post(q, a), r.post(q, a));
            }
        }
    }

    #[test]
    fn pinned_digests() {
        let m = random_mdp(42, 5, 2, 3).unwrap();
        assert_eq!(digest(&write_model(&m, None)), "86cc94850ab79fb8841ba1035cae1c435e5e15e9b2d62d0532de4db54f0da696");
        let a = random_afa(42, 4, 2, 2).unwrap();
        assert_eq!(digest(&write_afa(&a)), "35f3422616077e48e8ee2d5cb301cc2c3df1c745644c999c1f329ad3b265d8e5");
    }
}
