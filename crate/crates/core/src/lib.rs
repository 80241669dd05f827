//! Synchronizing objectives for Markov decision processes.
//!
//! An MDP under a strategy produces a sequence of probability distributions
//! over its states. This crate decides whether that sequence can be made to
//! concentrate on a target set always, eventually, infinitely often (weakly)
//! or from some point on (strongly), in the sure, almost-sure and limit-sure
//! winning modes. It also synthesizes witness strategies, simulates them
//! exactly, and provides brute-force oracles for cross-checking.
//!
//! ```
//! use syncmdp::{fixtures, decide_support, FnKind, Limits, SyncMode, WinMode};
//!
//! let m = fixtures::fig1();
//! let init = m.set_of(&["q_init"]).unwrap();
//! let t = m.set_of(&["q2"]).unwrap();
//! let l = Limits::default();
//! let limit = decide_support(&m, SyncMode::Eventually, WinMode::LimitSure, FnKind::Sum, &init, &t, &l).unwrap();
//! let almost = decide_support(&m, SyncMode::Eventually, WinMode::AlmostSure, FnKind::Sum, &init, &t, &l).unwrap();
//! assert!(limit.answer && !almost.answer);
//! ```

pub mod afa;
pub mod dispatch;
pub mod error;
pub mod eventually;
pub mod fixtures;
pub mod format;
pub mod limits;
pub mod model;
pub mod oracle;
pub mod random;
pub mod reach;
pub mod sequence;
pub mod set;
pub mod strategy;
pub mod strongly;
pub mod verdict;
pub mod weakly;

pub use afa::Afa;
pub use dispatch::{decide, decide_support};
pub use error::{Error, Result};
pub use limits::Limits;
pub use model::{
    dirac_wrap, duplicate_except, duplicate_outside, eval_target, validate_mdp, AnalysisQuery, Distribution, FnKind,
    Mdp, MdpDef, Prob, SyncMode, TargetFunction, WinMode,
};
pub use sequence::{PrePairSequence, PreSequence};
pub use set::{ActionId, StateId, StateSet};
pub use strategy::FiniteStrategy;
pub use verdict::{Decision, DeterministicCycle, Verdict, Witness};
