//! On-the-fly canonization of nondeterministic finite automata.
//!
//! Subset construction is interleaved with minimizations of the partially
//! built DFA. Equivalences discovered by those minimizations flow back into an
//! [`EquivalenceRegistry`](registry::EquivalenceRegistry), which lets later
//! lookups resolve metastates that were never explored to an existing DFA
//! state of the same language.
//!
//! The crate is organized bottom-up:
//!
//! * [`automata`]: NFA/DFA representations and exact language oracles
//! * [`partition`]: seeded-partition DFA minimization and bisimulation quotients
//! * [`simulation`]: similarity preorders, pruning and saturation of metastates
//! * [`registry`]: one-to-one, CCL and CCLS equivalence registries
//! * [`engine`]: the on-the-fly determinization loop and the canonization pipelines
//! * [`generator`]: random NFAs with modular structure

pub mod automata;
pub mod engine;
pub mod generator;
pub mod metastate;
pub mod partition;
pub mod registry;
pub mod simulation;
mod union_find;

pub use automata::{Dfa, Nfa, Word};
pub use engine::{canonize, CanonConfig, Canonization, Pipeline, RunStats, ThresholdMode};
pub use metastate::Metastate;

/// Errors reported by automaton construction and the canonization pipelines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("automaton must have at least one state and one symbol")]
    EmptyAutomaton,
    #[error("state {state} out of range (automaton has {num_states} states)")]
    StateOutOfRange { state: usize, num_states: usize },
    #[error("symbol {symbol} out of range (alphabet has {alphabet_size} symbols)")]
    SymbolOutOfRange { symbol: usize, alphabet_size: usize },
    #[error("alphabet sizes differ: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("DFA is not total: state {state} has no successor on symbol {symbol}")]
    NotTotal { state: usize, symbol: usize },
    #[error("signature covers {found} states but the DFA has {expected}")]
    SignatureLength { expected: usize, found: usize },
    #[error("registry contract violation: {0}")]
    RegistryContract(String),
    #[error("run exceeded its time limit")]
    Timeout,
}

pub type Result<T> = std::result::Result<T, Error>;
