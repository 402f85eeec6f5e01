//! The on-the-fly determinization loop and the canonization pipelines built
//! on top of it.

mod determinize;
pub mod threshold;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use determinize::{otf_determinize, otf_determinize_with, Determinization, Observer, Trace};
pub use threshold::{adaptive_threshold, update_threshold, Threshold, ThresholdState};

use crate::automata::{Dfa, Nfa};
use crate::partition::{bisimulation_quotient, minimize, Signature};
use crate::registry::{Ccl, Ccls, EquivalenceRegistry, OneToOne};
use crate::simulation::{compute_similarity, preprocess_initial_final, simulation_quotient, Preorder};
use crate::{Error, Result};

/// Signature seeding an intermediate minimization: explored states are
/// grouped by acceptance, unexplored states stay unique.
pub fn build_signature(dfa: &Dfa) -> Signature {
    Signature::from_dfa(dfa)
}

/// The eight canonization pipelines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pipeline {
    /// Subset construction, then minimization.
    Sc,
    /// Subset construction through the similarity registry, then minimization.
    ScS,
    /// On-the-fly determinization with the CCL registry.
    Otf,
    /// On-the-fly determinization with the CCLS registry.
    OtfS,
    /// Brzozowski: determinize the reverse, reverse, determinize again.
    Brz,
    BrzS,
    BrzOtf,
    BrzOtfS,
}

impl Pipeline {
    pub const ALL: [Pipeline; 8] = [
        Pipeline::Sc,
        Pipeline::ScS,
        Pipeline::Otf,
        Pipeline::OtfS,
        Pipeline::Brz,
        Pipeline::BrzS,
        Pipeline::BrzOtf,
        Pipeline::BrzOtfS,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Sc => "SC",
            Pipeline::ScS => "SC-S",
            Pipeline::Otf => "OTF",
            Pipeline::OtfS => "OTF-S",
            Pipeline::Brz => "BRZ",
            Pipeline::BrzS => "BRZ-S",
            Pipeline::BrzOtf => "BRZ-OTF",
            Pipeline::BrzOtfS => "BRZ-OTF-S",
        }
    }

    pub fn uses_simulation(self) -> bool {
        matches!(
            self,
            Pipeline::ScS | Pipeline::OtfS | Pipeline::BrzS | Pipeline::BrzOtfS
        )
    }

    /// Whether the first determinization minimizes intermediate automata.
    pub fn uses_intermediate_minimization(self) -> bool {
        matches!(
            self,
            Pipeline::Otf | Pipeline::OtfS | Pipeline::BrzOtf | Pipeline::BrzOtfS
        )
    }

    pub fn is_brzozowski(self) -> bool {
        matches!(
            self,
            Pipeline::Brz | Pipeline::BrzS | Pipeline::BrzOtf | Pipeline::BrzOtfS
        )
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown pipeline `{0}`")]
pub struct UnknownPipeline(String);

impl FromStr for Pipeline {
    type Err = UnknownPipeline;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let wanted = s.to_ascii_uppercase().replace('_', "-");
        Pipeline::ALL
            .into_iter()
            .find(|p| p.name() == wanted)
            .ok_or_else(|| UnknownPipeline(s.to_string()))
    }
}

/// Threshold used by the pipelines with intermediate minimization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdMode {
    Adaptive { initial: usize },
    Always,
    Never,
}

impl Default for ThresholdMode {
    fn default() -> Self {
        ThresholdMode::Adaptive {
            initial: threshold::DEFAULT_INTERVAL,
        }
    }
}

impl ThresholdMode {
    fn build(self) -> Box<dyn Threshold> {
        match self {
            ThresholdMode::Adaptive { initial } => Box::new(threshold::Adaptive::new(initial)),
            ThresholdMode::Always => Box::new(threshold::Always),
            ThresholdMode::Never => Box::new(threshold::Never),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonConfig {
    pub pipeline: Pipeline,
    pub threshold: ThresholdMode,
    pub timeout: Option<Duration>,
    /// Return the total minimal DFA; otherwise states that cannot reach an
    /// accepting state are dropped.
    pub complete: bool,
}

impl CanonConfig {
    pub fn new(pipeline: Pipeline) -> Self {
        Self {
            pipeline,
            threshold: ThresholdMode::default(),
            timeout: None,
            complete: true,
        }
    }

    pub fn with_threshold(mut self, threshold: ThresholdMode) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub wall_time: Duration,
    /// Largest intermediate automaton: the determinized DFA for SC, the
    /// largest automaton between minimizations for OTF, and the larger of the
    /// two determinization phases for the Brzozowski pipelines.
    pub peak_intermediate_states: usize,
    /// Size of the total minimal DFA.
    pub final_states: usize,
    pub overhead: usize,
    pub minimizations: usize,
    pub explored_metastates: usize,
    pub timed_out: bool,
}

#[derive(Clone, Debug)]
pub struct Canonization {
    /// `None` when the run timed out.
    pub dfa: Option<Dfa>,
    pub stats: RunStats,
}

struct Deadline(Option<Instant>);

impl Deadline {
    fn check(&self) -> Result<()> {
        match self.0 {
            Some(d) if Instant::now() >= d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

/// Reduces the NFA handed to the first determinization: bisimulation quotient,
/// or similarity quotient for the simulation pipelines. The returned preorder
/// is the similarity of the returned automaton.
pub fn preprocess(nfa: &Nfa, with_simulation: bool) -> (Nfa, Option<Preorder>) {
    if !with_simulation {
        return (bisimulation_quotient(nfa), None);
    }
    let prepared = preprocess_initial_final(nfa);
    let order = compute_similarity(&prepared);
    let quotient = simulation_quotient(&prepared, &order);
    let order = if quotient.num_states() == prepared.num_states() {
        order
    } else {
        compute_similarity(&quotient)
    };
    (quotient, Some(order))
}

/// Canonizes `nfa` into its minimal DFA with the configured pipeline.
///
/// Timeouts are reported through [`RunStats::timed_out`]; every other
/// failure is an error.
pub fn canonize(nfa: &Nfa, config: &CanonConfig) -> Result<Canonization> {
    let started = Instant::now();
    let deadline = Deadline(config.timeout.map(|t| started + t));
    match run_pipeline(nfa, config, &deadline) {
        Ok((dfa, mut stats)) => {
            stats.wall_time = started.elapsed();
            Ok(Canonization { dfa: Some(dfa), stats })
        }
        Err(Error::Timeout) => Ok(Canonization {
            dfa: None,
            stats: RunStats {
                wall_time: started.elapsed(),
                timed_out: true,
                ..RunStats::default()
            },
        }),
        Err(e) => Err(e),
    }
}

fn run_pipeline(nfa: &Nfa, config: &CanonConfig, deadline: &Deadline) -> Result<(Dfa, RunStats)> {
    deadline.check()?;
    let pipeline = config.pipeline;
    let trimmed = nfa.trim();
    let first_input = if pipeline.is_brzozowski() {
        trimmed.reverse()
    } else {
        trimmed
    };
    let (prepared, order) = preprocess(&first_input, pipeline.uses_simulation());
    deadline.check()?;

    let mut registry: Box<dyn EquivalenceRegistry> = match (order, pipeline.uses_intermediate_minimization()) {
        (Some(order), _) => Box::new(Ccls::new(order)),
        (None, true) => Box::new(Ccl::new()),
        (None, false) => Box::new(OneToOne::new()),
    };
    let mut threshold = if pipeline.uses_intermediate_minimization() {
        config.threshold.build()
    } else {
        ThresholdMode::Never.build()
    };
    let first = otf_determinize_with(&prepared, &mut registry, &mut *threshold, deadline.0, &mut ())?;

    let mut stats = RunStats {
        peak_intermediate_states: first.peak_states,
        minimizations: first.minimizations,
        explored_metastates: first.explored,
        ..RunStats::default()
    };

    let canonical = if pipeline.is_brzozowski() {
        let reversed = first.dfa.accessible().to_nfa().reverse();
        let second = otf_determinize_with(
            &reversed,
            &mut OneToOne::new(),
            &mut threshold::Never,
            deadline.0,
            &mut (),
        )?;
        stats.peak_intermediate_states = stats.peak_intermediate_states.max(second.peak_states);
        stats.explored_metastates += second.explored;
        second.dfa
    } else {
        deadline.check()?;
        let (min, _) = minimize(&first.dfa, &Signature::all_explored(&first.dfa))?;
        stats.minimizations += 1;
        min
    };

    stats.final_states = canonical.num_states();
    stats.peak_intermediate_states = stats.peak_intermediate_states.max(stats.final_states);
    stats.overhead = stats.peak_intermediate_states - stats.final_states;
    let dfa = if config.complete {
        canonical
    } else {
        canonical.without_dead_states()
    };
    Ok((dfa, stats))
}
