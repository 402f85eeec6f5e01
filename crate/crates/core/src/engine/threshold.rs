//! Threshold predicates deciding when the partially built DFA is minimized.

/// Consulted once per fully explored DFA state.
pub trait Threshold {
    fn should_minimize(&mut self, dfa_states: usize) -> bool;

    /// Reports the size of the freshly minimized DFA.
    fn minimized(&mut self, _dfa_states: usize) {}
}

/// Never fires; determinization degenerates to plain subset construction.
#[derive(Clone, Copy, Debug, Default)]
pub struct Never;

impl Threshold for Never {
    fn should_minimize(&mut self, _dfa_states: usize) -> bool {
        false
    }
}

/// Fires after every explored state.
#[derive(Clone, Copy, Debug, Default)]
pub struct Always;

impl Threshold for Always {
    fn should_minimize(&mut self, _dfa_states: usize) -> bool {
        true
    }
}

pub const DEFAULT_INTERVAL: usize = 5000;

/// State of the adaptive threshold.
///
/// The predicate fires every `t` calls. After each minimization `t` is scaled
/// by `s_new / s_old`, the ratio of the new to the previous minimized size.
/// `t` never drops below `base` and grows by at most `base` per update.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThresholdState {
    pub t: usize,
    pub s_old: usize,
    pub calls_since_last: usize,
    base: usize,
}

impl ThresholdState {
    /// `base` is the initial interval, the floor of `t`, the cap on its
    /// per-update growth and the initial `s_old`.
    pub fn new(base: usize) -> Self {
        let base = base.max(1);
        Self {
            t: base,
            s_old: base,
            calls_since_last: 0,
            base,
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }
}

impl Default for ThresholdState {
    fn default() -> Self {
        Self::new(DEFAULT_INTERVAL)
    }
}

/// Counts one call; fires (and resets the counter) once `t` calls accumulated.
pub fn adaptive_threshold(state: &mut ThresholdState, _current_dfa_size: usize) -> bool {
    state.calls_since_last += 1;
    if state.calls_since_last >= state.t {
        state.calls_since_last = 0;
        true
    } else {
        false
    }
}

/// `t ← max(base, min(round(t · s_new / s_old), t + base))`, then
/// `s_old ← s_new`. A zero size counts as one.
pub fn update_threshold(state: ThresholdState, s_new: usize) -> ThresholdState {
    let s_new = s_new.max(1);
    let (t, s_old) = (state.t as u128, state.s_old.max(1) as u128);
    let scaled = (t * s_new as u128 + s_old / 2) / s_old;
    let capped = scaled.min(t + state.base as u128);
    let t = capped.max(state.base as u128) as usize;
    ThresholdState {
        t,
        s_old: s_new,
        ..state
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Adaptive {
    pub state: ThresholdState,
}

impl Adaptive {
    pub fn new(base: usize) -> Self {
        Self {
            state: ThresholdState::new(base),
        }
    }
}

impl Threshold for Adaptive {
    fn should_minimize(&mut self, dfa_states: usize) -> bool {
        adaptive_threshold(&mut self.state, dfa_states)
    }

    fn minimized(&mut self, dfa_states: usize) {
        self.state = update_threshold(self.state, dfa_states);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(t: usize, s_old: usize) -> ThresholdState {
        ThresholdState {
            t,
            s_old,
            ..ThresholdState::default()
        }
    }

    #[test]
    fn fires_every_t_calls() {
        let mut s = ThresholdState::default();
        for _ in 0..4999 {
            assert!(!adaptive_threshold(&mut s, 0));
        }
        assert!(adaptive_threshold(&mut s, 0));
        assert_eq!(s.calls_since_last, 0);
        for _ in 0..4999 {
            assert!(!adaptive_threshold(&mut s, 0));
        }
        assert!(adaptive_threshold(&mut s, 0));
    }

    #[test]
    fn update_examples() {
        assert_eq!(update_threshold(state(5000, 5000), 2500).t, 5000);
        assert_eq!(update_threshold(state(5000, 5000), 7500).t, 7500);
        let s = update_threshold(state(8000, 4000), 20000);
        assert_eq!(s.t, 13000);
        assert_eq!(s.s_old, 20000);
        assert_eq!(update_threshold(state(5000, 5000), 0).s_old, 1);
    }
}
