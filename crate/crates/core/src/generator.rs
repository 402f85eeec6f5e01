//! Random NFAs with modular structure, plus the classic exponential-blowup
//! family.
//!
//! States `0..n` are split into `k = max(1, floor(sqrt(n)))` classes by
//! `q mod k`. The alphabet has `k` symbols, and a transition on symbol `a` out
//! of class `i` always targets class `(i + a) mod k`. The smallest state of
//! each class is both initial and accepting.
//!
//! For every class and symbol, `round(density * |class| / k)` edges are drawn
//! by pairing source states with target states, both taken from shuffled
//! round-robin pools per class; duplicate edges are dropped. Every state
//! therefore has expected out-degree `density` and in-degrees stay balanced.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::automata::Nfa;

/// Identifier of the generator's sampling procedure and PRNG, recorded in
/// instance metadata.
pub const GENERATOR_VERSION: &str = "modular-v1/chacha8";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub density: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n: usize, density: f64, seed: u64) -> Self {
        assert!(n >= 1, "at least one state");
        assert!(density > 0.0, "density must be positive");
        Self { n, density, seed }
    }

    /// Number of classes, which is also the alphabet size.
    pub fn classes(&self) -> usize {
        num_classes(self.n)
    }
}

pub fn num_classes(n: usize) -> usize {
    let mut k = (n as f64).sqrt() as usize;
    while k * k > n {
        k -= 1;
    }
    while (k + 1) * (k + 1) <= n {
        k += 1;
    }
    k.max(1)
}

pub fn generate(params: &GenParams) -> Nfa {
    let n = params.n;
    let k = params.classes();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut nfa = Nfa::new(n, k).expect("n >= 1 and k >= 1");
    let class: Vec<Vec<usize>> = (0..k).map(|i| (i..n).step_by(k).collect()).collect();

    for i in 0..k {
        nfa.add_initial(i).expect("class representative in range");
        nfa.add_accepting(i).expect("class representative in range");
    }
    // Per class, one shuffled round-robin pool of sources covering all
    // symbols and one pool of targets covering all incoming (class, symbol)
    // pairs, consumed in order.
    let edges: Vec<usize> = class
        .iter()
        .map(|c| (params.density * c.len() as f64 / k as f64).round() as usize)
        .collect();
    let mut sources: Vec<Vec<usize>> = class.iter().zip(&edges).map(|(c, &m)| round_robin(c, m * k)).collect();
    let mut targets: Vec<Vec<usize>> = (0..k)
        .map(|j| {
            let incoming = (0..k).map(|a| edges[(j + k - a) % k]).sum();
            round_robin(&class[j], incoming)
        })
        .collect();
    for pool in sources.iter_mut().chain(targets.iter_mut()) {
        pool.shuffle(&mut rng);
    }
    let mut cursor = vec![0usize; k];
    for i in 0..k {
        let m = edges[i];
        for a in 0..k {
            let j = (i + a) % k;
            let from = &sources[i][a * m..(a + 1) * m];
            let to = &targets[j][cursor[j]..cursor[j] + m];
            cursor[j] += m;
            for (&s, &t) in from.iter().zip(to) {
                nfa.add_transition(s, a, t).expect("in range");
            }
        }
    }
    nfa
}

fn round_robin(items: &[usize], len: usize) -> Vec<usize> {
    items.iter().copied().cycle().take(len).collect()
}

/// Seed of the `index`-th instance with `n` states, derived from `base` by a
/// SplitMix64 mix so that instance sets are stable across runs.
pub fn instance_seed(base: u64, n: usize, index: usize) -> u64 {
    let mut x = base;
    for v in [n as u64, index as u64] {
        x = splitmix64(x ^ splitmix64(v));
    }
    x
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// A generated benchmark instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub params: GenParams,
    pub nfa: Nfa,
}

/// `seeds_per_n` instances for every size, in order of `n_values`.
pub fn sweep(n_values: &[usize], seeds_per_n: usize, density: f64, base_seed: u64) -> Vec<Instance> {
    n_values
        .iter()
        .flat_map(|&n| {
            (0..seeds_per_n).map(move |j| {
                let params = GenParams::new(n, density, instance_seed(base_seed, n, j));
                Instance {
                    id: format!("mod-n{n}-s{j}"),
                    nfa: generate(&params),
                    params,
                }
            })
        })
        .collect()
}

/// Sizes `20, 30, ..., 300`.
pub fn default_sizes() -> Vec<usize> {
    (20..=300).step_by(10).collect()
}

/// Words over `{a, b}` (symbols 0 and 1) whose `n`-th symbol from the end is
/// `a`. The NFA has `n + 1` states; the minimal DFA has `2^n`.
pub fn nth_from_end(n: usize) -> Nfa {
    assert!(n >= 1);
    let mut nfa = Nfa::new(n + 1, 2).expect("non-empty");
    nfa.add_transition(0, 0, 0).unwrap();
    nfa.add_transition(0, 1, 0).unwrap();
    nfa.add_transition(0, 0, 1).unwrap();
    for i in 1..n {
        nfa.add_transition(i, 0, i + 1).unwrap();
        nfa.add_transition(i, 1, i + 1).unwrap();
    }
    nfa.add_initial(0).unwrap();
    nfa.add_accepting(n).unwrap();
    nfa
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        assert_eq!(num_classes(20), 4);
        assert_eq!(num_classes(300), 17);
        assert_eq!(num_classes(1), 1);
        assert_eq!(num_classes(3), 1);
        assert_eq!(num_classes(4), 2);
        assert_eq!(num_classes(289), 17);
        assert_eq!(num_classes(288), 16);
    }

    #[test]
    fn twenty_states() {
        let nfa = generate(&GenParams::new(20, 2.0, 1));
        assert_eq!(nfa.alphabet_size(), 4);
        assert_eq!(nfa.num_states(), 20);
        assert_eq!(nfa.initial().to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(nfa.accepting().to_vec(), vec![0, 1, 2, 3]);
        // state 5 is in class 1, so its a=2 successors are in class 3
        for &t in nfa.targets(5, 2) {
            assert_eq!(t % 4, 3);
        }
    }

    #[test]
    fn single_state() {
        let nfa = generate(&GenParams::new(1, 2.0, 7));
        assert_eq!(nfa.alphabet_size(), 1);
        assert_eq!(nfa.initial().to_vec(), vec![0]);
        for (s, _, t) in nfa.transitions() {
            assert_eq!((s, t), (0, 0));
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let p = GenParams::new(50, 2.0, 99);
        assert_eq!(generate(&p), generate(&p));
        assert_ne!(generate(&p), generate(&GenParams::new(50, 2.0, 100)));
    }

    #[test]
    fn sweep_sizes() {
        assert_eq!(default_sizes().len(), 29);
        assert_eq!(sweep(&[20], 1, 2.0, 0).len(), 1);
        let a = sweep(&[20, 30], 3, 2.0, 5);
        let b = sweep(&[20, 30], 3, 2.0, 5);
        assert_eq!(a.len(), 6);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.nfa, y.nfa);
        }
        assert_ne!(a[0].params.seed, a[1].params.seed);
    }

    #[test]
    fn blowup_family_shape() {
        let nfa = nth_from_end(3);
        assert_eq!(nfa.num_states(), 4);
        assert_eq!(nfa.num_transitions(), 3 + 2 * 2);
    }
}
