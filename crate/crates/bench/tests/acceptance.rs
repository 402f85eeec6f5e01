//! Acceptance checks. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use otfbench::format::serialize_nfa;
use otfbench::report::{write_csv, ResultRow};
use otfbench::run::{instance_file, run_sweep, write_instances, SweepConfig};
use otfcanon::automata::{determinize, isomorphic, language_equivalent, Dfa};
use otfcanon::engine::threshold::{Adaptive, Always};
use otfcanon::engine::{adaptive_threshold, otf_determinize_with, update_threshold, Observer, ThresholdState, Trace};
use otfcanon::generator::{generate, instance_seed, nth_from_end, GenParams};
use otfcanon::partition::{minimize, Signature};
use otfcanon::registry::{Ccl, Ccls, EquivalenceRegistry, Lattice, Lookup};
use otfcanon::simulation::{compute_similarity, Preorder};
use otfcanon::{canonize, CanonConfig, Metastate, Nfa, Pipeline, ThresholdMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BASE_SEED: u64 = 2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle(nfa: &Nfa) -> Dfa {
    let d = determinize(nfa);
    minimize(&d, &Signature::all_explored(&d)).unwrap().0.complete()
}

/// The 500-instance set: n cycles through 5..=40.
fn oracle_instances() -> Vec<(String, Nfa)> {
    (0..500)
        .map(|i| {
            let n = 5 + i % 36;
            let params = GenParams::new(n, 2.0, instance_seed(BASE_SEED, n, i));
            (format!("n{n}-i{i}"), generate(&params))
        })
        .collect()
}

/// Arbitrary NFA: each of the `n * k * n` possible edges present with
/// probability `p`.
fn random_nfa(rng: &mut ChaCha8Rng, n: usize, k: usize, p: f64) -> Nfa {
    let mut nfa = Nfa::new(n, k).unwrap();
    for s in 0..n {
        for a in 0..k {
            for t in 0..n {
                if rng.gen_bool(p) {
                    nfa.add_transition(s, a, t).unwrap();
                }
            }
        }
        if rng.gen_bool(0.3) {
            nfa.add_accepting(s).unwrap();
        }
    }
    nfa.add_initial(rng.gen_range(0..n)).unwrap();
    if rng.gen_bool(0.5) {
        nfa.add_initial(rng.gen_range(0..n)).unwrap();
    }
    nfa
}

fn oracle_canonicity() -> Outcome {
    let mut runs = 0;
    for (id, nfa) in oracle_instances() {
        let expected = oracle(&nfa);
        for p in Pipeline::ALL {
            for mode in [ThresholdMode::default(), ThresholdMode::Always] {
                let dfa = canonize(&nfa, &CanonConfig::new(p).with_threshold(mode))
                    .map_err(|e| format!("{id} {p}: {e}"))?
                    .dfa
                    .ok_or_else(|| format!("{id} {p}: no output"))?;
                ensure(isomorphic(&expected, &dfa).unwrap(), || {
                    format!("{id} {p} {mode:?}: not isomorphic")
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!(
        "500 instances, {runs} runs (default and always-firing thresholds) isomorphic to oracle"
    ))
}

fn brzozowski_minimality() -> Outcome {
    let mut checked = 0;
    for (id, nfa) in oracle_instances() {
        for p in Pipeline::ALL.into_iter().filter(|p| p.is_brzozowski()) {
            let dfa = canonize(&nfa, &CanonConfig::new(p)).unwrap().dfa.unwrap();
            let (_, merges) = minimize(&dfa, &Signature::all_explored(&dfa)).unwrap();
            ensure(merges.is_empty(), || format!("{id} {p}: {} merges", merges.len()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} Brzozowski outputs, all follow-up MergeLists empty"))
}

fn blowup_family() -> Outcome {
    for n in 2..=12 {
        let nfa = nth_from_end(n);
        let expected = 1usize << n;
        ensure(oracle(&nfa).num_states() == expected, || {
            format!("oracle size wrong for n={n}")
        })?;
        for p in Pipeline::ALL {
            let out = canonize(&nfa, &CanonConfig::new(p)).unwrap();
            ensure(out.stats.final_states == expected, || {
                format!("n={n} {p}: {} states, expected {expected}", out.stats.final_states)
            })?;
        }
    }
    Ok("n=2..12, all pipelines give exactly 2^n states".into())
}

#[derive(Default)]
struct Hits(Vec<(Metastate, usize)>);

impl Observer for Hits {
    fn on_lookup(&mut self, q: &Metastate, result: Lookup) {
        if let Lookup::Covered(s) = result {
            self.0.push((q.clone(), s));
        }
    }
}

fn check_hits<R: EquivalenceRegistry>(nfa: &Nfa, mut registry: R, always: bool) -> Result<usize, String> {
    let mut hits = Hits::default();
    let run = if always {
        otf_determinize_with(nfa, &mut registry, &mut Always, None, &mut hits)
    } else {
        otf_determinize_with(nfa, &mut registry, &mut Adaptive::new(2), None, &mut hits)
    }
    .map_err(|e| e.to_string())?;
    for (q, s) in &hits.0 {
        let queried = determinize(&nfa.with_initial(q.clone()).unwrap());
        let returned = run.dfa.rooted_at(run.state_map[*s]);
        ensure(language_equivalent(&queried, &returned).unwrap(), || {
            format!("metastate {q} resolved to state {s}")
        })?;
    }
    ensure(language_equivalent(&run.dfa, &determinize(nfa)).unwrap(), || {
        "run language differs".into()
    })?;
    Ok(hits.0.len())
}

fn registry_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(BASE_SEED);
    let mut nfas: Vec<Nfa> = (0..300)
        .map(|i| {
            generate(&GenParams::new(
                4 + i % 9,
                [1.5, 2.0, 3.0][i % 3],
                instance_seed(BASE_SEED, 12, i),
            ))
        })
        .collect();
    for _ in 0..300 {
        let n = rng.gen_range(2..=12);
        let k = rng.gen_range(1..=3);
        nfas.push(random_nfa(&mut rng, n, k, 1.5 / n as f64));
    }
    let (mut hits, mut runs) = (0, 0);
    for (i, nfa) in nfas.iter().enumerate() {
        for always in [true, false] {
            let wrap = |e: String| format!("nfa {i}: {e}");
            hits += check_hits(nfa, Ccl::new(), always).map_err(wrap)?;
            hits += check_hits(nfa, Ccls::new(compute_similarity(nfa)), always).map_err(wrap)?;
            runs += 2;
        }
    }
    ensure(hits > 0, || "no non-exact hits were exercised".into())?;
    Ok(format!(
        "{runs} instrumented runs on NFAs with <= 12 states, {hits} non-exact hits, 0 violations"
    ))
}

fn ccls_matches_ccl() -> Outcome {
    for i in 0..100 {
        let n = 5 + i % 26;
        let nfa = generate(&GenParams::new(n, 2.0, instance_seed(BASE_SEED + 1, n, i)));
        for always in [true, false] {
            let (mut left, mut right) = (Trace::default(), Trace::default());
            let mut ccls = Ccls::new(Preorder::identity(nfa.num_states()));
            if always {
                otf_determinize_with(&nfa, &mut Ccl::new(), &mut Always, None, &mut left).unwrap();
                otf_determinize_with(&nfa, &mut ccls, &mut Always, None, &mut right).unwrap();
            } else {
                otf_determinize_with(&nfa, &mut Ccl::new(), &mut Adaptive::new(3), None, &mut left).unwrap();
                otf_determinize_with(&nfa, &mut ccls, &mut Adaptive::new(3), None, &mut right).unwrap();
            }
            ensure(left.explored == right.explored, || {
                format!("instance {i}: explored traces differ")
            })?;
        }
    }
    Ok("100 instances, identical explored-metastate traces".into())
}

/// Some word of length at most `max_len` is accepted from `x` but not from
/// `y`; explores pairs of subset-construction states breadth-first.
fn inclusion_fails(nfa: &Nfa, x: usize, y: usize, max_len: usize) -> bool {
    let start = (Metastate::singleton(x), Metastate::singleton(y));
    let mut seen = HashSet::from([start.clone()]);
    let mut layer = vec![start];
    for depth in 0..=max_len {
        let mut next = Vec::new();
        for (qx, qy) in layer {
            if nfa.is_accepting_set(&qx) && !nfa.is_accepting_set(&qy) {
                return true;
            }
            if depth == max_len {
                continue;
            }
            for a in 0..nfa.alphabet_size() {
                let pair = (nfa.successors(&qx, a).unwrap(), nfa.successors(&qy, a).unwrap());
                if !pair.0.is_empty() && seen.insert(pair.clone()) {
                    next.push(pair);
                }
            }
        }
        layer = next;
    }
    false
}

fn simulation_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(BASE_SEED + 2);
    let mut pairs = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=8);
        let k = rng.gen_range(1..=3);
        let p = rng.gen_range(0.1..0.5);
        let nfa = random_nfa(&mut rng, n, k, p);
        let order = compute_similarity(&nfa);
        for (x, y) in order.pairs() {
            ensure(!inclusion_fails(&nfa, x, y, 16), || {
                format!("nfa {i}: {x} <= {y} but inclusion fails")
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "200 NFAs with <= 8 states, {pairs} similarity pairs, 0 violations up to length 16"
    ))
}

fn threshold_suite() -> Outcome {
    let with = |t, s_old| {
        let mut state = ThresholdState::default();
        state.t = t;
        state.s_old = s_old;
        state
    };
    let cases = [
        ((5000, 5000), 2500, 5000),
        ((5000, 5000), 7500, 7500),
        ((8000, 4000), 20000, 13000),
    ];
    for ((t, s_old), s_new, expected) in cases {
        let got = update_threshold(with(t, s_old), s_new).t;
        ensure(got == expected, || {
            format!("t={t} s_old={s_old} s_new={s_new}: got {got}, expected {expected}")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(BASE_SEED + 3);
    for _ in 0..20 {
        let mut state = ThresholdState::default();
        for step in 0..1000 {
            adaptive_threshold(&mut state, 0);
            let s_new = if rng.gen_bool(0.1) {
                0
            } else {
                rng.gen_range(1..=1_000_000)
            };
            state = update_threshold(state, s_new);
            ensure(state.t >= 5000, || format!("t dropped to {} at step {step}", state.t))?;
        }
    }
    Ok("3 update examples exact; t >= 5000 over 20 random 1000-step sequences".into())
}

fn convexity_closure_fixture() -> Outcome {
    let ms = |v: &[usize]| Metastate::from_states(v.iter().copied());
    let expected: HashSet<Metastate> = [
        &[1, 2][..],
        &[3, 4],
        &[1, 2, 3],
        &[1, 2, 4],
        &[1, 3, 4],
        &[2, 3, 4],
        &[1, 2, 3, 4],
    ]
    .into_iter()
    .map(ms)
    .collect();
    let lattice = Lattice::singleton(ms(&[1, 2]), 0).join(Lattice::singleton(ms(&[3, 4]), 1), 0);
    let mut registry = Ccl::new();
    registry.put(ms(&[1, 2]), 0).unwrap();
    registry.put(ms(&[3, 4]), 1).unwrap();
    registry.unify(0, 1);
    let mut accepted = HashSet::new();
    for bits in 1u32..32 {
        let q: Metastate = (1..=5).filter(|i| bits >> (i - 1) & 1 == 1).collect();
        let member = lattice.covers(&q);
        ensure(member == (registry.get(&q) == Some(0)), || {
            format!("lattice and registry disagree on {q}")
        })?;
        if member {
            accepted.insert(q);
        }
    }
    ensure(accepted == expected, || format!("accepted {} subsets", accepted.len()))?;
    Ok("exactly the 7 closure elements of 31 nonempty subsets accepted".into())
}

fn median(values: &mut [usize]) -> f64 {
    values.sort_unstable();
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2] as f64
    } else {
        (values[n / 2 - 1] + values[n / 2]) as f64 / 2.0
    }
}

fn qualitative_trend() -> Outcome {
    let config = SweepConfig {
        sizes: vec![200],
        seeds: 10,
        density: 2.0,
        base_seed: BASE_SEED,
        pipelines: vec![Pipeline::Sc, Pipeline::Otf],
        timeout: Some(Duration::from_secs(300)),
        threshold: ThresholdMode::default(),
        jobs: None,
    };
    let rows = run_sweep(&config).map_err(|e| e.to_string())?;
    let by = |name: &str| -> Vec<&ResultRow> { rows.iter().filter(|r| r.pipeline == name).collect() };
    let (sc, otf) = (by("SC"), by("OTF"));
    for (s, o) in sc.iter().zip(&otf) {
        ensure(!s.completed() || o.completed(), || {
            format!("{}: SC completed but OTF did not", s.instance)
        })?;
    }
    let overheads =
        |rows: &[&ResultRow]| -> Vec<usize> { rows.iter().filter(|r| r.completed()).map(|r| r.overhead).collect() };
    let (m_sc, m_otf) = (median(&mut overheads(&sc)), median(&mut overheads(&otf)));
    let done = |rows: &[&ResultRow]| rows.iter().filter(|r| r.completed()).count();
    ensure(m_otf <= m_sc, || format!("median overhead OTF {m_otf} > SC {m_sc}"))?;
    Ok(format!(
        "n=200: median overhead OTF {m_otf} <= SC {m_sc}; completed OTF {}/10, SC {}/10",
        done(&otf),
        done(&sc)
    ))
}

fn determinism() -> Outcome {
    let config = SweepConfig {
        sizes: vec![20, 50, 80],
        seeds: 3,
        density: 2.0,
        base_seed: BASE_SEED,
        pipelines: Pipeline::ALL.to_vec(),
        timeout: None,
        threshold: ThresholdMode::Adaptive { initial: 10 },
        jobs: None,
    };
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut files = Vec::new();
    let mut csvs = Vec::new();
    for dir in &dirs {
        write_instances(&config, dir.path()).map_err(|e| e.to_string())?;
        let mut names: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        names.sort();
        files.push(
            names
                .iter()
                .map(|p| (p.file_name().unwrap().to_owned(), std::fs::read(p).unwrap()))
                .collect::<Vec<_>>(),
        );
        let rows: Vec<ResultRow> = run_sweep(&config)
            .unwrap()
            .iter()
            .map(ResultRow::without_timing)
            .collect();
        let mut csv = Vec::new();
        write_csv(&mut csv, &rows).unwrap();
        csvs.push(csv);
    }
    ensure(files[0].len() == 9, || format!("{} instance files", files[0].len()))?;
    ensure(files[0] == files[1], || "instance files differ".into())?;
    ensure(csvs[0] == csvs[1], || "non-timing CSV columns differ".into())?;
    let params = GenParams::new(60, 2.0, 5);
    let a = serialize_nfa(&instance_file(&params, generate(&params)));
    let b = serialize_nfa(&instance_file(&params, generate(&params)));
    ensure(a == b, || "generate is not byte-stable".into())?;
    Ok("9 instance files byte-identical, 72-row CSVs identical without timing".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle canonicity", oracle_canonicity),
        ("Brzozowski minimality", brzozowski_minimality),
        ("blowup family", blowup_family),
        ("registry soundness", registry_soundness),
        ("CCLS equals CCL under identity preorder", ccls_matches_ccl),
        ("simulation soundness", simulation_soundness),
        ("threshold unit suite", threshold_suite),
        ("convexity-closure fixture", convexity_closure_fixture),
        ("qualitative trend at n=200", qualitative_trend),
        ("determinism", determinism),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
