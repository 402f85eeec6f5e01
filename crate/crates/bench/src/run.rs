//! Single runs and sweeps over generated instances.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use otfcanon::generator::{self, GenParams, Instance, GENERATOR_VERSION};
use otfcanon::{canonize, CanonConfig, Dfa, Nfa, Pipeline, ThresholdMode};
use rayon::prelude::*;

use crate::format::{serialize_nfa, NfaFile};
use crate::report::{write_cactus, write_csv, ResultRow};
use crate::BenchError;

/// Canonizes one instance. Timeouts yield a row with `timed_out` set and no
/// DFA.
pub fn run_once(instance: &str, nfa: &Nfa, config: &CanonConfig) -> Result<(ResultRow, Option<Dfa>), BenchError> {
    let out = canonize(nfa, config)?;
    Ok((ResultRow::from_stats(instance, config.pipeline, &out.stats), out.dfa))
}

/// The file form of a generated instance, with its parameters as metadata.
pub fn instance_file(params: &GenParams, nfa: Nfa) -> NfaFile {
    NfaFile::new(nfa)
        .with_meta("n", params.n)
        .with_meta("k", params.classes())
        .with_meta("density", params.density)
        .with_meta("seed", params.seed)
        .with_meta("generator", GENERATOR_VERSION)
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub sizes: Vec<usize>,
    pub seeds: usize,
    pub density: f64,
    pub base_seed: u64,
    pub pipelines: Vec<Pipeline>,
    pub timeout: Option<Duration>,
    pub threshold: ThresholdMode,
    /// Worker threads; `None` uses all cores.
    pub jobs: Option<usize>,
}

impl SweepConfig {
    pub fn instances(&self) -> Vec<Instance> {
        generator::sweep(&self.sizes, self.seeds, self.density, self.base_seed)
    }
}

/// Runs every pipeline on every instance. Rows come back in instance order,
/// then pipeline order, whatever the scheduling; failures become rows.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<ResultRow>, BenchError> {
    let instances = config.instances();
    let jobs: Vec<(&Instance, Pipeline)> = instances
        .iter()
        .flat_map(|i| config.pipelines.iter().map(move |&p| (i, p)))
        .collect();
    let run = |&(instance, pipeline): &(&Instance, Pipeline)| {
        let mut canon = CanonConfig::new(pipeline).with_threshold(config.threshold);
        canon.timeout = config.timeout;
        match run_once(&instance.id, &instance.nfa, &canon) {
            Ok((row, _)) => row,
            Err(e) => ResultRow::failed(&instance.id, pipeline, e.to_string()),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.unwrap_or(0))
        .build()
        .map_err(|e| BenchError::Io(std::io::Error::other(e)))?;
    Ok(pool.install(|| jobs.par_iter().map(run).collect()))
}

/// Companion path of the cactus columns: `out.csv` becomes `out.cactus.csv`.
pub fn cactus_path(csv: &Path) -> PathBuf {
    let stem = csv.file_stem().and_then(|s| s.to_str()).unwrap_or("results");
    csv.with_file_name(format!("{stem}.cactus.csv"))
}

/// Writes the result CSV and its cactus companion.
pub fn write_sweep(rows: &[ResultRow], csv_path: &Path) -> Result<PathBuf, BenchError> {
    write_csv(fs::File::create(csv_path)?, rows)?;
    let cactus = cactus_path(csv_path);
    write_cactus(fs::File::create(&cactus)?, rows)?;
    Ok(cactus)
}

/// Writes every instance of the sweep as `<id>.nfa` into `dir`.
pub fn write_instances(config: &SweepConfig, dir: &Path) -> Result<(), BenchError> {
    fs::create_dir_all(dir)?;
    for instance in config.instances() {
        let text = serialize_nfa(&instance_file(&instance.params, instance.nfa));
        fs::write(dir.join(format!("{}.nfa", instance.id)), text)?;
    }
    Ok(())
}
