use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use otfbench::format::{parse_nfa, serialize_dfa, serialize_nfa, NfaFile};
use otfbench::report::read_csv;
use otfbench::run::{instance_file, run_once, run_sweep, write_instances, write_sweep, SweepConfig};
use otfbench::summary::{render_text, summarize};
use otfbench::BenchError;
use otfcanon::generator::{self, GenParams};
use otfcanon::{CanonConfig, Nfa, Pipeline, ThresholdMode};

#[derive(Parser)]
#[command(
    name = "otfcanon",
    version,
    about = "Canonize NFAs and benchmark canonization pipelines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonize one NFA and print a JSON result row.
    Canonize(CanonizeArgs),
    /// Print a generated NFA in the text format.
    Generate(GenerateArgs),
    /// Run pipelines over generated instances and write CSV results.
    Sweep(SweepArgs),
    /// Print per-pipeline statistics of a result CSV.
    Summarize(SummarizeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ThresholdKind {
    Adaptive,
    Always,
    Never,
}

#[derive(Args)]
struct ThresholdArgs {
    /// When intermediate minimizations run.
    #[arg(long, value_enum, default_value = "adaptive")]
    threshold: ThresholdKind,
    /// Initial interval (and floor) of the adaptive threshold.
    #[arg(long, default_value_t = 5000)]
    threshold_init: usize,
}

impl ThresholdArgs {
    fn mode(&self) -> ThresholdMode {
        match self.threshold {
            ThresholdKind::Adaptive => ThresholdMode::Adaptive {
                initial: self.threshold_init,
            },
            ThresholdKind::Always => ThresholdMode::Always,
            ThresholdKind::Never => ThresholdMode::Never,
        }
    }
}

#[derive(Args)]
struct CanonizeArgs {
    /// NFA file; omit to canonize a generated instance.
    input: Option<PathBuf>,
    #[arg(long, default_value = "otf")]
    pipeline: Pipeline,
    /// Time limit in milliseconds.
    #[arg(long)]
    timeout_ms: Option<u64>,
    #[command(flatten)]
    threshold: ThresholdArgs,
    /// Return the total minimal DFA (default).
    #[arg(long, overrides_with = "no_complete")]
    complete: bool,
    /// Drop states that cannot reach an accepting state.
    #[arg(long)]
    no_complete: bool,
    /// Write the canonical DFA to this file.
    #[arg(long)]
    emit_dfa: Option<PathBuf>,
    #[command(flatten)]
    source: SourceArgs,
}

#[derive(Args)]
struct SourceArgs {
    /// Generate a modular instance with this many states.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use the n-th-from-end blowup NFA instead.
    #[arg(long, conflicts_with = "n")]
    blowup: Option<usize>,
}

impl SourceArgs {
    fn build(&self) -> Result<(String, NfaFile), BenchError> {
        if let Some(n) = self.blowup {
            if n == 0 {
                return Err(BenchError::Usage("--blowup needs n >= 1".into()));
            }
            let file = NfaFile::new(generator::nth_from_end(n)).with_meta("family", format!("nth-from-end-{n}"));
            return Ok((format!("blowup-n{n}"), file));
        }
        let n = self
            .n
            .ok_or_else(|| BenchError::Usage("give an input file, --n or --blowup".into()))?;
        if n == 0 || self.density <= 0.0 {
            return Err(BenchError::Usage("--n and --density must be positive".into()));
        }
        let params = GenParams::new(n, self.density, self.seed);
        Ok((
            format!("mod-n{n}-seed{}", self.seed),
            instance_file(&params, generator::generate(&params)),
        ))
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 20)]
    n_min: usize,
    #[arg(long, default_value_t = 300)]
    n_max: usize,
    #[arg(long, default_value_t = 10)]
    n_step: usize,
    /// Instances per size.
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    #[arg(long, default_value_t = 2.0)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    base_seed: u64,
    /// Comma-separated pipelines, or `all`.
    #[arg(long, default_value = "all")]
    pipelines: String,
    /// Per-run time limit in milliseconds.
    #[arg(long)]
    timeout_ms: Option<u64>,
    #[command(flatten)]
    threshold: ThresholdArgs,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write every instance as a `.nfa` file here.
    #[arg(long)]
    instances_dir: Option<PathBuf>,
    #[arg(short, long, default_value = "results.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct SummarizeArgs {
    file: PathBuf,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
}

fn read_input(path: &Path) -> Result<NfaFile, BenchError> {
    Ok(parse_nfa(&fs::read_to_string(path)?)?)
}

fn canonize_cmd(args: CanonizeArgs) -> Result<(), BenchError> {
    let (id, nfa): (String, Nfa) = match &args.input {
        Some(path) => {
            let id = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input").to_string();
            (id, read_input(path)?.nfa)
        }
        None => {
            let (id, file) = args.source.build()?;
            (id, file.nfa)
        }
    };
    let mut config = CanonConfig::new(args.pipeline).with_threshold(args.threshold.mode());
    config.timeout = args.timeout_ms.map(Duration::from_millis);
    config.complete = !args.no_complete;
    let (row, dfa) = run_once(&id, &nfa, &config)?;
    println!("{}", serde_json::to_string(&row).expect("rows serialize"));
    if let (Some(path), Some(dfa)) = (&args.emit_dfa, &dfa) {
        fs::write(path, serialize_dfa(dfa))?;
    }
    if row.timed_out {
        return Err(BenchError::Timeout);
    }
    Ok(())
}

fn generate_cmd(args: GenerateArgs) -> Result<(), BenchError> {
    let (_, file) = args.source.build()?;
    let text = serialize_nfa(&file);
    match args.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_pipelines(spec: &str) -> Result<Vec<Pipeline>, BenchError> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(Pipeline::ALL.to_vec());
    }
    spec.split(',')
        .map(|p| p.trim().parse().map_err(|e| BenchError::Usage(format!("{e}"))))
        .collect()
}

fn sweep_cmd(args: SweepArgs) -> Result<(), BenchError> {
    if args.n_min == 0 || args.n_step == 0 || args.n_min > args.n_max || args.density <= 0.0 {
        return Err(BenchError::Usage(
            "need 0 < n-min <= n-max, n-step > 0 and density > 0".into(),
        ));
    }
    let config = SweepConfig {
        sizes: (args.n_min..=args.n_max).step_by(args.n_step).collect(),
        seeds: args.seeds,
        density: args.density,
        base_seed: args.base_seed,
        pipelines: parse_pipelines(&args.pipelines)?,
        timeout: args.timeout_ms.map(Duration::from_millis),
        threshold: args.threshold.mode(),
        jobs: args.jobs,
    };
    if let Some(dir) = &args.instances_dir {
        write_instances(&config, dir)?;
    }
    let rows = run_sweep(&config)?;
    let cactus = write_sweep(&rows, &args.out)?;
    let timed_out = rows.iter().filter(|r| r.timed_out).count();
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    eprintln!(
        "{} rows ({timed_out} timed out, {failed} failed) -> {} and {}",
        rows.len(),
        args.out.display(),
        cactus.display()
    );
    Ok(())
}

fn summarize_cmd(args: SummarizeArgs) -> Result<(), BenchError> {
    let rows = read_csv(fs::File::open(&args.file)?)?;
    if rows.is_empty() {
        eprintln!("warning: {} has no result rows", args.file.display());
    }
    let summaries = summarize(&rows);
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&summaries).expect("summaries serialize")
        );
    } else {
        print!("{}", render_text(&summaries));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Canonize(args) => canonize_cmd(args),
        Command::Generate(args) => generate_cmd(args),
        Command::Sweep(args) => sweep_cmd(args),
        Command::Summarize(args) => summarize_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
