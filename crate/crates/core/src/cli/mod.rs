//! Command-line front end: argument parsing and the six subcommands.
//!
//! Commands are deterministic given their flags, the seed, and the tool
//! version. Output files are written to a temp file and atomically renamed,
//! so a failing command never leaves a partial file behind. Progress for
//! long searches goes to stderr only; stdout stays machine-parseable.

mod notes_file;
mod pitch;
mod plot;
mod report;
mod synth;

pub use notes_file::{header_raga, parse as parse_notes_file, render as render_notes_file};
pub use pitch::{Pitch, PitchMap, DEFAULT_NOTE_MS, DEFAULT_SA_HZ};
pub use plot::render_svg;
pub use report::{CorrelationSection, FractalSection, ReportDocument, ScaleEntry, SCHEMA_VERSION};
pub use synth::{render_pcm, wav_bytes, SAMPLE_RATE};

use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use crate::chaos::{iterate, LogisticParams};
use crate::compose::{self, SearchConfig, SearchMode};
use crate::correlate::correlation;
use crate::error::Error;
use crate::fractal::{dimension, FractalConfig};
use crate::raga::{decode_amplitudes, encode, LevelSequence, RagaRegistry, RagaSpec};

#[derive(Debug, Parser)]
#[command(
    name = "ragalab",
    version,
    about = "Generate, compose and analyze raga note strings driven by the logistic map"
)]
pub struct Cli {
    /// Register extra ragas from two-line definition files (line 1 name,
    /// line 2 the alphabet in bin order).
    #[arg(long = "raga-file", global = true, value_name = "PATH")]
    pub raga_files: Vec<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a note string from the logistic map.
    Generate(GenerateArgs),
    /// Search a candidate pool for the closest relative of two parents.
    Compose(ComposeArgs),
    /// Fractal dimension (and optional correlations) of a notes file.
    Analyze(AnalyzeArgs),
    /// Render a notes file as an SVG graph.
    Plot(PlotArgs),
    /// Render a notes file as sine tones in a WAV file.
    Synth(SynthArgs),
    /// List registered ragas.
    ListRagas(ListRagasArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Raga to quantize into.
    #[arg(long, default_value = "bhupali")]
    pub raga: String,
    /// Control parameter of the map, in (0, 4].
    #[arg(long, default_value_t = 3.99)]
    pub lambda: f64,
    /// Initial value, strictly inside (0, 1).
    #[arg(long, default_value_t = 0.1)]
    pub x0: f64,
    /// Number of notes to emit (the first encodes x0 itself).
    #[arg(long, default_value_t = 1000)]
    pub length: usize,
    /// Output notes file; prints the string to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    /// First parent notes file.
    #[arg(long = "a")]
    pub a: PathBuf,
    /// Second parent notes file.
    #[arg(long = "b")]
    pub b: PathBuf,
    /// Candidate pool size (ignored in exhaustive mode).
    #[arg(long, default_value_t = compose::DEFAULT_POOL_SIZE)]
    pub pool: u64,
    /// Seed for the candidate stream.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Candidate generator: logistic, uniform or exhaustive.
    #[arg(long, default_value = "logistic", value_parser = parse_mode)]
    pub mode: SearchMode,
    /// Lower edge of the lambda sampling range (logistic mode).
    #[arg(long = "lambda-min", default_value_t = compose::DEFAULT_LAMBDA_RANGE.0)]
    pub lambda_min: f64,
    /// Upper edge (exclusive) of the lambda sampling range.
    #[arg(long = "lambda-max", default_value_t = compose::DEFAULT_LAMBDA_RANGE.1)]
    pub lambda_max: f64,
    /// Worker threads (0 = all available); the result does not depend on it.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Output notes file for the winning candidate.
    #[arg(long)]
    pub out: PathBuf,
    /// Report JSON path; prints the report to stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Notes file to analyze.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// First reference notes file (enables correlation scoring).
    #[arg(long = "a", requires = "b")]
    pub a: Option<PathBuf>,
    /// Second reference notes file.
    #[arg(long = "b", requires = "a")]
    pub b: Option<PathBuf>,
    /// Smallest grid exponent for box counting.
    #[arg(long = "m-min", default_value_t = 1)]
    pub m_min: u32,
    /// Largest grid exponent for box counting.
    #[arg(long = "m-max", default_value_t = 6)]
    pub m_max: u32,
    /// Report JSON path; prints the report to stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Notes file to plot.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output SVG path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Notes file to render.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Tonic (Sa) frequency in Hz.
    #[arg(long = "sa-hz", default_value_t = DEFAULT_SA_HZ)]
    pub sa_hz: f64,
    /// Duration of each note in milliseconds.
    #[arg(long = "note-ms", default_value_t = DEFAULT_NOTE_MS)]
    pub note_ms: u32,
    /// Output WAV path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ListRagasArgs {
    /// Emit the listing as JSON.
    #[arg(long)]
    pub json: bool,
}

fn parse_mode(s: &str) -> Result<SearchMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let mut registry = RagaRegistry::with_builtins();
    for path in &cli.raga_files {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading raga file {}", path.display()))?;
        let spec = RagaSpec::from_definition(&text)
            .with_context(|| format!("parsing raga file {}", path.display()))?;
        registry.register(spec)?;
    }
    match &cli.command {
        Command::Generate(args) => cmd_generate(&registry, args),
        Command::Compose(args) => cmd_compose(&registry, args),
        Command::Analyze(args) => cmd_analyze(&registry, args),
        Command::Plot(args) => cmd_plot(&registry, args),
        Command::Synth(args) => cmd_synth(&registry, args),
        Command::ListRagas(args) => cmd_list_ragas(&registry, args),
    }
}

fn cmd_generate(registry: &RagaRegistry, args: &GenerateArgs) -> anyhow::Result<()> {
    let raga = registry.get(&args.raga)?;
    let params = LogisticParams::new(args.lambda, args.x0, args.length)?;
    let notes = encode(&iterate(&params), &raga);
    match &args.out {
        Some(path) => write_atomic(path, render_notes_file(&notes).as_bytes())?,
        None => println!("{}", notes.symbols()),
    }
    Ok(())
}

fn cmd_compose(registry: &RagaRegistry, args: &ComposeArgs) -> anyhow::Result<()> {
    let p1 = read_notes(&args.a, registry)?;
    let p2 = read_notes(&args.b, registry)?;
    let cfg = SearchConfig {
        pool_size: args.pool,
        mode: args.mode,
        lambda_range: (args.lambda_min, args.lambda_max),
        seed: args.seed,
        raga: p1.raga().clone(),
        length: p1.len(),
    };
    let pool = cfg.effective_pool_size()?;
    let result = with_thread_pool(args.threads, || {
        if pool >= 20_000 {
            compose::search_with_progress(&p1, &p2, &cfg, |done| {
                eprintln!("progress: {done}/{pool} candidates");
            })
        } else {
            compose::search(&p1, &p2, &cfg)
        }
    })?;
    eprintln!(
        "winner: candidate {} of {pool}, score {:.6}",
        result.candidate_index, result.score
    );
    write_atomic(&args.out, render_notes_file(&result.best).as_bytes())?;
    let fractal = if cfg.length >= 2 {
        Some(dimension::<f64>(
            &result.best.to_levels(),
            &FractalConfig::default(),
        )?)
    } else {
        None
    };
    let report = ReportDocument::for_composition(&result, &cfg, pool, fractal.as_ref());
    emit_report(&report, args.report.as_deref())
}

fn cmd_analyze(registry: &RagaRegistry, args: &AnalyzeArgs) -> anyhow::Result<()> {
    let ls = read_notes(&args.input, registry)?;
    let cfg = FractalConfig {
        m_min: args.m_min,
        m_max: args.m_max,
    };
    let fractal = dimension::<f64>(&ls, &cfg)?;
    eprintln!(
        "dimension: {:.5} (fit r2 {:.4})",
        fractal.dimension, fractal.fit_r2
    );
    let mut report = ReportDocument::new(ls.raga().name(), ls.len());
    report.fractal = Some(FractalSection::from(&fractal));
    if let (Some(a), Some(b)) = (&args.a, &args.b) {
        let p1 = read_notes(a, registry)?;
        let p2 = read_notes(b, registry)?;
        for parent in [&p1, &p2] {
            if parent.raga() != ls.raga() {
                return Err(Error::RagaMismatch {
                    left: ls.raga().name().to_string(),
                    right: parent.raga().name().to_string(),
                }
                .into());
            }
        }
        let amps = decode_amplitudes::<f64>(&ls);
        let a1 = decode_amplitudes::<f64>(&p1);
        let a2 = decode_amplitudes::<f64>(&p2);
        let c1 = correlation(amps.values(), a1.values())?;
        let c2 = correlation(amps.values(), a2.values())?;
        report.correlations = Some(CorrelationSection {
            c1,
            c2,
            score: c1 + c2,
        });
    }
    emit_report(&report, args.report.as_deref())
}

fn cmd_plot(registry: &RagaRegistry, args: &PlotArgs) -> anyhow::Result<()> {
    let ls = read_notes(&args.input, registry)?;
    let svg = render_svg(&ls)?;
    write_atomic(&args.out, svg.as_bytes())
}

fn cmd_synth(registry: &RagaRegistry, args: &SynthArgs) -> anyhow::Result<()> {
    let ls = read_notes(&args.input, registry)?;
    let map = PitchMap::builtin(ls.raga()).ok_or_else(|| {
        anyhow::anyhow!(
            "raga {:?} has no pitch map; synth supports the built-in ragas only",
            ls.raga().name()
        )
    })?;
    let pcm = render_pcm(&ls, &map, args.sa_hz, args.note_ms)?;
    write_atomic(&args.out, &wav_bytes(&pcm))
}

fn cmd_list_ragas(registry: &RagaRegistry, args: &ListRagasArgs) -> anyhow::Result<()> {
    if args.json {
        let entries: Vec<serde_json::Value> = registry
            .iter()
            .map(|raga| {
                serde_json::json!({
                    "name": raga.name(),
                    "n_levels": raga.n_levels(),
                    "alphabet": raga.alphabet().iter().collect::<String>(),
                    "bin_width": 1.0 / raga.n_levels() as f64,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&entries)?);
    } else {
        for raga in registry.iter() {
            let alphabet: String = raga
                .alphabet()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            println!(
                "{:<12} {} levels  bin width 1/{}  alphabet {}",
                raga.name(),
                raga.n_levels(),
                raga.n_levels(),
                alphabet
            );
        }
    }
    Ok(())
}

fn read_notes(path: &Path, registry: &RagaRegistry) -> anyhow::Result<LevelSequence> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_notes_file(&text, registry).with_context(|| format!("parsing {}", path.display()))
}

fn emit_report(report: &ReportDocument, path: Option<&Path>) -> anyhow::Result<()> {
    report.validate()?;
    let json = report.to_json();
    match path {
        Some(path) => write_atomic(path, json.as_bytes()),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

/// Writes via a temp file in the target directory plus an atomic rename, so
/// failures never leave a partial output behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temp file in {}", dir.display()))?;
    tmp.write_all(bytes)
        .with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

fn with_thread_pool<T, F>(threads: usize, f: F) -> anyhow::Result<T>
where
    T: Send,
    F: FnOnce() -> crate::Result<T> + Send,
{
    let result = if threads == 0 {
        f()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .context("building thread pool")?;
        pool.install(f)
    };
    Ok(result?)
}
