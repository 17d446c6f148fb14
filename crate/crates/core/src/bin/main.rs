use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use chimera_clique::defects::{embed_with_intra_failures, ChainLength, DEFAULT_FAILURE_CAP};
use chimera_clique::dp::{native_clique_embed, sweep};
use chimera_clique::embedding::{triangle_embedding, validate_embedding, BlockFile, NativeCliqueEmbedding};
use chimera_clique::oracle::{brute_force_best, DEFAULT_CAP};
use chimera_clique::topology::{random_qubits, ChimeraShape, Coupler, HardwareGraph};
use chimera_clique::word::{block_embedding_count, enumerate_block_embeddings};
use chimera_clique::yield_lab::{
    aggregate, aggregate_csv, aggregate_svg, records_csv, run_experiment, ExperimentConfig,
};
use chimera_clique::Error;

#[derive(Parser)]
#[command(name = "chimera-clique", version, about = "Native clique embeddings in defective Chimera graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a Chimera graph file, optionally with random defects.
    Generate(GenerateArgs),
    /// Find a largest native clique embedding.
    Embed(EmbedArgs),
    /// Brute-force the best block clique embedding for one n.
    Oracle(OracleArgs),
    /// List or count block clique embeddings as direction words.
    Enumerate(EnumerateArgs),
    /// Check an embedding against a graph.
    Validate(ValidateArgs),
    /// Emit the triangle embedding of a defect-free square grid.
    Triangle(TriangleArgs),
    /// Run a clique-yield experiment.
    Yield(YieldArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long = "M")]
    m: u32,
    #[arg(long = "N")]
    n: Option<u32>,
    #[arg(long = "L")]
    l: u32,
    /// Number of qubits to delete uniformly at random.
    #[arg(long, default_value_t = 0)]
    dead_qubits: usize,
    /// Number of couplers between surviving qubits to delete uniformly at random.
    #[arg(long, default_value_t = 0)]
    dead_couplers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum IntraFailures {
    Auto,
    Off,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Chain length parameter; chains have n + 1 qubits.
    #[arg(long, conflicts_with = "sweep", required_unless_present = "sweep")]
    n: Option<u32>,
    /// Try every n and keep the largest clique.
    #[arg(long)]
    sweep: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "off")]
    intra_failures: IntraFailures,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long = "M")]
    m: u32,
    #[arg(long = "N")]
    n_rows: Option<u32>,
    #[arg(long)]
    n: u32,
    /// Print only the number of embeddings.
    #[arg(long)]
    count: bool,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    embedding: PathBuf,
}

#[derive(Args)]
struct TriangleArgs {
    #[arg(long = "M")]
    m: u32,
    #[arg(long = "N")]
    n: Option<u32>,
    #[arg(long = "L")]
    l: u32,
    /// Quarter turns applied to the embedding.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..4))]
    rotate: u8,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct YieldArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<u32>,
    #[arg(long = "L")]
    l: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    rates: Vec<f64>,
    #[arg(long)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-trial CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Quartile table CSV.
    #[arg(long)]
    aggregate: Option<PathBuf>,
    /// Median and interquartile chart.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Fill the runtime_ms column. Output is then no longer reproducible.
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Invalid,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn emit(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(p.to_owned(), e)),
        None => {
            let mut out = std::io::stdout().lock();
            let newline = if text.ends_with('\n') { "" } else { "\n" };
            match write!(out, "{text}{newline}").and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Io("<stdout>".into(), e)),
                _ => Ok(()),
            }
        }
    }
}

fn load_graph(path: &Path) -> Result<HardwareGraph, Failure> {
    Ok(HardwareGraph::from_json(&read(path)?)?)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn generate(a: GenerateArgs) -> CliResult {
    let shape = ChimeraShape::new(a.m, a.n.unwrap_or(a.m), a.l)?;
    if a.dead_qubits > shape.num_qubits() {
        return Err(
            Error::InvalidConfig(format!("cannot delete {} of {} qubits", a.dead_qubits, shape.num_qubits())).into()
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let g = HardwareGraph::build(shape)?.without_qubits(&random_qubits(shape, a.dead_qubits, &mut rng))?;
    let live: Vec<Coupler> = shape
        .qubits()
        .flat_map(|q| shape.neighbors(q).filter(move |p| q < *p).map(move |p| (q, p)))
        .filter(|(p, q)| g.is_live_edge(p, q))
        .collect();
    if a.dead_couplers > live.len() {
        return Err(
            Error::InvalidConfig(format!("cannot delete {} of {} live couplers", a.dead_couplers, live.len())).into()
        );
    }
    let mut picked: Vec<usize> = sample(&mut rng, live.len(), a.dead_couplers).into_vec();
    picked.sort_unstable();
    let couplers: Vec<Coupler> = picked.into_iter().map(|i| live[i]).collect();
    let g = g.apply_defects(&[], &couplers)?;
    emit(a.out.as_deref(), &g.to_json())
}

fn embed(a: EmbedArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    let start = Instant::now();
    let mut extra = serde_json::Map::new();
    let e: NativeCliqueEmbedding = match a.intra_failures {
        IntraFailures::Auto => {
            let length = a.n.map_or(ChainLength::Sweep, ChainLength::Fixed);
            let out = embed_with_intra_failures(&g, length, DEFAULT_FAILURE_CAP)?;
            extra.insert(
                "intra_failures".into(),
                json!({
                    "t": out.failures,
                    "covers_tried": out.covers_tried,
                    "winning_cover": out.winning_cover,
                }),
            );
            out.embedding
        }
        IntraFailures::Off => match a.n {
            Some(n) => native_clique_embed(&g, n)?,
            None => {
                let s = sweep(&g)?;
                let per_n: Vec<_> = s.per_n.iter().map(|(n, y)| json!({"n": n, "yield": y})).collect();
                extra.insert("per_n".into(), json!(per_n));
                s.best
            }
        },
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    emit(a.out.as_deref(), &e.to_json())?;
    if let Some(path) = a.report {
        let mut report = json!({
            "yield": e.clique_size(),
            "n": e.n,
            "chain_length": e.n + 1,
            "bundle_sizes": e.bundle_sizes(),
            "wall_time_ms": wall_ms,
        });
        report.as_object_mut().unwrap().extend(extra);
        emit(Some(&path), &pretty(&report))?;
    }
    Ok(())
}

fn oracle(a: OracleArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    let r = brute_force_best(&g, a.n, a.cap)?;
    let blocks: Vec<BlockFile> = r.witness.blocks().iter().map(BlockFile::from).collect();
    let out = json!({
        "best_yield": r.best_yield,
        "word": r.word.to_string(),
        "offset": [r.offset.dx, r.offset.dy],
        "instances_examined": r.instances_examined.to_string(),
        "witness": blocks,
    });
    emit(None, &pretty(&out))
}

fn enumerate(a: EnumerateArgs) -> CliResult {
    let shape = ChimeraShape::new(a.m, a.n_rows.unwrap_or(a.m), 1)?;
    let stream = enumerate_block_embeddings(shape, a.n)?;
    if a.count {
        return emit(None, &block_embedding_count(shape, a.n).to_string());
    }
    let mut out = String::new();
    for (word, offset, _) in stream {
        out.push_str(&format!("{word}\t{}\t{}\n", offset.dx, offset.dy));
    }
    emit(None, &out)
}

fn validate(a: ValidateArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    let e = NativeCliqueEmbedding::from_json(&read(&a.embedding)?)?;
    let report = validate_embedding(&g, &e);
    emit(None, &pretty(&serde_json::to_value(&report).expect("report serializes")))?;
    if report.valid {
        Ok(())
    } else {
        Err(Failure::Invalid)
    }
}

fn triangle(a: TriangleArgs) -> CliResult {
    let mut shape = ChimeraShape::new(a.m, a.n.unwrap_or(a.m), a.l)?;
    let mut e = triangle_embedding(shape)?;
    for _ in 0..a.rotate {
        e = e.rotate90(shape);
        shape = ChimeraShape::new(shape.n, shape.m, shape.l)?;
    }
    emit(a.out.as_deref(), &e.to_json())
}

fn yield_cmd(a: YieldArgs) -> CliResult {
    let cfg = ExperimentConfig { sizes: a.sizes, l: a.l, rates: a.rates, trials: a.trials, seed: a.seed };
    let records = run_experiment(&cfg)?;
    emit(a.out.as_deref(), &records_csv(&records, a.timing))?;
    if a.aggregate.is_some() || a.svg.is_some() {
        let rows = aggregate(&records)?;
        if let Some(p) = a.aggregate {
            emit(Some(&p), &aggregate_csv(&rows))?;
        }
        if let Some(p) = a.svg {
            emit(Some(&p), &aggregate_svg(&rows))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Embed(a) => embed(a),
        Command::Oracle(a) => oracle(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Validate(a) => validate(a),
        Command::Triangle(a) => triangle(a),
        Command::Yield(a) => yield_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("{}", json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
            ExitCode::from(2)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("{}", json!({"error": {"kind": "io", "path": path, "message": e.to_string()}}));
            ExitCode::from(2)
        }
    }
}
