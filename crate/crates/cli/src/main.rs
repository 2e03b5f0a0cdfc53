//! odbs: generate prefer-max De Bruijn strings, emit onion De Bruijn
//! streams, verify their properties, dump layer graphs, and benchmark.
//!
//! Exit codes: 0 success or property pass, 1 property failure, 2 usage
//! or malformed input, 3 I/O failure.

mod export;
mod format;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use onion_debruijn::{
    build_layer_graph, check_increasing_order, check_zero_cascade, infinite_onion_stream,
    is_de_bruijn, is_onion_prefix, layered_onion_stream, prefer_max_string, DeBruijnString,
    EdgePolicy, OnionStream, Params, Symbol, VerificationReport,
};
use serde::Serialize;

use format::SymbolFormat;

#[derive(Parser)]
#[command(
    name = "odbs",
    version,
    about = "Onion De Bruijn sequences: generate, stream, verify, inspect"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the prefer-max De Bruijn string for an alphabet and order.
    Generate(GenerateArgs),
    /// Write a prefix of an infinite onion De Bruijn stream.
    Stream(StreamArgs),
    /// Check a property of a sequence read from a file or stdin.
    Verify(VerifyArgs),
    /// Export the layer graph whose Eulerian circuits extend streams.
    Graph(GraphArgs),
    /// Measure stream generation throughput.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatKind {
    /// One character per symbol; requires symbols at most 9.
    Digits,
    /// Decimal integers separated by a delimiter.
    Delimited,
    /// Fixed-width little-endian binary with a 16-byte header.
    Binary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructionKind {
    /// Greedy prefer-max layers, read outward.
    PreferMax,
    /// Eulerian circuits of the per-alphabet layer graphs.
    Layered,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyKind {
    /// Take the largest available symbol at each step.
    Max,
    /// Take the smallest available symbol at each step.
    Min,
    /// Take a seeded pseudorandom available symbol.
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyKind {
    /// Every n-word over [k] occurs exactly once as a window.
    Debruijn,
    /// Each reversed prefix of length k^n+n-1 is a (k,n) De Bruijn string.
    Onion,
    /// Occurrences within each context appear in increasing symbol order.
    Ordering,
    /// Chains of zero-extended suffix windows sit at increasing positions.
    Cascade,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Dot,
    Json,
}

#[derive(clap::Args)]
struct GenerateArgs {
    /// Alphabet size.
    #[arg(long)]
    k: u64,
    /// Window length.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = FormatKind::Digits)]
    format: FormatKind,
    /// Separator for the delimited format.
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct StreamArgs {
    /// Window length.
    #[arg(long)]
    n: usize,
    /// Number of symbols to emit; must be positive.
    #[arg(long)]
    count: usize,
    #[arg(long, value_enum, default_value_t = ConstructionKind::PreferMax)]
    construction: ConstructionKind,
    /// Edge pick order for the layered construction.
    #[arg(long, value_enum, default_value_t = PolicyKind::Max)]
    policy: PolicyKind,
    /// Seed for the random policy.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatKind::Digits)]
    format: FormatKind,
    /// Separator for the delimited format.
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Input file; stdin when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Window length; read from the binary header when absent.
    #[arg(long)]
    n: Option<usize>,
    /// Alphabet size; read from the binary header when absent.
    #[arg(long)]
    k: Option<u64>,
    /// Largest alphabet to check for the onion and ordering properties.
    #[arg(long)]
    onion_kmax: Option<u64>,
    #[arg(long, value_enum, default_value_t = PropertyKind::Debruijn)]
    property: PropertyKind,
    /// Format of text input; binary input is detected by its magic.
    #[arg(long, value_enum, default_value_t = FormatKind::Digits)]
    format: FormatKind,
    /// Separator for the delimited format.
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Print the report as JSON instead of one summary line.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct GraphArgs {
    /// Alphabet size; at least 2.
    #[arg(long)]
    k: u64,
    /// Window length.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ExportKind::Dot)]
    export: ExportKind,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// Window length.
    #[arg(long)]
    n: usize,
    /// Number of symbols to generate; must be positive.
    #[arg(long)]
    count: usize,
    #[arg(long, value_enum, default_value_t = ConstructionKind::PreferMax)]
    construction: ConstructionKind,
    /// Edge pick order for the layered construction.
    #[arg(long, value_enum, default_value_t = PolicyKind::Max)]
    policy: PolicyKind,
    /// Seed for the random policy.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Io(String),
}

fn usage(err: impl std::fmt::Display) -> Failure {
    Failure::Usage(err.to_string())
}

fn io_failure(err: impl std::fmt::Display) -> Failure {
    Failure::Io(err.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Stream(args) => cmd_stream(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Graph(args) => cmd_graph(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Io(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn symbol_format(kind: FormatKind, delimiter: char) -> SymbolFormat {
    match kind {
        FormatKind::Digits => SymbolFormat::Digits,
        FormatKind::Delimited => SymbolFormat::Delimited(delimiter),
        FormatKind::Binary => SymbolFormat::Binary,
    }
}

fn edge_policy(kind: PolicyKind, seed: u64) -> EdgePolicy {
    match kind {
        PolicyKind::Max => EdgePolicy::MaxSymbolFirst,
        PolicyKind::Min => EdgePolicy::MinSymbolFirst,
        PolicyKind::Random => EdgePolicy::SeededRandom(seed),
    }
}

fn open_stream(
    construction: ConstructionKind,
    n: usize,
    policy: PolicyKind,
    seed: u64,
) -> Result<OnionStream, Failure> {
    match construction {
        ConstructionKind::PreferMax => infinite_onion_stream(n).map_err(usage),
        ConstructionKind::Layered => {
            layered_onion_stream(n, edge_policy(policy, seed)).map_err(usage)
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>, Failure> {
    match path {
        Some(path) => std::fs::read(path)
            .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut bytes = Vec::new();
            std::io::stdin()
                .read_to_end(&mut bytes)
                .map_err(|e| Failure::Io(format!("cannot read stdin: {e}")))?;
            Ok(bytes)
        }
    }
}

fn write_output(bytes: &[u8], path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::Io(format!("cannot write stdout: {e}")))
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<u8, Failure> {
    if args.format == FormatKind::Digits && args.k > 10 {
        return Err(Failure::Usage(format!(
            "the digits format holds symbols 0-9 only; k = {} needs delimited or binary",
            args.k
        )));
    }
    let s = prefer_max_string(args.k, args.n).map_err(usage)?;
    let bytes = format::encode(
        s.symbols(),
        symbol_format(args.format, args.delimiter),
        args.n,
        args.k,
    )
    .map_err(usage)?;
    write_output(&bytes, args.out.as_deref())?;
    Ok(0)
}

fn cmd_stream(args: StreamArgs) -> Result<u8, Failure> {
    if args.count == 0 {
        return Err(Failure::Usage(
            "--count 0 is not supported; pass the number of symbols to emit".into(),
        ));
    }
    let mut stream = open_stream(args.construction, args.n, args.policy, args.seed)?;
    let symbols = stream.prefix(args.count).map_err(usage)?;
    // Header k of 0 marks an unbounded stream; the width follows the
    // largest symbol actually emitted.
    let bytes = format::encode(
        symbols,
        symbol_format(args.format, args.delimiter),
        args.n,
        0,
    )
    .map_err(usage)?;
    write_output(&bytes, args.out.as_deref())?;
    Ok(0)
}

fn resolve_order(flag: Option<usize>, header: Option<(u32, u32)>) -> Result<usize, Failure> {
    flag.or(header.map(|(n, _)| n as usize))
        .ok_or_else(|| Failure::Usage("--n is required when the input has no binary header".into()))
}

fn resolve_alphabet(flag: Option<u64>, header: Option<(u32, u32)>) -> Result<u64, Failure> {
    if let Some(k) = flag {
        return Ok(k);
    }
    match header {
        Some((_, k)) if k > 0 => Ok(u64::from(k)),
        Some(_) => Err(Failure::Usage(
            "the input header marks an unbounded stream; pass --k explicitly".into(),
        )),
        None => Err(Failure::Usage(
            "--k is required when the input has no binary header".into(),
        )),
    }
}

fn emit_report(report: &VerificationReport, json: bool) -> Result<(), Failure> {
    let line = if json {
        serde_json::to_string(report).map_err(io_failure)?
    } else if report.passed {
        let mut line = format!(
            "{}: pass ({} windows checked",
            report.property, report.stats.windows_checked
        );
        if report.stats.layers_checked > 0 {
            let layers = report.stats.layers_checked;
            let plural = if layers == 1 { "" } else { "s" };
            line.push_str(&format!(", {layers} layer{plural}"));
        }
        line.push(')');
        line
    } else {
        match &report.counterexample {
            Some(counterexample) => format!("{}: fail ({counterexample})", report.property),
            None => format!("{}: fail", report.property),
        }
    };
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{line}").map_err(|e| Failure::Io(format!("cannot write stdout: {e}")))
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let bytes = read_input(args.input.as_deref())?;
    let decoded =
        format::decode(&bytes, symbol_format(args.format, args.delimiter)).map_err(usage)?;
    let n = resolve_order(args.n, decoded.header)?;
    let symbols = decoded.symbols;
    let report = match args.property {
        PropertyKind::Debruijn => {
            let k = resolve_alphabet(args.k, decoded.header)?;
            is_de_bruijn(&symbols, k, n)
        }
        PropertyKind::Onion => {
            let k_max = args.onion_kmax.ok_or_else(|| {
                Failure::Usage("--onion-kmax is required for the onion property".into())
            })?;
            is_onion_prefix(&symbols, n, k_max).map_err(usage)?
        }
        PropertyKind::Ordering => {
            let k_max = args.onion_kmax.ok_or_else(|| {
                Failure::Usage("--onion-kmax is required for the ordering property".into())
            })?;
            check_increasing_order(&symbols, n, k_max).map_err(usage)?.0
        }
        PropertyKind::Cascade => {
            let k = resolve_alphabet(args.k, decoded.header)?;
            // The cascade is defined over De Bruijn strings, so a failed
            // base check is reported as the outcome.
            let base = is_de_bruijn(&symbols, k, n);
            if !base.passed {
                emit_report(&base, args.json)?;
                return Ok(1);
            }
            let params = Params::new(n, k).map_err(usage)?;
            let s = DeBruijnString::from_symbols(params, symbols).map_err(usage)?;
            check_zero_cascade(&s)
        }
    };
    emit_report(&report, args.json)?;
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_graph(args: GraphArgs) -> Result<u8, Failure> {
    let graph = build_layer_graph(args.k, args.n).map_err(usage)?;
    let text = match args.export {
        ExportKind::Dot => export::export_dot(&graph),
        ExportKind::Json => export::export_json(&graph).map_err(io_failure)?,
    };
    write_output(text.as_bytes(), args.out.as_deref())?;
    Ok(0)
}

#[derive(Serialize)]
struct BenchReport {
    construction: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    policy: Option<&'static str>,
    n: usize,
    count: usize,
    elapsed_seconds: f64,
    symbols_per_second: f64,
    estimated_peak_memory_bytes: u64,
}

/// Structural estimate of the dominant buffers: the produced prefix plus
/// the working set of the deepest layer reached.
fn estimate_peak_memory(
    n: usize,
    count: usize,
    max_symbol: Symbol,
    construction: ConstructionKind,
) -> u64 {
    let produced = 8 * count as u64;
    let working = match Params::new(n, max_symbol + 1) {
        Ok(params) => {
            let words = params.word_count() as u64;
            let contexts = params.context_count() as u64;
            match construction {
                // Seen bit table, emitted string, per-context counters.
                ConstructionKind::PreferMax => words / 8 + 8 * (words + n as u64) + 8 * contexts,
                // Adjacency, remaining-edge, and circuit buffers plus
                // per-vertex list headers.
                ConstructionKind::Layered => 24 * words + 48 * contexts,
            }
        }
        Err(_) => 0,
    };
    produced + working
}

fn cmd_bench(args: BenchArgs) -> Result<u8, Failure> {
    if args.count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let start = Instant::now();
    let mut stream = open_stream(args.construction, args.n, args.policy, args.seed)?;
    let symbols = stream.prefix(args.count).map_err(usage)?;
    let elapsed = start.elapsed().as_secs_f64();
    let max_symbol = symbols.iter().copied().max().unwrap_or(0);
    let report = BenchReport {
        construction: match args.construction {
            ConstructionKind::PreferMax => "prefer-max",
            ConstructionKind::Layered => "layered",
        },
        policy: match args.construction {
            ConstructionKind::PreferMax => None,
            ConstructionKind::Layered => Some(match args.policy {
                PolicyKind::Max => "max",
                PolicyKind::Min => "min",
                PolicyKind::Random => "random",
            }),
        },
        n: args.n,
        count: args.count,
        elapsed_seconds: elapsed,
        symbols_per_second: args.count as f64 / elapsed.max(1e-9),
        estimated_peak_memory_bytes: estimate_peak_memory(
            args.n,
            args.count,
            max_symbol,
            args.construction,
        ),
    };
    let line = serde_json::to_string(&report).map_err(io_failure)?;
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{line}").map_err(|e| Failure::Io(format!("cannot write stdout: {e}")))?;
    Ok(0)
}
