//! `ncpart`: partitions, factors and checks on small graphs from the shell.
//!
//! Exit codes: 0 success, 1 property violation found, 2 usage or input
//! error, 3 engine bug.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use ncpart::engine::{partition_2connected_traced, EngineError};
use ncpart::generators as gen;
use ncpart::io::{detect_format, emit_graph, parse_graph, parse_graph6_stream, GraphFormat};
use ncpart::labels::catalog_dump;
use ncpart::selftest;
use ncpart::tree_partition::partition_tree;
use ncpart::verify::{has_kr_factor, verify_partition, Part};
use ncpart::{SimpleGraph, Vertex};

#[derive(Parser)]
#[command(name = "ncpart", version, about = "Nearly connected partitions of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Auto,
    EdgeList,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Spider,
    SubdividedK4,
    Theta,
    Cycle,
    Complete,
    Random,
    Ear,
    Tree,
}

#[derive(Subcommand)]
enum Command {
    /// Partition a 2-connected graph into nearly connected 4-sets.
    Partition {
        /// Graph file, or `-` for standard input.
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        #[arg(long)]
        json: bool,
        /// Also print the reduction trace.
        #[arg(long)]
        trace: bool,
    },
    /// Partition a connected graph into parts of the given sizes, each inside
    /// a subtree of order at most 2*size - 1.
    TreePartition {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        #[arg(long)]
        json: bool,
    },
    /// Print the k-th power of a graph.
    Power {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        /// Output format; defaults to edge list.
        #[arg(long, value_enum)]
        output: Option<Format>,
    },
    /// Decide whether G (or G^k) has a K_r-factor.
    Factor {
        file: PathBuf,
        #[arg(short)]
        r: usize,
        #[arg(short)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        #[arg(long)]
        json: bool,
    },
    /// Check a proposed partition into nearly connected parts.
    Verify {
        file: PathBuf,
        /// JSON text or a file: an array of vertex arrays, or the output of
        /// `partition --json`.
        #[arg(long)]
        parts: String,
        /// Expected part sizes; default all 4.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        #[arg(long)]
        json: bool,
    },
    /// Generate a graph.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(short)]
        r: Option<usize>,
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Chord probability for `random`, `ear`.
        #[arg(long)]
        density: Option<f64>,
        #[arg(long, value_enum)]
        output: Option<Format>,
    },
    /// Search 2-connected graphs for ones with no nearly connected partition
    /// of the given sizes.
    Explore {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// graph6 stream to read instead of the built-in enumeration.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Use this many random 2-connected graphs instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long)]
        json: bool,
    },
    /// Print the label catalog.
    Labels,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: anyhow::Error) -> Failure {
    Failure { code: 2, error }
}

fn read_input(file: &PathBuf) -> Result<String> {
    if file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))
    }
}

fn resolve(format: Format, text: &str) -> GraphFormat {
    match format {
        Format::Auto => detect_format(text),
        Format::EdgeList => GraphFormat::EdgeList,
        Format::Graph6 => GraphFormat::Graph6,
    }
}

fn load(file: &PathBuf, format: Format) -> Result<SimpleGraph> {
    let text = read_input(file)?;
    let g = parse_graph(&text, resolve(format, &text))?;
    Ok(g)
}

fn join(vs: &[Vertex]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn print_parts(out: &mut impl Write, parts: &[Part]) -> Result<()> {
    for (i, p) in parts.iter().enumerate() {
        match &p.witness {
            Some(w) => writeln!(out, "part {i}: {} (witness {})", join(&p.vertices), join(w))?,
            None => writeln!(out, "part {i}: {}", join(&p.vertices))?,
        }
    }
    Ok(())
}

fn partition(file: &PathBuf, format: Format, as_json: bool, trace: bool) -> Result<u8, Failure> {
    let g = load(file, format).map_err(usage)?;
    let result = match partition_2connected_traced(&g) {
        Ok(r) => r,
        Err(EngineError::EngineBug { message, trace }) => {
            let mut err = io::stderr();
            for line in trace {
                let _ = writeln!(err, "{line}");
            }
            return Err(Failure { code: 3, error: anyhow!("engine bug: {message}") });
        }
        Err(e) => return Err(usage(e.into())),
    };
    let mut out = io::stdout().lock();
    let write = |out: &mut io::StdoutLock| -> Result<()> {
        if as_json {
            let mut doc = json!({
                "n": g.n(),
                "verified": true,
                "parts": result.parts,
                "fallbacks": result.fallbacks,
            });
            if trace {
                doc["trace"] = json!(result.trace.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        } else {
            if trace {
                for step in &result.trace {
                    writeln!(out, "{step}")?;
                }
            }
            print_parts(out, &result.parts)?;
            writeln!(out, "verified: {} parts of 4, each nearly connected", result.parts.len())?;
        }
        Ok(())
    };
    write(&mut out).map_err(usage)?;
    Ok(0)
}

fn tree_partition(file: &PathBuf, sizes: &[usize], format: Format, as_json: bool) -> Result<u8, Failure> {
    let g = load(file, format).map_err(usage)?;
    let parts = partition_tree(&g, sizes).map_err(|e| usage(e.into()))?;
    let bound_ok = parts.iter().all(|p| p.witness.as_ref().is_some_and(|w| w.len() < 2 * p.vertices.len()));
    let mut out = io::stdout().lock();
    let write = |out: &mut io::StdoutLock| -> Result<()> {
        if as_json {
            let doc = json!({ "n": g.n(), "sizes": sizes, "parts": parts, "witness_bound_ok": bound_ok });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        } else {
            print_parts(out, &parts)?;
            writeln!(out, "witness bound 2*size-1: {}", if bound_ok { "ok" } else { "violated" })?;
        }
        Ok(())
    };
    write(&mut out).map_err(usage)?;
    Ok(if bound_ok { 0 } else { 1 })
}

fn factor(file: &PathBuf, r: usize, k: Option<usize>, format: Format, as_json: bool) -> Result<u8, Failure> {
    if r == 0 {
        return Err(usage(anyhow!("-r must be positive")));
    }
    if k == Some(0) {
        return Err(usage(anyhow!("-k must be positive")));
    }
    let g = load(file, format).map_err(usage)?;
    let host = match k {
        Some(k) => g.power(k),
        None => g,
    };
    let found = has_kr_factor(&host, r);
    let mut out = io::stdout().lock();
    let write = |out: &mut io::StdoutLock| -> Result<()> {
        if as_json {
            let doc = json!({ "r": r, "k": k.unwrap_or(1), "factor": found });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        } else {
            match &found {
                Some(cliques) => {
                    let shown: Vec<String> = cliques.iter().map(|c| format!("{{{}}}", join(c))).collect();
                    writeln!(out, "K{r}-factor: {}", shown.join(" "))?;
                }
                None => writeln!(out, "no K{r}-factor")?,
            }
        }
        Ok(())
    };
    write(&mut out).map_err(usage)?;
    Ok(0)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PartsDoc {
    Plain(Vec<Vec<Vertex>>),
    Report { parts: Vec<Part> },
}

fn verify(file: &PathBuf, parts: &str, sizes: Option<&[usize]>, format: Format, as_json: bool) -> Result<u8, Failure> {
    let g = load(file, format).map_err(usage)?;
    let trimmed = parts.trim_start();
    let text = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        parts.to_string()
    } else {
        read_input(&PathBuf::from(parts)).map_err(usage)?
    };
    let doc: PartsDoc = serde_json::from_str(&text).context("parsing --parts").map_err(usage)?;
    let raw = match doc {
        PartsDoc::Plain(p) => p,
        PartsDoc::Report { parts } => parts.into_iter().map(|p| p.vertices).collect(),
    };
    let verdict = verify_partition(&g, &raw, sizes);
    let mut out = io::stdout().lock();
    let write = |out: &mut io::StdoutLock| -> Result<()> {
        if as_json {
            let doc = match &verdict {
                Ok(w) => json!({ "verified": true, "witnesses": w }),
                Err(e) => json!({ "verified": false, "reason": e.to_string() }),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        } else {
            match &verdict {
                Ok(_) => writeln!(out, "verified: true")?,
                Err(e) => writeln!(out, "verified: false ({e})")?,
            }
        }
        Ok(())
    };
    write(&mut out).map_err(usage)?;
    Ok(if verdict.is_ok() { 0 } else { 1 })
}

fn generate(
    family: Family,
    r: Option<usize>,
    n: Option<usize>,
    seed: u64,
    density: Option<f64>,
) -> Result<SimpleGraph> {
    let need_r = || r.ok_or_else(|| anyhow!("this family needs -r"));
    let need_n = || n.ok_or_else(|| anyhow!("this family needs -n"));
    if let Some(p) = density {
        if !(0.0..=1.0).contains(&p) {
            bail!("--density must lie in [0, 1]");
        }
    }
    let g = match family {
        Family::Spider => gen::spider(need_r()?)?,
        Family::SubdividedK4 => gen::subdivided_k4(need_r()?)?,
        Family::Theta => gen::theta(need_r()?)?,
        Family::Cycle => {
            let n = need_n()?;
            if n < 3 {
                bail!("a cycle needs at least 3 vertices");
            }
            SimpleGraph::cycle(n)
        }
        Family::Complete => SimpleGraph::complete(need_n()?),
        Family::Random => gen::random_2connected_with_density(need_n()?, density.unwrap_or(0.5), seed)?,
        Family::Ear => gen::random_ear_2connected(need_n()?, density.unwrap_or(0.05), seed)?,
        Family::Tree => gen::random_tree(need_n()?, seed)?,
    };
    Ok(g)
}

fn output_format(f: Option<Format>) -> GraphFormat {
    match f {
        Some(Format::Graph6) => GraphFormat::Graph6,
        _ => GraphFormat::EdgeList,
    }
}

#[allow(clippy::too_many_arguments)]
fn explore(
    n: usize,
    sizes: &[usize],
    input: Option<&PathBuf>,
    random: Option<usize>,
    seed: u64,
    as_json: bool,
) -> Result<u8, Failure> {
    if sizes.iter().sum::<usize>() != n || sizes.contains(&0) {
        return Err(usage(anyhow!("--sizes must be positive and sum to --n")));
    }
    if input.is_some() && random.is_some() {
        return Err(usage(anyhow!("--input and --random are exclusive")));
    }
    let graphs: Vec<SimpleGraph> = if let Some(path) = input {
        let text = read_input(path).map_err(usage)?;
        let mut graphs = Vec::new();
        for g in parse_graph6_stream(&text) {
            let g = g.map_err(|e| usage(e.into()))?;
            if g.n() == n && g.is_biconnected() {
                graphs.push(g);
            }
        }
        graphs
    } else if let Some(count) = random {
        (0..count as u64)
            .map(|i| gen::random_2connected(n, seed.wrapping_add(i)))
            .collect::<Result<_, _>>()
            .map_err(|e| usage(e.into()))?
    } else {
        gen::two_connected_classes(n).map_err(|e| usage(anyhow!("{e}; use --input or --random for larger n")))?
    };
    let report = selftest::explore(&graphs, sizes).map_err(|e| usage(e.into()))?;
    let mut out = io::stdout().lock();
    let write = |out: &mut io::StdoutLock| -> Result<()> {
        if as_json {
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "n": n, "sizes": sizes, "report": report }))?)?;
        } else {
            for g6 in &report.failures {
                writeln!(out, "no partition: {g6}")?;
            }
            writeln!(out, "explored {} graphs, {} without a partition", report.graphs, report.failures.len())?;
        }
        Ok(())
    };
    write(&mut out).map_err(usage)?;
    Ok(if report.failures.is_empty() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Partition { file, format, json, trace } => partition(&file, format, json, trace),
        Command::TreePartition { file, sizes, format, json } => tree_partition(&file, &sizes, format, json),
        Command::Power { file, k, format, output } => {
            if k == 0 {
                return Err(usage(anyhow!("-k must be positive")));
            }
            let g = load(&file, format).map_err(usage)?;
            print!("{}", emit_graph(&g.power(k), output_format(output)));
            Ok(0)
        }
        Command::Factor { file, r, k, format, json } => factor(&file, r, k, format, json),
        Command::Verify { file, parts, sizes, format, json } => verify(&file, &parts, sizes.as_deref(), format, json),
        Command::Gen { family, r, n, seed, density, output } => {
            let g = generate(family, r, n, seed, density).map_err(usage)?;
            print!("{}", emit_graph(&g, output_format(output)));
            Ok(0)
        }
        Command::Explore { n, sizes, input, random, seed, json } => {
            explore(n, &sizes, input.as_ref(), random, seed, json)
        }
        Command::Selftest { json } => {
            let reports = selftest::run_all();
            if json {
                println!("{}", serde_json::to_string_pretty(&reports).map_err(|e| usage(e.into()))?);
            } else {
                for r in &reports {
                    println!("{}", r.line());
                }
            }
            Ok(if reports.iter().all(|r| r.passed) { 0 } else { 1 })
        }
        Command::Labels => {
            print!("{}", catalog_dump());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("ncpart: {error:#}");
            ExitCode::from(code)
        }
    }
}
