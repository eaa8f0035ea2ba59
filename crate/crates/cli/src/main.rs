use std::fs;
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use jsj_core::dsl::{parse_manifold, parse_path_ast, parse_query_ast, serialize};
use jsj_core::presets::{load_preset, preset_names, preset_source};
use jsj_core::{run_query, validate_jsj, Budget, CertificateDoc, GraphOfGroups, QueryError};
use serde_json::json;

/// Decision procedures for graphs of groups with Z² edge groups.
#[derive(Parser)]
#[command(name = "jsj", version)]
struct Cli {
    /// Word-length budget for conjugator and root searches.
    #[arg(long, global = true, default_value_t = Budget::default().search)]
    budget: usize,
    /// Keep reduction traces in certificates (the default).
    #[arg(long, global = true, overrides_with = "no_trace")]
    trace: bool,
    /// Omit reduction traces from certificates.
    #[arg(long, global = true, overrides_with = "trace")]
    no_trace: bool,
    /// Worker threads for query files.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a manifold file and run the structural checks.
    Validate { file: PathBuf },
    /// Answer queries: either a file with one query per line or a single inline query.
    Query { file: PathBuf, query: String },
    /// Show a shipped example; `--emit` prints it in the text format.
    Preset {
        name: Option<String>,
        #[arg(long)]
        emit: bool,
    },
    /// Feed random bytes to the parsers and report crashes.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum input length in bytes.
        #[arg(long, default_value_t = 64)]
        len: usize,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
    },
}

/// `preset:NAME` or a file path.
fn load(file: &Path) -> anyhow::Result<GraphOfGroups> {
    let s = file.to_string_lossy();
    if let Some(name) = s.strip_prefix("preset:") {
        return Ok(load_preset(name)?);
    }
    let bytes = fs::read(file).with_context(|| format!("reading {}", file.display()))?;
    match parse_manifold(&bytes) {
        Ok(g) => Ok(g),
        Err(e) => bail!("{}:{e}", file.display()),
    }
}

fn validate(file: &Path) -> anyhow::Result<ExitCode> {
    let g = load(file)?;
    let r = validate_jsj(&g);
    write_out(&(serde_json::to_string_pretty(&json!({ "valid": r.is_valid(), "violations": r.violations }))? + "\n"))?;
    Ok(if r.is_valid() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Queries with their source line; `None` for an inline query.
fn queries(arg: &str) -> anyhow::Result<Vec<(Option<usize>, String)>> {
    let p = Path::new(arg);
    if p.is_file() {
        let text = fs::read_to_string(p).with_context(|| format!("reading {arg}"))?;
        Ok(text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(|(i, l)| (Some(i + 1), l.to_string()))
            .collect())
    } else {
        Ok(vec![(None, arg.to_string())])
    }
}

fn describe(arg: &str, line: Option<usize>, e: &QueryError) -> String {
    match (line, e) {
        (Some(n), QueryError::Parse(p)) => format!("{arg}:{n}:{}: {}", p.pos.col, p.message),
        (Some(n), e) => format!("{arg}:{n}: {e}"),
        (None, QueryError::Parse(p)) => format!("query:{}:{}: {}", p.pos.line, p.pos.col, p.message),
        (None, e) => format!("query: {e}"),
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn write_out(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn query(cli: &Cli, file: &Path, arg: &str) -> anyhow::Result<ExitCode> {
    let g = load(file)?;
    let qs = queries(arg)?;
    let budget = Budget { search: cli.budget };
    let jobs = cli.jobs.max(1).min(qs.len().max(1));
    let chunk = qs.len().div_ceil(jobs).max(1);
    let results: Vec<Result<CertificateDoc, QueryError>> = std::thread::scope(|s| {
        let handles: Vec<_> = qs
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(|(_, q)| run_query(&g, q, budget)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker thread")).collect()
    });
    let mut code = 0u8;
    let mut out = vec![];
    for ((line, q), r) in qs.iter().zip(results) {
        match r {
            Ok(mut doc) => {
                if cli.no_trace {
                    doc.strip_traces();
                }
                out.push(serde_json::to_value(&doc)?);
            }
            Err(e) => {
                let budget_hit = e.is_budget();
                let msg = describe(arg, *line, &e);
                eprintln!("{msg}");
                // A hard error outranks an exhausted budget.
                code = match (budget_hit, code) {
                    (false, _) | (true, 1) => 1,
                    (true, _) => 2,
                };
                out.push(json!({ "query": q, "error": msg, "budget_exhausted": budget_hit }));
            }
        }
    }
    let doc = if out.len() == 1 { out.pop().expect("one result") } else { serde_json::Value::Array(out) };
    write_out(&(serde_json::to_string_pretty(&doc)? + "\n"))?;
    Ok(ExitCode::from(code))
}

fn preset(name: Option<&str>, emit: bool) -> anyhow::Result<ExitCode> {
    let Some(name) = name else {
        for n in preset_names() {
            println!("{n}");
        }
        return Ok(ExitCode::SUCCESS);
    };
    let g = load_preset(name)?;
    if emit {
        write_out(&serialize(&g))?;
    } else {
        let src = preset_source(name)?;
        for line in src.lines().take_while(|l| l.starts_with('#')) {
            println!("{}", line.trim_start_matches('#').trim());
        }
        let vertices: Vec<String> = g.vertices.iter().map(|v| format!("{} ({:?})", v.name, v.kind())).collect();
        println!("vertices: {}", vertices.join(", "));
        println!("edges: {}", g.edge_pairs().count());
        println!("base: {}", g.vertex(g.base).name);
    }
    Ok(ExitCode::SUCCESS)
}

fn fuzz(seed: u64, len: usize, count: usize) -> anyhow::Result<ExitCode> {
    // SplitMix64; enough to spread bytes without pulling in an RNG here.
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let (mut crashes, mut accepted) = (0usize, 0usize);
    for _ in 0..count {
        let n = (next() % (len as u64 + 1)) as usize;
        let input: Vec<u8> = (0..n).map(|_| next() as u8).collect();
        match catch_unwind(AssertUnwindSafe(|| {
            let ok = parse_manifold(&input).is_ok();
            let _ = parse_query_ast(&input);
            let _ = parse_path_ast(&input);
            ok
        })) {
            Ok(ok) => accepted += usize::from(ok),
            Err(_) => crashes += 1,
        }
    }
    println!("{}", json!({ "inputs": count, "accepted": accepted, "crashes": crashes }));
    Ok(if crashes == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Cmd::Validate { file } => validate(file),
        Cmd::Query { file, query: q } => query(&cli, file, q),
        Cmd::Preset { name, emit } => preset(name.as_deref(), *emit),
        Cmd::Fuzz { seed, len, count } => {
            std::panic::set_hook(Box::new(|_| {}));
            fuzz(*seed, *len, *count)
        }
    };
    match r {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
