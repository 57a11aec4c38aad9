//! `match-ybo`: build, verify and classify charge-conserving Yang-Baxter
//! operators from the command line.
//!
//! Every subcommand writes ASCII JSON to stdout, with rationals as strings.
//! Exit status is 0 on success, 1 when a verification or assertion fails
//! and 2 when the input is malformed.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use match_ybo::acceptance::{self, Level, DEFAULT_SEED};
use match_ybo::classify::{classify, label_edges, orbit};
use match_ybo::diagrams::enumerate_transversal;
use match_ybo::oracle::{enumerate_fibre, FibreRow, FibreType};
use match_ybo::recipe::{generic_point, germ_from_json, germ_to_json, rec, Germ};
use match_ybo::signature::{signature_check, signature_parts};
use match_ybo::ybe::{residual, Method};
use match_ybo::{Configuration, Error, MatchMatrix2};

#[derive(Parser)]
#[command(name = "match-ybo", version, about)]
struct Cli {
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the transversal of configurations on N vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build the solution matrix of a germ (a generic point if parameters are omitted).
    Build {
        #[arg(long)]
        germ: PathBuf,
        #[arg(long, env = "MATCH_YBO_SEED")]
        seed: Option<u64>,
    },
    /// Check the braid relation for a matrix.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
    },
    /// Recover the germ of a solution matrix.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Predicted (and, for a germ, observed) eigenvalue degeneracies.
    Signature {
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        germ: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, env = "MATCH_YBO_SEED")]
        seed: Option<u64>,
    },
    /// Distinct normalized relabellings of a configuration.
    Orbit {
        #[arg(long)]
        config: PathBuf,
        /// Include images of the colour flip.
        #[arg(long)]
        flip: bool,
    },
    /// Count solutions of one triangle type over a prime field.
    Fibre {
        #[arg(long = "type")]
        fibre_type: String,
        #[arg(long, default_value_t = match_ybo::oracle::DEFAULT_PRIME)]
        prime: u32,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, env = "MATCH_YBO_SEED")]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Constraints,
    Subsets,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// Why a command did not succeed.
enum Failure {
    /// Input could not be read or parsed; exit 2.
    Input(anyhow::Error),
    /// A check failed; the payload is printed and the exit code is 1.
    Check(Value),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Value::Null) => ExitCode::SUCCESS,
        Ok(v) => {
            emit(&to_ascii_json(&v));
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v)) => {
            emit(&to_ascii_json(&v));
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Enumerate { n, format } => enumerate(n, format),
        Command::Build { germ, seed } => build(&germ, seed.unwrap_or(DEFAULT_SEED)),
        Command::Verify { matrix, method } => verify(&read_matrix(&matrix)?, method),
        Command::Classify { matrix } => classify_cmd(&read_matrix(&matrix)?),
        Command::Signature { germ, config, seed } => signature(germ, config, seed.unwrap_or(DEFAULT_SEED)),
        Command::Orbit { config, flip } => orbit_cmd(&read_config(&config)?, flip),
        Command::Fibre { fibre_type, prime } => fibre(&fibre_type, prime),
        Command::Selftest { level, seed } => selftest(level, seed.unwrap_or(DEFAULT_SEED)),
    }
}

/// Pretty JSON with every non-ASCII character escaped.
fn to_ascii_json(v: &Value) -> String {
    let s = serde_json::to_string_pretty(v).expect("values serialize");
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        if ch.is_ascii() {
            out.push(ch);
        } else {
            let mut buf = [0u16; 2];
            for unit in ch.encode_utf16(&mut buf) {
                out.push_str(&format!("\\u{unit:04x}"));
            }
        }
    }
    out
}

/// Writes a line to stdout, ignoring a closed pipe.
fn emit(line: &str) {
    let _ = writeln!(io::stdout().lock(), "{line}");
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_matrix(path: &Path) -> anyhow::Result<MatchMatrix2> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing matrix {}", path.display()))
}

fn read_config(path: &Path) -> anyhow::Result<Configuration> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing configuration {}", path.display()))
}

fn read_germ(path: &Path, seed: u64) -> anyhow::Result<Germ> {
    let (config, params) = germ_from_json(&read(path)?).with_context(|| format!("parsing germ {}", path.display()))?;
    let params = params.unwrap_or_else(|| generic_point(&config, seed));
    Ok(Germ::new(config, params)?)
}

fn enumerate(n: usize, format: Format) -> Outcome {
    if n == 0 {
        return Err(anyhow!("--n must be positive").into());
    }
    let configs = enumerate_transversal(n);
    match format {
        Format::Json => Ok(json!({
            "n": n,
            "count": configs.len(),
            "configurations": configs
                .iter()
                .map(|c| json!({"multiset": c.multiset().words().iter().map(|w| w.to_string()).collect::<Vec<_>>(), "configuration": c}))
                .collect::<Vec<_>>(),
        })),
        Format::Text => {
            for (k, c) in configs.iter().enumerate() {
                let words = c.multiset().words().iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ");
                emit(&format!("{:>4}  {words:<16} {}", k + 1, serde_json::to_string(c).expect("serializes")));
            }
            emit(&format!("{} diagrams", configs.len()));
            Ok(Value::Null)
        }
    }
}

fn build(path: &Path, seed: u64) -> Outcome {
    let germ = read_germ(path, seed)?;
    Ok(serde_json::to_value(rec(&germ)).expect("matrices serialize"))
}

fn verify(m: &MatchMatrix2, method: MethodArg) -> Outcome {
    let methods: &[Method] = match method {
        MethodArg::Direct => &[Method::Direct],
        MethodArg::Constraints => &[Method::Constraints],
        MethodArg::Subsets => &[Method::Subsets],
        MethodArg::All => &[Method::Direct, Method::Constraints, Method::Subsets],
    };
    let reports: Vec<_> = methods.iter().map(|&k| residual(m, k)).collect();
    let solution = reports.iter().all(|r| r.zero);
    let agree = reports.iter().all(|r| r.zero == solution);
    let witnesses: Vec<Value> = reports
        .iter()
        .flat_map(|r| r.witnesses.iter().map(|w| w.to_json()))
        .collect();
    let mut out = json!({
        "solution": solution,
        "method": if method == MethodArg::All { "all" } else { methods[0].name() },
        "witnesses": witnesses,
    });
    if method == MethodArg::All {
        out["agree"] = json!(agree);
        out["verdicts"] = reports.iter().map(|r| (r.source.name().to_string(), json!(r.zero))).collect();
    }
    if solution && agree {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn classify_cmd(m: &MatchMatrix2) -> Outcome {
    let report = residual(m, Method::Direct);
    if !report.zero {
        return Err(Failure::Check(json!({
            "error": "not a solution of the braid relation",
            "witnesses": report.witnesses.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
        })));
    }
    match classify(m) {
        Ok((config, params)) => {
            let germ = Germ::new(config, params).map_err(anyhow::Error::from)?;
            Ok(germ_to_json(&germ))
        }
        Err(e @ Error::InadmissibleEdge(i, j)) => {
            let e_block = m.edge(i, j);
            Err(Failure::Check(json!({
                "error": e.to_string(),
                "witnesses": [{
                    "kind": "edge", "edge": [i, j],
                    "block": [e_block.a.to_string(), e_block.b.to_string(), e_block.c.to_string(), e_block.d.to_string()],
                }],
            })))
        }
        Err(e) => {
            let labels = label_edges(m)
                .map(|l| l.iter().map(|((i, j), x)| (format!("{i},{j}"), json!(x.symbol()))).collect::<serde_json::Map<_, _>>())
                .unwrap_or_default();
            Err(Failure::Check(json!({"error": e.to_string(), "witnesses": [{"kind": "labels", "labels": labels}]})))
        }
    }
}

fn signature(germ: Option<PathBuf>, config: Option<PathBuf>, seed: u64) -> Outcome {
    if let Some(path) = germ {
        let g = read_germ(&path, seed)?;
        let check = signature_check(&g).map_err(anyhow::Error::from)?;
        let out = json!({
            "formula": check.formula,
            "observed": check.observed,
            "notation": check.notation,
            "agrees": check.agrees(),
        });
        return Ok(out);
    }
    let path = config.expect("clap requires one of --germ and --config");
    let c = read_config(&path)?;
    let parts = signature_parts(&c);
    Ok(json!({"formula": parts.flatten(), "notation": parts.notation()}))
}

fn orbit_cmd(c: &Configuration, flip: bool) -> Outcome {
    let images = orbit(c, flip).map_err(anyhow::Error::from)?;
    Ok(json!({"flip": flip, "size": images.len(), "configurations": images}))
}

fn fibre(t: &str, prime: u32) -> Outcome {
    let fibre_type: FibreType = t.parse().map_err(anyhow::Error::from)?;
    let f = enumerate_fibre(fibre_type, prime).map_err(anyhow::Error::from)?;
    let row = FibreRow::from_fibre(&f);
    // An empty fibre matches any family vacuously; a nonempty one with no
    // known family does not.
    let matches = row.matches_family.unwrap_or(!row.nonempty);
    Ok(json!({
        "type": row.fibre_type,
        "prime": row.prime,
        "solutions": row.solutions,
        "total": row.total,
        "family": row.family,
        "matches_family": matches,
    }))
}

fn selftest(level: LevelArg, seed: u64) -> Outcome {
    let level = match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let reports: Vec<_> = (acceptance::run_all)(level, seed);
    for r in &reports {
        eprintln!("{r}");
    }
    let out = json!({
        "level": match level { Level::Quick => "quick", Level::Full => "full" },
        "seed": seed,
        "passed": reports.iter().all(|r| r.passed),
        "criteria": reports,
    });
    if out["passed"] == json!(true) {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}
