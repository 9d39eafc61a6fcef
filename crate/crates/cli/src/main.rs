mod commands;

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use commands::{default_vertices, execute, verify_report, Inputs, Report, SUITES};
use decospec::exec::{configure_threads, Mode};
use decospec::folding::Parity;
use decospec::graph::{parse_input, Input};
use decospec::Error;

#[derive(Parser)]
#[command(name = "decospec", version, about = "Exact spectral analysis of graphs and decorated paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Human-readable key/value table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Worker threads for batch commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Run batch commands on one thread without the pool.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Args)]
struct InputFile {
    /// Graph (JSON or edge list) or decorated path (JSON with a "path" key).
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
}

#[derive(Args)]
struct Vertex {
    /// 1-based vertex; defaults to the first path vertex for decorated inputs.
    #[arg(short = 'u')]
    u: Option<usize>,
}

#[derive(Args)]
struct Pair {
    /// 1-based first vertex; defaults to the first path end for decorated inputs.
    #[arg(short = 'u')]
    u: Option<usize>,
    /// 1-based second vertex; defaults to the last path end for decorated inputs.
    #[arg(short = 'v')]
    v: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial, lowest degree coefficient first.
    Charpoly(InputFile),
    /// α function of a vertex and its Stieltjes form.
    Alpha {
        #[command(flatten)]
        file: InputFile,
        #[command(flatten)]
        vertex: Vertex,
    },
    /// Eigenvalue support of a vertex.
    Support {
        #[command(flatten)]
        file: InputFile,
        #[command(flatten)]
        vertex: Vertex,
    },
    /// Whether two vertices are cospectral.
    Cospectral {
        #[command(flatten)]
        file: InputFile,
        #[command(flatten)]
        pair: Pair,
    },
    /// Strong cospectrality, with the signed support split when it holds.
    StrongCospectral {
        #[command(flatten)]
        file: InputFile,
        #[command(flatten)]
        pair: Pair,
    },
    /// The folded chains G+ and G- of a mirror-symmetric decorated path.
    Fold(InputFile),
    /// Gap certificate for a mirror-symmetric decorated path.
    Gap(InputFile),
    /// Perfect state transfer certificate.
    Pst {
        #[command(flatten)]
        file: InputFile,
        #[command(flatten)]
        pair: Pair,
        /// Also locate the first fidelity peak numerically.
        #[arg(long)]
        scan: bool,
    },
    /// Eigenvalue location on a tree at a rational threshold.
    Locate {
        #[command(flatten)]
        file: InputFile,
        /// 1-based root of the evaluation; defaults to vertex 1.
        #[arg(short = 'u')]
        u: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Non-integrality certificate from a long subdivided bridge.
    BridgeCertify {
        #[command(flatten)]
        file: InputFile,
        #[command(flatten)]
        pair: Pair,
    },
    /// Whether every eigenvalue is an integer.
    Integral(InputFile),
    /// Integrality of one balanced tree, or a search over many.
    Balanced {
        #[arg(long, value_parser = parse_parity)]
        parity: Parity,
        /// Degree sequence from the centre outward, e.g. 3,2.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[arg(long, conflicts_with = "degrees")]
        max_depth: Option<usize>,
        #[arg(long, requires = "max_depth")]
        max_degree: Option<usize>,
        /// Append one JSON line per searched spec; specs already present are skipped.
        #[arg(long, requires = "max_depth")]
        results: Option<PathBuf>,
    },
    /// Re-validate a report written by another subcommand.
    Verify(InputFile),
    /// Run the small-instance property suites.
    Sweep {
        /// Suites to run (default: all).
        #[arg(long = "suite", value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suites: Vec<String>,
        /// Vertex budget for decorated-path sweeps.
        #[arg(long)]
        max_total: Option<usize>,
        /// Sample fidelities in the no-PST suite as well.
        #[arg(long)]
        scan: bool,
    },
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    match s {
        "odd" => Ok(Parity::Odd),
        "even" => Ok(Parity::Even),
        _ => Err(format!("expected \"odd\" or \"even\", got \"{s}\"")),
    }
}

fn read_input(path: &Path, inputs: &mut Inputs) -> decospec::Result<()> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    match parse_input(&text)? {
        Input::Graph(g) => inputs.graph = Some(g.to_json()),
        Input::Decorated(d) => inputs.decorated = Some(d.to_json()),
    }
    Ok(())
}

fn read_report(path: &Path) -> decospec::Result<Report> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })
}

fn table(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                table(x, &key, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        Value::Array(a) => {
            for (k, x) in a.iter().enumerate() {
                table(x, &format!("{prefix}[{k}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Balanced search with a resumable line-delimited results file.
fn balanced_resumable(
    parity: Parity,
    depth: usize,
    max_degree: usize,
    path: &Path,
    mode: Mode,
) -> decospec::Result<Value> {
    use decospec::integral::{balanced_integrality, balanced_specs};
    let done: Vec<Value> = fs::read_to_string(path)
        .unwrap_or_default()
        .lines()
        .filter_map(|l| serde_json::from_str(l).ok())
        .collect();
    let seen: std::collections::HashSet<String> = done.iter().map(|v| v["spec"].to_string()).collect();
    let todo: Vec<_> = balanced_specs(parity, 1..=depth, max_degree)
        .into_iter()
        .filter(|s| !seen.contains(&serde_json::to_value(s).expect("spec").to_string()))
        .collect();
    let fresh = decospec::exec::map(&todo, mode, |s| -> decospec::Result<Value> {
        Ok(serde_json::json!({
            "spec": s,
            "vertices": s.vertex_count(),
            "diameter": s.diameter(),
            "report": balanced_integrality(s)?,
        }))
    });
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::Parse {
            line: 0,
            msg: format!("cannot open {}: {e}", path.display()),
        })?;
    let mut all = done;
    for v in fresh {
        let v = v?;
        writeln!(file, "{v}").map_err(|e| Error::Parse {
            line: 0,
            msg: e.to_string(),
        })?;
        all.push(v);
    }
    let integral: Vec<&Value> = all.iter().filter(|v| v["report"]["integral"] == true).collect();
    Ok(serde_json::json!({
        "specs_searched": all.len(),
        "resumed": seen.len(),
        "integral": integral,
    }))
}

fn run(cli: Cli) -> decospec::Result<(Value, bool)> {
    let mode = if cli.sequential { Mode::Sequential } else { Mode::Parallel };
    if let Some(j) = cli.jobs {
        configure_threads(j.max(1));
    }
    let mut inputs = Inputs::default();
    let name = match &cli.command {
        Command::Charpoly(_) => "charpoly",
        Command::Alpha { .. } => "alpha",
        Command::Support { .. } => "support",
        Command::Cospectral { .. } => "cospectral",
        Command::StrongCospectral { .. } => "strong-cospectral",
        Command::Fold(_) => "fold",
        Command::Gap(_) => "gap",
        Command::Pst { .. } => "pst",
        Command::Locate { .. } => "locate",
        Command::BridgeCertify { .. } => "bridge-certify",
        Command::Integral(_) => "integral",
        Command::Balanced { .. } => "balanced",
        Command::Verify(_) => "verify",
        Command::Sweep { .. } => "sweep",
    };
    match cli.command {
        Command::Charpoly(f) | Command::Fold(f) | Command::Gap(f) | Command::Integral(f) => {
            read_input(&f.input, &mut inputs)?
        }
        Command::Alpha { file, vertex } | Command::Support { file, vertex } => {
            read_input(&file.input, &mut inputs)?;
            inputs.u = vertex.u;
        }
        Command::Cospectral { file, pair }
        | Command::StrongCospectral { file, pair }
        | Command::BridgeCertify { file, pair } => {
            read_input(&file.input, &mut inputs)?;
            (inputs.u, inputs.v) = (pair.u, pair.v);
        }
        Command::Pst { file, pair, scan } => {
            read_input(&file.input, &mut inputs)?;
            (inputs.u, inputs.v) = (pair.u, pair.v);
            inputs.scan = scan;
        }
        Command::Locate { file, u, theta } => {
            read_input(&file.input, &mut inputs)?;
            inputs.u = u;
            inputs.theta = Some(theta);
        }
        Command::Balanced {
            parity,
            degrees,
            max_depth,
            max_degree,
            results,
        } => {
            inputs.parity = Some(parity);
            inputs.degrees = degrees;
            inputs.max_depth = max_depth;
            inputs.max_degree = max_degree;
            if let (Some(path), Some(d), Some(k)) = (results, max_depth, max_degree) {
                let result = balanced_resumable(parity, d, k, &path, mode)?;
                let report = Report {
                    command: name.into(),
                    inputs,
                    result,
                    exact: true,
                };
                return Ok((serde_json::to_value(report)?, false));
            }
        }
        Command::Verify(f) => {
            let report = read_report(&f.input)?;
            let v = verify_report(&report, mode)?;
            let valid = v.valid;
            let out = Report {
                command: name.into(),
                inputs: Inputs::default(),
                result: serde_json::to_value(v)?,
                exact: true,
            };
            if !valid {
                return Err(Error::Hypothesis(format!(
                    "certificate does not re-validate: {}",
                    serde_json::to_string(&out.result)?
                )));
            }
            return Ok((serde_json::to_value(out)?, false));
        }
        Command::Sweep { suites, max_total, scan } => {
            inputs.suites = Some(suites);
            inputs.max_total = max_total;
            inputs.scan = scan;
        }
    }
    default_vertices(name, &mut inputs)?;
    let done = execute(name, &inputs, mode)?;
    Ok((serde_json::to_value(done.report)?, done.violation))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let as_table = cli.table;
    match run(cli) {
        Ok((report, violation)) => {
            if as_table {
                let mut out = String::new();
                table(&report, "", &mut out);
                print!("{out}");
            } else {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            }
            if violation {
                eprintln!("error: a property suite reported violations");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
