use std::path::PathBuf;
use std::process::ExitCode;

use altlink::analysis::{alexander_oracle, top_report_with, verify_theorem, CheckStatus};
use altlink::ata::{ata_enumerate, ata_report, AtaError};
use altlink::corpus::{evaluate_corpus, load_corpus, EntryResult};
use altlink::par::Execution;
use altlink::seifert::{euler_characteristic, is_alternative, seifert_circles, seifert_spaces};
use altlink::states::{enumerate_states, polynomial_of};
use altlink::{parse_pd, DecoratedDiagram};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "altlink",
    version,
    about = "Kauffman states and the top level of knot Floer homology for alternative links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)" or a JSON array.
    #[arg(long, conflicts_with = "file")]
    pd: Option<String>,
    /// File holding a PD code.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Marked arc; the lowest label by default.
    #[arg(long)]
    edge: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Diagram structure: crossings, faces, components, signs.
    Parse(Input),
    /// Seifert circles and the sign census of Seifert spaces.
    Seifert(Input),
    /// All Kauffman states.
    States(Input),
    /// Top filtration states from the alternative tree algorithm.
    Ata {
        #[command(flatten)]
        input: Input,
        /// Use brute-force enumeration instead.
        #[arg(long)]
        brute: bool,
    },
    /// Alexander polynomial from the region matrix and from the state sum.
    Alexander(Input),
    /// Top filtration report.
    Report {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        brute: bool,
    },
    /// Tree algorithm against brute force and the closed formulas.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Verify every entry of a corpus file instead.
        #[arg(long, conflicts_with_all = ["pd", "file"])]
        corpus: Option<PathBuf>,
        /// Emit JSON for corpus runs instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Batch verification of a corpus file.
    Corpus {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(String),
    Check,
}

type Outcome = Result<(), Failure>;

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn emit<T: Serialize>(kind: &str, body: T) {
    let mut v = serde_json::to_value(body).expect("serializable");
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(1));
    out.insert("kind".into(), json!(kind));
    if let serde_json::Value::Object(m) = &mut v {
        out.append(m);
    } else {
        out.insert("result".into(), v);
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("serializable")
    );
}

fn load(input: &Input) -> Result<DecoratedDiagram, Failure> {
    let text = match (&input.pd, &input.file) {
        (Some(pd), _) => pd.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(Failure::Input("one of --pd or --file is required".into())),
    };
    let d = parse_pd(&text).map_err(input_err)?;
    match input.edge {
        Some(e) => d.decorate(e).map_err(input_err),
        None => Ok(d.decorate_default()),
    }
}

fn run_corpus(path: &PathBuf, as_json: bool, exec: Execution) -> Outcome {
    let entries = load_corpus(path).map_err(input_err)?;
    let results = evaluate_corpus(&entries, exec);
    let passed = results.iter().filter(|r| r.pass).count();
    if as_json {
        emit(
            "corpus",
            json!({
                "summary": {"diagrams": results.len(), "pass": passed},
                "entries": results,
            }),
        );
    } else {
        print_table(&results);
        println!("{} diagrams, {} pass", results.len(), passed);
    }
    if passed == results.len() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn print_table(results: &[EntryResult]) {
    let width = results
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    println!(
        "{:width$}  {:>3}  {:>3}  {:>7}  {:>6}  {:>4}  {:>6}  status",
        "name", "m", "|L|", "fil_max", "gr_max", "rank", "fibred"
    );
    for r in results {
        let status = match (&r.error, r.pass) {
            (Some(e), _) => format!("error: {e}"),
            (None, true) if r.verification.is_none() => "pass (not alternative)".to_string(),
            (None, true) => "pass".to_string(),
            (None, false) => {
                let failed: Vec<&str> = r
                    .verification
                    .iter()
                    .flat_map(|v| v.checks.iter())
                    .chain(r.expectations.iter())
                    .chain(r.report.iter().flat_map(|rep| rep.checks.iter()))
                    .filter(|c| c.status == CheckStatus::Fail)
                    .map(|c| c.name.as_str())
                    .collect();
                format!("FAIL {}", failed.join(","))
            }
        };
        match &r.report {
            Some(rep) => println!(
                "{:width$}  {:>3}  {:>3}  {:>7}  {:>6}  {:>4}  {:>6}  {}",
                r.name,
                rep.crossings,
                rep.components,
                rep.fil_max.to_string(),
                rep.gr_max
                    .map(|g| g.to_string())
                    .unwrap_or_else(|| "-".into()),
                rep.rank,
                rep.fibred
                    .map(|f| f.to_string())
                    .unwrap_or_else(|| "-".into()),
                status
            ),
            None => println!("{:width$}  {status}", r.name),
        }
    }
}

fn run(command: Command, exec: Execution) -> Outcome {
    match command {
        Command::Parse(input) => {
            let dd = load(&input)?;
            emit(
                "diagram",
                json!({"edge": dd.edge, "diagram": dd.diagram.to_json(), "region_a": dd.region_a, "region_b": dd.region_b}),
            );
        }
        Command::Seifert(input) => {
            let d = load(&input)?.diagram;
            let census = seifert_spaces(&d);
            emit(
                "seifert",
                json!({
                    "circles": seifert_circles(&d),
                    "census": census,
                    "alternativity": is_alternative(&census),
                    "chi": euler_characteristic(&d),
                }),
            );
        }
        Command::States(input) => {
            let dd = load(&input)?;
            let set = enumerate_states(&dd, exec);
            emit(
                "states",
                json!({"count": set.states.len(), "max_fil": set.max_fil(), "semantics": set.semantics, "states": set.states}),
            );
        }
        Command::Ata { input, brute } => {
            let dd = load(&input)?;
            let tree = match (brute, ata_enumerate(&dd, exec)) {
                (true, _) | (_, Err(AtaError::NotAlternative { .. })) => None,
                (false, Ok(states)) => Some(states),
                (false, Err(e)) => return Err(input_err(e)),
            };
            match tree {
                Some(states) => {
                    let report = ata_report(&dd, &states).map_err(input_err)?;
                    emit(
                        "ata",
                        json!({"method": "tree", "report": report, "states": states}),
                    );
                }
                None => {
                    let top = enumerate_states(&dd, exec).top();
                    emit(
                        "ata",
                        json!({"method": "brute_force", "count": top.len(), "states": top}),
                    );
                }
            }
        }
        Command::Alexander(input) => {
            let dd = load(&input)?;
            let oracle = alexander_oracle(&dd.diagram).map_err(input_err)?;
            let states = enumerate_states(&dd, exec).states;
            let (state_sum, note) = match polynomial_of(&states) {
                Ok(p) => (Some(p.to_string()), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let agree = state_sum
                .as_ref()
                .and_then(|s| s.parse::<altlink::LaurentPoly>().ok())
                .and_then(|p| p.eq_up_to_unit(&oracle).ok());
            emit(
                "alexander",
                json!({"oracle": oracle, "state_sum": state_sum, "state_sum_error": note, "agree_up_to_unit": agree}),
            );
        }
        Command::Report { input, brute } => {
            let dd = load(&input)?;
            let report = top_report_with(&dd, exec, brute).map_err(input_err)?;
            let failed = report.checks.iter().any(|c| c.status == CheckStatus::Fail);
            emit("report", &report);
            if failed {
                return Err(Failure::Check);
            }
        }
        Command::Verify {
            input,
            corpus,
            json,
        } => {
            if let Some(path) = corpus {
                return run_corpus(&path, json, exec);
            }
            let dd = load(&input)?;
            let v = verify_theorem(&dd, exec);
            emit("verify", &v);
            if let Some(p) = v.precondition {
                return Err(Failure::Input(p));
            }
            if !v.pass {
                return Err(Failure::Check);
            }
        }
        Command::Corpus { path, json } => return run_corpus(&path, json, exec),
    }
    Ok(())
}

fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("ALTLINK_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // the pool can only be built once per process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli.command, Execution::default()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
