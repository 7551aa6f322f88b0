use clap::Parser;
use equivec::fixtures;
use equivec::problem::{run_json_str, run_path, run_suite, Report, SuiteEntry, Verdict};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

/// Check filtration, fan, bundle, and filtered-representation problems
/// given as JSON files. Exit codes: 0 pass, 1 fail, 2 invalid input,
/// 3 indeterminate.
#[derive(Parser)]
#[command(name = "equivec", version)]
struct Cli {
    /// Problem file, or directory of problem files run as a suite
    #[arg(required_unless_present_any = ["fixture", "list_fixtures"])]
    path: Option<PathBuf>,

    /// Emit reports as JSON instead of aligned text
    #[arg(long)]
    json: bool,

    /// Process suite files concurrently
    #[arg(long)]
    parallel: bool,

    /// Run a named built-in fixture instead of a file
    #[arg(long, conflicts_with = "path")]
    fixture: Option<String>,

    /// List the built-in fixture names and exit
    #[arg(long, conflicts_with_all = ["path", "fixture"])]
    list_fixtures: bool,
}

fn emit_single(report: &Report, as_json: bool) -> ExitCode {
    if as_json {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    } else {
        print!("{}", report.text());
    }
    ExitCode::from(report.exit_code() as u8)
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Indeterminate => "indeterminate",
    }
}

fn emit_suite(entries: &[SuiteEntry], code: i32, as_json: bool) -> ExitCode {
    if as_json {
        let files: Vec<serde_json::Value> = entries
            .iter()
            .map(|e| {
                let file = e.file.display().to_string();
                match &e.outcome {
                    Ok(report) => json!({"file": file, "report": report}),
                    Err(diag) => json!({"file": file, "error": diag}),
                }
            })
            .collect();
        let out = json!({"files": files, "exit": code});
        println!("{}", serde_json::to_string_pretty(&out).expect("suite serializes"));
    } else {
        let width = entries
            .iter()
            .map(|e| e.file.display().to_string().len())
            .max()
            .unwrap_or(0);
        for e in entries {
            match &e.outcome {
                Ok(report) => println!(
                    "{:<width$}  {:<13}  {}",
                    e.file.display(),
                    verdict_name(report.verdict),
                    report.exit_code()
                ),
                Err(diag) => {
                    println!("{:<width$}  {:<13}  2  {diag}", e.file.display(), "invalid")
                }
            }
        }
        println!("aggregate: {} files, exit {code}", entries.len());
    }
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if cli.list_fixtures {
        for name in fixtures::names() {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }

    if let Some(name) = &cli.fixture {
        let Some(text) = fixtures::fixture(name) else {
            eprintln!("unknown fixture `{name}`; --list-fixtures shows the available names");
            return ExitCode::from(2);
        };
        return match run_json_str(text) {
            Ok(report) => emit_single(&report, cli.json),
            Err(diag) => {
                eprintln!("{diag}");
                ExitCode::from(2)
            }
        };
    }

    let path = cli.path.expect("clap enforces a path");
    if path.is_dir() {
        match run_suite(&path, cli.parallel) {
            Ok((entries, code)) => emit_suite(&entries, code, cli.json),
            Err(diag) => {
                eprintln!("{diag}");
                ExitCode::from(2)
            }
        }
    } else {
        match run_path(&path) {
            Ok(report) => emit_single(&report, cli.json),
            Err(diag) => {
                eprintln!("{diag}");
                ExitCode::from(2)
            }
        }
    }
}
