use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use tripotent_core::calculus::Tripotent;
use tripotent_core::kernel::{unit, ToleranceProfile};
use tripotent_core::logic::{check_orthogonality_axioms, snapshot_from_tripotents, FiniteGQL, DEFAULT_CAP};
use tripotent_core::models::{TripleElement, TripleModel};
use tripotent_core::morphism::order_breaking_antisymmetric;
use tripotent_core::report::{Report, Status};
use tripotent_core::suites::{reports_json, run_gallery, run_suite, SuiteConfig};
use tripotent_core::Error;

const TOL_ENV: &str = "TRIPOTENT_LOGIC_TOL";

#[derive(Parser, Debug)]
#[command(name = "tripotent-logic", version, about = "Tripotent logic verification suites, counterexample gallery and Hasse diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed of the random generator.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of random samples per suite.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,

    /// Zero tolerance `eps_zero`; overrides the TRIPOTENT_LOGIC_TOL variable.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite: peirce, order, orthogonality, logic-axioms,
    /// meet, dye, consistent or local-jordan.
    Verify {
        suite: String,
        /// Builtin model: m2, m3, m4, r23, a3, a5 or spin3.
        #[arg(long)]
        model: Option<String>,
        /// Projection map for the dye suite: identity, transpose or conjugation.
        #[arg(long)]
        map: Option<String>,
    },
    /// Reproduce a counterexample: 4i, 4ii, 4iii or 4iv.
    Gallery { example: String },
    /// Print the Hasse diagram of a logic as DOT: a builtin name
    /// (m2-projections, a5-sample, empty) or a JSON file.
    Hasse { spec: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

enum Failure {
    Usage(String),
    Assertion(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownSuite(_)
            | Error::UnknownExample(_)
            | Error::Parse(_)
            | Error::UnsupportedModel(_)
            | Error::InvalidModel(_)
            | Error::InvalidTolerance(_) => Failure::Usage(e.to_string()),
            other => Failure::Assertion(other.to_string()),
        }
    }
}

fn tolerance(flag: Option<f64>) -> Result<ToleranceProfile, Failure> {
    let value = match flag {
        Some(v) => Some(v),
        None => match std::env::var(TOL_ENV) {
            Ok(s) => Some(s.trim().parse::<f64>().map_err(|e| Failure::Usage(format!("{TOL_ENV}={s}: {e}")))?),
            Err(_) => None,
        },
    };
    match value {
        Some(v) => Ok(ToleranceProfile::with_eps_zero(v)?),
        None => Ok(ToleranceProfile::default()),
    }
}

fn builtin_model(name: &str) -> Result<TripleModel, Failure> {
    TripleModel::builtin(name).ok_or_else(|| Failure::Usage(format!("unknown model {name}; expected m2, m3, m4, r23, a3, a5 or spin3")))
}

fn print_reports(format: Format, command: &str, target: &str, cfg: &SuiteConfig, reports: &[Report]) {
    match format {
        Format::Json => {
            let doc = reports_json(command, target, cfg, reports);
            println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
        }
        Format::Text => {
            for r in reports {
                let status = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::ExpectedFail => "expected-fail",
                };
                println!("{status:<13} {:<40} max_deviation={:.3e}", r.check, r.max_deviation);
                for w in &r.witnesses {
                    println!("    {w}");
                }
            }
        }
    }
}

fn hasse_logic(spec: &str, tol: &ToleranceProfile) -> Result<FiniteGQL, Failure> {
    match spec {
        "empty" => Ok(snapshot_from_tripotents(&[], tol, DEFAULT_CAP)?.into_logic()),
        "m2-projections" => {
            let m2 = TripleModel::square(2)?;
            let seed = [unit(2, 2, 0, 0), unit(2, 2, 1, 1)]
                .into_iter()
                .map(|e| Tripotent::new(TripleElement::from_matrix(m2, e)?, tol))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(snapshot_from_tripotents(&seed, tol, DEFAULT_CAP)?.into_logic())
        }
        "a5-sample" => Ok(order_breaking_antisymmetric(tol)?.snapshot.into_logic()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            logic_from_json(&value, tol)
        }
    }
}

/// A logic in its own JSON form, or `{"seed": [tripotent, …]}` closed into
/// a snapshot.
fn logic_from_json(value: &Value, tol: &ToleranceProfile) -> Result<FiniteGQL, Failure> {
    if let Some(seed) = value.get("seed") {
        let items = seed.as_array().ok_or_else(|| Failure::Usage("seed must be an array".into()))?;
        let seed = items
            .iter()
            .map(|t| Tripotent::from_json(t, tol))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(snapshot_from_tripotents(&seed, tol, DEFAULT_CAP)?.into_logic());
    }
    FiniteGQL::from_json(value).map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let tol = tolerance(cli.tol)?;
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let mut cfg = SuiteConfig {
        seed: cli.seed,
        samples: cli.samples,
        tol,
        model: None,
        map: None,
    };
    match cli.command {
        Command::Verify { suite, model, map } => {
            cfg.model = model.as_deref().map(builtin_model).transpose()?;
            cfg.map = map;
            let reports = run_suite(&suite, &cfg)?;
            print_reports(cli.format, "verify", &suite, &cfg, &reports);
            Ok(reports.iter().all(Report::as_expected))
        }
        Command::Gallery { example } => {
            let reports = run_gallery(&example, &cfg)?;
            print_reports(cli.format, "gallery", &example, &cfg, &reports);
            Ok(reports.iter().all(Report::as_expected))
        }
        Command::Hasse { spec } => {
            let logic = hasse_logic(&spec, &tol)?;
            let axioms = check_orthogonality_axioms(&logic);
            if !axioms.is_pass() {
                return Err(Failure::Assertion(format!("axiom violation: {}", axioms.witnesses.join("; "))));
            }
            print!("{}", logic.to_dot());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Assertion(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
