use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use subshift::commands;
use subshift::report::Budgets;
use subshift::CliError;
use subshift_core::orbit::DEFAULT_WINDOW;
use subshift_core::pairs::DEFAULT_ENUMERATION_BUDGET;
use subshift_core::reduction::DEFAULT_SEARCH_BUDGET;
use subshift_core::DEFAULT_MAX_WORD;

/// Analysis of primitive constant-length substitutions.
///
/// Exit codes: 0 success, 1 malformed input, 2 failed precondition,
/// 3 exhausted budget. Errors are written to stderr as JSON.
#[derive(Parser)]
#[command(name = "subshift", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Largest expanded word, in symbols.
    #[arg(long, default_value_t = DEFAULT_MAX_WORD)]
    max_word: usize,
    /// Simulator horizon [default: min(p^10, 10^6)].
    #[arg(long)]
    horizon: Option<usize>,
    /// Digit words the orbit enumeration may scan.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    brute_bound: u64,
    /// Candidates the simplification search may visit.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    search_budget: u64,
}

impl From<BudgetArgs> for Budgets {
    fn from(a: BudgetArgs) -> Self {
        Budgets {
            max_word: a.max_word,
            horizon: a.horizon,
            brute_bound: a.brute_bound,
            search_budget: a.search_budget,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: primitivity, finiteness, reduction, coincidences,
    /// Li–Yorke decisions, fiber bound.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Longest digit period scanned for orbit representatives
        /// [default: |A|^2 + 1].
        #[arg(long)]
        period_bound: Option<usize>,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// One-to-one reduction.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Whether the generated subshift is infinite, with the decision trace.
    Decide {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Exact verdict for a pair of points, with simulator evidence.
    Classify {
        file: PathBuf,
        /// Point literal (JSON) or @path.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Finite-horizon evidence for a pair of points.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        /// Writes `(n, radius)` samples as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Verdict matrix of the scrambled set of the tower.
    Tower {
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 19_683)]
        horizon: usize,
        #[arg(long)]
        json: bool,
    },
    /// Words of length n of the language, in alphabet order.
    Language {
        file: PathBuf,
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Analyze {
            file,
            json,
            period_bound,
            budgets,
        } => commands::analyze(&file, json, &budgets.into(), period_bound),
        Command::Reduce { file, json } => commands::reduce(&file, json),
        Command::Decide {
            file,
            json,
            budgets,
        } => commands::decide(&file, json, &budgets.into()),
        Command::Classify {
            file,
            x,
            y,
            json,
            window,
            budgets,
        } => commands::classify(&file, &x, &y, json, &budgets.into(), window),
        Command::Simulate {
            file,
            x,
            y,
            json,
            window,
            csv,
            budgets,
        } => commands::simulate(&file, &x, &y, json, &budgets.into(), window, csv.as_deref()),
        Command::Tower {
            depth,
            horizon,
            json,
        } => commands::tower(depth, horizon, json),
        Command::Language { file, n, json } => commands::language(&file, n, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let report = serde_json::json!({ "error": {
                "kind": "usage",
                "exit_code": 1,
                "message": e.kind().to_string(),
            }});
            eprint!("{e}");
            eprintln!("{report}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let report = serde_json::json!({ "error": e.report() });
            eprintln!("{report}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
