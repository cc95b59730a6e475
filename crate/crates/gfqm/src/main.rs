//! Thin command-line front end; all machinery lives in the library.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 size-guard refusal,
//! 3 internal invariant failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gfqm::lhv::BipartiteTable;
use gfqm::report::{self, BqmDetail, Format, LhvCheck, RunReport};
use gfqm::Error;

#[derive(Parser)]
#[command(
    name = "gfqm",
    version,
    about = "Exact quantum-like models over Galois fields: probabilities, expectation values, and CHSH bounds"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Gqm,
    Bqm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Feasibility,
    Signaling,
    Hardy,
    All,
}

impl From<CheckArg> for LhvCheck {
    fn from(c: CheckArg) -> LhvCheck {
        match c {
            CheckArg::Feasibility => LhvCheck::Feasibility,
            CheckArg::Signaling => LhvCheck::Signaling,
            CheckArg::Hardy => LhvCheck::Hardy,
            CheckArg::All => LhvCheck::All,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhatArg {
    States,
    Systems,
    Pauli,
    UState,
    Constraints,
    Pu,
}

impl From<WhatArg> for BqmDetail {
    fn from(w: WhatArg) -> BqmDetail {
        match w {
            WhatArg::States => BqmDetail::States,
            WhatArg::Systems => BqmDetail::Systems,
            WhatArg::Pauli => BqmDetail::Pauli,
            WhatArg::UState => BqmDetail::UState,
            WhatArg::Constraints => BqmDetail::Constraints,
            WhatArg::Pu => BqmDetail::Pu,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// The singlet product-observable table with exact fractions.
    Table1 {
        /// Prime-power field order.
        #[arg(long)]
        q: u64,
    },
    /// State censuses (product/entangled, physical/unphysical).
    Counts {
        #[arg(long, value_enum)]
        model: ModelArg,
        /// Field order for the probability model.
        #[arg(long)]
        q: Option<u64>,
        /// Prime characteristic for the biorthogonal model (p = 3 mod 4).
        #[arg(long)]
        p: Option<u64>,
    },
    /// Exhaustive CHSH searches.
    Chsh {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        /// Search every entangled state (probability model, q <= 5).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Hidden-variable feasibility, no-signaling, and implication-chain
    /// analysis of a bipartite table.
    Lhv {
        /// Path to a table document (JSON with num/den probabilities).
        #[arg(long, conflicts_with = "preset")]
        input: Option<PathBuf>,
        /// Built-in table: gqm-singlet-xy, pr-box, or independent.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
    },
    /// Catalogs of the biorthogonal model over GF(p^2).
    BqmDetail {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        what: WhatArg,
    },
}

fn run(command: Command) -> gfqm::Result<RunReport> {
    match command {
        Command::Table1 { q } => report::cmd_table1(q),
        Command::Counts { model, q, p } => match model {
            ModelArg::Gqm => report::cmd_counts_gqm(require("--q", q)?),
            ModelArg::Bqm => report::cmd_counts_bqm(require("--p", p)?),
        },
        Command::Chsh {
            model,
            q,
            p,
            exhaustive,
        } => match model {
            ModelArg::Gqm => report::cmd_chsh_gqm(require("--q", q)?, exhaustive),
            ModelArg::Bqm => report::cmd_chsh_bqm(require("--p", p)?),
        },
        Command::Lhv {
            input,
            preset,
            check,
        } => {
            let (table, source) = match (input, preset) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        Error::Usage(format!("cannot read {}: {e}", path.display()))
                    })?;
                    let table = BipartiteTable::from_document(&text)?;
                    (table, format!("file:{}", path.display()))
                }
                (None, Some(name)) => (report::preset_table(&name)?, format!("preset:{name}")),
                _ => {
                    return Err(Error::Usage(
                        "exactly one of --input or --preset is required".into(),
                    ))
                }
            };
            report::cmd_lhv(&table, &source, check.into())
        }
        Command::BqmDetail { p, what } => report::cmd_bqm_detail(p, what.into()),
    }
}

fn require(name: &str, value: Option<u64>) -> gfqm::Result<u64> {
    value.ok_or_else(|| Error::Usage(format!("{name} is required for this model")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through the error path with status 0
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let format = cli.format.into();
    match run(cli.command) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::SizeGuard { .. }
                | Error::SearchGuard(_)
                | Error::TooManySettings { .. } => 2,
                Error::Internal(_) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
