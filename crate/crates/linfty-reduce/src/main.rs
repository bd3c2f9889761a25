use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use linfty_reduce::fixture::Fixture;
use linfty_reduce::pipeline::{self, Direction, Pipeline};
use linfty_reduce::report::{error_json, Report};
use linfty_reduce::suites::Suite;
use linfty_reduce::{par, Error, Result};

#[derive(Parser)]
#[command(
    name = "linfty-reduce",
    version,
    about = "Exact L-infinity and BRST reduction of equivariant Poisson structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Fixture file (JSON, schema 1)
    fixture: PathBuf,
    /// Lower the ħ truncation N_ħ
    #[arg(long)]
    nh: Option<usize>,
    /// Taylor truncation N_T (bound on the 𝔤*-degree)
    #[arg(long)]
    nt: Option<usize>,
    /// Highest arity of transferred components
    #[arg(long)]
    arity_cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Run an invariant suite on the fixture
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Compute the reduced Poisson structure
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = PipelineArg::Both)]
        pipeline: PipelineArg,
    },
    /// Evaluate a transferred L-infinity component on probe words
    Transfer {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Signs,
    Retract,
    Linfty,
    Kks,
    Hpl,
}

#[derive(Clone, Copy, ValueEnum)]
enum PipelineArg {
    Linfty,
    Hpl,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    #[value(name = "P")]
    P,
    #[value(name = "I")]
    I,
}

fn load(c: &Common) -> Result<Fixture> {
    Fixture::load(&c.fixture)?.with_truncation(c.nh, c.nt, c.arity_cap)
}

fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Check { common, suite } => {
            let suite = match suite {
                SuiteArg::Signs => Suite::Signs,
                SuiteArg::Retract => Suite::Retract,
                SuiteArg::Linfty => Suite::Linfty,
                SuiteArg::Kks => Suite::Kks,
                SuiteArg::Hpl => Suite::Hpl,
            };
            pipeline::check_report(&load(common)?, suite)
        }
        Command::Reduce { common, pipeline } => {
            let pipeline = match pipeline {
                PipelineArg::Linfty => Pipeline::Linfty,
                PipelineArg::Hpl => Pipeline::Hpl,
                PipelineArg::Both => Pipeline::Both,
            };
            pipeline::reduce_report(&load(common)?, pipeline)
        }
        Command::Transfer { common, direction, order } => {
            let dir = match direction {
                DirectionArg::P => Direction::P,
                DirectionArg::I => Direction::I,
            };
            pipeline::transfer_report(&load(common)?, dir, *order)
        }
    }
}

fn init_threads() -> Result<()> {
    match std::env::var("LINFTY_REDUCE_THREADS") {
        Err(_) => Ok(()),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => par::init_threads(n),
            _ => Err(Error::invalid("LINFTY_REDUCE_THREADS", format!("expected a positive integer, got {v:?}"))),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.command {
        Command::Check { common, .. } | Command::Reduce { common, .. } | Command::Transfer { common, .. } => {
            common.report
        }
    };
    let result = init_threads().and_then(|()| run(&cli.command));
    match result {
        Ok(report) => {
            match format {
                ReportFormat::Json => println!("{}", report.json()),
                ReportFormat::Text => print!("{}", report.text()),
            }
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            let code = e.exit_code();
            match format {
                ReportFormat::Json => println!("{}", error_json(&e)),
                ReportFormat::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(code as u8)
        }
    }
}
