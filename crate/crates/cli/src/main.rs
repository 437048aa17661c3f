use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod render;

#[derive(Parser, Debug)]
#[command(name = "wfilt", version, about = "Weight and singularity spectral sequences from resolution data")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Decalage,
    SimpleExchange,
    Mv,
    GysinAcyclic,
    E2Independence,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral pages of a filtered complex (or of the complex a document assembles).
    Pages {
        file: PathBuf,
        /// Show only this page.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Singularity filtration of a resolution document.
    Singularity { file: PathBuf },
    /// Weight filtration: Gysin data, compact resolutions, or general cubes of pairs.
    Weight { file: PathBuf },
    /// Run a structural check.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        check: Check,
        /// Second document for e2-independence.
        #[arg(long)]
        against: Option<PathBuf>,
        /// Restrict to one page index.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Everything that applies to the document.
    Report { file: PathBuf },
}

fn configure_threads() {
    let Ok(v) = std::env::var("WFILT_THREADS") else { return };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("warning: WFILT_THREADS ignored: {e}");
            }
        }
        _ => eprintln!("warning: WFILT_THREADS={v:?} is not a positive integer; ignored"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match &cli.command {
        Command::Pages { file, r } => commands::pages(file, *r),
        Command::Singularity { file } => commands::singularity(file),
        Command::Weight { file } => commands::weight(file),
        Command::Verify { file, check, against, r } => commands::verify(file, *check, against.as_deref(), *r),
        Command::Report { file } => commands::report(file),
    };
    match result {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", render::text(&report)),
                Format::Machine => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
