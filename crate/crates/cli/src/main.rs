use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use exactcat_cli::{parse_spec_file, run_with_jobs, Command, Options};

#[derive(Parser)]
#[command(name = "exactcat", version, about = "Quotients of exact categories of quiver representations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Dimension bound for subobject, extension and sample enumeration.
    #[arg(long, global = true)]
    bound: Option<usize>,

    /// Seed for sampled hom-spaces.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Approximation conditions and the pseudo-cluster-tilting verdict.
    CheckPct { spec: PathBuf },
    /// Quotient hom table, kernel/cokernel oracles, semi-abelian and abelian checks.
    Quotient { spec: PathBuf },
    /// Class S/T membership of named conflations and the self-orthogonality crosscheck.
    Classes {
        spec: PathBuf,
        /// Only this named conflation.
        #[arg(long)]
        conflation: Option<String>,
    },
    /// Harnesses on the category of conflations over the spec's quiver.
    Confl { spec: PathBuf },
    /// Everything above on the bundled fixtures.
    VerifyPaper,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = Options {
        bound: cli.bound,
        seed: cli.seed,
        ..Options::default()
    };
    let (command, spec) = match cli.command {
        Cmd::CheckPct { spec } => (Command::CheckPct, Some(spec)),
        Cmd::Quotient { spec } => (Command::Quotient, Some(spec)),
        Cmd::Classes { spec, conflation } => {
            opts.conflation = conflation;
            (Command::Classes, Some(spec))
        }
        Cmd::Confl { spec } => (Command::Confl, Some(spec)),
        Cmd::VerifyPaper => (Command::VerifyPaper, None),
    };
    let doc = match spec.map(|p| parse_spec_file(&p)).transpose() {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let report = run_with_jobs(command, doc.as_ref(), &opts, cli.jobs);
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code as u8)
}
