//! `gmunn`: parse the text formats, run a computation, print a report.
//!
//! Exit codes: 0 ok, 1 parse error, 2 validation failure, 3 size cap.

mod commands;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use gmunn::Limits;

use commands::Context;
use report::{Report, Status};

#[derive(Debug, Parser)]
#[command(name = "gmunn", version, about = "Finite inverse semigroups, presheaves, supported actions and their Munn semigroups")]
struct Cli {
    /// Render the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on the size of inputs to exhaustive operations.
    #[arg(long, global = true, env = "GMUNN_MAX_SIZE")]
    max_size: Option<usize>,
    /// Destination for the generated artifact (munn, gmunn, gen) or the
    /// report (every other command).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Omit the version banner.
    #[arg(long, global = true)]
    no_banner: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate any file format; report the first violation.
    Validate { file: PathBuf },
    /// Summary statistics of any file format.
    Info { file: PathBuf },
    /// The maximum idempotent-separating congruence of a semigroup.
    Mu { file: PathBuf },
    /// The Munn semigroup of the idempotents of a semigroup.
    Munn { file: PathBuf },
    /// The generalised Munn semigroup of a presheaf or action.
    Gmunn { file: PathBuf },
    /// The Munn representation of a semigroup, or the generalised one of an action.
    Repr { file: PathBuf },
    /// The characteristic congruence of an action.
    CharCong { file: PathBuf },
    /// Check the generalised Munn representation of an action.
    TheoremC { file: PathBuf },
    /// Round-trip between actions and homomorphisms into T_X.
    TheoremD {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Soberness, partial homeomorphisms and T of the open-set lattice.
    Topo { file: PathBuf },
    /// Sections, the semigroup La and its comparison with T of the sections.
    Bundle { file: PathBuf },
    /// Write a standard example.
    Gen { kind: String, n: Option<usize> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Info { .. } => "info",
            Command::Mu { .. } => "mu",
            Command::Munn { .. } => "munn",
            Command::Gmunn { .. } => "gmunn",
            Command::Repr { .. } => "repr",
            Command::CharCong { .. } => "char-cong",
            Command::TheoremC { .. } => "theorem-c",
            Command::TheoremD { .. } => "theorem-d",
            Command::Topo { .. } => "topo",
            Command::Bundle { .. } => "bundle",
            Command::Gen { .. } => "gen",
        }
    }

    /// Commands whose `--out` receives an artifact rather than the report.
    fn writes_artifact(&self) -> bool {
        matches!(self, Command::Munn { .. } | Command::Gmunn { .. } | Command::Gen { .. })
    }
}

fn dispatch(ctx: &mut Context, command: &Command) -> commands::Outcome {
    match command {
        Command::Validate { file } => commands::validate(ctx, file),
        Command::Info { file } => commands::info(ctx, file),
        Command::Mu { file } => commands::mu_cmd(ctx, file),
        Command::Munn { file } => commands::munn(ctx, file),
        Command::Gmunn { file } => commands::gmunn(ctx, file),
        Command::Repr { file } => commands::repr(ctx, file),
        Command::CharCong { file } => commands::char_cong(ctx, file),
        Command::TheoremC { file } => commands::theorem_c(ctx, file),
        Command::TheoremD { files } => commands::theorem_d(ctx, files),
        Command::Topo { file } => commands::topo(ctx, file),
        Command::Bundle { file } => commands::bundle(ctx, file),
        Command::Gen { kind, n } => commands::gen(ctx, kind, *n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(Status::ParseError.exit_code());
        }
    };
    let mut limits = Limits::default();
    if let Some(n) = cli.max_size {
        limits.max_size = n;
    }
    let artifact = cli.command.writes_artifact();
    let mut ctx = Context {
        report: Report::new(cli.command.name()),
        limits,
        out: if artifact { cli.out.clone() } else { None },
    };
    if let Err(failure) = dispatch(&mut ctx, &cli.command) {
        ctx.report.fail(failure);
    }
    let banner = !cli.no_banner;
    let rendered = if cli.json { ctx.report.to_json(banner) } else { ctx.report.to_text(banner) };
    match cli.out.filter(|_| !artifact) {
        Some(path) => {
            if let Err(e) = fs::write(&path, &rendered) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(Status::ValidationFailure.exit_code());
            }
        }
        None => {
            let _ = std::io::stdout().write_all(rendered.as_bytes());
        }
    }
    ExitCode::from(ctx.report.status().exit_code())
}
