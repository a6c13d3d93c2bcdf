use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kres::commands::{self, DEFAULT_BOUND};
use kres::Report;

/// Exact equivariant residues, reduction pairings and Kirwan-kernel
/// decisions from fixed-point data.
#[derive(Parser, Debug)]
#[command(name = "kres", version)]
struct Cli {
    /// Print a human-readable report instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check space, class and basis invariants.
    Validate { space: PathBuf, basis: Option<PathBuf> },
    /// Res_X^+ of a factored rational function, by both methods.
    Residue {
        /// Expression, or a file containing one.
        expr: String,
    },
    /// Reduction pairing of two classes (names or polynomials).
    Pairing {
        space: PathBuf,
        eta: String,
        zeta: String,
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Decide whether a class lies in the kernel of the Kirwan map.
    Kernel {
        space: PathBuf,
        /// Class name or polynomial.
        eta: String,
        #[arg(long)]
        basis: Option<PathBuf>,
        /// Also run the residue criterion over basis x monomials up to this
        /// degree.
        #[arg(long)]
        degree: Option<u32>,
        /// Exit with 1 unless the class is in the kernel.
        #[arg(long)]
        expect_kernel: bool,
    },
    /// Staged residue criterion.
    Stages {
        #[command(subcommand)]
        command: StagesCommand,
    },
    /// Build toric example spaces.
    Toric {
        #[command(subcommand)]
        command: ToricCommand,
    },
}

#[derive(Subcommand, Debug)]
enum StagesCommand {
    /// Walk the stage chain for a class.
    Check {
        chain: PathBuf,
        class: String,
        #[arg(long)]
        expect_kernel: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ToricCommand {
    /// Complex projective space CP^n.
    Cpn {
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u32,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
    },
    /// Product of two toric bundles.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u32,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Validate { space, basis } => commands::validate(space, basis.as_deref()),
        Command::Residue { expr } => commands::residue(expr),
        Command::Pairing { space, eta, zeta, basis } => commands::pairing_cmd(space, basis.as_deref(), eta, zeta),
        Command::Kernel {
            space,
            eta,
            basis,
            degree,
            expect_kernel,
        } => commands::kernel(space, basis.as_deref(), eta, *degree, *expect_kernel),
        Command::Stages {
            command: StagesCommand::Check {
                chain,
                class,
                expect_kernel,
            },
        } => commands::stages(chain, class, *expect_kernel),
        Command::Toric { command } => match command {
            ToricCommand::Cpn { n, bound, shift } => commands::toric_cpn(*n, *bound, shift.as_deref()),
            ToricCommand::Product { a, b, bound, shift } => commands::toric_product(a, b, *bound, shift.as_deref()),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = if cli.human {
                report.render_human()
            } else {
                format!("{}\n", report.json())
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(report.status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
