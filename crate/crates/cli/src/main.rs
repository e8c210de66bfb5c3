use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hesse_cli::commands::{self, Report};
use hesse_cli::{parse_cubic, CliError};
use hesse_core::finitegeo::AffMap3;
use hesse_core::flexsolve::DEFAULT_TOL;
use hesse_core::scalar::Eis;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Plane cubics, their flexes and the Hesse configuration.
#[derive(Parser, Debug)]
#[command(name = "hesse", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit type, singular locus and orbit dimension of a cubic.
    Classify { cubic: String },
    /// The Hessian of a cubic.
    Hessian { cubic: String },
    /// Numeric intersection of a cubic with its Hessian.
    Flexes {
        cubic: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Dimension of the orbit of a cubic under SL3.
    OrbitDim { cubic: String },
    /// Checks on the configuration of the nine flexes of the Hesse pencil.
    Hesse {
        #[command(subcommand)]
        command: HesseCommand,
    },
    /// Queries about the Hessian group.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Projective transformation taking a smooth cubic into the Hesse pencil.
    Normalize {
        cubic: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Subcommand, Debug)]
enum HesseCommand {
    /// Run the configuration suite.
    Verify {
        /// Also emit the 12 x 9 line-flex incidence table.
        #[arg(long)]
        dump_incidence: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// Number of elements.
    Order,
    /// Stabilizer of the flex t(i,j).
    Stabilizer { i: i64, j: i64 },
    /// Images of the generators in the affine group of F3^2.
    Theta,
    /// Projective realization of an affine map such as "[[0,1],[2,0]] + (1,1)".
    Realize { affmap: String },
    /// Group elements are exactly the transformations keeping a smooth member in the pencil.
    H12 {
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value_t = 50)]
        non_members: usize,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Classify { cubic } => commands::classify_cmd(&parse_cubic(cubic)?),
        Command::Hessian { cubic } => commands::hessian_cmd(&parse_cubic(cubic)?),
        Command::Flexes { cubic, tol } => commands::flexes_cmd(&parse_cubic(cubic)?, cli.seed, *tol),
        Command::OrbitDim { cubic } => commands::orbit_dim_cmd(&parse_cubic(cubic)?),
        Command::Hesse { command: HesseCommand::Verify { dump_incidence } } => commands::hesse_verify_cmd(*dump_incidence),
        Command::Group { command } => match command {
            GroupCommand::Order => commands::group_order_cmd(),
            GroupCommand::Stabilizer { i, j } => commands::group_stabilizer_cmd(*i, *j),
            GroupCommand::Theta => commands::group_theta_cmd(),
            GroupCommand::Realize { affmap } => {
                let sigma: AffMap3 = affmap.parse().map_err(CliError::Core)?;
                commands::group_realize_cmd(&sigma)
            }
            GroupCommand::H12 { lambda, non_members } => {
                let lambda: Eis = lambda.parse().map_err(CliError::Core)?;
                commands::group_h12_cmd(&lambda, cli.seed, *non_members)
            }
        },
        Command::Normalize { cubic, tol } => commands::normalize_cmd(&parse_cubic(cubic)?, cli.seed, *tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Text => report.text.clone(),
                Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable") + "\n",
            };
            // a closed pipe is not an error
            let _ = std::io::stdout().write_all(out.as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => {
                    let v = serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() });
                    eprintln!("{v}");
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
