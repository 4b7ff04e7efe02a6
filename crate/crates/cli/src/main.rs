mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lya::selftest::SelftestConfig;

use commands::Outcome;

/// Lie-Yamaguti algebras: axioms, cohomology and deformations, in exact arithmetic.
///
/// Exit status: 0 when every check passes, 1 when a mathematical check
/// fails, 2 on usage or file errors.
#[derive(Parser)]
#[command(name = "lya", version)]
struct Cli {
    /// Print one JSON document instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DeformationInput {
    /// Deformation file, or a structure file when --from is given.
    path: PathBuf,
    /// Cochain (degree 2 for F_1, degree 3 for G_1) or deformation file over the structure in PATH.
    #[arg(long)]
    from: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the six Lie-Yamaguti axioms.
    Check { structure: PathBuf },
    /// Check the representation relations (regular representation by default).
    RepCheck {
        structure: PathBuf,
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Compute cohomology dimensions and representatives.
    Cohomology {
        structure: PathBuf,
        /// Comma-separated levels: 1, 2-3, 4-5, …, or 2p:<p>.
        #[arg(long)]
        levels: Option<String>,
        /// Highest p allowed for C^{2p} x C^{2p+1}.
        #[arg(long, default_value_t = 2)]
        p_limit: usize,
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Check the deformation equations at every order.
    DeformCheck(DeformationInput),
    /// Extend a deformation order by order up to --order.
    DeformIntegrate {
        #[command(flatten)]
        input: DeformationInput,
        #[arg(long)]
        order: usize,
    },
    /// Gauge a deformation to the null one, or report a nontrivial class.
    DeformTrivialize(DeformationInput),
    /// Compute the order-n obstruction pair (n defaults to order + 1).
    Obstruction {
        #[command(flatten)]
        input: DeformationInput,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run the randomized property checks on the built-in algebras.
    Selftest {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, hide = true)]
        corrupt_delta: bool,
    },
}

fn run(cli: &Cli) -> lya::Result<Outcome> {
    match &cli.command {
        Command::Check { structure } => commands::check(structure),
        Command::RepCheck { structure, rep } => commands::rep_check(structure, rep.as_deref()),
        Command::Cohomology { structure, levels, p_limit, rep } => {
            let levels = match levels {
                Some(spec) => commands::parse_levels(spec, *p_limit)?,
                None => commands::default_levels(*p_limit),
            };
            commands::cohomology(structure, rep.as_deref(), &levels)
        }
        Command::DeformCheck(input) => {
            commands::deform_check(&commands::load_deformation_input(&input.path, input.from.as_deref())?)
        }
        Command::DeformIntegrate { input, order } => {
            let d = commands::load_deformation_input(&input.path, input.from.as_deref())?;
            commands::deform_integrate(d, *order)
        }
        Command::DeformTrivialize(input) => {
            commands::deform_trivialize(&commands::load_deformation_input(&input.path, input.from.as_deref())?)
        }
        Command::Obstruction { input, order } => {
            let d = commands::load_deformation_input(&input.path, input.from.as_deref())?;
            commands::obstruction(&d, *order)
        }
        Command::Selftest { dim, seed, corrupt_delta } => {
            commands::selftest(&SelftestConfig { dim: *dim, seed: *seed, corrupt_delta: *corrupt_delta })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.doc.to_json());
            } else {
                print!("{}", outcome.doc.render());
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
