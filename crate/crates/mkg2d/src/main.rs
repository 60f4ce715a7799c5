use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mkg2d::cli;
use mkg2d::dynamics::Formulation;

#[derive(Parser)]
#[command(
    name = "mkg2d",
    about = "Maxwell-Klein-Gordon laboratory on the 2-torus: pseudospectral evolution in the Coulomb gauge and exact exponent feasibility for wave-Sobolev product estimates",
    version
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation from a JSON config and write monitor CSV output.
    Simulate {
        /// Path to the JSON configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory for monitors.csv and snapshots.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Also dump the final state fields.
        #[arg(long)]
        snapshots: bool,
    },
    /// Check the fourteen bilinear-estimate conditions on six exponents.
    ///
    /// Exponents are exact literals like `7/30` or `1/4+1ε` (also spelled
    /// `1/4+1eps`).
    CheckEstimate {
        /// s0 s1 s2 b0 b1 b2
        #[arg(num_args = 6)]
        exponents: Vec<String>,
    },
    /// Scan the (s, s') grid, compare against the closed-form region, and
    /// write region.csv / region.svg.
    Region {
        /// Grid step: 1/32, 1/64 or 1/128.
        #[arg(long, default_value = "1/64")]
        step: String,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run the operator-property and reformulation-identity suite.
    Identities {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Grid size (power of two, at least 8).
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Inject a gradient into the potential (negative control).
        #[arg(long)]
        non_div_free: bool,
    },
    /// Richardson self-convergence study over halved time steps.
    Convergence {
        #[arg(long)]
        config: PathBuf,
        /// Number of refinement levels (at least 3).
        #[arg(long, default_value_t = 3)]
        refinements: usize,
        /// Override the config's formulation.
        #[arg(long, value_enum)]
        formulation: Option<CliFormulation>,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum CliFormulation {
    Direct,
    Nullform,
}

impl From<CliFormulation> for Formulation {
    fn from(f: CliFormulation) -> Self {
        match f {
            CliFormulation::Direct => Formulation::Direct,
            CliFormulation::Nullform => Formulation::Nullform,
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = match args.command {
        Command::Simulate {
            config,
            out,
            snapshots,
        } => cli::cmd_simulate(&config, &out, snapshots),
        Command::CheckEstimate { exponents } => cli::cmd_check_estimate(&exponents),
        Command::Region { step, out } => cli::cmd_region(&step, &out),
        Command::Identities {
            seed,
            n,
            non_div_free,
        } => cli::cmd_identities(seed, n, non_div_free),
        Command::Convergence {
            config,
            refinements,
            formulation,
        } => cli::cmd_convergence(&config, refinements, formulation.map(Into::into)),
    };
    ExitCode::from(code as u8)
}
