use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod error;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "unitcode", version, about = "Design and certify convolutional codes built from unit schemes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel kernels.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct UnitArgs {
    /// Field as `p`, `p,m` or `p,m,c0:c1:...:cm` (modulus constant term first).
    #[arg(long)]
    pub field: Option<String>,
    /// Fourier unit of this (prime) length.
    #[arg(long)]
    pub fourier: Option<usize>,
    /// Pick the field 2N+1 for a Germain prime length N.
    #[arg(long)]
    pub germain: bool,
}

#[derive(Args, Debug, Clone)]
pub struct DistanceArgs {
    /// Trellis state guard.
    #[arg(long, default_value_t = 1 << 22)]
    pub guard_states: u64,
    /// Degree beyond the memory explored by bounded searches.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// Largest input support explored by bounded searches.
    #[arg(long, default_value_t = 3)]
    pub support_cap: usize,
    /// Output blocks a bounded search may evaluate.
    #[arg(long, default_value_t = 20_000_000)]
    pub node_budget: u64,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Group such as `C8`, `D8` or `C204xC4`.
    #[arg(long)]
    pub group: String,
    /// Support as exponent terms `i` or `i:j`, comma separated (coefficient one).
    #[arg(long)]
    pub support: String,
    #[arg(long, default_value = "2")]
    pub field: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a finite field.
    Field {
        #[arg(long)]
        field: String,
    },
    /// Print a Fourier matrix and check it against its inverse.
    Fourier(UnitArgs),
    /// Exhaustively check that every square submatrix of a Fourier matrix is nonsingular.
    Chebotarev {
        #[command(flatten)]
        unit: UnitArgs,
        /// Largest dimension to check.
        #[arg(long, default_value_t = 13)]
        guard: usize,
    },
    /// Build a code, certify it and write its card.
    Design {
        #[command(flatten)]
        unit: UnitArgs,
        /// Unit `U` from a matrix file.
        #[arg(long)]
        unit_file: Option<PathBuf>,
        /// Group ring element file; the element is embedded as `V` unless `--as-u`.
        #[arg(long)]
        grouping_file: Option<PathBuf>,
        /// Embed the group ring element as `U` instead of `V`.
        #[arg(long)]
        as_u: bool,
        /// Number of row blocks the unit is split into.
        #[arg(long)]
        blocks: Option<usize>,
        #[arg(long)]
        rate: Option<usize>,
        #[arg(long)]
        memory: Option<usize>,
        /// Tuples `i,j/k,l/...`; block indices when `--blocks` is given, where a
        /// single tuple `0,1,2,3` is read as one block per tuple.
        #[arg(long)]
        scheme: Option<String>,
        #[command(flatten)]
        distance: DistanceArgs,
        /// Skip the distance computation.
        #[arg(long)]
        no_distance: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Load a card and re-check every certificate in it.
    Certify { card: PathBuf },
    /// Compute or bound the free distance of a card.
    Distance {
        card: PathBuf,
        #[command(flatten)]
        distance: DistanceArgs,
        /// Restrict to inputs with at least this many nonzero coefficients.
        #[arg(long)]
        support: Option<usize>,
        /// Write the card back with the new distance report.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Generalized Singleton bound.
    Gsb { n: usize, r: usize, delta: usize },
    /// Build the LDPC unit from a group ring element and report its Tanner graph.
    LdpcBuild {
        /// Element file; the built-in weight-9 element of Z2(C204 x C4) by default.
        #[arg(long)]
        grouping_file: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        blocks: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Self-dual code from a group ring unit in characteristic 2.
    Selfdual {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 2)]
        blocks: usize,
        /// Block order for four blocks, e.g. `2,0,3,1`.
        #[arg(long)]
        perm: Option<String>,
        /// Certify all 24 block orders.
        #[arg(long)]
        all_perms: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Sliding-window dual-containing code from a group ring unit.
    Dualcontain {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 4)]
        blocks: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run the reproduction table.
    Repro {
        /// Only rows of this group or criterion number.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 20240917)]
        seed: u64,
        /// Cases in the randomized suite.
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
    /// Print part of a card in the plain-text matrix or element format.
    Export {
        card: PathBuf,
        /// generator, inverse, check, dual or unit.
        #[arg(long, default_value = "generator")]
        what: String,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    let json = cli.json;
    match cli.command {
        Command::Field { field } => commands::field(&field, json),
        Command::Fourier(unit) => commands::fourier(&unit, json),
        Command::Chebotarev { unit, guard } => commands::chebotarev(&unit, guard, json),
        Command::Design { unit, unit_file, grouping_file, as_u, blocks, rate, memory, scheme, distance, no_distance, out } => {
            let req = commands::DesignRequest {
                unit,
                unit_file,
                grouping_file,
                as_u,
                blocks,
                rate,
                memory,
                scheme,
                distance: (!no_distance).then_some(distance),
            };
            commands::design(&req, out.as_deref(), json)
        }
        Command::Certify { card } => commands::certify(&card, json),
        Command::Distance { card, distance, support, out } => commands::distance(&card, &distance, support, out.as_deref(), json),
        Command::Gsb { n, r, delta } => commands::gsb(n, r, delta, json),
        Command::LdpcBuild { grouping_file, blocks, out } => commands::ldpc_build(grouping_file.as_deref(), blocks, out.as_deref(), json),
        Command::Selfdual { group, blocks, perm, all_perms, out } => {
            commands::selfdual(&group, blocks, perm.as_deref(), all_perms, out.as_deref(), json)
        }
        Command::Dualcontain { group, blocks, out } => commands::dualcontain(&group, blocks, out.as_deref(), json),
        Command::Repro { only, seed, cases } => commands::repro(only.as_deref(), seed, cases, json),
        Command::Export { card, what } => commands::export(&card, &what),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Input(e.to_string().lines().next().unwrap_or("bad arguments").to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
