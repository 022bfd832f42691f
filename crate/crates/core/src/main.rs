use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fourfold::pairfinder::PerssonRegion;
use fourfold::report::{self, CliError, Format, InvariantsArgs, ObstructArgs};
use fourfold::Parity;

#[derive(Debug, Parser)]
#[command(
    name = "fourfold",
    version,
    about = "Invariants, Einstein obstructions and homeomorphic pairs of simply connected 4-manifolds"
)]
struct Cli {
    /// Output format; csv is only available for `scan`.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert between (e, sigma), (c1^2, chi) and (b2+, b2-, parity) and test Hitchin-Thorpe.
    #[command(allow_negative_numbers = true)]
    Invariants {
        #[arg(long)]
        e: Option<i64>,
        #[arg(long)]
        sigma: Option<i64>,
        #[arg(long)]
        c1sq: Option<i64>,
        #[arg(long)]
        chi: Option<i64>,
        #[arg(long)]
        b2plus: Option<i64>,
        #[arg(long)]
        b2minus: Option<i64>,
        #[arg(long, value_parser = parse_parity)]
        parity: Option<Parity>,
    },
    /// The Horikawa pair (X_i, Z_i) with its obstruction certificate.
    #[command(allow_negative_numbers = true)]
    Pair {
        #[arg(long)]
        i: i64,
        /// Smallest index for which a companion surface is asserted to exist.
        #[arg(long, default_value_t = 0)]
        i_min: i64,
    },
    /// Invariants and ampleness verdicts of the Horikawa surface Z_i.
    #[command(allow_negative_numbers = true)]
    Horikawa {
        #[arg(long)]
        i: i64,
    },
    /// Blowup obstruction for Y # k CP2-bar, Y given by (e, sigma).
    #[command(allow_negative_numbers = true)]
    Obstruct {
        #[arg(long)]
        e: i64,
        #[arg(long)]
        sigma: i64,
        #[arg(long)]
        k: i64,
        /// Optional consistency check against (e, sigma).
        #[arg(long)]
        b2plus: Option<i64>,
        #[arg(long, value_parser = parse_parity, default_value = "odd")]
        parity: Parity,
        /// Declare that Y has no known non-zero Seiberg-Witten invariant.
        #[arg(long)]
        no_sw: bool,
    },
    /// Freedman homeomorphism test on two `b2plus,b2minus,parity` specs.
    Homeo { first: String, second: String },
    /// CP2 # 8 CP2-bar against a numerical Godeaux surface.
    Godeaux,
    /// Search the ample sector for verified pairs.
    Scan {
        #[arg(long)]
        chi_min: i64,
        #[arg(long)]
        chi_max: i64,
    },
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    s.parse()
        .map_err(|e: fourfold::topo::TopoError| e.to_string())
}

fn run(cli: Cli) -> Result<String, CliError> {
    let region = || PerssonRegion::from_env().map_err(|e| CliError::Usage(e.to_string()));
    let envelope = match cli.command {
        Command::Invariants {
            e,
            sigma,
            c1sq,
            chi,
            b2plus,
            b2minus,
            parity,
        } => report::cmd_invariants(&InvariantsArgs {
            e,
            sigma,
            c1sq,
            chi,
            b2plus,
            b2minus,
            parity,
        })?,
        Command::Pair { i, i_min } => report::cmd_pair(i, i_min, region()?)?,
        Command::Horikawa { i } => report::cmd_horikawa(i)?,
        Command::Obstruct {
            e,
            sigma,
            k,
            b2plus,
            parity,
            no_sw,
        } => report::cmd_obstruct(&ObstructArgs {
            e,
            sigma,
            k,
            b2plus,
            parity,
            has_nonzero_sw: !no_sw,
        })?,
        Command::Homeo { first, second } => report::cmd_homeo(&first, &second)?,
        Command::Godeaux => report::cmd_godeaux()?,
        Command::Scan { chi_min, chi_max } => report::cmd_scan(chi_min, chi_max, region()?)?,
    };
    report::render(&envelope, cli.format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
