use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use k0forge_core::engine::{run, ConstructionParams, DEFAULT_ENUMERATION, DEFAULT_POLICY};
use k0forge_core::kring::{classify, StandardForm};
use k0forge_core::numbers::{parse_rational, parse_supernatural};
use k0forge_core::Error;
use num_bigint::BigInt;

#[derive(Parser)]
#[command(name = "k0forge", version, about = "Exact stage arithmetic for perforated K0 limits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Build the stage table and the limit summary.
    Run {
        /// Scale k = A/B with 0 < k < 1.
        #[arg(long = "k", value_name = "A/B")]
        k: String,
        /// Generalized integer, e.g. 2^inf*3^inf.
        #[arg(long, value_name = "STR")]
        supernatural: String,
        #[arg(long, value_name = "J")]
        stages: usize,
        /// minimal or random:SEED
        #[arg(long, default_value = DEFAULT_POLICY)]
        policy: String,
        #[arg(long, default_value = DEFAULT_ENUMERATION)]
        enumeration: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Decide positivity of h * ([xi^q] - [theta_m]) over F sphere factors.
    CheckClass {
        #[arg(long, allow_hyphen_values = true)]
        q: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        m: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        h: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        factors: BigInt,
    },
    /// Print a strong perforation witness (x, n) of the limit.
    Witness {
        #[arg(long = "k", value_name = "A/B")]
        k: String,
        #[arg(long, value_name = "STR")]
        supernatural: String,
    },
}

fn params(k: &str, n: &str, stages: usize) -> Result<ConstructionParams, Error> {
    Ok(ConstructionParams::new(parse_rational(k)?, parse_supernatural(n)?, stages))
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Run {
            k,
            supernatural,
            stages,
            policy,
            enumeration,
            format,
            out,
        } => {
            let p = params(&k, &supernatural, stages)?
                .with_policy(policy)
                .with_enumeration(enumeration);
            let report = run(p)?;
            let mut text = match format {
                Format::Json => report.to_json(),
                Format::Table => report.to_table(),
            };
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| {
                    Error::InvalidParams(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
        }
        Command::CheckClass { q, m, h, factors } => {
            let sf = StandardForm::new(q, m)?;
            println!("{}", classify(&sf, &h, &factors)?);
        }
        Command::Witness { k, supernatural } => {
            let report = run(params(&k, &supernatural, 1)?)?;
            let (x, n) = report.witness;
            println!("({x}, {n})");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
