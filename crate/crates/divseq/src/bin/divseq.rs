use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use divseq::cli::{self, default_n, Command, RunConfig};
use divseq::error::Error;
use divseq::sequences::SequenceSpec;

#[derive(Parser)]
#[command(
    name = "divseq",
    version,
    about = "Exact checks of lcm identities and growth bounds for strong divisibility sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Check strong divisibility by pair scan and by Nowicki's product criterion
    #[command(name = "check-sds")]
    CheckSds(CommonArgs),
    /// Compute the Kimberling and Nowicki factor sequences and compare them
    Factorize(CommonArgs),
    /// Verify the lcm identities for generalized binomials
    Verify(VerifyArgs),
    /// Check per-term and prefix-lcm growth bounds exactly
    Bounds(CommonArgs),
    /// Scan the normalized prefix-lcm growth ratio
    Ratio(RatioArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Sequence spec: lucas:P=<int>,Q=<int> | naturals | q:<int> | explicit:<int>,<int>,...
    #[arg(long)]
    sequence: String,

    /// Largest index to cover (default: 100, or the explicit list length)
    #[arg(long)]
    n: Option<usize>,

    /// Output format: json | csv | text
    #[arg(long, default_value = "json")]
    output: String,

    /// Write the payload to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Emit a metadata line on stderr; the payload stays canonical
    #[arg(long)]
    stamp: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Identity to check: theorem1 | cor2 | cor3 | basic | all
    #[arg(long, default_value = "all")]
    identity: String,
}

#[derive(Args)]
struct RatioArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Sample every `step` indices
    #[arg(long, default_value_t = 10)]
    step: usize,
}

fn build(
    command: Command,
    common: &CommonArgs,
    identity: &str,
    step: usize,
) -> Result<RunConfig, Error> {
    let sequence: SequenceSpec = common.sequence.parse()?;
    let n_max = common.n.unwrap_or_else(|| default_n(&sequence));
    if n_max == 0 {
        return Err(Error::Usage("--n must be at least 1".into()));
    }
    Ok(RunConfig {
        command,
        sequence,
        n_max,
        identity: identity.parse()?,
        step,
        output: common.output.parse()?,
        out_path: common.out.clone(),
        stamp: common.stamp,
    })
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            cli::diagnostic(&Error::Usage(e.to_string()));
            std::process::exit(2);
        }
    };
    let config = match &cli.command {
        CliCommand::CheckSds(c) => build(Command::CheckSds, c, "all", 10),
        CliCommand::Factorize(c) => build(Command::Factorize, c, "all", 10),
        CliCommand::Verify(v) => build(Command::Verify, &v.common, &v.identity, 10),
        CliCommand::Bounds(c) => build(Command::Bounds, c, "all", 10),
        CliCommand::Ratio(r) => build(Command::Ratio, &r.common, "all", r.step),
    };
    match config {
        Ok(config) => std::process::exit(cli::run(&config)),
        Err(e) => {
            cli::diagnostic(&e);
            std::process::exit(e.exit_code());
        }
    }
}
