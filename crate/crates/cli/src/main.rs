use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use residual_cli::commands;
use residual_cli::{parse_code_file, parse_rational_vector, CliError, RandomSpec};
use residual_core::PolyMatrix;

#[derive(Parser)]
#[command(name = "residual", version, about = "Residual structural polynomial of free convolutional codes over Z/p^r")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Code file to read (`-` for stdin).
    #[arg(long, short)]
    input: PathBuf,
    /// Cross-check results with the brute-force oracles.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the residual structural polynomial.
    Delta(Common),
    /// Decide catastrophicity and print a witness when catastrophic.
    Classify(Common),
    /// Reduce to a RIDM encoder and print the trace.
    Ridm(Common),
    /// Print a RIDM parity-check matrix.
    Dual(Common),
    /// Compare the polynomial of the code with that of its dual.
    VerifyDuality(Common),
    /// Encode a rational input vector.
    Encode {
        #[command(flatten)]
        common: Common,
        /// Input `u1 | u2 | ...`, each `num` or `num / den` as coefficient lists.
        #[arg(long)]
        vector: String,
        /// Expansion window `lo:hi`.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
    },
    /// Emit a random full-rank code file.
    Random {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Replay the built-in worked examples.
    Selftest,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo >= hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn load(path: &PathBuf) -> Result<PolyMatrix, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_code_file(&text)?.1)
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let out = match cli.command {
        Command::Delta(c) => commands::delta(&load(&c.input)?, c.verify)?,
        Command::Classify(c) => commands::classify(&load(&c.input)?, c.verify)?,
        Command::Ridm(c) => commands::ridm(&load(&c.input)?, c.verify)?,
        Command::Dual(c) => commands::dual(&load(&c.input)?, c.verify)?,
        Command::VerifyDuality(c) => commands::verify_duality(&load(&c.input)?, c.verify)?,
        Command::Encode { common, vector, window } => {
            let g = load(&common.input)?;
            let input = parse_rational_vector(g.context(), &vector)?;
            commands::encode(&g, &input, window, common.verify)?
        }
        Command::Random { p, r, k, n, max_degree, seed } => {
            commands::random(RandomSpec { p, r, k, n, max_degree }, seed)?
        }
        Command::Selftest => return Ok(commands::selftest()),
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
