use std::io::Read;
use std::process::ExitCode;

use clap::Parser;

use gradedgeom::cli::{run, CliError, Command, Format, Options};

#[derive(Parser, Debug)]
#[command(name = "gradedgeom", version, about = "Shifted Poisson and symplectic structures on graded polynomial models")]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Model file, or `-` for standard input.
    file: String,
    #[arg(long)]
    weight_cutoff: Option<i64>,
    #[arg(long)]
    hbar_order: Option<u32>,
    /// Inclusive degree range `LO:HI`.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    degree_window: Option<(i64, i64)>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = a.trim().parse().map_err(|e| format!("{e}"))?;
    let hi = b.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err("empty window".into());
    }
    Ok((lo, hi))
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options { weight_cutoff: args.weight_cutoff, hbar_order: args.hbar_order, degree_window: args.degree_window, seed: args.seed };
    let result = read_input(&args.file).and_then(|text| run(args.command, &text, &opts));
    match result {
        Ok(report) => {
            print!("{}", report.render(args.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", args.command.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
