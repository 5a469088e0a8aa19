mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hhbv", version, about = "Hochschild cohomology BV structures of abelian group algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the presentation of HH^* with its Δ and bracket tables.
    Present(Common),
    /// Δ of a monomial, by closed form and by the engine.
    Delta(Common),
    /// Bracket of two monomials (pass -m twice).
    Bracket(Common),
    /// HH^i as modules for i up to the degree bound.
    Homology(Common),
    /// Run acceptance suites, or the consistency checks for one group.
    Verify(Common),
    /// Cross-route consistency matrix: bar complex, small resolution, closed form.
    Compare(Common),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Group, e.g. "Z/6", "Z/4 x Z/2", "Z x Z".
    #[arg(short, long)]
    group: Option<String>,
    /// Coefficient ring: Z, Q, Z/m or F_p.
    #[arg(short, long, default_value = "Z")]
    ring: String,
    /// Degree bound.
    #[arg(short, long, env = "HHBV_DEGREE_CAP", default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=8))]
    degree: u32,
    /// Monomial such as x^3*y*z^2; repeat for bracket.
    #[arg(short, long)]
    monomial: Vec<String>,
    /// Suite name for verify (repeatable); see `verify --suite list`.
    #[arg(long)]
    suite: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for verify.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = match &cli.command {
        Command::Present(c) => ("present", c),
        Command::Delta(c) => ("delta", c),
        Command::Bracket(c) => ("bracket", c),
        Command::Homology(c) => ("homology", c),
        Command::Verify(c) => ("verify", c),
        Command::Compare(c) => ("compare", c),
    };
    if let Some(j) = common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(name, common) {
        Ok(report) => {
            match common.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
