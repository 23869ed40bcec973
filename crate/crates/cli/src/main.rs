use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rootsub_cli::commands::{self, Options};
use rootsub_cli::input::{parse_rational, parse_term, parse_vector};
use rootsub_cli::{verify, CliError, InputDescription, Report};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "rootsub",
    version,
    about = "Demazure roots and root subgroups of affine toric and spherical varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input file, or `-` for standard input.
    input: String,
    /// Bound of the search box; overrides `box:` in the input.
    #[arg(long = "box", value_name = "N")]
    box_bound: Option<u32>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Dual cone and facets of a cone.
    Dual(Common),
    /// Demazure roots inside the search box.
    Roots {
        #[command(flatten)]
        common: Common,
        /// Keep only roots dominant for every coroot in the input.
        #[arg(long)]
        filter_dominant: bool,
    },
    /// Classify root subgroups of a rank-one or horospherical input.
    Classify(Common),
    /// Apply the derivation of a root to an element.
    Act {
        #[command(flatten)]
        common: Common,
        /// Root, as space-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        root: Option<String>,
        /// Term `coefficient exponents...`; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        element: Vec<String>,
        /// Parameter of the exponential.
        #[arg(long, allow_hyphen_values = true)]
        parameter: Option<String>,
    },
    /// Run the built-in self-checks.
    Verify {
        #[arg(long)]
        json: bool,
    },
}

fn read_input(path: &str) -> Result<InputDescription, CliError> {
    let io = |e: std::io::Error| CliError::Io { path: path.to_string(), message: e.to_string() };
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(io)?
    };
    InputDescription::parse(&text)
}

fn emit<T: Serialize>(report: Report<T>, json: bool) {
    print!("{}", if json { report.to_json() } else { report.to_text() });
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Dual(c) => {
            emit(commands::dual(&read_input(&c.input)?)?, c.json);
        }
        Command::Roots { common: c, filter_dominant } => {
            let opts = Options { box_bound: c.box_bound, filter_dominant };
            emit(commands::roots(&read_input(&c.input)?, opts)?, c.json);
        }
        Command::Classify(c) => {
            let opts = Options { box_bound: c.box_bound, filter_dominant: false };
            emit(commands::classify(&read_input(&c.input)?, opts)?, c.json);
        }
        Command::Act { common: c, root, element, parameter } => {
            let mut input = read_input(&c.input)?;
            if let Some(r) = root {
                input.root = Some(parse_vector(&r, Some(input.rank), "--root")?);
            }
            if !element.is_empty() {
                let terms =
                    element.iter().map(|t| parse_term(t, Some(input.rank), "--element")).collect::<Result<_, _>>()?;
                input.element = Some(terms);
            }
            if let Some(p) = parameter {
                input.parameter = Some(parse_rational(&p).map_err(|e| CliError::Parse(format!("--parameter: {e}")))?);
            }
            emit(commands::act(&input)?, c.json);
        }
        Command::Verify { json } => {
            let report = verify::run();
            print!("{}", if json { report.to_json() } else { report.to_text() });
            if report.summary.failed > 0 {
                return Err(CliError::VerifyFailed { failed: report.summary.failed });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rootsub: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
