use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use convex_chroma::cli::{self, Construction, ExportFormat, Method, RunConfig};
use convex_chroma::constructions::RandomSpec;
use convex_chroma::graph::Caps;
use convex_chroma::{Error, Family, Result};

#[derive(Parser)]
#[command(name = "convex-chroma", version, about = "Colour and clique-partition families of convex translates and homothets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family from a named construction.
    Generate {
        #[arg(value_enum)]
        construction: ConstructionName,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// square, disk, triangle, cube:<n>, box:<s1,..> or inline JSON
        #[arg(long, default_value = "square")]
        body: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value = "0,5")]
        window: String,
        #[arg(long, default_value = "1,1")]
        scales: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Colour a family and check the bound.
    Color(Analysis),
    /// Partition a family into cliques and check the bound.
    Partition(Analysis),
    /// Run every applicable algorithm and oracle and check the inequality chain.
    Verify(Common),
    /// Write the intersection graph, a picture or the invariants.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        /// dimacs, svg or csv
        #[arg(long, value_parser = str::parse::<ExportFormat>)]
        format: ExportFormat,
        /// Colouring used to fill members in SVG output.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        caps: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionName {
    Pentagon,
    PentagonDisjoint,
    Grid,
    Random,
}

#[derive(Args)]
struct Common {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Solver member caps, e.g. `omega=120,chi=50`.
    #[arg(long)]
    caps: Option<String>,
    #[arg(long, default_value_t = convex_chroma::covering::DEFAULT_SAMPLES)]
    samples: usize,
    /// Record wall time in the report.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Analysis {
    #[command(flatten)]
    common: Common,
    /// translates, homothets or symmetrized
    #[arg(long, default_value = "translates", value_parser = str::parse::<Method>)]
    method: Method,
}

fn caps(flag: Option<&str>) -> Result<Caps> {
    let caps = Caps::from_env()?;
    match flag {
        Some(text) => caps.parse_over(text),
        None => Ok(caps),
    }
}

fn read_family(path: &Path) -> Result<Family> {
    Family::from_json(&std::fs::read_to_string(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn pair(text: &str) -> Result<(f64, f64)> {
    match cli::parse_list(text)?.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err(Error::Parse(format!("expected two numbers, got `{text}`"))),
    }
}

fn config(c: &Common) -> Result<RunConfig> {
    Ok(RunConfig { seed: c.seed, caps: caps(c.caps.as_deref())?, samples: c.samples, timing: c.timing })
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Generate { construction, k, m, body, count, window, scales, seed, out } => {
            let construction = match construction {
                ConstructionName::Pentagon => Construction::Pentagon { k },
                ConstructionName::PentagonDisjoint => Construction::PentagonDisjoint { k },
                ConstructionName::Grid => Construction::Grid { body: cli::parse_body(&body)?, m },
                ConstructionName::Random => Construction::Random(RandomSpec {
                    body: cli::parse_body(&body)?,
                    count,
                    window: pair(&window)?,
                    scales: pair(&scales)?,
                    seed,
                }),
            };
            emit(out.as_deref(), &cli::cmd_generate(&construction)?.to_json())?;
            Ok(cli::EXIT_OK)
        }
        Command::Color(a) => {
            let report = cli::cmd_color(&read_family(&a.common.input)?, a.method, &config(&a.common)?)?;
            emit(a.common.out.as_deref(), &report.to_json())?;
            Ok(report.exit_code)
        }
        Command::Partition(a) => {
            let report = cli::cmd_partition(&read_family(&a.common.input)?, a.method, &config(&a.common)?)?;
            emit(a.common.out.as_deref(), &report.to_json())?;
            Ok(report.exit_code)
        }
        Command::Verify(c) => {
            let report = cli::cmd_verify(&read_family(&c.input)?, &config(&c)?)?;
            emit(c.out.as_deref(), &report.to_json())?;
            Ok(report.exit_code)
        }
        Command::Export { input, format, coloring, caps: cap_flag, out } => {
            let family = read_family(&input)?;
            let coloring = match coloring {
                Some(path) => Some(cli::parse_coloring(&std::fs::read_to_string(path)?)?),
                None => None,
            };
            let text = cli::cmd_export(&family, format, coloring.as_deref(), caps(cap_flag.as_deref())?)?;
            emit(out.as_deref(), &text)?;
            Ok(cli::EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(args) => args,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { cli::EXIT_INPUT as u8 } else { 0 });
        }
    };
    match run(args.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code_for(&err) as u8)
        }
    }
}
