use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use idxlab_cli::commands::{self, load, CliError};
use idxlab_cli::{OutputMode, Report, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "idxlab",
    version,
    about = "Indices and local multiplicities over finite fields"
)]
struct Cli {
    /// Largest closed-point degree to enumerate.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Number of random parameter ideals to sample.
    #[arg(long, global = true, default_value_t = RunConfig::default().trials)]
    trials: u32,
    #[arg(long, global = true, default_value_t = RunConfig::default().seed)]
    seed: u64,
    /// Initial truncation bound for local lengths.
    #[arg(long, global = true, default_value_t = RunConfig::default().truncation)]
    truncation: u32,
    /// Largest power of the ideal in Hilbert-Samuel tables.
    #[arg(long, global = true, default_value_t = RunConfig::default().hs_max)]
    hs_max: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Json)]
    out: OutputMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe the field with p^k elements.
    Field {
        p: u64,
        #[arg(default_value_t = 1)]
        k: u32,
    },
    /// Multiplicity at a point of a variety, or at the origin of a local ring.
    Mult {
        file: PathBuf,
        #[arg(long)]
        point: Option<String>,
        /// Coordinates live in the degree-`ext` extension of the base field.
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Hilbert-Samuel table of an ideal (default: the maximal ideal).
    Hs {
        file: PathBuf,
        /// Comma separated generators.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// gcd of e(m) and e(Q) over sampled and curated parameter ideals.
    Gamma {
        file: PathBuf,
        /// Ideals separated by ';', generators by ','.
        #[arg(long)]
        curated: Option<String>,
    },
    /// Colengths of all principal ideals up to a degree bound.
    Scan {
        file: PathBuf,
        #[arg(long)]
        bound: u32,
    },
    /// Counts of rational and closed points by degree.
    Census { file: PathBuf },
    /// Index and regular index estimates with minimal degrees.
    Index { file: PathBuf },
    /// Compare the index of a projective variety with multiplicities at the cone vertex.
    Cone {
        file: PathBuf,
        #[arg(long)]
        declared_degree: Option<u64>,
        #[arg(long)]
        curated: Option<String>,
    },
    /// Resolve a plane curve germ by blowing up.
    Resolve { file: PathBuf },
    /// Special fiber of a plane model, or the data at one point.
    Model {
        file: PathBuf,
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Degree of the lift of a fiber point cut out by a germ.
    Lift {
        file: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long)]
        germ: String,
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Divide x^p + (1-x)^p - 1 by its cyclotomic-type factors.
    Fermat { p: u64 },
    /// Run the built-in verification suite.
    Suite,
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<Report, CliError> {
    match &cli.command {
        Command::Field { p, k } => commands::field(*p, *k),
        Command::Mult { file, point, ext } => {
            commands::mult(load(file)?, point.as_deref(), *ext, cfg)
        }
        Command::Hs { file, ideal } => commands::hs(load(file)?, ideal.as_deref(), cfg),
        Command::Gamma { file, curated } => commands::gamma(load(file)?, curated.as_deref(), cfg),
        Command::Scan { file, bound } => commands::scan(load(file)?, *bound, cfg),
        Command::Census { file } => commands::census(load(file)?, cfg),
        Command::Index { file } => commands::index(load(file)?, cfg),
        Command::Cone {
            file,
            declared_degree,
            curated,
        } => commands::cone(load(file)?, *declared_degree, curated.as_deref(), cfg),
        Command::Resolve { file } => commands::resolve(load(file)?, cfg),
        Command::Model { file, point, ext } => {
            commands::model(load(file)?, point.as_deref(), *ext, cfg)
        }
        Command::Lift {
            file,
            point,
            germ,
            ext,
        } => commands::lift(load(file)?, point, germ, *ext),
        Command::Fermat { p } => commands::fermat(*p),
        Command::Suite => commands::suite(cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        seed: cli.seed,
        max_degree: cli.max_degree,
        trials: cli.trials,
        truncation: cli.truncation,
        hs_max: cli.hs_max,
        out: cli.out,
    };
    let outcome = cfg
        .validate()
        .map_err(CliError::Usage)
        .and_then(|()| run(&cli, &cfg));
    match outcome {
        Ok(report) => {
            print!("{}", report.render(cfg.out));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            print!("{}", e.to_json());
            eprintln!("idxlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
