use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::Value;

use monact::Bounds;

mod commands;
mod load;
mod reproduce;

use load::CliError;

#[derive(Parser)]
#[command(
    name = "monact",
    version,
    about = "Decide structural properties of finite monoid acts"
)]
struct Cli {
    /// Worker threads for sweeps; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(flatten)]
    bounds: BoundArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BoundArgs {
    /// Largest act whose subacts are listed.
    #[arg(long, global = true, value_parser = positive, default_value_t = Bounds::default().max_subacts)]
    max_subacts: usize,
    /// Largest |source|·|target| for homomorphism search.
    #[arg(long, global = true, value_parser = positive, default_value_t = Bounds::default().max_homs)]
    max_homs: usize,
    /// Largest act size for enumeration; also the sweep size of `steady`.
    #[arg(long, global = true, value_parser = positive, default_value_t = Bounds::default().max_size)]
    max_size: usize,
    /// Largest act whose congruences are listed.
    #[arg(long, global = true, value_parser = positive, default_value_t = Bounds::default().max_congruences)]
    max_congruences: usize,
    /// Largest act given a canonical key.
    #[arg(long, global = true, value_parser = positive, default_value_t = Bounds::default().max_canonical)]
    max_canonical: usize,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_subacts: self.max_subacts,
            max_homs: self.max_homs,
            max_size: self.max_size,
            max_congruences: self.max_congruences,
            max_canonical: self.max_canonical,
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a monoid or act file against the axioms.
    #[command(group(ArgGroup::new("input").required(true).args(["monoid", "act"])))]
    Validate {
        #[arg(long)]
        monoid: Option<PathBuf>,
        #[arg(long)]
        act: Option<PathBuf>,
    },
    /// Split an act into its indecomposable subacts.
    Decompose {
        #[arg(long)]
        act: PathBuf,
    },
    /// Report every decided property of an act, with witnesses.
    Classify {
        #[arg(long)]
        act: PathBuf,
    },
    /// List all homomorphisms between two acts.
    Homs {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Compare Hom(C, A₁) ⊔ … ⊔ Hom(C, Aₙ) with Hom(C, A₁ ⊔ … ⊔ Aₙ).
    Psi {
        #[arg(long)]
        act: PathBuf,
        #[arg(long = "summand", required = true)]
        summands: Vec<PathBuf>,
    },
    /// Search for connected acts that are not cyclic, up to --max-size.
    Steady {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long)]
        pointed: bool,
        /// Write each counterexample as an act file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write every act of one size, up to isomorphism, into a directory.
    Enumerate {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long, value_parser = positive)]
        size: usize,
        #[arg(long)]
        pointed: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rerun the worked example and compare with the stored expectations.
    ReproducePaper {
        /// Expectations to use instead of the built-in file.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
}

fn setup_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    if threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            log::warn!("could not size thread pool: {e}");
        }
    }
    #[cfg(not(feature = "parallel"))]
    if threads > 1 {
        log::warn!("built without parallel support; running sequentially");
    }
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    let bounds = cli.bounds.bounds();
    match &cli.command {
        Command::Validate { monoid, act } => commands::validate(monoid.as_deref(), act.as_deref()),
        Command::Decompose { act } => commands::decompose(act),
        Command::Classify { act } => commands::classify(act, &bounds),
        Command::Homs { source, target } => commands::homs(source, target, &bounds),
        Command::Psi { act, summands } => commands::psi(act, summands, &bounds),
        Command::Steady {
            monoid,
            pointed,
            out,
        } => commands::steady(monoid, *pointed, out.as_deref(), &bounds),
        Command::Enumerate {
            monoid,
            size,
            pointed,
            out,
        } => commands::enumerate(monoid, *size, *pointed, out, &bounds),
        Command::ReproducePaper { expected } => reproduce::run(expected.as_deref(), &bounds),
    }
}

fn emit(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    setup_threads(cli.threads);
    let bounds = serde_json::to_value(cli.bounds.bounds()).expect("bounds serialize");
    match run(&cli) {
        Ok(mut value) => {
            if let Value::Object(map) = &mut value {
                map.insert("bounds".into(), bounds);
            }
            emit(&value);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (code, mut value) = e.report();
            if let Value::Object(map) = &mut value {
                map.entry("bounds").or_insert(bounds);
            }
            log::error!("{}", value["message"].as_str().unwrap_or("failed"));
            emit(&value);
            ExitCode::from(code)
        }
    }
}
