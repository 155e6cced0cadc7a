use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use galois_lab::cli::{
    corpus_instances, emit_report, exit_code, outcome_of, parse_instance, run_corpus, run_suite, Format, Suite,
};
use galois_lab::finset::corpus;

#[derive(Parser)]
#[command(
    name = "galois-lab",
    version,
    about = "Checks monads, entwinings, bimonads and Galois objects on finite sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Human => Format::Human,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(clap::Args)]
struct RunOptions {
    /// Suite to run; repeatable. Defaults to the instance's list, else every suite.
    #[arg(long = "suite", value_name = "NAME", value_parser = parse_suite)]
    suites: Vec<Suite>,
    /// Base budget: the largest finite set enumerated.
    #[arg(long, env = "GALOIS_LAB_BUDGET", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=16))]
    budget: u64,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Include per-suite wall-clock times, which makes reports non-reproducible.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run suites on an instance file.
    Check {
        file: PathBuf,
        #[command(flatten)]
        options: RunOptions,
    },
    /// The built-in corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// List the built-in monoids and actions.
    List,
    /// Run suites on every non-empty built-in action.
    Check {
        #[command(flatten)]
        options: RunOptions,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool")
}

fn list() {
    let c = corpus();
    println!("monoids:");
    for m in &c.monoids {
        let kind = if m.table.is_group() { "group" } else { "monoid" };
        println!("  {:<10} order {} {kind}", m.name, m.table.order());
    }
    println!("actions:");
    for a in &c.actions {
        let kind = if a.action.is_free_transitive() {
            "free transitive"
        } else if a.action.is_trivial() {
            "trivial"
        } else if a.action.is_transitive() {
            "transitive"
        } else {
            ""
        };
        println!("  {:<22} size {} {kind}", a.name, a.action.size());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (reports, format) = match cli.command {
        Command::Corpus { command: CorpusCommand::List } => {
            list();
            return ExitCode::SUCCESS;
        }
        Command::Check { file, options } => {
            let mut spec = match parse_instance(&file, options.budget as usize) {
                Ok(spec) => spec,
                Err(err) => {
                    eprintln!("error: {}: {err}", file.display());
                    return ExitCode::from(2);
                }
            };
            if !options.suites.is_empty() {
                spec.suites = Some(options.suites.clone());
            }
            let report = pool(options.jobs).install(|| run_suite(&spec, options.timings));
            (vec![report], options.format)
        }
        Command::Corpus { command: CorpusCommand::Check { options } } => {
            let suites = (!options.suites.is_empty()).then(|| options.suites.clone());
            let instances = corpus_instances(options.budget as usize, suites);
            let reports = pool(options.jobs).install(|| run_corpus(&instances, options.timings));
            (reports, options.format)
        }
    };
    print!("{}", emit_report(&reports, format.into()));
    let outcome = outcome_of(reports.iter().map(|r| r.outcome()));
    ExitCode::from(exit_code(outcome) as u8)
}
