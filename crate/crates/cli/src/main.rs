use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use delsarte_core::report::{analyze_quotient, batch_run, paper_examples, BatchConfig, QuotientSpec};
use delsarte_core::Error;

#[derive(Parser)]
#[command(name = "delsarte", version, about = "Invariants of Delsarte surfaces from a finite quotient of Z^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for one quotient.
    Analyze(AnalyzeArgs),
    /// Re-run the published examples and compare exactly.
    PaperExamples {
        #[arg(long)]
        json: bool,
    },
    /// Random quotients `diag(d) * M'` with unimodular `M'`, written as JSON lines.
    Batch(BatchArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("quotient").required(true)
    .args(["matrix", "fermat", "diagonal", "cyclic", "exponent"])))]
struct AnalyzeArgs {
    /// Kernel matrix, e.g. "diag(2,9,9)*[[-4,2,1],[-3,1,0],[1,0,1]]".
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long)]
    fermat: Option<u64>,
    /// m1,m2,m3
    #[arg(long)]
    diagonal: Option<String>,
    /// m:w0,w1,w2,w3
    #[arg(long)]
    cyclic: Option<String>,
    /// 4x4 exponent matrix of the defining polynomial.
    #[arg(long)]
    exponent: Option<String>,
    #[arg(long)]
    json: bool,
    /// Include the bound for each of the 24 index orders.
    #[arg(long)]
    all_permutation_bounds: bool,
}

#[derive(Args)]
struct BatchArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    count: usize,
    /// d1,d2,d3
    #[arg(long, default_value = "1,1,1")]
    diag: String,
    #[arg(long, default_value_t = 3)]
    bound: i64,
    #[arg(long)]
    out: PathBuf,
}

fn spec(a: &AnalyzeArgs) -> Result<QuotientSpec, Error> {
    if let Some(s) = &a.matrix {
        Ok(QuotientSpec::Matrix(s.clone()))
    } else if let Some(m) = a.fermat {
        Ok(QuotientSpec::Fermat(m))
    } else if let Some(s) = &a.diagonal {
        QuotientSpec::parse_diagonal(s)
    } else if let Some(s) = &a.cyclic {
        QuotientSpec::parse_cyclic(s)
    } else if let Some(s) = &a.exponent {
        Ok(QuotientSpec::Exponent(s.clone()))
    } else {
        unreachable!("clap requires one quotient argument")
    }
}

fn analyze(a: &AnalyzeArgs) -> Result<(), Error> {
    let q = spec(a)?.build()?;
    let r = analyze_quotient(&q, a.all_permutation_bounds)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("json"));
    } else {
        println!("{r}");
        for b in &r.bounds.all_permutations {
            println!("  {:?} layers {:?} order {}", b.permutation, b.bound_layers, b.product());
        }
    }
    Ok(())
}

fn batch(a: &BatchArgs) -> Result<i32, Error> {
    let diag = match QuotientSpec::parse_diagonal(&a.diag)? {
        QuotientSpec::Diagonal(d) => d,
        _ => unreachable!(),
    };
    let config = BatchConfig { seed: a.seed, count: a.count, diag, bound: a.bound, out: a.out.clone() };
    let s = batch_run(&config)?;
    println!("{}", serde_json::to_string(&s).expect("json"));
    Ok(if s.failures.is_empty() { 0 } else { 4 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a).map(|_| 0),
        Command::PaperExamples { json } => {
            let r = paper_examples();
            if *json {
                println!("{}", serde_json::to_string_pretty(&r).expect("json"));
            } else {
                println!("{r}");
            }
            Ok(if r.passed { 0 } else { 3 })
        }
        Command::Batch(a) => batch(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
