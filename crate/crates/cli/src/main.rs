use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tamearith::acceptance;
use tamearith::commands::{self, Options};
use tamearith::corpus::Corpus;
use tamearith::load::InputError;
use tamearith::report::Report;
use tamearith::suites;

#[derive(Parser)]
#[command(name = "tamearith", version, about = "Arithmetic classes of metrised Z[G]-complexes and tame Galois fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for generated test data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance for archimedean comparisons.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive)]
    tol: f64,
    /// Working precision of the field embeddings.
    #[arg(long, global = true, default_value_t = 53)]
    precision_bits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Character table, Frobenius-Schur indicators and symplectic generators.
    Chars { file: PathBuf },
    /// Arithmetic class of a metrised perfect complex.
    ClassComplex { file: PathBuf },
    /// Resolvents, signs, Pfaffians and class representatives of a field.
    FieldReport { file: PathBuf },
    /// Run property suites against the corpus.
    Verify {
        /// groupchar, cyclo, classrep, metcomplex, tamefield, all or acceptance.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = Options { seed: cli.seed, tol: cli.tol, precision_bits: cli.precision_bits };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Chars { file } => commands::chars(file, &o).map(|r| (r, Vec::new())),
        Command::ClassComplex { file } => commands::class_complex(file, &o).map(|r| (r, Vec::new())),
        Command::FieldReport { file } => commands::field_report(file, &o).map(|r| (r, Vec::new())),
        Command::Verify { suite } => verify(suite, &o),
    };
    let (report, parts) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = if cli.timing { report.with_timing(start.elapsed(), &parts) } else { report };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        if let Some(f) = &report.first_failure {
            eprintln!("verification failed: {}: {}", f.name, f.detail);
        }
        ExitCode::from(1)
    }
}

type Timed = (Report, Vec<(String, std::time::Duration)>);

fn verify(suite: &str, o: &Options) -> Result<Timed, InputError> {
    let corpus = Corpus::from_env()?;
    let command = json!({ "name": "verify", "suite": suite, "corpus": corpus.source, "seed": o.seed, "tol": o.tol, "precision_bits": o.precision_bits });
    if suite == "acceptance" {
        let fields = suites::load_fields(&corpus, o)?;
        let criteria = acceptance::run(&corpus, &fields, o);
        let checks = criteria.iter().map(|c| c.check()).collect();
        let parts = criteria.iter().map(|c| (format!("criterion_{}", c.number), c.elapsed)).collect();
        let items = json!({ "criteria": criteria.iter().map(|c| json!({ "number": c.number, "title": c.title, "passed": c.passed() })).collect::<Vec<_>>() });
        return Ok((Report::new(command, items, checks), parts));
    }
    let runs = suites::verify(suite, &corpus, o)?;
    let items = json!({
        "groups": corpus.groups.iter().map(|(n, _)| n).collect::<Vec<_>>(),
        "fields": corpus.fields.iter().map(|e| &e.file.name).collect::<Vec<_>>(),
        "suites": runs.iter().map(|r| json!({
            "name": r.name,
            "checks": r.checks.len(),
            "passed": r.checks.iter().all(|c| c.passed),
        })).collect::<Vec<_>>(),
    });
    let parts = runs.iter().map(|r| (r.name.to_string(), r.elapsed)).collect();
    let checks = runs.into_iter().flat_map(|r| r.checks).collect();
    Ok((Report::new(command, items, checks), parts))
}
