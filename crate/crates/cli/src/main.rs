use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rootdata::finite_lie::{congruence_table, RowStatus};
use rootdata::formal_character::canonicalize_bicharacter;
use rootdata::frobenius::{
    frobenius_torus_rank, relation_lattices, torsion_quotient_order, torus_character_lattice, weil_conditions,
};
use rootdata::galois_forms::quasi_split_descriptor;
use rootdata::io::{self, ActionDoc, BiCharacterDoc, DatumDoc, EigenSystemDoc, TypesDoc, SCHEMA_VERSION};
use rootdata::reconstruction::{enumerate_root_data, Caps};
use rootdata::root_datum::hypothesis_a;
use rootdata::Error;

#[derive(Parser)]
#[command(name = "rootdata", version, about = "Root data, formal characters and finite groups of Lie type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the root datum axioms.
    ValidateDatum { file: PathBuf },
    /// Enumerate embedded root data compatible with a formal bi-character.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Rank and relation lattices of a Frobenius torus.
    Frobenius { file: PathBuf },
    /// Predicted composition factors of Lie type for a range of primes.
    Predict {
        file: PathBuf,
        /// Inclusive range `a..b`.
        #[arg(long, value_parser = parse_range, default_value = "5..100")]
        primes: (u64, u64),
    },
    /// Whether a multiset of simple types satisfies Hypothesis A.
    CheckHypA { file: PathBuf },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

enum Failure {
    Invalid(String),
    Parse(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Parse(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded(_) | Error::SizeBound { .. } => Failure::Cap(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

/// A rendered report plus the exit code it implies.
struct Outcome {
    json: Vec<Value>,
    text: String,
    code: u8,
}

fn read<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    io::parse(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn validate_datum(file: &Path) -> Result<Outcome, Failure> {
    let doc: DatumDoc = read(file)?;
    let d = doc.datum()?;
    let report = d.validate();
    let valid = report.is_valid();
    let mut text = format!("valid: {valid}\n");
    for v in &report.violations {
        text.push_str(&format!("{}: {}\n", serde_json::to_value(v.kind).unwrap().as_str().unwrap_or(""), v.detail));
    }
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "valid": valid,
        "rank": d.rank,
        "roots": d.roots.len(),
        "violations": report.violations,
    });
    Ok(Outcome { json: vec![json], text, code: if valid { 0 } else { 1 } })
}

fn enumerate(file: &Path, max_nodes: Option<u64>) -> Result<Outcome, Failure> {
    let doc: BiCharacterDoc = read(file)?;
    let input = doc.bicharacter()?;
    let canonicalized = !input.is_canonical();
    let b = if canonicalized { canonicalize_bicharacter(&input)? } else { input };
    let mut caps = Caps::default();
    if let Some(n) = max_nodes {
        caps.max_nodes = n;
    }
    let report = enumerate_root_data(&b, &caps)?;
    let mut json = io::candidate_report_json(&report);
    json["canonicalized"] = json!(canonicalized);
    let mut text = format!(
        "candidates: {}\nform: {}\nuniqueness: {}\n",
        report.candidates.len(),
        json["form_source"].as_str().unwrap_or(""),
        json["uniqueness_verdict"].as_str().unwrap_or("")
    );
    for (i, c) in report.candidates.iter().enumerate() {
        let types: Vec<String> = c.types.factors.iter().map(|t| t.to_string()).collect();
        text.push_str(&format!(
            "  [{i}] roots {} types {{{}}} central rank {} hypothesis_a {}\n",
            c.datum.roots.len(),
            types.join(", "),
            c.types.central_rank,
            c.hypothesis_a()
        ));
    }
    Ok(Outcome { json: vec![json], text, code: 0 })
}

fn frobenius(file: &Path) -> Result<Outcome, Failure> {
    let doc: EigenSystemDoc = read(file)?;
    let sys = doc.system()?;
    let lat = relation_lattices(&sys);
    let rank = frobenius_torus_rank(&sys);
    let chars = torus_character_lattice(&sys);
    let mut json = json!({
        "schema_version": SCHEMA_VERSION,
        "k": sys.k(),
        "rank": rank,
        "exact_relations": io::vecs_json(lat.exact.basis()),
        "torsion_relations": io::vecs_json(lat.torsion.basis()),
        "torsion_quotient_order": io::int_json(&torsion_quotient_order(&lat)),
        "character_lattice": { "rank": chars.rank, "weights": io::vecs_json(&chars.weights) },
    });
    let mut text =
        format!("rank: {rank}\nexact relations: {}\ntorsion relations: {}\n", lat.exact.rank(), lat.torsion.rank());
    let mut code = 0;
    if let Some(ctx) = doc.weil() {
        let reports = weil_conditions(&sys, &ctx)?;
        let passed = reports.iter().all(|r| r.passed());
        text.push_str(&format!("weil conditions: {}\n", if passed { "pass" } else { "fail" }));
        json["weil"] = json!({ "p": ctx.p, "s": ctx.s, "passed": passed, "eigenvalues": reports });
        if !passed {
            code = 1;
        }
    }
    Ok(Outcome { json: vec![json], text, code })
}

fn predict(file: &Path, (lo, hi): (u64, u64)) -> Result<Outcome, Failure> {
    let doc: ActionDoc = read(file)?;
    let desc = quasi_split_descriptor(&doc.action()?)?;
    let rows = congruence_table(&desc, lo, hi);
    let width = rows.iter().map(|r| r.ell.to_string().len()).max().unwrap_or(1);
    let mut text = String::new();
    for r in &rows {
        let cell = match r.status {
            RowStatus::Ok => r.factors.names().join(" "),
            RowStatus::Ramified => "ramified".to_string(),
            RowStatus::SmallPrime => "small prime".to_string(),
        };
        text.push_str(&format!("{:>width$}  {cell}\n", r.ell));
    }
    Ok(Outcome { json: rows.iter().map(io::congruence_row_json).collect(), text, code: 0 })
}

fn check_hyp_a(file: &Path) -> Result<Outcome, Failure> {
    let doc: TypesDoc = read(file)?;
    let types = doc.types()?;
    let verdict = hypothesis_a(&types);
    let json = json!({ "schema_version": SCHEMA_VERSION, "types": types, "hypothesis_a": verdict });
    Ok(Outcome { json: vec![json], text: format!("hypothesis_a: {verdict}\n"), code: 0 })
}

fn render(out: &Outcome, format: Format, lines: bool) -> String {
    match format {
        Format::Text => out.text.clone(),
        Format::Json if lines => out.json.iter().map(|v| format!("{v}\n")).collect(),
        Format::Json => out.json.iter().map(|v| format!("{}\n", serde_json::to_string_pretty(v).unwrap())).collect(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let lines = matches!(cli.command, Command::Predict { .. });
    let result = match &cli.command {
        Command::ValidateDatum { file } => validate_datum(file),
        Command::Enumerate { file, max_nodes } => enumerate(file, *max_nodes),
        Command::Frobenius { file } => frobenius(file),
        Command::Predict { file, primes } => predict(file, *primes),
        Command::CheckHypA { file } => check_hyp_a(file),
    };
    match result {
        Ok(out) => {
            let body = render(&out, cli.format, lines);
            let written = match &cli.output {
                Some(path) => fs::write(path, body),
                None => std::io::stdout().lock().write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
