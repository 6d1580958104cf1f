use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thetanf::config::DEFAULT_PRECISION;
use thetanf::emit::{dim_bound_view, field_view, independence_view, table, Int};
use thetanf::thetanf_core::modular::dim_lower_bound;
use thetanf::thetanf_core::{BigInt, DimBoundMode, FieldRecord, Polynomial};
use thetanf::{
    analyze_corpus, analyze_field, emit_reports, group_and_report, load_corpus, render, Independence,
    OutputFormat, PipelineError, Result, RunConfig,
};

#[derive(Debug, Parser)]
#[command(name = "thetanf", version, about = "Theta series of trace-zero forms of totally real number fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyse every field of a corpus and report per field and per discriminant.
    Analyze {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Write report.json or report.txt into this directory instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Linear independence of the theta series within each discriminant group.
    Independence {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Pairs of fields sharing their smallest represented prime or minimum.
    Collisions {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Lower bound for the dimension of the weight-2 newform space of level 2d.
    Dimbound {
        #[arg(long)]
        disc: u64,
        #[arg(long, value_enum, default_value_t = Mode::Paper)]
        mode: Mode,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
    /// Theta series of a single field given by its defining polynomial.
    Theta {
        /// Coefficients, constant term first, e.g. "16,5,-9,-2,1".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u64,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Paper,
    Exact,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// JSON-Lines corpus.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u64,
    #[arg(long, default_value = "text")]
    format: OutputFormat,
    /// Keep only records tagged with this Galois group.
    #[arg(long)]
    galois: Option<String>,
    /// Analyse fields with non-fundamental discriminant, flagging them.
    #[arg(long)]
    allow_nonfundamental: bool,
    /// Analyse fields with gcd(n, d) > 1, flagging them.
    #[arg(long)]
    allow_noncoprime: bool,
    #[arg(long, default_value_t = 2)]
    min_degree: usize,
    #[arg(long, default_value_t = 7)]
    max_degree: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

impl CorpusArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            precision: self.precision,
            degrees: self.min_degree..=self.max_degree,
            require_fundamental: !self.allow_nonfundamental,
            require_coprime: !self.allow_noncoprime,
            galois: self.galois.clone(),
            format: self.format,
            threads: self.threads,
            ..RunConfig::default()
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Analyze { corpus, out } => {
            let config = corpus.config();
            config.validate()?;
            let records = load_corpus(&corpus.input)?;
            let analysis = analyze_corpus(&records, &config)?;
            let groups = group_and_report(&analysis.results, &config);
            match out {
                Some(dir) => {
                    let path = emit_reports(&analysis, &groups, &config, &dir)?;
                    Ok(format!("wrote {}\n", path.display()))
                }
                None => Ok(render(&analysis, &groups, &config)),
            }
        }
        Command::Independence { corpus } => {
            let config = corpus.config();
            config.validate()?;
            let analysis = analyze_corpus(&load_corpus(&corpus.input)?, &config)?;
            let groups = group_and_report(&analysis.results, &config);
            if config.format == OutputFormat::Json {
                let v: Vec<_> = groups
                    .iter()
                    .map(|g| {
                        serde_json::json!({
                            "disc": Int(g.disc.clone()),
                            "fields": g.labels,
                            "independence": independence_view(&g.independence, g.len()),
                        })
                    })
                    .collect();
                return Ok(json(&serde_json::json!({ "schema": 1, "groups": v })));
            }
            let rows: Vec<Vec<String>> = groups
                .iter()
                .map(|g| {
                    let verdict = match g.independence {
                        Independence::IndependentAt { precision } => format!("independent_at({precision})"),
                        Independence::Undetermined { rank, precision } => {
                            format!("undetermined(rank {rank}, B {precision})")
                        }
                    };
                    vec![g.disc.to_string(), g.len().to_string(), g.rank.to_string(), verdict]
                })
                .collect();
            Ok(table(&["d", "fields", "rank", "verdict"], &rows))
        }
        Command::Collisions { corpus } => {
            let config = corpus.config();
            config.validate()?;
            let analysis = analyze_corpus(&load_corpus(&corpus.input)?, &config)?;
            let groups = group_and_report(&analysis.results, &config);
            let mut found = Vec::new();
            for g in &groups {
                for c in &g.collisions {
                    found.push((g.disc.clone(), g.labels[c.a].clone(), g.labels[c.b].clone(), c.shared_prime, c.shared_minimum));
                }
            }
            if config.format == OutputFormat::Json {
                let v: Vec<_> = found
                    .iter()
                    .map(|(d, a, b, p, m)| {
                        serde_json::json!({"disc": Int(d.clone()), "a": a, "b": b, "shared_prime": p, "shared_minimum": m})
                    })
                    .collect();
                return Ok(json(&serde_json::json!({ "schema": 1, "collisions": v })));
            }
            let opt = |x: &Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
            let rows: Vec<Vec<String>> = found
                .iter()
                .map(|(d, a, b, p, m)| vec![d.to_string(), a.clone(), b.clone(), opt(p), opt(m)])
                .collect();
            Ok(table(&["d", "field a", "field b", "shared prime", "shared minimum"], &rows))
        }
        Command::Dimbound { disc, mode, format } => {
            let mode = match mode {
                Mode::Paper => DimBoundMode::Paper,
                Mode::Exact => DimBoundMode::ExactTerms,
            };
            let b = dim_lower_bound(disc, mode)
                .map_err(|source| PipelineError::Rejected { label: format!("d = {disc}"), reasons: source.to_string() })?;
            let v = dim_bound_view(&b);
            if format == OutputFormat::Json {
                return Ok(json(&v));
            }
            let mut s = String::new();
            writeln!(s, "d            {}", v.d).unwrap();
            writeln!(s, "level N      {}", v.level).unwrap();
            writeln!(s, "mode         {}{}", v.mode, if v.heuristic { " (heuristic)" } else { "" }).unwrap();
            writeln!(s, "main term    {} ~ {:.3}", v.main_term, b.main_term_f64()).unwrap();
            writeln!(s, "lambda prod  {}", b.lambda_product).unwrap();
            writeln!(s, "x^2+1 sols   {}", v.sol_count).unwrap();
            writeln!(s, "ceil sqrt N  {}", v.sqrt_bound).unwrap();
            writeln!(s, "lower bound  {}", v.lower_bound).unwrap();
            Ok(s)
        }
        Command::Theta { poly, precision, format } => {
            let coeffs = poly
                .split(',')
                .map(|t| t.trim().parse::<BigInt>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| PipelineError::Parse { line: 1, reason: format!("--poly: {e}") })?;
            let p = Polynomial::new(coeffs).map_err(|e| PipelineError::Parse { line: 1, reason: format!("--poly: {e}") })?;
            let config = RunConfig {
                precision,
                require_fundamental: false,
                require_coprime: false,
                ..RunConfig::default()
            };
            config.validate()?;
            let r = analyze_field(&FieldRecord::new(p), &config)?;
            if format == OutputFormat::Json {
                return Ok(json(&field_view(&r)));
            }
            let mut s = String::new();
            writeln!(s, "polynomial  {}", r.record().poly).unwrap();
            writeln!(s, "disc        {}", r.disc()).unwrap();
            writeln!(s, "gram        {}", thetanf::emit::gram_text(r.form.gram())).unwrap();
            writeln!(s, "det         {}", r.invariants.det).unwrap();
            writeln!(s, "level       {}", r.invariants.level).unwrap();
            writeln!(s, "minimum     {}", r.invariants.minimum).unwrap();
            writeln!(
                s,
                "modular     weight {}, level {}, character ({}/.)",
                r.metadata.weight, r.metadata.level, r.metadata.character_disc
            )
            .unwrap();
            writeln!(s, "theta       {}", r.theta).unwrap();
            let flags: Vec<_> = r.checks.iter().filter(|c| c.outcome != thetanf::Outcome::Pass).collect();
            for c in flags {
                writeln!(s, "flag        {}: {}", c.name, c.detail).unwrap();
            }
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
