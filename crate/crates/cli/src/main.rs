//! `msdecomp`: Minkowski-sum decomposition of multisets and factorization of
//! polynomials with non-negative coefficients.
//!
//! Exit codes: 0 when a decomposition/factorization is exhibited (including
//! trivial shifts), 1 when the input is (probably) irreducible, 2 on input
//! errors.

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, bail};
use clap::{Args, Parser, Subcommand, ValueEnum};

use msdecomp_cli::harness::{
    BenchParams, BenchRecord, parse_structure, run_bench, to_json_record, write_csv, write_table,
};
use msdecomp_cli::report::{
    DecomposeJson, FactorJson, ScoreJson, factor_parts, outcome_to_json, render_outcome,
    render_product, render_score,
};
use msdecomp_core::{
    CandidateSolution, DecompositionResult, DivisorAttempt, Multiset, SearchConfig,
    SparsePolynomial, decompose, exhaustive_decompose, factor_completely, generate_nth,
    is_provably_irreducible, iterated_search, n_poly_fact, parse_polynomial, read_multisets, score,
    write_factor_sidecar, write_instances,
};

#[derive(Parser)]
#[command(
    name = "msdecomp",
    version,
    about = "Decompose multisets of non-negative integers under the Minkowski sum,\n\
             and factor polynomials with non-negative integer coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a multiset as a Minkowski sum of two non-trivial parts
    Decompose(DecomposeArgs),
    /// Factor a polynomial with non-negative integer coefficients
    Factor(FactorArgs),
    /// Generate reducible benchmark instances with known factors
    Gen(GenArgs),
    /// Run the benchmark harness over generated instances
    Bench(BenchArgs),
    /// Score a candidate factor against a target multiset (debug surface)
    Score(ScoreArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    /// Multiset as text, e.g. `0,1,2,2,3` or `(0:1),(2:2)`
    #[arg(long, group = "source", required = true)]
    elements: Option<String>,
    /// File with one multiset (lines starting with `#` are skipped)
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// Pin the factor cardinality instead of enumerating divisors
    #[arg(long)]
    cardinality: Option<u64>,
    /// Iteration budget per cardinality
    #[arg(long = "max-iter", default_value_t = 100)]
    max_iter: u64,
    #[arg(long, env = "MSDECOMP_SEED", default_value_t = 0)]
    seed: u64,
    /// Scan neighborhoods in shuffled order instead of ascending order
    #[arg(long)]
    random_neighbor_order: bool,
    /// Decide exactly by enumerating all candidates (small inputs only)
    #[arg(long)]
    exhaustive: bool,
    /// Cardinality cap for --exhaustive
    #[arg(long, default_value_t = msdecomp_core::DEFAULT_BRUTE_FORCE_LIMIT)]
    limit: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FactorArgs {
    /// Polynomial, e.g. `1 + x + x^2` or `2x^3+x`
    #[arg(long)]
    poly: String,
    /// Split recursively into (heuristically) irreducible parts
    #[arg(long)]
    complete: bool,
    #[arg(long = "max-iter", default_value_t = 100)]
    max_iter: u64,
    #[arg(long, env = "MSDECOMP_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    random_neighbor_order: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Factor cardinalities, e.g. `5,5` or `2^10`
    #[arg(long)]
    structure: String,
    /// Elements are drawn uniformly from [0, range], inclusive
    #[arg(long)]
    range: u64,
    #[arg(long)]
    count: u64,
    #[arg(long, env = "MSDECOMP_SEED", default_value_t = 0)]
    seed: u64,
    /// Instance file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the ground-truth factors to this sidecar file
    #[arg(long)]
    factors_out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Structure per row; repeatable, e.g. `--structure 5,5 --structure 2^10`
    #[arg(long, required = true)]
    structure: Vec<String>,
    #[arg(long)]
    range: u64,
    /// Instances per structure
    #[arg(long)]
    count: u64,
    #[arg(long = "max-iter", default_value_t = 100)]
    max_iter: u64,
    #[arg(long, env = "MSDECOMP_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    random_neighbor_order: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Table,
    Json,
}

#[derive(Args)]
struct ScoreArgs {
    /// Target multiset
    #[arg(long)]
    elements: String,
    /// Candidate factor (must contain 0, be contained in the target, and
    /// have a cardinality of at least 2 dividing the target's)
    #[arg(long)]
    candidate: String,
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Decompose(args) => cmd_decompose(args),
        Command::Factor(args) => cmd_factor(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Score(args) => cmd_score(args),
    }
}

fn read_target(args: &DecomposeArgs) -> anyhow::Result<Multiset> {
    if let Some(text) = &args.elements {
        return text.parse::<Multiset>().context("invalid --elements");
    }
    let path = args.input.as_ref().expect("clap enforces one source");
    let file = fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let multisets = read_multisets(BufReader::new(file))
        .with_context(|| format!("cannot parse {}", path.display()))?;
    match multisets.len() {
        0 => bail!("{} contains no multiset", path.display()),
        1 => Ok(multisets.into_iter().next().expect("length checked")),
        n => bail!(
            "{} contains {n} multisets; decompose expects exactly one",
            path.display()
        ),
    }
}

fn cmd_decompose(args: DecomposeArgs) -> anyhow::Result<i32> {
    let target = read_target(&args)?;
    let started = Instant::now();
    let (result, mode, seed, max_iterations) = if args.exhaustive {
        let result = exhaustive_decompose(&target, args.limit)?;
        (result, "exhaustive", None, None)
    } else {
        let config = SearchConfig {
            max_iterations: args.max_iter,
            seed: args.seed,
            deterministic_neighbor_order: !args.random_neighbor_order,
        };
        let result = match args.cardinality {
            Some(m) => decompose_with_pinned_cardinality(&target, m, &config)?,
            None => decompose(&target, &config),
        };
        (result, "search", Some(args.seed), Some(args.max_iter))
    };
    let elapsed_s = started.elapsed().as_secs_f64();

    if args.json {
        let report = DecomposeJson {
            input: target.to_string(),
            cardinality: target.cardinality(),
            mode,
            elapsed_s,
            seed,
            max_iterations,
            result: outcome_to_json(&result),
        };
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        let mut out = String::new();
        render_outcome(&result, 0, &mut out);
        print!("{out}");
    }
    Ok(if result.is_reduction_witness() { 0 } else { 1 })
}

/// `--cardinality` pins `m`: one iterated search on the 0-normalized core
/// instead of the divisor enumeration.
fn decompose_with_pinned_cardinality(
    target: &Multiset,
    m: u64,
    config: &SearchConfig,
) -> anyhow::Result<DecompositionResult> {
    let (offset, core) = target.normalize();
    let inner = match iterated_search(&core, m, config)? {
        Some(success) => DecompositionResult::Found {
            factor: success.factor,
            cofactor: success.cofactor,
            divisor: m,
            iterations: success.iterations,
        },
        None => DecompositionResult::ProbablyIrreducible {
            attempts: vec![DivisorAttempt {
                divisor: m,
                iterations: config.max_iterations,
            }],
        },
    };
    Ok(if offset > 0 {
        DecompositionResult::TrivialShift {
            offset,
            core: Box::new(inner),
        }
    } else {
        inner
    })
}

fn cmd_factor(args: FactorArgs) -> anyhow::Result<i32> {
    let polynomial = parse_polynomial(&args.poly)?;
    let config = SearchConfig {
        max_iterations: args.max_iter,
        seed: args.seed,
        deterministic_neighbor_order: !args.random_neighbor_order,
    };

    let (parts, factored): (Vec<SparsePolynomial>, bool) = if args.complete {
        let parts = factor_completely(&polynomial, &config)?;
        let factored = parts.len() > 1;
        (parts, factored)
    } else {
        match n_poly_fact(&polynomial, &config)? {
            Some((a, b)) => (vec![a, b], true),
            None => (vec![polynomial.clone()], false),
        }
    };

    let reason = if factored {
        None
    } else if is_provably_irreducible(&polynomial) {
        Some(format!(
            "irreducible: {}",
            irreducible_reason_text(&polynomial)
        ))
    } else {
        Some(format!(
            "probably irreducible: no factorization found within {} iterations",
            args.max_iter
        ))
    };

    if args.json {
        let report = FactorJson {
            input: polynomial.to_string(),
            complete: args.complete,
            factored,
            reason: reason.clone(),
            factors: factor_parts(&parts),
        };
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else if factored {
        println!("{}", render_product(&parts));
        for part in &parts {
            let label = if is_provably_irreducible(part) {
                "irreducible (proved)"
            } else {
                "irreducible (heuristic)"
            };
            println!("  {part}: {label}");
        }
    } else {
        println!("{}", reason.as_deref().expect("set when not factored"));
    }
    Ok(if factored { 0 } else { 1 })
}

fn irreducible_reason_text(p: &SparsePolynomial) -> String {
    let cardinality = p.coefficient_sum().unwrap_or(u64::MAX);
    if cardinality == 1 {
        if p.degree() == 0 {
            "1 is a unit".to_string()
        } else {
            "x admits no non-trivial split".to_string()
        }
    } else if p.degree() == 0 {
        format!("the constant {} is prime", p.terms()[0].1)
    } else {
        format!("coefficient sum {cardinality} is prime")
    }
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<i32> {
    let structure = parse_structure(&args.structure)?;
    let spec = msdecomp_core::InstanceSpec::new(structure, args.range, args.seed)?;
    if spec.is_trivially_structured() {
        eprintln!(
            "warning: trivial structure {}: generated instances are not guaranteed reducible",
            spec.structure_label()
        );
    }
    if args.count == 0 {
        bail!("--count must be at least 1");
    }
    let instances = (0..args.count)
        .map(|i| generate_nth(&spec, i))
        .collect::<Result<Vec<_>, _>>()?;

    match &args.out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            write_instances(&mut file, &spec, &instances)?;
        }
        None => {
            let stdout = io::stdout();
            write_instances(&mut stdout.lock(), &spec, &instances)?;
        }
    }
    if let Some(path) = &args.factors_out {
        let mut file =
            fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        write_factor_sidecar(&mut file, &spec, &instances)?;
    }
    Ok(0)
}

fn cmd_bench(args: BenchArgs) -> anyhow::Result<i32> {
    let mut benches = Vec::new();
    for structure_text in &args.structure {
        let params = BenchParams {
            structure: parse_structure(structure_text)?,
            range: args.range,
            count: args.count,
            seed: args.seed,
            max_iterations: args.max_iter,
            deterministic_neighbor_order: !args.random_neighbor_order,
        };
        benches.push(run_bench(&params)?);
    }
    let records: Vec<BenchRecord> = benches.iter().map(|b| b.record.clone()).collect();

    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(
            fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        ),
        None => Box::new(io::stdout()),
    };
    match args.format {
        OutputFormat::Csv => write_csv(&mut out, &records)?,
        OutputFormat::Table => write_table(&mut out, &records)?,
        OutputFormat::Json => {
            let rows: Vec<_> = benches
                .iter()
                .map(|b| to_json_record(b, args.range, args.max_iter))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
        }
    }
    Ok(0)
}

fn cmd_score(args: ScoreArgs) -> anyhow::Result<i32> {
    let target: Multiset = args.elements.parse().context("invalid --elements")?;
    let candidate_elements: Multiset = args.candidate.parse().context("invalid --candidate")?;
    let candidate = CandidateSolution::new(candidate_elements, &target)
        .context("invalid candidate for this target")?;
    let outcome = score(&target, &candidate)?;

    if args.json {
        let report = ScoreJson {
            target: target.to_string(),
            candidate: candidate.elements().to_string(),
            score: outcome.score,
            max_score: target.cardinality(),
            multipliers: outcome.multipliers.clone(),
            quotient: outcome.quotient.as_ref().map(|q| q.to_string()),
        };
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!(
            "{}",
            render_score(
                target.cardinality(),
                &candidate.elements().to_string(),
                &outcome
            )
        );
    }
    Ok(0)
}
