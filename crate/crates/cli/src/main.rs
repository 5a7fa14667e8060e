use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use z2z2u::classify::{classify, weight_profile};
use z2z2u::code::{set_worker_threads, AdditiveCode};
use z2z2u::harness::{analyze, reproduce, Status};
use z2z2u::matrix_file::parse_matrix;
use z2z2u::search::{search, verify_fsd_one_weight_classification, Mode, SearchSpace, Target};
use z2z2u::weight::hamming_enumerator;
use z2z2u::{dual_brute, lee_enumerator, macwilliams, span, standard_form, Error, LeeEnumerator};

/// `println!` that ignores a closed stdout.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  2  input error (unreadable file, parse error, invalid shape, search space too large)
  3  internal verification failure
  4  assertion failure (reproduce mismatch, classification violation)";

#[derive(Parser, Debug)]
#[command(
    name = "z2z2u",
    version,
    about = "Additive codes over Z2 x (Z2 + uZ2): weights, duals, standard forms and searches",
    after_help = EXIT_CODES
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Only print failures and results.
    #[arg(long, global = true)]
    quiet: bool,

    /// Seed for random search modes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for ambient-space scans.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report: type, enumerator, dual, classification and checks.
    Analyze { path: PathBuf },
    /// Generators and Lee enumerator of the dual code.
    Dual { path: PathBuf },
    /// Binary generator matrix and parameters of the Gray image.
    Gray { path: PathBuf },
    /// Standard-form generator matrix and type.
    StandardForm { path: PathBuf },
    /// Dual weight distribution from a matrix file or an enumerator JSON file.
    Macwilliams { path: PathBuf },
    /// Weight-class flags of a code.
    Classify { path: PathBuf },
    /// Check a built-in example against its published properties.
    Reproduce {
        /// 3.6, 3.7, 3.8, 4.3a, 4.3b, 5.4, 5.5, 5.6, 5.7 or all.
        id: String,
    },
    /// Search small generator spaces for codes with a given weight structure.
    Search(SearchArgs),
}

#[derive(clap::Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = TargetArg::OneWeight)]
    target: TargetArg,

    /// Binary length, `a` or `a..b`.
    #[arg(long, default_value = "0..2", value_parser = parse_range)]
    alpha: RangeInclusive<usize>,

    /// Ring length, `b` or `a..b`.
    #[arg(long, default_value = "0..1", value_parser = parse_range)]
    beta: RangeInclusive<usize>,

    /// Generator rows per candidate.
    #[arg(long, default_value_t = 2)]
    rows: usize,

    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,

    /// Draws in the random modes.
    #[arg(long, default_value_t = 10_000)]
    budget: u64,

    /// Check that the one-weight formally self-dual codes with alpha and beta
    /// up to the upper bounds of --alpha and --beta are exactly the four
    /// known ones.
    #[arg(long)]
    verify_classification: bool,

    /// Disable the necessary-condition pruners.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    OneWeight,
    TwoWeightProjective,
    FsdOneWeight,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
    Stratified,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {a}..{b}"));
            }
            Ok(a..=b)
        }
        None => num(s).map(|a| a..=a),
    }
}

enum Failure {
    Input(String),
    Internal(String),
    Assertion(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalVerificationFailure(_) => Failure::Internal(e.to_string()),
            Error::ClassificationViolation { .. } => Failure::Assertion(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<AdditiveCode, Failure> {
    let text = read(path)?;
    let m = parse_matrix(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(span(m.shape, &m.rows)?)
}

fn print_json(v: &impl serde::Serialize) {
    outln!("{}", serde_json::to_string_pretty(v).expect("report serialises"));
}

fn enumerator_json(e: &LeeEnumerator) -> Value {
    serde_json::to_value(e).expect("enumerator serialises")
}

fn cmd_analyze(cli: &Cli, path: &Path) -> CliResult {
    let report = analyze(&load_code(path)?)?;
    if cli.json {
        print_json(&report);
    } else {
        out!("{}", report.render_text());
    }
    Ok(())
}

fn cmd_dual(cli: &Cli, path: &Path) -> CliResult {
    let code = load_code(path)?;
    let n = code.shape().big_n();
    let transformed = macwilliams(&lee_enumerator(&code), code.cardinality() as u128)?;
    let (generators, notice) = match dual_brute(&code) {
        Ok(d) => {
            let brute = lee_enumerator(&d);
            if brute != transformed {
                return Err(Failure::Internal(format!(
                    "brute-force dual enumerator {brute} differs from MacWilliams transform {transformed}"
                )));
            }
            (Some(standard_form(&d)?.to_matrix_file()), None)
        }
        Err(e @ (Error::AmbientTooLarge { .. } | Error::TooManyCodewords { .. })) => {
            (None, Some(format!("dual generators skipped ({e}); enumerator from MacWilliams transform")))
        }
        Err(e) => return Err(e.into()),
    };
    let k = n - code.dimension();
    let d = transformed.min_nonzero_weight().unwrap_or(0);
    if cli.json {
        print_json(&json!({
            "generators": generators,
            "enumerator": enumerator_json(&transformed),
            "polynomial": transformed.to_polynomial(),
            "gray_parameters": [n, k, d],
            "notice": notice,
        }));
    } else {
        if let Some(g) = &generators {
            out!("{g}");
        }
        if let (Some(msg), false) = (&notice, cli.quiet) {
            eprintln!("note: {msg}");
        }
        outln!("enumerator  {transformed}");
        outln!("gray image  [{n},{k},{d}]");
    }
    Ok(())
}

fn cmd_gray(cli: &Cli, path: &Path) -> CliResult {
    let code = load_code(path)?;
    let rows: Vec<String> = code.z2_basis().iter().map(|v| v.gray_map().to_string()).collect();
    let image = code.gray_image();
    let e = hamming_enumerator(&image)?;
    if e != lee_enumerator(&code) {
        return Err(Failure::Internal("Gray image weights differ from Lee weights".into()));
    }
    let params = [code.shape().big_n(), code.dimension(), e.min_nonzero_weight().unwrap_or(0)];
    if cli.json {
        print_json(&json!({
            "generators": rows,
            "gray_parameters": params,
            "enumerator": enumerator_json(&e),
        }));
    } else {
        for r in &rows {
            outln!("{r}");
        }
        outln!("# [{},{},{}]", params[0], params[1], params[2]);
    }
    Ok(())
}

fn cmd_standard_form(cli: &Cli, path: &Path) -> CliResult {
    let sf = standard_form(&load_code(path)?)?;
    if cli.json {
        print_json(&json!({
            "type": sf.code_type(),
            "binary_order": sf.binary_order(),
            "ring_order": sf.ring_order(),
            "rows": sf.rows().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "zero_columns": sf.has_zero_columns(),
        }));
    } else {
        out!("{}", sf.to_matrix_file());
    }
    Ok(())
}

fn cmd_macwilliams(cli: &Cli, path: &Path) -> CliResult {
    let text = read(path)?;
    let (e, size) = if text.trim_start().starts_with('{') {
        let e = LeeEnumerator::from_json(&text).map_err(|err| Failure::Input(format!("{}: {err}", path.display())))?;
        let size = e.total();
        (e, size)
    } else {
        let code = load_code(path)?;
        (lee_enumerator(&code), code.cardinality() as u128)
    };
    let dual = macwilliams(&e, size)?;
    if cli.json {
        outln!("{}", dual.to_json());
    } else {
        outln!("{dual}");
    }
    Ok(())
}

fn cmd_classify(cli: &Cli, path: &Path) -> CliResult {
    let code = load_code(path)?;
    let report = classify(&code)?;
    let profile = weight_profile(&code).ok();
    if cli.json {
        print_json(&json!({ "classification": report, "weight_profile": profile }));
    } else {
        let yn = |b: bool| if b { "yes" } else { "no" };
        outln!("weights             {:?}", report.weights);
        outln!("one-Lee-weight      {}", yn(report.one_lee_weight));
        outln!("two-Lee-weight      {}", yn(report.two_lee_weight));
        outln!("projective          {}", yn(report.projective));
        outln!("formally self-dual  {}", yn(report.formally_self_dual));
        outln!("self-orthogonal     {}", yn(report.self_orthogonal));
        outln!("self-dual           {}", yn(report.self_dual));
        if let Some(l) = profile.and_then(|p| p.lambda) {
            outln!("lambda              {l}");
        }
        if report.has_zero_columns {
            outln!("warning             code has all-zero columns");
        }
    }
    Ok(())
}

fn cmd_reproduce(cli: &Cli, id: &str) -> CliResult {
    let results = reproduce(id)?;
    let failures: usize = results.iter().map(|r| r.failures()).sum();
    let total: usize = results.iter().map(|r| r.assertions.len()).sum();
    if cli.json {
        print_json(&json!({ "results": results, "assertions": total, "failures": failures }));
    } else {
        for r in &results {
            for a in &r.assertions {
                if !cli.quiet || a.status != Status::Pass {
                    outln!("[{}] {} {}: {}", a.status, r.id, a.name, a.detail);
                }
            }
        }
        outln!("{} examples, {total} assertions, {failures} failed", results.len());
    }
    if failures > 0 {
        return Err(Failure::Assertion(format!("{failures} assertions failed")));
    }
    Ok(())
}

fn cmd_search(cli: &Cli, args: &SearchArgs) -> CliResult {
    if args.verify_classification {
        let check = verify_fsd_one_weight_classification(*args.alpha.end(), *args.beta.end())?;
        if cli.json {
            print_json(&check);
        } else {
            if !cli.quiet {
                for (code, weight) in &check.survivors {
                    outln!("{code}  weight {weight}");
                }
            }
            outln!("{}", check.summary());
        }
        return Ok(());
    }
    let space = SearchSpace {
        alpha: args.alpha.clone(),
        beta: args.beta.clone(),
        rows: args.rows,
        mode: match args.mode {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Random => Mode::Random,
            ModeArg::Stratified => Mode::Stratified,
        },
        budget: args.budget,
        target: match args.target {
            TargetArg::OneWeight => Target::OneWeight,
            TargetArg::TwoWeightProjective => Target::TwoWeightProjective,
            TargetArg::FsdOneWeight => Target::FsdOneWeight,
        },
        seed: cli.seed,
    };
    let outcome = search(&space, !args.no_prune)?;
    let summary = json!({
        "target": outcome.target,
        "mode": outcome.mode,
        "seed": outcome.seed,
        "tuples_examined": outcome.tuples_examined,
        "distinct_codes": outcome.distinct_codes,
        "pruned": outcome.pruned,
        "hits": outcome.hits.len(),
    });
    for hit in &outcome.hits {
        if cli.json {
            outln!("{}", serde_json::to_string(hit).expect("hit serialises"));
        } else {
            let [n, k, d] = hit.gray_parameters;
            outln!("{} {} [{n},{k},{d}] {} {}", hit.shape, hit.code_type, hit.optimality, hit.polynomial);
            if !cli.quiet {
                for line in hit.generators.lines() {
                    outln!("    {line}");
                }
            }
        }
    }
    if cli.json {
        outln!("{}", json!({ "summary": summary }));
    } else if !cli.quiet {
        eprintln!(
            "{} hits among {} distinct codes from {} tuples (seed {})",
            outcome.hits.len(),
            outcome.distinct_codes,
            outcome.tuples_examined,
            outcome.seed
        );
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult {
    if let Some(t) = cli.threads {
        set_worker_threads(t);
    }
    match &cli.command {
        Command::Analyze { path } => cmd_analyze(cli, path),
        Command::Dual { path } => cmd_dual(cli, path),
        Command::Gray { path } => cmd_gray(cli, path),
        Command::StandardForm { path } => cmd_standard_form(cli, path),
        Command::Macwilliams { path } => cmd_macwilliams(cli, path),
        Command::Classify { path } => cmd_classify(cli, path),
        Command::Reproduce { id } => cmd_reproduce(cli, id),
        Command::Search(args) => cmd_search(cli, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Assertion(msg)) => {
            eprintln!("assertion failure: {msg}");
            ExitCode::from(4)
        }
    }
}
