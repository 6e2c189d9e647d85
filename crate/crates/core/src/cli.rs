//! The `semicomm` command line: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 on success, 1 when a predicate is violated, 2 on usage or
//! input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::unital_algebra_basis;
use crate::constructions::{
    catalan_idempotent_pair, companion, cycle, gerstenhaber_witness, idempotent_pair_3x3, idempotent_pair_7x7,
    intertwiner_basis, jordan_block, permutation_from_cycle_type, random_semicommuting_pair, CompanionSpec, Family,
};
use crate::error::{Error, Result};
use crate::exact::{commutator, Matrix, Rational};
use crate::io::{matrices_from_value, matrix_to_value, pair_from_value, parse_json, Pair};
use crate::order::{invariant_ideal_chain, is_ideal_irreducible, is_positive, refined_bound, sign_class};
use crate::search::{search_dims_with_jobs, search_idempotent_even, write_witnesses, Witness};
use crate::verifier::{check, run_suite_with_jobs, Instance, Outcome, TheoremId, TheoremReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Outcome of one invocation: exit code plus captured output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult { exit_code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(e: &Error) -> Self {
        CommandResult { exit_code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "semicomm", version, about = "Exact analysis of algebras generated by pairs of positive matrices")]
struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sign classes, irreducibility, ideal chains and the refined bound of a pair.
    Analyze {
        /// Pair JSON file: {"A": <matrix>, "B": <matrix>}.
        file: PathBuf,
    },
    /// Dimension and basis words of the unital algebra generated by matrices.
    Dim {
        /// Matrix list, pair or single matrix JSON file.
        file: PathBuf,
        /// Also print the basis matrices.
        #[arg(long)]
        basis: bool,
    },
    /// Print a named construction as JSON.
    Construct(ConstructArgs),
    /// Check theorem predicates on an instance or on the seeded suite.
    Verify(VerifyArgs),
    /// Seeded searches for attainable algebra dimensions.
    #[command(subcommand)]
    Search(SearchCommand),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// jordan, cycle, companion, permutation, gerstenhaber, intertwiners,
    /// idem7, idem3, catalan or random-pair.
    name: String,
    #[arg(long)]
    n: Option<usize>,
    /// Row count for intertwiners (defaults to n).
    #[arg(long)]
    m: Option<usize>,
    /// Companion coefficients a_0, …, a_{n-1}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Vec<String>,
    /// Cycle lengths of a permutation.
    #[arg(long, value_delimiter = ',')]
    cycle_type: Vec<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Theorem identifiers; repeatable. Defaults to all.
    #[arg(long = "theorem", value_delimiter = ',')]
    theorems: Vec<String>,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Check a single instance instead of running the suite.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// Dimensions attained by positive semi-commuting pairs.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        /// Directory for witness-<dim>.json files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Largest dimension for idempotent pairs with EF ≥ FE ≥ 0 at even n.
    IdemEven {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { exit_code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                CommandResult::ok(text)
            };
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Analyze { file } => analyze(&file, json).map(CommandResult::ok),
        Command::Dim { file, basis } => dim(&file, basis, json).map(CommandResult::ok),
        Command::Construct(args) => construct(&args).map(CommandResult::ok),
        Command::Verify(args) => verify(&args, json),
        Command::Search(cmd) => search(cmd, json).map(CommandResult::ok),
    };
    result.unwrap_or_else(|e| CommandResult::error(&e))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.ok_or_else(|| Error::Usage(format!("{what} is randomized and needs an explicit --seed")))
}

fn analyze(file: &Path, json: bool) -> Result<String> {
    let Pair { a, b } = pair_from_value(&read_json(file)?)?;
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Shape(format!(
            "pair needs square matrices of equal size, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let sum = &a + &b;
    let comm = commutator(&a, &b)?;
    let positive = is_positive(&a) && is_positive(&b);
    // Irreducibility and chains are only defined for positive matrices.
    let irreducible = |m: &Matrix| is_positive(m).then(|| is_ideal_irreducible(m)).transpose();
    let chain = |m: &Matrix| is_positive(m).then(|| invariant_ideal_chain(m)).transpose();
    let (chain_a, chain_b, chain_sum) = (chain(&a)?, chain(&b)?, chain(&sum)?);
    let bound = if positive { Some(refined_bound(&a, &b)?) } else { None };
    let dim = unital_algebra_basis(&[a.clone(), b.clone()])?.dim;
    let sizes = |c: &Option<crate::order::IdealChain>| c.as_ref().map(|c| c.block_sizes.clone());
    let report = json!({
        "n": a.rows(),
        "sign_class": {
            "A": sign_class(&a),
            "B": sign_class(&b),
            "commutator": sign_class(&comm),
        },
        "irreducible": {
            "A": irreducible(&a)?,
            "B": irreducible(&b)?,
            "A+B": irreducible(&sum)?,
        },
        "chain_block_sizes": {
            "A": sizes(&chain_a),
            "B": sizes(&chain_b),
            "A+B": sizes(&chain_sum),
        },
        "chain_order": chain_sum.as_ref().map(|c| c.order.iter().map(|i| i + 1).collect::<Vec<_>>()),
        "refined_bound": bound,
        "general_bound": a.rows() * (a.rows() + 1) / 2,
        "dim": dim,
    });
    if json {
        return Ok(pretty(&report));
    }
    let show = |v: &Value| match v {
        Value::Null => "n/a".to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let mut out = String::new();
    let _ = writeln!(out, "n                 {}", a.rows());
    for key in ["A", "B"] {
        let _ = writeln!(out, "sign {key}            {}", show(&report["sign_class"][key]));
    }
    let _ = writeln!(out, "sign [A,B]        {}", show(&report["sign_class"]["commutator"]));
    for key in ["A", "B", "A+B"] {
        let _ = writeln!(out, "irreducible {key:<5} {}", show(&report["irreducible"][key]));
    }
    for key in ["A", "B", "A+B"] {
        let _ = writeln!(out, "chain {key:<11} {}", show(&report["chain_block_sizes"][key]));
    }
    let _ = writeln!(out, "chain order A+B   {}", show(&report["chain_order"]));
    let _ = writeln!(out, "refined bound     {}", show(&report["refined_bound"]));
    let _ = writeln!(out, "general bound     {}", report["general_bound"]);
    let _ = writeln!(out, "dim               {dim}");
    Ok(out)
}

fn dim(file: &Path, basis: bool, json: bool) -> Result<String> {
    let gens = matrices_from_value(&read_json(file)?)?;
    if let Some((i, g)) = gens.iter().enumerate().find(|(_, g)| !g.is_square()) {
        return Err(Error::Shape(format!("generator {i} is {}x{}, not square", g.rows(), g.cols())));
    }
    let alg = unital_algebra_basis(&gens)?;
    let words: Vec<String> = alg.basis_words.iter().map(ToString::to_string).collect();
    let matrices = || Value::Array(alg.basis_matrices.iter().map(matrix_to_value).collect());
    if json {
        let mut v = json!({ "n": alg.n, "dim": alg.dim, "basis_words": words });
        if basis {
            v["basis"] = matrices();
        }
        return Ok(pretty(&v));
    }
    let mut out = format!("{}\nbasis words: {}\n", alg.dim, words.join(" "));
    if basis {
        out += &pretty(&matrices());
    }
    Ok(out)
}

fn construct(args: &ConstructArgs) -> Result<String> {
    let need_n = || args.n.ok_or_else(|| Error::Usage(format!("construct {} needs --n", args.name)));
    let pair = |a: Matrix, b: Matrix| Pair::new(a, b).to_value();
    let value = match args.name.as_str() {
        "jordan" => matrix_to_value(&jordan_block(need_n()?)?),
        "cycle" => matrix_to_value(&cycle(need_n()?)?),
        "companion" => {
            if args.coeffs.is_empty() {
                return Err(Error::Usage("construct companion needs --coeffs a0,a1,...".into()));
            }
            let coeffs = args
                .coeffs
                .iter()
                .map(|c| c.trim().parse::<Rational>())
                .collect::<Result<Vec<_>>>()?;
            if let Some(n) = args.n {
                if n != coeffs.len() {
                    return Err(Error::Usage(format!("--n {n} does not match {} coefficients", coeffs.len())));
                }
            }
            matrix_to_value(&companion(&CompanionSpec::new(coeffs)))
        }
        "permutation" => {
            let sizes = if args.cycle_type.is_empty() { vec![need_n()?] } else { args.cycle_type.clone() };
            let p = permutation_from_cycle_type(&sizes)?;
            if let Some(n) = args.n {
                if n != p.rows() {
                    return Err(Error::Usage(format!("--n {n} does not match cycle type total {}", p.rows())));
                }
            }
            matrix_to_value(&p)
        }
        "gerstenhaber" => {
            let (a, b) = gerstenhaber_witness(need_n()?)?;
            pair(a, b)
        }
        "intertwiners" => {
            let n = need_n()?;
            let m = args.m.unwrap_or(n);
            Value::Array(intertwiner_basis(m, n)?.iter().map(matrix_to_value).collect())
        }
        "idem7" => {
            let p = idempotent_pair_7x7();
            pair(p.e, p.f)
        }
        "idem3" => {
            let p = idempotent_pair_3x3();
            pair(p.e, p.f)
        }
        "catalan" => {
            let p = catalan_idempotent_pair(need_n()?)?;
            pair(p.e, p.f)
        }
        "random-pair" => {
            let seed = require_seed(args.seed, "construct random-pair")?;
            let family: Family = args.family.as_deref().unwrap_or("diag_dominated").parse()?;
            let (a, b) = random_semicommuting_pair(need_n()?, family, seed)?;
            pair(a, b)
        }
        other => {
            return Err(Error::Usage(format!(
                "unknown construction {other:?}; expected one of jordan, cycle, companion, permutation, \
                 gerstenhaber, intertwiners, idem7, idem3, catalan, random-pair"
            )))
        }
    };
    Ok(pretty(&value))
}

fn parse_theorems(names: &[String]) -> Result<Vec<TheoremId>> {
    if names.is_empty() {
        return Ok(TheoremId::ALL.to_vec());
    }
    names.iter().map(|s| s.parse()).collect()
}

fn report_text(r: &TheoremReport) -> String {
    let mut out = format!("{:<9} {}\n", r.theorem_id.as_str(), r.outcome.as_str());
    for (k, v) in &r.details {
        let _ = writeln!(out, "  {k}: {v}");
    }
    out
}

fn verify(args: &VerifyArgs, json: bool) -> Result<CommandResult> {
    let theorems = parse_theorems(&args.theorems)?;
    if let Some(path) = &args.instance {
        let instance = Instance::from_value(&read_json(path)?)?;
        let reports = theorems.iter().map(|&t| check(t, &instance)).collect::<Result<Vec<_>>>()?;
        let violated = reports.iter().any(|r| r.outcome == Outcome::Violated);
        let stdout = if json {
            pretty(&json!({ "instance_digest": instance.digest(), "reports": reports }))
        } else {
            let mut out = format!("instance {}\n", instance.digest());
            for r in &reports {
                out += &report_text(r);
            }
            out
        };
        let exit_code = if violated { EXIT_VIOLATED } else { EXIT_OK };
        return Ok(CommandResult { exit_code, stdout, stderr: String::new() });
    }

    let seed = require_seed(args.seed, "the verification suite")?;
    if args.n_max == 0 || args.trials == 0 {
        return Err(Error::Usage("--n-max and --trials must be at least 1".into()));
    }
    let suite = run_suite_with_jobs(&theorems, args.n_max, args.trials, seed, args.jobs.max(1));
    let violations: Vec<&TheoremReport> = suite.violations().collect();
    let stdout = if json {
        pretty(&json!({
            "n_max": suite.n_max,
            "trials": suite.trials,
            "seed": suite.seed,
            "counts": suite.counts,
            "total_violations": violations.len(),
            "violations": violations,
        }))
    } else {
        let mut out = format!("suite n_max={} trials={} seed={}\n", suite.n_max, suite.trials, suite.seed);
        let _ = writeln!(out, "{:<9} {:>7} {:>7} {:>8}", "theorem", "holds", "n/a", "violated");
        for (id, c) in &suite.counts {
            let _ = writeln!(out, "{:<9} {:>7} {:>7} {:>8}", id.as_str(), c.holds, c.not_applicable, c.violated);
        }
        let _ = writeln!(out, "violations: {}", violations.len());
        for r in &violations {
            out += &report_text(r);
        }
        out
    };
    let exit_code = if violations.is_empty() { EXIT_OK } else { EXIT_VIOLATED };
    Ok(CommandResult { exit_code, stdout, stderr: String::new() })
}

fn witness_lines(out: &mut String, witnesses: &[Witness]) {
    for w in witnesses {
        let trial = w.trial.map_or_else(|| "fixed".to_string(), |t| t.to_string());
        let _ = writeln!(
            out,
            "  dim {:>3}  {:<20} trial {:<6} [A,B] {}",
            w.dim, w.family, trial, w.certificates.commutator_sign
        );
    }
}

fn search(cmd: SearchCommand, json: bool) -> Result<String> {
    match cmd {
        SearchCommand::Dims { n, trials, seed, families, out, jobs } => {
            let seed = require_seed(seed, "search dims")?;
            let families = if families.is_empty() {
                Family::ALL.to_vec()
            } else {
                families.iter().map(|f| f.parse()).collect::<Result<Vec<Family>>>()?
            };
            let r = search_dims_with_jobs(n, &families, trials, seed, jobs.max(1))?;
            let written = match &out {
                Some(dir) => write_witnesses(dir, &r.witnesses)?,
                None => Vec::new(),
            };
            if json {
                return Ok(pretty(&r.to_value()));
            }
            let list = |v: &[usize]| {
                if v.is_empty() {
                    "none".to_string()
                } else {
                    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
                }
            };
            let mut s = format!("search dims n={n} trials={trials} seed={seed}\n");
            let _ = writeln!(s, "attained: {}", list(&r.attained.iter().copied().collect::<Vec<_>>()));
            let _ = writeln!(s, "not found in {trials} trials within [{}, {}]: {}", n, r.bound(), list(&r.not_found()));
            let _ = writeln!(
                s,
                "candidates {}  distinct classes {}  generation failures {}",
                r.candidates, r.distinct_classes, r.generation_failures
            );
            witness_lines(&mut s, &r.witnesses);
            if !written.is_empty() {
                let _ = writeln!(s, "wrote {} witness files", written.len());
            }
            Ok(s)
        }
        SearchCommand::IdemEven { n, trials, seed, out } => {
            let seed = require_seed(seed, "search idem-even")?;
            let r = search_idempotent_even(n, trials, seed)?;
            if let Some(dir) = &out {
                write_witnesses(dir, &r.witnesses)?;
            }
            if json {
                return Ok(pretty(&r.to_value()));
            }
            let mut s = format!("search idem-even n={n} trials={trials} seed={seed}\n");
            let _ = writeln!(s, "max dim found {} (bound {})", r.max_dim_found, r.bound());
            let _ = writeln!(s, "qualifying pairs {}", r.qualifying);
            witness_lines(&mut s, &r.witnesses);
            Ok(s)
        }
    }
}
