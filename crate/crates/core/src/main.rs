use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use modcheck::algebra::{Element, FiniteAlgebra};
use modcheck::corpus;
use modcheck::free::{FreeError, DEFAULT_CAP};
use modcheck::identity::{
    catalog, check_identity, lookup, parse_identity, CatalogError, CatalogParams, CheckError,
    CheckMode, CheckOptions, EvalError, IdentityStatement, Multiplicity, Sort,
};
use modcheck::maltsev::{
    find_day, find_directed_gumm, witness_day, witness_turt, witness_turtt, Search, SearchError,
    TurtInstance, WitnessError,
};
use modcheck::relation::{enumerate, BinRel, RelError, RelKind};
use modcheck::report::{AlgebraInfo, Body, CatalogEntry, NamedTerm, RunReport, VerdictReport};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 4;

/// Relation identities and modularity terms on finite algebras.
#[derive(Parser, Debug)]
#[command(name = "modcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Dgumm,
    Day,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Turt,
    Turtt,
    Day,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check identities on an algebra.
    Check(CheckArgs),
    /// List all relations of one kind.
    Enumerate {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// refl-adm, tol or con.
        #[arg(long, default_value = "refl-adm")]
        kind: RelKind,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Search for directed Gumm or Day terms.
    FindTerms {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, value_enum, default_value_t = Family::Dgumm)]
        family: Family,
        #[arg(long, default_value_t = 64)]
        max_k: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Build and validate the element chain certifying one pair.
    Witness(WitnessArgs),
    /// Print the built-in identities.
    Catalog {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// JSON file, or the name of a built-in algebra.
    #[arg(long)]
    algebra: String,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    h: usize,
    /// Factor count of alternating compositions, or `inf`.
    #[arg(long, default_value = "2")]
    m: Multiplicity,
    #[arg(long, default_value_t = 2)]
    ell: usize,
}

impl ParamArgs {
    fn params(&self) -> CatalogParams {
        CatalogParams {
            k: self.k,
            h: self.h,
            m: self.m,
            ell: self.ell,
        }
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    /// Catalog label such as `(1.1)` or `B1`; `all` selects the whole catalog.
    #[arg(long)]
    identity: Vec<String>,
    /// Identity in the textual syntax.
    #[arg(long)]
    identity_text: Vec<String>,
    /// Override the range of a quantifier, e.g. `Theta=CON`.
    #[arg(long, value_parser = parse_sort_override)]
    sort: Vec<(String, Sort)>,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Exit with status 4 if any identity fails.
    #[arg(long)]
    assert_holds: bool,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    #[arg(long, value_enum)]
    theorem: Theorem,
    /// Relation binding `NAME=LITERAL` (R, V, W, S1.. or Theta, S); unbound relations are nabla.
    #[arg(long, value_parser = parse_binding)]
    rel: Vec<(String, String)>,
    #[arg(long)]
    a: Option<Element>,
    #[arg(long)]
    b: Element,
    #[arg(long)]
    c: Option<Element>,
    /// Elements a_0,...,a_l linked by S1,...,Sl.
    #[arg(long, value_delimiter = ',')]
    chain: Vec<Element>,
    #[arg(long, default_value_t = 64)]
    max_k: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

fn parse_sort_override(s: &str) -> Result<(String, Sort), String> {
    let (name, sort) = parse_binding(s)?;
    Ok((name, sort.parse()?))
}

fn parse_binding(s: &str) -> Result<(String, String), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    Ok((name.trim().to_string(), value.trim().to_string()))
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<RelError> for Failure {
    fn from(e: RelError) -> Self {
        let code = match e {
            RelError::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<FreeError> for Failure {
    fn from(e: FreeError) -> Self {
        let code = match e {
            FreeError::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Free(f) => f.into(),
            other => Failure::input(other),
        }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Rel(r) | CheckError::Eval(EvalError::Rel(r)) => r.into(),
            CheckError::TooManyAssignments => Failure {
                code: EXIT_CAP,
                message: e.to_string(),
            },
            other => Failure::input(other),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        Failure::input(e)
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::Invalid { .. } => Failure {
                code: EXIT_FAILED,
                message: format!("internal error: {e}"),
            },
            other => Failure::input(other),
        }
    }
}

fn load_algebra(spec: &str) -> Result<FiniteAlgebra, Failure> {
    if let Some(alg) = corpus::load(spec) {
        if !Path::new(spec).exists() {
            return Ok(alg);
        }
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure::input(format!("cannot read algebra `{spec}`: {e}")))?;
    FiniteAlgebra::from_json(&text).map_err(|e| Failure::input(format!("{spec}: {e}")))
}

fn info(alg: &FiniteAlgebra) -> Option<AlgebraInfo> {
    Some(AlgebraInfo {
        name: alg.name().to_string(),
        size: alg.size(),
    })
}

fn run_check(args: &CheckArgs) -> Result<(Option<AlgebraInfo>, Body), Failure> {
    let params = args.params.params();
    let mut stmts: Vec<(String, IdentityStatement)> = Vec::new();
    for label in &args.identity {
        if label == "all" {
            stmts.extend(catalog(&params)?);
        } else {
            stmts.push((label.clone(), lookup(label, &params)?));
        }
    }
    for (i, text) in args.identity_text.iter().enumerate() {
        let stmt = parse_identity(text).map_err(|e| Failure::input(format!("identity: {e}")))?;
        stmts.push((format!("[{}]", i + 1), stmt));
    }
    if stmts.is_empty() {
        return Err(Failure::input("no identity given (use --identity or --identity-text)"));
    }
    for (name, sort) in &args.sort {
        let mut used = false;
        for (_, stmt) in stmts.iter_mut() {
            if stmt.sort_of(name).is_some() {
                *stmt = stmt
                    .with_sort(name, *sort)
                    .map_err(Failure::input)?;
                used = true;
            }
        }
        if !used {
            return Err(Failure::input(format!("--sort: no identity quantifies `{name}`")));
        }
    }
    let alg = load_algebra(&args.algebra.algebra)?;
    let opts = CheckOptions {
        mode: match args.mode {
            Mode::Exhaustive => CheckMode::Exhaustive,
            Mode::Sample => CheckMode::Sample {
                seed: args.seed,
                count: args.samples,
            },
        },
        jobs: args.jobs.max(1),
        cap: args.cap,
    };
    let mut verdicts = Vec::new();
    for (label, stmt) in &stmts {
        let v = check_identity(&alg, stmt, &opts)?;
        verdicts.push(VerdictReport::new(label, stmt, &v));
    }
    let mode = match args.mode {
        Mode::Exhaustive => "exhaustive".to_string(),
        Mode::Sample => format!("sample (seed {}, {} samples)", args.seed, args.samples),
    };
    Ok((info(&alg), Body::Check { mode, verdicts }))
}

fn bound_relation(
    bindings: &[(String, String)],
    name: &str,
    n: usize,
) -> Result<BinRel, Failure> {
    match bindings.iter().rev().find(|(b, _)| b == name) {
        Some((_, text)) => Ok(BinRel::parse(n, text)?),
        None => Ok(BinRel::nabla(n)),
    }
}

fn run_witness(args: &WitnessArgs) -> Result<(Option<AlgebraInfo>, Body), Failure> {
    let alg = load_algebra(&args.algebra.algebra)?;
    let n = alg.size();
    if n > modcheck::relation::MAX_SIZE {
        return Err(RelError::UnsupportedSize(n).into());
    }
    let not_found = |family: &str| Failure {
        code: EXIT_FAILED,
        message: format!("no {family} terms with k <= {}", args.max_k),
    };
    let theorem = match args.theorem {
        Theorem::Turt => "turt",
        Theorem::Turtt => "turtt",
        Theorem::Day => "day",
    };
    let known: Vec<String> = match args.theorem {
        Theorem::Day => vec!["Theta".into(), "S".into()],
        _ => {
            let ell = args.chain.len().saturating_sub(1);
            ["R", "V", "W"]
                .into_iter()
                .map(String::from)
                .chain((1..=ell).map(|i| format!("S{i}")))
                .collect()
        }
    };
    if let Some((name, _)) = args.rel.iter().find(|(name, _)| !known.contains(name)) {
        return Err(Failure::input(format!("--rel: `{name}` is not used by {theorem}")));
    }
    match args.theorem {
        Theorem::Day => {
            let (Some(a), Some(c)) = (args.a, args.c) else {
                return Err(Failure::input("day witness needs --a, --b and --c"));
            };
            let Search::Found(sys) = find_day(&alg, args.max_k, args.cap)? else {
                return Err(not_found("Day"));
            };
            let theta = bound_relation(&args.rel, "Theta", n)?;
            let s = bound_relation(&args.rel, "S", n)?;
            let chain = witness_day(&alg, &sys, &theta, &s, a, args.b, c)?;
            Ok((info(&alg), Body::witness(theorem, sys.k, &chain, NamedTerm::day(&sys))))
        }
        Theorem::Turt | Theorem::Turtt => {
            if args.chain.len() < 2 {
                return Err(Failure::input("--chain needs at least two elements a_0,a_1"));
            }
            let first = args.chain[0];
            let last = args.chain[args.chain.len() - 1];
            if args.a.is_some_and(|a| a != first) || args.c.is_some_and(|c| c != last) {
                return Err(Failure::input("--a and --c must be the ends of --chain"));
            }
            let Search::Found(sys) = find_directed_gumm(&alg, args.max_k, args.cap)? else {
                return Err(not_found("directed Gumm"));
            };
            let inst = TurtInstance {
                r: bound_relation(&args.rel, "R", n)?,
                v: bound_relation(&args.rel, "V", n)?,
                w: bound_relation(&args.rel, "W", n)?,
                s: (1..args.chain.len())
                    .map(|i| bound_relation(&args.rel, &format!("S{i}"), n))
                    .collect::<Result<_, _>>()?,
                b: args.b,
                chain: args.chain.clone(),
            };
            let chain = if args.theorem == Theorem::Turt {
                witness_turt(&alg, &sys, &inst)?
            } else {
                witness_turtt(&alg, &sys, &inst)?
            };
            Ok((info(&alg), Body::witness(theorem, sys.k, &chain, NamedTerm::gumm(&sys))))
        }
    }
}

fn run(cli: &Cli) -> Result<(Option<AlgebraInfo>, Body), Failure> {
    match &cli.command {
        Command::Check(args) => run_check(args),
        Command::Enumerate { algebra, kind, cap } => {
            let alg = load_algebra(&algebra.algebra)?;
            let lattice = enumerate(&alg, *kind, *cap)?;
            Ok((info(&alg), Body::enumerate(&kind.to_string(), &lattice.members)))
        }
        Command::FindTerms {
            algebra,
            family,
            max_k,
            cap,
        } => {
            let alg = load_algebra(&algebra.algebra)?;
            let (name, found, k, definitive, terms) = match family {
                Family::Dgumm => match find_directed_gumm(&alg, *max_k, *cap)? {
                    Search::Found(sys) => ("dgumm", true, Some(sys.k), false, NamedTerm::gumm(&sys)),
                    Search::NotFound { definitive, .. } => ("dgumm", false, None, definitive, vec![]),
                },
                Family::Day => match find_day(&alg, *max_k, *cap)? {
                    Search::Found(sys) => ("day", true, Some(sys.k), false, NamedTerm::day(&sys)),
                    Search::NotFound { definitive, .. } => ("day", false, None, definitive, vec![]),
                },
            };
            Ok((
                info(&alg),
                Body::FindTerms {
                    family: name.to_string(),
                    found,
                    k,
                    max_k: *max_k,
                    definitive,
                    terms,
                },
            ))
        }
        Command::Witness(args) => run_witness(args),
        Command::Catalog { params } => {
            let entries = catalog(&params.params())?
                .into_iter()
                .map(|(label, stmt)| CatalogEntry {
                    label,
                    statement: stmt.to_string(),
                })
                .collect();
            Ok((None, Body::Catalog { entries }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (algebra, result) = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let report = RunReport {
        invocation: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
        algebra,
        result,
        elapsed_ms: cli.timings.then(|| started.elapsed().as_millis()),
    };
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_json(),
    };
    print!("{text}");
    if report.success() {
        ExitCode::SUCCESS
    } else if matches!(&cli.command, Command::Check(a) if a.assert_holds) {
        ExitCode::from(EXIT_COUNTEREXAMPLE)
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}
