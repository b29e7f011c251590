//! Command-line front end: argument handling, dispatch and output.

pub mod acceptance;
pub mod bench;
pub mod commands;
pub mod config;
pub mod jobfile;

use std::ffi::OsString;
use std::io::Write;

use clap::builder::FalseyValueParser;
use clap::{ArgAction, Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use germkit::coeff::{is_prime, Rationals};
use germkit::parse::{parse_poly, parse_ring_declaration, AnyRing, RingDeclaration};
use germkit::ring::Polynomial;

use commands::{compute, family_polys, Command, Outcome};
use config::{parse_family, parse_order, parse_strategy, Family, Format, JobConfig, UsageError, DEFAULT_FAMILY_RING};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Dispatches on the coefficient field of an [`AnyRing`].
#[macro_export]
macro_rules! with_ring {
    ($any:expr, |$r:ident| $body:expr) => {
        match $any {
            germkit::parse::AnyRing::Rational($r) => $body,
            germkit::parse::AnyRing::Prime($r) => $body,
        }
    };
}

#[derive(Debug)]
pub enum Failure {
    Usage(UsageError),
    Compute(germkit::Error),
    /// A computation error tied to a job-file line.
    Job {
        line: usize,
        error: germkit::Error,
    },
    Io(String),
    /// Internal consistency check failed (bench digests, selftest).
    Check(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

impl From<germkit::Error> for Failure {
    fn from(e: germkit::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(u) => format!("usage error: {u}"),
            Failure::Compute(e) => format!("error: {}: {e}", e.name()),
            Failure::Job { line, error } => format!("error: line {line}: {}: {error}", error.name()),
            Failure::Io(m) => format!("error: {m}"),
            Failure::Check(m) => format!("check failed: {m}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "germkit",
    version,
    about = "Standard bases and invariants of isolated singularities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Flags shared by the single-computation subcommands. Each can also be set
/// through the environment variable named in its help text.
#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Ring declaration, e.g. "0 (x,y,z) ds"
    #[arg(long, env = "GERMKIT_RING")]
    pub ring: Option<String>,
    /// Polynomial; repeat for several generators or a space curve
    #[arg(long)]
    pub poly: Vec<String>,
    /// zariski:a,b,c:t=q or ft:k,l
    #[arg(long)]
    pub family: Option<String>,
    /// Ordering token replacing the ring's ordering
    #[arg(long, env = "GERMKIT_ORDERING")]
    pub ordering: Option<String>,
    /// Strategy, e.g. sugar/min-ecart or fifo/first-found/no-chain
    #[arg(long, env = "GERMKIT_STRATEGY")]
    pub strategy: Option<String>,
    /// Coefficient characteristic (0 or a prime), replacing the ring's
    #[arg(long = "char", env = "GERMKIT_CHAR")]
    pub characteristic: Option<u32>,
    /// Truncation order for the exactness test: AUTO or an integer
    #[arg(long = "order-N", env = "GERMKIT_ORDER_N")]
    pub order_n: Option<String>,
    /// Emit JSON
    #[arg(long, env = "GERMKIT_JSON", action = ArgAction::SetTrue, value_parser = FalseyValueParser::new())]
    pub json: bool,
    /// Worker threads (bench)
    #[arg(long, env = "GERMKIT_JOBS")]
    pub jobs: Option<usize>,
    /// Ceiling on elementary reductions per computation
    #[arg(long, env = "GERMKIT_CEILING")]
    pub ceiling: Option<u64>,
    /// Seed for randomized suites
    #[arg(long, env = "GERMKIT_SEED")]
    pub seed: Option<u64>,
    /// Input degree from which characteristic 0 is replaced by 32003 (0 = never)
    #[arg(long, env = "GERMKIT_SWITCH_DEGREE")]
    pub switch_degree: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Standard basis of the ideal generated by the inputs
    Std(Common),
    /// Dimension of the quotient by the ideal generated by the inputs
    Vdim(Common),
    /// Milnor number
    Milnor(Common),
    /// Tjurina number
    Tjurina(Common),
    /// Multiplicity
    Mult(Common),
    /// Quasi-homogeneity
    Qh(Common),
    /// The space curve FT(k,l)
    Ft {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        /// Print the full JSON report
        #[arg(long)]
        report: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Multiplicity and Milnor number of a member of the Zariski family
    Zariski {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value = "0")]
        t: String,
        #[command(flatten)]
        common: Common,
    },
    /// Exactness of the Poincare complex of a space curve
    Reiffen(Common),
    /// Time standard basis computations across orderings and strategies
    Bench(bench::BenchArgs),
    /// Run the acceptance suite
    Selftest {
        /// Run only these criteria (1-7)
        #[arg(long)]
        only: Vec<u8>,
        #[arg(long, env = "GERMKIT_SEED", default_value_t = acceptance::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, env = "GERMKIT_JSON", action = ArgAction::SetTrue, value_parser = FalseyValueParser::new())]
        json: bool,
    },
    /// Execute a job file
    Run {
        path: String,
        #[command(flatten)]
        common: Common,
    },
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message());
            f.exit_code()
        }
    }
}

pub fn job_config(c: &Common) -> Result<JobConfig, UsageError> {
    let mut cfg = JobConfig::default();
    if let Some(p) = c.characteristic {
        if p != 0 && !is_prime(p as u64) {
            return Err(UsageError::new("--char", format!("{p} is neither 0 nor a prime")));
        }
        cfg.characteristic = Some(p);
    }
    cfg.ordering = c.ordering.clone();
    if let Some(s) = &c.strategy {
        cfg.strategy = parse_strategy(s)?;
    }
    if let Some(o) = &c.order_n {
        cfg.order = parse_order(o)?;
    }
    if c.json {
        cfg.format = Format::Json;
    }
    if let Some(j) = c.jobs {
        if j == 0 {
            return Err(UsageError::new("--jobs", "must be at least 1"));
        }
        cfg.jobs = j;
    }
    if let Some(n) = c.ceiling {
        cfg.ceiling = n;
    }
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(d) = c.switch_degree {
        cfg.switch_degree = d;
    }
    Ok(cfg)
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Cmd::Std(c) => single(Command::Std, &c, None, out, err),
        Cmd::Vdim(c) => single(Command::Vdim, &c, None, out, err),
        Cmd::Milnor(c) => single(Command::Milnor, &c, None, out, err),
        Cmd::Tjurina(c) => single(Command::Tjurina, &c, None, out, err),
        Cmd::Mult(c) => single(Command::Mult, &c, None, out, err),
        Cmd::Qh(c) => single(Command::Qh, &c, None, out, err),
        Cmd::Reiffen(c) => single(Command::Reiffen, &c, None, out, err),
        Cmd::Ft {
            k,
            l,
            report,
            mut common,
        } => {
            if report {
                common.json = true;
            }
            single(Command::Report, &common, Some(Family::Ft { k, l }), out, err)
        }
        Cmd::Zariski { a, b, c, t, common } => {
            let fam =
                parse_family(&format!("zariski:{a},{b},{c}:t={t}")).map_err(|e| UsageError::new("--t", e.message))?;
            single(Command::MultMu, &common, Some(fam), out, err)
        }
        Cmd::Bench(args) => bench::run(&args, out),
        Cmd::Selftest { only, seed, json } => acceptance::selftest(&only, seed, json, out),
        Cmd::Run { path, common } => {
            let cfg = job_config(&common)?;
            jobfile::run_jobfile(&path, &cfg, out)
        }
    }
}

/// The input of a single computation.
enum Input {
    Family(Family),
    Polys(Vec<String>),
}

fn single(
    cmd: Command,
    c: &Common,
    fixed: Option<Family>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let cfg = job_config(c)?;
    let input = match (fixed, &c.family, c.poly.is_empty()) {
        (Some(f), None, true) => Input::Family(f),
        (Some(_), Some(_), _) => {
            return Err(UsageError::new("--family", "the subcommand fixes the family already").into())
        }
        (Some(_), None, false) => {
            return Err(UsageError::new("--poly", "the subcommand fixes the input already").into())
        }
        (None, Some(_), false) => return Err(UsageError::new("--family", "cannot be combined with --poly").into()),
        (None, Some(f), true) => Input::Family(parse_family(f)?),
        (None, None, false) => Input::Polys(c.poly.clone()),
        (None, None, true) => return Err(UsageError::new("--poly", "no input; give --poly or --family").into()),
    };
    let ring_text = match (&c.ring, &input) {
        (Some(r), _) => r.clone(),
        (None, Input::Family(_)) => DEFAULT_FAMILY_RING.to_string(),
        (None, Input::Polys(_)) => return Err(UsageError::new("--ring", "required with --poly").into()),
    };
    let decl = parse_ring_declaration(&ring_text).map_err(|e| UsageError::new("--ring", e.to_string()))?;
    let degree = match &input {
        Input::Family(f) => f.max_degree(),
        Input::Polys(ps) if decl.characteristic == 0 && cfg.characteristic.is_none() => input_degree(&decl, ps)?,
        Input::Polys(_) => 0,
    };
    let (decl, switched) = cfg.resolve_ring(&decl, degree)?;
    let ring = build_ring(&decl)?;
    let outcome = with_ring!(&ring, |r| {
        let polys = match &input {
            Input::Family(f) => family_polys(r, f)?,
            Input::Polys(ps) => ps
                .iter()
                .map(|p| parse_poly(p, r))
                .collect::<germkit::Result<Vec<_>>>()?,
        };
        compute(cmd, &polys, &cfg)?
    });
    if switched && cfg.format == Format::Text {
        writeln!(
            err,
            "note: input degree {degree} >= {}; computed over F_{}",
            cfg.switch_degree, decl.characteristic
        )?;
    }
    emit(&outcome, &meta(&decl, &cfg, switched), cfg.format, out)
}

/// Largest total degree of the inputs, read over the rationals.
fn input_degree(decl: &RingDeclaration, polys: &[String]) -> Result<u32, Failure> {
    let q = RingDeclaration {
        characteristic: 0,
        ..decl.clone()
    }
    .build(Rationals)?;
    let mut d = 0;
    for p in polys {
        let f: Polynomial<Rationals> = parse_poly(p, &q)?;
        d = d.max(f.total_degree().unwrap_or(0));
    }
    Ok(d)
}

pub fn build_ring(decl: &RingDeclaration) -> Result<AnyRing, Failure> {
    decl.build_any()
        .map_err(|e| Failure::Usage(UsageError::new("--char", e.to_string())))
}

/// Reproducibility fields attached to every JSON report.
pub fn meta(decl: &RingDeclaration, cfg: &JobConfig, switched: bool) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("characteristic".into(), json!(decl.characteristic));
    m.insert("ordering".into(), json!(decl.ordering.token()));
    m.insert("strategy".into(), json!(cfg.strategy.to_string()));
    m.insert("version".into(), json!(VERSION));
    if switched {
        m.insert("characteristic_switched".into(), json!(true));
    }
    if decl.characteristic != 0 {
        m.insert(
            "note".into(),
            json!(format!(
                "computed over F_{}; characteristic 0 values are expected to agree",
                decl.characteristic
            )),
        );
    }
    m
}

pub fn emit(outcome: &Outcome, meta: &Map<String, Value>, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Text => {
            if !outcome.text.is_empty() {
                writeln!(out, "{}", outcome.text)?;
            }
        }
        Format::Json => {
            let mut m = outcome.fields.clone();
            m.extend(meta.clone());
            writeln!(out, "{}", Value::Object(m))?;
        }
    }
    Ok(())
}
