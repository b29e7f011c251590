//! Timing standard basis computations over the cross product of inputs,
//! orderings and strategies, with a digest of each leading ideal so that
//! tuning can never silently change a result.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use germkit::coeff::Field;
use germkit::invariants::{Dim, SpaceCurveGerm};
use germkit::parse::{parse_poly, parse_ring_declaration, RingDeclaration};
use germkit::ring::{Monomial, Polynomial, Ring};
use germkit::stdbasis::{std_ideal, StdConfig, Strategy, DEFAULT_CEILING};
use germkit::Error;

use crate::commands::family_polys;
use crate::config::{ordering_for, parse_family, parse_strategy, Family, UsageError, DEFAULT_FAMILY_RING};
use crate::{build_ring, with_ring, Failure, VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum IdealKind {
    /// Jacobian ideal for Zariski members, Tjurina ideal for FT curves,
    /// the generators themselves for --poly
    #[default]
    Auto,
    Generators,
    Jacobian,
    Tjurina,
}

#[derive(Args, Debug, Clone, Default)]
pub struct BenchArgs {
    /// Ring for --poly inputs and override for families
    #[arg(long, env = "GERMKIT_RING")]
    pub ring: Option<String>,
    /// Input family; repeatable
    #[arg(long)]
    pub family: Vec<String>,
    /// Generators of one more input; repeatable
    #[arg(long)]
    pub poly: Vec<String>,
    #[arg(long, value_enum, default_value_t = IdealKind::Auto)]
    pub ideal: IdealKind,
    /// Ordering token; repeatable (default: the ring's ordering)
    #[arg(long = "ordering")]
    pub orderings: Vec<String>,
    /// Strategy, or `all` for the full cross product; repeatable
    #[arg(long = "strategy")]
    pub strategies: Vec<String>,
    #[arg(long = "char", env = "GERMKIT_CHAR")]
    pub characteristic: Option<u32>,
    #[arg(long, env = "GERMKIT_JOBS", default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, env = "GERMKIT_CEILING")]
    pub ceiling: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Family(Family),
    Polys(Vec<String>),
}

#[derive(Debug, Clone)]
pub struct BenchInput {
    pub label: String,
    pub decl: RingDeclaration,
    pub source: Source,
    pub ideal: IdealKind,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub input: String,
    pub ordering: String,
    pub strategy: String,
    pub pairs: u64,
    pub discarded: u64,
    pub reductions: u64,
    pub millis: u64,
    pub vdim: Dim,
    pub digest: String,
}

/// Hash of a leading ideal given by its generators.
pub fn leading_digest(leads: &[(Monomial, u32)]) -> String {
    let mut items: Vec<String> = leads
        .iter()
        .map(|(m, c)| {
            let e: Vec<String> = m.exponents().iter().map(|x| x.to_string()).collect();
            format!("{}@{c}", e.join("."))
        })
        .collect();
    items.sort();
    let h = Sha256::digest(items.join(";").as_bytes());
    h.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn ideal<F: Field>(ring: &Ring<F>, input: &BenchInput) -> germkit::Result<Vec<Polynomial<F>>> {
    let (polys, auto) = match &input.source {
        Source::Family(f @ Family::Zariski { .. }) => (family_polys(ring, f)?, IdealKind::Jacobian),
        Source::Family(f @ Family::Ft { .. }) => (family_polys(ring, f)?, IdealKind::Tjurina),
        Source::Polys(ps) => (
            ps.iter()
                .map(|p| parse_poly(p, ring))
                .collect::<germkit::Result<Vec<_>>>()?,
            IdealKind::Generators,
        ),
    };
    let kind = if input.ideal == IdealKind::Auto {
        auto
    } else {
        input.ideal
    };
    match (kind, polys.as_slice()) {
        (IdealKind::Generators | IdealKind::Auto, _) => Ok(polys),
        (IdealKind::Jacobian, [f]) => f.gradient(),
        (IdealKind::Tjurina, [f]) => {
            let mut v = vec![f.clone()];
            v.extend(f.gradient()?);
            Ok(v)
        }
        (IdealKind::Tjurina, [f, g]) => SpaceCurveGerm::new(f.clone(), g.clone())?.tjurina_ideal(),
        _ => Err(Error::ParameterOutOfRange(format!(
            "{kind:?} ideal is not defined for {} polynomials",
            polys.len()
        ))),
    }
}

fn run_one(input: &BenchInput, strategy: Strategy, ceiling: u64) -> Result<BenchRecord, Failure> {
    let ring = build_ring(&input.decl)?;
    let cfg = StdConfig {
        strategy,
        ceiling,
        ..StdConfig::default()
    };
    let (stats, vdim, digest, millis) = with_ring!(&ring, |r| {
        let gens = ideal(r, input)?;
        let t = Instant::now();
        let sb = std_ideal(r, &gens, &cfg)?;
        let millis = t.elapsed().as_millis() as u64;
        (
            *sb.stats(),
            Dim::from(sb.vdim()),
            leading_digest(&sb.leading_terms()),
            millis,
        )
    });
    Ok(BenchRecord {
        input: input.label.clone(),
        ordering: input.decl.ordering.token(),
        strategy: strategy.to_string(),
        pairs: stats.pairs,
        discarded: stats.discarded,
        reductions: stats.reductions,
        millis,
        vdim,
        digest,
    })
}

/// Runs every input under every strategy on up to `jobs` threads. Records
/// come back sorted by input, then time. Within one input and ordering the
/// leading ideals must agree; across orderings only the quotient dimension
/// is comparable.
pub fn bench(
    inputs: &[BenchInput],
    strategies: &[Strategy],
    jobs: usize,
    ceiling: u64,
) -> Result<Vec<BenchRecord>, Failure> {
    let work: Vec<(usize, Strategy)> = (0..inputs.len())
        .flat_map(|i| strategies.iter().map(move |s| (i, *s)))
        .collect();
    let results: Mutex<Vec<Option<Result<BenchRecord, Failure>>>> = Mutex::new((0..work.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, work.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(input, strategy)) = work.get(i) else { break };
                let r = run_one(&inputs[input], strategy, ceiling);
                results.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    let mut records = Vec::with_capacity(work.len());
    for (r, (input, _)) in results.into_inner().expect("no worker panicked").into_iter().zip(&work) {
        records.push((*input, r.expect("every job ran")?));
    }
    records.sort_by(|(ia, a), (ib, b)| {
        (ia, a.millis, &a.ordering, &a.strategy).cmp(&(ib, b.millis, &b.ordering, &b.strategy))
    });
    let records: Vec<BenchRecord> = records.into_iter().map(|(_, r)| r).collect();
    check(&records)?;
    Ok(records)
}

fn check(records: &[BenchRecord]) -> Result<(), Failure> {
    for a in records {
        for b in records.iter().filter(|b| b.input == a.input) {
            if b.ordering == a.ordering && b.digest != a.digest {
                return Err(Failure::Check(format!(
                    "leading ideal of {} under {} differs between {} ({}) and {} ({})",
                    a.input, a.ordering, a.strategy, a.digest, b.strategy, b.digest
                )));
            }
            if b.vdim != a.vdim {
                return Err(Failure::Check(format!(
                    "dimension of {} differs: {} under {}/{} but {} under {}/{}",
                    a.input, a.vdim, a.ordering, a.strategy, b.vdim, b.ordering, b.strategy
                )));
            }
        }
    }
    Ok(())
}

fn inputs_from(args: &BenchArgs) -> Result<Vec<BenchInput>, UsageError> {
    let base = |default: &str| -> Result<RingDeclaration, UsageError> {
        let text = args.ring.as_deref().unwrap_or(default);
        let mut d = parse_ring_declaration(text).map_err(|e| UsageError::new("--ring", e.to_string()))?;
        if let Some(p) = args.characteristic {
            if p != 0 && !germkit::coeff::is_prime(p as u64) {
                return Err(UsageError::new("--char", format!("{p} is neither 0 nor a prime")));
            }
            d.characteristic = p;
        }
        Ok(d)
    };
    let mut sources = Vec::new();
    for f in &args.family {
        let fam = parse_family(f)?;
        sources.push((fam.label(), base(DEFAULT_FAMILY_RING)?, Source::Family(fam)));
    }
    if !args.poly.is_empty() {
        let d = match &args.ring {
            Some(_) => base("")?,
            None => return Err(UsageError::new("--ring", "required with --poly")),
        };
        sources.push((args.poly.join(", "), d, Source::Polys(args.poly.clone())));
    }
    if sources.is_empty() {
        return Err(UsageError::new(
            "--family",
            "bench needs at least one --family or --poly input",
        ));
    }
    let mut out = Vec::new();
    for (label, decl, source) in sources {
        if args.orderings.is_empty() {
            out.push(BenchInput {
                label: label.clone(),
                decl,
                source,
                ideal: args.ideal,
            });
            continue;
        }
        for tok in &args.orderings {
            let mut d = decl.clone();
            d.ordering = ordering_for(&decl.variables, tok)?;
            out.push(BenchInput {
                label: label.clone(),
                decl: d,
                source: source.clone(),
                ideal: args.ideal,
            });
        }
    }
    Ok(out)
}

fn strategies_from(args: &BenchArgs) -> Result<Vec<Strategy>, UsageError> {
    if args.strategies.is_empty() {
        return Ok(vec![Strategy::default()]);
    }
    let mut out = Vec::new();
    for s in &args.strategies {
        if s == "all" {
            out.extend(Strategy::all());
        } else {
            out.push(parse_strategy(s)?);
        }
    }
    out.dedup();
    Ok(out)
}

pub fn run(args: &BenchArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if args.jobs == 0 {
        return Err(UsageError::new("--jobs", "must be at least 1").into());
    }
    let inputs = inputs_from(args)?;
    let strategies = strategies_from(args)?;
    let records = bench(&inputs, &strategies, args.jobs, args.ceiling.unwrap_or(DEFAULT_CEILING))?;
    if args.json {
        let characteristic = inputs[0].decl.characteristic;
        let v = json!({
            "records": records,
            "characteristic": characteristic,
            "ordering": inputs.iter().map(|i| i.decl.ordering.token()).collect::<Vec<_>>(),
            "strategy": strategies.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "version": VERSION,
        });
        writeln!(out, "{v}")?;
        return Ok(());
    }
    writeln!(
        out,
        "{:<24} {:<14} {:<40} {:>8} {:>10} {:>8} {:>8}  digest",
        "input", "ordering", "strategy", "pairs", "reductions", "millis", "vdim"
    )?;
    for r in &records {
        writeln!(
            out,
            "{:<24} {:<14} {:<40} {:>8} {:>10} {:>8} {:>8}  {}",
            r.input,
            r.ordering,
            r.strategy,
            r.pairs,
            r.reductions,
            r.millis,
            r.vdim.to_string(),
            r.digest
        )?;
    }
    Ok(())
}
