//! Normal forms and standard bases of ideals and submodules.
//!
//! Global orderings use Buchberger's algorithm. Any other ordering uses
//! Mora's tangent cone algorithm: reduction prefers reducers of minimal
//! ecart and, when every candidate has larger ecart than the element being
//! reduced, adds that element to the reducer set before continuing.
//! For local degree orderings (`ds`, `ls`) the engine watches for a
//! highest corner; once every monomial of degree `>= N` is a leading
//! monomial, all terms of degree `>= N` are discarded, which turns the rest
//! of the computation into finite linear algebra.

mod dense;
mod engine;
mod reduce;
mod staircase;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use staircase::Staircase;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::ring::{Monomial, Polynomial, Ring, VectorElement};
use reduce::{ecart_of, make_reducer, Reducer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairSelection {
    MinLcmDegree,
    #[default]
    Sugar,
    Fifo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReducerSelection {
    #[default]
    MinEcart,
    FirstFound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strategy {
    pub pair_selection: PairSelection,
    pub reducer_selection: ReducerSelection,
    pub product_criterion: bool,
    pub chain_criterion: bool,
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy {
            pair_selection: PairSelection::Sugar,
            reducer_selection: ReducerSelection::MinEcart,
            product_criterion: true,
            chain_criterion: true,
        }
    }
}

impl Strategy {
    /// Every combination of the strategy switches.
    pub fn all() -> Vec<Strategy> {
        let mut out = Vec::new();
        for pair_selection in [PairSelection::Sugar, PairSelection::MinLcmDegree, PairSelection::Fifo] {
            for reducer_selection in [ReducerSelection::MinEcart, ReducerSelection::FirstFound] {
                for product_criterion in [true, false] {
                    for chain_criterion in [true, false] {
                        out.push(Strategy {
                            pair_selection,
                            reducer_selection,
                            product_criterion,
                            chain_criterion,
                        });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = match self.pair_selection {
            PairSelection::MinLcmDegree => "min-lcm-degree",
            PairSelection::Sugar => "sugar",
            PairSelection::Fifo => "fifo",
        };
        let red = match self.reducer_selection {
            ReducerSelection::MinEcart => "min-ecart",
            ReducerSelection::FirstFound => "first-found",
        };
        write!(f, "{pairs}/{red}")?;
        if !self.product_criterion {
            f.write_str("/no-product")?;
        }
        if !self.chain_criterion {
            f.write_str("/no-chain")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalFormMode {
    Buchberger,
    Mora,
}

/// Default ceiling on elementary reduction steps per computation.
pub const DEFAULT_CEILING: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StdConfig {
    pub strategy: Strategy,
    /// `None` picks Buchberger for global orderings and Mora otherwise.
    pub mode: Option<NormalFormMode>,
    pub ceiling: u64,
    /// Use highest-corner truncation for local degree orderings.
    pub truncate: bool,
}

impl Default for StdConfig {
    fn default() -> Self {
        StdConfig {
            strategy: Strategy::default(),
            mode: None,
            ceiling: DEFAULT_CEILING,
            truncate: true,
        }
    }
}

impl StdConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        StdConfig {
            strategy,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Stats {
    pub pairs: u64,
    pub discarded: u64,
    pub reductions: u64,
    pub millis: u64,
}

/// A minimalized standard basis with normalized leading coefficients.
#[derive(Debug, Clone)]
pub struct StandardBasis<F: Field> {
    ring: Ring<F>,
    rank: u32,
    generators: Vec<VectorElement<F>>,
    /// Degree bound `N` with `m^N · F` inside the module, when found.
    corner_bound: Option<u32>,
    stats: Stats,
}

impl<F: Field> StandardBasis<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn generators(&self) -> &[VectorElement<F>] {
        &self.generators
    }

    /// Generators as polynomials; only meaningful for ideals.
    pub fn polynomials(&self) -> Result<Vec<Polynomial<F>>> {
        self.generators.iter().map(|g| g.component(1)).collect()
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn corner_bound(&self) -> Option<u32> {
        self.corner_bound
    }

    /// Leading monomials with their components.
    pub fn leading_terms(&self) -> Vec<(Monomial, u32)> {
        self.generators
            .iter()
            .filter_map(|g| g.leading_term().map(|t| (t.mono.clone(), t.comp)))
            .collect()
    }

    pub fn staircase(&self) -> Staircase {
        Staircase::new(self.ring.nvars(), self.rank, self.leading_terms(), self.corner_bound)
    }

    /// Dimension of the quotient; `None` when infinite.
    pub fn vdim(&self) -> Option<u64> {
        self.staircase().vdim()
    }

    /// The standard monomials, sorted decreasingly by the module ordering.
    pub fn kbase(&self) -> Result<Vec<(Monomial, u32)>> {
        let mut v = self
            .staircase()
            .standard_monomials()
            .ok_or(Error::InfiniteDimensional)?;
        let ord = self.ring.ordering();
        v.sort_by(|a, b| ord.cmp_module_terms(&b.0, b.1, &a.0, a.1));
        Ok(v)
    }

    pub fn highest_corner(&self) -> Result<u32> {
        self.staircase().highest_corner().ok_or(Error::InfiniteDimensional)
    }

    /// Mora normal form against the basis (weak normal form for local
    /// orderings). Terms beyond the corner bound are dropped.
    pub fn reduce(&self, f: &VectorElement<F>) -> Result<VectorElement<F>> {
        if f.ring() != &self.ring && **f.ring() != *self.ring {
            return Err(Error::RingMismatch);
        }
        if f.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank as usize,
                got: f.rank() as usize,
            });
        }
        let field = self.ring.field();
        let reducers = self
            .generators
            .iter()
            .map(|g| make_reducer(field, g.terms().to_vec(), 0))
            .collect::<Result<Vec<_>>>()?;
        let mut ctx = engine::NfContext::new(&self.ring, self.rank, DEFAULT_CEILING);
        ctx.bound = self.corner_bound;
        let terms = ctx.nf_mora(f.terms().to_vec(), &reducers, ReducerSelection::MinEcart, None)?;
        Ok(VectorElement::from_sorted_terms(&self.ring, self.rank, terms))
    }

    /// Membership in the module generated over the localization of the
    /// polynomial ring determined by the ordering.
    pub fn contains(&self, f: &VectorElement<F>) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn contains_poly(&self, f: &Polynomial<F>) -> Result<bool> {
        self.contains(&VectorElement::from_polynomial(f))
    }
}

/// Standard basis of the submodule generated by `generators`.
pub fn std<F: Field>(
    ring: &Ring<F>,
    rank: u32,
    generators: &[VectorElement<F>],
    config: &StdConfig,
) -> Result<StandardBasis<F>> {
    for g in generators {
        if g.ring() != ring && **g.ring() != **ring {
            return Err(Error::RingMismatch);
        }
        if g.rank() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank as usize,
                got: g.rank() as usize,
            });
        }
    }
    if config.truncate && ring.ordering().is_local_degree_ordering() {
        // Guessing a corner up front avoids the long phase before the
        // leading terms reveal one; a wrong guess only costs time.
        let d = generators
            .iter()
            .map(|g| reduce::max_degree(g.terms()))
            .max()
            .unwrap_or(0);
        let mut guess = 2 * d + 2;
        for _ in 0..CORNER_GUESSES {
            if let Some(b) = engine::Engine::new(ring, rank, config, Some(guess))?.run(generators)? {
                return Ok(b);
            }
            guess += guess / 2;
        }
    }
    let b = engine::Engine::new(ring, rank, config, None)?.run(generators)?;
    Ok(b.expect("runs without a guess always complete"))
}

const CORNER_GUESSES: usize = 3;

/// Standard basis of an ideal.
pub fn std_ideal<F: Field>(
    ring: &Ring<F>,
    generators: &[Polynomial<F>],
    config: &StdConfig,
) -> Result<StandardBasis<F>> {
    let vs: Vec<VectorElement<F>> = generators.iter().map(VectorElement::from_polynomial).collect();
    std(ring, 1, &vs, config)
}

/// `deg(f) - deg(LM(f))`.
pub fn ecart<F: Field>(f: &VectorElement<F>) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(ecart_of(f.terms()))
}

pub fn ecart_poly<F: Field>(f: &Polynomial<F>) -> Result<u32> {
    ecart(&VectorElement::from_polynomial(f))
}

/// S-polynomial `lc(g)·(l/lm f)·f − lc(f)·(l/lm g)·g`, `l` the lcm of
/// the leading monomials.
pub fn spoly<F: Field>(f: &VectorElement<F>, g: &VectorElement<F>) -> Result<VectorElement<F>> {
    if f.ring() != g.ring() && **f.ring() != **g.ring() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ring = f.ring();
    let terms = reduce::spoly_terms(ring.field(), ring.ordering(), f.terms(), g.terms(), None, false)?;
    Ok(VectorElement::from_sorted_terms(ring, f.rank(), terms))
}

pub fn spoly_poly<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
    spoly(&VectorElement::from_polynomial(f), &VectorElement::from_polynomial(g))?.component(1)
}

/// Normal form of `h` with respect to `reducers`.
///
/// Buchberger mode performs plain leading-term reduction and needs a
/// global ordering. Mora mode computes a weak normal form valid for every
/// ordering.
pub fn normal_form<F: Field>(
    h: &VectorElement<F>,
    reducers: &[VectorElement<F>],
    mode: NormalFormMode,
    strategy: &Strategy,
) -> Result<VectorElement<F>> {
    let ring = h.ring();
    if mode == NormalFormMode::Buchberger && !ring.ordering().is_global() {
        return Err(Error::ModeOrderingMismatch);
    }
    let field = ring.field();
    let rs: Vec<Reducer<F::Elem>> = reducers
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            if g.ring() != ring && **g.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            make_reducer(field, g.terms().to_vec(), 0)
        })
        .collect::<Result<_>>()?;
    let mut ctx = engine::NfContext::new(ring, h.rank(), DEFAULT_CEILING);
    let terms = match mode {
        NormalFormMode::Buchberger => ctx.nf_buchberger(h.terms().to_vec(), &rs, strategy.reducer_selection)?,
        NormalFormMode::Mora => ctx.nf_mora(h.terms().to_vec(), &rs, strategy.reducer_selection, None)?,
    };
    Ok(VectorElement::from_sorted_terms(ring, h.rank(), terms))
}

pub fn normal_form_poly<F: Field>(
    h: &Polynomial<F>,
    reducers: &[Polynomial<F>],
    mode: NormalFormMode,
    strategy: &Strategy,
) -> Result<Polynomial<F>> {
    let rs: Vec<VectorElement<F>> = reducers.iter().map(VectorElement::from_polynomial).collect();
    normal_form(&VectorElement::from_polynomial(h), &rs, mode, strategy)?.component(1)
}
