//! Multiplicity, Milnor and Tjurina numbers of hypersurface and space-curve
//! germs, quasi-homogeneity, and the two example families.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::coeff::{Field, Rational, Rationals};
use crate::error::{Error, Result};
use crate::ring::{jacobian_minors, BlockKind, Monomial, OrderingSpec, Polynomial, Ring};
use crate::stdbasis::{std_ideal, StandardBasis, StdConfig};

/// A vector space dimension that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl Dim {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dim::Finite(n) => Some(n),
            Dim::Infinite => None,
        }
    }
}

impl From<Option<u64>> for Dim {
    fn from(v: Option<u64>) -> Self {
        v.map_or(Dim::Infinite, Dim::Finite)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(n) => s.serialize_u64(*n),
            Dim::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuasiHomogeneous {
    Yes,
    No,
    Undetermined,
}

impl fmt::Display for QuasiHomogeneous {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuasiHomogeneous::Yes => "yes",
            QuasiHomogeneous::No => "no",
            QuasiHomogeneous::Undetermined => "undetermined",
        })
    }
}

fn require_local<F: Field>(ring: &Ring<F>) -> Result<()> {
    if ring.ordering().is_local() {
        Ok(())
    } else {
        Err(Error::InvalidOrdering(format!(
            "local ordering required, got {}",
            ring.ordering().token()
        )))
    }
}

fn require_vanishing<F: Field>(f: &Polynomial<F>) -> Result<()> {
    if f.ring().field().is_zero(&f.constant_coefficient()) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!("{f} does not vanish at the origin")))
    }
}

/// A hypersurface germ `f = 0` at the origin.
#[derive(Debug, Clone)]
pub struct HypersurfaceGerm<F: Field> {
    f: Polynomial<F>,
}

impl<F: Field> HypersurfaceGerm<F> {
    pub fn new(f: Polynomial<F>) -> Result<Self> {
        require_local(f.ring())?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        require_vanishing(&f)?;
        Ok(HypersurfaceGerm { f })
    }

    pub fn f(&self) -> &Polynomial<F> {
        &self.f
    }

    pub fn ring(&self) -> &Ring<F> {
        self.f.ring()
    }
}

/// A space curve germ `f = g = 0` in three variables.
#[derive(Debug, Clone)]
pub struct SpaceCurveGerm<F: Field> {
    f: Polynomial<F>,
    g: Polynomial<F>,
}

impl<F: Field> SpaceCurveGerm<F> {
    pub fn new(f: Polynomial<F>, g: Polynomial<F>) -> Result<Self> {
        require_local(f.ring())?;
        if f.ring() != g.ring() && **f.ring() != **g.ring() {
            return Err(Error::RingMismatch);
        }
        if f.ring().nvars() != 3 {
            return Err(Error::WrongVariableCount {
                expected: 3,
                got: f.ring().nvars(),
            });
        }
        require_vanishing(&f)?;
        require_vanishing(&g)?;
        Ok(SpaceCurveGerm { f, g })
    }

    pub fn f(&self) -> &Polynomial<F> {
        &self.f
    }

    pub fn g(&self) -> &Polynomial<F> {
        &self.g
    }

    pub fn ring(&self) -> &Ring<F> {
        self.f.ring()
    }

    /// The same curve with the equations swapped.
    pub fn swapped(&self) -> Self {
        SpaceCurveGerm {
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    /// `⟨f, g, M1, M2, M3⟩`.
    pub fn tjurina_ideal(&self) -> Result<Vec<Polynomial<F>>> {
        let mut gens = vec![self.f.clone(), self.g.clone()];
        gens.extend(jacobian_minors(&self.f, &self.g)?);
        Ok(gens)
    }
}

fn vdim_of<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>], cfg: &StdConfig) -> Result<Dim> {
    Ok(std_ideal(ring, gens, cfg)?.vdim().into())
}

pub fn milnor_hypersurface<F: Field>(germ: &HypersurfaceGerm<F>, cfg: &StdConfig) -> Result<Dim> {
    vdim_of(germ.ring(), &germ.f.gradient()?, cfg)
}

pub fn tjurina_hypersurface<F: Field>(germ: &HypersurfaceGerm<F>, cfg: &StdConfig) -> Result<Dim> {
    let mut gens = germ.f.gradient()?;
    gens.push(germ.f.clone());
    vdim_of(germ.ring(), &gens, cfg)
}

/// Order of `f` at the origin.
pub fn multiplicity_hypersurface<F: Field>(germ: &HypersurfaceGerm<F>) -> Result<u32> {
    germ.f.order_of()
}

/// `dim O/⟨f, M1, M2, M3⟩ − dim O/j(f)`. Fails with `NonIsolated` when
/// the first space is finite but `f` alone has a non-isolated singularity.
pub fn milnor_space_curve<F: Field>(germ: &SpaceCurveGerm<F>, cfg: &StdConfig) -> Result<Dim> {
    let ring = germ.ring();
    let mut gens = vec![germ.f.clone()];
    gens.extend(jacobian_minors(&germ.f, &germ.g)?);
    let Dim::Finite(a) = vdim_of(ring, &gens, cfg)? else {
        return Ok(Dim::Infinite);
    };
    let Dim::Finite(b) = vdim_of(ring, &germ.f.gradient()?, cfg)? else {
        return Err(Error::NonIsolated);
    };
    a.checked_sub(b)
        .map(Dim::Finite)
        .ok_or_else(|| Error::ParameterOutOfRange(format!("negative Milnor number {a} - {b}")))
}

pub fn tjurina_space_curve<F: Field>(germ: &SpaceCurveGerm<F>, cfg: &StdConfig) -> Result<Dim> {
    vdim_of(germ.ring(), &germ.tjurina_ideal()?, cfg)
}

/// Multiplicity of the curve: the eventually constant number of standard
/// monomials of degree `d` for a degree-compatible local ordering.
pub fn multiplicity_space_curve<F: Field>(germ: &SpaceCurveGerm<F>, cfg: &StdConfig) -> Result<u32> {
    let ring = germ.ring();
    let ds = ring.with_ordering(OrderingSpec::single(BlockKind::NegDegRevLex, 3)?)?;
    let gens = [germ.f.to_ring(&ds)?, germ.g.to_ring(&ds)?];
    let b = std_ideal(
        &ds,
        &gens,
        &StdConfig {
            truncate: false,
            ..*cfg
        },
    )?;
    let leads: Vec<Monomial> = b.leading_terms().into_iter().map(|(m, _)| m).collect();
    if leads.iter().any(Monomial::is_one) {
        return Ok(0);
    }
    let lcm = leads.iter().skip(1).fold(leads[0].clone(), |a, m| a.lcm(m));
    let start = lcm.degree().max(1);
    let count = |d: u32| -> u32 {
        let mut n = 0;
        for a in 0..=d {
            for b in 0..=d - a {
                let m = Monomial::new(&[a, b, d - a - b]).expect("small exponents");
                if !leads.iter().any(|l| l.divides(&m)) {
                    n += 1;
                }
            }
        }
        n
    };
    // the Hilbert function of a monomial quotient is polynomial beyond the
    // degree of the lcm of its generators; for a curve it is constant
    let (c0, c1) = (count(start), count(start + 1));
    if c0 != c1 {
        return Err(Error::ParameterOutOfRange("germ is not a curve".into()));
    }
    Ok(c0)
}

/// Compares `μ` and `τ`; over characteristic `p` the answer is flagged as
/// undetermined since the criterion is a statement over the complex numbers.
pub fn quasihomogeneity_from(mu: Dim, tau: Dim, characteristic: u64) -> Result<QuasiHomogeneous> {
    let (Dim::Finite(m), Dim::Finite(t)) = (mu, tau) else {
        return Err(Error::NonIsolated);
    };
    if characteristic != 0 {
        return Ok(QuasiHomogeneous::Undetermined);
    }
    Ok(if m == t {
        QuasiHomogeneous::Yes
    } else {
        QuasiHomogeneous::No
    })
}

pub fn is_quasihomogeneous_hypersurface<F: Field>(
    germ: &HypersurfaceGerm<F>,
    cfg: &StdConfig,
) -> Result<QuasiHomogeneous> {
    let mu = milnor_hypersurface(germ, cfg)?;
    let tau = tjurina_hypersurface(germ, cfg)?;
    quasihomogeneity_from(mu, tau, germ.ring().characteristic())
}

pub fn is_quasihomogeneous_space_curve<F: Field>(
    germ: &SpaceCurveGerm<F>,
    cfg: &StdConfig,
) -> Result<QuasiHomogeneous> {
    let mu = milnor_space_curve(germ, cfg)?;
    let tau = tjurina_space_curve(germ, cfg)?;
    quasihomogeneity_from(mu, tau, germ.ring().characteristic())
}

/// Positive weights making every term of `f` of weighted degree 1.
///
/// The system is brought to reduced row echelon form; free weights are then
/// fixed one at a time, each at the midpoint of its feasible open interval
/// (or one above the lower end when unbounded), with Fourier–Motzkin
/// elimination projecting the positivity constraints onto that weight.
pub fn find_weights<F: Field>(f: &Polynomial<F>) -> Result<Option<Vec<Rational>>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.ring().nvars();
    let q = Rationals;
    let mut rows: Vec<Vec<Rational>> = f
        .terms()
        .iter()
        .map(|t| {
            let mut r: Vec<Rational> = (0..n)
                .map(|i| Rational::from_integer(t.mono.exponent(i) as i64))
                .collect();
            r.push(Rational::one());
            r
        })
        .collect();
    let pivots = rref(&q, &mut rows, n)?;
    if rows
        .iter()
        .any(|r| r[..n].iter().all(Rational::is_zero) && !r[n].is_zero())
    {
        return Ok(None);
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // weight i = const_i + Σ coeff_ij * t_j over free columns j
    let mut affine: Vec<(Rational, Vec<Rational>)> = Vec::with_capacity(n);
    for i in 0..n {
        let mut coeffs = vec![Rational::zero(); free.len()];
        if let Some(k) = free.iter().position(|&c| c == i) {
            coeffs[k] = Rational::one();
            affine.push((Rational::zero(), coeffs));
        } else {
            let r = pivots.iter().position(|&p| p == i).expect("pivot row");
            for (k, &c) in free.iter().enumerate() {
                coeffs[k] = -&rows[r][c];
            }
            affine.push((rows[r][n].clone(), coeffs));
        }
    }
    let mut chosen: Vec<Rational> = Vec::new();
    for k in 0..free.len() {
        // constraints const + Σ_j a_j t_j > 0 in the unfixed variables t_k..
        let mut cons: Vec<(Rational, Vec<Rational>)> = affine
            .iter()
            .map(|(c0, a)| {
                let mut c = c0.clone();
                for (j, v) in chosen.iter().enumerate() {
                    c = &c + &(&a[j] * v);
                }
                (c, a[k..].to_vec())
            })
            .collect();
        // eliminate t_{k+1}.. (positions 1.. in the reduced vectors)
        for v in (1..free.len() - k).rev() {
            cons = fourier_motzkin(cons, v)?;
        }
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for (c, a) in &cons {
            let a0 = &a[0];
            if a0.is_zero() {
                if !c.is_positive() {
                    return Ok(None);
                }
                continue;
            }
            let bound = q.div(&-c, a0)?;
            if a0.is_positive() {
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
        let value = match (lo, hi) {
            (Some(l), Some(h)) if l >= h => return Ok(None),
            (Some(l), Some(h)) => q.div(&(&l + &h), &Rational::from_integer(2))?,
            (Some(l), None) => &l + &Rational::one(),
            (None, Some(h)) => &h - &Rational::one(),
            (None, None) => Rational::one(),
        };
        chosen.push(value);
    }
    let mut w = Vec::with_capacity(n);
    for (c0, a) in &affine {
        let mut c = c0.clone();
        for (j, v) in chosen.iter().enumerate() {
            c = &c + &(&a[j] * v);
        }
        if !c.is_positive() {
            return Ok(None);
        }
        w.push(c);
    }
    Ok(Some(w))
}

/// Eliminates variable `v` from strict constraints `c + a·t > 0`.
fn fourier_motzkin(cons: Vec<(Rational, Vec<Rational>)>, v: usize) -> Result<Vec<(Rational, Vec<Rational>)>> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for (c, a) in cons {
        if a[v].is_zero() {
            out.push((c, a));
        } else if a[v].is_positive() {
            pos.push((c, a));
        } else {
            neg.push((c, a));
        }
    }
    for (cp, ap) in &pos {
        for (cn, an) in &neg {
            // scale so the coefficients of t_v cancel: (-an_v)·P + ap_v·N
            let sp = -&an[v];
            let sn = ap[v].clone();
            let c = &(&sp * cp) + &(&sn * cn);
            let a: Vec<Rational> = ap.iter().zip(an).map(|(x, y)| &(&sp * x) + &(&sn * y)).collect();
            out.push((c, a));
        }
    }
    Ok(out)
}

/// In-place reduced row echelon form over the first `ncols` columns.
/// Returns the pivot column of each leading row.
fn rref(q: &Rationals, rows: &mut [Vec<Rational>], ncols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = q.inv(&rows[r][c])?;
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// `FT_{k,l}`: `f = xy + z^(l-1)`, `g = xz + yz^2 + y^(k-1)`, defined for
/// `4 <= l <= k` and `k >= 5`.
pub fn ft_germ<F: Field>(ring: &Ring<F>, k: u32, l: u32) -> Result<SpaceCurveGerm<F>> {
    if !(4 <= l && l <= k && k >= 5) {
        return Err(Error::ParameterOutOfRange(format!(
            "FT needs 4 <= l <= k and k >= 5, got k={k}, l={l}"
        )));
    }
    if ring.nvars() != 3 {
        return Err(Error::WrongVariableCount {
            expected: 3,
            got: ring.nvars(),
        });
    }
    let one = ring.field().one();
    let m = |e: [u32; 3]| -> Result<Polynomial<F>> { Ok(Polynomial::monomial(ring, one.clone(), Monomial::new(&e)?)) };
    let f = m([1, 1, 0])?.add(&m([0, 0, l - 1])?)?;
    let g = m([1, 0, 1])?.add(&m([0, 1, 2])?)?.add(&m([0, k - 1, 0])?)?;
    SpaceCurveGerm::new(f, g)
}

/// `F_t = x^a + y^b + z^(3c) + x^(c+2) y^(c-1) + x^(c-1) y^(c-1) z^3
/// + x^(c-2) y^c (y^2 + t x)^2`, expanded.
pub fn zariski_family<F: Field>(ring: &Ring<F>, a: u32, b: u32, c: u32, t: &Rational) -> Result<Polynomial<F>> {
    if a < 1 || b < 1 || c < 3 {
        return Err(Error::ParameterOutOfRange(format!(
            "Zariski family needs a, b >= 1 and c >= 3, got a={a}, b={b}, c={c}"
        )));
    }
    if ring.nvars() != 3 {
        return Err(Error::WrongVariableCount {
            expected: 3,
            got: ring.nvars(),
        });
    }
    let field = ring.field();
    let one = field.one();
    let m = |e: [u32; 3]| -> Result<Polynomial<F>> { Ok(Polynomial::monomial(ring, one.clone(), Monomial::new(&e)?)) };
    let tc = field.from_ratio(t.numer(), t.denom())?;
    let inner = m([0, 2, 0])?.add(&m([1, 0, 0])?.scale(&tc))?;
    let last = m([c - 2, c, 0])?.mul(&inner.pow(2)?)?;
    m([a, 0, 0])?
        .add(&m([0, b, 0])?)?
        .add(&m([0, 0, 3 * c])?)?
        .add(&m([c + 2, c - 1, 0])?)?
        .add(&m([c - 1, c - 1, 3])?)?
        .add(&last)
}

/// Parses `t` given as an integer or a fraction `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParameterOutOfRange(format!("not a rational number: {s}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    Ok(Rational::new(n, d)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub kind: &'static str,
    pub mu: Dim,
    /// Milnor number with the equations swapped, when it differs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_swapped: Option<Dim>,
    pub tau: Dim,
    pub multiplicity: u32,
    pub quasi_homogeneous: QuasiHomogeneous,
    pub characteristic: u64,
    pub ordering: String,
    /// `mu >= tau`; a sanity bound, not a theorem used anywhere.
    pub mu_at_least_tau: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn char_note(p: u64) -> Option<String> {
    (p != 0).then(|| format!("computed over F_{p}; values are expected to agree with characteristic 0"))
}

fn finish(
    kind: &'static str,
    mu: Dim,
    mu_swapped: Option<Dim>,
    tau: Dim,
    mult: u32,
    ring_p: u64,
    ord: String,
) -> InvariantReport {
    let quasi_homogeneous = quasihomogeneity_from(mu, tau, ring_p).unwrap_or(QuasiHomogeneous::Undetermined);
    let mu_at_least_tau = match (mu, tau) {
        (Dim::Finite(m), Dim::Finite(t)) => m >= t,
        _ => true,
    };
    InvariantReport {
        kind,
        mu,
        mu_swapped,
        tau,
        multiplicity: mult,
        quasi_homogeneous,
        characteristic: ring_p,
        ordering: ord,
        mu_at_least_tau,
        note: char_note(ring_p),
    }
}

pub fn hypersurface_report<F: Field>(germ: &HypersurfaceGerm<F>, cfg: &StdConfig) -> Result<InvariantReport> {
    let mu = milnor_hypersurface(germ, cfg)?;
    let tau = tjurina_hypersurface(germ, cfg)?;
    let ring = germ.ring();
    Ok(finish(
        "hypersurface",
        mu,
        None,
        tau,
        multiplicity_hypersurface(germ)?,
        ring.characteristic(),
        ring.ordering().token(),
    ))
}

pub fn space_curve_report<F: Field>(germ: &SpaceCurveGerm<F>, cfg: &StdConfig) -> Result<InvariantReport> {
    let mu = milnor_space_curve(germ, cfg)?;
    let swapped = match milnor_space_curve(&germ.swapped(), cfg) {
        Ok(m) => m,
        Err(Error::NonIsolated) => Dim::Infinite,
        Err(e) => return Err(e),
    };
    let tau = tjurina_space_curve(germ, cfg)?;
    let ring = germ.ring();
    Ok(finish(
        "space-curve",
        mu,
        (swapped != mu).then_some(swapped),
        tau,
        multiplicity_space_curve(germ, cfg)?,
        ring.characteristic(),
        ring.ordering().token(),
    ))
}

/// Standard basis of the Jacobian ideal, exposed for callers that need more
/// than its dimension.
pub fn jacobian_basis<F: Field>(germ: &HypersurfaceGerm<F>, cfg: &StdConfig) -> Result<StandardBasis<F>> {
    std_ideal(germ.ring(), &germ.f.gradient()?, cfg)
}
