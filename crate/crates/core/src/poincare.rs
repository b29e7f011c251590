//! Differential forms on three-space, the exterior derivative, the spaces
//! `Ω^k` of a space curve and Reiffen's exactness criterion for its
//! Poincaré complex.
//!
//! Basis conventions: `Ω¹ = (dx, dy, dz)`, `Ω² = (dy∧dz, dz∧dx, dx∧dy)`,
//! `Ω³ = (dx∧dy∧dz)`. With this choice `d` on 2-forms is the divergence.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::invariants::{
    milnor_space_curve, quasihomogeneity_from, tjurina_space_curve, Dim, QuasiHomogeneous, SpaceCurveGerm,
};
use crate::linalg::Echelon;
use crate::ring::{Monomial, Polynomial, Ring, VectorElement};
use crate::stdbasis::{std, std_ideal, StdConfig};

/// Canonical basis element: sorted index set and the sign relating it to
/// the plain wedge of those indices in increasing order.
const BASIS: [&[(&[usize], i64)]; 4] = [
    &[(&[], 1)],
    &[(&[0], 1), (&[1], 1), (&[2], 1)],
    &[(&[1, 2], 1), (&[0, 2], -1), (&[0, 1], 1)],
    &[(&[0, 1, 2], 1)],
];

fn binomial3(k: usize) -> usize {
    BASIS[k].len()
}

/// Sign of the shuffle putting `a ++ b` into increasing order; `None` if
/// they share an index.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut inversions = 0;
    for x in a {
        for y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    Some((u, if inversions % 2 == 0 { 1 } else { -1 }))
}

fn canonical_position(k: usize, set: &[usize]) -> (usize, i64) {
    let i = BASIS[k]
        .iter()
        .position(|(s, _)| *s == set)
        .expect("basis covers all subsets");
    (i, BASIS[k][i].1)
}

/// A differential form of degree `k` on three-space.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialForm<F: Field> {
    degree: usize,
    coeffs: Vec<Polynomial<F>>,
}

impl<F: Field> DifferentialForm<F> {
    pub fn new(degree: usize, coeffs: Vec<Polynomial<F>>) -> Result<Self> {
        if degree > 3 {
            return Err(Error::DegreeOverflow);
        }
        if coeffs.len() != binomial3(degree) {
            return Err(Error::DimensionMismatch {
                expected: binomial3(degree),
                got: coeffs.len(),
            });
        }
        let ring = coeffs[0].ring();
        if ring.nvars() != 3 {
            return Err(Error::WrongVariableCount {
                expected: 3,
                got: ring.nvars(),
            });
        }
        if coeffs.iter().any(|c| c.ring() != ring && **c.ring() != **ring) {
            return Err(Error::RingMismatch);
        }
        Ok(DifferentialForm { degree, coeffs })
    }

    pub fn zero(ring: &Ring<F>, degree: usize) -> Result<Self> {
        Self::new(degree, vec![Polynomial::zero(ring); binomial3(degree.min(3))])
    }

    pub fn function(f: Polynomial<F>) -> Result<Self> {
        Self::new(0, vec![f])
    }

    /// The basis form number `i` of degree `k`, times `c`.
    pub fn basis(ring: &Ring<F>, k: usize, i: usize, c: Polynomial<F>) -> Result<Self> {
        let mut w = Self::zero(ring, k)?;
        if i >= w.coeffs.len() {
            return Err(Error::IndexOutOfRange(i));
        }
        w.coeffs[i] = c;
        Ok(w)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Polynomial<F>] {
        &self.coeffs
    }

    pub fn ring(&self) -> &Ring<F> {
        self.coeffs[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(DifferentialForm {
            degree: self.degree,
            coeffs,
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        DifferentialForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring().field().neg(&self.ring().field().one()))
    }

    pub fn mul_poly(&self, p: &Polynomial<F>) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| a.mul(p)).collect::<Result<_>>()?;
        Ok(DifferentialForm {
            degree: self.degree,
            coeffs,
        })
    }
}

impl<F: Field> fmt::Display for DifferentialForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&[&str]; 4] = [&["1"], &["dx", "dy", "dz"], &["dy^dz", "dz^dx", "dx^dy"], &["dx^dy^dz"]];
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(NAMES[self.degree]) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*{name}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `a ∧ b`.
pub fn wedge<F: Field>(a: &DifferentialForm<F>, b: &DifferentialForm<F>) -> Result<DifferentialForm<F>> {
    let k = a.degree + b.degree;
    if k > 3 {
        return Err(Error::DegreeOverflow);
    }
    let ring = a.ring();
    let field = ring.field();
    let mut out = vec![Polynomial::zero(ring); binomial3(k)];
    for (i, (sa, ea)) in BASIS[a.degree].iter().enumerate() {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for (j, (sb, eb)) in BASIS[b.degree].iter().enumerate() {
            if b.coeffs[j].is_zero() {
                continue;
            }
            let Some((u, s)) = merge_sign(sa, sb) else {
                continue;
            };
            let (pos, eu) = canonical_position(k, &u);
            let sign = ea * eb * s * eu;
            let term = a.coeffs[i].mul(&b.coeffs[j])?.scale(&field.from_i64(sign));
            out[pos] = out[pos].add(&term)?;
        }
    }
    DifferentialForm::new(k, out)
}

/// `df` for a function, as a 1-form.
pub fn differential<F: Field>(f: &Polynomial<F>) -> Result<DifferentialForm<F>> {
    DifferentialForm::new(1, f.gradient()?)
}

/// The exterior derivative.
pub fn exterior_derivative<F: Field>(a: &DifferentialForm<F>) -> Result<DifferentialForm<F>> {
    if a.degree >= 3 {
        return Err(Error::DegreeOverflow);
    }
    let ring = a.ring();
    let mut out = DifferentialForm::zero(ring, a.degree + 1)?;
    for (i, c) in a.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = DifferentialForm::basis(ring, a.degree, i, Polynomial::one(ring))?;
        out = out.add(&wedge(&differential(c)?, &e)?)?;
    }
    Ok(out)
}

fn require_curve<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<SpaceCurveGerm<F>> {
    SpaceCurveGerm::new(f.clone(), g.clone())
}

/// Generators of `⟨f,g⟩·Ω^k + df∧Ω^{k-1} + dg∧Ω^{k-1}` inside the free
/// module `Ω^k`, for `k` in `{2, 3}`.
pub fn omega_presentation<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, k: usize) -> Result<Vec<VectorElement<F>>> {
    if !(2..=3).contains(&k) {
        return Err(Error::ParameterOutOfRange(format!(
            "omega presentation needs k in {{2, 3}}, got {k}"
        )));
    }
    let ring = f.ring();
    let mut forms = Vec::new();
    for h in [f, g] {
        for i in 0..binomial3(k) {
            forms.push(DifferentialForm::basis(ring, k, i, h.clone())?);
        }
    }
    for h in [f, g] {
        let dh = differential(h)?;
        for i in 0..binomial3(k - 1) {
            forms.push(wedge(
                &dh,
                &DifferentialForm::basis(ring, k - 1, i, Polynomial::one(ring))?,
            )?);
        }
    }
    forms
        .iter()
        .map(|w| VectorElement::from_components(ring, &w.coeffs))
        .collect()
}

/// `dim Ω^k_{X,0}` of the curve `f = g = 0`, `k` in `{2, 3}`. For `k = 3`
/// the module computation is checked against the ideal
/// `⟨f,g⟩ + j(f) + j(g)`.
pub fn omega_dimension<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, k: usize, cfg: &StdConfig) -> Result<Dim> {
    require_curve(f, g)?;
    let gens = omega_presentation(f, g, k)?;
    let rank = binomial3(k) as u32;
    let module: Dim = std(f.ring(), rank, &gens, cfg)?.vdim().into();
    if k == 3 {
        let ideal: Dim = std_ideal(f.ring(), &omega3_ideal(f, g)?, cfg)?.vdim().into();
        if ideal != module {
            return Err(Error::InvalidRing(format!(
                "Ω³ dimension mismatch: module {module}, ideal {ideal}"
            )));
        }
    }
    Ok(module)
}

/// `⟨f, g⟩ + j(f) + j(g)`.
pub fn omega3_ideal<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Vec<Polynomial<F>>> {
    let mut gens = vec![f.clone(), g.clone()];
    gens.extend(f.gradient()?);
    gens.extend(g.gradient()?);
    Ok(gens)
}

/// Requested truncation order for condition (1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Auto,
    Fixed(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Condition1 {
    /// Holds modulo `m^order`; with order 0 the statement is vacuous.
    Verified {
        order: u32,
        vacuous: bool,
    },
    RefutedAt {
        order: u32,
    },
}

impl Condition1 {
    pub fn is_verified(&self) -> bool {
        matches!(self, Condition1::Verified { .. })
    }
}

/// Resolves `Order::Auto` to the highest corner of
/// `⟨f,g⟩ + j(f) + j(g)` plus two.
pub fn resolve_order<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, order: Order, cfg: &StdConfig) -> Result<u32> {
    match order {
        Order::Fixed(n) => Ok(n),
        Order::Auto => {
            let b = std_ideal(f.ring(), &omega3_ideal(f, g)?, cfg)?;
            match b.highest_corner() {
                Ok(hc) => Ok(hc + 2),
                Err(Error::InfiniteDimensional) => Err(Error::NonIsolated),
                Err(e) => Err(e),
            }
        }
    }
}

/// Largest number of unknowns condition (1) will set up.
const MAX_COLUMNS: usize = 2_000_000;

/// Condition (1), `⟨f,g⟩·Ω³ ⊂ d(⟨f,g⟩·Ω²)`, decided modulo `m^N`.
///
/// `d(a·dy∧dz + b·dz∧dx + c·dx∧dy) = (a_x + b_y + c_z)·dx∧dy∧dz`, so the
/// right side is spanned by `∂(m·h)/∂x_i` for monomials `m` and `h` in
/// `{f, g}`. Multipliers of degree above `multiplier_bound` are not used;
/// the default bound `N` already suffices since `d` lowers degree by one.
/// Every `m·h` with `deg m < N` must lie in that span modulo `m^N`.
pub fn reiffen_condition_1<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    order: Order,
    multiplier_bound: Option<u32>,
    cfg: &StdConfig,
) -> Result<Condition1> {
    require_curve(f, g)?;
    let n = resolve_order(f, g, order, cfg)?;
    if n == 0 {
        return Ok(Condition1::Verified {
            order: 0,
            vacuous: true,
        });
    }
    let ring = f.ring();
    let field = ring.field().clone();
    let columns = monomials_below(3, n);
    if columns.len() > MAX_COLUMNS {
        return Err(Error::ResourceExhausted(columns.len() as u64));
    }
    let index: HashMap<Monomial, usize> = columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let row_of = |p: &Polynomial<F>| -> Vec<(usize, F::Elem)> {
        let mut row: Vec<(usize, F::Elem)> = p
            .terms()
            .iter()
            .filter_map(|t| index.get(&t.mono).map(|&i| (i, t.coeff.clone())))
            .collect();
        row.sort_by_key(|(i, _)| *i);
        row
    };
    let bound = multiplier_bound.unwrap_or(n);
    let mut span = Echelon::new(field);
    for m in monomials_below(3, bound + 1) {
        let mp = Polynomial::monomial(ring, ring.field().one(), m);
        for h in [f, g] {
            let mh = mp.mul(h)?;
            for i in 0..3 {
                span.insert(row_of(&mh.partial_derivative(i)?))?;
            }
        }
    }
    for m in &columns {
        let mp = Polynomial::monomial(ring, ring.field().one(), m.clone());
        for h in [f, g] {
            if !span.contains(row_of(&mp.mul(h)?))? {
                return Ok(Condition1::RefutedAt { order: n });
            }
        }
    }
    Ok(Condition1::Verified {
        order: n,
        vacuous: false,
    })
}

fn monomials_below(nvars: usize, bound: u32) -> Vec<Monomial> {
    fn rec(e: &mut Vec<u32>, level: usize, room: u32, out: &mut Vec<Monomial>) {
        if level == e.len() {
            out.push(Monomial::new(e).expect("small exponents"));
            return;
        }
        for x in 0..room {
            e[level] = x;
            rec(e, level + 1, room - x, out);
        }
        e[level] = 0;
    }
    let mut out = Vec::new();
    rec(&mut vec![0; nvars], 0, bound, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Condition2 {
    pub holds: bool,
    pub mu: Dim,
    pub omega2: Dim,
    pub omega3: Dim,
}

/// Condition (2), `μ = dim Ω² − dim Ω³`.
pub fn reiffen_condition_2<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, cfg: &StdConfig) -> Result<Condition2> {
    let germ = require_curve(f, g)?;
    let mu = milnor_space_curve(&germ, cfg)?;
    let Dim::Finite(m) = mu else {
        return Err(Error::NonIsolated);
    };
    let omega2 = omega_dimension(f, g, 2, cfg)?;
    let omega3 = omega_dimension(f, g, 3, cfg)?;
    let holds = match (omega2, omega3) {
        (Dim::Finite(a), Dim::Finite(b)) => a >= b && a - b == m,
        _ => false,
    };
    Ok(Condition2 {
        holds,
        mu,
        omega2,
        omega3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExactUpToOrder,
    NotExact,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactnessReport {
    pub order: u32,
    pub condition1: Condition1,
    pub condition2: Condition2,
    pub tau: Dim,
    pub quasi_homogeneous: QuasiHomogeneous,
    pub verdict: Verdict,
    pub characteristic: u64,
    pub ordering: String,
}

pub fn exactness_report<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    order: Order,
    cfg: &StdConfig,
) -> Result<ExactnessReport> {
    let germ = require_curve(f, g)?;
    let condition2 = reiffen_condition_2(f, g, cfg)?;
    let n = resolve_order(f, g, order, cfg)?;
    let condition1 = reiffen_condition_1(f, g, Order::Fixed(n), None, cfg)?;
    let tau = tjurina_space_curve(&germ, cfg)?;
    let p = f.ring().characteristic();
    let verdict = match (condition1, condition2.holds) {
        (Condition1::RefutedAt { .. }, _) | (_, false) => Verdict::NotExact,
        (Condition1::Verified { vacuous: true, .. }, true) => Verdict::Inconclusive,
        (Condition1::Verified { .. }, true) => Verdict::ExactUpToOrder,
    };
    Ok(ExactnessReport {
        order: n,
        condition1,
        condition2,
        tau,
        quasi_homogeneous: quasihomogeneity_from(condition2.mu, tau, p)?,
        verdict,
        characteristic: p,
        ordering: f.ring().ordering().token(),
    })
}
