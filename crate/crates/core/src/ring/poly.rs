use std::cmp::Ordering;
use std::collections::hash_map::{Entry, HashMap};
use std::fmt;

use super::monomial::Monomial;
use super::{same_ring, Ring};
use crate::coeff::{Field, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub coeff: E,
    pub mono: Monomial,
}

/// Sparse polynomial: nonzero terms, strictly decreasing in the ring's
/// ordering, no repeated monomials.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn monomial(ring: &Ring<F>, c: F::Elem, mono: Monomial) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![Term { coeff: c, mono }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn variable(ring: &Ring<F>, index: usize) -> Result<Self> {
        let m = Monomial::variable(ring.nvars(), index, 1)?;
        Ok(Self::monomial(ring, ring.field().one(), m))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zeros.
    pub fn from_terms(ring: &Ring<F>, mut terms: Vec<Term<F::Elem>>) -> Result<Self> {
        let n = ring.nvars();
        if let Some(t) = terms.iter().find(|t| t.mono.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: t.mono.nvars(),
            });
        }
        let ord = ring.ordering();
        terms.sort_by(|a, b| ord.cmp_monomials(&b.mono, &a.mono));
        let field = ring.field();
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                }
                _ => {
                    if let Some(last) = out.last() {
                        if field.is_zero(&last.coeff) {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|t| field.is_zero(&t.coeff)) {
            out.pop();
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: out,
        })
    }

    /// Wraps terms already in canonical order. Checked in debug builds.
    pub(crate) fn from_sorted_terms(ring: &Ring<F>, terms: Vec<Term<F::Elem>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.ordering().cmp_monomials(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !ring.field().is_zero(&t.coeff)));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F::Elem>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Coefficient of the monomial 1.
    pub fn constant_coefficient(&self) -> F::Elem {
        self.terms
            .iter()
            .find(|t| t.mono.is_one())
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    /// Maximal total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Minimal total degree over all terms (the multiplicity at the origin).
    pub fn order_of(&self) -> Result<u32> {
        self.terms
            .iter()
            .map(|t| t.mono.degree())
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let field = self.ring.field();
        let ord = self.ring.ordering();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let take_b = |t: &Term<F::Elem>| Term {
            coeff: if negate { field.neg(&t.coeff) } else { t.coeff.clone() },
            mono: t.mono.clone(),
        };
        while i < a.len() && j < b.len() {
            match ord.cmp_monomials(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(take_b(&b[j]));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        field.sub(&a[i].coeff, &b[j].coeff)
                    } else {
                        field.add(&a[i].coeff, &b[j].coeff)
                    };
                    if !field.is_zero(&c) {
                        out.push(Term {
                            coeff: c,
                            mono: a[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(take_b));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn neg(&self) -> Self {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.neg(&t.coeff),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(&t.coeff, c),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// Multiplication by a single term keeps the term order.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Result<Self> {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Ok(Self::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    coeff: field.mul(&t.coeff, c),
                    mono: t.mono.mul(m)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let t = &small.terms[0];
            return large.mul_term(&t.coeff, &t.mono);
        }
        let field = self.ring.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for a in &small.terms {
            for b in &large.terms {
                let m = a.mono.mul(&b.mono)?;
                let c = field.mul(&a.coeff, &b.coeff);
                acc.entry(m).and_modify(|e| *e = field.add(e, &c)).or_insert(c);
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn partial_derivative(&self, index: usize) -> Result<Self> {
        if index >= self.ring.nvars() {
            return Err(Error::IndexOutOfRange(index));
        }
        let field = self.ring.field();
        let mut terms = Vec::new();
        for t in &self.terms {
            let e = t.mono.exponent(index);
            if e == 0 {
                continue;
            }
            let c = field.mul(&t.coeff, &field.from_i64(e as i64));
            if field.is_zero(&c) {
                continue;
            }
            let mut exps: Vec<u32> = t.mono.exponents().iter().map(|&x| x as u32).collect();
            exps[index] -= 1;
            terms.push(Term {
                coeff: c,
                mono: Monomial::new(&exps)?,
            });
        }
        Ok(Self::from_sorted_terms(&self.ring, terms))
    }

    pub fn gradient(&self) -> Result<Vec<Self>> {
        (0..self.ring.nvars()).map(|i| self.partial_derivative(i)).collect()
    }

    /// Simultaneous substitution `x_i ↦ p_i`; unassigned variables stay.
    pub fn substitute(&self, assignments: &[(usize, Polynomial<F>)]) -> Result<Self> {
        let n = self.ring.nvars();
        let mut images: Vec<Option<&Polynomial<F>>> = vec![None; n];
        for (i, p) in assignments {
            if *i >= n {
                return Err(Error::IndexOutOfRange(*i));
            }
            self.check(p)?;
            images[*i] = Some(p);
        }
        let mut powers: HashMap<(usize, u32), Polynomial<F>> = HashMap::new();
        let mut result = Self::zero(&self.ring);
        for t in &self.terms {
            let mut keep = vec![0u32; n];
            let mut prod = Self::constant(&self.ring, t.coeff.clone());
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                let e = e as u32;
                match images[i] {
                    Some(p) if e > 0 => {
                        if let Entry::Vacant(v) = powers.entry((i, e)) {
                            v.insert(p.pow(e)?);
                        }
                        prod = prod.mul(&powers[&(i, e)])?;
                    }
                    _ => keep[i] = e,
                }
            }
            let rest = Monomial::new(&keep)?;
            let one = self.ring.field().one();
            prod = prod.mul_term(&one, &rest)?;
            result = result.add(&prod)?;
        }
        Ok(result)
    }

    /// Re-sorts the polynomial into another ring with the same field and
    /// variable count (typically the same variables, different ordering).
    pub fn to_ring(&self, ring: &Ring<F>) -> Result<Self> {
        if ring.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars(),
                got: self.ring.nvars(),
            });
        }
        Self::from_terms(ring, self.terms.clone())
    }

    /// True iff every term has the same weighted degree under `weights`.
    pub fn is_weighted_homogeneous(&self, weights: &[Rational]) -> Result<bool> {
        let n = self.ring.nvars();
        if weights.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidOrdering("weights must be positive".into()));
        }
        let mut first: Option<Rational> = None;
        for t in &self.terms {
            let mut d = Rational::zero();
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                d = &d + &(&weights[i] * &Rational::from_integer(e as i64));
            }
            match &first {
                None => first = Some(d),
                Some(f) if *f != d => return Ok(false),
                _ => {}
            }
        }
        Ok(true)
    }

    fn fmt_monomial(&self, m: &Monomial, out: &mut String) {
        let mut first = true;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&self.ring.variables()[i]);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
}

/// The three 2×2 minors of the Jacobian matrix of `(f, g)` in three
/// variables, for the column pairs (1,2), (1,3), (2,3).
pub fn jacobian_minors<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<[Polynomial<F>; 3]> {
    f.check(g)?;
    let n = f.ring.nvars();
    if n != 3 {
        return Err(Error::WrongVariableCount { expected: 3, got: n });
    }
    let df = f.gradient()?;
    let dg = g.gradient()?;
    let minor = |i: usize, j: usize| -> Result<Polynomial<F>> { df[i].mul(&dg[j])?.sub(&df[j].mul(&dg[i])?) };
    Ok([minor(0, 1)?, minor(0, 2)?, minor(1, 2)?])
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.ring.field();
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let negative = field.is_negative(&t.coeff);
            let abs = if negative { field.neg(&t.coeff) } else { t.coeff.clone() };
            if negative {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            if t.mono.is_one() {
                out.push_str(&field.format(&abs));
            } else {
                if !field.is_one(&abs) {
                    out.push_str(&field.format(&abs));
                    out.push('*');
                }
                self.fmt_monomial(&t.mono, &mut out);
            }
        }
        f.write_str(&out)
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
