use std::cmp::Ordering;
use std::fmt;

use super::monomial::Monomial;
use super::poly::{Polynomial, Term};
use super::{same_ring, Ring};
use crate::coeff::Field;
use crate::error::{Error, Result};

/// A term `c · x^a · e_comp` of a free module; components are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VTerm<E> {
    pub coeff: E,
    pub mono: Monomial,
    pub comp: u32,
}

/// Element of the free module `R^rank`, terms sorted decreasingly by the
/// ring's module ordering.
#[derive(Clone)]
pub struct VectorElement<F: Field> {
    ring: Ring<F>,
    rank: u32,
    terms: Vec<VTerm<F::Elem>>,
}

impl<F: Field> VectorElement<F> {
    pub fn zero(ring: &Ring<F>, rank: u32) -> Self {
        VectorElement {
            ring: ring.clone(),
            rank,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(ring: &Ring<F>, rank: u32, mut terms: Vec<VTerm<F::Elem>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        for t in &terms {
            if t.comp == 0 || t.comp > rank {
                return Err(Error::IndexOutOfRange(t.comp as usize));
            }
            if t.mono.nvars() != ring.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    got: t.mono.nvars(),
                });
            }
        }
        let ord = ring.ordering();
        terms.sort_by(|a, b| ord.cmp_module_terms(&b.mono, b.comp, &a.mono, a.comp));
        let field = ring.field();
        let mut out: Vec<VTerm<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.comp == t.comp => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                }
                _ => {
                    if out.last().is_some_and(|l| field.is_zero(&l.coeff)) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|t| field.is_zero(&t.coeff)) {
            out.pop();
        }
        Ok(VectorElement {
            ring: ring.clone(),
            rank,
            terms: out,
        })
    }

    pub(crate) fn from_sorted_terms(ring: &Ring<F>, rank: u32, terms: Vec<VTerm<F::Elem>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring
            .ordering()
            .cmp_module_terms(&w[0].mono, w[0].comp, &w[1].mono, w[1].comp)
            == Ordering::Greater));
        VectorElement {
            ring: ring.clone(),
            rank,
            terms,
        }
    }

    /// `(p_1, ..., p_r)` with `p_i` placed in component `i`.
    pub fn from_components(ring: &Ring<F>, components: &[Polynomial<F>]) -> Result<Self> {
        let mut terms = Vec::new();
        for (i, p) in components.iter().enumerate() {
            if !same_ring(ring, p.ring()) {
                return Err(Error::RingMismatch);
            }
            terms.extend(p.terms().iter().map(|t| VTerm {
                coeff: t.coeff.clone(),
                mono: t.mono.clone(),
                comp: i as u32 + 1,
            }));
        }
        Self::from_terms(ring, components.len() as u32, terms)
    }

    /// A polynomial viewed as an element of `R^1`.
    pub fn from_polynomial(p: &Polynomial<F>) -> Self {
        VectorElement {
            ring: p.ring().clone(),
            rank: 1,
            terms: p
                .terms()
                .iter()
                .map(|t| VTerm {
                    coeff: t.coeff.clone(),
                    mono: t.mono.clone(),
                    comp: 1,
                })
                .collect(),
        }
    }

    /// Component `i` (1-based) as a polynomial.
    pub fn component(&self, i: u32) -> Result<Polynomial<F>> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange(i as usize));
        }
        let terms = self
            .terms
            .iter()
            .filter(|t| t.comp == i)
            .map(|t| Term {
                coeff: t.coeff.clone(),
                mono: t.mono.clone(),
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn components(&self) -> Result<Vec<Polynomial<F>>> {
        (1..=self.rank).map(|i| self.component(i)).collect()
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn terms(&self) -> &[VTerm<F::Elem>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&VTerm<F::Elem>> {
        self.terms.first()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank as usize,
                got: other.rank as usize,
            });
        }
        let field = self.ring.field();
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|t| VTerm {
            coeff: if negate { field.neg(&t.coeff) } else { t.coeff.clone() },
            mono: t.mono.clone(),
            comp: t.comp,
        }));
        Self::from_terms(&self.ring, self.rank, terms)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring, self.rank);
        }
        VectorElement {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    coeff: field.mul(&t.coeff, c),
                    mono: t.mono.clone(),
                    comp: t.comp,
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial<F>) -> Result<Self> {
        if !same_ring(&self.ring, p.ring()) {
            return Err(Error::RingMismatch);
        }
        let field = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() * p.len());
        for a in p.terms() {
            for b in &self.terms {
                terms.push(VTerm {
                    coeff: field.mul(&a.coeff, &b.coeff),
                    mono: a.mono.mul(&b.mono)?,
                    comp: b.comp,
                });
            }
        }
        Self::from_terms(&self.ring, self.rank, terms)
    }
}

impl<F: Field> PartialEq for VectorElement<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.rank == other.rank && self.terms == other.terms
    }
}

impl<F: Field> fmt::Display for VectorElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components().map_err(|_| fmt::Error)?;
        let parts: Vec<String> = comps.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl<F: Field> fmt::Debug for VectorElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorElement({self})")
    }
}
