//! Monomials, orderings, polynomials and free-module vectors.

mod monomial;
mod ordering;
mod poly;
mod vector;

use std::collections::HashSet;
use std::sync::Arc;

pub use monomial::{Monomial, MAX_EXPONENT};
pub use ordering::{BlockKind, ModuleRule, OrderBlock, OrderingSpec};
pub use poly::{jacobian_minors, Polynomial, Term};
pub use vector::{VTerm, VectorElement};

use crate::coeff::Field;
use crate::error::{Error, Result};

/// Shared handle to a ring; polynomials keep one so that operands can be
/// checked for compatibility.
pub type Ring<F> = Arc<RingContext<F>>;

/// Coefficient field, variable names and monomial ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct RingContext<F: Field> {
    field: F,
    variables: Vec<String>,
    ordering: OrderingSpec,
}

impl<F: Field> RingContext<F> {
    pub fn new(field: F, variables: Vec<String>, ordering: OrderingSpec) -> Result<Ring<F>> {
        if variables.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        let mut seen = HashSet::new();
        for v in &variables {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        if ordering.nvars() != variables.len() {
            return Err(Error::DimensionMismatch {
                expected: variables.len(),
                got: ordering.nvars(),
            });
        }
        Ok(Arc::new(RingContext {
            field,
            variables,
            ordering,
        }))
    }

    /// Same field and variables, different ordering.
    pub fn with_ordering(&self, ordering: OrderingSpec) -> Result<Ring<F>> {
        RingContext::new(self.field.clone(), self.variables.clone(), ordering)
    }

    #[inline]
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    #[inline]
    pub fn ordering(&self) -> &OrderingSpec {
        &self.ordering
    }

    /// `ring <char> (<vars>) <ordering>` as accepted by the parser.
    pub fn declaration(&self) -> String {
        format!(
            "ring {} ({}) {}",
            self.characteristic(),
            self.variables.join(","),
            self.ordering.token()
        )
    }
}

pub(crate) fn same_ring<F: Field>(a: &Ring<F>, b: &Ring<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
