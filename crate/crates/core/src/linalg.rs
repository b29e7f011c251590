//! Sparse row echelon forms over a field.

use std::collections::BTreeMap;

use crate::coeff::Field;
use crate::error::Result;

/// A sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Incrementally built echelon basis of a row space. Each stored row is
/// normalized to leading entry 1 and keyed by its pivot column.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    rows: BTreeMap<usize, SparseRow<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `row` against the stored rows; the result has no entry in a
    /// pivot column.
    pub fn reduce(&self, row: SparseRow<F::Elem>) -> Result<SparseRow<F::Elem>> {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::Elem> = row.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        let mut out = Vec::new();
        while let Some((col, c)) = acc.pop_first() {
            match self.rows.get(&col) {
                Some(p) => {
                    for (j, v) in &p[1..] {
                        let e = acc.entry(*j).or_insert_with(|| f.zero());
                        *e = f.sub_mul(e, &c, v);
                        if f.is_zero(e) {
                            acc.remove(j);
                        }
                    }
                }
                None => out.push((col, c)),
            }
        }
        Ok(out)
    }

    /// Adds `row` to the span; returns whether it was independent.
    pub fn insert(&mut self, row: SparseRow<F::Elem>) -> Result<bool> {
        let mut r = self.reduce(row)?;
        let Some((col, lead)) = r.first().cloned() else {
            return Ok(false);
        };
        let inv = self.field.inv(&lead)?;
        for (_, c) in r.iter_mut() {
            *c = self.field.mul(c, &inv);
        }
        self.rows.insert(col, r);
        Ok(true)
    }

    pub fn contains(&self, row: SparseRow<F::Elem>) -> Result<bool> {
        Ok(self.reduce(row)?.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rational, Rationals};

    #[test]
    fn rank_of_small_matrices() {
        let q = Rationals;
        let r = |v: &[(usize, i64)]| {
            v.iter()
                .map(|&(c, x)| (c, Rational::from_integer(x)))
                .collect::<Vec<_>>()
        };
        let mut e = Echelon::new(q);
        assert!(e.insert(r(&[(0, 1), (1, 2)])).unwrap());
        assert!(e.insert(r(&[(0, 2), (1, 4), (2, 1)])).unwrap());
        assert!(!e.insert(r(&[(0, 3), (1, 6), (2, 1)])).unwrap());
        assert!(!e.insert(Vec::new()).unwrap());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(r(&[(2, 5)])).unwrap());
        assert!(!e.contains(r(&[(1, 1)])).unwrap());
    }

    #[test]
    fn prime_field_dependency() {
        let p = PrimeField::new(7).unwrap();
        let mut e = Echelon::new(p);
        e.insert(vec![(0, p.from_i64(3)), (1, p.from_i64(1))]).unwrap();
        // 5*(3,1) = (15,5) = (1,5) mod 7
        assert!(!e.insert(vec![(0, p.from_i64(1)), (1, p.from_i64(5))]).unwrap());
    }
}
