//! Dense coefficient vectors over all monomials of degree below a corner
//! bound. Used once the computation has become finite: a reduction step
//! then touches only the terms of the reducer.

use std::cmp::Ordering;

use crate::ring::{Monomial, OrderingSpec};

/// Largest mixed-radix table we are willing to allocate.
const MAX_TABLE: usize = 1 << 22;

pub(crate) struct DenseSpace {
    pub bound: u32,
    nvars: usize,
    /// Monomials sorted decreasingly; position = dense index.
    monos: Vec<Monomial>,
    /// `table[key(m)]` = index of `m`; keys add under multiplication as
    /// long as the product stays below the bound.
    table: Vec<u32>,
}

impl DenseSpace {
    pub fn new(nvars: usize, bound: u32, ord: &OrderingSpec) -> Option<Self> {
        let size = (bound as usize).checked_pow(nvars as u32)?;
        if size > MAX_TABLE || bound == 0 {
            return None;
        }
        let mut monos = Vec::new();
        let mut e = vec![0u32; nvars];
        enumerate(&mut e, 0, bound, &mut monos);
        monos.sort_by(|a, b| ord.cmp_monomials(b, a));
        let mut space = DenseSpace {
            bound,
            nvars,
            monos,
            table: vec![u32::MAX; size],
        };
        for i in 0..space.monos.len() {
            let k = space.key(&space.monos[i]) as usize;
            space.table[k] = i as u32;
        }
        debug_assert!(space
            .monos
            .windows(2)
            .all(|w| ord.cmp_monomials(&w[0], &w[1]) == Ordering::Greater));
        Some(space)
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn key(&self, m: &Monomial) -> u32 {
        let b = self.bound;
        let mut k = 0u32;
        for i in (0..self.nvars).rev() {
            k = k * b + m.exponent(i);
        }
        k
    }

    /// Keys of every term below the bound; others get `u32::MAX`.
    pub fn keys<'a>(&self, monos: impl Iterator<Item = &'a Monomial>) -> Vec<u32> {
        monos
            .map(|m| if m.degree() < self.bound { self.key(m) } else { u32::MAX })
            .collect()
    }

    #[inline]
    pub fn index_of_key(&self, key: u32) -> usize {
        self.table[key as usize] as usize
    }

    pub fn index(&self, m: &Monomial) -> usize {
        self.index_of_key(self.key(m))
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monos[i]
    }
}

fn enumerate(e: &mut Vec<u32>, level: usize, room: u32, out: &mut Vec<Monomial>) {
    if level == e.len() {
        out.push(Monomial::new(e).expect("exponents below bound"));
        return;
    }
    for x in 0..room {
        e[level] = x;
        enumerate(e, level + 1, room - x, out);
    }
    e[level] = 0;
}
