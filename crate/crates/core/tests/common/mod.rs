//! Oracles shared by the integration tests. They only use polynomial
//! arithmetic and linear algebra, never the standard basis engine.

#![allow(dead_code)]

use std::collections::HashMap;

use germkit::coeff::Field;
use germkit::linalg::Echelon;
use germkit::ring::{Monomial, Polynomial};

pub fn monomials_below(nvars: usize, bound: u32) -> Vec<Monomial> {
    fn rec(e: &mut Vec<u32>, level: usize, room: u32, out: &mut Vec<Monomial>) {
        if level == e.len() {
            out.push(Monomial::new(e).unwrap());
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

/// `dim O/(I + m^N)` by linear algebra on all products `m * g` truncated
/// at degree `N`.
pub fn truncated_codim<F: Field>(gens: &[Polynomial<F>], bound: u32) -> u64 {
    let ring = gens[0].ring();
    let field = ring.field().clone();
    let monos = monomials_below(ring.nvars(), bound);
    let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon::new(field);
    for g in gens {
        for m in &monos {
            let mut row: Vec<(usize, F::Elem)> = g
                .terms()
                .iter()
                .filter_map(|t| {
                    let p = t.mono.mul(m).unwrap();
                    index.get(&p).map(|&i| (i, t.coeff.clone()))
                })
                .collect();
            row.sort_by_key(|(i, _)| *i);
            ech.insert(row).unwrap();
        }
    }
    monos.len() as u64 - ech.rank() as u64
}

/// `dim O/I` via `truncated_codim`, increasing `N` until two consecutive
/// values agree (then `m^N` lies in `I` by Nakayama).
pub fn local_codim<F: Field>(gens: &[Polynomial<F>], start: u32, limit: u32) -> Option<u64> {
    let mut prev = truncated_codim(gens, start);
    for n in start + 1..=limit {
        let cur = truncated_codim(gens, n);
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}
