//! Term-list kernels shared by the normal forms and the basis engine.

use std::cmp::Ordering;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::ring::{Monomial, OrderingSpec, VTerm};

/// A normalized element kept for reduction, with cached lead data.
#[derive(Debug, Clone)]
pub(crate) struct Reducer<E> {
    pub terms: Vec<VTerm<E>>,
    pub mask: u64,
    pub ecart: u32,
    pub sugar: u32,
    /// Dense-space keys of the terms, when a dense space is active.
    pub keys: Vec<u32>,
}

impl<E: Clone> Reducer<E> {
    pub fn lead(&self) -> &VTerm<E> {
        &self.terms[0]
    }
}

/// Total degree of a term list (maximum over terms).
pub(crate) fn max_degree<E>(terms: &[VTerm<E>]) -> u32 {
    terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
}

pub(crate) fn ecart_of<E>(terms: &[VTerm<E>]) -> u32 {
    match terms.first() {
        Some(lt) => max_degree(terms) - lt.mono.degree(),
        None => 0,
    }
}

/// Scales so that the leading coefficient is 1.
pub(crate) fn normalize<F: Field>(field: &F, terms: &mut [VTerm<F::Elem>]) -> Result<()> {
    let Some(lt) = terms.first() else {
        return Ok(());
    };
    if field.is_one(&lt.coeff) {
        return Ok(());
    }
    let inv = field.inv(&lt.coeff)?;
    for t in terms.iter_mut() {
        t.coeff = field.mul(&t.coeff, &inv);
    }
    Ok(())
}

pub(crate) fn make_reducer<F: Field>(
    field: &F,
    mut terms: Vec<VTerm<F::Elem>>,
    sugar: u32,
) -> Result<Reducer<F::Elem>> {
    normalize(field, &mut terms)?;
    let mask = terms[0].mono.divmask();
    let ecart = ecart_of(&terms);
    Ok(Reducer {
        terms,
        mask,
        ecart,
        sugar,
        keys: Vec::new(),
    })
}

/// Drops every term of degree `>= bound`, always keeping the leading term.
/// Terms of that degree lie in the ideal once the bound is a highest corner.
pub(crate) fn truncate<E>(terms: &mut Vec<VTerm<E>>, bound: Option<u32>) {
    if let Some(n) = bound {
        let mut first = true;
        terms.retain(|t| {
            let keep = first || t.mono.degree() < n;
            first = false;
            keep
        });
    }
}

/// `h - c * m * g`, where the leading terms cancel and are skipped.
/// Terms of degree `>= bound` are dropped.
#[allow(clippy::too_many_arguments)]
pub(crate) fn sub_multiple<F: Field>(
    field: &F,
    ord: &OrderingSpec,
    h: &[VTerm<F::Elem>],
    c: &F::Elem,
    m: &Monomial,
    g: &[VTerm<F::Elem>],
    bound: Option<u32>,
    sorted_by_degree: bool,
) -> Result<Vec<VTerm<F::Elem>>> {
    let limit = bound.unwrap_or(u32::MAX);
    let mut out = Vec::with_capacity(h.len() + g.len());
    let (mut i, mut j) = (1, 1);
    let next_g = |j: &mut usize| -> Result<Option<VTerm<F::Elem>>> {
        while *j < g.len() {
            let t = &g[*j];
            *j += 1;
            if t.mono.degree() + m.degree() >= limit {
                if sorted_by_degree {
                    *j = g.len();
                    return Ok(None);
                }
                continue;
            }
            return Ok(Some(VTerm {
                coeff: field.neg(&field.mul(c, &t.coeff)),
                mono: t.mono.mul(m)?,
                comp: t.comp,
            }));
        }
        Ok(None)
    };
    let mut pending = next_g(&mut j)?;
    while i < h.len() {
        let a = &h[i];
        if a.mono.degree() >= limit {
            i += 1;
            continue;
        }
        match &pending {
            None => {
                out.push(a.clone());
                i += 1;
            }
            Some(b) => match ord.cmp_module_terms(&a.mono, a.comp, &b.mono, b.comp) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().expect("pending term"));
                    pending = next_g(&mut j)?;
                }
                Ordering::Equal => {
                    let s = field.add(&a.coeff, &b.coeff);
                    if !field.is_zero(&s) {
                        out.push(VTerm {
                            coeff: s,
                            mono: a.mono.clone(),
                            comp: a.comp,
                        });
                    }
                    i += 1;
                    pending = next_g(&mut j)?;
                }
            },
        }
    }
    while let Some(b) = pending.take() {
        out.push(b);
        pending = next_g(&mut j)?;
    }
    Ok(out)
}

/// S-polynomial of two term lists with equal leading components.
pub(crate) fn spoly_terms<F: Field>(
    field: &F,
    ord: &OrderingSpec,
    f: &[VTerm<F::Elem>],
    g: &[VTerm<F::Elem>],
    bound: Option<u32>,
    sorted_by_degree: bool,
) -> Result<Vec<VTerm<F::Elem>>> {
    let (lf, lg) = (&f[0], &g[0]);
    if lf.comp != lg.comp {
        return Err(Error::ComponentMismatch);
    }
    let lcm = lf.mono.lcm(&lg.mono);
    let mf = lcm.div(&lf.mono);
    let mg = lcm.div(&lg.mono);
    // lg.coeff * mf * f - lf.coeff * mg * g
    let mut scaled_f: Vec<VTerm<F::Elem>> = Vec::with_capacity(f.len());
    let limit = bound.unwrap_or(u32::MAX);
    for (k, t) in f.iter().enumerate() {
        let d = t.mono.degree() + mf.degree();
        if k > 0 && d >= limit {
            if sorted_by_degree {
                break;
            }
            continue;
        }
        scaled_f.push(VTerm {
            coeff: field.mul(&lg.coeff, &t.coeff),
            mono: t.mono.mul(&mf)?,
            comp: t.comp,
        });
    }
    sub_multiple(field, ord, &scaled_f, &lf.coeff, &mg, g, bound, sorted_by_degree)
}

#[inline]
pub(crate) fn lead_divides<E>(r: &Reducer<E>, mask: u64, t: &VTerm<E>) -> bool {
    let l = &r.terms[0];
    r.mask & !mask == 0 && l.comp == t.comp && l.mono.divides(&t.mono)
}
