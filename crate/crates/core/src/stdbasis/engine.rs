use std::collections::BTreeMap;
use std::time::Instant;

use super::dense::DenseSpace;
use super::reduce::{ecart_of, lead_divides, make_reducer, max_degree, spoly_terms, sub_multiple, truncate, Reducer};
use super::{NormalFormMode, ReducerSelection, Staircase, StandardBasis, Stats, StdConfig};
use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::ring::{ModuleRule, Monomial, Ring, VTerm, VectorElement};

/// Normal-form machinery bound to one ring.
pub(crate) struct NfContext<'a, F: Field> {
    ring: &'a Ring<F>,
    ceiling: u64,
    pub reductions: u64,
    pub bound: Option<u32>,
    pub dense: Option<DenseSpace>,
    sorted_by_degree: bool,
}

#[derive(Clone, Copy)]
enum Pick {
    Base(usize),
    Extra(usize),
}

impl<'a, F: Field> NfContext<'a, F> {
    pub fn new(ring: &'a Ring<F>, rank: u32, ceiling: u64) -> Self {
        let ord = ring.ordering();
        let sorted_by_degree =
            ord.is_local_degree_ordering() && (rank == 1 || ord.module_rule() == ModuleRule::TermOverPosition);
        NfContext {
            ring,
            ceiling,
            reductions: 0,
            bound: None,
            dense: None,
            sorted_by_degree,
        }
    }

    /// `FirstFound` takes the first reducer whose ecart does not exceed
    /// that of `h` and otherwise falls back to the minimal-ecart choice,
    /// which keeps Mora's termination argument intact.
    fn pick(
        &self,
        lead: &VTerm<F::Elem>,
        base: &[Reducer<F::Elem>],
        extra: &[Reducer<F::Elem>],
        sel: ReducerSelection,
        h_ecart: u32,
    ) -> Option<Pick> {
        let mask = lead.mono.divmask();
        let mut best: Option<(u32, Pick)> = None;
        let candidates = base
            .iter()
            .enumerate()
            .map(|(i, r)| (r, Pick::Base(i)))
            .chain(extra.iter().enumerate().map(|(i, r)| (r, Pick::Extra(i))));
        for (r, p) in candidates {
            if !lead_divides(r, mask, lead) {
                continue;
            }
            if sel == ReducerSelection::FirstFound && r.ecart <= h_ecart {
                return Some(p);
            }
            if best.as_ref().is_none_or(|(e, _)| r.ecart < *e) {
                best = Some((r.ecart, p));
                if r.ecart == 0 {
                    break;
                }
            }
        }
        best.map(|(_, p)| p)
    }

    fn step(
        &mut self,
        h: &[VTerm<F::Elem>],
        g: &Reducer<F::Elem>,
        sugar: Option<&mut u32>,
    ) -> Result<Vec<VTerm<F::Elem>>> {
        self.count()?;
        let field = self.ring.field();
        let glead = g.lead();
        let m = h[0].mono.div(&glead.mono);
        let c = if field.is_one(&glead.coeff) {
            h[0].coeff.clone()
        } else {
            field.div(&h[0].coeff, &glead.coeff)?
        };
        if let Some(s) = sugar {
            *s = (*s).max(g.sugar + m.degree());
        }
        sub_multiple(
            field,
            self.ring.ordering(),
            h,
            &c,
            &m,
            &g.terms,
            self.bound,
            self.sorted_by_degree,
        )
    }

    /// Plain leading-term reduction (global orderings).
    pub fn nf_buchberger(
        &mut self,
        h: Vec<VTerm<F::Elem>>,
        reducers: &[Reducer<F::Elem>],
        sel: ReducerSelection,
    ) -> Result<Vec<VTerm<F::Elem>>> {
        self.reduce_loop(h, reducers, sel, None, false)
    }

    /// Weak normal form with Mora's ecart rule.
    pub fn nf_mora(
        &mut self,
        h: Vec<VTerm<F::Elem>>,
        reducers: &[Reducer<F::Elem>],
        sel: ReducerSelection,
        sugar: Option<&mut u32>,
    ) -> Result<Vec<VTerm<F::Elem>>> {
        self.reduce_loop(h, reducers, sel, sugar, true)
    }

    fn reduce_loop(
        &mut self,
        mut h: Vec<VTerm<F::Elem>>,
        reducers: &[Reducer<F::Elem>],
        sel: ReducerSelection,
        mut sugar: Option<&mut u32>,
        mora: bool,
    ) -> Result<Vec<VTerm<F::Elem>>> {
        if let Some(space) = self.dense.take() {
            let usable = reducers.iter().all(|r| r.keys.len() == r.terms.len());
            let out = if usable {
                self.reduce_dense(&space, h, reducers, sel, sugar)
            } else {
                Err(Error::InvalidRing("dense keys missing".into()))
            };
            self.dense = Some(space);
            return out;
        }
        let field = self.ring.field().clone();
        let mut extra: Vec<Reducer<F::Elem>> = Vec::new();
        if let Some(n) = self.bound {
            h.retain(|t| t.mono.degree() < n);
        }
        while !h.is_empty() {
            let extend = mora && self.bound.is_none();
            let e_h = if extend { ecart_of(&h) } else { u32::MAX };
            let Some(p) = self.pick(&h[0], reducers, &extra, sel, e_h) else {
                break;
            };
            let g_ecart = match p {
                Pick::Base(i) => reducers[i].ecart,
                Pick::Extra(i) => extra[i].ecart,
            };
            // Once a corner bound is known only finitely many monomials
            // remain, so reduction terminates without extending the set.
            if extend && g_ecart > e_h {
                let s = sugar.as_deref().copied().unwrap_or(0);
                extra.push(make_reducer(&field, h.clone(), s)?);
            }
            let g = match p {
                Pick::Base(i) => &reducers[i],
                Pick::Extra(i) => &extra[i],
            };
            h = self.step(&h, g, sugar.as_deref_mut())?;
        }
        Ok(h)
    }
}

impl<'a, F: Field> NfContext<'a, F> {
    fn count(&mut self) -> Result<()> {
        self.reductions += 1;
        if self.reductions > self.ceiling {
            return Err(Error::ResourceExhausted(self.ceiling));
        }
        Ok(())
    }

    /// Weak normal form in a dense accumulator; requires an ideal whose
    /// ordering sorts terms by degree and reducers with dense keys.
    fn reduce_dense(
        &mut self,
        space: &DenseSpace,
        h: Vec<VTerm<F::Elem>>,
        reducers: &[Reducer<F::Elem>],
        sel: ReducerSelection,
        mut sugar: Option<&mut u32>,
    ) -> Result<Vec<VTerm<F::Elem>>> {
        let field = self.ring.field();
        let zero = field.zero();
        let n = space.bound;
        let mut acc = vec![zero.clone(); space.len()];
        for t in h {
            if t.mono.degree() < n {
                let i = space.index(&t.mono);
                acc[i] = field.add(&acc[i], &t.coeff);
            }
        }
        let mut pos = 0;
        loop {
            while pos < acc.len() && field.is_zero(&acc[pos]) {
                pos += 1;
            }
            if pos == acc.len() {
                return Ok(Vec::new());
            }
            let lead = VTerm {
                coeff: acc[pos].clone(),
                mono: space.monomial(pos).clone(),
                comp: 1,
            };
            let Some(Pick::Base(i)) = self.pick(&lead, reducers, &[], sel, u32::MAX) else {
                break;
            };
            self.count()?;
            let g = &reducers[i];
            let m = lead.mono.div(&g.lead().mono);
            let md = m.degree();
            let km = space.key(&m);
            if let Some(s) = sugar.as_deref_mut() {
                *s = (*s).max(g.sugar + md);
            }
            let c = std::mem::replace(&mut acc[pos], zero.clone());
            for (t, &k) in g.terms[1..].iter().zip(&g.keys[1..]) {
                if t.mono.degree() + md >= n {
                    break;
                }
                let j = space.index_of_key(km + k);
                acc[j] = field.sub_mul(&acc[j], &c, &t.coeff);
            }
            pos += 1;
        }
        let mut out = Vec::new();
        for (i, c) in acc.into_iter().enumerate().skip(pos) {
            if !field.is_zero(&c) {
                out.push(VTerm {
                    coeff: c,
                    mono: space.monomial(i).clone(),
                    comp: 1,
                });
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub(crate) struct Engine<'a, F: Field> {
    ring: &'a Ring<F>,
    rank: u32,
    config: StdConfig,
    mode: NormalFormMode,
    basis: Vec<Reducer<F::Elem>>,
    active: Vec<bool>,
    pairs: BTreeMap<(u32, u64), Pair>,
    seq: u64,
    nf: NfContext<'a, F>,
    stats: Stats,
    use_corner: bool,
    /// Whether `nf.bound` is a proven corner rather than a guess.
    verified: bool,
    inserts_since_check: usize,
}

impl<'a, F: Field> Engine<'a, F> {
    /// With a `guess`, computation starts modulo `m^guess`; the result is
    /// only accepted if the leading terms found prove the guess.
    pub fn new(ring: &'a Ring<F>, rank: u32, config: &StdConfig, guess: Option<u32>) -> Result<Self> {
        let ord = ring.ordering();
        let mode = match config.mode {
            Some(NormalFormMode::Buchberger) if !ord.is_global() => return Err(Error::ModeOrderingMismatch),
            Some(m) => m,
            None if ord.is_global() => NormalFormMode::Buchberger,
            None => NormalFormMode::Mora,
        };
        Ok(Engine {
            ring,
            rank,
            config: *config,
            mode,
            basis: Vec::new(),
            active: Vec::new(),
            pairs: BTreeMap::new(),
            seq: 0,
            nf: NfContext {
                bound: guess,
                ..NfContext::new(ring, rank, config.ceiling)
            },
            stats: Stats::default(),
            use_corner: config.truncate && ord.is_local_degree_ordering(),
            verified: guess.is_none(),
            inserts_since_check: 0,
        }
        .with_dense())
    }

    /// (Re)builds the dense space for the current bound.
    fn with_dense(mut self) -> Self {
        self.rebuild_dense();
        self
    }

    fn rebuild_dense(&mut self) {
        self.nf.dense = None;
        if self.rank != 1 || !self.nf.sorted_by_degree {
            return;
        }
        let Some(b) = self.nf.bound else { return };
        self.nf.dense = DenseSpace::new(self.ring.nvars(), b, self.ring.ordering());
        if let Some(space) = &self.nf.dense {
            for r in &mut self.basis {
                r.keys = space.keys(r.terms.iter().map(|t| &t.mono));
            }
        }
    }

    fn normal_form(&mut self, h: Vec<VTerm<F::Elem>>, sugar: &mut u32) -> Result<Vec<VTerm<F::Elem>>> {
        let sel = self.config.strategy.reducer_selection;
        match self.mode {
            NormalFormMode::Buchberger => self.nf.reduce_loop(h, &self.basis, sel, Some(sugar), false),
            NormalFormMode::Mora => self.nf.reduce_loop(h, &self.basis, sel, Some(sugar), true),
        }
    }

    /// `Ok(None)` means the corner guess could not be confirmed.
    pub fn run(mut self, generators: &[VectorElement<F>]) -> Result<Option<StandardBasis<F>>> {
        let start = Instant::now();
        for g in generators {
            if g.is_zero() {
                continue;
            }
            let mut sugar = max_degree(g.terms());
            let h = self.normal_form(g.terms().to_vec(), &mut sugar)?;
            if !h.is_empty() {
                self.insert(h, sugar)?;
            }
        }
        while let Some(((sugar, _), pair)) = self.pairs.pop_first() {
            if self.nf.bound.is_some_and(|n| pair.lcm.degree() >= n) {
                self.stats.discarded += 1;
                continue;
            }
            let field = self.ring.field();
            let s = spoly_terms(
                field,
                self.ring.ordering(),
                &self.basis[pair.i].terms,
                &self.basis[pair.j].terms,
                self.nf.bound,
                self.nf.sorted_by_degree,
            )?;
            self.nf.reductions += 1;
            let mut sugar = sugar;
            let h = self.normal_form(s, &mut sugar)?;
            if !h.is_empty() {
                self.insert(h, sugar)?;
            }
        }
        self.stats.reductions = self.nf.reductions;
        self.stats.millis = start.elapsed().as_millis() as u64;
        if self.use_corner {
            self.refresh_corner();
        }
        if !self.verified {
            return Ok(None);
        }
        Ok(Some(self.finish()))
    }

    fn pair_key(&self, sugar: u32, lcm: &Monomial, seq: u64) -> (u32, u64) {
        use super::PairSelection::*;
        match self.config.strategy.pair_selection {
            Sugar => (sugar, seq),
            MinLcmDegree => (lcm.degree(), seq),
            Fifo => (0, seq),
        }
    }

    fn insert(&mut self, terms: Vec<VTerm<F::Elem>>, sugar: u32) -> Result<()> {
        let mut terms = terms;
        truncate(&mut terms, self.nf.bound);
        let mut r = make_reducer(self.ring.field(), terms, sugar)?;
        if let Some(space) = &self.nf.dense {
            r.keys = space.keys(r.terms.iter().map(|t| &t.mono));
        }
        let idx = self.basis.len();
        self.update_pairs(&r, idx);
        let pure = r.lead().mono.pure_power().is_some() || r.lead().mono.is_one();
        self.basis.push(r);
        self.active.push(true);
        if self.use_corner {
            self.inserts_since_check += 1;
            if pure || self.inserts_since_check >= 8 {
                self.inserts_since_check = 0;
                self.refresh_corner();
            }
        }
        Ok(())
    }

    fn update_pairs(&mut self, h: &Reducer<F::Elem>, idx: usize) {
        let strat = self.config.strategy;
        let hl = h.lead();
        let h_deg = hl.mono.degree();
        if strat.chain_criterion {
            let basis = &self.basis;
            let before = self.pairs.len();
            self.pairs.retain(|_, p| {
                let (li, lj) = (basis[p.i].lead(), basis[p.j].lead());
                !(li.comp == hl.comp
                    && hl.mono.divides(&p.lcm)
                    && li.mono.lcm(&hl.mono) != p.lcm
                    && lj.mono.lcm(&hl.mono) != p.lcm)
            });
            self.stats.discarded += (before - self.pairs.len()) as u64;
        }
        struct Cand {
            i: usize,
            lcm: Monomial,
            sugar: u32,
            coprime: bool,
        }
        let mut cands: Vec<Cand> = Vec::new();
        for (i, g) in self.basis.iter().enumerate() {
            if !self.active[i] || g.lead().comp != hl.comp {
                continue;
            }
            let gl = &g.lead().mono;
            let lcm = gl.lcm(&hl.mono);
            let sugar = (g.sugar + lcm.degree() - gl.degree()).max(h.sugar + lcm.degree() - h_deg);
            let coprime = self.rank == 1 && gl.is_coprime(&hl.mono);
            cands.push(Cand { i, lcm, sugar, coprime });
        }
        self.stats.pairs += cands.len() as u64;
        let total = cands.len();
        if strat.chain_criterion {
            let mut kept: Vec<Cand> = Vec::new();
            let mut rest: std::collections::VecDeque<Cand> = cands.into();
            while let Some(p) = rest.pop_front() {
                let special = strat.product_criterion && p.coprime;
                let dominated = rest.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
                if special || !dominated {
                    kept.push(p);
                }
            }
            cands = kept;
        }
        if strat.product_criterion {
            cands.retain(|c| !c.coprime);
        }
        if let Some(n) = self.nf.bound {
            cands.retain(|c| c.lcm.degree() < n);
        }
        self.stats.discarded += (total - cands.len()) as u64;
        for c in cands {
            self.seq += 1;
            let key = self.pair_key(c.sugar, &c.lcm, self.seq);
            self.pairs.insert(
                key,
                Pair {
                    i: c.i,
                    j: idx,
                    lcm: c.lcm,
                },
            );
        }
        if strat.chain_criterion {
            for (i, g) in self.basis.iter().enumerate() {
                if self.active[i] && g.lead().comp == hl.comp && hl.mono.divides(&g.lead().mono) {
                    self.active[i] = false;
                }
            }
        }
    }

    /// Recomputes the highest corner of the current leading module and, if
    /// it improved, truncates everything above it.
    fn refresh_corner(&mut self) {
        let nvars = self.ring.nvars();
        let closed = if self.verified { self.nf.bound } else { None };
        let sc = Staircase::new(
            nvars,
            self.rank,
            self.basis.iter().map(|r| (r.lead().mono.clone(), r.lead().comp)),
            closed,
        );
        if closed.is_none() {
            for c in 1..=self.rank {
                if sc.pure_powers(c).iter().any(Option::is_none) {
                    return;
                }
            }
        }
        let Some(hc) = sc.highest_corner() else {
            return;
        };
        if !self.verified {
            if self.nf.bound.is_some_and(|b| hc > b) {
                return;
            }
            self.verified = true;
        }
        if self.nf.bound.is_some_and(|b| hc >= b) {
            return;
        }
        self.nf.bound = Some(hc);
        for r in &mut self.basis {
            truncate(&mut r.terms, Some(hc));
            r.ecart = ecart_of(&r.terms);
        }
        self.rebuild_dense();
        let before = self.pairs.len();
        self.pairs.retain(|_, p| p.lcm.degree() < hc);
        self.stats.discarded += (before - self.pairs.len()) as u64;
    }

    fn finish(self) -> StandardBasis<F> {
        let n = self.basis.len();
        let mut keep = vec![true; n];
        for i in 0..n {
            let li = self.basis[i].lead();
            for j in 0..n {
                if i == j || !keep[j] {
                    continue;
                }
                let lj = self.basis[j].lead();
                if lj.comp == li.comp && lj.mono.divides(&li.mono) && (lj.mono != li.mono || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let ring = self.ring;
        let rank = self.rank;
        let generators = self
            .basis
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(r, _)| VectorElement::from_sorted_terms(ring, rank, r.terms))
            .collect();
        StandardBasis {
            ring: ring.clone(),
            rank,
            generators,
            corner_bound: self.nf.bound,
            stats: self.stats,
        }
    }
}
