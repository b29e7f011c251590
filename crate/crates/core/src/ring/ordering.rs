//! Monomial orderings built from blocks of global and local orderings.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    Lex,
    DegLex,
    DegRevLex,
    NegDegLex,
    NegDegRevLex,
    Weighted(Vec<u32>),
    NegWeighted(Vec<u32>),
}

impl BlockKind {
    /// Local blocks make 1 the largest monomial in their variables.
    pub fn is_local(&self) -> bool {
        matches!(
            self,
            BlockKind::NegDegLex | BlockKind::NegDegRevLex | BlockKind::NegWeighted(_)
        )
    }

    pub fn token(&self) -> String {
        fn ws(w: &[u32]) -> String {
            w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        }
        match self {
            BlockKind::Lex => "lp".into(),
            BlockKind::DegLex => "Dp".into(),
            BlockKind::DegRevLex => "dp".into(),
            BlockKind::NegDegLex => "ls".into(),
            BlockKind::NegDegRevLex => "ds".into(),
            BlockKind::Weighted(w) => format!("wp({})", ws(w)),
            BlockKind::NegWeighted(w) => format!("ws({})", ws(w)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderBlock {
    pub kind: BlockKind,
    pub start: usize,
    pub len: usize,
}

/// How components are weighed against monomials in free modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum ModuleRule {
    #[default]
    PositionOverTerm,
    TermOverPosition,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderingSpec {
    blocks: Vec<OrderBlock>,
    module_rule: ModuleRule,
}

impl OrderingSpec {
    /// Builds an ordering from consecutive blocks `(kind, number of variables)`.
    pub fn new(blocks: Vec<(BlockKind, usize)>, module_rule: ModuleRule) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidOrdering("no blocks".into()));
        }
        let mut start = 0;
        let mut out = Vec::with_capacity(blocks.len());
        for (kind, len) in blocks {
            if len == 0 {
                return Err(Error::InvalidOrdering("empty block".into()));
            }
            if let BlockKind::Weighted(w) | BlockKind::NegWeighted(w) = &kind {
                if w.len() != len {
                    return Err(Error::InvalidOrdering(format!(
                        "weight vector of length {} for a block of {} variables",
                        w.len(),
                        len
                    )));
                }
                if w.contains(&0) {
                    return Err(Error::InvalidOrdering("weights must be positive".into()));
                }
            }
            out.push(OrderBlock { kind, start, len });
            start += len;
        }
        Ok(OrderingSpec {
            blocks: out,
            module_rule,
        })
    }

    pub fn single(kind: BlockKind, nvars: usize) -> Result<Self> {
        Self::new(vec![(kind, nvars)], ModuleRule::default())
    }

    pub fn with_module_rule(mut self, rule: ModuleRule) -> Self {
        self.module_rule = rule;
        self
    }

    pub fn blocks(&self) -> &[OrderBlock] {
        &self.blocks
    }

    pub fn module_rule(&self) -> ModuleRule {
        self.module_rule
    }

    pub fn nvars(&self) -> usize {
        self.blocks.iter().map(|b| b.len).sum()
    }

    pub fn is_global(&self) -> bool {
        self.blocks.iter().all(|b| !b.kind.is_local())
    }

    pub fn is_local(&self) -> bool {
        self.blocks.iter().all(|b| b.kind.is_local())
    }

    /// Per-variable flag: true when the variable is local (`x < 1`).
    pub fn local_flags(&self) -> Vec<bool> {
        let mut flags = Vec::with_capacity(self.nvars());
        for b in &self.blocks {
            flags.extend(std::iter::repeat_n(b.kind.is_local(), b.len));
        }
        flags
    }

    /// A single local block in which a smaller total degree always means a
    /// larger monomial. For these, everything of high enough degree can be
    /// truncated once the leading ideal contains a power of the maximal ideal.
    pub fn is_local_degree_ordering(&self) -> bool {
        self.blocks.len() == 1 && matches!(self.blocks[0].kind, BlockKind::NegDegLex | BlockKind::NegDegRevLex)
    }

    pub fn token(&self) -> String {
        let body = if self.blocks.len() == 1 {
            self.blocks[0].kind.token()
        } else {
            let parts: Vec<String> = self
                .blocks
                .iter()
                .map(|b| match &b.kind {
                    BlockKind::Weighted(_) | BlockKind::NegWeighted(_) => b.kind.token(),
                    k => format!("{}({})", k.token(), b.len),
                })
                .collect();
            format!("({})", parts.join(","))
        };
        match self.module_rule {
            ModuleRule::PositionOverTerm => body,
            ModuleRule::TermOverPosition => format!("{body}:top"),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        let n = self.nvars();
        if a.nvars() != n || b.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: if a.nvars() != n { a.nvars() } else { b.nvars() },
            });
        }
        Ok(self.cmp_monomials(a, b))
    }

    /// Module comparison of `(monomial, component)` pairs. Lower component
    /// indices are larger.
    pub fn compare_module(&self, a: (&Monomial, u32), b: (&Monomial, u32)) -> Result<Ordering> {
        self.compare(a.0, b.0)?;
        Ok(self.cmp_module_terms(a.0, a.1, b.0, b.1))
    }

    #[inline]
    pub fn cmp_module_terms(&self, a: &Monomial, ca: u32, b: &Monomial, cb: u32) -> Ordering {
        match self.module_rule {
            ModuleRule::PositionOverTerm => cb.cmp(&ca).then_with(|| self.cmp_monomials(a, b)),
            ModuleRule::TermOverPosition => self.cmp_monomials(a, b).then_with(|| cb.cmp(&ca)),
        }
    }

    /// Unchecked comparison; both monomials must have `nvars()` entries.
    #[inline]
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.blocks.len() == 1 {
            return cmp_block(
                &self.blocks[0].kind,
                a.exponents(),
                b.exponents(),
                Some((a.degree(), b.degree())),
            );
        }
        for block in &self.blocks {
            let r = block.start..block.start + block.len;
            let o = cmp_block(&block.kind, &a.exponents()[r.clone()], &b.exponents()[r], None);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

fn degree(e: &[u16]) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

fn weighted(e: &[u16], w: &[u32]) -> u64 {
    e.iter().zip(w).map(|(&x, &w)| x as u64 * w as u64).sum()
}

#[inline]
fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

/// Reverse lexicographic tie-break: the monomial with the smaller exponent
/// in the last differing variable is larger.
#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[inline]
fn cmp_block(kind: &BlockKind, a: &[u16], b: &[u16], degs: Option<(u32, u32)>) -> Ordering {
    let deg = || match degs {
        Some((da, db)) => (da as u64, db as u64),
        None => (degree(a), degree(b)),
    };
    match kind {
        BlockKind::Lex => lex(a, b),
        BlockKind::DegLex => {
            let (da, db) = deg();
            da.cmp(&db).then_with(|| lex(a, b))
        }
        BlockKind::DegRevLex => {
            let (da, db) = deg();
            da.cmp(&db).then_with(|| revlex(a, b))
        }
        BlockKind::NegDegLex => {
            let (da, db) = deg();
            db.cmp(&da).then_with(|| lex(a, b))
        }
        BlockKind::NegDegRevLex => {
            let (da, db) = deg();
            db.cmp(&da).then_with(|| revlex(a, b))
        }
        BlockKind::Weighted(w) => weighted(a, w).cmp(&weighted(b, w)).then_with(|| revlex(a, b)),
        BlockKind::NegWeighted(w) => weighted(b, w).cmp(&weighted(a, w)).then_with(|| revlex(a, b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn degrevlex_example() {
        let o = OrderingSpec::single(BlockKind::DegRevLex, 2).unwrap();
        assert_eq!(o.compare(&m(&[2, 1]), &m(&[1, 2])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn local_one_is_largest() {
        let o = OrderingSpec::single(BlockKind::NegDegRevLex, 1).unwrap();
        assert_eq!(o.compare(&m(&[0]), &m(&[1])).unwrap(), Ordering::Greater);
        assert!(o.is_local() && o.is_local_degree_ordering());
    }

    #[test]
    fn block_order_mixed() {
        let o = OrderingSpec::new(
            vec![(BlockKind::DegRevLex, 1), (BlockKind::NegDegRevLex, 1)],
            ModuleRule::default(),
        )
        .unwrap();
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 1])).unwrap(), Ordering::Greater);
        assert_eq!(o.local_flags(), vec![false, true]);
        assert!(!o.is_global() && !o.is_local());
        // Independent check of the block definition on every pair of
        // monomials of degree at most 2: the x-exponent decides first
        // (larger wins), then the y-exponent (smaller wins).
        let mons: Vec<[u32; 2]> = (0..=2).flat_map(|a| (0..=2 - a).map(move |b| [a, b])).collect();
        for p in &mons {
            for q in &mons {
                let expect = p[0].cmp(&q[0]).then(q[1].cmp(&p[1]));
                assert_eq!(o.compare(&m(p), &m(q)).unwrap(), expect, "{p:?} vs {q:?}");
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let o = OrderingSpec::single(BlockKind::DegRevLex, 2).unwrap();
        assert!(matches!(
            o.compare(&m(&[1]), &m(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn module_rules() {
        let pot = OrderingSpec::single(BlockKind::DegRevLex, 1).unwrap();
        let top = pot.clone().with_module_rule(ModuleRule::TermOverPosition);
        // (x, e2) vs (1, e1)
        assert_eq!(
            pot.compare_module((&m(&[1]), 2), (&m(&[0]), 1)).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            top.compare_module((&m(&[1]), 2), (&m(&[0]), 1)).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            top.compare_module((&m(&[1]), 1), (&m(&[1]), 2)).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn invalid_weights() {
        assert!(OrderingSpec::single(BlockKind::Weighted(vec![1, 0]), 2).is_err());
        assert!(OrderingSpec::single(BlockKind::Weighted(vec![1]), 2).is_err());
    }
}
