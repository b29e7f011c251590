//! Standard monomials outside a monomial (sub)module: counting, listing
//! and the highest corner.

use crate::ring::Monomial;

/// Leading exponents of a basis, grouped by component, plus an optional
/// degree bound `N` such that every monomial of degree `>= N` is known to
/// lie in the leading module.
#[derive(Debug, Clone)]
pub struct Staircase {
    nvars: usize,
    /// `leads[c]` holds the leading monomials in component `c + 1`.
    leads: Vec<Vec<Monomial>>,
    bound: Option<u32>,
}

/// Standard monomials of one component sharing a prefix: all
/// `prefix * x_last^e` for `e < len`.
struct Run<'a> {
    prefix: &'a [u32],
    len: u32,
}

impl Staircase {
    pub fn new(nvars: usize, rank: u32, leads: impl IntoIterator<Item = (Monomial, u32)>, bound: Option<u32>) -> Self {
        let mut per = vec![Vec::new(); rank as usize];
        for (m, c) in leads {
            per[c as usize - 1].push(m);
        }
        Staircase {
            nvars,
            leads: per,
            bound,
        }
    }

    pub fn rank(&self) -> u32 {
        self.leads.len() as u32
    }

    /// Per-variable minimal pure power present in component `comp`
    /// (1-based), `None` when absent.
    pub fn pure_powers(&self, comp: u32) -> Vec<Option<u32>> {
        let mut out = vec![None; self.nvars];
        for m in &self.leads[comp as usize - 1] {
            if m.is_one() {
                return vec![Some(0); self.nvars];
            }
            if let Some(i) = m.pure_power() {
                let e = m.exponent(i);
                out[i] = Some(out[i].map_or(e, |o: u32| o.min(e)));
            }
        }
        out
    }

    /// Walks the staircase of one component, calling `visit` on maximal
    /// runs along the last variable. Returns `false` if it is infinite.
    fn walk(&self, comp: usize, visit: &mut dyn FnMut(Run<'_>)) -> bool {
        let leads: Vec<&[u16]> = self.leads[comp].iter().map(|m| m.exponents()).collect();
        let mut prefix = vec![0u32; self.nvars];
        self.walk_level(0, &leads, &mut prefix, 0, visit)
    }

    fn walk_level(
        &self,
        level: usize,
        cands: &[&[u16]],
        prefix: &mut Vec<u32>,
        prefix_deg: u32,
        visit: &mut dyn FnMut(Run<'_>),
    ) -> bool {
        let n = self.nvars;
        let room = self.bound.map(|b| b.saturating_sub(prefix_deg));
        if level == n - 1 {
            // smallest exponent of the last variable that lands in the module
            let stop = cands.iter().map(|g| g[level] as u32).min();
            let len = match (stop, room) {
                (Some(s), Some(r)) => s.min(r),
                (Some(s), None) => s,
                (None, Some(r)) => r,
                (None, None) => return false,
            };
            if len > 0 {
                prefix[level] = 0;
                visit(Run { prefix, len });
            }
            return true;
        }
        let mut e: u32 = 0;
        loop {
            if room.is_some_and(|r| e >= r) {
                break;
            }
            let next: Vec<&[u16]> = cands.iter().copied().filter(|g| g[level] as u32 <= e).collect();
            // prefix * x_level^e itself in the module: stop this level
            if next.iter().any(|g| g[level + 1..].iter().all(|&x| x == 0)) {
                break;
            }
            prefix[level] = e;
            if !self.walk_level(level + 1, &next, prefix, prefix_deg + e, visit) {
                return false;
            }
            prefix[level] = 0;
            let grows = cands.iter().any(|g| g[level] as u32 > e);
            if !grows && room.is_none() {
                // candidate set has stabilized; the next step repeats forever
                return false;
            }
            e += 1;
        }
        prefix[level] = 0;
        true
    }

    pub fn is_finite(&self) -> bool {
        (0..self.leads.len()).all(|c| self.walk(c, &mut |_| {}))
    }

    /// Number of standard monomials (or monomial-component pairs).
    pub fn vdim(&self) -> Option<u64> {
        let mut total = 0u64;
        for c in 0..self.leads.len() {
            if !self.walk(c, &mut |run| total += run.len as u64) {
                return None;
            }
        }
        Some(total)
    }

    /// All standard monomials with their 1-based component, unsorted.
    pub fn standard_monomials(&self) -> Option<Vec<(Monomial, u32)>> {
        let mut out = Vec::new();
        let last = self.nvars - 1;
        for c in 0..self.leads.len() {
            let ok = self.walk(c, &mut |run| {
                let mut e = run.prefix.to_vec();
                for k in 0..run.len {
                    e[last] = k;
                    out.push((Monomial::new(&e).expect("staircase exponents fit"), c as u32 + 1));
                }
            });
            if !ok {
                return None;
            }
        }
        Some(out)
    }

    /// Least `N` such that every monomial of degree `>= N` is in the
    /// leading module; 0 for the whole module.
    pub fn highest_corner(&self) -> Option<u32> {
        let mut best: Option<u32> = None;
        for c in 0..self.leads.len() {
            let ok = self.walk(c, &mut |run| {
                let d = run.prefix.iter().sum::<u32>() + run.len - 1;
                best = Some(best.map_or(d, |b| b.max(d)));
            });
            if !ok {
                return None;
            }
        }
        Some(best.map_or(0, |d| d + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(leads: &[&[u32]]) -> Staircase {
        let n = leads[0].len();
        Staircase::new(n, 1, leads.iter().map(|e| (Monomial::new(e).unwrap(), 1)), None)
    }

    fn brute_force(leads: &[&[u32]], boxsize: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for a in 0..boxsize {
            for b in 0..boxsize {
                let e = [a, b];
                if !leads.iter().any(|g| g.iter().zip(&e).all(|(x, y)| x <= y)) {
                    out.push(e.to_vec());
                }
            }
        }
        out
    }

    #[test]
    fn simple_counts() {
        assert_eq!(sc(&[&[2, 0], &[0, 3]]).vdim(), Some(6));
        assert_eq!(sc(&[&[1, 0]]).vdim(), None);
        assert_eq!(sc(&[&[2, 0], &[0, 4]]).vdim(), Some(8));
        assert_eq!(sc(&[&[0, 0]]).vdim(), Some(0));
        assert_eq!(sc(&[&[0, 0]]).highest_corner(), Some(0));
    }

    #[test]
    fn listing_matches_enumeration() {
        let leads: &[&[u32]] = &[&[2, 0], &[1, 1], &[0, 3]];
        let mut got: Vec<Vec<u32>> = sc(leads)
            .standard_monomials()
            .unwrap()
            .into_iter()
            .map(|(m, _)| m.exponents().iter().map(|&x| x as u32).collect())
            .collect();
        got.sort();
        let mut want = brute_force(leads, 8);
        want.sort();
        assert_eq!(got, want);
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0]]);
    }

    #[test]
    fn corners() {
        assert_eq!(sc(&[&[2, 0], &[0, 2]]).highest_corner(), Some(3));
        assert_eq!(sc(&[&[1, 0], &[0, 1]]).highest_corner(), Some(1));
        assert_eq!(sc(&[&[2, 0], &[0, 4]]).highest_corner(), Some(5));
        assert_eq!(sc(&[&[1, 0]]).highest_corner(), None);
    }

    #[test]
    fn degree_bound_closes_staircase() {
        let s = Staircase::new(2, 1, [(Monomial::new(&[1, 0]).unwrap(), 1)], Some(3));
        assert_eq!(s.vdim(), Some(3));
        assert_eq!(s.highest_corner(), Some(3));
    }

    #[test]
    fn three_variables_and_modules() {
        let s = Staircase::new(
            3,
            2,
            [
                (Monomial::new(&[1, 0, 0]).unwrap(), 1),
                (Monomial::new(&[0, 1, 0]).unwrap(), 1),
                (Monomial::new(&[0, 0, 2]).unwrap(), 1),
                (Monomial::new(&[0, 0, 0]).unwrap(), 2),
            ],
            None,
        );
        assert_eq!(s.vdim(), Some(2));
        assert_eq!(s.pure_powers(1), vec![Some(1), Some(1), Some(2)]);
        assert_eq!(s.pure_powers(2), vec![Some(0); 3]);
    }
}
