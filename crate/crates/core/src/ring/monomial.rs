use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub const MAX_EXPONENT: u32 = u16::MAX as u32;

pub type Exponents = SmallVec<[u16; 6]>;

/// A monomial `x^a` stored as its exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn new(exps: &[u32]) -> Result<Self> {
        let mut out = Exponents::with_capacity(exps.len());
        let mut deg = 0;
        for &e in exps {
            if e > MAX_EXPONENT {
                return Err(Error::ExponentOverflow);
            }
            out.push(e as u16);
            deg += e;
        }
        Ok(Monomial { exps: out, deg })
    }

    pub fn variable(nvars: usize, index: usize, power: u32) -> Result<Self> {
        if index >= nvars {
            return Err(Error::IndexOutOfRange(index));
        }
        let mut exps = vec![0; nvars];
        exps[index] = power;
        Monomial::new(&exps)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        for (e, &o) in exps.iter_mut().zip(other.exps.iter()) {
            let s = *e as u32 + o as u32;
            if s > MAX_EXPONENT {
                return Err(Error::ExponentOverflow);
            }
            *e = s as u16;
        }
        Ok(Monomial {
            exps,
            deg: self.deg + other.deg,
        })
    }

    /// `self / other`; caller guarantees divisibility.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let mut exps = self.exps.clone();
        for (e, &o) in exps.iter_mut().zip(other.exps.iter()) {
            *e -= o;
        }
        Monomial {
            exps,
            deg: self.deg - other.deg,
        }
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.div(other))
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.min(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Index of the variable if this monomial is a pure power `x_i^e`, e ≥ 1.
    pub fn pure_power(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Coarse bitmask used to reject divisibility tests quickly: bit `k`
    /// is set when some exponent reaches the k-th threshold.
    #[inline]
    pub fn divmask(&self) -> u64 {
        let n = self.exps.len();
        if n == 0 {
            return 0;
        }
        let per = (64 / n).max(1);
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate().take(64) {
            let base = i * per;
            if base >= 64 {
                break;
            }
            let bits = (e as usize).min(per);
            for b in 0..bits {
                if base + b < 64 {
                    mask |= 1 << (base + b);
                }
            }
        }
        mask
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_guard() {
        assert_eq!(Monomial::new(&[70000]), Err(Error::ExponentOverflow));
        let big = Monomial::new(&[60000]).unwrap();
        assert_eq!(big.mul(&big), Err(Error::ExponentOverflow));
    }

    #[test]
    fn divisibility_and_mask() {
        let a = Monomial::new(&[1, 2, 0]).unwrap();
        let b = Monomial::new(&[2, 2, 5]).unwrap();
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.divmask() & !b.divmask(), 0);
        assert_eq!(b.div(&a), Monomial::new(&[1, 0, 5]).unwrap());
        assert_eq!(a.lcm(&b), b);
        assert_eq!(a.gcd(&b), a);
        assert_eq!(Monomial::new(&[0, 4, 0]).unwrap().pure_power(), Some(1));
        assert_eq!(a.pure_power(), None);
    }
}
