//! Elements of ℕ^k with componentwise order, join and meet.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A multi-degree in ℕ^k. One component per alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grade(Vec<u32>);

impl Grade {
    pub fn new(components: Vec<u32>) -> Self {
        Grade(components)
    }

    pub fn zero(k: usize) -> Self {
        Grade(vec![0; k])
    }

    /// The constant grade (c, c, ..., c).
    pub fn splat(k: usize, c: u32) -> Self {
        Grade(vec![c; k])
    }

    /// The unit vector with a 1 in position `i` (0-based).
    pub fn unit(k: usize, i: usize) -> Self {
        let mut g = Grade::zero(k);
        g.0[i] = 1;
        g
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self ≤ other`. Grades of different length are never comparable.
    pub fn le(&self, other: &Grade) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Grade) -> Grade {
        debug_assert_eq!(self.k(), other.k());
        Grade(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn meet(&self, other: &Grade) -> Grade {
        debug_assert_eq!(self.k(), other.k());
        Grade(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn add(&self, other: &Grade) -> Grade {
        debug_assert_eq!(self.k(), other.k());
        Grade(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, defined when `other ≤ self`.
    pub fn checked_sub(&self, other: &Grade) -> Option<Grade> {
        if !other.le(self) {
            return None;
        }
        Some(Grade(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// All grades `g` with `0 ≤ g ≤ self`, in graded order.
    pub fn down_set(&self) -> Vec<Grade> {
        let mut out = vec![Grade::zero(self.k())];
        for (i, &bound) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
            for g in &out {
                for c in 0..=bound {
                    let mut h = g.clone();
                    h.0[i] = c;
                    next.push(h);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// Graded order: total degree first, then lexicographic on components.
impl Ord for Grade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Grade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("grade must look like (m1,...,mk): {s:?}")))?;
        let comps = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad grade component {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Grade(comps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let g: Grade = "(2, 1)".parse().unwrap();
        assert_eq!(g, Grade::new(vec![2, 1]));
        assert_eq!(g.to_string(), "(2,1)");
        assert!("2,1".parse::<Grade>().is_err());
        assert!("(2,x)".parse::<Grade>().is_err());
    }

    #[test]
    fn lattice_ops() {
        let a = Grade::new(vec![2, 0, 1]);
        let b = Grade::new(vec![1, 3, 1]);
        assert_eq!(a.join(&b), Grade::new(vec![2, 3, 1]));
        assert_eq!(a.meet(&b), Grade::new(vec![1, 0, 1]));
        assert!(a.meet(&b).le(&a));
        assert!(!a.le(&b));
        assert_eq!(a.join(&b).checked_sub(&a), Some(Grade::new(vec![0, 3, 0])));
        assert_eq!(a.checked_sub(&b), None);
    }

    #[test]
    fn down_set_is_complete_and_sorted() {
        let g = Grade::new(vec![1, 2]);
        let ds = g.down_set();
        assert_eq!(ds.len(), 6);
        assert_eq!(ds[0], Grade::zero(2));
        assert!(ds.windows(2).all(|w| w[0] < w[1]));
        assert!(ds.iter().all(|h| h.le(&g)));
    }
}
