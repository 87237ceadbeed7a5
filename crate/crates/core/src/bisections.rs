//! Partial bijections between prefix codes: joins of basic morphisms
//! `y·s ↦ x·s`, modulo agreement on the boundary.

use std::sync::Arc;

use crate::codes::{covers_essential, first_comparable_pair};
use crate::element::{same_presentation, Element};
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::presentation::Presentation;

/// Finite set of `(domain, range)` pairs; both columns are prefix codes and
/// the pairing is bijective. The empty table is the zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTable {
    pres: Arc<Presentation>,
    // sorted by domain entry
    pairs: Vec<(Element, Element)>,
}

pub(crate) fn parse_pairs(pres: &Arc<Presentation>, text: &str) -> Result<Vec<(Element, Element)>> {
    let raw: Vec<(String, String)> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.iter()
        .map(|(a, b)| Ok((Element::parse(pres, a)?, Element::parse(pres, b)?)))
        .collect()
}

pub(crate) fn pairs_to_json(pairs: &[(Element, Element)]) -> String {
    let raw: Vec<[String; 2]> = pairs
        .iter()
        .map(|(a, b)| [a.to_string(), b.to_string()])
        .collect();
    serde_json::to_string(&raw).expect("strings serialize")
}

fn gate(pres: &Presentation) -> Result<()> {
    if pres.effectiveness().permits_equality() {
        Ok(())
    } else {
        Err(Error::EffectivenessUnknown(
            pres.effectiveness().to_string(),
        ))
    }
}

impl PartialTable {
    pub fn from_pairs(
        pres: &Arc<Presentation>,
        mut pairs: Vec<(Element, Element)>,
    ) -> Result<Self> {
        if pairs.iter().any(|(a, b)| {
            !same_presentation(a.presentation(), pres) || !same_presentation(b.presentation(), pres)
        }) {
            return Err(Error::PresentationMismatch);
        }
        pairs.sort();
        let domain: Vec<Element> = pairs.iter().map(|p| p.0.clone()).collect();
        let mut range: Vec<Element> = pairs.iter().map(|p| p.1.clone()).collect();
        if let Some(w) = domain.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotBijective(format!("{} has two images", w[0])));
        }
        range.sort();
        if let Some(w) = range.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotBijective(format!("{} has two preimages", w[0])));
        }
        if let Some((a, b)) = first_comparable_pair(&domain) {
            return Err(Error::DomainNotCode(format!(
                "{} and {} are comparable",
                domain[a], domain[b]
            )));
        }
        if let Some((a, b)) = first_comparable_pair(&range) {
            return Err(Error::RangeNotCode(format!(
                "{} and {} are comparable",
                range[a], range[b]
            )));
        }
        Ok(PartialTable {
            pres: Arc::clone(pres),
            pairs,
        })
    }

    pub(crate) fn from_sorted_unchecked(
        pres: &Arc<Presentation>,
        pairs: Vec<(Element, Element)>,
    ) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        PartialTable {
            pres: Arc::clone(pres),
            pairs,
        }
    }

    /// Pairs given as element texts.
    pub fn parse(pres: &Arc<Presentation>, pairs: &[(&str, &str)]) -> Result<Self> {
        let pairs = pairs
            .iter()
            .map(|(a, b)| Ok((Element::parse(pres, a)?, Element::parse(pres, b)?)))
            .collect::<Result<Vec<_>>>()?;
        PartialTable::from_pairs(pres, pairs)
    }

    /// Reads `[["dom","ran"], ...]`.
    pub fn from_json(pres: &Arc<Presentation>, text: &str) -> Result<Self> {
        PartialTable::from_pairs(pres, parse_pairs(pres, text)?)
    }

    pub fn to_json(&self) -> String {
        pairs_to_json(&self.pairs)
    }

    pub fn zero(pres: &Arc<Presentation>) -> Self {
        PartialTable::from_sorted_unchecked(pres, Vec::new())
    }

    pub fn identity(pres: &Arc<Presentation>) -> Self {
        let one = Element::identity(pres);
        PartialTable::from_sorted_unchecked(pres, vec![(one.clone(), one)])
    }

    /// The identity on `xS` for each `x` of a prefix code.
    pub fn idempotent(pres: &Arc<Presentation>, code: &[Element]) -> Result<Self> {
        PartialTable::from_pairs(pres, code.iter().map(|x| (x.clone(), x.clone())).collect())
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn pairs(&self) -> &[(Element, Element)] {
        &self.pairs
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> Vec<Element> {
        self.pairs.iter().map(|p| p.0.clone()).collect()
    }

    pub fn range(&self) -> Vec<Element> {
        let mut r: Vec<Element> = self.pairs.iter().map(|p| p.1.clone()).collect();
        r.sort();
        r
    }

    /// Join of the domain grades.
    pub fn domain_grade(&self) -> Grade {
        self.pairs
            .iter()
            .fold(Grade::zero(self.pres.k()), |g, (a, _)| g.join(a.grade()))
    }

    /// Re-expresses every pair `(a, b)` as `{(a·t, b·t) : t ∈ C_{m − d(a)}}`.
    pub fn canonicalize(&self, m: &Grade) -> Result<Self> {
        if let Some((a, _)) = self.pairs.iter().find(|(a, _)| !a.grade().le(m)) {
            return Err(Error::GradeTooSmall {
                requested: m.to_string(),
                required: a.grade().to_string(),
            });
        }
        let mut out = Vec::new();
        for (a, b) in &self.pairs {
            let rest = m.checked_sub(a.grade()).unwrap();
            for t in Element::enumerate_grade(&self.pres, &rest) {
                out.push((a.mul_unchecked(&t), b.mul_unchecked(&t)));
            }
        }
        out.sort();
        Ok(PartialTable::from_sorted_unchecked(&self.pres, out))
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &PartialTable) -> Result<PartialTable> {
        if !same_presentation(&self.pres, &inner.pres) {
            return Err(Error::PresentationMismatch);
        }
        let mut out = Vec::new();
        for (c, d) in &inner.pairs {
            for (a, b) in &self.pairs {
                for e in d.join(a) {
                    let t = d.left_quotient(&e).expect("d ≤ e");
                    let s = a.left_quotient(&e).expect("a ≤ e");
                    out.push((c.mul_unchecked(&t), b.mul_unchecked(&s)));
                }
            }
        }
        out.sort();
        Ok(PartialTable::from_sorted_unchecked(&self.pres, out))
    }

    pub fn inverse(&self) -> PartialTable {
        let mut out: Vec<(Element, Element)> = self
            .pairs
            .iter()
            .map(|(a, b)| (b.clone(), a.clone()))
            .collect();
        out.sort();
        PartialTable::from_sorted_unchecked(&self.pres, out)
    }

    /// Image of `w` under the unique pair whose domain entry is an initial factor of `w`.
    pub fn apply(&self, w: &Element) -> Option<Element> {
        self.pairs
            .iter()
            .find_map(|(a, b)| a.left_quotient(w).map(|s| b.mul_unchecked(&s)))
    }

    fn common_grade(&self, other: &PartialTable) -> Grade {
        self.domain_grade().join(&other.domain_grade())
    }

    /// Equality in the Boolean inverse monoid: identical pair sets once both
    /// tables are brought to one common domain grade.
    pub fn equivalent(&self, other: &PartialTable) -> Result<bool> {
        gate(&self.pres)?;
        if !same_presentation(&self.pres, &other.pres) {
            return Err(Error::PresentationMismatch);
        }
        let m = self.common_grade(other);
        Ok(self.canonicalize(&m)?.pairs == other.canonicalize(&m)?.pairs)
    }

    /// The largest idempotent below `self`: the identity on its fixed cylinders.
    pub fn fixed_idempotent(&self) -> Result<PartialTable> {
        gate(&self.pres)?;
        let canon = self.canonicalize(&self.domain_grade())?;
        let fixed = canon.pairs.into_iter().filter(|(a, b)| a == b).collect();
        Ok(PartialTable::from_sorted_unchecked(&self.pres, fixed))
    }

    /// Greatest lower bound, as the intersection of canonical pair sets.
    pub fn meet(&self, other: &PartialTable) -> Result<PartialTable> {
        gate(&self.pres)?;
        let m = self.common_grade(other);
        let right = other.canonicalize(&m)?;
        let common = self
            .canonicalize(&m)?
            .pairs
            .into_iter()
            .filter(|p| right.pairs.binary_search(p).is_ok())
            .collect();
        Ok(PartialTable::from_sorted_unchecked(&self.pres, common))
    }

    /// Least upper bound of two compatible tables.
    pub fn join_compatible(&self, other: &PartialTable) -> Result<PartialTable> {
        gate(&self.pres)?;
        let m = self.common_grade(other);
        let mut union = self.canonicalize(&m)?.pairs;
        union.extend(other.canonicalize(&m)?.pairs);
        union.sort();
        union.dedup();
        PartialTable::from_pairs(&self.pres, union).map_err(|_| Error::Incompatible)
    }

    /// Whether the domain generates an essential right ideal.
    pub fn domain_essential(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroTable);
        }
        Ok(covers_essential(&self.pres, &self.domain()))
    }
}
