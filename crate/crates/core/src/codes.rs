//! Generalized prefix codes: finite antichains for the comparability relation.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::element::{same_presentation, Element};
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::presentation::Presentation;

/// Pairwise incomparable (the distinct members have empty join).
pub fn is_prefix_code(elements: &[Element]) -> bool {
    first_comparable_pair(elements).is_none()
}

pub(crate) fn first_comparable_pair(elements: &[Element]) -> Option<(usize, usize)> {
    for a in 0..elements.len() {
        for b in (a + 1)..elements.len() {
            if elements[a] == elements[b] || elements[a].comparable(&elements[b]) {
                return Some((a, b));
            }
        }
    }
    None
}

fn grade_join(pres: &Presentation, elements: &[Element]) -> Grade {
    elements
        .iter()
        .fold(Grade::zero(pres.k()), |acc, e| acc.join(e.grade()))
}

/// Whether `XS` is an essential right ideal: with `m` the join of the member
/// grades, every element of `C_m` has a member of `X` as an initial factor.
pub fn covers_essential(pres: &Arc<Presentation>, elements: &[Element]) -> bool {
    if elements.is_empty() {
        return false;
    }
    let m = grade_join(pres, elements);
    Element::enumerate_grade(pres, &m)
        .iter()
        .all(|u| elements.iter().any(|x| x.is_initial_factor_of(u)))
}

/// Counting data behind the maximality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtentReport {
    pub extent: Grade,
    /// `Σ_c |C_{extent − d(c)}|`: the elements of `C_extent` below some member.
    pub weightsum: BigUint,
    /// `|C_extent|`.
    pub total: BigUint,
}

/// A non-empty generalized prefix code, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixCode {
    pres: Arc<Presentation>,
    elements: Vec<Element>,
}

impl PrefixCode {
    pub fn new(pres: &Arc<Presentation>, mut elements: Vec<Element>) -> Result<PrefixCode> {
        if elements.is_empty() {
            return Err(Error::NotACode("a code needs at least one element".into()));
        }
        if elements
            .iter()
            .any(|e| !same_presentation(e.presentation(), pres))
        {
            return Err(Error::PresentationMismatch);
        }
        elements.sort();
        if let Some((a, b)) = first_comparable_pair(&elements) {
            return Err(Error::NotACode(format!(
                "{} and {} are comparable",
                elements[a], elements[b]
            )));
        }
        Ok(PrefixCode {
            pres: Arc::clone(pres),
            elements,
        })
    }

    /// Builds a code whose members are known to be pairwise incomparable.
    pub(crate) fn from_sorted_unchecked(pres: &Arc<Presentation>, elements: Vec<Element>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        PrefixCode {
            pres: Arc::clone(pres),
            elements,
        }
    }

    pub fn parse(pres: &Arc<Presentation>, texts: &[&str]) -> Result<PrefixCode> {
        let elements = texts
            .iter()
            .map(|t| Element::parse(pres, t))
            .collect::<Result<Vec<_>>>()?;
        PrefixCode::new(pres, elements)
    }

    /// Reads a JSON array of element texts.
    pub fn from_json(pres: &Arc<Presentation>, text: &str) -> Result<PrefixCode> {
        let texts: Vec<String> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
        PrefixCode::parse(pres, &refs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.texts()).expect("strings serialize")
    }

    pub fn texts(&self) -> Vec<String> {
        self.elements.iter().map(Element::to_string).collect()
    }

    /// `{1}`.
    pub fn identity(pres: &Arc<Presentation>) -> PrefixCode {
        PrefixCode::from_sorted_unchecked(pres, vec![Element::identity(pres)])
    }

    /// The alphabet `X_i` (0-based `i`) as a code.
    pub fn alphabet(pres: &Arc<Presentation>, i: usize) -> PrefixCode {
        let letters = pres
            .letters(i)
            .map(|l| Element::from_letter(pres, l))
            .collect();
        PrefixCode::from_sorted_unchecked(pres, letters)
    }

    /// `C_m`, every element of grade `m`.
    pub fn homogeneous(pres: &Arc<Presentation>, m: &Grade) -> PrefixCode {
        PrefixCode::from_sorted_unchecked(pres, Element::enumerate_grade(pres, m))
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    /// Join of the member grades.
    pub fn extent(&self) -> Grade {
        grade_join(&self.pres, &self.elements)
    }

    pub fn extent_report(&self) -> ExtentReport {
        let extent = self.extent();
        let weightsum = self
            .elements
            .iter()
            .map(|c| Element::count_grade(&self.pres, &extent.checked_sub(c.grade()).unwrap()))
            .sum();
        ExtentReport {
            total: Element::count_grade(&self.pres, &extent),
            extent,
            weightsum,
        }
    }

    /// Members are disjoint, so covering `C_extent` is a counting question.
    pub fn is_maximal(&self) -> bool {
        let r = self.extent_report();
        r.weightsum == r.total
    }

    /// The slow route: enumerate `C_extent` and look for an initial factor of each.
    pub fn is_maximal_by_cover(&self) -> bool {
        covers_essential(&self.pres, &self.elements)
    }

    /// `(C \ {x}) ∪ x·D`.
    pub fn expansion(&self, x: &Element, d: &PrefixCode) -> Result<PrefixCode> {
        if !same_presentation(&self.pres, &d.pres) {
            return Err(Error::PresentationMismatch);
        }
        if !self.contains(x) {
            return Err(Error::NotMember(x.to_string()));
        }
        if !d.is_maximal() {
            return Err(Error::ExpanderNotMaximal);
        }
        let mut out: Vec<Element> = self.elements.iter().filter(|c| *c != x).cloned().collect();
        out.extend(d.elements.iter().map(|y| x.mul_unchecked(y)));
        out.sort();
        Ok(PrefixCode::from_sorted_unchecked(&self.pres, out))
    }

    /// `(C \ x·D) ∪ {x}`, defined when `x·D ⊆ C`.
    pub fn reduction(&self, x: &Element, d: &PrefixCode) -> Result<PrefixCode> {
        if !same_presentation(&self.pres, &d.pres) {
            return Err(Error::PresentationMismatch);
        }
        if !d.is_maximal() {
            return Err(Error::ReducerNotMaximal);
        }
        let block: Vec<Element> = d.elements.iter().map(|y| x.mul_unchecked(y)).collect();
        if let Some(missing) = block.iter().find(|e| !self.contains(e)) {
            return Err(Error::NotASubset(missing.to_string()));
        }
        let mut out: Vec<Element> = self
            .elements
            .iter()
            .filter(|c| !block.contains(c))
            .cloned()
            .collect();
        out.push(x.clone());
        out.sort();
        Ok(PrefixCode::from_sorted_unchecked(&self.pres, out))
    }

    /// Every `(x, i)` with `x·X_i ⊆ C`, ordered by `x` then `i`.
    pub fn find_alphabet_reductions(&self) -> Vec<(Element, usize)> {
        let k = self.pres.k();
        let mut found = Vec::new();
        for c in &self.elements {
            for i in 0..k {
                if c.grade().get(i) == 0 {
                    continue;
                }
                let head = c.grade().checked_sub(&Grade::unit(k, i)).unwrap();
                let x = c.split_unchecked(&head).0;
                let complete = self
                    .pres
                    .letters(i)
                    .all(|l| self.contains(&x.mul_unchecked(&Element::from_letter(&self.pres, l))));
                if complete && !found.contains(&(x.clone(), i)) {
                    found.push((x, i));
                }
            }
        }
        found.sort();
        found
    }

    /// Whether the code is generated from `{1}` and the alphabets by expansions.
    ///
    /// Decides this through the decomposition `C = ⋃_{x ∈ X_i} x·Z_x` with each
    /// `Z_x` concrete, trying every `i`.
    pub fn is_concrete(&self) -> Result<bool> {
        if !self.is_maximal() {
            return Err(Error::NotMaximal);
        }
        Ok(concrete(&self.pres, &self.elements))
    }
}

fn concrete(pres: &Arc<Presentation>, elements: &[Element]) -> bool {
    if elements.len() == 1 && elements[0].is_identity() {
        return true;
    }
    let k = pres.k();
    (0..k).any(|i| {
        if elements.iter().any(|c| c.grade().get(i) == 0) {
            return false;
        }
        let unit = Grade::unit(k, i);
        let mut groups: BTreeMap<usize, Vec<Element>> = BTreeMap::new();
        for c in elements {
            let (x, rest) = c.split_unchecked(&unit);
            groups.entry(x.letters()[0].index).or_default().push(rest);
        }
        groups.len() == pres.alphabet_size(i)
            && groups.into_values().all(|mut z| {
                z.sort();
                concrete(pres, &z)
            })
    })
}
