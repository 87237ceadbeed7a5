//! Elements of the group attached to a k-monoid, stored as bijections
//! between two maximal prefix codes.

use std::fmt;
use std::sync::Arc;

use crate::bisections::{pairs_to_json, parse_pairs, PartialTable};
use crate::codes::PrefixCode;
use crate::element::{same_presentation, Element};
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::presentation::Presentation;

/// `a_i·w ↦ b_i·w`. Domain and range are maximal codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    table: PartialTable,
}

fn maximal(pres: &Arc<Presentation>, elements: Vec<Element>) -> Result<bool> {
    Ok(PrefixCode::new(pres, elements)?.is_maximal())
}

impl GroupElement {
    /// `a.elements()[i] ↦ b.elements()[pairing[i]]`.
    pub fn from_codes(a: &PrefixCode, b: &PrefixCode, pairing: &[usize]) -> Result<Self> {
        if !same_presentation(a.presentation(), b.presentation()) {
            return Err(Error::PresentationMismatch);
        }
        if !a.is_maximal() || !b.is_maximal() {
            return Err(Error::NotMaximal);
        }
        if a.len() != b.len() {
            return Err(Error::SizeMismatch(a.len(), b.len()));
        }
        if pairing.len() != a.len() {
            return Err(Error::SizeMismatch(a.len(), pairing.len()));
        }
        let mut seen = vec![false; b.len()];
        let mut pairs = Vec::with_capacity(a.len());
        for (x, &j) in a.elements().iter().zip(pairing) {
            if j >= b.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::NotBijective(format!("pairing index {j}")));
            }
            pairs.push((x.clone(), b.elements()[j].clone()));
        }
        pairs.sort();
        Ok(GroupElement {
            table: PartialTable::from_sorted_unchecked(a.presentation(), pairs),
        })
    }

    /// Pairs `dom[i] ↦ ran[i]` in the order given.
    pub fn from_ordered(pres: &Arc<Presentation>, dom: &[&str], ran: &[&str]) -> Result<Self> {
        if dom.len() != ran.len() {
            return Err(Error::SizeMismatch(dom.len(), ran.len()));
        }
        let pairs: Vec<(&str, &str)> = dom.iter().copied().zip(ran.iter().copied()).collect();
        GroupElement::from_table(PartialTable::parse(pres, &pairs)?)
    }

    pub fn from_pairs(pres: &Arc<Presentation>, pairs: Vec<(Element, Element)>) -> Result<Self> {
        GroupElement::from_table(PartialTable::from_pairs(pres, pairs)?)
    }

    pub fn from_table(table: PartialTable) -> Result<Self> {
        let pres = table.presentation();
        if table.is_zero() || !maximal(pres, table.domain())? || !maximal(pres, table.range())? {
            return Err(Error::NotMaximal);
        }
        Ok(GroupElement { table })
    }

    /// Reads `[["dom","ran"], ...]`.
    pub fn from_json(pres: &Arc<Presentation>, text: &str) -> Result<Self> {
        GroupElement::from_pairs(pres, parse_pairs(pres, text)?)
    }

    pub fn to_json(&self) -> String {
        pairs_to_json(self.table.pairs())
    }

    pub fn identity(pres: &Arc<Presentation>) -> Self {
        GroupElement {
            table: PartialTable::identity(pres),
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.table.presentation()
    }

    pub fn table(&self) -> &PartialTable {
        &self.table
    }

    pub fn pairs(&self) -> &[(Element, Element)] {
        self.table.pairs()
    }

    pub fn len(&self) -> usize {
        self.table.pairs().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn domain_code(&self) -> PrefixCode {
        PrefixCode::from_sorted_unchecked(self.presentation(), self.table.domain())
    }

    pub fn range_code(&self) -> PrefixCode {
        PrefixCode::from_sorted_unchecked(self.presentation(), self.table.range())
    }

    /// Join of the domain grades.
    pub fn extent(&self) -> Grade {
        self.table.domain_grade()
    }

    /// `f ∘ g`: `g` is applied first.
    pub fn compose(&self, g: &GroupElement) -> Result<GroupElement> {
        let table = self.table.compose(&g.table)?;
        let pres = table.presentation();
        if table.is_zero()
            || !maximal(pres, table.domain()).map_err(internal)?
            || !maximal(pres, table.range()).map_err(internal)?
        {
            return Err(Error::Internal(
                "composite is not a bijection of maximal codes".into(),
            ));
        }
        Ok(GroupElement { table })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            table: self.table.inverse(),
        }
    }

    /// Domain becomes exactly `C_m`.
    pub fn expand_to_grade(&self, m: &Grade) -> Result<GroupElement> {
        let ext = self.extent();
        if !ext.le(m) {
            return Err(Error::GradeTooSmall {
                requested: m.to_string(),
                required: ext.to_string(),
            });
        }
        Ok(GroupElement {
            table: self.table.canonicalize(m)?,
        })
    }

    pub fn equals(&self, g: &GroupElement) -> Result<bool> {
        self.table.equivalent(&g.table)
    }

    pub fn act(&self, w: &Element) -> Result<Element> {
        if !same_presentation(self.presentation(), w.presentation()) {
            return Err(Error::PresentationMismatch);
        }
        self.table
            .apply(w)
            .ok_or_else(|| Error::InsufficientDepth(w.to_string()))
    }

    /// Greedy synchronous alphabet reductions, to a fixpoint.
    pub fn simplify(&self) -> GroupElement {
        let pres = Arc::clone(self.presentation());
        let mut pairs = self.table.pairs().to_vec();
        while let Some(next) = reduce_once(&pres, &pairs) {
            pairs = next;
        }
        GroupElement {
            table: PartialTable::from_sorted_unchecked(&pres, pairs),
        }
    }

    /// `f g f⁻¹ g⁻¹`.
    pub fn commutator(&self, g: &GroupElement) -> Result<GroupElement> {
        let tail = self.inverse().compose(&g.inverse())?;
        self.compose(&g.compose(&tail)?)
    }

    /// Smallest `1 ≤ n ≤ bound` with `fⁿ = 1`.
    pub fn element_order(&self, bound: u32) -> Result<Option<u32>> {
        let id = GroupElement::identity(self.presentation());
        let mut power = self.clone();
        for n in 1..=bound {
            if power.equals(&id)? {
                return Ok(Some(n));
            }
            power = self.compose(&power)?.simplify();
        }
        Ok(None)
    }

    pub fn power(&self, n: i64) -> Result<GroupElement> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupElement::identity(self.presentation());
        for _ in 0..n.unsigned_abs() {
            acc = base.compose(&acc)?.simplify();
        }
        Ok(acc)
    }
}

fn internal(e: Error) -> Error {
    Error::Internal(e.to_string())
}

// x·χ ↦ y·χ for every χ ∈ X_i collapses to x ↦ y.
fn reduce_once(
    pres: &Arc<Presentation>,
    pairs: &[(Element, Element)],
) -> Option<Vec<(Element, Element)>> {
    let n_i = |i: usize| pres.alphabet_size(i);
    let lookup = |d: &Element| pairs.binary_search_by(|p| p.0.cmp(d)).ok();
    for (a, _) in pairs {
        for i in 0..pres.k() {
            if a.grade().get(i) == 0 {
                continue;
            }
            let unit = pres.unit(i);
            let (x, _) = a.split_unchecked(&a.grade().checked_sub(&unit).unwrap());
            let mut y: Option<Element> = None;
            let mut hits = Vec::with_capacity(n_i(i));
            let mut ok = true;
            for chi in pres.letters(i) {
                let chi = Element::from_letter(pres, chi);
                let Some(idx) = lookup(&x.mul_unchecked(&chi)) else {
                    ok = false;
                    break;
                };
                let b = &pairs[idx].1;
                let Some(bp) = b.grade().checked_sub(&unit) else {
                    ok = false;
                    break;
                };
                let (head, tail) = b.split_unchecked(&bp);
                if tail != chi || y.as_ref().is_some_and(|y| *y != head) {
                    ok = false;
                    break;
                }
                y = Some(head);
                hits.push(idx);
            }
            if !ok {
                continue;
            }
            let mut next: Vec<(Element, Element)> = pairs
                .iter()
                .enumerate()
                .filter(|(j, _)| !hits.contains(j))
                .map(|(_, p)| p.clone())
                .collect();
            next.push((x, y.unwrap()));
            next.sort();
            return Some(next);
        }
    }
    None
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|(a, b)| format!("{a}→{b}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Standard generators of Thompson's group V inside the free monoid on two letters.
pub mod thompson {
    use super::*;

    pub fn swap(pres: &Arc<Presentation>) -> Result<GroupElement> {
        GroupElement::from_ordered(pres, &["a1", "a2"], &["a2", "a1"])
    }

    pub fn x0(pres: &Arc<Presentation>) -> Result<GroupElement> {
        GroupElement::from_ordered(pres, &["a1.a1", "a1.a2", "a2"], &["a1", "a2.a1", "a2.a2"])
    }

    pub fn x1(pres: &Arc<Presentation>) -> Result<GroupElement> {
        GroupElement::from_ordered(
            pres,
            &["a1", "a2.a1.a1", "a2.a1.a2", "a2.a2"],
            &["a1", "a2.a1", "a2.a2.a1", "a2.a2.a2"],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::thompson::{swap, x0, x1};
    use super::*;
    use crate::catalog::catalog;

    fn pres(name: &str) -> Arc<Presentation> {
        Arc::new(catalog(name).unwrap())
    }

    fn g(p: &Arc<Presentation>, dom: &[&str], ran: &[&str]) -> GroupElement {
        GroupElement::from_ordered(p, dom, ran).unwrap()
    }

    fn el(p: &Arc<Presentation>, s: &str) -> Element {
        Element::parse(p, s).unwrap()
    }

    #[test]
    fn construction() {
        let f2 = pres("free-2");
        let a = PrefixCode::parse(&f2, &["a1", "a2"]).unwrap();
        let s = GroupElement::from_codes(&a, &a, &[1, 0]).unwrap();
        assert_eq!(s, swap(&f2).unwrap());
        let single = PrefixCode::parse(&f2, &["a1"]).unwrap();
        assert_eq!(
            GroupElement::from_codes(&single, &single, &[0]),
            Err(Error::NotMaximal)
        );
        let three = PrefixCode::parse(&f2, &["a1", "a2.a1", "a2.a2"]).unwrap();
        assert_eq!(
            GroupElement::from_codes(&a, &three, &[0, 1]),
            Err(Error::SizeMismatch(2, 3))
        );
        let x = x0(&f2).unwrap();
        assert_eq!(GroupElement::from_json(&f2, &x.to_json()).unwrap(), x);
        assert_eq!(
            GroupElement::from_json(&f2, r#"[["a1","a1"]]"#),
            Err(Error::NotMaximal)
        );
    }

    #[test]
    fn composition_examples() {
        let f2 = pres("free-2");
        let id = GroupElement::identity(&f2);
        let s = swap(&f2).unwrap();
        let x = x0(&f2).unwrap();
        assert!(s.compose(&s).unwrap().equals(&id).unwrap());
        assert_eq!(
            s.compose(&x).unwrap(),
            g(&f2, &["a1.a1", "a1.a2", "a2"], &["a2", "a1.a1", "a1.a2"])
        );
        assert!(x.compose(&x.inverse()).unwrap().equals(&id).unwrap());
        for w in Element::enumerate_grade(&f2, &"(3)".parse().unwrap()) {
            let direct = s.act(&x.act(&w).unwrap()).unwrap();
            assert_eq!(s.compose(&x).unwrap().act(&w).unwrap(), direct);
        }
    }

    #[test]
    fn composition_matches_homogeneous_route() {
        let p2 = pres("power2-2");
        let f = g(&p2, &["e1", "e2"], &["f2", "f1"]);
        let h = g(&p2, &["e1.f1", "e1.f2", "e2"], &["f2", "e1.f2", "e2.f1"]);
        let c = f.compose(&h).unwrap();
        let m = c.extent().join(&f.extent()).join(&h.extent());
        for w in Element::enumerate_grade(&p2, &m.add(&Grade::splat(2, 1))) {
            assert_eq!(c.act(&w).unwrap(), f.act(&h.act(&w).unwrap()).unwrap());
        }
    }

    #[test]
    fn inverse_examples() {
        let f2 = pres("free-2");
        let id = GroupElement::identity(&f2);
        assert_eq!(id.inverse(), id);
        assert_eq!(swap(&f2).unwrap().inverse(), swap(&f2).unwrap());
        let x = x1(&f2).unwrap();
        assert!(x.inverse().compose(&x).unwrap().equals(&id).unwrap());
    }

    #[test]
    fn expansion_examples() {
        let f2 = pres("free-2");
        let id = GroupElement::identity(&f2);
        assert_eq!(
            id.expand_to_grade(&"(1)".parse().unwrap()).unwrap(),
            g(&f2, &["a1", "a2"], &["a1", "a2"])
        );
        let x = x0(&f2).unwrap();
        let e = x.expand_to_grade(&"(2)".parse().unwrap()).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(
            e.domain_code(),
            PrefixCode::homogeneous(&f2, &"(2)".parse().unwrap())
        );
        assert!(e.equals(&x).unwrap());
        assert!(matches!(
            x.expand_to_grade(&"(1)".parse().unwrap()),
            Err(Error::GradeTooSmall { .. })
        ));
    }

    #[test]
    fn equality_examples() {
        let f2 = pres("free-2");
        let id = GroupElement::identity(&f2);
        assert!(g(&f2, &["a1", "a2"], &["a1", "a2"]).equals(&id).unwrap());
        let x = x0(&f2).unwrap();
        assert!(!x.equals(&swap(&f2).unwrap()).unwrap());
        assert!(x.equals(&x).unwrap());
        let nn = pres("nn");
        let idn = GroupElement::identity(&nn);
        assert!(matches!(
            idn.equals(&idn),
            Err(Error::EffectivenessUnknown(_))
        ));
    }

    #[test]
    fn action_examples() {
        let f2 = pres("free-2");
        let x = x0(&f2).unwrap();
        assert_eq!(x.act(&el(&f2, "a1.a1.a1")).unwrap(), el(&f2, "a1.a1"));
        assert_eq!(x.act(&el(&f2, "a2.a1")).unwrap(), el(&f2, "a2.a2.a1"));
        let w = el(&f2, "a2.a1.a2");
        assert_eq!(GroupElement::identity(&f2).act(&w).unwrap(), w);
        assert!(matches!(
            x.act(&el(&f2, "a1")),
            Err(Error::InsufficientDepth(_))
        ));
    }

    #[test]
    fn simplify_examples() {
        let f2 = pres("free-2");
        let id = GroupElement::identity(&f2);
        assert_eq!(
            id.expand_to_grade(&"(2)".parse().unwrap())
                .unwrap()
                .simplify(),
            id
        );
        let x = x0(&f2).unwrap();
        let s = x
            .expand_to_grade(&"(3)".parse().unwrap())
            .unwrap()
            .simplify();
        assert_eq!(s.len(), 3);
        assert!(s.equals(&x).unwrap());
        assert_eq!(swap(&f2).unwrap().simplify(), swap(&f2).unwrap());
        let p2 = pres("power2-2");
        let idp = GroupElement::identity(&p2);
        assert_eq!(
            idp.expand_to_grade(&"(1,1)".parse().unwrap())
                .unwrap()
                .simplify(),
            idp
        );
    }

    #[test]
    fn commutators_and_orders() {
        let f2 = pres("free-2");
        let id = GroupElement::identity(&f2);
        let x = x0(&f2).unwrap();
        assert!(x.commutator(&x).unwrap().equals(&id).unwrap());
        assert_eq!(swap(&f2).unwrap().element_order(5).unwrap(), Some(2));
        assert_eq!(id.element_order(5).unwrap(), Some(1));
        assert_eq!(x.element_order(6).unwrap(), None);
        let h1 = g(&f2, &["a1.a1", "a1.a2", "a2"], &["a1.a2", "a1.a1", "a2"]);
        let h2 = g(&f2, &["a1", "a2.a1", "a2.a2"], &["a1", "a2.a2", "a2.a1"]);
        assert!(h1.commutator(&h2).unwrap().equals(&id).unwrap());
        assert!(!h1.commutator(&x).unwrap().equals(&id).unwrap());
    }

    // Words in x0, x1 are read left to right: the leftmost letter acts first.
    #[test]
    fn thompson_f_relations() {
        let f2 = pres("free-2");
        let id = GroupElement::identity(&f2);
        let a = x0(&f2).unwrap();
        let b = x1(&f2).unwrap();
        let word = |letters: &[GroupElement]| {
            letters
                .iter()
                .fold(id.clone(), |acc, l| l.compose(&acc).unwrap())
        };
        let (ai, bi) = (a.inverse(), b.inverse());
        let u = word(&[a.clone(), bi.clone()]);
        let v = word(&[ai.clone(), b.clone(), a.clone()]);
        let w = word(&[ai.clone(), ai.clone(), b.clone(), a.clone(), a.clone()]);
        assert!(u.commutator(&v).unwrap().equals(&id).unwrap());
        assert!(u.commutator(&w).unwrap().equals(&id).unwrap());
        assert!(!a.commutator(&b).unwrap().equals(&id).unwrap());
    }
}
