//! Elements of a k-monoid in graded normal form, and the order-theoretic
//! operations built on unique factorization.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::presentation::{Letter, Presentation};

/// A monoid element `w_1 … w_k` with `w_i` a word over `X_i`.
///
/// Equality, ordering and hashing look only at the normal form; callers mixing
/// presentations get [`Error::PresentationMismatch`] from the checked operations.
#[derive(Clone)]
pub struct Element {
    pres: Arc<Presentation>,
    letters: Vec<Letter>,
    grade: Grade,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

/// Canonical order: grade (graded order), then lexicographic in declaration order.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade
            .cmp(&other.grade)
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (n, &l) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}", self.pres.name(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

pub(crate) fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn grade_of(k: usize, letters: &[Letter]) -> Grade {
    let mut g = vec![0u32; k];
    for l in letters {
        g[l.alphabet] += 1;
    }
    Grade::new(g)
}

/// Insertion sort by alphabet index, rewriting each descending pair `y·x`
/// to `theta_inverse(x, y)`. Confluence makes the result independent of order.
fn sort_into_normal_form(p: &Presentation, letters: &mut [Letter]) {
    for start in 1..letters.len() {
        let mut q = start;
        while q > 0 && letters[q - 1].alphabet > letters[q].alphabet {
            let (hi, lo) = (letters[q - 1], letters[q]);
            let (a, b) = p.theta_inverse_raw(lo, hi);
            letters[q - 1] = a;
            letters[q] = b;
            q -= 1;
        }
    }
}

impl Element {
    pub fn identity(pres: &Arc<Presentation>) -> Element {
        Element {
            pres: Arc::clone(pres),
            letters: Vec::new(),
            grade: Grade::zero(pres.k()),
        }
    }

    pub fn from_letter(pres: &Arc<Presentation>, l: Letter) -> Element {
        Element {
            pres: Arc::clone(pres),
            letters: vec![l],
            grade: pres.unit(l.alphabet),
        }
    }

    /// The element equal to the product of `letters` in order.
    pub fn normalize(pres: &Arc<Presentation>, letters: &[Letter]) -> Result<Element> {
        for l in letters {
            if l.alphabet >= pres.k() || l.index >= pres.alphabet_size(l.alphabet) {
                return Err(Error::ForeignLetter(format!("{l:?}")));
            }
        }
        let mut letters = letters.to_vec();
        sort_into_normal_form(pres, &mut letters);
        Ok(Element {
            grade: grade_of(pres.k(), &letters),
            pres: Arc::clone(pres),
            letters,
        })
    }

    /// Parses `"x.y.z"` (any letter order; `"1"` or `""` is the identity).
    pub fn parse(pres: &Arc<Presentation>, text: &str) -> Result<Element> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Element::identity(pres));
        }
        let letters = text
            .split('.')
            .map(|name| pres.letter(name.trim()))
            .collect::<Result<Vec<_>>>()?;
        Element::normalize(pres, &letters)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn grade(&self) -> &Grade {
        &self.grade
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// The `i`-component `w_i` of the normal form.
    pub fn component(&self, i: usize) -> &[Letter] {
        let start = self.letters.partition_point(|l| l.alphabet < i);
        let end = self.letters.partition_point(|l| l.alphabet <= i);
        &self.letters[start..end]
    }

    /// The `i`-projection: the unique `s_i ∈ X_i^*` with `s = s_i·s′` and
    /// `d(s′)_i = 0`.
    pub fn projection(&self, i: usize) -> Vec<Letter> {
        let mut rest = self.letters.clone();
        let mut out = Vec::with_capacity(self.grade.get(i) as usize);
        for _ in 0..self.grade.get(i) {
            out.push(extract_leading(&self.pres, &mut rest, i));
        }
        out
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if same_presentation(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Element) -> Element {
        if other.letters.is_empty() {
            return self.clone();
        }
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        // the left part is sorted already; only the right part needs inserting
        for start in self.letters.len().max(1)..letters.len() {
            let mut q = start;
            while q > 0 && letters[q - 1].alphabet > letters[q].alphabet {
                let (hi, lo) = (letters[q - 1], letters[q]);
                let (a, b) = self.pres.theta_inverse_raw(lo, hi);
                letters[q - 1] = a;
                letters[q] = b;
                q -= 1;
            }
        }
        Element {
            grade: self.grade.add(&other.grade),
            pres: Arc::clone(&self.pres),
            letters,
        }
    }

    /// `s = s(0, m)·s(m, d(s))`.
    pub fn split(&self, m: &Grade) -> Result<(Element, Element)> {
        if !m.le(&self.grade) {
            return Err(Error::GradeTooLarge {
                requested: m.to_string(),
                available: self.grade.to_string(),
            });
        }
        Ok(self.split_unchecked(m))
    }

    pub(crate) fn split_unchecked(&self, m: &Grade) -> (Element, Element) {
        if m.is_zero() {
            return (Element::identity(&self.pres), self.clone());
        }
        if *m == self.grade {
            return (self.clone(), Element::identity(&self.pres));
        }
        let mut rest = self.letters.clone();
        let mut prefix = Vec::with_capacity(m.total() as usize);
        for i in 0..self.pres.k() {
            for _ in 0..m.get(i) {
                prefix.push(extract_leading(&self.pres, &mut rest, i));
            }
        }
        // extraction in ascending alphabet order leaves both parts sorted
        let suffix_grade = self.grade.checked_sub(m).expect("m ≤ grade");
        (
            Element {
                pres: Arc::clone(&self.pres),
                letters: prefix,
                grade: m.clone(),
            },
            Element {
                pres: Arc::clone(&self.pres),
                letters: rest,
                grade: suffix_grade,
            },
        )
    }

    /// `s ∈ aS`, written `self` ≤ `s` in the initial factor order.
    pub fn is_initial_factor_of(&self, s: &Element) -> bool {
        if !same_presentation(&self.pres, &s.pres) || !self.grade.le(&s.grade) {
            return false;
        }
        s.split_unchecked(&self.grade).0 == *self
    }

    /// The suffix `t` with `s = self·t`, if `self` is an initial factor of `s`.
    pub fn left_quotient(&self, s: &Element) -> Option<Element> {
        if !self.grade.le(&s.grade) {
            return None;
        }
        let (p, t) = s.split_unchecked(&self.grade);
        (p == *self).then_some(t)
    }

    /// Every element of grade `m`, lexicographic by `(w_1, …, w_k)`.
    pub fn enumerate_grade(pres: &Arc<Presentation>, m: &Grade) -> Vec<Element> {
        let slots: Vec<usize> = (0..pres.k())
            .flat_map(|i| std::iter::repeat_n(i, m.get(i) as usize))
            .collect();
        let mut out = Vec::new();
        let mut digits = vec![0usize; slots.len()];
        loop {
            let letters = slots
                .iter()
                .zip(&digits)
                .map(|(&a, &x)| Letter::new(a, x))
                .collect();
            out.push(Element {
                pres: Arc::clone(pres),
                letters,
                grade: m.clone(),
            });
            // odometer, least significant digit last
            let mut pos = slots.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < pres.alphabet_size(slots[pos]) {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    /// `|C_m| = Π n_i^{m_i}` without materializing the elements.
    pub fn count_grade(pres: &Presentation, m: &Grade) -> num_bigint::BigUint {
        let mut n = num_bigint::BigUint::from(1u32);
        for i in 0..pres.k() {
            n *= num_bigint::BigUint::from(pres.alphabet_size(i)).pow(m.get(i));
        }
        n
    }

    /// The set `a ∨ b` of minimal common upper bounds, all of grade
    /// `d(a) ∨ d(b)`, in canonical order. Empty iff `a` and `b` are incomparable.
    pub fn join(&self, other: &Element) -> Vec<Element> {
        self.join_inner(other, false)
    }

    pub fn comparable(&self, other: &Element) -> bool {
        !self.join_inner(other, true).is_empty()
    }

    fn join_inner(&self, other: &Element, first_only: bool) -> Vec<Element> {
        if !same_presentation(&self.pres, &other.pres) {
            return Vec::new();
        }
        if self.grade.le(&other.grade) {
            return if self.is_initial_factor_of(other) {
                vec![other.clone()]
            } else {
                Vec::new()
            };
        }
        if other.grade.le(&self.grade) {
            return if other.is_initial_factor_of(self) {
                vec![self.clone()]
            } else {
                Vec::new()
            };
        }
        // both factor through a common prefix at the meet grade (Levi)
        let low = self.grade.meet(&other.grade);
        if self.split_unchecked(&low).0 != other.split_unchecked(&low).0 {
            return Vec::new();
        }
        let m = self.grade.join(&other.grade);
        let (base, probe) = {
            let cost =
                |e: &Element| Element::count_grade(&self.pres, &m.checked_sub(&e.grade).unwrap());
            if cost(self) <= cost(other) {
                (self, other)
            } else {
                (other, self)
            }
        };
        let rest = m.checked_sub(&base.grade).expect("grade below join");
        let mut out = Vec::new();
        for t in Element::enumerate_grade(&self.pres, &rest) {
            let e = base.mul_unchecked(&t);
            if probe.is_initial_factor_of(&e) {
                out.push(e);
                if first_only {
                    break;
                }
            }
        }
        out.sort();
        out
    }

    /// For `d(x) ∧ d(y) = 0` in a right rigid monoid: the unique `(u, v)` with
    /// `x·u = y·v`, `d(u) = d(y)` and `d(v) = d(x)`.
    pub fn complete_square(&self, y: &Element) -> Result<(Element, Element)> {
        self.check_same(y)?;
        if !self.pres.is_right_rigid() {
            return Err(Error::NotRightRigid);
        }
        if !self.grade.meet(&y.grade).is_zero() {
            return Err(Error::GradesOverlap(
                self.grade.to_string(),
                y.grade.to_string(),
            ));
        }
        let joined = self.join(y);
        if joined.len() != 1 {
            return Err(Error::Internal(format!(
                "{self} ∨ {y} has {} elements in a right rigid monoid",
                joined.len()
            )));
        }
        let e = &joined[0];
        let u = e.split_unchecked(&self.grade).1;
        let v = e.split_unchecked(&y.grade).1;
        Ok((u, v))
    }
}

/// Removes the leading `X_i` letter from a normal form in place and returns it.
/// The first `X_i` letter travels left past lower-index letters by forward theta.
fn extract_leading(p: &Presentation, word: &mut Vec<Letter>, i: usize) -> Letter {
    let mut q = word
        .iter()
        .position(|l| l.alphabet == i)
        .expect("grade guarantees an X_i letter");
    while q > 0 {
        // word[q-1]·word[q] = x′·b′ with theta(b, x) = (b′, x′)
        let (b, x) = (word[q - 1], word[q]);
        let (bp, xp) = p.theta_raw(b, x);
        word[q - 1] = xp;
        word[q] = bp;
        q -= 1;
    }
    word.remove(0)
}

impl std::ops::Mul for &Element {
    type Output = Element;

    /// Panics if the operands come from different presentations.
    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs).expect("operands share a presentation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    fn pres(name: &str) -> Arc<Presentation> {
        Arc::new(catalog(name).unwrap())
    }

    fn el(p: &Arc<Presentation>, s: &str) -> Element {
        Element::parse(p, s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let p2 = pres("power2-2");
        assert_eq!(el(&p2, "f1.e1").to_string(), "e1.f2");
        assert!(Element::normalize(&p2, &[]).unwrap().is_identity());
        let cube = pres("cube3");
        assert_eq!(el(&cube, "b1.a1.c1").to_string(), "a1.b1.c1");
        assert!(matches!(
            Element::parse(&p2, "e1.g7"),
            Err(Error::ForeignLetter(_))
        ));
        let again = Element::normalize(&p2, el(&p2, "f1.e1").letters()).unwrap();
        assert_eq!(again, el(&p2, "f1.e1"));
    }

    #[test]
    fn multiply_examples() {
        let p2 = pres("power2-2");
        assert_eq!(&el(&p2, "f2") * &el(&p2, "e1"), el(&p2, "e1.f1"));
        assert_eq!((&el(&p2, "f2") * &el(&p2, "e1")).to_string(), "e1.f1");
        let s = el(&p2, "e2.f1.e1");
        assert_eq!(&s * &Element::identity(&p2), s);
        let f2 = pres("free-2");
        assert_eq!((&el(&f2, "a1") * &el(&f2, "a2")).to_string(), "a1.a2");
        let other = pres("free-3");
        assert_eq!(
            el(&f2, "a1").multiply(&el(&other, "a1")),
            Err(Error::PresentationMismatch)
        );
    }

    #[test]
    fn split_examples() {
        let p2 = pres("power2-2");
        let (pre, suf) = el(&p2, "e1.f2").split(&"(0,1)".parse().unwrap()).unwrap();
        assert_eq!(
            (pre.to_string(), suf.to_string()),
            ("f1".into(), "e1".into())
        );
        let s = el(&p2, "e1.e2.f2");
        let (pre, suf) = s.split(&Grade::zero(2)).unwrap();
        assert!(pre.is_identity());
        assert_eq!(suf, s);
        assert!(matches!(
            s.split(&"(0,2)".parse().unwrap()),
            Err(Error::GradeTooLarge { .. })
        ));
    }

    #[test]
    fn split_in_a_product_matches_brute_force() {
        let p = pres("brin-2-2");
        let s = el(&p, "a1.a2.b1");
        let m: Grade = "(1,1)".parse().unwrap();
        let brute: Vec<Element> = Element::enumerate_grade(&p, &m)
            .into_iter()
            .filter(|a| a.is_initial_factor_of(&s))
            .collect();
        assert_eq!(brute.len(), 1);
        let (pre, suf) = s.split(&m).unwrap();
        assert_eq!(pre, brute[0]);
        assert_eq!(pre.to_string(), "a1.b1");
        assert_eq!(suf.to_string(), "a2");
    }

    #[test]
    fn initial_factor_examples() {
        let p2 = pres("power2-2");
        assert!(el(&p2, "f1").is_initial_factor_of(&el(&p2, "e1.f2")));
        let s = el(&p2, "e2.f1");
        assert!(s.is_initial_factor_of(&s));
        let f2 = pres("free-2");
        assert!(!el(&f2, "a2").is_initial_factor_of(&el(&f2, "a1.a1")));
    }

    #[test]
    fn enumerate_examples() {
        let f2 = pres("free-2");
        let words: Vec<String> = Element::enumerate_grade(&f2, &"(2)".parse().unwrap())
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(words, ["a1.a1", "a1.a2", "a2.a1", "a2.a2"]);
        let nn = pres("nn");
        assert_eq!(
            Element::enumerate_grade(&nn, &"(2,3)".parse().unwrap()).len(),
            1
        );
        let p2 = pres("power2-2");
        let c11 = Element::enumerate_grade(&p2, &"(1,1)".parse().unwrap());
        assert_eq!(c11.len(), 4);
        assert!(c11
            .iter()
            .all(|e| e.component(0).len() == 1 && e.component(1).len() == 1));
    }

    #[test]
    fn join_examples() {
        let p3 = pres("power2-3");
        let j: Vec<String> = el(&p3, "e1")
            .join(&el(&p3, "f2"))
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(j, ["e1.f1", "e1.f2"]);
        assert!(el(&p3, "e1").join(&el(&p3, "f1")).is_empty());
        let f2 = pres("free-2");
        assert_eq!(
            el(&f2, "a1").join(&el(&f2, "a1.a2")),
            vec![el(&f2, "a1.a2")]
        );
    }

    #[test]
    fn join_matches_exhaustive_filter() {
        // oracle: scan all of C_m, keep elements lying in both principal ideals
        let p3 = pres("power2-3");
        for (a, b) in [("e1", "f2"), ("e1", "f1"), ("e2", "f1"), ("e2", "f2")] {
            let (a, b) = (el(&p3, a), el(&p3, b));
            let m = a.grade().join(b.grade());
            let brute: Vec<Element> = Element::enumerate_grade(&p3, &m)
                .into_iter()
                .filter(|u| a.is_initial_factor_of(u) && b.is_initial_factor_of(u))
                .collect();
            assert_eq!(a.join(&b), brute);
        }
    }

    #[test]
    fn comparable_examples() {
        let f2 = pres("free-2");
        assert!(!el(&f2, "a1").comparable(&el(&f2, "a2")));
        let p3 = pres("power2-3");
        assert!(el(&p3, "e1").comparable(&el(&p3, "f2")));
        let s = el(&p3, "e1.f2");
        assert!(s.comparable(&Element::identity(&p3)));
    }

    #[test]
    fn complete_square_examples() {
        let p2 = pres("power2-2");
        let (u, v) = el(&p2, "e1").complete_square(&el(&p2, "f1")).unwrap();
        assert_eq!((u.to_string(), v.to_string()), ("f2".into(), "e1".into()));
        let x = el(&p2, "e2.e1");
        let (u, v) = x.complete_square(&Element::identity(&p2)).unwrap();
        assert!(u.is_identity());
        assert_eq!(v, x);
        let x = el(&p2, "e1.e1");
        let y = el(&p2, "f1");
        let (u, v) = x.complete_square(&y).unwrap();
        assert_eq!(u.grade(), &"(0,1)".parse::<Grade>().unwrap());
        assert_eq!(v.grade(), &"(2,0)".parse::<Grade>().unwrap());
        assert_eq!(&x * &u, &y * &v);
        assert!(matches!(
            x.complete_square(&el(&p2, "e2")),
            Err(Error::GradesOverlap(..))
        ));
        let p4 = pres("power2-4");
        assert_eq!(
            el(&p4, "e1").complete_square(&el(&p4, "f1")),
            Err(Error::NotRightRigid)
        );
    }

    #[test]
    fn projections_of_a_twisted_element() {
        let p2 = pres("power2-2");
        // f1·e1 = e1·f2, so its 2-projection is f1 while its 2-component is f2
        let s = el(&p2, "e1.f2");
        assert_eq!(s.projection(1), vec![p2.letter("f1").unwrap()]);
        assert_eq!(s.projection(0), vec![p2.letter("e1").unwrap()]);
        assert_eq!(s.component(1), &[p2.letter("f2").unwrap()]);
    }
}
