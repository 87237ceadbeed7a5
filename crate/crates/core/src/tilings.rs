//! Finite corners of k-tilings, the shift action, and bounded searches for
//! incomparability witnesses.

use std::fmt;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::presentation::{Effectiveness, Presentation};

/// The corner `w(0, m)` of a tiling; every initial factor is again a corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TilingPrefix {
    corner: Element,
}

impl TilingPrefix {
    pub fn new(corner: Element) -> Self {
        TilingPrefix { corner }
    }

    pub fn corner(&self) -> &Element {
        &self.corner
    }

    pub fn grade(&self) -> &Grade {
        self.corner.grade()
    }

    /// `σ^p`: drops the grade-`p` initial factor.
    pub fn shift(&self, p: &Grade) -> Result<TilingPrefix> {
        let (_, suffix) = self.corner.split(p)?;
        Ok(TilingPrefix { corner: suffix })
    }

    pub fn prepend(&self, a: &Element) -> Result<TilingPrefix> {
        Ok(TilingPrefix {
            corner: a.multiply(&self.corner)?,
        })
    }

    /// Whether no tiling has both corners.
    pub fn incomparable(&self, other: &TilingPrefix) -> bool {
        !self.corner.comparable(&other.corner)
    }
}

impl fmt::Display for TilingPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.corner.fmt(f)
    }
}

/// First `c` in graded order with `d(c) ≤ max_grade` and `x·c`, `y·c` incomparable.
pub fn incomparability_witness(x: &Element, y: &Element, max_grade: &Grade) -> Option<Element> {
    let pres = x.presentation();
    if !x.comparable(y) {
        return Some(Element::identity(pres));
    }
    for g in max_grade.down_set() {
        for c in Element::enumerate_grade(pres, &g) {
            if !x.mul_unchecked(&c).comparable(&y.mul_unchecked(&c)) {
                return Some(c);
            }
        }
    }
    None
}

/// Outcome of a bounded effectiveness scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Report {
    VerifiedUpTo {
        pair_bound: Grade,
        witness_bound: Grade,
    },
    FailedPair(Element, Element),
}

impl Report {
    pub fn is_verified(&self) -> bool {
        matches!(self, Report::VerifiedUpTo { .. })
    }

    /// The presentation with its status upgraded to evidence. A guaranteed
    /// or asserted status is kept; a failure marks it refuted.
    pub fn apply(&self, pres: &Presentation) -> Presentation {
        match (self, pres.effectiveness()) {
            (_, Effectiveness::GuaranteedByRigidity | Effectiveness::UserAsserted) => pres.clone(),
            (
                Report::VerifiedUpTo {
                    pair_bound,
                    witness_bound,
                },
                _,
            ) => pres.with_effectiveness(Effectiveness::Evidence {
                pair_bound: pair_bound.clone(),
                witness_bound: witness_bound.clone(),
            }),
            (Report::FailedPair(..), _) => pres.with_effectiveness(Effectiveness::Refuted),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::VerifiedUpTo {
                pair_bound,
                witness_bound,
            } => write!(
                f,
                "verified up to {pair_bound} with witnesses ≤ {witness_bound}"
            ),
            Report::FailedPair(x, y) => write!(f, "no witness for ({x}, {y})"),
        }
    }
}

fn elements_up_to(pres: &Arc<Presentation>, bound: &Grade) -> Vec<Element> {
    bound
        .down_set()
        .iter()
        .flat_map(|g| Element::enumerate_grade(pres, g))
        .collect()
}

/// Scans every distinct pair of grade ≤ `pair_bound`. Pairs of non-identity
/// elements come first, then pairs with the identity; the first failure wins.
pub fn effectiveness_evidence(
    pres: &Arc<Presentation>,
    pair_bound: &Grade,
    witness_bound: &Grade,
) -> Report {
    let elems = elements_up_to(pres, pair_bound);
    let (ones, rest): (Vec<Element>, Vec<Element>) =
        elems.into_iter().partition(|e| e.is_identity());
    let pairs = rest
        .iter()
        .enumerate()
        .flat_map(|(i, x)| rest[i + 1..].iter().map(move |y| (x, y)))
        .chain(ones.iter().flat_map(|o| rest.iter().map(move |y| (o, y))));
    for (x, y) in pairs {
        if incomparability_witness(x, y, witness_bound).is_none() {
            return Report::FailedPair(x.clone(), y.clone());
        }
    }
    Report::VerifiedUpTo {
        pair_bound: pair_bound.clone(),
        witness_bound: witness_bound.clone(),
    }
}

fn grades_of_total(k: usize, total: u32) -> Vec<Grade> {
    if k == 0 {
        return if total == 0 {
            vec![Grade::new(Vec::new())]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in grades_of_total(k - 1, total - first) {
            let mut c = vec![first];
            c.extend_from_slice(rest.components());
            out.push(Grade::new(c));
        }
    }
    out
}

/// Unordered pairs of distinct non-zero grades `m < n`, by `|m| + |n|` and
/// then lexicographically.
pub fn grade_pairs(k: usize) -> impl Iterator<Item = (Grade, Grade)> {
    (2u32..).flat_map(move |s| {
        let mut pairs = Vec::new();
        for a in 1..s {
            for m in grades_of_total(k, a) {
                for n in grades_of_total(k, s - a) {
                    if m < n {
                        pairs.push((m.clone(), n));
                    }
                }
            }
        }
        pairs.sort_by(|p, q| {
            (p.0.components(), p.1.components()).cmp(&(q.0.components(), q.1.components()))
        });
        pairs
    })
}

/// Corners `l_1, l_1 l_2, …` of a tiling on which `σ^m` and `σ^n` disagree for
/// each of the first `num_pairs` grade pairs.
pub fn aperiodic_prefix(
    pres: &Arc<Presentation>,
    num_pairs: usize,
    witness_bound: &Grade,
) -> Result<Vec<Element>> {
    if !pres.effectiveness().is_established() {
        return Err(Error::EffectivenessUnknown(
            pres.effectiveness().to_string(),
        ));
    }
    let mut prefix = Element::identity(pres);
    let mut out = Vec::with_capacity(num_pairs);
    let mut handled = Vec::with_capacity(num_pairs);
    for (m, n) in grade_pairs(pres.k()).take(num_pairs) {
        let s = Element::enumerate_grade(pres, &m.add(&n))
            .into_iter()
            .next()
            .expect("alphabets are non-empty");
        let (_, u) = s.split_unchecked(&m);
        let (_, v) = s.split_unchecked(&n);
        let t = incomparability_witness(&u, &v, witness_bound).ok_or_else(|| {
            Error::WitnessExhausted(u.to_string(), v.to_string(), witness_bound.to_string())
        })?;
        handled.push((prefix.grade().clone(), m, n));
        prefix = prefix.mul_unchecked(&s.mul_unchecked(&t));
        out.push(prefix.clone());
    }
    let corner = TilingPrefix::new(prefix);
    for (offset, m, n) in &handled {
        let at = |g: &Grade| corner.shift(&offset.add(g));
        let direct_ok = corner.shift(m)?.incomparable(&corner.shift(n)?);
        if !at(m)?.incomparable(&at(n)?) || !direct_ok {
            return Err(Error::Internal(format!("shifts by {m} and {n} agree")));
        }
    }
    Ok(out)
}

/// Checks that `σ^m` and `σ^n` disagree on `prefix`.
pub fn shifts_disagree(prefix: &Element, m: &Grade, n: &Grade) -> Result<bool> {
    let w = TilingPrefix::new(prefix.clone());
    Ok(w.shift(m)?.incomparable(&w.shift(n)?))
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

    fn gr(s: &str) -> Grade {
        s.parse().unwrap()
    }

    #[test]
    fn shift_examples() {
        let f2 = pres("free-2");
        let w = TilingPrefix::new(el(&f2, "a1.a2.a1"));
        assert_eq!(w.shift(&gr("(1)")).unwrap().corner(), &el(&f2, "a2.a1"));
        assert_eq!(w.shift(&gr("(0)")).unwrap(), w);
        assert!(matches!(
            w.shift(&gr("(4)")),
            Err(Error::GradeTooLarge { .. })
        ));
        let p2 = pres("power2-2");
        let w = TilingPrefix::new(el(&p2, "e1.f2"));
        assert_eq!(w.shift(&gr("(0,1)")).unwrap().corner(), &el(&p2, "e1"));
    }

    #[test]
    fn prepend_examples() {
        let p2 = pres("power2-2");
        let w = TilingPrefix::new(el(&p2, "e1"));
        let v = w.prepend(&el(&p2, "f1")).unwrap();
        assert_eq!(v.corner(), &el(&p2, "e1.f2"));
        assert_eq!(v.shift(&gr("(0,1)")).unwrap(), w);
        assert_eq!(w.prepend(&Element::identity(&p2)).unwrap(), w);
        let f2 = pres("free-2");
        assert!(w.prepend(&el(&f2, "a1")).is_err());
    }

    #[test]
    fn witness_examples() {
        let f2 = pres("free-2");
        assert_eq!(
            incomparability_witness(&el(&f2, "a1"), &el(&f2, "a1.a1"), &gr("(1)")),
            Some(el(&f2, "a2"))
        );
        let p2 = pres("power2-2");
        assert_eq!(
            incomparability_witness(&el(&p2, "e1"), &el(&p2, "e2"), &gr("(0,0)")),
            Some(Element::identity(&p2))
        );
        let nn = pres("nn");
        assert_eq!(
            incomparability_witness(&el(&nn, "a"), &el(&nn, "a.a"), &gr("(3,3)")),
            None
        );
    }

    #[test]
    fn evidence_examples() {
        let p2 = pres("power2-2");
        assert!(effectiveness_evidence(&p2, &gr("(1,1)"), &gr("(2,2)")).is_verified());
        let f2 = pres("free-2");
        assert!(effectiveness_evidence(&f2, &gr("(2)"), &gr("(2)")).is_verified());
        let nn = pres("nn");
        let r = effectiveness_evidence(&nn, &gr("(2,0)"), &gr("(2,2)"));
        assert_eq!(r, Report::FailedPair(el(&nn, "a"), el(&nn, "a.a")));
        assert!(!effectiveness_evidence(&nn, &gr("(1,1)"), &gr("(3,3)")).is_verified());
        assert_eq!(*r.apply(&nn).effectiveness(), Effectiveness::Refuted);
        let st = Arc::new(catalog("steinberg").unwrap());
        let r = effectiveness_evidence(&st, &gr("(1,1)"), &gr("(2,2)"));
        if r.is_verified() {
            assert!(r.apply(&st).effectiveness().is_established());
        }
    }

    #[test]
    fn grade_pair_order() {
        let first: Vec<(Grade, Grade)> = grade_pairs(1).take(3).collect();
        assert_eq!(
            first,
            vec![
                (gr("(1)"), gr("(2)")),
                (gr("(1)"), gr("(3)")),
                (gr("(1)"), gr("(4)"))
            ]
        );
        let two: Vec<(Grade, Grade)> = grade_pairs(2).take(2).collect();
        assert_eq!(two[0], (gr("(0,1)"), gr("(1,0)")));
    }

    #[test]
    fn aperiodic_examples() {
        let f2 = pres("free-2");
        let seq = aperiodic_prefix(&f2, 2, &gr("(3)")).unwrap();
        assert_eq!(seq.len(), 2);
        assert!(shifts_disagree(seq.last().unwrap(), &gr("(1)"), &gr("(2)")).unwrap());
        for w in seq.windows(2) {
            assert!(w[0].is_initial_factor_of(&w[1]));
        }
        let p2 = pres("power2-2");
        assert_eq!(aperiodic_prefix(&p2, 3, &gr("(2,2)")).unwrap().len(), 3);
        let nn = pres("nn");
        assert!(matches!(
            aperiodic_prefix(&nn, 1, &gr("(2,2)")),
            Err(Error::EffectivenessUnknown(_))
        ));
        let asserted = Arc::new(nn.with_effectiveness(Effectiveness::UserAsserted));
        assert!(matches!(
            aperiodic_prefix(&asserted, 1, &gr("(2,2)")),
            Err(Error::WitnessExhausted(..))
        ));
    }
}
