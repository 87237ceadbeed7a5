//! Finite presentations of k-monoids: k alphabets plus one commutation
//! bijection per pair of distinct alphabets.
//!
//! A relation `x·y = y′·x′` with `x, x′ ∈ X_i`, `y, y′ ∈ X_j` and `i < j` is
//! stored as `theta(x, y) = (x′, y′)`. Normal forms list letters by ascending
//! alphabet index; a descending pair `y′·x′` rewrites to `theta_inverse(x′, y′)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grade::Grade;

/// A generator: letter `index` of alphabet `alphabet` (both 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub alphabet: usize,
    pub index: usize,
}

impl Letter {
    pub fn new(alphabet: usize, index: usize) -> Self {
        Letter { alphabet, index }
    }
}

/// What is known about effectiveness (equivalently, aperiodicity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Effectiveness {
    /// Right rigid with every alphabet of size at least two.
    GuaranteedByRigidity,
    UserAsserted,
    /// A bounded search found incomparability witnesses for every pair up to `pair_bound`.
    Evidence {
        pair_bound: Grade,
        witness_bound: Grade,
    },
    Unknown,
    Refuted,
}

impl Effectiveness {
    /// Statuses under which canonical-grade comparison decides equality.
    pub fn permits_equality(&self) -> bool {
        matches!(
            self,
            Effectiveness::GuaranteedByRigidity | Effectiveness::UserAsserted
        )
    }

    /// Statuses under which constructions relying on incomparability witnesses may proceed.
    pub fn is_established(&self) -> bool {
        matches!(
            self,
            Effectiveness::GuaranteedByRigidity
                | Effectiveness::UserAsserted
                | Effectiveness::Evidence { .. }
        )
    }
}

impl fmt::Display for Effectiveness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Effectiveness::GuaranteedByRigidity => write!(f, "guaranteed-by-rigidity"),
            Effectiveness::UserAsserted => write!(f, "user-asserted"),
            Effectiveness::Evidence {
                pair_bound,
                witness_bound,
            } => write!(f, "evidence{pair_bound}/{witness_bound}"),
            Effectiveness::Unknown => write!(f, "unknown"),
            Effectiveness::Refuted => write!(f, "refuted"),
        }
    }
}

/// `rows[x][y] = (x′, y′)` for one pair of alphabets.
pub type ThetaRows = Vec<Vec<(usize, usize)>>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct ThetaTable {
    n_right: usize,
    forward: Vec<(usize, usize)>,
    inverse: Vec<(usize, usize)>,
}

impl ThetaTable {
    fn forward(&self, x: usize, y: usize) -> (usize, usize) {
        self.forward[x * self.n_right + y]
    }

    fn inverse(&self, x: usize, y: usize) -> (usize, usize) {
        self.inverse[x * self.n_right + y]
    }
}

/// A validated k-monoid presentation. Immutable once built.
#[derive(Clone, Debug)]
pub struct Presentation {
    alphabets: Vec<Vec<String>>,
    // tables[i][j - i - 1] holds theta_ij for i < j.
    tables: Vec<Vec<ThetaTable>>,
    names: HashMap<String, Letter>,
    right_rigid: bool,
    left_rigid: bool,
    effectiveness: Effectiveness,
}

impl PartialEq for Presentation {
    /// Structural equality of the defining data; ignores the effectiveness flag.
    fn eq(&self, other: &Self) -> bool {
        self.alphabets == other.alphabets && self.tables == other.tables
    }
}

impl Eq for Presentation {}

/// On-disk presentation document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub k: usize,
    pub alphabets: Vec<Vec<String>>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
}

/// `left = [x, y]`, `right = [y′, x′]`, encoding `x·y = y′·x′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub left: [String; 2],
    pub right: [String; 2],
}

fn check_symbol(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name == "1"
        || name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '.' | ',' | '(' | ')' | '"' | '[' | ']'));
    if bad {
        return Err(Error::Parse(format!("illegal letter name {name:?}")));
    }
    Ok(())
}

impl Presentation {
    /// Builds a presentation from complete forward tables, validating bijectivity
    /// and confluence. `forward[(i, j)][x][y] = (x′, y′)` for every `i < j`.
    pub fn from_tables(
        alphabets: Vec<Vec<String>>,
        forward: HashMap<(usize, usize), ThetaRows>,
    ) -> Result<Self> {
        let k = alphabets.len();
        if k == 0 {
            return Err(Error::Parse("k must be positive".into()));
        }
        let mut names = HashMap::new();
        for (a, letters) in alphabets.iter().enumerate() {
            if letters.is_empty() {
                return Err(Error::Parse(format!("alphabet {} is empty", a + 1)));
            }
            for (idx, name) in letters.iter().enumerate() {
                check_symbol(name)?;
                if names.insert(name.clone(), Letter::new(a, idx)).is_some() {
                    return Err(Error::Parse(format!("letter {name:?} declared twice")));
                }
            }
        }
        let mut tables = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::new();
            for j in (i + 1)..k {
                let (ni, nj) = (alphabets[i].len(), alphabets[j].len());
                let grid = forward
                    .get(&(i, j))
                    .ok_or_else(|| Error::IncompleteRelations {
                        x: alphabets[i][0].clone(),
                        y: alphabets[j][0].clone(),
                    })?;
                let mut fwd = vec![(usize::MAX, usize::MAX); ni * nj];
                let mut inv = vec![(usize::MAX, usize::MAX); ni * nj];
                for x in 0..ni {
                    for y in 0..nj {
                        let image =
                            grid.get(x).and_then(|r| r.get(y)).copied().ok_or_else(|| {
                                Error::IncompleteRelations {
                                    x: alphabets[i][x].clone(),
                                    y: alphabets[j][y].clone(),
                                }
                            })?;
                        if image.0 >= ni || image.1 >= nj {
                            return Err(Error::Index(format!(
                                "theta image {image:?} out of range for alphabets {} and {}",
                                i + 1,
                                j + 1
                            )));
                        }
                        let slot = &mut inv[image.0 * nj + image.1];
                        if slot.0 != usize::MAX {
                            return Err(Error::RelationNotBijective {
                                i: i + 1,
                                j: j + 1,
                                hit: format!(
                                    "({}, {})",
                                    alphabets[i][image.0], alphabets[j][image.1]
                                ),
                            });
                        }
                        *slot = (x, y);
                        fwd[x * nj + y] = image;
                    }
                }
                row.push(ThetaTable {
                    n_right: nj,
                    forward: fwd,
                    inverse: inv,
                });
            }
            tables.push(row);
        }
        let mut p = Presentation {
            alphabets,
            tables,
            names,
            right_rigid: false,
            left_rigid: false,
            effectiveness: Effectiveness::Unknown,
        };
        p.check_confluence()?;
        p.right_rigid = p.compute_right_rigid();
        p.left_rigid = p.compute_left_rigid();
        if p.right_rigid && p.alphabets.iter().all(|a| a.len() >= 2) {
            p.effectiveness = Effectiveness::GuaranteedByRigidity;
        }
        Ok(p)
    }

    /// Loads and validates a presentation document.
    pub fn from_doc(doc: &PresentationDoc) -> Result<Self> {
        if doc.k != doc.alphabets.len() {
            return Err(Error::Parse(format!(
                "k = {} but {} alphabets were given",
                doc.k,
                doc.alphabets.len()
            )));
        }
        let mut lookup = HashMap::new();
        for (a, letters) in doc.alphabets.iter().enumerate() {
            for (idx, name) in letters.iter().enumerate() {
                check_symbol(name)?;
                if lookup.insert(name.as_str(), Letter::new(a, idx)).is_some() {
                    return Err(Error::Parse(format!("letter {name:?} declared twice")));
                }
            }
        }
        let find = |name: &str| {
            lookup
                .get(name)
                .copied()
                .ok_or_else(|| Error::Parse(format!("relation uses undeclared letter {name:?}")))
        };
        // None marks a relation not yet given
        type Partial = Vec<Vec<Option<(usize, usize)>>>;
        let mut forward: HashMap<(usize, usize), Partial> = HashMap::new();
        for rel in &doc.relations {
            let (x, y) = (find(&rel.left[0])?, find(&rel.left[1])?);
            let (yp, xp) = (find(&rel.right[0])?, find(&rel.right[1])?);
            if x.alphabet >= y.alphabet {
                return Err(Error::Parse(format!(
                    "relation {}·{} must start with the lower-index alphabet",
                    rel.left[0], rel.left[1]
                )));
            }
            if xp.alphabet != x.alphabet || yp.alphabet != y.alphabet {
                return Err(Error::Parse(format!(
                    "relation {}·{} = {}·{} mixes alphabets",
                    rel.left[0], rel.left[1], rel.right[0], rel.right[1]
                )));
            }
            let (i, j) = (x.alphabet, y.alphabet);
            let grid = forward.entry((i, j)).or_insert_with(|| {
                vec![vec![None; doc.alphabets[j].len()]; doc.alphabets[i].len()]
            });
            let cell = &mut grid[x.index][y.index];
            if cell.is_some() {
                return Err(Error::DuplicateRelation {
                    left: format!("{}·{}", rel.left[0], rel.left[1]),
                });
            }
            *cell = Some((xp.index, yp.index));
        }
        let k = doc.k;
        let mut complete = HashMap::new();
        for i in 0..k {
            for j in (i + 1)..k {
                let (ni, nj) = (doc.alphabets[i].len(), doc.alphabets[j].len());
                let grid = forward.remove(&(i, j));
                let mut full = vec![Vec::with_capacity(nj); ni];
                for x in 0..ni {
                    for y in 0..nj {
                        let cell = grid.as_ref().and_then(|g| g[x][y]).ok_or_else(|| {
                            Error::IncompleteRelations {
                                x: doc.alphabets[i][x].clone(),
                                y: doc.alphabets[j][y].clone(),
                            }
                        })?;
                        full[x].push(cell);
                    }
                }
                complete.insert((i, j), full);
            }
        }
        Presentation::from_tables(doc.alphabets.clone(), complete)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PresentationDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Presentation::from_doc(&doc)
    }

    /// Relations listed once each, ordered by `(i, j, x, y)` in declaration order.
    pub fn to_doc(&self) -> PresentationDoc {
        let mut relations = Vec::new();
        for i in 0..self.k() {
            for j in (i + 1)..self.k() {
                for x in 0..self.alphabets[i].len() {
                    for y in 0..self.alphabets[j].len() {
                        let (xp, yp) = self.table(i, j).forward(x, y);
                        relations.push(RelationDoc {
                            left: [self.alphabets[i][x].clone(), self.alphabets[j][y].clone()],
                            right: [self.alphabets[j][yp].clone(), self.alphabets[i][xp].clone()],
                        });
                    }
                }
            }
        }
        PresentationDoc {
            k: self.k(),
            alphabets: self.alphabets.clone(),
            relations,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("presentation documents serialize")
    }

    pub fn k(&self) -> usize {
        self.alphabets.len()
    }

    pub fn alphabet_size(&self, i: usize) -> usize {
        self.alphabets[i].len()
    }

    pub fn alphabet_sizes(&self) -> Vec<usize> {
        self.alphabets.iter().map(Vec::len).collect()
    }

    pub fn alphabets(&self) -> &[Vec<String>] {
        &self.alphabets
    }

    pub fn letters(&self, i: usize) -> impl Iterator<Item = Letter> + '_ {
        (0..self.alphabets[i].len()).map(move |x| Letter::new(i, x))
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .get(name)
            .copied()
            .ok_or_else(|| Error::ForeignLetter(name.to_string()))
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.alphabets[l.alphabet][l.index]
    }

    pub fn is_right_rigid(&self) -> bool {
        self.right_rigid
    }

    pub fn is_left_rigid(&self) -> bool {
        self.left_rigid
    }

    pub fn effectiveness(&self) -> &Effectiveness {
        &self.effectiveness
    }

    /// A copy of this presentation carrying a different effectiveness status.
    pub fn with_effectiveness(&self, status: Effectiveness) -> Presentation {
        let mut p = self.clone();
        p.effectiveness = status;
        p
    }

    /// Some alphabet has a single letter, so `S^∞` has isolated points.
    pub fn has_singleton_alphabet(&self) -> bool {
        self.alphabets.iter().any(|a| a.len() < 2)
    }

    fn table(&self, i: usize, j: usize) -> &ThetaTable {
        &self.tables[i][j - i - 1]
    }

    fn check_pair(&self, x: Letter, y: Letter) -> Result<(usize, usize)> {
        let (i, j) = (x.alphabet, y.alphabet);
        if i >= j || j >= self.k() {
            return Err(Error::Index(format!(
                "theta needs alphabets i < j ≤ k, got {} and {}",
                i + 1,
                j + 1
            )));
        }
        if x.index >= self.alphabet_size(i) || y.index >= self.alphabet_size(j) {
            return Err(Error::Index("letter index out of range".into()));
        }
        Ok((i, j))
    }

    /// `theta(x, y) = (x′, y′)` where `x·y = y′·x′`.
    pub fn theta(&self, x: Letter, y: Letter) -> Result<(Letter, Letter)> {
        let (i, j) = self.check_pair(x, y)?;
        let (a, b) = self.table(i, j).forward(x.index, y.index);
        Ok((Letter::new(i, a), Letter::new(j, b)))
    }

    pub fn theta_inverse(&self, x: Letter, y: Letter) -> Result<(Letter, Letter)> {
        let (i, j) = self.check_pair(x, y)?;
        let (a, b) = self.table(i, j).inverse(x.index, y.index);
        Ok((Letter::new(i, a), Letter::new(j, b)))
    }

    /// Unchecked forward theta for internal rewriting; `x.alphabet < y.alphabet`.
    pub(crate) fn theta_raw(&self, x: Letter, y: Letter) -> (Letter, Letter) {
        let (i, j) = (x.alphabet, y.alphabet);
        let (a, b) = self.table(i, j).forward(x.index, y.index);
        (Letter::new(i, a), Letter::new(j, b))
    }

    /// Unchecked inverse theta; `x.alphabet < y.alphabet`.
    pub(crate) fn theta_inverse_raw(&self, x: Letter, y: Letter) -> (Letter, Letter) {
        let (i, j) = (x.alphabet, y.alphabet);
        let (a, b) = self.table(i, j).inverse(x.index, y.index);
        (Letter::new(i, a), Letter::new(j, b))
    }

    fn compute_right_rigid(&self) -> bool {
        // for fixed x, y ↦ second(theta(x, y)) must be a permutation of X_j.
        (0..self.k()).all(|i| {
            ((i + 1)..self.k()).all(|j| {
                let t = self.table(i, j);
                (0..self.alphabet_size(i)).all(|x| {
                    let seen: BTreeSet<usize> = (0..t.n_right).map(|y| t.forward(x, y).1).collect();
                    seen.len() == t.n_right
                })
            })
        })
    }

    fn compute_left_rigid(&self) -> bool {
        (0..self.k()).all(|i| {
            ((i + 1)..self.k()).all(|j| {
                let t = self.table(i, j);
                let ni = self.alphabet_size(i);
                (0..t.n_right).all(|y| {
                    let seen: BTreeSet<usize> = (0..ni).map(|x| t.forward(x, y).0).collect();
                    seen.len() == ni
                })
            })
        })
    }

    /// Every normal form reachable from `word` under all rewrite orders.
    pub fn all_normal_forms(&self, word: &[Letter]) -> BTreeSet<Vec<Letter>> {
        let mut seen = BTreeSet::new();
        let mut out = BTreeSet::new();
        let mut stack = vec![word.to_vec()];
        while let Some(w) = stack.pop() {
            if !seen.insert(w.clone()) {
                continue;
            }
            let mut reducible = false;
            for p in 0..w.len().saturating_sub(1) {
                let (hi, lo) = (w[p], w[p + 1]);
                if hi.alphabet > lo.alphabet {
                    reducible = true;
                    let (a, b) = self.theta_inverse_raw(lo, hi);
                    let mut next = w.clone();
                    next[p] = a;
                    next[p + 1] = b;
                    stack.push(next);
                }
            }
            if !reducible {
                out.insert(w);
            }
        }
        out
    }

    fn spell(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Overlapping redexes only arise in words `z·y·x` over three strictly
    /// descending alphabets, so normalizing each of those by every rewrite
    /// order decides local (hence, by termination, global) confluence.
    fn check_confluence(&self) -> Result<()> {
        let k = self.k();
        for i in 0..k {
            for j in (i + 1)..k {
                for l in (j + 1)..k {
                    for z in self.letters(l) {
                        for y in self.letters(j) {
                            for x in self.letters(i) {
                                let word = [z, y, x];
                                let forms = self.all_normal_forms(&word);
                                if forms.len() > 1 {
                                    let mut it = forms.iter();
                                    return Err(Error::NotConfluent {
                                        word: self.spell(&word),
                                        first: self.spell(it.next().unwrap()),
                                        second: self.spell(it.next().unwrap()),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The (k1 + k2)-monoid `S × T`: cross letters commute.
    pub fn product(&self, other: &Presentation) -> Result<Presentation> {
        for name in other.names.keys() {
            if self.names.contains_key(name) {
                return Err(Error::SymbolClash(name.clone()));
            }
        }
        let k1 = self.k();
        let mut alphabets = self.alphabets.clone();
        alphabets.extend(other.alphabets.iter().cloned());
        let mut forward = HashMap::new();
        let k = alphabets.len();
        for i in 0..k {
            for j in (i + 1)..k {
                let (ni, nj) = (alphabets[i].len(), alphabets[j].len());
                let grid: Vec<Vec<(usize, usize)>> = (0..ni)
                    .map(|x| {
                        (0..nj)
                            .map(|y| {
                                if j < k1 {
                                    self.table(i, j).forward(x, y)
                                } else if i >= k1 {
                                    other.table(i - k1, j - k1).forward(x, y)
                                } else {
                                    (x, y)
                                }
                            })
                            .collect()
                    })
                    .collect();
                forward.insert((i, j), grid);
            }
        }
        Presentation::from_tables(alphabets, forward)
    }

    pub fn into_arc(self) -> Arc<Presentation> {
        Arc::new(self)
    }

    /// Grade of the `i`-th alphabet letters.
    pub fn unit(&self, i: usize) -> Grade {
        Grade::unit(self.k(), i)
    }
}

/// Free monoid on `n` letters named `{prefix}1 … {prefix}n`.
pub fn free(prefix: &str, n: usize) -> Result<Presentation> {
    let letters = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    Presentation::from_tables(vec![letters], HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(k: usize, alphabets: &[&[&str]], rels: &[(&str, &str, &str, &str)]) -> PresentationDoc {
        PresentationDoc {
            k,
            alphabets: alphabets
                .iter()
                .map(|a| a.iter().map(|s| s.to_string()).collect())
                .collect(),
            relations: rels
                .iter()
                .map(|(x, y, yp, xp)| RelationDoc {
                    left: [x.to_string(), y.to_string()],
                    right: [yp.to_string(), xp.to_string()],
                })
                .collect(),
        }
    }

    #[test]
    fn free_monoid_has_no_tables() {
        let p = Presentation::from_doc(&doc(1, &[&["a1", "a2"]], &[])).unwrap();
        assert_eq!(p.k(), 1);
        assert!(p.is_right_rigid() && p.is_left_rigid());
        assert_eq!(p.effectiveness(), &Effectiveness::GuaranteedByRigidity);
    }

    #[test]
    fn mutated_product_relation_is_not_bijective() {
        let d = doc(
            2,
            &[&["a1", "a2"], &["b1", "b2"]],
            &[
                ("a1", "b1", "b1", "a2"),
                ("a1", "b2", "b2", "a1"),
                ("a2", "b1", "b1", "a2"),
                ("a2", "b2", "b2", "a2"),
            ],
        );
        match Presentation::from_doc(&d) {
            Err(Error::RelationNotBijective { hit, .. }) => assert_eq!(hit, "(a2, b1)"),
            other => panic!("expected RelationNotBijective, got {other:?}"),
        }
    }

    #[test]
    fn missing_relation_is_reported() {
        let d = doc(2, &[&["a1"], &["b1", "b2"]], &[("a1", "b1", "b1", "a1")]);
        assert_eq!(
            Presentation::from_doc(&d).unwrap_err(),
            Error::IncompleteRelations {
                x: "a1".into(),
                y: "b2".into()
            }
        );
    }

    #[test]
    fn duplicate_and_malformed_relations_are_rejected() {
        let dup = doc(
            2,
            &[&["a"], &["b"]],
            &[("a", "b", "b", "a"), ("a", "b", "b", "a")],
        );
        assert!(matches!(
            Presentation::from_doc(&dup),
            Err(Error::DuplicateRelation { .. })
        ));
        let backwards = doc(2, &[&["a"], &["b"]], &[("b", "a", "a", "b")]);
        assert!(matches!(
            Presentation::from_doc(&backwards),
            Err(Error::Parse(_))
        ));
        let unknown = doc(2, &[&["a"], &["b"]], &[("a", "c", "b", "a")]);
        assert!(matches!(
            Presentation::from_doc(&unknown),
            Err(Error::Parse(_))
        ));
        let clash = doc(2, &[&["a"], &["a"]], &[]);
        assert!(matches!(
            Presentation::from_doc(&clash),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn theta_rejects_bad_indices() {
        let p = free("a", 2)
            .unwrap()
            .product(&free("b", 2).unwrap())
            .unwrap();
        let a1 = p.letter("a1").unwrap();
        let b1 = p.letter("b1").unwrap();
        assert_eq!(p.theta(a1, b1).unwrap(), (a1, b1));
        assert!(matches!(p.theta(b1, a1), Err(Error::Index(_))));
        assert!(matches!(p.theta(a1, a1), Err(Error::Index(_))));
    }

    #[test]
    fn product_detects_symbol_clash() {
        let a = free("a", 2).unwrap();
        assert!(matches!(a.product(&a), Err(Error::SymbolClash(_))));
    }

    #[test]
    fn dump_orders_relations() {
        let d = doc(
            2,
            &[&["a1", "a2"], &["b1"]],
            &[("a2", "b1", "b1", "a2"), ("a1", "b1", "b1", "a1")],
        );
        let p = Presentation::from_doc(&d).unwrap();
        let out = p.to_doc();
        assert_eq!(out.relations[0].left, ["a1".to_string(), "b1".to_string()]);
        assert_eq!(Presentation::from_doc(&out).unwrap(), p);
        assert_eq!(Presentation::from_json(&p.to_json()).unwrap().to_doc(), out);
    }
}
