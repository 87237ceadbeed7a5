//! Seeded generators for codes, tables and group elements, built from random
//! walks of alphabet expansions and reductions.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bisections::PartialTable;
use crate::codes::PrefixCode;
use crate::element::Element;
use crate::grade::Grade;
use crate::group::GroupElement;
use crate::presentation::Presentation;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape limits for generated codes.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub extent: Grade,
    pub max_len: usize,
    pub steps: usize,
}

impl Bounds {
    pub fn new(extent: Grade, max_len: usize) -> Self {
        Bounds {
            extent,
            max_len,
            steps: 12,
        }
    }
}

fn expand(code: &PrefixCode, x: &Element, i: usize) -> PrefixCode {
    let d = PrefixCode::alphabet(code.presentation(), i);
    code.expansion(x, &d)
        .expect("member expanded by an alphabet")
}

fn random_grade<R: Rng>(rng: &mut R, bound: &Grade) -> Grade {
    Grade::new(
        bound
            .components()
            .iter()
            .map(|&b| rng.gen_range(0..=b))
            .collect(),
    )
}

/// Starts from a homogeneous code `C_m` (or `{1}`) and takes random alphabet
/// expansions and reductions, staying within `bounds`.
pub fn maximal_code<R: Rng>(pres: &Arc<Presentation>, rng: &mut R, bounds: &Bounds) -> PrefixCode {
    let m = random_grade(rng, &bounds.extent);
    let mut code = PrefixCode::homogeneous(pres, &m);
    if code.len() > bounds.max_len {
        code = PrefixCode::identity(pres);
    }
    let steps = rng.gen_range(0..=bounds.steps);
    for _ in 0..steps {
        let mut moves: Vec<(bool, Element, usize)> = Vec::new();
        for x in code.elements() {
            for i in 0..pres.k() {
                let grown = x.grade().add(&pres.unit(i));
                if grown.le(&bounds.extent)
                    && code.len() + pres.alphabet_size(i) - 1 <= bounds.max_len
                {
                    moves.push((true, x.clone(), i));
                }
            }
        }
        moves.extend(
            code.find_alphabet_reductions()
                .into_iter()
                .map(|(x, i)| (false, x, i)),
        );
        let Some((grow, x, i)) = moves.choose(rng).cloned() else {
            break;
        };
        code = if grow {
            expand(&code, &x, i)
        } else {
            code.reduction(&x, &PrefixCode::alphabet(pres, i))
                .expect("reduction found by search")
        };
    }
    code
}

/// A code with at least one member of `code` removed, or `code` itself when it
/// has a single member.
pub fn proper_subcode<R: Rng>(code: &PrefixCode, rng: &mut R) -> PrefixCode {
    let n = code.len();
    if n <= 1 {
        return code.clone();
    }
    let keep = rng.gen_range(1..n);
    let mut elems = code.elements().to_vec();
    elems.shuffle(rng);
    elems.truncate(keep);
    PrefixCode::new(code.presentation(), elems).expect("subset of a code")
}

/// Maximal or not with equal odds.
pub fn code<R: Rng>(pres: &Arc<Presentation>, rng: &mut R, bounds: &Bounds) -> PrefixCode {
    let c = maximal_code(pres, rng, bounds);
    if rng.gen_bool(0.5) {
        c
    } else {
        proper_subcode(&c, rng)
    }
}

// Expands random members of `code` by alphabets until it has `target` elements.
fn grow_to<R: Rng>(code: &PrefixCode, target: usize, rng: &mut R) -> Option<PrefixCode> {
    let pres = code.presentation();
    let mut code = code.clone();
    while code.len() < target {
        let gap = target - code.len();
        let options: Vec<usize> = (0..pres.k())
            .filter(|&i| pres.alphabet_size(i) > 1 && pres.alphabet_size(i) - 1 <= gap)
            .collect();
        let &i = options.choose(rng)?;
        let lowest = code.elements()[0].grade().total();
        let shallow: Vec<&Element> = code
            .elements()
            .iter()
            .filter(|e| e.grade().total() <= lowest + 1)
            .collect();
        let x = (*shallow.choose(rng).unwrap()).clone();
        code = expand(&code, &x, i);
    }
    (code.len() == target).then_some(code)
}

/// A bijection between two independently generated maximal codes.
pub fn group_element<R: Rng>(
    pres: &Arc<Presentation>,
    rng: &mut R,
    bounds: &Bounds,
) -> GroupElement {
    let a = maximal_code(pres, rng, bounds);
    let b = maximal_code(pres, rng, bounds);
    let (a, b) = if a.len() <= b.len() {
        (grow_to(&a, b.len(), rng), Some(b))
    } else {
        let b = grow_to(&b, a.len(), rng);
        (Some(a), b)
    };
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) => (a, b),
        (Some(a), None) | (None, Some(a)) => (a.clone(), a),
        (None, None) => unreachable!(),
    };
    let mut pairing: Vec<usize> = (0..a.len()).collect();
    pairing.shuffle(rng);
    GroupElement::from_codes(&a, &b, &pairing).expect("equal-size maximal codes")
}

/// A random restriction of a random group element.
pub fn table<R: Rng>(pres: &Arc<Presentation>, rng: &mut R, bounds: &Bounds) -> PartialTable {
    let g = group_element(pres, rng, bounds);
    let pairs: Vec<(Element, Element)> = g
        .pairs()
        .iter()
        .filter(|_| rng.gen_bool(0.6))
        .cloned()
        .collect();
    PartialTable::from_pairs(pres, pairs).expect("restriction of a bijection")
}
