use std::sync::Arc;

use kmonoid::catalog::catalog_names;
use kmonoid::tilings::incomparability_witness;
use kmonoid::{catalog, Effectiveness, Element, Grade, Letter, Presentation};
use num_bigint::BigUint;

fn monoids() -> Vec<Arc<Presentation>> {
    let mut names: Vec<String> = catalog_names()
        .into_iter()
        .filter(|n| !n.contains('N'))
        .collect();
    names.extend(["free-2", "free-3", "brin-2-3", "brin-3-3"].map(String::from));
    names
        .iter()
        .map(|n| Arc::new(catalog(n).unwrap()))
        .collect()
}

fn grades_up_to_total(k: usize, total: u32) -> Vec<Grade> {
    Grade::splat(k, total)
        .down_set()
        .into_iter()
        .filter(|g| g.total() <= total)
        .collect()
}

#[test]
fn descending_triples_have_one_normal_form() {
    for p in monoids() {
        let k = p.k();
        for c in 0..k {
            for b in 0..c {
                for a in 0..b {
                    for z in p.letters(c) {
                        for y in p.letters(b) {
                            for x in p.letters(a) {
                                assert_eq!(p.all_normal_forms(&[z, y, x]).len(), 1);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn theta_tables_are_mutually_inverse() {
    for p in monoids() {
        for i in 0..p.k() {
            for j in i + 1..p.k() {
                for x in p.letters(i) {
                    for y in p.letters(j) {
                        let (x2, y2) = p.theta(x, y).unwrap();
                        assert_eq!(p.theta_inverse(x2, y2).unwrap(), (x, y));
                        let (x3, y3) = p.theta_inverse(x, y).unwrap();
                        assert_eq!(p.theta(x3, y3).unwrap(), (x, y));
                    }
                }
            }
        }
    }
}

#[test]
fn rigid_presentations_are_guaranteed_effective() {
    for p in monoids() {
        let guaranteed = *p.effectiveness() == Effectiveness::GuaranteedByRigidity;
        let wide = p.alphabet_sizes().iter().all(|&n| n >= 2);
        assert_eq!(guaranteed, p.is_right_rigid() && wide);
    }
}

#[test]
fn grade_counts_are_products() {
    for p in monoids() {
        let cap = if p.alphabet_sizes().iter().any(|&n| n > 2) {
            4
        } else {
            6
        };
        for g in grades_up_to_total(p.k(), cap) {
            let expected: BigUint = (0..p.k())
                .map(|i| BigUint::from(p.alphabet_size(i)).pow(g.get(i)))
                .product();
            let listed = Element::enumerate_grade(&p, &g);
            assert_eq!(BigUint::from(listed.len()), expected);
            assert_eq!(Element::count_grade(&p, &g), expected);
            assert!(listed.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn rigid_pairs_have_small_witnesses() {
    for p in monoids() {
        if !p.is_right_rigid() || p.alphabet_sizes().iter().any(|&n| n < 2) {
            continue;
        }
        let k = p.k();
        let elems: Vec<Element> = Grade::splat(k, 1)
            .down_set()
            .iter()
            .flat_map(|g| Element::enumerate_grade(&p, g))
            .collect();
        for (i, x) in elems.iter().enumerate() {
            for y in &elems[i + 1..] {
                assert!(
                    incomparability_witness(x, y, &Grade::splat(k, 2)).is_some(),
                    "{x} {y}"
                );
            }
        }
    }
}

#[test]
fn letters_round_trip_through_names() {
    for p in monoids() {
        for i in 0..p.k() {
            for l in p.letters(i) {
                assert_eq!(p.letter(p.name(l)).unwrap(), l);
                assert_eq!(Letter::new(i, l.index), l);
            }
        }
    }
}
