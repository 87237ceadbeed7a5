//! Named fixture presentations.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::presentation::{free, Presentation, PresentationDoc, RelationDoc};

/// The nine 2-monoids `A_2^* ×_θ A_2^*` over `{e1, e2}` and `{f1, f2}`,
/// each as its four relations `e_i f_j = f_j′ e_i′`.
const POWER2: [[&str; 4]; 9] = [
    ["e1f1=f1e1", "e1f2=f2e1", "e2f1=f1e2", "e2f2=f2e2"],
    ["e1f1=f2e1", "e1f2=f1e1", "e2f1=f1e2", "e2f2=f2e2"],
    ["e1f1=f2e2", "e2f2=f1e1", "e1f2=f2e1", "e2f1=f1e2"],
    ["e1f1=f2e1", "e1f2=f2e2", "e2f2=f1e1", "e2f1=f1e2"],
    ["e1f1=f2e2", "e2f2=f2e1", "e1f2=f1e1", "e2f1=f1e2"],
    ["e1f1=f2e1", "e1f2=f1e1", "e2f1=f2e2", "e2f2=f1e2"],
    ["e1f1=f2e2", "e2f2=f1e1", "e1f2=f1e2", "e2f1=f2e1"],
    ["e1f1=f2e1", "e1f2=f2e2", "e2f2=f1e2", "e2f1=f1e1"],
    ["e1f1=f2e1", "e1f2=f1e2", "e2f1=f2e2", "e2f2=f1e1"],
];

/// Names accepted by [`catalog`]; parametric families are shown with placeholders.
pub fn catalog_names() -> Vec<String> {
    let mut names = vec!["free-N".to_string()];
    names.extend((1..=9).map(|i| format!("power2-{i}")));
    names.extend(
        ["steinberg", "cube3", "nn", "brin-N-M"]
            .iter()
            .map(|s| s.to_string()),
    );
    names
}

fn split_relation(rel: &str) -> RelationDoc {
    // every letter in these fixtures is two characters long
    let (l, r) = rel.split_once('=').expect("fixture relation has '='");
    RelationDoc {
        left: [l[..2].to_string(), l[2..].to_string()],
        right: [r[..2].to_string(), r[2..].to_string()],
    }
}

fn power2(item: usize) -> Result<Presentation> {
    let doc = PresentationDoc {
        k: 2,
        alphabets: vec![
            vec!["e1".into(), "e2".into()],
            vec!["f1".into(), "f2".into()],
        ],
        relations: POWER2[item - 1].iter().map(|r| split_relation(r)).collect(),
    };
    Presentation::from_doc(&doc)
}

/// Four-by-four 2-monoid with `e_i f_j = f_i e_j` except the two commuting
/// squares `e1 f4 = f4 e1` and `e4 f1 = f1 e4`.
fn steinberg() -> Result<Presentation> {
    let e: Vec<String> = (1..=4).map(|i| format!("e{i}")).collect();
    let f: Vec<String> = (1..=4).map(|i| format!("f{i}")).collect();
    let grid = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    if (i, j) == (0, 3) || (i, j) == (3, 0) {
                        (i, j)
                    } else {
                        // e_i f_j = f_i e_j, so theta(e_i, f_j) = (e_j, f_i)
                        (j, i)
                    }
                })
                .collect()
        })
        .collect();
    Presentation::from_tables(vec![e, f], HashMap::from([((0, 1), grid)]))
}

const AXIS_PREFIXES: &str = "abcdefghijklmnopqrstuvwxyz";

/// The `n`-fold direct product of free monoids on `m` letters, alphabets
/// named `a…`, `b…`, and so on.
pub fn brin(n: usize, m: usize) -> Result<Presentation> {
    if n == 0 || n > AXIS_PREFIXES.len() || m == 0 {
        return Err(Error::UnknownName(format!("brin-{n}-{m}")));
    }
    let mut p = free(&AXIS_PREFIXES[0..1], m)?;
    for axis in 1..n {
        p = p.product(&free(&AXIS_PREFIXES[axis..axis + 1], m)?)?;
    }
    Ok(p)
}

fn nn() -> Result<Presentation> {
    let a = Presentation::from_tables(vec![vec!["a".into()]], HashMap::new())?;
    let b = Presentation::from_tables(vec![vec!["b".into()]], HashMap::new())?;
    a.product(&b)
}

/// Look up a fixture presentation by name.
pub fn catalog(name: &str) -> Result<Presentation> {
    let unknown = || Error::UnknownName(name.to_string());
    if let Some(n) = name.strip_prefix("free-") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        return free("a", n);
    }
    if let Some(i) = name.strip_prefix("power2-") {
        return match i.parse::<usize>() {
            Ok(i @ 1..=9) => power2(i),
            _ => Err(unknown()),
        };
    }
    if let Some(rest) = name.strip_prefix("brin-") {
        let (n, m) = rest.split_once('-').ok_or_else(unknown)?;
        let n = n.parse().map_err(|_| unknown())?;
        let m = m.parse().map_err(|_| unknown())?;
        return brin(n, m).map_err(|_| unknown());
    }
    match name {
        "steinberg" => steinberg(),
        "cube3" => brin(3, 2),
        "nn" => nn(),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Effectiveness;

    #[test]
    fn rigidity_classification_of_the_nine() {
        let expected = [
            (true, true),
            (true, true),
            (false, false),
            (false, true),
            (true, false),
            (true, true),
            (true, true),
            (false, false),
            (true, true),
        ];
        for (i, want) in expected.iter().enumerate() {
            let p = catalog(&format!("power2-{}", i + 1)).unwrap();
            assert_eq!(
                (p.is_right_rigid(), p.is_left_rigid()),
                *want,
                "item {}",
                i + 1
            );
        }
    }

    #[test]
    fn power2_2_theta_values() {
        let p = catalog("power2-2").unwrap();
        let l = |s| p.letter(s).unwrap();
        assert_eq!(p.theta(l("e1"), l("f1")).unwrap(), (l("e1"), l("f2")));
        assert_eq!(p.theta(l("e2"), l("f2")).unwrap(), (l("e2"), l("f2")));
    }

    #[test]
    fn power2_3_relations_round_trip_through_the_document() {
        let p = catalog("power2-3").unwrap();
        let doc = p.to_doc();
        let spelled: Vec<String> = doc
            .relations
            .iter()
            .map(|r| format!("{}{}={}{}", r.left[0], r.left[1], r.right[0], r.right[1]))
            .collect();
        assert_eq!(
            spelled,
            ["e1f1=f2e2", "e1f2=f2e1", "e2f1=f1e2", "e2f2=f1e1"]
        );
    }

    #[test]
    fn steinberg_is_a_non_rigid_2_monoid() {
        let p = catalog("steinberg").unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(p.alphabet_sizes(), vec![4, 4]);
        assert!(!p.is_right_rigid());
        assert_eq!(p.effectiveness(), &Effectiveness::Unknown);
    }

    #[test]
    fn families() {
        let f2 = catalog("free-2").unwrap();
        assert_eq!((f2.k(), f2.alphabet_size(0)), (1, 2));
        let nn = catalog("nn").unwrap();
        assert_eq!(nn.alphabet_sizes(), vec![1, 1]);
        assert_eq!(nn.effectiveness(), &Effectiveness::Unknown);
        let cube = catalog("cube3").unwrap();
        assert_eq!(cube, catalog("brin-3-2").unwrap());
        assert_eq!(cube.to_doc().relations.len(), 12);
        assert!(cube.is_right_rigid() && cube.is_left_rigid());
        for bad in ["free-0", "power2-10", "brin-2", "bogus"] {
            assert!(matches!(catalog(bad), Err(Error::UnknownName(_))), "{bad}");
        }
    }

    #[test]
    fn every_catalog_presentation_is_confluent_on_three_letter_words() {
        for name in ["cube3", "brin-4-2", "brin-3-3"] {
            let p = catalog(name).unwrap();
            for i in 0..p.k() {
                for j in (i + 1)..p.k() {
                    for l in (j + 1)..p.k() {
                        for z in p.letters(l) {
                            for y in p.letters(j) {
                                for x in p.letters(i) {
                                    assert_eq!(p.all_normal_forms(&[z, y, x]).len(), 1);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
