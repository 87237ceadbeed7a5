//! Brick partitions of the unit cube: each element of a code becomes a box
//! whose axis-`i` interval is read off its `i`-projection as base-`n_i` digits.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::codes::PrefixCode;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::presentation::Letter;

/// Half-open `[start, start + length)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub start: BigRational,
    pub length: BigRational,
}

impl Interval {
    pub fn end(&self) -> BigRational {
        &self.start + &self.length
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Brick {
    pub element: String,
    pub intervals: Vec<Interval>,
}

impl Brick {
    pub fn volume(&self) -> BigRational {
        self.intervals
            .iter()
            .fold(BigRational::one(), |v, iv| v * &iv.length)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxGeometry {
    pub k: usize,
    pub bricks: Vec<Brick>,
}

#[derive(Serialize, Deserialize)]
struct BrickDoc {
    element: String,
    intervals: Vec<[u64; 4]>,
}

fn ratio(n: u64, d: u64) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn parts(r: &BigRational) -> Result<(u64, u64)> {
    match (r.numer().to_u64(), r.denom().to_u64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Overflow(r.to_string())),
    }
}

fn digits(n: usize, word: &[Letter]) -> Interval {
    let n = BigInt::from(n);
    let mut start = BigRational::zero();
    let mut length = BigRational::one();
    for l in word {
        length /= n.clone();
        start += &length * BigInt::from(l.index);
    }
    Interval { start, length }
}

// Bounding box of the grade-`m` bricks below `c`, which must fill it exactly.
// Brick corners are kept as integer cell indices along each axis.
fn glued(c: &Element, m: &Grade) -> Result<Vec<Interval>> {
    let pres = c.presentation();
    let k = pres.k();
    let overflow = || Error::Overflow(format!("cells of grade {m}"));
    let rest = m
        .checked_sub(c.grade())
        .expect("extent bounds every member");
    let mut lo = vec![u128::MAX; k];
    let mut hi = vec![0u128; k];
    let mut filled: u128 = 0;
    for t in Element::enumerate_grade(pres, &rest) {
        let s = c.mul_unchecked(&t);
        for i in 0..k {
            let n = pres.alphabet_size(i) as u128;
            let cell = s.component(i).iter().try_fold(0u128, |acc, l| {
                acc.checked_mul(n)
                    .and_then(|v| v.checked_add(l.index as u128))
            });
            let cell = cell.ok_or_else(overflow)?;
            lo[i] = lo[i].min(cell);
            hi[i] = hi[i].max(cell + 1);
        }
        filled += 1;
    }
    let mut cells: u128 = 1;
    let mut intervals = Vec::with_capacity(k);
    for i in 0..k {
        let span = hi[i] - lo[i];
        cells = cells.checked_mul(span).ok_or_else(overflow)?;
        let denom = BigInt::from(pres.alphabet_size(i)).pow(m.get(i));
        intervals.push(Interval {
            start: BigRational::new(BigInt::from(lo[i]), denom.clone()),
            length: BigRational::new(BigInt::from(span), denom),
        });
    }
    if cells != filled {
        return Err(Error::NotABrick(c.to_string()));
    }
    Ok(intervals)
}

/// One brick per code element.
///
/// In a right-rigid monoid the axis-`i` interval comes from the digits of the
/// `i`-projection. Otherwise the cylinder of `c` is glued from the uniform
/// bricks of the extent grade, read off normal-form components; `NotABrick`
/// when that union is not a box.
pub fn render_boxes(code: &PrefixCode) -> Result<BoxGeometry> {
    let pres = code.presentation();
    let k = pres.k();
    let extent = code.extent();
    let bricks = code
        .elements()
        .iter()
        .map(|c| {
            let intervals = if pres.is_right_rigid() {
                (0..k)
                    .map(|i| digits(pres.alphabet_size(i), &c.projection(i)))
                    .collect()
            } else {
                glued(c, &extent)?
            };
            Ok(Brick {
                element: c.to_string(),
                intervals,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoxGeometry { k, bricks })
}

impl BoxGeometry {
    pub fn volumes(&self) -> Vec<BigRational> {
        self.bricks.iter().map(Brick::volume).collect()
    }

    pub fn total_volume(&self) -> BigRational {
        self.bricks
            .iter()
            .fold(BigRational::zero(), |v, b| v + b.volume())
    }

    pub fn interiors_disjoint(&self) -> bool {
        let spans: Vec<Vec<(&BigRational, BigRational)>> = self
            .bricks
            .iter()
            .map(|b| b.intervals.iter().map(|iv| (&iv.start, iv.end())).collect())
            .collect();
        spans.iter().enumerate().all(|(i, a)| {
            spans[i + 1..].iter().all(|b| {
                a.iter()
                    .zip(b)
                    .any(|((s1, e1), (s2, e2))| e1 <= *s2 || e2 <= *s1)
            })
        })
    }

    /// Volumes sum to 1 and interiors are pairwise disjoint.
    pub fn tiles_unit_cube(&self) -> bool {
        self.total_volume().is_one() && self.interiors_disjoint()
    }

    /// `[{"element": .., "intervals": [[n1, d1, n2, d2], ..]}, ..]` with
    /// start `n1/d1` and length `n2/d2`.
    pub fn to_json(&self) -> Result<String> {
        let docs = self
            .bricks
            .iter()
            .map(|b| {
                let intervals = b
                    .intervals
                    .iter()
                    .map(|iv| {
                        let (n1, d1) = parts(&iv.start)?;
                        let (n2, d2) = parts(&iv.length)?;
                        Ok([n1, d1, n2, d2])
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(BrickDoc {
                    element: b.element.clone(),
                    intervals,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(serde_json::to_string(&docs).expect("plain data serializes"))
    }

    pub fn from_json(text: &str) -> Result<BoxGeometry> {
        let docs: Vec<BrickDoc> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let k = docs.first().map_or(0, |d| d.intervals.len());
        let bricks = docs
            .into_iter()
            .map(|d| {
                if d.intervals.len() != k {
                    return Err(Error::Parse("bricks of different dimension".into()));
                }
                let intervals = d
                    .intervals
                    .iter()
                    .map(|[n1, d1, n2, d2]| {
                        Ok(Interval {
                            start: ratio(*n1, *d1)?,
                            length: ratio(*n2, *d2)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Brick {
                    element: d.element,
                    intervals,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoxGeometry { k, bricks })
    }

    /// SVG 1.1, unit square scaled to 512×512; axis 1 runs right, axis 2 up.
    pub fn to_svg(&self) -> Result<String> {
        if !(1..=2).contains(&self.k) {
            return Err(Error::SvgUnsupportedDimension(self.k));
        }
        const SIDE: f64 = 512.0;
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="512" height="512" viewBox="0 0 512 512">"#
        )
        .unwrap();
        for (idx, b) in self.bricks.iter().enumerate() {
            let x = f(&b.intervals[0].start) * SIDE;
            let w = f(&b.intervals[0].length) * SIDE;
            let (y, h) = match b.intervals.get(1) {
                Some(iv) => ((1.0 - f(&iv.end())) * SIDE, f(&iv.length) * SIDE),
                None => (0.0, SIDE),
            };
            writeln!(
                out,
                r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="{}" stroke="black" stroke-width="1"><title>{}</title></rect>"#,
                sig(x),
                sig(y),
                sig(w),
                sig(h),
                palette(idx),
                b.element
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        Ok(out)
    }
}

fn palette(i: usize) -> String {
    // golden-angle hue steps keep neighbours apart
    let hue = (i as f64 * 137.507_764) % 360.0;
    format!("hsl({},65%,72%)", sig(hue))
}

/// Decimal text with at most 12 significant digits.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let text = format!("{x:.decimals$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}
