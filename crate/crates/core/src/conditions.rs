//! Difference conditions (DC) and initial conditions (IC), levels 1 and 2.
//!
//! Color sets are handled as lists of ordinals (see [`Color::ordinal`]) so an
//! inequality is just "sum of counts over a set ≤ bound".

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::monomial::{Factor, Monomial};
use crate::lattice::Color;
use crate::weights::{LevelOne, WeightSpec};

/// Counts of a-factors (depth j) and b-factors (depth j+1) by color ordinal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreqProfile {
    pub window: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl FreqProfile {
    pub fn of(m: &Monomial, window: u32, ell: usize) -> Self {
        FreqProfile { window, a: counts_at(m, window, ell), b: counts_at(m, window + 1, ell) }
    }
}

fn counts_at(m: &Monomial, depth: u32, ell: usize) -> Vec<u32> {
    let mut c = vec![0; 2 * ell - 2];
    for f in m.factors().iter().filter(|f| f.depth == depth) {
        c[f.color.ordinal(ell)] += 1;
    }
    c
}

fn pos(r: RangeInclusive<usize>, ell: usize) -> Vec<usize> {
    r.map(|i| Color::pos(i).ordinal(ell)).collect()
}

fn neg(r: RangeInclusive<usize>, ell: usize) -> Vec<usize> {
    r.map(|i| Color::neg(i).ordinal(ell)).collect()
}

fn without(mut v: Vec<usize>, x: usize) -> Vec<usize> {
    v.retain(|&y| y != x);
    v
}

fn union(mut a: Vec<usize>, b: Vec<usize>) -> Vec<usize> {
    a.extend(b);
    a
}

fn sum(counts: &[u32], set: &[usize]) -> u32 {
    set.iter().map(|&k| counts[k]).sum()
}

/// One frequency inequality: Σ_{B} b + Σ_{A} a ≤ bound.
#[derive(Clone, Debug)]
struct Form {
    b: Vec<usize>,
    a: Vec<usize>,
}

/// The six families of frequency inequalities.
fn forms(ell: usize) -> Vec<Form> {
    let l = ell;
    let mut out = Vec::new();
    for r in 2..l {
        out.push(Form { b: pos(2..=r, l), a: union(neg(2..=l, l), pos(r + 1..=l, l)) });
        out.push(Form {
            b: pos(2..=r, l),
            a: union(without(neg(2..=l, l), Color::neg(r).ordinal(l)), pos(r..=l, l)),
        });
    }
    out.push(Form { b: pos(2..=l, l), a: union(neg(2..=l - 1, l), pos(l..=l, l)) });
    out.push(Form { b: union(neg(l..=l, l), pos(2..=l - 1, l)), a: neg(2..=l, l) });
    for r in 2..l {
        out.push(Form { b: union(neg(r + 1..=l, l), pos(2..=l, l)), a: neg(2..=r, l) });
        out.push(Form {
            b: union(neg(r..=l, l), without(pos(2..=l, l), Color::pos(r).ordinal(l))),
            a: neg(2..=r, l),
        });
    }
    out
}

fn freq_holds(p: &FreqProfile, fs: &[Form], bound: u32) -> bool {
    fs.iter().all(|f| sum(&p.b, &f.b) + sum(&p.a, &f.a) <= bound)
}

fn max_depth(m: &Monomial) -> u32 {
    m.factors().first().map_or(0, |f| f.depth)
}

/// Frequency form of DC with the given bound over all windows j ≥ `from`.
fn dc_freq(m: &Monomial, ell: usize, bound: u32, from: u32) -> bool {
    let fs = forms(ell);
    (from..=max_depth(m)).all(|j| freq_holds(&FreqProfile::of(m, j, ell), &fs, bound))
}

fn reject_imaginary(m: &Monomial) -> Result<()> {
    if m.has_imaginary() {
        Err(Error::InvalidInput(format!("depth-0 factor in `{m}`")))
    } else {
        Ok(())
    }
}

/// Level-1 DC for a pair x_δ(−i) x_γ(−j), i ≥ j.
pub fn dc1_pair(left: Factor, right: Factor, ell: usize) -> Result<bool> {
    if left.depth == 0 || right.depth == 0 {
        return Err(Error::InvalidInput("depth-0 factor in pair".into()));
    }
    if left.depth < right.depth {
        return Err(Error::InvalidInput("left factor must be the deeper one".into()));
    }
    let (i, j) = (left.depth, right.depth);
    let (d, g) = (left.color, right.color);
    Ok(i >= j + 2
        || (i == j + 1 && (d < g || (d == Color::pos(ell) && g == Color::neg(ell))))
        || (i == j && d == Color::neg(2) && g == Color::pos(2)))
}

/// Level-1 DC: every pair of factors satisfies [`dc1_pair`].
pub fn dc_level1(m: &Monomial, ell: usize) -> Result<bool> {
    reject_imaginary(m)?;
    let f = m.factors();
    for (k, &right) in f.iter().enumerate().rev() {
        for &left in f[..k].iter().rev() {
            if left.depth > right.depth + 1 {
                break;
            }
            if !dc1_pair(left, right, ell)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn dc_level1_freq(m: &Monomial, ell: usize) -> bool {
    dc_freq(m, ell, 1, 1)
}

pub fn dc_level2_freq(m: &Monomial, ell: usize) -> bool {
    dc_freq(m, ell, 2, 1)
}

/// The frequency inequalities at a single window j.
pub fn freq_window_holds(m: &Monomial, j: u32, ell: usize, bound: u32) -> bool {
    freq_holds(&FreqProfile::of(m, j, ell), &forms(ell), bound)
}

/// Frequency conditions over windows j ≥ 0, meant for monomials carrying
/// imaginary factors.
pub fn dc_freq_with_imaginary(m: &Monomial, ell: usize, level: u32) -> bool {
    dc_freq(m, ell, level, 0)
}

/// One IC inequality on depth-1 counts.
struct Bound {
    set: Vec<usize>,
    max: u32,
}

fn ic_bounds_level1(a: LevelOne, ell: usize) -> Vec<Bound> {
    let l = ell;
    let big_neg = || union(neg(3..=l, l), pos(2..=l, l));
    let big_pos = || union(neg(2..=l, l), pos(3..=l, l));
    let spin_a = || union(neg(l..=l, l), pos(2..=l - 1, l));
    match a.index() {
        0 => vec![Bound { set: big_neg(), max: 1 }, Bound { set: big_pos(), max: 1 }],
        1 => vec![Bound { set: big_neg(), max: 0 }, Bound { set: big_pos(), max: 0 }],
        i if i == l - 1 => vec![
            Bound { set: spin_a(), max: 0 },
            Bound { set: pos(2..=l, l), max: 1 },
            Bound { set: big_pos(), max: 1 },
        ],
        _ => vec![
            Bound { set: pos(2..=l, l), max: 0 },
            Bound { set: spin_a(), max: 1 },
            Bound { set: big_pos(), max: 1 },
        ],
    }
}

fn ic_bounds_level2(w: WeightSpec, ell: usize) -> Result<Vec<Bound>> {
    let l = ell;
    Ok(match w {
        WeightSpec::Level1(_) => return Err(Error::InvalidInput("level-1 weight given to level-2 IC".into())),
        WeightSpec::Sum(..) => {
            let k = w.coefficients(l);
            let (k0, k1, km, kl) = (k[0], k[1], k[l - 1], k[l]);
            vec![
                Bound { set: pos(2..=l - 1, l), max: k0 },
                Bound { set: pos(2..=l, l), max: k0 + km },
                Bound { set: union(neg(l..=l, l), pos(2..=l - 1, l)), max: k0 + kl },
                Bound { set: union(neg(3..=l, l), pos(2..=l, l)), max: 2 - k1 },
                Bound { set: union(neg(2..=l, l), pos(3..=l, l)), max: 2 - k1 },
            ]
        }
        WeightSpec::Fundamental(j) => {
            if !(2..=l - 2).contains(&j) {
                return Err(Error::Unsupported(format!("Λ_{j} is not a level-2 fundamental weight")));
            }
            let mut v = vec![
                Bound { set: pos(2..=j, l), max: 0 },
                Bound { set: pos(2..=j + 1, l), max: 1 },
                Bound { set: pos(2..=l, l), max: 1 },
                Bound { set: union(neg(l..=l, l), pos(2..=l - 1, l)), max: 1 },
                Bound { set: union(neg(j + 2..=l, l), pos(2..=l, l)), max: 1 },
                Bound {
                    set: union(neg(j + 1..=l, l), without(pos(2..=l, l), Color::pos(j + 1).ordinal(l))),
                    max: 1,
                },
            ];
            for m in 2..=j {
                v.push(Bound { set: union(neg(m + 1..=l, l), pos(2..=l, l)), max: 2 });
                v.push(Bound {
                    set: union(neg(m..=l, l), without(pos(2..=l, l), Color::pos(m).ordinal(l))),
                    max: 2,
                });
            }
            v
        }
    })
}

fn bounds_hold(m: &Monomial, bounds: &[Bound], ell: usize) -> bool {
    let b = counts_at(m, 1, ell);
    bounds.iter().all(|x| sum(&b, &x.set) <= x.max)
}

pub fn ic_level1(m: &Monomial, a: LevelOne, ell: usize) -> bool {
    bounds_hold(m, &ic_bounds_level1(a, ell), ell)
}

pub fn ic_level2(m: &Monomial, w: WeightSpec, ell: usize) -> Result<bool> {
    Ok(bounds_hold(m, &ic_bounds_level2(w, ell)?, ell))
}

/// Imaginary depth-0 factors encoding the IC of W(Λ) as DC.
pub fn attach_imaginary(w: WeightSpec, ell: usize) -> Result<Monomial> {
    let one = |a: LevelOne| -> Vec<Factor> {
        match a.index() {
            0 => vec![],
            1 => vec![Factor::new(Color::neg(2), 0), Factor::new(Color::pos(2), 0)],
            i if i == ell - 1 => vec![Factor::new(Color::neg(ell), 0)],
            _ => vec![Factor::new(Color::pos(ell), 0)],
        }
    };
    Ok(Monomial::normalize(match w {
        WeightSpec::Level1(a) => one(a),
        WeightSpec::Sum(a, b) => union_f(one(a), one(b)),
        WeightSpec::Fundamental(j) if (2..=ell - 2).contains(&j) => {
            vec![Factor::new(Color::neg(j + 1), 0), Factor::new(Color::pos(j + 1), 0)]
        }
        WeightSpec::Fundamental(j) => return Err(Error::Unsupported(format!("imaginary factors for Λ_{j}"))),
    }))
}

fn union_f(mut a: Vec<Factor>, b: Vec<Factor>) -> Vec<Factor> {
    a.extend(b);
    a
}

/// DC and IC for W(Λ).
pub fn admissible(m: &Monomial, w: WeightSpec, ell: usize) -> Result<bool> {
    reject_imaginary(m)?;
    match w {
        WeightSpec::Level1(a) => Ok(dc_level1(m, ell)? && ic_level1(m, a, ell)),
        _ => Ok(dc_level2_freq(m, ell) && ic_level2(m, w, ell)?),
    }
}

/// Split a level-2 DC monomial into two level-1 DC subarrays.
///
/// Factors are dealt right to left, each preferably to the subarray the
/// previous factor did not take ("every second factor"); when that breaks
/// level-1 DC the other subarray is used, backtracking if needed. On the
/// exceptional runs this reproduces the swaps of the hand algorithm.
pub fn split_level2(m: &Monomial, ell: usize) -> Option<(Monomial, Monomial)> {
    let f: Vec<Factor> = m.factors().iter().rev().copied().collect();
    let mut side = vec![0u8; f.len()];

    fn fits(f: &[Factor], side: &[u8], k: usize, s: u8, ell: usize) -> bool {
        (0..k).filter(|&i| side[i] == s && f[i].depth + 1 >= f[k].depth).all(|i| {
            dc1_pair(f[k], f[i], ell).unwrap_or(false)
        })
    }

    fn rec(f: &[Factor], side: &mut Vec<u8>, k: usize, ell: usize) -> bool {
        if k == f.len() {
            return true;
        }
        let preferred = if k == 0 { 0 } else { 1 - side[k - 1] };
        for s in [preferred, 1 - preferred] {
            if fits(f, side, k, s, ell) {
                side[k] = s;
                if rec(f, side, k + 1, ell) {
                    return true;
                }
            }
        }
        false
    }

    if f.iter().any(|x| x.depth == 0) || !rec(&f, &mut side, 0, ell) {
        return None;
    }
    let pick = |s| Monomial::normalize(f.iter().zip(&side).filter(|(_, &t)| t == s).map(|(x, _)| *x).collect());
    Some((pick(0), pick(1)))
}

/// Partition the depth-1 factors so the parts satisfy the IC of Λ¹ and Λ².
pub fn split_ic(m: &Monomial, a: LevelOne, b: LevelOne, ell: usize) -> Option<(Monomial, Monomial)> {
    let ones: Vec<Factor> = m.factors().iter().filter(|f| f.depth == 1).copied().collect();
    (0u32..1 << ones.len()).find_map(|mask| {
        let part = |bit| {
            Monomial::normalize(
                ones.iter().enumerate().filter(|(k, _)| (mask >> k & 1) == bit).map(|(_, x)| *x).collect(),
            )
        };
        let (p, q) = (part(0), part(1));
        (ic_level1(&p, a, ell) && ic_level1(&q, b, ell)).then_some((p, q))
    })
}

/// Whether m contains an exceptional block that admits no level-1 partition:
/// x_δ(−j−1) x_δ̲(−j) x_δ(−j) with δ ∈ {γ_3, …, γ_{l−1}}, or its mirror
/// x_δ̲(−j−1) x_δ(−j−1) x_δ̲(−j) with the pair one step deeper.
pub fn has_unsplittable_block(m: &Monomial, ell: usize) -> bool {
    m.factors().iter().any(|f| {
        let c = f.color;
        if !(3..ell).contains(&c.index()) {
            return false;
        }
        let pair_at = |d: u32| m.count(d, c) > 0 && m.count(d, c.opposite()) > 0;
        if c.is_neg() {
            pair_at(f.depth + 1)
        } else {
            f.depth >= 2 && pair_at(f.depth - 1)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn l1(i: usize) -> LevelOne {
        LevelOne::new(i, 4).unwrap()
    }

    #[test]
    fn pair_examples() {
        let f = |s: &str| s.parse::<Factor>().unwrap();
        assert!(dc1_pair(f("g3(-2)"), f("g2(-1)"), 4).unwrap());
        assert!(dc1_pair(f("g4(-2)"), f("g~4(-1)"), 4).unwrap());
        assert!(!dc1_pair(f("g3(-1)"), f("g3(-1)"), 4).unwrap());
        assert!(dc1_pair(f("g3(0)"), f("g3(-1)"), 4).is_err());
    }

    #[test]
    fn level1_dc_examples() {
        assert!(dc_level1(&Monomial::empty(), 4).unwrap());
        assert!(dc_level1(&m("g~2(-1) g2(-1)"), 4).unwrap());
        assert!(!dc_level1(&m("g~2(-2) g~2(-1) g2(-1)"), 4).unwrap());
        assert!(dc_level1_freq(&Monomial::empty(), 4));
        assert!(!dc_level1_freq(&m("g2(-1) g2(-1)"), 4));
    }

    #[test]
    fn level1_ic_examples() {
        assert!(ic_level1(&m("g4(-1)"), l1(3), 4));
        assert!(!ic_level1(&m("g2(-1)"), l1(3), 4));
        assert!(!ic_level1(&m("g~4(-1)"), l1(1), 4));
        assert!(ic_level1(&m("g~2(-1) g2(-1)"), l1(0), 4));
        assert!(!admissible(&m("g3(-1)"), WeightSpec::Level1(l1(1)), 4).unwrap());
        assert!(admissible(&Monomial::empty(), WeightSpec::Fundamental(2), 4).unwrap());
    }

    #[test]
    fn imaginary_factors() {
        let w = |s| WeightSpec::parse(s, 4).unwrap();
        assert!(attach_imaginary(w("L0"), 4).unwrap().is_empty());
        assert_eq!(attach_imaginary(w("L3"), 4).unwrap().to_string(), "g~4(0)");
        assert_eq!(attach_imaginary(w("L2"), 4).unwrap().to_string(), "g~3(0) g3(0)");
        assert_eq!(attach_imaginary(w("L3+L1"), 4).unwrap().to_string(), "g~2(0) g~4(0) g2(0)");
    }

    #[test]
    fn level2_examples() {
        assert!(dc_level2_freq(&m("g3(-2) g~3(-1) g3(-1)"), 4));
        assert!(!dc_level2_freq(&m("g2(-1) g2(-1) g2(-1)"), 4));
        let f2 = WeightSpec::Fundamental(2);
        assert!(!ic_level2(&m("g2(-1)"), f2, 4).unwrap());
        assert!(ic_level2(&m("g~3(-1) g3(-1)"), f2, 4).unwrap());
        let s00 = WeightSpec::parse("2L0", 4).unwrap();
        assert!(ic_level2(&m("g~2(-1) g~2(-1) g2(-1) g2(-1)"), s00, 4).unwrap());
    }

    #[test]
    fn split_examples() {
        let (a, b) = split_level2(&m("g3(-4) g~4(-2) g5(-2) g~5(-1) g3(-1)"), 5).unwrap();
        assert_eq!(a.to_string(), "g3(-4) g5(-2) g3(-1)");
        assert_eq!(b.to_string(), "g~4(-2) g~5(-1)");
        let big = m("g3(-7) g~5(-6) g~4(-5) g6(-5) g~6(-4) g6(-4) g~6(-3) g6(-3) g~6(-2) g6(-2) g5(-1) g3(-1)");
        let (a, b) = split_level2(&big, 6).unwrap();
        assert_eq!(a.to_string(), "g3(-7) g~4(-5) g6(-4) g~6(-3) g6(-2) g3(-1)");
        assert_eq!(b.to_string(), "g~5(-6) g6(-5) g~6(-4) g6(-3) g~6(-2) g5(-1)");
        assert_eq!(split_level2(&Monomial::empty(), 4), Some((Monomial::empty(), Monomial::empty())));
        // The exceptional block with δ = γ_3 has no level-1 partition at all.
        let blocked = m("g3(-2) g~3(-1) g3(-1)");
        assert!(split_level2(&blocked, 4).is_none());
        assert!(has_unsplittable_block(&blocked, 4));
    }

    #[test]
    fn split_ic_examples() {
        assert_eq!(split_ic(&Monomial::empty(), l1(0), l1(0), 4), Some((Monomial::empty(), Monomial::empty())));
        let (p, q) = split_ic(&m("g~2(-1) g~3(-1) g2(-1)"), l1(0), l1(0), 4).unwrap();
        let mut parts = [p.to_string(), q.to_string()];
        parts.sort();
        assert_eq!(parts, ["g~2(-1) g2(-1)".to_string(), "g~3(-1)".to_string()]);
    }
}
