//! Generation of admissible monomials by degree, and character tables.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::conditions::{admissible, dc1_pair, dc_level2_freq, ic_level1, ic_level2};
use crate::error::Result;
use crate::lattice::{Color, Lattice, Weight};
use crate::monomial::{colored_partitions, Factor, Monomial};
use crate::weights::WeightSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterRow {
    pub degree: u32,
    pub weight: Option<String>,
    pub count: u64,
}

/// Check the conditions that involve the newly placed leftmost factor.
/// All conditions are monotone under adding factors, so failing here prunes.
fn step_ok(partial: &[Factor], w: WeightSpec, ell: usize) -> bool {
    let new = *partial.last().expect("nonempty");
    let d = new.depth;
    let m = Monomial::normalize(partial.to_vec());
    match w {
        WeightSpec::Level1(a) => {
            let pairs_ok = partial[..partial.len() - 1]
                .iter()
                .filter(|g| g.depth + 1 >= d)
                .all(|&g| dc1_pair(new, g, ell).unwrap_or(false));
            pairs_ok && (d != 1 || ic_level1(&m, a, ell))
        }
        _ => {
            let windows_ok = [d - 1, d].into_iter().filter(|&j| j >= 1).all(|j| {
                dc_level2_freq(&window_slice(&m, j), ell)
            });
            windows_ok && (d != 1 || ic_level2(&m, w, ell).unwrap_or(false))
        }
    }
}

fn window_slice(m: &Monomial, j: u32) -> Monomial {
    Monomial::normalize(m.factors().iter().filter(|f| f.depth == j || f.depth == j + 1).copied().collect())
}

/// Admissible monomials of degree −n for W(Λ), sorted ascending.
pub fn enumerate_admissible(w: WeightSpec, n: u32, lat: &Lattice) -> Result<Vec<Monomial>> {
    let ell = lat.ell();
    // Validate the weight once (errors for unsupported weights).
    admissible(&Monomial::empty(), w, ell)?;
    let mut asc: Vec<Color> = lat.gamma().to_vec();
    asc.sort();
    let mut out = Vec::new();
    let mut cur: Vec<Factor> = Vec::new();

    fn rec(
        asc: &[Color],
        left: u32,
        cur: &mut Vec<Factor>,
        out: &mut Vec<Monomial>,
        w: WeightSpec,
        ell: usize,
    ) {
        if left == 0 {
            out.push(Monomial::normalize(cur.clone()));
            return;
        }
        let bound = cur.last().copied();
        let min_depth = bound.map_or(1, |b| b.depth);
        for depth in min_depth..=left {
            for &c in asc.iter().rev() {
                let f = Factor::new(c, depth);
                if bound.is_some_and(|b| f > b) {
                    continue;
                }
                cur.push(f);
                if step_ok(cur, w, ell) {
                    rec(asc, left - depth, cur, out, w, ell);
                }
                cur.pop();
            }
        }
    }
    rec(&asc, n, &mut cur, &mut out, w, ell);
    out.sort_by(|a, b| a.compare(b));
    Ok(out)
}

/// Generate-then-filter oracle for [`enumerate_admissible`].
pub fn enumerate_naive(w: WeightSpec, n: u32, lat: &Lattice) -> Result<Vec<Monomial>> {
    let mut out = Vec::new();
    for m in colored_partitions(lat.gamma(), n) {
        if admissible(&m, w, lat.ell())? {
            out.push(m);
        }
    }
    out.sort_by(|a, b| a.compare(b));
    Ok(out)
}

/// Number of admissible monomials per degree 0..=n_max.
pub fn graded_dimensions(w: WeightSpec, n_max: u32, lat: &Lattice) -> Result<Vec<CharacterRow>> {
    (0..=n_max)
        .map(|n| {
            Ok(CharacterRow { degree: n, weight: None, count: enumerate_admissible(w, n, lat)?.len() as u64 })
        })
        .collect()
}

/// Counts per degree and weight(m).
pub fn graded_dimensions_by_weight(w: WeightSpec, n_max: u32, lat: &Lattice) -> Result<Vec<CharacterRow>> {
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let mut by: BTreeMap<Weight, u64> = BTreeMap::new();
        for m in enumerate_admissible(w, n, lat)? {
            *by.entry(m.weight(lat.ell())).or_default() += 1;
        }
        rows.extend(by.into_iter().map(|(wt, count)| CharacterRow { degree: n, weight: Some(wt.to_string()), count }));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let lat = Lattice::new(4).unwrap();
        let w = |s| WeightSpec::parse(s, 4).unwrap();
        assert_eq!(enumerate_admissible(w("L0"), 0, &lat).unwrap(), vec![Monomial::empty()]);
        assert_eq!(enumerate_admissible(w("L0"), 1, &lat).unwrap().len(), 6);
        assert!(enumerate_admissible(w("L1"), 1, &lat).unwrap().is_empty());
        let rows = graded_dimensions(w("L0"), 2, &lat).unwrap();
        let counts: Vec<(u32, u64)> = rows.iter().map(|r| (r.degree, r.count)).collect();
        assert_eq!(counts, vec![(0, 1), (1, 6), (2, 7)]);
    }
}
