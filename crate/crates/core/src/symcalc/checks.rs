//! Cross-checks of the projective calculus against the Fock space.

use std::collections::HashMap;

use super::{run_program, Outcome, SymState, Top};
use crate::conditions::admissible;
use crate::fock::{Fock, FockVector};
use crate::lattice::{Color, Lattice, SpinorLabel};
use crate::monomial::{Factor, Monomial};
use crate::verify::{monomial_apply, CheckReport};
use crate::weights::{LevelOne, WeightSpec};

/// Monomials x(−a−j+1)…x(−a) with one factor per depth and total depth at
/// most `max_total`, over all colors.
fn successive_blocks(colors: &[Color], max_total: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 1..=max_total {
        for j in 1.. {
            let depths: Vec<u32> = (a..a + j).collect();
            if depths.iter().sum::<u32>() > max_total {
                break;
            }
            out.extend(colorings(colors, &depths));
        }
    }
    out
}

fn colorings(colors: &[Color], depths: &[u32]) -> Vec<Monomial> {
    let mut acc = vec![Vec::<Factor>::new()];
    for &d in depths {
        acc = acc
            .into_iter()
            .flat_map(|v| {
                colors.iter().map(move |&c| {
                    let mut w = v.clone();
                    w.push(Factor::new(c, d));
                    w
                })
            })
            .collect();
    }
    acc.into_iter().map(Monomial::normalize).collect()
}

/// Every definite symbolic answer agrees with the Fock action: a pure
/// result is a nonzero multiple of e^λ′, a zero is zero.
pub fn check_fock_consistency(fock: &Fock) -> CheckReport {
    let ell = fock.ell();
    let lat = fock.lattice();
    let mut starts = vec![SymState::new(ell, 0, Top::Vacuum), SymState::new(ell, 1, Top::Vacuum)];
    starts.extend((0..1u32 << ell).map(|b| SymState::new(ell, 0, Top::Spinor(SpinorLabel::from_bits(b)))));
    let mut r = CheckReport::new("symbolic calculus vs Fock action");
    for m in successive_blocks(lat.gamma(), 6) {
        for s in &starts {
            let sym = run_program(s, &[], m.factors());
            if sym == Outcome::Unsupported {
                continue;
            }
            let v = match monomial_apply(fock, &m, &FockVector::pure(s.lambda().clone())) {
                Ok(v) => v,
                Err(e) => {
                    r.record(false, || format!("{m} on {s}: {e}"));
                    continue;
                }
            };
            let ok = match &sym {
                Outcome::Zero => v.is_zero(),
                Outcome::State(t) => v.as_pure().is_some_and(|(w, _)| w == t.lambda()),
                Outcome::Unsupported => unreachable!(),
            };
            r.record(ok, || format!("{m} on {s}: symbolic {sym:?}, Fock has {} terms", v.len()));
        }
    }
    r.finish()
}

/// Admissible successive monomials x(−j)…x(−1) on W(Λ_l) and W(Λ_{l−1})
/// reach pairwise distinct pure vectors.
pub fn check_successive_distinct(lat: &Lattice) -> CheckReport {
    let ell = lat.ell();
    let mut r = CheckReport::new("successive monomials give distinct vectors");
    for a in [LevelOne::new(ell, ell), LevelOne::new(ell - 1, ell)] {
        let a = a.expect("spinor weights are level 1");
        let start = SymState::highest(ell, a);
        for j in 1..=5 {
            let depths: Vec<u32> = (1..=j).collect();
            let mut seen: HashMap<SymState, Monomial> = HashMap::new();
            for m in colorings(lat.gamma(), &depths) {
                if !admissible(&m, WeightSpec::Level1(a), ell).unwrap_or(false) {
                    continue;
                }
                match run_program(&start, &[], m.factors()) {
                    Outcome::Zero => r.record(true, String::new),
                    Outcome::Unsupported => r.record(false, || format!("{m} on {a}: not pure")),
                    Outcome::State(s) => {
                        let clash = seen.get(&s).cloned();
                        r.record(clash.is_none(), || format!("{m} and {} on {a} both give {s}", clash.clone().unwrap()));
                        seen.entry(s).or_insert(m);
                    }
                }
            }
        }
    }
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_count_rank_four() {
        let lat = Lattice::new(4).unwrap();
        // six singletons, two pairs, one triple
        assert_eq!(successive_blocks(lat.gamma(), 6).len(), 6 * 6 + 2 * 36 + 216);
    }
}
