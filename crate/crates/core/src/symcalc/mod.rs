//! Projective calculus on pure lattice vectors e^λ and the intertwining
//! operator replay built on it.
//!
//! Every claim is up to a nonzero scalar. An action either lands on a pure
//! vector, vanishes, or leaves the pure top of the Fock space; the last case
//! is reported as [`Outcome::Unsupported`] and never guessed.

use std::fmt;

use serde::Serialize;

use crate::lattice::{Rat, SpinorLabel, Weight};
use crate::monomial::Factor;
use crate::weights::LevelOne;

pub mod checks;
pub mod level1;
pub mod level2;

pub use checks::{check_fock_consistency, check_successive_distinct};
pub use level1::{build_operator_level1, compose_level1, replay_level1, Level1Operator};
pub use level2::{build_operator_level2_d4, replay_level2_d4, PairOperator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Zero,
    State(T),
    Unsupported,
}

impl<T> Outcome<T> {
    pub fn is_zero(&self) -> bool {
        matches!(self, Outcome::Zero)
    }

    pub fn state(self) -> Option<T> {
        match self {
            Outcome::State(s) => Some(s),
            _ => None,
        }
    }
}

/// What sits on top of e^{nω}: the vacuum or a spinor w_Σ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Top {
    Vacuum,
    Spinor(SpinorLabel),
}

/// e^λ up to a nonzero scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymState(pub Weight);

impl SymState {
    pub fn vacuum(ell: usize) -> Self {
        SymState(Weight::zero(ell))
    }

    /// e^{nω}·top, for the given top.
    pub fn new(ell: usize, n: u32, top: Top) -> Self {
        let base = omega(ell).scale(n as i32);
        match top {
            Top::Vacuum => SymState(base),
            Top::Spinor(s) => SymState(base.add(&s.weight(ell))),
        }
    }

    /// Highest weight vector of a level-1 module.
    pub fn highest(ell: usize, a: LevelOne) -> Self {
        match a.index() {
            0 => SymState::new(ell, 0, Top::Vacuum),
            1 => SymState::new(ell, 1, Top::Vacuum),
            i if i == ell => SymState::new(ell, 0, Top::Spinor(SpinorLabel::full(ell))),
            _ => SymState::new(ell, 0, Top::Spinor(SpinorLabel::full(ell - 1))),
        }
    }

    pub fn ell(&self) -> usize {
        self.0.rank()
    }

    pub fn lambda(&self) -> &Weight {
        &self.0
    }

    /// Split λ = nω + μ with μ = 0 or a spinor weight containing index 1.
    pub fn split(&self) -> Option<(i64, Top)> {
        let d = self.0.doubled();
        if d[0] % 2 == 0 {
            d[1..].iter().all(|&x| x == 0).then(|| (d[0] as i64 / 2, Top::Vacuum))
        } else {
            if d[1..].iter().any(|&x| x != 1 && x != -1) {
                return None;
            }
            let n = (d[0] as i64 - 1).div_euclid(2);
            let rest: Vec<i32> = std::iter::once(1).chain(d[1..].iter().copied()).collect();
            SpinorLabel::from_weight(&Weight::from_doubled(rest)).map(|s| (n, Top::Spinor(s)))
        }
    }

    /// The ω-level n of e^{nω}·top.
    pub fn level(&self) -> Option<i64> {
        self.split().map(|(n, _)| n)
    }

    /// All readings as e^{nω} v_Λ with Λ of level 1 and n ≥ 0.
    pub fn level_one_forms(&self) -> Vec<(u32, LevelOne)> {
        let ell = self.ell();
        let Some((n, top)) = self.split() else { return vec![] };
        if n < 0 {
            return vec![];
        }
        let n = n as u32;
        let lv = |i| LevelOne::new(i, ell).expect("level-1 index");
        match top {
            Top::Vacuum if n == 0 => vec![(0, lv(0))],
            Top::Vacuum => vec![(n, lv(0)), (n - 1, lv(1))],
            Top::Spinor(s) if s == SpinorLabel::full(ell) => vec![(n, lv(ell))],
            Top::Spinor(s) if s == SpinorLabel::full(ell - 1) => vec![(n, lv(ell - 1))],
            Top::Spinor(_) => vec![],
        }
    }
}

impl fmt::Display for SymState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shift = |f: &mut fmt::Formatter<'_>, n: i64| match n {
            0 => Ok(()),
            1 => write!(f, "e^w "),
            _ => write!(f, "e^{n}w "),
        };
        match self.split() {
            Some((n, Top::Vacuum)) => {
                shift(f, n)?;
                write!(f, "v0")
            }
            Some((n, Top::Spinor(s))) => {
                shift(f, n)?;
                write!(f, "{s}")
            }
            None => write!(f, "e^({})", self.0),
        }
    }
}

pub fn omega(ell: usize) -> Weight {
    Weight::epsilon(ell, 1)
}

/// Γ' = ({1..l} − Γ) ∪ {1}.
pub fn complement(set: SpinorLabel, ell: usize) -> SpinorLabel {
    SpinorLabel::from_bits((SpinorLabel::full(ell).bits() & !set.bits()) | 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    /// w(n, Γ): e^{nω} v0 ↦ e^{nω} w_Γ.
    FirstGroup { n: u32, set: SpinorLabel },
    /// w'(n, Γ'): e^{nω} w_Γ ↦ e^{(n+1)ω} v0; `set` is Γ.
    SecondGroup { n: u32, set: SpinorLabel },
    /// w(m, n, 0): e^{mω} v0 ↦ e^{nω} v0.
    Skip { from: u32, to: u32 },
    Identity,
}

/// Coefficient of z^p in the intertwining operator Y(e^μ, z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymOp {
    pub kind: OpKind,
    pub mu: Weight,
    pub p: Rat,
}

impl SymOp {
    pub fn first_group(ell: usize, n: u32, set: SpinorLabel) -> Self {
        let mu = set.weight(ell);
        let p = mu.pairing(&omega(ell).scale(n as i32));
        SymOp { kind: OpKind::FirstGroup { n, set }, mu, p }
    }

    pub fn second_group(ell: usize, n: u32, set: SpinorLabel) -> Self {
        let mu = complement(set, ell).weight(ell);
        let p = mu.pairing(&set.weight(ell).add(&omega(ell).scale(n as i32)));
        SymOp { kind: OpKind::SecondGroup { n, set }, mu, p }
    }

    pub fn skip(ell: usize, from: u32, to: u32) -> Self {
        let w = omega(ell);
        let mu = w.scale(to as i32 - from as i32);
        let p = mu.pairing(&w.scale(from as i32));
        SymOp { kind: OpKind::Skip { from, to }, mu, p }
    }

    pub fn identity(ell: usize) -> Self {
        SymOp { kind: OpKind::Identity, mu: Weight::zero(ell), p: Rat::from_integer(0) }
    }
}

impl fmt::Display for SymOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ell = self.mu.rank();
        match self.kind {
            OpKind::FirstGroup { n, set } => write!(f, "w({n},{set})"),
            OpKind::SecondGroup { n, set } => write!(f, "w'({n},{})", complement(set, ell)),
            OpKind::Skip { from, to } => write!(f, "w({from},{to},0)"),
            OpKind::Identity => write!(f, "id"),
        }
    }
}

/// x_δ(−j) on a pure vector, with t = ⟨δ, λ⟩ + 1: zero below t, pure at t,
/// unsupported above.
pub fn act_factor_sym(f: Factor, s: &SymState) -> Outcome<SymState> {
    let root = f.color.root(s.ell());
    let t = root.pairing(&s.0) + Rat::from_integer(1);
    let j = Rat::from_integer(f.depth as i64);
    match j.cmp(&t) {
        std::cmp::Ordering::Less => Outcome::Zero,
        std::cmp::Ordering::Equal => Outcome::State(SymState(s.0.add(&root))),
        std::cmp::Ordering::Greater => Outcome::Unsupported,
    }
}

/// x_α(0) on a top vector: nonzero exactly when ⟨α, λ⟩ = −1. On spinor
/// tops this is the index rewrite (swap, add both, remove both).
pub fn act_zero_mode_sym(alpha: &Weight, s: &SymState) -> Option<SymState> {
    (alpha.pairing4(&s.0) == -4).then(|| SymState(s.0.add(alpha)))
}

/// Selection rule of an operator coefficient on e^λ, with q = ⟨μ, λ⟩.
pub fn apply_sym(op: &SymOp, s: &SymState) -> Outcome<SymState> {
    let q = op.mu.pairing(&s.0);
    match q.cmp(&op.p) {
        std::cmp::Ordering::Equal => Outcome::State(SymState(s.0.add(&op.mu))),
        std::cmp::Ordering::Greater => Outcome::Zero,
        std::cmp::Ordering::Less => Outcome::Unsupported,
    }
}

/// An operator applied once every factor of depth ≤ `after` has acted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub after: u32,
    pub op: SymOp,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.op, self.after)
    }
}

pub fn format_steps(steps: &[Step]) -> String {
    steps.iter().map(|s| s.op.to_string()).collect::<Vec<_>>().join(" ; ")
}

#[derive(Clone, Copy)]
enum Order {
    Interleaved,
    OpsFirst,
    FactorsFirst,
}

/// Run operators and factors on `start`. The operators commute with the
/// factors, so any evaluation order is exact; if the staged order leaves the
/// calculus, the two extreme orders are tried as well.
pub fn run_program(start: &SymState, steps: &[Step], factors: &[Factor]) -> Outcome<SymState> {
    let mut fs = factors.to_vec();
    fs.sort_by(|a, b| a.depth.cmp(&b.depth).then(b.color.cmp(&a.color)));
    let mut st: Vec<&Step> = steps.iter().collect();
    st.sort_by_key(|s| s.after);
    for order in [Order::Interleaved, Order::OpsFirst, Order::FactorsFirst] {
        let out = run_ordered(start, &st, &fs, order);
        if out != Outcome::Unsupported {
            return out;
        }
    }
    Outcome::Unsupported
}

fn run_ordered(start: &SymState, steps: &[&Step], fs: &[Factor], order: Order) -> Outcome<SymState> {
    let mut s = start.clone();
    let mut k = 0;
    for f in fs {
        while k < steps.len() {
            let due = match order {
                Order::Interleaved => steps[k].after < f.depth,
                Order::OpsFirst => true,
                Order::FactorsFirst => false,
            };
            if !due {
                break;
            }
            match apply_sym(&steps[k].op, &s) {
                Outcome::State(n) => s = n,
                other => return other,
            }
            k += 1;
        }
        match act_factor_sym(*f, &s) {
            Outcome::State(n) => s = n,
            other => return other,
        }
    }
    for st in &steps[k..] {
        match apply_sym(&st.op, &s) {
            Outcome::State(n) => s = n,
            other => return other,
        }
    }
    Outcome::State(s)
}

/// Replay report; one per (weight, degree).
#[derive(Clone, Debug, Default, Serialize)]
pub struct ReplayReport {
    pub weight: String,
    pub degree: i64,
    pub checked: usize,
    pub kill_failures: usize,
    pub unsupported: usize,
    pub residual_failures: usize,
    pub pass: bool,
    #[serde(skip)]
    pub examples: Vec<String>,
}

impl ReplayReport {
    pub(crate) fn new(weight: String, degree: i64) -> Self {
        ReplayReport { weight, degree, ..Default::default() }
    }

    pub(crate) fn note(&mut self, what: String) {
        if self.examples.len() < 10 {
            self.examples.push(what);
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.pass = self.kill_failures == 0 && self.unsupported == 0 && self.residual_failures == 0;
        self
    }
}

/// Outcome of checking one candidate operator against one monomial.
#[derive(Clone, Debug, Default)]
pub(crate) struct Verdict {
    pub kills: usize,
    pub unsupported: usize,
    pub residual: bool,
    pub example: Option<String>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.kills == 0 && self.unsupported == 0 && !self.residual
    }

    pub fn record_into(&self, r: &mut ReplayReport) {
        r.kill_failures += self.kills;
        r.unsupported += self.unsupported;
        r.residual_failures += self.residual as usize;
        if let Some(e) = &self.example {
            r.note(e.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Color;

    fn set(ix: &[usize]) -> SpinorLabel {
        SpinorLabel::from_indices(ix.iter().copied())
    }

    fn w(ell: usize, ix: &[usize]) -> SymState {
        SymState::new(ell, 0, Top::Spinor(set(ix)))
    }

    #[test]
    fn factor_rule_examples() {
        // ℓ = 7: x_{γ6}(−1) w_{12347} = e^ω w_{123467}
        let s = act_factor_sym(Factor::new(Color::pos(6), 1), &w(7, &[1, 2, 3, 4, 7]));
        assert_eq!(s, Outcome::State(SymState::new(7, 1, Top::Spinor(set(&[1, 2, 3, 4, 6, 7])))));
        // x_{γ3}(−1) on w_{123} is zero since 3 is already in the set
        assert!(act_factor_sym(Factor::new(Color::pos(3), 1), &w(4, &[1, 2, 3])).is_zero());
        // depth above the leading power leaves the pure top
        assert_eq!(act_factor_sym(Factor::new(Color::pos(2), 2), &SymState::vacuum(4)), Outcome::Unsupported);
    }

    #[test]
    fn lemma_one_both_halves() {
        // x_{γ_j̲}(−1) w_Γ ≠ 0 iff j ∈ Γ, and removes j; x_{γ_j}(−1) adds j.
        let ell = 5;
        for bits in 0..1u32 << (ell - 1) {
            let g = SpinorLabel::from_bits(bits << 1 | 1);
            for j in 2..=ell {
                let down = act_factor_sym(Factor::new(Color::neg(j), 1), &w(ell, &g.indices().collect::<Vec<_>>()));
                let up = act_factor_sym(Factor::new(Color::pos(j), 1), &w(ell, &g.indices().collect::<Vec<_>>()));
                if g.contains(j) {
                    assert_eq!(down, Outcome::State(SymState::new(ell, 1, Top::Spinor(g.remove(j)))));
                    assert!(up.is_zero());
                } else {
                    assert!(down.is_zero());
                    assert_eq!(up, Outcome::State(SymState::new(ell, 1, Top::Spinor(g.insert(j)))));
                }
            }
        }
    }

    #[test]
    fn zero_mode_examples() {
        let e = |i| Weight::epsilon(4, i);
        let s = act_zero_mode_sym(&e(3).add(&e(4)), &w(4, &[1, 2]));
        assert_eq!(s, Some(w(4, &[1, 2, 3, 4])));
        assert_eq!(act_zero_mode_sym(&e(1).sub(&e(2)), &w(4, &[1, 2])), None);
        let s = act_zero_mode_sym(&e(3).add(&e(4)).neg(), &w(4, &[1, 2, 3, 4]));
        assert_eq!(s, Some(w(4, &[1, 2])));
    }

    #[test]
    fn basic_operators() {
        let ell = 4;
        let g = set(&[1, 3]);
        // first group on the vacuum
        assert_eq!(apply_sym(&SymOp::first_group(ell, 0, g), &SymState::vacuum(ell)), Outcome::State(w(ell, &[1, 3])));
        // second group sends its own spinor to e^{(n+1)ω} and kills the others
        for n in 0..3 {
            let op = SymOp::second_group(ell, n, g);
            for bits in 0..1u32 << (ell - 1) {
                let h = SpinorLabel::from_bits(bits << 1 | 1);
                let out = apply_sym(&op, &SymState::new(ell, n, Top::Spinor(h)));
                if h == g {
                    assert_eq!(out, Outcome::State(SymState::new(ell, n + 1, Top::Vacuum)));
                } else {
                    assert!(out.is_zero(), "{h} under {op}");
                }
            }
        }
        // skip
        let out = apply_sym(&SymOp::skip(ell, 2, 5), &SymState::new(ell, 2, Top::Vacuum));
        assert_eq!(out, Outcome::State(SymState::new(ell, 5, Top::Vacuum)));
    }

    #[test]
    fn state_display() {
        assert_eq!(SymState::new(4, 3, Top::Spinor(set(&[1, 2, 4]))).to_string(), "e^3w w124");
        assert_eq!(SymState::vacuum(4).to_string(), "v0");
        assert_eq!(SymState::highest(4, LevelOne::new(1, 4).unwrap()).to_string(), "e^w v0");
    }
}
