//! Level-2 replay for D_4 on pair states e^{λ1} ⊗ e^{λ2}.
//!
//! A monomial acts on a tensor product through all distributions of its
//! factors to the two slots; operators act slotwise. W(Λ_2) is realized in
//! L(Λ_4) ⊗ L(Λ_4), where its highest weight vector has the two supports
//! w12 ⊗ w1234 and w1234 ⊗ w12 and the quotient kills equal labels.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::level1::{depth_cut, remove_factors, residual_ok, skip_steps, stage_candidates};
use super::{run_program, Outcome, ReplayReport, Step, SymOp, SymState, Top, Verdict};
use crate::conditions::{admissible, dc_level1, ic_level1, split_level2};
use crate::enumerate::enumerate_admissible;
use crate::error::{Error, Result};
use crate::lattice::{Color, Lattice, SpinorLabel};
use crate::monomial::{Factor, Monomial};
use crate::weights::{LevelOne, WeightSpec};

type Pair = (SymState, SymState);

/// Candidates tried per monomial before giving up.
const CANDIDATE_BUDGET: usize = 256;
/// Slot programs kept per slot in the exceptional construction.
const SLOT_PROGRAMS: usize = 4;

fn set(ix: &[usize]) -> SpinorLabel {
    SpinorLabel::from_indices(ix.iter().copied())
}

/// Label pairs whose symmetric combination is e^{nω} v_{Λ_2}.
fn lambda2_pairs() -> [(SpinorLabel, SpinorLabel); 4] {
    [
        (set(&[1, 2, 3]), set(&[1, 2, 4])),
        (set(&[1, 2, 3, 4]), set(&[1, 2])),
        (set(&[1, 2, 4]), set(&[1, 2, 3])),
        (set(&[1, 2]), set(&[1, 2, 3, 4])),
    ]
}

/// Supports of the highest weight vector in each tensor realization tried.
fn realizations(w: WeightSpec, ell: usize) -> Vec<Vec<Pair>> {
    match w {
        WeightSpec::Sum(a, b) => vec![vec![(SymState::highest(ell, a), SymState::highest(ell, b))]],
        _ => {
            let s = |x: &[usize]| SymState::new(ell, 0, Top::Spinor(set(x)));
            vec![
                vec![(s(&[1, 2]), s(&[1, 2, 3, 4])), (s(&[1, 2, 3, 4]), s(&[1, 2]))],
                vec![(s(&[1, 2, 3]), s(&[1, 2, 4])), (s(&[1, 2, 4]), s(&[1, 2, 3]))],
            ]
        }
    }
}

/// A factorization m = m2·m1 with slotwise operator chains for m1.
#[derive(Clone, Debug)]
pub struct PairOperator {
    pub weight: WeightSpec,
    pub first: Monomial,
    pub rest: Monomial,
    pub slots: [Vec<Step>; 2],
    /// Supports of v_Λ in the tensor realization used.
    pub supports: Vec<(SymState, SymState)>,
    /// Equal-label pairs vanish (the image lies in W(Λ_2)).
    pub quotient: bool,
    pub cut: u32,
}

#[derive(Default)]
struct PairOutcome {
    states: BTreeSet<Pair>,
    unsupported: bool,
}

fn run_pair(starts: &[Pair], slots: &[Vec<Step>; 2], factors: &[Factor], quotient: bool) -> PairOutcome {
    let mut out = PairOutcome::default();
    let n = factors.len();
    for (s1, s2) in starts {
        for mask in 0u32..1 << n {
            let part = |bit| factors.iter().enumerate().filter(|(i, _)| (mask >> i & 1) == bit).map(|(_, f)| *f).collect::<Vec<_>>();
            let o1 = run_program(s1, &slots[0], &part(0));
            if o1.is_zero() {
                continue;
            }
            let o2 = run_program(s2, &slots[1], &part(1));
            match (o1, o2) {
                (_, Outcome::Zero) => {}
                (Outcome::State(a), Outcome::State(b)) => {
                    let spinor = matches!(a.split(), Some((_, Top::Spinor(_))));
                    if !(quotient && spinor && a == b) {
                        out.states.insert((a, b));
                    }
                }
                _ => out.unsupported = true,
            }
        }
    }
    out
}

/// Readings of a pair state as e^{nω} v_{Λ′} with Λ′ of level 2.
fn readings(p: &Pair) -> BTreeSet<(u32, WeightSpec)> {
    let mut out = BTreeSet::new();
    for (n, a) in p.0.level_one_forms() {
        for (m, b) in p.1.level_one_forms() {
            if n == m {
                out.insert((n, WeightSpec::sum(a, b)));
            }
        }
    }
    if let (Some((n, Top::Spinor(x))), Some((m, Top::Spinor(y)))) = (p.0.split(), p.1.split()) {
        if n == m && n >= 0 && lambda2_pairs().contains(&(x, y)) {
            out.insert((n as u32, WeightSpec::Fundamental(2)));
        }
    }
    out
}

fn common_readings(states: &BTreeSet<Pair>) -> Vec<(u32, WeightSpec)> {
    let mut it = states.iter();
    let Some(first) = it.next() else { return vec![] };
    let mut acc = readings(first);
    for p in it {
        let r = readings(p);
        acc.retain(|x| r.contains(x));
    }
    acc.into_iter().collect()
}

/// Slot parts of `factors`: level-1 DC parts (with the slot IC when the slot
/// starts on a highest weight vector) first, then for W(Λ_2) every other
/// distribution, since its slots start on non-highest spinors.
fn partitions(factors: &[Factor], ic: Option<(LevelOne, LevelOne)>, ell: usize) -> Vec<[Vec<Factor>; 2]> {
    let ok = |p: &[Factor], a: Option<LevelOne>| {
        let m = Monomial::normalize(p.to_vec());
        dc_level1(&m, ell).unwrap_or(false) && a.is_none_or(|a| ic_level1(&m, a, ell))
    };
    let (a, b) = (ic.map(|x| x.0), ic.map(|x| x.1));
    let mut out: Vec<[Vec<Factor>; 2]> = Vec::new();
    let mut rest: Vec<[Vec<Factor>; 2]> = Vec::new();
    let mut push = |mut p: Vec<Factor>, mut q: Vec<Factor>| {
        p.sort();
        q.sort();
        if out.iter().chain(&rest).any(|x| x[0] == p && x[1] == q) {
            return;
        }
        if ok(&p, a) && ok(&q, b) {
            out.push([p, q]);
        } else if ic.is_none() {
            rest.push([p, q]);
        }
    };
    if let Some((x, y)) = split_level2(&Monomial::normalize(factors.to_vec()), ell) {
        push(x.factors().to_vec(), y.factors().to_vec());
        push(y.factors().to_vec(), x.factors().to_vec());
    }
    let n = factors.len().min(20);
    for mask in 0u32..1 << n {
        let part = |bit| factors.iter().enumerate().filter(|(i, _)| (mask >> i & 1) == bit).map(|(_, f)| *f).collect();
        push(part(0), part(1));
    }
    out.extend(rest);
    out
}

fn levels(s: &SymState) -> Vec<u32> {
    s.level_one_forms().into_iter().map(|(n, _)| n).collect()
}

struct Slot {
    state: SymState,
    rest: Vec<Factor>,
    steps: Vec<Step>,
}

impl Slot {
    /// One stage on the slot's own factors.
    fn advance(&mut self) -> bool {
        let next = stage_candidates(&self.state, &self.rest, None)
            .into_iter()
            .find(|s| depth_cut(&self.rest, &s.consumed).is_some() && !s.end.level_one_forms().is_empty());
        let Some(stage) = next else { return false };
        self.rest = remove_factors(&self.rest, &stage.consumed).expect("consumed from slot");
        self.steps.extend(stage.steps);
        self.state = stage.end;
        true
    }
}

/// The staged tensor-product construction: both slots take a stage, then
/// the slot behind catches up until the levels agree on a depth prefix.
fn staged(start: &Pair, parts: &[Vec<Factor>; 2], all: &[Factor]) -> Option<([Vec<Step>; 2], Pair, Vec<Factor>)> {
    let mk = |s: &SymState, p: &Vec<Factor>| Slot { state: s.clone(), rest: p.clone(), steps: vec![] };
    let mut slots = [mk(&start.0, &parts[0]), mk(&start.1, &parts[1])];
    for s in slots.iter_mut() {
        if !s.rest.is_empty() && !s.advance() {
            return None;
        }
    }
    let consumed = |slots: &[Slot; 2]| {
        let left: Vec<Factor> = slots.iter().flat_map(|s| s.rest.iter().copied()).collect();
        remove_factors(all, &left).expect("slot factors come from m")
    };
    for _ in 0..4 * all.len() + 8 {
        let (l0, l1) = (levels(&slots[0].state), levels(&slots[1].state));
        let meet = l0.iter().any(|x| l1.contains(x));
        let done = consumed(&slots);
        if meet && depth_cut(all, &done).is_some() {
            let ends = (slots[0].state.clone(), slots[1].state.clone());
            return Some(([slots[0].steps.clone(), slots[1].steps.clone()], ends, done));
        }
        let top = |l: &[u32]| l.iter().max().copied();
        let behind = if l0.is_empty() || l1.is_empty() {
            // a slot off the highest weight forms moves first
            usize::from(!l0.is_empty() || slots[0].rest.is_empty() && !slots[1].rest.is_empty() && l1.is_empty())
        } else if meet {
            // shallowest unconsumed factor decides
            let d = |s: &Slot| s.rest.last().map_or(u32::MAX, |f| f.depth);
            usize::from(d(&slots[1]) < d(&slots[0]))
        } else {
            usize::from(top(&l1) < top(&l0))
        };
        if slots[behind].rest.is_empty() {
            let own = slots[behind].state.level().unwrap_or(0).max(0) as u32;
            let target = top([&l0, &l1][1 - behind]).unwrap_or(own + 1).max(own + 1);
            let after = done.iter().map(|f| f.depth).max().unwrap_or(0);
            let (steps, end) = skip_steps(&slots[behind].state, target, after)?;
            slots[behind].steps.extend(steps);
            slots[behind].state = end;
        } else if !slots[behind].advance() {
            return None;
        }
    }
    None
}

/// Both slots skipped up to the cut level, so that shallower factors left
/// on either slot vanish.
fn lift_both(slots: &[Vec<Step>; 2], ends: &Pair, first: &[Factor], all: &[Factor]) -> Option<[Vec<Step>; 2]> {
    let cut = depth_cut(all, first)?;
    let top = |s: &SymState| levels(s).into_iter().max();
    let target = cut.max(top(&ends.0)?).max(top(&ends.1)?);
    let mut out = slots.clone();
    let mut changed = false;
    for (steps, end) in out.iter_mut().zip([&ends.0, &ends.1]) {
        if top(end)? < target {
            let (more, _) = skip_steps(end, target, cut)?;
            changed |= !more.is_empty();
            steps.extend(more);
        }
    }
    changed.then_some(out)
}

/// Slot programs consuming all of `factors` and ending on e^{nω} w_Σ.
fn land_programs(start: &SymState, factors: &[Factor], target: SpinorLabel, n: u32) -> Vec<Vec<Step>> {
    let ell = start.ell();
    let goal = SymState::new(ell, n, Top::Spinor(target));
    let mut out = Vec::new();
    let mut stack = vec![(start.clone(), factors.to_vec(), Vec::<Step>::new())];
    while let Some((state, rest, steps)) = stack.pop() {
        if out.len() >= SLOT_PROGRAMS {
            break;
        }
        if rest.is_empty() {
            if state == goal {
                out.push(steps);
                continue;
            }
            let Some((mut more, mid)) = skip_steps(&state, n, n) else { continue };
            let op = SymOp::first_group(ell, n, target);
            if super::apply_sym(&op, &mid) == Outcome::State(goal.clone()) {
                more.push(Step { after: n, op });
                let mut all = steps.clone();
                all.extend(more);
                out.push(all);
            }
            continue;
        }
        let stages = stage_candidates(&state, &rest, Some(target));
        for st in stages.into_iter().rev() {
            if depth_cut(&rest, &st.consumed).is_none() {
                continue;
            }
            let left = remove_factors(&rest, &st.consumed).expect("consumed from rest");
            let landed = left.is_empty() && st.end == goal;
            if !landed && st.end.level_one_forms().is_empty() {
                continue;
            }
            let mut s2 = steps.clone();
            s2.extend(st.steps);
            stack.push((st.end, left, s2));
        }
    }
    out
}

/// Depth of the first pair x_{γ3̲}(−M) x_{γ3}(−M) inside an unsplittable block.
fn exceptional_depth(m: &Monomial) -> Option<u32> {
    let (p, q) = (Color::pos(3), Color::neg(3));
    let any3 = |d: u32| m.count(d, p) + m.count(d, q) > 0;
    let mut depths: Vec<u32> = m.factors().iter().map(|f| f.depth).collect();
    depths.sort();
    depths.dedup();
    depths.into_iter().find(|&d| m.count(d, p) > 0 && m.count(d, q) > 0 && (any3(d + 1) || (d >= 2 && any3(d - 1))))
}

fn candidates(ell: usize, w: WeightSpec, m: &Monomial) -> Vec<PairOperator> {
    let ic = match w {
        WeightSpec::Sum(a, b) => Some((a, b)),
        _ => None,
    };
    let lambda2 = matches!(w, WeightSpec::Fundamental(_));
    let all = m.factors();
    let mut out = Vec::new();
    for supports in realizations(w, ell) {
        let mk = |first: Vec<Factor>, slots: [Vec<Step>; 2], quotient: bool| -> Option<PairOperator> {
            let cut = depth_cut(all, &first)?;
            let rest = remove_factors(all, &first)?;
            Some(PairOperator {
                weight: w,
                first: Monomial::normalize(first),
                rest: Monomial::normalize(rest),
                slots,
                supports: supports.clone(),
                quotient,
                cut,
            })
        };
        if all.is_empty() {
            out.extend(mk(vec![], [vec![], vec![]], false));
            return out;
        }

        let ones: Vec<Factor> = all.iter().filter(|f| f.depth == 1).copied().collect();
        if lambda2 && ones == [Factor::new(Color::neg(3), 1), Factor::new(Color::pos(3), 1)] {
            out.extend(mk(ones.clone(), [vec![], vec![]], true));
        }

        if let Some(big) = exceptional_depth(m) {
            let n = big - 1;
            let head: Vec<Factor> = all.iter().filter(|f| f.depth < big).copied().collect();
            for start in &supports {
                for parts in partitions(&head, ic, ell) {
                    for (x, y) in lambda2_pairs() {
                        let p0 = land_programs(&start.0, &parts[0], x, n);
                        let p1 = land_programs(&start.1, &parts[1], y, n);
                        for a in &p0 {
                            for b in &p1 {
                                out.extend(mk(head.clone(), [a.clone(), b.clone()], true));
                                if out.len() >= CANDIDATE_BUDGET {
                                    return out;
                                }
                            }
                        }
                    }
                }
            }
        }

        for start in &supports {
            for parts in partitions(all, ic, ell) {
                if let Some((slots, ends, first)) = staged(start, &parts, all) {
                    let lifted = lift_both(&slots, &ends, &first, all);
                    for (slots, first) in [(slots, first.clone())].into_iter().chain(lifted.map(|x| (x, first))) {
                        if let Some(op) = mk(first, slots, false) {
                            let seen = out.iter().any(|o: &PairOperator| {
                                o.slots == op.slots && o.first == op.first && o.supports == op.supports
                            });
                            if !seen {
                                out.push(op);
                            }
                        }
                    }
                }
                if out.len() >= CANDIDATE_BUDGET {
                    return out;
                }
            }
        }
    }
    out
}

fn verdict(op: &PairOperator, m: &Monomial, competitors: &[Monomial], ell: usize) -> Verdict {
    let supports = &op.supports;
    let mut v = Verdict::default();
    let own = run_pair(supports, &op.slots, op.first.factors(), op.quotient);
    if own.unsupported {
        v.unsupported += 1;
        v.example = Some(format!("{m}: chain leaves the pure top on its own part"));
        return v;
    }
    let forms = common_readings(&own.states);
    if forms.is_empty() || !residual_ok(&op.rest, &forms, ell) {
        v.residual = true;
        v.example = Some(format!("{m}: residual {} after {} states", op.rest, own.states.len()));
        return v;
    }
    for other in competitors {
        if other == m {
            continue;
        }
        let (head, _) = other.split_at_depth(op.cut);
        if head.compare(&op.first) != std::cmp::Ordering::Greater {
            continue;
        }
        let r = run_pair(supports, &op.slots, head.factors(), op.quotient);
        if r.unsupported {
            v.unsupported += 1;
            v.example.get_or_insert_with(|| format!("{m}: {head} leaves the calculus"));
            return v;
        }
        if !r.states.is_empty() {
            v.kills += 1;
            v.example.get_or_insert_with(|| format!("{m}: {head} survives"));
            return v;
        }
    }
    v
}

/// Replay the level-2 independence argument on W(Λ) for D_4.
pub fn replay_level2_d4(lat: &Lattice, w: WeightSpec, n: u32) -> Result<ReplayReport> {
    let ell = lat.ell();
    if ell != 4 {
        return Err(Error::Unsupported(format!("level-2 replay needs l = 4, got {ell}")));
    }
    match w {
        WeightSpec::Level1(_) => return Err(Error::InvalidInput(format!("{w} is not of level 2"))),
        WeightSpec::Fundamental(j) if j != 2 => return Err(Error::InvalidInput(format!("{w} is not a D_4 weight"))),
        _ => {}
    }
    let all = enumerate_admissible(w, n, lat)?;
    let verdicts: Vec<(Monomial, Option<Verdict>)> = all
        .par_iter()
        .map(|m| {
            let mut first: Option<Verdict> = None;
            for c in candidates(ell, w, m) {
                let v = verdict(&c, m, &all, ell);
                if v.ok() {
                    return (m.clone(), Some(v));
                }
                first.get_or_insert(v);
            }
            (m.clone(), first)
        })
        .collect();
    let mut r = ReplayReport::new(w.to_string(), -(n as i64));
    for (m, v) in verdicts {
        r.checked += 1;
        match v {
            Some(v) => v.record_into(&mut r),
            None => {
                r.residual_failures += 1;
                r.note(format!("{m}: no operator candidate"));
            }
        }
    }
    Ok(r.finish())
}

/// The operator chosen for one monomial, for inspection.
pub fn build_operator_level2_d4(lat: &Lattice, m: &Monomial, w: WeightSpec) -> Result<PairOperator> {
    let ell = lat.ell();
    if ell != 4 || !admissible(m, w, ell)? {
        return Err(Error::InvalidInput(format!("{m} is not admissible for {w} on D_4")));
    }
    candidates(ell, w, m)
        .into_iter()
        .find(|op| {
            let own = run_pair(&op.supports, &op.slots, op.first.factors(), op.quotient);
            !own.unsupported && residual_ok(&op.rest, &common_readings(&own.states), ell)
        })
        .ok_or_else(|| Error::Unsupported(format!("no operator for {m} on {w}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat() -> Lattice {
        Lattice::new(4).unwrap()
    }

    #[test]
    fn lambda2_identity_case() {
        let m: Monomial = "g~3(-1) g3(-1)".parse().unwrap();
        let op = build_operator_level2_d4(&lat(), &m, WeightSpec::Fundamental(2)).unwrap();
        assert!(op.slots.iter().all(Vec::is_empty));
        let own = run_pair(&op.supports, &op.slots, op.first.factors(), true);
        assert_eq!(common_readings(&own.states), vec![(1, WeightSpec::Fundamental(2))]);
    }

    #[test]
    fn quotient_kills_equal_labels() {
        let s = SymState::new(4, 0, Top::Spinor(set(&[1, 2, 3])));
        let out = run_pair(&[(s.clone(), s)], &[vec![], vec![]], &[], true);
        assert!(out.states.is_empty());
        let s = SymState::new(4, 0, Top::Spinor(set(&[1, 2, 3])));
        let out = run_pair(&[(s.clone(), s)], &[vec![], vec![]], &[], false);
        assert_eq!(out.states.len(), 1);
    }

    #[test]
    fn small_replays() {
        let l = lat();
        let ones = LevelOne::all(4);
        for n in 0..=3 {
            for w in [WeightSpec::sum(ones[0], ones[0]), WeightSpec::sum(ones[2], ones[3]), WeightSpec::Fundamental(2)] {
                let r = replay_level2_d4(&l, w, n).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }
}

