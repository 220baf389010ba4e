//! Level-1 operators: one stage per successive block or skip, and the
//! replay of the independence argument on W(Λ).

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{
    apply_sym, run_program, Outcome, ReplayReport, Step, SymOp, SymState, Top, Verdict,
};
use crate::conditions::admissible;
use crate::enumerate::enumerate_admissible;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, SpinorLabel};
use crate::monomial::{Factor, Monomial};
use crate::weights::{LevelOne, WeightSpec};

/// One stage: operators plus the factors they consume.
#[derive(Clone, Debug)]
pub(crate) struct Stage {
    pub consumed: Vec<Factor>,
    pub steps: Vec<Step>,
    pub end: SymState,
}

/// Operators taking e^{kω}·top to e^{target·ω} v0, applied after depth `after`.
pub(crate) fn skip_steps(state: &SymState, target: u32, after: u32) -> Option<(Vec<Step>, SymState)> {
    let ell = state.ell();
    let (k, top) = state.split()?;
    let mut steps = Vec::new();
    let mut k = u32::try_from(k).ok()?;
    if let Top::Spinor(s) = top {
        steps.push(Step { after, op: SymOp::second_group(ell, k, s) });
        k += 1;
    }
    if k > target {
        return None;
    }
    if k < target {
        steps.push(Step { after, op: SymOp::skip(ell, k, target) });
    }
    Some((steps, SymState::new(ell, target, Top::Vacuum)))
}

fn ordered_bases(block: &[Factor], ell: usize) -> Vec<SpinorLabel> {
    let upto = |n: usize| SpinorLabel::from_indices(1..=n);
    let first = block[0].color;
    let deepest = block.last().expect("nonempty block").color.index();
    let strict = block.iter().all(|f| !f.color.is_neg() && f.color.index() < ell);
    let mut out = if strict || (!first.is_neg() && first.index() == ell) {
        vec![upto(ell - 1), upto(ell)]
    } else {
        vec![upto(ell), upto(ell - 1)]
    };
    out.push(upto(deepest));
    out
}

/// Starting spinor for a block on the vacuum: remove the indices the block
/// adds first, add those it removes first.
fn start_set(base: SpinorLabel, block: &[Factor]) -> SpinorLabel {
    let mut seen = BTreeSet::new();
    let mut s = base;
    for f in block {
        let i = f.color.index();
        if seen.insert(i) {
            s = if f.color.is_neg() { s.insert(i) } else { s.remove(i) };
        }
    }
    s
}

/// Starting spinor that makes the block end exactly on `target`.
fn landing_set(target: SpinorLabel, block: &[Factor]) -> Option<SpinorLabel> {
    let mut s = target;
    for f in block.iter().rev() {
        let i = f.color.index();
        if f.color.is_neg() {
            if s.contains(i) {
                return None;
            }
            s = s.insert(i);
        } else {
            if !s.contains(i) {
                return None;
            }
            s = s.remove(i);
        }
    }
    Some(s)
}

/// Candidate stages from `state` for the factors `rest` (monomial order,
/// shallowest last). `landing` admits blocks that end on that spinor without
/// a second-group operator.
pub(crate) fn stage_candidates(state: &SymState, rest: &[Factor], landing: Option<SpinorLabel>) -> Vec<Stage> {
    let ell = state.ell();
    let Some((k, top)) = state.split() else { return vec![] };
    let rev: Vec<Factor> = rest.iter().rev().copied().collect();
    let Some(f0) = rev.first() else { return vec![] };
    let d = f0.depth as i64;
    let mut out = Vec::new();
    if d - k >= 2 {
        if let Some((steps, end)) = skip_steps(state, (d - 1) as u32, (d - 1) as u32) {
            out.push(Stage { consumed: vec![], steps, end });
        }
        return out;
    }
    if d - k != 1 {
        return out;
    }
    let k = k as u32;
    let at_d = rev.iter().take_while(|f| f.depth as i64 == d).count();
    if top == Top::Vacuum && at_d == 2 && rev[1].color == f0.color.opposite() {
        let consumed = vec![rev[1], rev[0]];
        let steps = vec![Step { after: k, op: SymOp::identity(ell) }];
        if let Outcome::State(end) = run_program(state, &steps, &consumed) {
            out.push(Stage { consumed, steps, end });
        }
    }
    let mut block = vec![*f0];
    for f in &rev[1..] {
        if f.depth != block.last().expect("nonempty").depth + 1 {
            break;
        }
        block.push(*f);
    }
    for len in (1..=block.len()).rev() {
        let b = &block[..len];
        let last = b[len - 1].depth;
        let pre: Vec<Option<SpinorLabel>> = match top {
            Top::Spinor(_) => vec![None],
            Top::Vacuum => {
                let mut v: Vec<SpinorLabel> = ordered_bases(b, ell).into_iter().map(|x| start_set(x, b)).collect();
                if let Some(t) = landing.and_then(|t| landing_set(t, b)) {
                    v.push(t);
                }
                let mut seen = BTreeSet::new();
                v.into_iter().filter(|s| seen.insert(*s)).map(Some).collect()
            }
        };
        for p in pre {
            let mut steps = Vec::new();
            if let Some(g) = p {
                steps.push(Step { after: k, op: SymOp::first_group(ell, k, g) });
            }
            let Outcome::State(mid) = run_program(state, &steps, b) else { continue };
            let Some((k2, Top::Spinor(s2))) = mid.split() else { continue };
            let hw = s2 == SpinorLabel::full(ell) || s2 == SpinorLabel::full(ell - 1);
            let mut posts = Vec::new();
            if hw || landing == Some(s2) {
                posts.push(None);
            }
            posts.push(Some(SymOp::second_group(ell, k2 as u32, s2)));
            for post in posts {
                let mut st = steps.clone();
                let end = match post {
                    None => mid.clone(),
                    Some(op) => {
                        let Outcome::State(e) = apply_sym(&op, &mid) else { continue };
                        st.push(Step { after: last, op });
                        e
                    }
                };
                out.push(Stage { consumed: b.to_vec(), steps: st, end });
            }
        }
    }
    out
}

/// Consumed factors must be exactly the factors up to some depth.
pub(crate) fn depth_cut(all: &[Factor], consumed: &[Factor]) -> Option<u32> {
    let rest = remove_factors(all, consumed)?;
    let cut = match consumed.iter().map(|f| f.depth).max() {
        Some(c) => c,
        None => all.iter().map(|f| f.depth).min().map_or(0, |d| d - 1),
    };
    rest.iter().all(|f| f.depth > cut).then_some(cut)
}

pub(crate) fn remove_factors(all: &[Factor], take: &[Factor]) -> Option<Vec<Factor>> {
    let mut rest = all.to_vec();
    for f in take {
        let i = rest.iter().position(|g| g == f)?;
        rest.remove(i);
    }
    Some(rest)
}

/// A factorization m = m2·m1 with the operator chain for m1.
#[derive(Clone, Debug)]
pub struct Level1Operator {
    pub weight: LevelOne,
    pub first: Monomial,
    pub rest: Monomial,
    pub steps: Vec<Step>,
    pub end: SymState,
    /// m1′ of a competitor is its part of depth ≤ cut.
    pub cut: u32,
}

fn candidates(ell: usize, a: LevelOne, m: &Monomial) -> Vec<Level1Operator> {
    let start = SymState::highest(ell, a);
    let Some(p) = m.last().map(|f| f.depth) else {
        let op = Level1Operator { weight: a, first: m.clone(), rest: m.clone(), steps: vec![], end: start, cut: 0 };
        return vec![op];
    };
    let mut stages = Vec::new();
    if p >= 2 {
        let (steps, end) = match a.index() {
            1 if p == 2 => (vec![Step { after: 1, op: SymOp::identity(ell) }], start.clone()),
            _ => match skip_steps(&start, p - 1, p - 1) {
                Some(x) => x,
                None => (vec![], start.clone()),
            },
        };
        stages.push(Stage { consumed: vec![], steps, end });
    }
    stages.extend(stage_candidates(&start, m.factors(), None));
    let mut out: Vec<Level1Operator> = Vec::new();
    for s in stages {
        let Some(cut) = depth_cut(m.factors(), &s.consumed) else { continue };
        if out.iter().any(|o| o.steps == s.steps && o.first.factors().len() == s.consumed.len()) {
            continue;
        }
        let rest = remove_factors(m.factors(), &s.consumed).expect("consumed from m");
        out.push(Level1Operator {
            weight: a,
            first: Monomial::normalize(s.consumed),
            rest: Monomial::normalize(rest),
            steps: s.steps,
            end: s.end,
            cut,
        });
    }
    out
}

/// Residual m2 lifted by the shift of some reading of `end` is admissible.
pub(crate) fn residual_ok(rest: &Monomial, forms: &[(u32, WeightSpec)], ell: usize) -> bool {
    if rest.is_empty() {
        return !forms.is_empty();
    }
    forms.iter().any(|&(n, w)| {
        rest.lift(n).is_some_and(|r| admissible(&r, w, ell).unwrap_or(false))
    })
}

fn verdict_ac(op: &Level1Operator, ell: usize) -> Verdict {
    let start = SymState::highest(ell, op.weight);
    let mut v = Verdict::default();
    match run_program(&start, &op.steps, op.first.factors()) {
        Outcome::State(s) => {
            let forms: Vec<(u32, WeightSpec)> =
                s.level_one_forms().into_iter().map(|(n, a)| (n, WeightSpec::Level1(a))).collect();
            if !residual_ok(&op.rest, &forms, ell) {
                v.residual = true;
                v.example = Some(format!("residual {} after {}", op.rest, s));
            }
        }
        Outcome::Zero => {
            v.residual = true;
            v.example = Some("chain kills its own block".into());
        }
        Outcome::Unsupported => {
            v.unsupported += 1;
            v.example = Some("chain leaves the pure top on its own block".into());
        }
    }
    v
}

fn verdict(op: &Level1Operator, m: &Monomial, competitors: &[Monomial], ell: usize) -> Verdict {
    let mut v = verdict_ac(op, ell);
    if v.unsupported > 0 || v.residual {
        return v;
    }
    let start = SymState::highest(ell, op.weight);
    for other in competitors {
        if other == m {
            continue;
        }
        let (head, _) = other.split_at_depth(op.cut);
        if head.compare(&op.first) != std::cmp::Ordering::Greater {
            continue;
        }
        match run_program(&start, &op.steps, head.factors()) {
            Outcome::Zero => {}
            Outcome::State(s) => {
                v.kills += 1;
                v.example.get_or_insert_with(|| format!("{m}: {head} survives as {s}"));
            }
            Outcome::Unsupported => {
                v.unsupported += 1;
                v.example.get_or_insert_with(|| format!("{m}: {head} leaves the calculus"));
            }
        }
    }
    v
}

/// The factorization and operator chain for an admissible monomial.
pub fn build_operator_level1(lat: &Lattice, m: &Monomial, a: LevelOne) -> Result<Level1Operator> {
    let ell = lat.ell();
    if !admissible(m, WeightSpec::Level1(a), ell)? {
        return Err(Error::InvalidInput(format!("{m} is not admissible for {a}")));
    }
    candidates(ell, a, m)
        .into_iter()
        .find(|op| verdict_ac(op, ell).ok())
        .ok_or_else(|| Error::Unsupported(format!("no operator for {m} on {a}")))
}

/// Full composition over all blocks and skips; returns the chain and the
/// final state.
pub fn compose_level1(lat: &Lattice, m: &Monomial, a: LevelOne) -> Result<(Vec<Step>, SymState)> {
    let ell = lat.ell();
    let mut state = SymState::highest(ell, a);
    let mut rest: Vec<Factor> = m.factors().to_vec();
    let mut steps = Vec::new();
    while !rest.is_empty() {
        let stage = stage_candidates(&state, &rest, None)
            .into_iter()
            .find(|s| depth_cut(&rest, &s.consumed).is_some() && !s.end.level_one_forms().is_empty())
            .ok_or_else(|| Error::Unsupported(format!("no stage for {} on {state}", Monomial::normalize(rest.clone()))))?;
        rest = remove_factors(&rest, &stage.consumed).expect("consumed from rest");
        steps.extend(stage.steps);
        state = stage.end;
    }
    Ok((steps, state))
}

/// Replay the independence argument for every admissible monomial of the
/// given degree.
pub fn replay_level1(lat: &Lattice, a: LevelOne, n: u32) -> Result<ReplayReport> {
    let ell = lat.ell();
    let all = enumerate_admissible(WeightSpec::Level1(a), n, lat)?;
    let verdicts: Vec<(Monomial, Option<Verdict>)> = all
        .par_iter()
        .map(|m| {
            let cands = candidates(ell, a, m);
            let mut first: Option<Verdict> = None;
            for c in &cands {
                let v = verdict(c, m, &all, ell);
                if v.ok() {
                    return (m.clone(), Some(v));
                }
                first.get_or_insert(v);
            }
            (m.clone(), first)
        })
        .collect();
    let mut r = ReplayReport::new(a.to_string(), -(n as i64));
    for (m, v) in verdicts {
        r.checked += 1;
        match v {
            Some(v) => {
                if !v.ok() {
                    r.note(format!("{m}: {}", v.example.clone().unwrap_or_default()));
                }
                let mut quiet = v;
                quiet.example = None;
                quiet.record_into(&mut r);
            }
            None => {
                r.residual_failures += 1;
                r.note(format!("{m}: no operator candidate"));
            }
        }
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Color;
    use crate::symcalc::format_steps;

    fn lv(i: usize, ell: usize) -> LevelOne {
        LevelOne::new(i, ell).unwrap()
    }

    #[test]
    fn opposite_pair_on_vacuum_is_identity() {
        let lat = Lattice::new(4).unwrap();
        let m: Monomial = "g~2(-1) g2(-1)".parse().unwrap();
        let op = build_operator_level1(&lat, &m, lv(0, 4)).unwrap();
        assert_eq!(format_steps(&op.steps), "id");
        assert_eq!(op.end, SymState::new(4, 2, Top::Vacuum));
        assert!(op.rest.is_empty());
    }

    #[test]
    fn skip_on_lambda_one() {
        let lat = Lattice::new(4).unwrap();
        let m = Monomial::normalize(vec![Factor::new(Color::pos(3), 2)]);
        let op = build_operator_level1(&lat, &m, lv(1, 4)).unwrap();
        assert!(op.first.is_empty());
        assert_eq!(op.end, SymState::new(4, 1, Top::Vacuum));
        assert_eq!(op.rest, m);
    }

    #[test]
    fn composition_example_rank_six() {
        let lat = Lattice::new(6).unwrap();
        let m: Monomial = "g~2(-7) g~4(-6) g~3(-3) g5(-2) g3(-1)".parse().unwrap();
        assert!(admissible(&m, WeightSpec::Level1(lv(0, 6)), 6).unwrap());
        let (steps, end) = compose_level1(&lat, &m, lv(0, 6)).unwrap();
        assert_eq!(format_steps(&steps), "w(0,w1246) ; w'(3,w13) ; w(4,5,0) ; w(5,w123456) ; w'(7,w124)");
        assert_eq!(end, SymState::new(6, 8, Top::Vacuum));
    }

    #[test]
    fn small_replays() {
        let lat = Lattice::new(4).unwrap();
        for n in 0..=4 {
            let r = replay_level1(&lat, lv(0, 4), n).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let r = replay_level1(&lat, lv(1, 4), 1).unwrap();
        assert!(r.pass && r.checked == 0);
    }
}
