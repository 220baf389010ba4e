//! The lattice construction V_P = M(1) ⊗ C[P] with exact vertex operators.
//!
//! M(1) is modelled as polynomials in x_{i,n} (ε_i(−n) applied, n > 0).
//! With A_n = Σ_i α_i x_{i,n}:
//!   E^−(−α,z) = exp(Σ_n A_n z^n / n)            (multiplication)
//!   E^+(−α,z) u(x) = u(x_{i,n} − α_i z^{−n})      (translation)
//! and Y(e^α,z)(u ⊗ e^λ) = ε(α,λ) z^{⟨α,λ⟩} E^−(−α,z) E^+(−α,z) u ⊗ e^{λ+α}.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Coset, Lattice, Weight};

/// Coefficient field for Fock computations.
pub type Coef = Ratio<i128>;

/// Sorted multiset of Heisenberg creation modes (direction, n), direction 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Modes(Vec<(u8, u16)>);

impl Modes {
    pub fn new(mut v: Vec<(u8, u16)>) -> Self {
        v.sort_unstable();
        Modes(v)
    }

    pub fn as_slice(&self) -> &[(u8, u16)] {
        &self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|&(_, n)| n as i64).sum()
    }

    fn merge(&self, o: &Modes) -> Modes {
        let mut v = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            if self.0[i] <= o.0[j] {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(o.0[j]);
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&o.0[j..]);
        Modes(v)
    }

    /// Runs of equal variables: (variable, multiplicity).
    fn runs(&self) -> Vec<((u8, u16), u32)> {
        let mut out: Vec<((u8, u16), u32)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((y, k)) if *y == x => *k += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }
}

/// A monomial in the Heisenberg variables tensored with a lattice point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FockBasisElement {
    pub modes: Modes,
    pub lattice: Weight,
}

impl FockBasisElement {
    pub fn pure(lattice: Weight) -> Self {
        FockBasisElement { modes: Modes::default(), lattice }
    }

    /// Eight times the degree: −8·Σ modes − 4⟨λ,λ⟩.
    pub fn degree8(&self) -> i64 {
        -8 * self.modes.total() - self.lattice.pairing4(&self.lattice)
    }

    pub fn degree(&self) -> Ratio<i64> {
        Ratio::new(self.degree8(), 8)
    }

    pub fn is_pure(&self) -> bool {
        self.modes.0.is_empty()
    }
}

impl fmt::Display for FockBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(i, n) in &self.modes.0 {
            write!(f, "e{}(-{}) ", i + 1, n)?;
        }
        write!(f, "e^({})", self.lattice)
    }
}

/// Exact finite linear combination of basis elements.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FockVector(BTreeMap<FockBasisElement, Coef>);

impl FockVector {
    pub fn zero() -> Self {
        FockVector(BTreeMap::new())
    }

    pub fn basis(b: FockBasisElement) -> Self {
        let mut m = BTreeMap::new();
        m.insert(b, Coef::one());
        FockVector(m)
    }

    pub fn pure(lattice: Weight) -> Self {
        FockVector::basis(FockBasisElement::pure(lattice))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockBasisElement, &Coef)> {
        self.0.iter()
    }

    pub fn coef(&self, b: &FockBasisElement) -> Coef {
        self.0.get(b).copied().unwrap_or_else(Coef::zero)
    }

    pub fn add_term(&mut self, b: FockBasisElement, c: Coef) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(b) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &FockVector, c: Coef) {
        for (b, x) in &o.0 {
            self.add_term(b.clone(), *x * c);
        }
    }

    pub fn scale(&self, c: Coef) -> FockVector {
        let mut out = FockVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, o: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(o, -Coef::one());
        out
    }

    /// Single pure term e^λ with nonzero coefficient, if that is all there is.
    pub fn as_pure(&self) -> Option<(&Weight, Coef)> {
        match self.0.iter().next() {
            Some((b, c)) if self.0.len() == 1 && b.is_pure() => Some((&b.lattice, *c)),
            _ => None,
        }
    }

    pub fn into_map(self) -> BTreeMap<FockBasisElement, Coef> {
        self.0
    }
}

impl FromIterator<(FockBasisElement, Coef)> for FockVector {
    fn from_iter<I: IntoIterator<Item = (FockBasisElement, Coef)>>(it: I) -> Self {
        let mut v = FockVector::zero();
        for (b, c) in it {
            v.add_term(b, c);
        }
        v
    }
}

/// Bimultiplicative sign ε on P, stored on the basis (ε_1, …, ε_{l−1}, ω_l).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    ell: usize,
    table: Vec<Vec<u8>>,
}

/// Coordinates of a weight in the basis (ε_1, …, ε_{l−1}, ω_l).
fn p_coords(w: &Weight) -> Vec<i64> {
    let d = w.doubled();
    let l = d.len();
    let last = d[l - 1] as i64;
    let mut c: Vec<i64> = d[..l - 1].iter().map(|&x| (x as i64 - last) / 2).collect();
    c.push(last);
    c
}

impl Cocycle {
    /// Solve the mod-2 system ε(a,b)ε(b,a) = (−1)^{⟨a,b⟩} on simple roots.
    /// Free unknowns take the value `free`.
    pub fn solve(lat: &Lattice, free: bool) -> Result<Self> {
        let l = lat.ell();
        let n = l * l;
        let roots: Vec<Vec<i64>> = lat.simple_roots().iter().map(p_coords).collect();
        let mut rows: Vec<(Vec<u8>, u8)> = Vec::new();
        for s in 0..l {
            for t in s + 1..l {
                let mut row = vec![0u8; n];
                for i in 0..l {
                    for j in 0..l {
                        let v = roots[s][i] * roots[t][j] + roots[t][i] * roots[s][j];
                        row[i * l + j] = v.rem_euclid(2) as u8;
                    }
                }
                let rhs = lat.simple_roots()[s].pairing_int(&lat.simple_roots()[t]).rem_euclid(2) as u8;
                rows.push((row, rhs));
            }
        }
        // Gaussian elimination over F_2.
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..rows.len()).find(|&k| rows[k].0[col] == 1) else { continue };
            rows.swap(r, p);
            for k in 0..rows.len() {
                if k != r && rows[k].0[col] == 1 {
                    let (pr, prhs) = rows[r].clone();
                    for (x, y) in rows[k].0.iter_mut().zip(&pr) {
                        *x ^= y;
                    }
                    rows[k].1 ^= prhs;
                }
            }
            pivots.push((r, col));
            r += 1;
        }
        if rows[r..].iter().any(|(_, rhs)| *rhs == 1) {
            return Err(Error::Internal("cocycle constraint system is inconsistent".into()));
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut x = vec![0u8; n];
        for (c, v) in x.iter_mut().enumerate() {
            if !pivot_cols.contains(&c) {
                *v = free as u8;
            }
        }
        for &(row, col) in pivots.iter().rev() {
            let mut v = rows[row].1;
            for c in 0..n {
                if c != col && rows[row].0[c] == 1 {
                    v ^= x[c];
                }
            }
            x[col] = v;
        }
        let table = (0..l).map(|i| x[i * l..(i + 1) * l].to_vec()).collect();
        Ok(Cocycle { ell: l, table })
    }

    /// ε(a, b) ∈ {±1}.
    pub fn sign(&self, a: &Weight, b: &Weight) -> i32 {
        let (ca, cb) = (p_coords(a), p_coords(b));
        let mut parity = 0i64;
        for i in 0..self.ell {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..self.ell {
                if self.table[i][j] == 1 {
                    parity += ca[i] * cb[j];
                }
            }
        }
        if parity.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

type Expansion = Arc<Vec<(Modes, Coef)>>;

/// Vertex-operator engine for one rank and one cocycle.
pub struct Fock {
    lat: Lattice,
    cocycle: Cocycle,
    eminus: RwLock<HashMap<(Weight, u32), Expansion>>,
}

fn binom(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

impl Fock {
    pub fn new(lat: Lattice) -> Result<Self> {
        let cocycle = Cocycle::solve(&lat, false)?;
        Ok(Self::with_cocycle(lat, cocycle))
    }

    pub fn with_cocycle(lat: Lattice, cocycle: Cocycle) -> Self {
        Fock { lat, cocycle, eminus: RwLock::new(HashMap::new()) }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lat
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn ell(&self) -> usize {
        self.lat.ell()
    }

    /// Coefficient of z^M in E^−(−α,z), as a polynomial in the x_{i,n}.
    fn eminus(&self, alpha: &Weight, m: u32) -> Expansion {
        let key = (alpha.clone(), m);
        if let Some(e) = self.eminus.read().expect("cache lock").get(&key) {
            return e.clone();
        }
        let dirs: Vec<(u8, Coef)> = alpha
            .doubled()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| (i as u8, Coef::new(d as i128, 2)))
            .collect();
        let mut acc: BTreeMap<Modes, Coef> = BTreeMap::new();
        // Partitions of m as multiplicities k_n, parts taken largest first.
        fn parts(left: u32, max: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for n in (1..=max.min(left)).rev() {
                for k in 1..=left / n {
                    cur.push((n, k));
                    parts(left - n * k, n - 1, cur, out);
                    cur.pop();
                }
            }
        }
        let mut ps = Vec::new();
        parts(m, m, &mut Vec::new(), &mut ps);
        for p in ps {
            // Π_n (A_n / n)^{k} / k!
            let mut terms: Vec<(Vec<(u8, u16)>, Coef)> = vec![(Vec::new(), Coef::one())];
            for &(n, k) in &p {
                let scale = Coef::new(1, (n as i128).pow(k) * factorial(k));
                let power = multinomial_power(&dirs, n as u16, k);
                let mut next = Vec::new();
                for (mo, c) in &terms {
                    for (mo2, c2) in &power {
                        let mut v = mo.clone();
                        v.extend_from_slice(mo2);
                        next.push((v, *c * *c2 * scale));
                    }
                }
                terms = next;
            }
            for (mo, c) in terms {
                *acc.entry(Modes::new(mo)).or_insert_with(Coef::zero) += c;
            }
        }
        let e: Expansion = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.eminus.write().expect("cache lock").insert(key, e.clone());
        e
    }

    /// x_α(m) applied to one basis element.
    pub fn vertex_act_basis(&self, alpha: &Weight, m: i64, b: &FockBasisElement) -> Vec<(FockBasisElement, Coef)> {
        let s = alpha.pairing_int(&b.lattice);
        let sign = self.cocycle.sign(alpha, &b.lattice);
        let target = b.lattice.add(alpha);
        let runs = b.modes.runs();
        let ad = alpha.doubled();
        let mut out = Vec::new();
        // Choose how many copies k of each variable the translation removes.
        let mut choice = vec![0u32; runs.len()];
        loop {
            let removed: i64 = runs.iter().zip(&choice).map(|(((_, n), _), &k)| *n as i64 * k as i64).sum();
            let big_m = removed - m - 1 - s;
            if big_m >= 0 {
                let mut coef = Coef::from_integer(sign as i128);
                let mut rest = Vec::new();
                for (((dir, n), e), &k) in runs.iter().zip(&choice) {
                    if k > 0 {
                        let a = -(ad[*dir as usize] as i128);
                        coef *= Coef::new(binom(*e, k) * a.pow(k), 2i128.pow(k));
                    }
                    rest.extend(std::iter::repeat_n((*dir, *n), (*e - k) as usize));
                }
                if !coef.is_zero() {
                    let rest = Modes(rest);
                    for (mo, c) in self.eminus(alpha, big_m as u32).iter() {
                        out.push((FockBasisElement { modes: rest.merge(mo), lattice: target.clone() }, coef * *c));
                    }
                }
            }
            // Next choice vector, skipping variables α does not see.
            let mut i = 0;
            loop {
                if i == runs.len() {
                    return out;
                }
                let dir = (runs[i].0).0 as usize;
                if ad[dir] != 0 && choice[i] < runs[i].1 {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// x_α(m) v for a root α.
    pub fn vertex_act(&self, alpha: &Weight, m: i64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (b, c) in v.terms() {
            for (b2, c2) in self.vertex_act_basis(alpha, m, b) {
                out.add_term(b2, c2 * *c);
            }
        }
        out
    }

    /// h(n) v: creation for n < 0, contraction for n > 0, weight for n = 0.
    pub fn heisenberg_act(&self, h: &Weight, n: i64, v: &FockVector) -> FockVector {
        let hd = h.doubled();
        let mut out = FockVector::zero();
        for (b, c) in v.terms() {
            match n.signum() {
                0 => out.add_term(b.clone(), *c * Coef::new(h.pairing4(&b.lattice) as i128, 4)),
                -1 => {
                    for (i, &d) in hd.iter().enumerate().filter(|(_, &d)| d != 0) {
                        let modes = b.modes.merge(&Modes(vec![(i as u8, (-n) as u16)]));
                        out.add_term(FockBasisElement { modes, lattice: b.lattice.clone() }, *c * Coef::new(d as i128, 2));
                    }
                }
                _ => {
                    for ((dir, k), e) in b.modes.runs() {
                        if k as i64 != n || hd[dir as usize] == 0 {
                            continue;
                        }
                        let mut rest = b.modes.0.clone();
                        let pos = rest.iter().position(|&x| x == (dir, k)).expect("present");
                        rest.remove(pos);
                        let f = Coef::new(hd[dir as usize] as i128 * n as i128 * e as i128, 2);
                        out.add_term(FockBasisElement { modes: Modes(rest), lattice: b.lattice.clone() }, *c * f);
                    }
                }
            }
        }
        out
    }

    /// Simple current e(λ): e^ν ↦ ε(ν,λ) e^{ν+λ}.
    pub fn e_lambda(&self, lambda: &Weight, v: &FockVector) -> FockVector {
        v.terms()
            .map(|(b, c)| {
                let s = self.cocycle.sign(&b.lattice, lambda);
                (
                    FockBasisElement { modes: b.modes.clone(), lattice: b.lattice.add(lambda) },
                    *c * Coef::from_integer(s as i128),
                )
            })
            .collect()
    }

    /// e^{ω_i} for a level-1 label i ∈ {0, 1, l−1, l}.
    pub fn hw_vector(&self, i: usize) -> Result<FockVector> {
        if Coset::from_label(i, self.ell()).is_none() {
            return Err(Error::InvalidInput(format!("Λ_{i} is not of level 1")));
        }
        Ok(FockVector::pure(self.lat.fundamental(i).clone()))
    }

    /// Complete basis of the degree piece d8/8 of the module on `coset`.
    pub fn graded_basis(&self, coset: Coset, degree8: i64) -> Vec<FockBasisElement> {
        let ell = self.ell();
        let budget = -degree8;
        if budget < 0 {
            return Vec::new();
        }
        let odd = matches!(coset, Coset::SpinMinus | Coset::SpinPlus);
        let mut points = Vec::new();
        let mut cur = Vec::with_capacity(ell);
        fn rec(ell: usize, odd: bool, left: i64, cur: &mut Vec<i32>, out: &mut Vec<Weight>) {
            if cur.len() == ell {
                out.push(Weight::from_doubled(cur.clone()));
                return;
            }
            let max = (left as f64).sqrt() as i32 + 1;
            for d in -max..=max {
                if (d.rem_euclid(2) == 1) != odd || (d as i64) * (d as i64) > left {
                    continue;
                }
                cur.push(d);
                rec(ell, odd, left - (d as i64) * (d as i64), cur, out);
                cur.pop();
            }
        }
        rec(ell, odd, budget, &mut cur, &mut points);
        let mut out = Vec::new();
        for lam in points {
            if lam.coset().ok() != Some(coset) {
                continue;
            }
            let rem = budget - lam.pairing4(&lam);
            if rem % 8 != 0 {
                continue;
            }
            for modes in mode_multisets(ell, (rem / 8) as u16) {
                out.push(FockBasisElement { modes, lattice: lam.clone() });
            }
        }
        out.sort();
        out
    }
}

/// (Σ_i a_i x_{i,n})^k expanded.
fn multinomial_power(dirs: &[(u8, Coef)], n: u16, k: u32) -> Vec<(Vec<(u8, u16)>, Coef)> {
    let mut out = Vec::new();
    fn rec(dirs: &[(u8, Coef)], n: u16, left: u32, cur: &mut Vec<(u8, u16)>, coef: Coef, out: &mut Vec<(Vec<(u8, u16)>, Coef)>) {
        match dirs {
            [] => {
                if left == 0 {
                    out.push((cur.clone(), coef));
                }
            }
            [(d, a), rest @ ..] => {
                let lo = if rest.is_empty() { left } else { 0 };
                for r in lo..=left {
                    let c = coef * Coef::from_integer(binom(left, r)) * num_traits::pow(*a, r as usize);
                    let len = cur.len();
                    cur.extend(std::iter::repeat_n((*d, n), r as usize));
                    rec(rest, n, left - r, cur, c, out);
                    cur.truncate(len);
                }
            }
        }
    }
    rec(dirs, n, k, &mut Vec::new(), Coef::one(), &mut out);
    out
}

/// All multisets of (direction, mode) with total mode sum `total`.
pub fn mode_multisets(ell: usize, total: u16) -> Vec<Modes> {
    let mut out = Vec::new();
    fn rec(ell: usize, left: u16, bound: (u8, u16), cur: &mut Vec<(u8, u16)>, out: &mut Vec<Modes>) {
        if left == 0 {
            out.push(Modes::new(cur.clone()));
            return;
        }
        for n in 1..=left.min(bound.1) {
            for d in 0..ell as u8 {
                if (n, d) > (bound.1, bound.0) {
                    continue;
                }
                cur.push((d, n));
                rec(ell, left - n, (d, n), cur, out);
                cur.pop();
            }
        }
    }
    rec(ell, total, (u8::MAX, u16::MAX), &mut Vec::new(), &mut out);
    out
}

/// The sign of a nonzero rational, for reporting.
pub fn coef_sign(c: &Coef) -> i32 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Color;

    fn fock() -> Fock {
        Fock::new(Lattice::new(4).unwrap()).unwrap()
    }

    #[test]
    fn vacuum_creation() {
        let f = fock();
        let g = Color::pos(2).root(4);
        let v = f.vertex_act(&g, -1, &FockVector::pure(Weight::zero(4)));
        let (lam, _) = v.as_pure().unwrap();
        assert_eq!(lam, &g);
    }

    #[test]
    fn omega_killed_at_depth_one() {
        let f = fock();
        let v = f.hw_vector(1).unwrap();
        for c in f.lattice().gamma().to_vec() {
            assert!(f.vertex_act(&c.root(4), -1, &v).is_zero());
        }
    }

    #[test]
    fn opposite_pair_gives_two_omega() {
        let f = fock();
        let g = Color::pos(3);
        let v = FockVector::pure(Weight::zero(4));
        let v = f.vertex_act(&g.root(4), -1, &v);
        let v = f.vertex_act(&g.opposite().root(4), -1, &v);
        let (lam, _) = v.as_pure().expect("pure");
        assert_eq!(lam, &f.lattice().omega().scale(2));
    }

    #[test]
    fn heisenberg_basics() {
        let f = fock();
        let lam = Weight::from_ints(&[1, 0, -1, 0]);
        let h = Weight::from_ints(&[2, 1, 1, 0]);
        let v = FockVector::pure(lam.clone());
        assert_eq!(f.heisenberg_act(&h, 0, &v), v.scale(Coef::from_integer(1)));
        let a = Color::neg(2).root(4);
        let up = f.heisenberg_act(&a, -1, &FockVector::pure(Weight::zero(4)));
        let back = f.heisenberg_act(&a, 1, &up);
        assert_eq!(back, FockVector::pure(Weight::zero(4)).scale(Coef::from_integer(2)));
    }

    #[test]
    fn cocycle_commutator() {
        let lat = Lattice::new(4).unwrap();
        for free in [false, true] {
            let c = Cocycle::solve(&lat, free).unwrap();
            let roots = lat.roots();
            for a in &roots {
                for b in &roots {
                    let want = if a.pairing_int(b).rem_euclid(2) == 0 { 1 } else { -1 };
                    assert_eq!(c.sign(a, b) * c.sign(b, a), want);
                }
                assert_eq!(c.sign(a, &Weight::zero(4)), 1);
            }
        }
        assert_ne!(Cocycle::solve(&lat, false).unwrap(), Cocycle::solve(&lat, true).unwrap());
    }

    #[test]
    fn graded_pieces() {
        let f = fock();
        assert_eq!(f.graded_basis(Coset::Root, 0).len(), 1);
        assert_eq!(f.graded_basis(Coset::Root, -8).len(), 28);
        assert_eq!(f.graded_basis(Coset::Vector, -4).len(), 8);
        assert_eq!(f.graded_basis(Coset::SpinPlus, -4).len(), 8);
    }

    #[test]
    fn hw_degrees() {
        let f = fock();
        assert_eq!(FockBasisElement::pure(f.lattice().fundamental(0).clone()).degree8(), 0);
        assert_eq!(FockBasisElement::pure(f.lattice().fundamental(1).clone()).degree(), Ratio::new(-1, 2));
    }
}
