//! Root system of type D_l: weights, roots, colors, spinor labels.
//!
//! Weights are stored as doubled ε-coordinates. Every weight of P is either
//! fully integral or fully half-odd-integral, so doubling makes all of them
//! integer vectors with entries of a common parity.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact rational used at the lattice level.
pub type Rat = Ratio<i64>;

/// A weight in ε-coordinates, stored doubled.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(Vec<i32>);

impl Weight {
    pub fn zero(ell: usize) -> Self {
        Weight(vec![0; ell])
    }

    /// Build from doubled coordinates.
    pub fn from_doubled(d: Vec<i32>) -> Self {
        Weight(d)
    }

    /// Build from integral ε-coordinates.
    pub fn from_ints(c: &[i32]) -> Self {
        Weight(c.iter().map(|x| 2 * x).collect())
    }

    pub fn epsilon(ell: usize, i: usize) -> Self {
        let mut w = Weight::zero(ell);
        w.0[i - 1] = 2;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn doubled(&self) -> &[i32] {
        &self.0
    }

    pub fn coords(&self) -> Vec<Rat> {
        self.0.iter().map(|&d| Rat::new(d as i64, 2)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// Four times the standard pairing; always an integer.
    pub fn pairing4(&self, o: &Weight) -> i64 {
        self.0.iter().zip(&o.0).map(|(&a, &b)| a as i64 * b as i64).sum()
    }

    pub fn pairing(&self, o: &Weight) -> Rat {
        Rat::new(self.pairing4(o), 4)
    }

    /// Pairing that is known to be integral (e.g. a root against P).
    pub fn pairing_int(&self, o: &Weight) -> i64 {
        let p = self.pairing4(o);
        debug_assert!(p % 4 == 0, "non-integral pairing");
        p / 4
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|d| d % 2 == 0)
    }

    pub fn in_p(&self) -> bool {
        let first = self.0.first().map(|d| d.rem_euclid(2)).unwrap_or(0);
        self.0.iter().all(|d| d.rem_euclid(2) == first)
    }

    pub fn in_q(&self) -> bool {
        self.is_integral() && (self.0.iter().sum::<i32>() / 2) % 2 == 0
    }

    /// Coset of this weight in P/Q.
    pub fn coset(&self) -> Result<Coset> {
        if !self.in_p() {
            return Err(Error::NotInWeightLattice(self.to_string()));
        }
        let ell = self.rank() as i32;
        let sum: i32 = self.0.iter().sum();
        Ok(if self.is_integral() {
            if (sum / 2).rem_euclid(2) == 0 {
                Coset::Root
            } else {
                Coset::Vector
            }
        } else if (sum - ell).rem_euclid(4) == 0 {
            Coset::SpinPlus
        } else {
            Coset::SpinMinus
        })
    }
}

impl fmt::Display for Weight {
    /// Space separated ε-coordinates, e.g. `1 1/2 -1/2 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&d| if d % 2 == 0 { (d / 2).to_string() } else { format!("{d}/2") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The four classes of P/Q, named after the level-1 module they carry.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Coset {
    /// Q, carrying L(Λ_0).
    Root,
    /// Q + ω_1, carrying L(Λ_1).
    Vector,
    /// Q + ω_{l-1}, carrying L(Λ_{l-1}).
    SpinMinus,
    /// Q + ω_l, carrying L(Λ_l).
    SpinPlus,
}

impl Coset {
    /// Index i of the fundamental weight ω_i representing the class.
    pub fn label(self, ell: usize) -> usize {
        match self {
            Coset::Root => 0,
            Coset::Vector => 1,
            Coset::SpinMinus => ell - 1,
            Coset::SpinPlus => ell,
        }
    }

    pub fn from_label(i: usize, ell: usize) -> Option<Coset> {
        match i {
            0 => Some(Coset::Root),
            1 => Some(Coset::Vector),
            _ if i == ell - 1 => Some(Coset::SpinMinus),
            _ if i == ell => Some(Coset::SpinPlus),
            _ => None,
        }
    }

    /// Maximal degree of the module: minus half the minimal norm in the class.
    pub fn top_degree8(self, ell: usize) -> i64 {
        match self {
            Coset::Root => 0,
            Coset::Vector => -4,
            Coset::SpinMinus | Coset::SpinPlus => -(ell as i64),
        }
    }
}

/// An element of Γ: γ_i = ε_1 + ε_i or γ_i̲ = ε_1 − ε_i, 2 ≤ i ≤ l.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Color {
    index: u8,
    neg: bool,
}

impl Color {
    pub fn pos(index: usize) -> Self {
        assert!(index >= 2, "color index starts at 2");
        Color { index: index as u8, neg: false }
    }

    pub fn neg(index: usize) -> Self {
        assert!(index >= 2, "color index starts at 2");
        Color { index: index as u8, neg: true }
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn is_neg(self) -> bool {
        self.neg
    }

    pub fn opposite(self) -> Self {
        Color { index: self.index, neg: !self.neg }
    }

    pub fn root(self, ell: usize) -> Weight {
        let mut w = Weight::epsilon(ell, 1);
        w.0[self.index() - 1] = if self.neg { -2 } else { 2 };
        w
    }

    /// Position in Γ listed ascending: γ_2̲ is 0 and γ_2 is 2l−3.
    pub fn ordinal(self, ell: usize) -> usize {
        if self.neg {
            self.index() - 2
        } else {
            2 * ell - 1 - self.index()
        }
    }

    pub fn from_ordinal(k: usize, ell: usize) -> Self {
        if k < ell - 1 {
            Color::neg(k + 2)
        } else {
            Color::pos(2 * ell - 1 - k)
        }
    }

    fn key(self) -> i32 {
        if self.neg {
            self.index as i32
        } else {
            1000 - self.index as i32
        }
    }
}

impl Ord for Color {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

impl PartialOrd for Color {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.neg {
            write!(f, "g~{}", self.index)
        } else {
            write!(f, "g{}", self.index)
        }
    }
}

impl FromStr for Color {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad color `{s}`"));
        let (neg, rest) = match s.strip_prefix("g~") {
            Some(r) => (true, r),
            None => (false, s.strip_prefix('g').ok_or_else(bad)?),
        };
        let index: usize = rest.parse().map_err(|_| bad())?;
        if !(2..=255).contains(&index) {
            return Err(bad());
        }
        Ok(if neg { Color::neg(index) } else { Color::pos(index) })
    }
}

/// A subset Σ of {1..l}, labelling the spinor weight ½(Σ_{i∈Σ} ε_i − Σ_{j∉Σ} ε_j).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SpinorLabel(u32);

impl SpinorLabel {
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        SpinorLabel(it.into_iter().fold(0, |m, i| m | 1 << (i - 1)))
    }

    pub fn full(ell: usize) -> Self {
        SpinorLabel((1 << ell) - 1)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_bits(b: u32) -> Self {
        SpinorLabel(b)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        SpinorLabel(self.0 | 1 << (i - 1))
    }

    pub fn remove(self, i: usize) -> Self {
        SpinorLabel(self.0 & !(1 << (i - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (1..=32).filter(move |&i| self.contains(i))
    }

    pub fn weight(self, ell: usize) -> Weight {
        Weight((1..=ell).map(|i| if self.contains(i) { 1 } else { -1 }).collect())
    }

    /// Inverse of [`SpinorLabel::weight`] for weights with all coordinates ±½.
    pub fn from_weight(w: &Weight) -> Option<Self> {
        let mut bits = 0;
        for (k, &d) in w.doubled().iter().enumerate() {
            match d {
                1 => bits |= 1 << k,
                -1 => {}
                _ => return None,
            }
        }
        Some(SpinorLabel(bits))
    }
}

impl fmt::Display for SpinorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Fixed data of the D_l root system.
#[derive(Clone, Debug)]
pub struct Lattice {
    ell: usize,
    simple_roots: Vec<Weight>,
    fundamental: Vec<Weight>,
    gamma: Vec<Color>,
}

impl Lattice {
    pub fn new(ell: usize) -> Result<Self> {
        if !(4..=16).contains(&ell) {
            return Err(Error::RankOutOfRange(ell));
        }
        let e = |i| Weight::epsilon(ell, i);
        let mut simple_roots: Vec<Weight> = (1..ell).map(|i| e(i).sub(&e(i + 1))).collect();
        simple_roots.push(e(ell - 1).add(&e(ell)));

        let mut fundamental = vec![Weight::zero(ell)];
        for i in 1..=ell - 2 {
            fundamental.push(Weight((1..=ell).map(|k| if k <= i { 2 } else { 0 }).collect()));
        }
        fundamental.push(Weight((1..=ell).map(|k| if k < ell { 1 } else { -1 }).collect()));
        fundamental.push(Weight(vec![1; ell]));

        let mut gamma: Vec<Color> = (2..=ell).map(Color::pos).collect();
        gamma.extend((2..=ell).rev().map(Color::neg));
        Ok(Lattice { ell, simple_roots, fundamental, gamma })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    /// ω_i for 0 ≤ i ≤ l, with ω_0 = 0.
    pub fn fundamental(&self, i: usize) -> &Weight {
        &self.fundamental[i]
    }

    /// The minuscule weight ω = ω_1 inducing the grading.
    pub fn omega(&self) -> &Weight {
        &self.fundamental[1]
    }

    pub fn theta(&self) -> Weight {
        Weight::epsilon(self.ell, 1).add(&Weight::epsilon(self.ell, 2))
    }

    /// Γ in descending order: γ_2 > … > γ_l > γ_l̲ > … > γ_2̲.
    pub fn gamma(&self) -> &[Color] {
        &self.gamma
    }

    /// Γ ascending, i.e. indexed by [`Color::ordinal`].
    pub fn gamma_ascending(&self) -> Vec<Color> {
        self.gamma.iter().rev().copied().collect()
    }

    /// Positive roots ε_i ± ε_j, i < j.
    pub fn positive_roots(&self) -> Vec<Weight> {
        let e = |i| Weight::epsilon(self.ell, i);
        let mut out = Vec::new();
        for i in 1..=self.ell {
            for j in i + 1..=self.ell {
                out.push(e(i).sub(&e(j)));
                out.push(e(i).add(&e(j)));
            }
        }
        out
    }

    pub fn roots(&self) -> Vec<Weight> {
        let pos = self.positive_roots();
        let mut out: Vec<Weight> = pos.iter().map(Weight::neg).collect();
        out.extend(pos);
        out
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        let d = w.doubled();
        let nz: Vec<i32> = d.iter().copied().filter(|&x| x != 0).collect();
        nz.len() == 2 && nz.iter().all(|x| x.abs() == 2)
    }

    /// ρ = (l−1, …, 1, 0).
    pub fn rho(&self) -> Weight {
        Weight((0..self.ell).map(|k| 2 * (self.ell - 1 - k) as i32).collect())
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.simple_roots.iter().all(|a| a.pairing4(w) >= 0)
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, w: &Weight) -> u64 {
        let rho = self.rho();
        let shifted = w.add(&rho);
        let mut num = Rat::from_integer(1);
        for a in self.positive_roots() {
            num *= Rat::new(a.pairing4(&shifted), a.pairing4(&rho));
        }
        assert!(num.is_integer(), "Weyl dimension must be integral");
        *num.numer() as u64
    }

    pub fn spinor_weight(&self, s: SpinorLabel) -> Weight {
        s.weight(self.ell)
    }
}
