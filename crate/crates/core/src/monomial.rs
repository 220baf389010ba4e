//! Colored partitions: commutative monomials x_{δ_1}(−n_1)…x_{δ_r}(−n_r).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{Color, Weight};

/// x_color(−depth). Depth 0 is an imaginary bookkeeping factor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Factor {
    pub color: Color,
    pub depth: u32,
}

impl Factor {
    pub fn new(color: Color, depth: u32) -> Self {
        Factor { color, depth }
    }
}

impl Ord for Factor {
    /// x_δ(−i) < x_τ(−j) iff −i < −j, or i = j and δ < τ.
    fn cmp(&self, o: &Self) -> Ordering {
        o.depth.cmp(&self.depth).then(self.color.cmp(&o.color))
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.depth == 0 {
            write!(f, "{}(0)", self.color)
        } else {
            write!(f, "{}(-{})", self.color, self.depth)
        }
    }
}

impl FromStr for Factor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad factor `{s}`"));
        let (c, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let depth = match inner {
            "0" | "-0" => 0,
            _ => inner.strip_prefix('-').and_then(|d| d.parse::<u32>().ok()).filter(|&d| d > 0).ok_or_else(bad)?,
        };
        Ok(Factor::new(c.parse()?, depth))
    }
}

/// Depth → number of factors of that depth.
pub type Shape = BTreeMap<u32, u32>;

/// A multiset of factors, kept sorted ascending (leftmost is smallest/deepest).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<Factor>);

impl Monomial {
    pub fn empty() -> Self {
        Monomial(Vec::new())
    }

    pub fn normalize(mut factors: Vec<Factor>) -> Self {
        factors.sort();
        Monomial(factors)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rightmost (greatest) factor.
    pub fn last(&self) -> Option<&Factor> {
        self.0.last()
    }

    /// Sum of depths, i.e. −degree.
    pub fn total_depth(&self) -> u32 {
        self.0.iter().map(|f| f.depth).sum()
    }

    pub fn degree(&self) -> i64 {
        -(self.total_depth() as i64)
    }

    pub fn weight(&self, ell: usize) -> Weight {
        self.0.iter().fold(Weight::zero(ell), |w, f| w.add(&f.color.root(ell)))
    }

    pub fn shape(&self) -> Shape {
        let mut s = Shape::new();
        for f in &self.0 {
            *s.entry(f.depth).or_default() += 1;
        }
        s
    }

    pub fn has_imaginary(&self) -> bool {
        self.0.iter().any(|f| f.depth == 0)
    }

    pub fn count(&self, depth: u32, color: Color) -> u32 {
        self.0.iter().filter(|f| f.depth == depth && f.color == color).count() as u32
    }

    /// The linear order of monomials: shapes first, then colors right to left.
    pub fn compare(&self, o: &Monomial) -> Ordering {
        let (s, t) = (self.shape(), o.shape());
        let max = s.keys().chain(t.keys()).copied().max().unwrap_or(0);
        for j in 0..=max {
            let a = s.get(&j).copied().unwrap_or(0);
            let b = t.get(&j).copied().unwrap_or(0);
            if a != b {
                return a.cmp(&b);
            }
        }
        for (x, y) in self.0.iter().rev().zip(o.0.iter().rev()) {
            match x.color.cmp(&y.color) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    pub fn multiply(&self, o: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Monomial::normalize(v)
    }

    /// Push every factor n steps deeper.
    pub fn shift(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|f| Factor::new(f.color, f.depth + n)).collect())
    }

    /// Lift every factor n steps up (x(π)^{+n} of the replay argument);
    /// fails if some factor would reach depth 0 or above.
    pub fn lift(&self, n: u32) -> Option<Monomial> {
        self.0
            .iter()
            .map(|f| (f.depth > n).then(|| Factor::new(f.color, f.depth - n)))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Factors with depth ≤ d (the right part) and the rest.
    pub fn split_at_depth(&self, d: u32) -> (Monomial, Monomial) {
        let (shallow, deep): (Vec<Factor>, Vec<Factor>) = self.0.iter().partition(|f| f.depth <= d);
        (Monomial(shallow), Monomial(deep))
    }

    pub fn push(&mut self, f: Factor) {
        let pos = self.0.partition_point(|g| *g <= f);
        self.0.insert(pos, f);
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Monomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let f = s.split_whitespace().map(str::parse).collect::<Result<Vec<Factor>>>()?;
        Ok(Monomial::normalize(f))
    }
}

/// All colored partitions of n over the given colors, each sorted.
pub fn colored_partitions(colors: &[Color], n: u32) -> Vec<Monomial> {
    let mut asc: Vec<Color> = colors.to_vec();
    asc.sort();
    let mut out = Vec::new();
    let mut cur: Vec<Factor> = Vec::new();
    // Factors are chosen from the right, each no greater than the previous one.
    fn rec(asc: &[Color], left: u32, bound: Option<Factor>, cur: &mut Vec<Factor>, out: &mut Vec<Monomial>) {
        if left == 0 {
            let mut v = cur.clone();
            v.reverse();
            out.push(Monomial(v));
            return;
        }
        let min_depth = bound.map_or(1, |b| b.depth);
        for depth in min_depth..=left {
            for &c in asc.iter().rev() {
                let f = Factor::new(c, depth);
                if bound.is_some_and(|b| f > b) {
                    continue;
                }
                cur.push(f);
                rec(asc, left - depth, Some(f), cur, out);
                cur.pop();
            }
        }
    }
    rec(&asc, n, None, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn print_round_trip() {
        let s = "g~2(-7) g~4(-6) g5(-2) g3(-1)";
        assert_eq!(m(s).to_string(), s);
        assert_eq!(m("g2(-1) g3(-1)").to_string(), "g3(-1) g2(-1)");
        assert_eq!(m("g~3(-0) g3(0)").to_string(), "g~3(0) g3(0)");
        assert_eq!(m("").to_string(), "");
        assert!("g3(-x)".parse::<Monomial>().is_err());
        assert!("h3(-1)".parse::<Monomial>().is_err());
    }

    #[test]
    fn shape_of_example() {
        let x = m("g4(-4) g3(-4) g2(-3) g~2(-2)");
        let shape: Vec<(u32, u32)> = x.shape().into_iter().collect();
        assert_eq!(shape, vec![(2, 1), (3, 1), (4, 2)]);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(m("g3(-1)").compare(&m("g2(-1)")), Ordering::Less);
        assert_eq!(m("g2(-2)").compare(&m("g2(-1) g2(-1)")), Ordering::Less);
        let x = m("g~2(-3) g3(-1)");
        assert_eq!(x.compare(&x), Ordering::Equal);
    }

    #[test]
    fn multiply_and_shift() {
        let a = m("g2(-1)");
        assert_eq!(a.multiply(&Monomial::empty()), a);
        assert_eq!(a.multiply(&m("g3(-2)")).degree(), -3);
        assert_eq!(Monomial::empty().shift(5), Monomial::empty());
        assert_eq!(m("g4(-1)").shift(1), m("g4(-2)"));
        assert_eq!(m("g4(-2) g3(-1)").lift(1), None);
        assert_eq!(m("g4(-3) g3(-2)").lift(1), Some(m("g4(-2) g3(-1)")));
    }

    #[test]
    fn partition_counts() {
        // Π (1 − q^j)^{−6}: 1, 6, 27, 98, 315, 918, 2492.
        let colors = crate::lattice::Lattice::new(4).unwrap().gamma().to_vec();
        let counts: Vec<usize> = (0..=6).map(|n| colored_partitions(&colors, n).len()).collect();
        assert_eq!(counts, vec![1, 6, 27, 98, 315, 918, 2492]);
    }
}
