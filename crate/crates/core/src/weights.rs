//! Dominant integral weights of level 1 and 2 (the modules W(Λ) lives in).

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Coset, Lattice};

/// A level-1 fundamental weight Λ_i with i ∈ {0, 1, l−1, l}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LevelOne(usize);

impl LevelOne {
    pub fn new(i: usize, ell: usize) -> Result<Self> {
        if i == 0 || i == 1 || i == ell - 1 || i == ell {
            Ok(LevelOne(i))
        } else {
            Err(Error::InvalidInput(format!("Λ_{i} is not of level 1 for l = {ell}")))
        }
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn coset(self, ell: usize) -> Coset {
        Coset::from_label(self.0, ell).expect("validated level-1 index")
    }

    /// All four level-1 weights in index order.
    pub fn all(ell: usize) -> [LevelOne; 4] {
        [LevelOne(0), LevelOne(1), LevelOne(ell - 1), LevelOne(ell)]
    }
}

impl fmt::Display for LevelOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

/// Dominant integral weight of level 1 or 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum WeightSpec {
    Level1(LevelOne),
    /// Λ¹ + Λ², stored with the smaller index first.
    Sum(LevelOne, LevelOne),
    /// Λ_j with 2 ≤ j ≤ l−2.
    Fundamental(usize),
}

impl WeightSpec {
    pub fn sum(a: LevelOne, b: LevelOne) -> Self {
        if a <= b {
            WeightSpec::Sum(a, b)
        } else {
            WeightSpec::Sum(b, a)
        }
    }

    pub fn level(&self) -> u32 {
        match self {
            WeightSpec::Level1(_) => 1,
            _ => 2,
        }
    }

    /// Coefficients k_0..k_l of Λ = Σ k_i Λ_i.
    pub fn coefficients(&self, ell: usize) -> Vec<u32> {
        let mut k = vec![0; ell + 1];
        match *self {
            WeightSpec::Level1(a) => k[a.index()] += 1,
            WeightSpec::Sum(a, b) => {
                k[a.index()] += 1;
                k[b.index()] += 1;
            }
            WeightSpec::Fundamental(j) => k[j] += 1,
        }
        k
    }

    /// Parse `L<i>`, `L<i>+L<j>` or `2L<i>`.
    pub fn parse(s: &str, ell: usize) -> Result<Self> {
        let s = s.trim();
        let one = |t: &str| -> Result<usize> {
            t.trim()
                .strip_prefix('L')
                .and_then(|n| n.parse().ok())
                .filter(|&i| i <= ell)
                .ok_or_else(|| Error::Parse(format!("bad weight `{t}`")))
        };
        if let Some(rest) = s.strip_prefix('2') {
            let i = one(rest)?;
            let a = LevelOne::new(i, ell)?;
            return Ok(WeightSpec::Sum(a, a));
        }
        if let Some((x, y)) = s.split_once('+') {
            let a = LevelOne::new(one(x)?, ell)?;
            let b = LevelOne::new(one(y)?, ell)?;
            return Ok(WeightSpec::sum(a, b));
        }
        let i = one(s)?;
        match LevelOne::new(i, ell) {
            Ok(a) => Ok(WeightSpec::Level1(a)),
            Err(_) => Ok(WeightSpec::Fundamental(i)),
        }
    }

    /// All eleven level-2 weights of D_4 (ten sums and Λ_2), or the sums plus
    /// Λ_2..Λ_{l−2} in general.
    pub fn level2_all(lat: &Lattice) -> Vec<WeightSpec> {
        let ell = lat.ell();
        let ones = LevelOne::all(ell);
        let mut out = Vec::new();
        for (i, &a) in ones.iter().enumerate() {
            for &b in &ones[i..] {
                out.push(WeightSpec::Sum(a, b));
            }
        }
        out.extend((2..=ell - 2).map(WeightSpec::Fundamental));
        out
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Level1(a) => write!(f, "{a}"),
            WeightSpec::Sum(a, b) => write!(f, "{a}+{b}"),
            WeightSpec::Fundamental(j) => write!(f, "L{j}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(WeightSpec::parse("L0", 4).unwrap().to_string(), "L0");
        assert_eq!(WeightSpec::parse("L4+L3", 4).unwrap().to_string(), "L3+L4");
        assert_eq!(WeightSpec::parse("2L0", 4).unwrap().to_string(), "L0+L0");
        assert_eq!(WeightSpec::parse("L2", 4).unwrap(), WeightSpec::Fundamental(2));
        assert!(WeightSpec::parse("L9", 4).is_err());
        assert!(WeightSpec::parse("L2+L0", 4).is_err());
    }

    #[test]
    fn eleven_level_two_weights() {
        let lat = Lattice::new(4).unwrap();
        let all = WeightSpec::level2_all(&lat);
        assert_eq!(all.len(), 11);
        for w in all {
            let k = w.coefficients(4);
            let level = k[0] + k[1] + k[3] + k[4] + 2 * k[2];
            assert_eq!(level, 2);
        }
    }
}
