//! Exact rank and nullspace over Q.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fock::Coef;

/// Sparse integer row, sorted by column.
type Row = Vec<(usize, BigInt)>;

/// Clear denominators of a rational row and divide out the content.
fn integer_row(entries: &[(usize, Coef)]) -> Row {
    let lcm = entries.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(&BigInt::from(*c.denom())));
    let mut row: Row = entries
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (*i, BigInt::from(*c.numer()) * (&lcm / BigInt::from(*c.denom()))))
        .collect();
    row.sort_by_key(|(i, _)| *i);
    primitive(&mut row);
    row
}

fn primitive(row: &mut Row) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
    if row.first().is_some_and(|(_, x)| x.is_negative()) {
        for (_, x) in row.iter_mut() {
            *x = -&*x;
        }
    }
}

/// a·row − b·piv, both sorted.
fn combine(row: &Row, a: &BigInt, piv: &Row, b: &BigInt) -> Row {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let take = match (row.get(i), piv.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        match take {
            std::cmp::Ordering::Less => {
                out.push((row[i].0, a * &row[i].1));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((piv[j].0, -(b * &piv[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = a * &row[i].1 - b * &piv[j].1;
                if !v.is_zero() {
                    out.push((row[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Incremental echelon form: pivot column → primitive integer row.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Insert a row; returns true if it raised the rank.
    pub fn insert(&mut self, entries: &[(usize, Coef)]) -> bool {
        let mut row = integer_row(entries);
        while let Some((lead, x)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(piv) => {
                    let p = &piv[0].1;
                    let g = p.gcd(&x);
                    row = combine(&row, &(p / &g), piv, &(&x / &g));
                    primitive(&mut row);
                }
            }
        }
        false
    }
}

/// Rank of a family of sparse vectors indexed by arbitrary ordered keys.
pub fn rank<K: Ord + Clone>(rows: &[Vec<(K, Coef)>]) -> usize {
    let mut index: BTreeMap<K, usize> = BTreeMap::new();
    for r in rows {
        for (k, _) in r {
            let n = index.len();
            index.entry(k.clone()).or_insert(n);
        }
    }
    let mut e = Echelon::new();
    for r in rows {
        let row: Vec<(usize, Coef)> = r.iter().map(|(k, c)| (index[k], *c)).collect();
        e.insert(&row);
    }
    e.rank()
}

/// Basis of {x : A x = 0} for a dense rational matrix A (rows × ncols).
pub fn nullspace(a: &[Vec<Coef>], ncols: usize) -> Vec<Vec<BigRational>> {
    let to_big = |c: &Coef| BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom()));
    let mut m: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(to_big).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let v = &m[r][k] * &f;
                    m[i][k] -= v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(n: i128) -> Coef {
        Coef::from_integer(n)
    }

    /// Reference rank: dense Gaussian elimination over BigRational.
    fn dense_rank(rows: &[Vec<i64>]) -> usize {
        let ncols = rows.first().map_or(0, |r| r.len());
        let a: Vec<Vec<Coef>> = rows.iter().map(|r| r.iter().map(|&x| c(x as i128)).collect()).collect();
        ncols - nullspace(&a, ncols).len().min(ncols)
    }

    #[test]
    fn small_ranks() {
        let rows = vec![vec![(0, c(1)), (1, c(2))], vec![(0, c(2)), (1, c(4))], vec![(2, Coef::new(1, 3))]];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank::<usize>(&[]), 0);
        assert_eq!(rank(&[vec![(0usize, c(0))]]), 0);
    }

    #[test]
    fn nullspace_dimension() {
        let a = vec![vec![c(1), c(1), c(0)], vec![c(0), c(0), c(1)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], -ns[0][1].clone());
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 0..7)) {
            let sparse: Vec<Vec<(usize, Coef)>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, c(x as i128))).collect())
                .collect();
            let expected = if rows.is_empty() { 0 } else { dense_rank(&rows) };
            prop_assert_eq!(rank(&sparse), expected);
            let mut reversed = sparse.clone();
            reversed.reverse();
            prop_assert_eq!(rank(&reversed), expected);
        }
    }
}
