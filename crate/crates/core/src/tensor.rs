//! Tensor products of two level-1 modules and level-2 highest weight vectors.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{Coef, Fock, FockBasisElement, FockVector};
use crate::lattice::{Coset, SpinorLabel, Weight};
use crate::linalg;
use crate::weights::{LevelOne, WeightSpec};

pub type TensorKey = (FockBasisElement, FockBasisElement);

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorVector(BTreeMap<TensorKey, Coef>);

impl TensorVector {
    pub fn zero() -> Self {
        TensorVector(BTreeMap::new())
    }

    pub fn product(a: &FockVector, b: &FockVector) -> Self {
        let mut out = TensorVector::zero();
        for (x, c) in a.terms() {
            for (y, d) in b.terms() {
                out.add_term((x.clone(), y.clone()), *c * *d);
            }
        }
        out
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

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &Coef)> {
        self.0.iter()
    }

    pub fn coef(&self, k: &TensorKey) -> Coef {
        self.0.get(k).copied().unwrap_or_else(Coef::zero)
    }

    pub fn add_term(&mut self, k: TensorKey, c: Coef) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(k) {
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

    pub fn add_scaled(&mut self, o: &TensorVector, c: Coef) {
        for (k, x) in &o.0 {
            self.add_term(k.clone(), *x * c);
        }
    }

    pub fn scale(&self, c: Coef) -> TensorVector {
        let mut out = TensorVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, o: &TensorVector) -> TensorVector {
        let mut out = self.clone();
        out.add_scaled(o, -Coef::one());
        out
    }

    /// Total weight of a homogeneous vector.
    pub fn weight(&self) -> Option<Weight> {
        self.0.keys().next().map(|(a, b)| a.lattice.add(&b.lattice))
    }
}

/// Diagonal action x(m) ⊗ 1 + 1 ⊗ x(m).
pub fn tensor_act(fock: &Fock, alpha: &Weight, m: i64, v: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero();
    for ((a, b), c) in v.terms() {
        for (a2, c2) in fock.vertex_act_basis(alpha, m, a) {
            out.add_term((a2, b.clone()), *c * c2);
        }
        for (b2, c2) in fock.vertex_act_basis(alpha, m, b) {
            out.add_term((a.clone(), b2), *c * c2);
        }
    }
    out
}

/// e(λ) ⊗ e(λ).
pub fn tensor_e_lambda(fock: &Fock, lambda: &Weight, v: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero();
    for ((a, b), c) in v.terms() {
        let x = fock.e_lambda(lambda, &FockVector::basis(a.clone()));
        let y = fock.e_lambda(lambda, &FockVector::basis(b.clone()));
        out.add_scaled(&TensorVector::product(&x, &y), *c);
    }
    out
}

/// Default level-1 pair realizing L(Λ_j): both slots in L(Λ_l).
pub fn default_pair(ell: usize) -> (LevelOne, LevelOne) {
    let top = LevelOne::new(ell, ell).expect("valid");
    (top, top)
}

/// Highest weight vector of a level-2 module inside a tensor product.
pub fn hw_vector_level2(fock: &Fock, w: WeightSpec) -> Result<TensorVector> {
    match w {
        WeightSpec::Level1(_) => Err(Error::InvalidInput(format!("{w} is of level 1"))),
        WeightSpec::Sum(a, b) => Ok(TensorVector::product(&fock.hw_vector(a.index())?, &fock.hw_vector(b.index())?)),
        WeightSpec::Fundamental(j) => {
            if fock.ell() != 4 {
                return Err(Error::Unsupported("level-2 verification requires rank 4".into()));
            }
            solve_hw(fock, j, default_pair(fock.ell()))
        }
    }
}

/// Basic vectors w_{1..jΨ1} ⊗ w_{1..jΨ2} with Ψ1 ⊔ Ψ2 = {j+1..l} in the given cosets.
pub fn basic_vectors(ell: usize, j: usize, pair: (LevelOne, LevelOne)) -> Vec<(SpinorLabel, SpinorLabel)> {
    let head = SpinorLabel::from_indices(1..=j);
    let tail: Vec<usize> = (j + 1..=ell).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << tail.len()) {
        let (mut s1, mut s2) = (head, head);
        for (k, &i) in tail.iter().enumerate() {
            if mask >> k & 1 == 1 {
                s1 = s1.insert(i);
            } else {
                s2 = s2.insert(i);
            }
        }
        let c1 = s1.weight(ell).coset().ok();
        let c2 = s2.weight(ell).coset().ok();
        if c1 == Some(pair.0.coset(ell)) && c2 == Some(pair.1.coset(ell)) {
            out.push((s1, s2));
        }
    }
    out
}

fn pure_pair(ell: usize, s: (SpinorLabel, SpinorLabel)) -> TensorKey {
    (FockBasisElement::pure(s.0.weight(ell)), FockBasisElement::pure(s.1.weight(ell)))
}

/// Joint kernel of the simple raising operators x_{α_i}(0) on span(keys).
fn raising_kernel(fock: &Fock, keys: &[TensorKey]) -> Vec<Vec<num_rational::BigRational>> {
    let mut rows: BTreeMap<(usize, TensorKey), Vec<Coef>> = BTreeMap::new();
    for (col, k) in keys.iter().enumerate() {
        let v = TensorVector(BTreeMap::from([(k.clone(), Coef::one())]));
        for (i, a) in fock.lattice().simple_roots().iter().enumerate() {
            for (out, c) in tensor_act(fock, a, 0, &v).terms() {
                rows.entry((i, out.clone())).or_insert_with(|| vec![Coef::zero(); keys.len()])[col] += *c;
            }
        }
    }
    let a: Vec<Vec<Coef>> = rows.into_values().collect();
    linalg::nullspace(&a, keys.len())
}

/// The weight-ω_j highest weight vector in L(Λ^1) ⊗ L(Λ^2); the solution
/// space must be one-dimensional.
pub fn solve_hw(fock: &Fock, j: usize, pair: (LevelOne, LevelOne)) -> Result<TensorVector> {
    let ell = fock.ell();
    if !(2..=ell - 2).contains(&j) {
        return Err(Error::InvalidInput(format!("Λ_{j} is not a level-2 fundamental weight")));
    }
    for p in [pair.0, pair.1] {
        if !matches!(p.coset(ell), Coset::SpinMinus | Coset::SpinPlus) {
            return Err(Error::InvalidInput(format!("{p} is not a spinor weight")));
        }
    }
    let basis = basic_vectors(ell, j, pair);
    if basis.is_empty() {
        return Err(Error::InvalidInput(format!("pair ({}, {}) has the wrong parity for Λ_{j}", pair.0, pair.1)));
    }
    let keys: Vec<TensorKey> = basis.iter().map(|&s| pure_pair(ell, s)).collect();
    let ns = raising_kernel(fock, &keys);
    if ns.len() != 1 {
        return Err(Error::Internal(format!("highest weight space has dimension {}", ns.len())));
    }
    // Scale to integer coefficients.
    let lcm = ns[0].iter().fold(num_bigint::BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let mut out = TensorVector::zero();
    for (k, x) in keys.into_iter().zip(&ns[0]) {
        let v = (x * num_rational::BigRational::from_integer(lcm.clone())).to_integer();
        let v = v.to_i128().ok_or_else(|| Error::Internal("coefficient overflow".into()))?;
        out.add_term(k, Coef::from_integer(v));
    }
    Ok(out)
}

/// Dominant weight written in the fundamental basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct DominantLabel(pub Vec<u32>);

impl fmt::Display for DominantLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("w{}", i + 1) } else { format!("{k}w{}", i + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub weight: String,
    pub multiplicity: usize,
    pub dimension: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub total_dimension: u64,
    pub audit_ok: bool,
}

/// Decompose the top piece of L(Λ^1) ⊗ L(Λ^2) for spinor Λ^1, Λ^2.
pub fn decompose_top(fock: &Fock, pair: (LevelOne, LevelOne)) -> Result<Decomposition> {
    let ell = fock.ell();
    let lat = fock.lattice();
    let spinors = |c: Coset| -> Result<Vec<SpinorLabel>> {
        if !matches!(c, Coset::SpinMinus | Coset::SpinPlus) {
            return Err(Error::InvalidInput("decomposition needs spinor weights".into()));
        }
        Ok((0u32..1 << ell)
            .map(SpinorLabel::from_bits)
            .filter(|s| s.weight(ell).coset().ok() == Some(c))
            .collect())
    };
    let (left, right) = (spinors(pair.0.coset(ell))?, spinors(pair.1.coset(ell))?);
    let mut blocks: BTreeMap<Weight, Vec<TensorKey>> = BTreeMap::new();
    for &a in &left {
        for &b in &right {
            let w = a.weight(ell).add(&b.weight(ell));
            if lat.is_dominant(&w) {
                blocks.entry(w).or_default().push(pure_pair(ell, (a, b)));
            }
        }
    }
    let mut summands = Vec::new();
    let mut total = 0u64;
    for (w, keys) in blocks {
        let mult = raising_kernel(fock, &keys).len();
        if mult == 0 {
            continue;
        }
        let label = DominantLabel(lat.simple_roots().iter().map(|a| w.pairing_int(a) as u32).collect());
        let dim = lat.weyl_dimension(&w);
        total += dim * mult as u64;
        summands.push(Summand { weight: label.to_string(), multiplicity: mult, dimension: dim });
    }
    summands.sort_by(|a, b| b.dimension.cmp(&a.dimension).then(a.weight.cmp(&b.weight)));
    let expected = 1u64 << (2 * (ell - 1));
    Ok(Decomposition { summands, total_dimension: total, audit_ok: total == expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Color, Lattice};

    fn fock(ell: usize) -> Fock {
        Fock::new(Lattice::new(ell).unwrap()).unwrap()
    }

    fn l1(i: usize, ell: usize) -> LevelOne {
        LevelOne::new(i, ell).unwrap()
    }

    #[test]
    fn coproduct_on_vacua() {
        let f = fock(4);
        let v = hw_vector_level2(&f, WeightSpec::parse("L0+L0", 4).unwrap()).unwrap();
        let g = Color::pos(2).root(4);
        let out = tensor_act(&f, &g, -1, &v);
        assert_eq!(out.len(), 2);
        assert_eq!(out.weight().unwrap(), g);
    }

    #[test]
    fn fundamental_two_supports() {
        let f = fock(4);
        let v = solve_hw(&f, 2, (l1(4, 4), l1(4, 4))).unwrap();
        let labels: Vec<String> = v
            .terms()
            .map(|((a, b), _)| {
                format!(
                    "{}|{}",
                    SpinorLabel::from_weight(&a.lattice).unwrap(),
                    SpinorLabel::from_weight(&b.lattice).unwrap()
                )
            })
            .collect();
        assert_eq!(labels.len(), 2);
        assert!(labels.contains(&"w12|w1234".to_string()) && labels.contains(&"w1234|w12".to_string()));
        let v = solve_hw(&f, 2, (l1(3, 4), l1(3, 4))).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.terms().all(|(_, c)| !c.is_zero()));
        for a in f.lattice().simple_roots() {
            assert!(tensor_act(&f, a, 0, &v).is_zero());
        }
    }

    #[test]
    fn wrong_parity_rejected() {
        let f = fock(4);
        assert!(solve_hw(&f, 2, (l1(3, 4), l1(4, 4))).is_err());
    }

    #[test]
    fn decompositions() {
        let f = fock(4);
        let d = decompose_top(&f, (l1(3, 4), l1(4, 4))).unwrap();
        let got: Vec<(String, usize)> = d.summands.iter().map(|s| (s.weight.clone(), s.multiplicity)).collect();
        assert_eq!(got, vec![("w3+w4".to_string(), 1), ("w1".to_string(), 1)]);
        assert!(d.audit_ok);
        let d = decompose_top(&f, (l1(4, 4), l1(4, 4))).unwrap();
        let got: Vec<&str> = d.summands.iter().map(|s| s.weight.as_str()).collect();
        assert_eq!(got, vec!["2w4", "w2", "0"]);
        assert!(d.audit_ok);
    }
}
