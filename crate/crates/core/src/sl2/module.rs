//! Tensor products `V(t_1) ⊗ … ⊗ V(t_k)` of simple `U_q(sl2)`-modules in
//! the divided-power basis, with the coproduct action of `E^{(r)}`,
//! `F^{(r)}`, `K^{±1}` and the Kashiwara operators.
//!
//! On one factor, with `b_s = F^{(s)} v`:
//! `K b_s = q^{t−2s} b_s`, `F^{(r)} b_s = [s+r choose r] b_{s+r}`,
//! `E^{(r)} b_s = [t−s+r choose r] b_{s−r}`.
//! The coproduct is
//! `Δ(F^{(r)}) = Σ_s q^{−s(r−s)} F^{(r−s)} K^s ⊗ F^{(s)}` and
//! `Δ(E^{(r)}) = Σ_s q^{−s(r−s)} E^{(s)} ⊗ E^{(r−s)} K^{−s}`.

use alloc::boxed::Box;
use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::poly::{qbinom, QScalar};
use crate::error::{Error, Result};

/// A basic operator on a module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    /// `E^{(r)}`
    E(u32),
    /// `F^{(r)}`
    F(u32),
    /// `K^k`
    K(i64),
}

/// A bracketing of the tensor factors, used to apply the coproduct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bracketing {
    Leaf(usize),
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    /// `((V_0 ⊗ V_1) ⊗ V_2) ⊗ …`
    pub fn left_comb(k: usize) -> Self {
        assert!(k > 0, "at least one factor");
        (1..k).fold(Bracketing::Leaf(0), |acc, j| Bracketing::Node(Box::new(acc), Box::new(Bracketing::Leaf(j))))
    }

    /// `V_0 ⊗ (V_1 ⊗ (V_2 ⊗ …))`
    pub fn right_comb(k: usize) -> Self {
        assert!(k > 0, "at least one factor");
        (0..k - 1)
            .rev()
            .fold(Bracketing::Leaf(k - 1), |acc, j| Bracketing::Node(Box::new(Bracketing::Leaf(j)), Box::new(acc)))
    }
}

/// A vector of `V(t_1) ⊗ … ⊗ V(t_k)` in the basis
/// `F^{(s_1)} v_1 ⊗ … ⊗ F^{(s_k)} v_k`. Zero coordinates are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorVector {
    shape: Vec<u32>,
    coords: BTreeMap<Vec<u32>, QScalar>,
}

impl TensorVector {
    pub fn zero(shape: &[u32]) -> Self {
        TensorVector { shape: shape.to_vec(), coords: BTreeMap::new() }
    }

    pub fn basis(shape: &[u32], index: &[u32]) -> Result<Self> {
        if index.len() != shape.len() || index.iter().zip(shape).any(|(s, t)| s > t) {
            return Err(Error::ShapeMismatch);
        }
        let mut v = TensorVector::zero(shape);
        v.coords.insert(index.to_vec(), QScalar::one());
        Ok(v)
    }

    /// All basis indices of a shape, in lexicographic order.
    pub fn indices(shape: &[u32]) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &t in shape {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=t).map(move |s| {
                        let mut p = prefix.clone();
                        p.push(s);
                        p
                    })
                })
                .collect();
        }
        out
    }

    pub fn shape(&self) -> &[u32] {
        &self.shape
    }

    pub fn coords(&self) -> &BTreeMap<Vec<u32>, QScalar> {
        &self.coords
    }

    pub fn coord(&self, index: &[u32]) -> QScalar {
        self.coords.get(index).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Weight `Σ (t_j − 2 s_j)` of a basis index.
    pub fn index_weight(shape: &[u32], index: &[u32]) -> i64 {
        shape.iter().zip(index).map(|(&t, &s)| i64::from(t) - 2 * i64::from(s)).sum()
    }

    /// The common weight of all nonzero coordinates.
    pub fn weight(&self) -> Result<Option<i64>> {
        let mut ws = self.coords.keys().map(|k| Self::index_weight(&self.shape, k));
        let Some(first) = ws.next() else {
            return Ok(None);
        };
        if ws.any(|w| w != first) {
            return Err(Error::NotHomogeneous);
        }
        Ok(Some(first))
    }

    fn add_term(&mut self, index: Vec<u32>, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.coords.entry(index) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn try_add(&self, other: &TensorVector) -> Result<TensorVector> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.coords {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &TensorVector) -> Result<TensorVector> {
        self.try_add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> TensorVector {
        if c.is_zero() {
            return TensorVector::zero(&self.shape);
        }
        TensorVector {
            shape: self.shape.clone(),
            coords: self.coords.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    /// Minimum valuation at `q = 0` over the coordinates (`None` for zero).
    pub fn valuation(&self) -> Option<i64> {
        self.coords.values().filter_map(QScalar::valuation).min()
    }

    /// Whether every coordinate is regular at `q = 0`.
    pub fn in_lattice(&self) -> bool {
        self.coords.values().all(QScalar::in_local_ring)
    }

    /// Acts by a single factor operator on factor `j`.
    fn act_on_factor(&self, op: Op, j: usize) -> TensorVector {
        let t = self.shape[j];
        let mut out = TensorVector::zero(&self.shape);
        for (idx, c) in &self.coords {
            let s = idx[j];
            let (target, coeff) = match op {
                Op::K(k) => (Some(s), QScalar::q_pow(k * (i64::from(t) - 2 * i64::from(s)))),
                Op::F(r) => {
                    if s + r <= t {
                        (Some(s + r), qbinom(s + r, r))
                    } else {
                        (None, QScalar::zero())
                    }
                }
                Op::E(r) => {
                    if r <= s {
                        (Some(s - r), qbinom(t - s + r, r))
                    } else {
                        (None, QScalar::zero())
                    }
                }
            };
            if let Some(s2) = target {
                let mut idx2 = idx.clone();
                idx2[j] = s2;
                out.add_term(idx2, &(c * &coeff));
            }
        }
        out
    }

    /// Applies `op` through the coproduct along `tree`.
    pub fn act_with(&self, op: Op, tree: &Bracketing) -> TensorVector {
        match tree {
            Bracketing::Leaf(j) => self.act_on_factor(op, *j),
            Bracketing::Node(left, right) => match op {
                Op::K(k) => self.act_with(op, left).act_with(Op::K(k), right),
                Op::F(r) => {
                    let mut out = TensorVector::zero(&self.shape);
                    for s in 0..=r {
                        let c = QScalar::q_pow(-i64::from(s) * i64::from(r - s));
                        // F^{(r−s)} K^s on the left, F^{(s)} on the right.
                        let term = self
                            .act_with(Op::K(i64::from(s)), left)
                            .act_with(Op::F(r - s), left)
                            .act_with(Op::F(s), right);
                        out = out.try_add(&term.scale(&c)).expect("same shape");
                    }
                    out
                }
                Op::E(r) => {
                    let mut out = TensorVector::zero(&self.shape);
                    for s in 0..=r {
                        let c = QScalar::q_pow(-i64::from(s) * i64::from(r - s));
                        // E^{(s)} on the left, E^{(r−s)} K^{−s} on the right.
                        let term = self
                            .act_with(Op::E(s), left)
                            .act_with(Op::K(-i64::from(s)), right)
                            .act_with(Op::E(r - s), right);
                        out = out.try_add(&term.scale(&c)).expect("same shape");
                    }
                    out
                }
            },
        }
    }

    /// Applies `op` with the left-comb bracketing.
    pub fn act(&self, op: Op) -> TensorVector {
        self.act_with(op, &Bracketing::left_comb(self.shape.len()))
    }

    /// Top weight `Σ t_j`.
    pub fn top_weight(&self) -> i64 {
        self.shape.iter().map(|&t| i64::from(t)).sum()
    }

    /// The unique decomposition `v = Σ_s F^{(s)} u_s` with `E u_s = 0`,
    /// for weight-homogeneous `v`. Returns the nonzero `(s, u_s)`.
    pub fn string_decompose(&self) -> Result<Vec<(u32, TensorVector)>> {
        let Some(nu) = self.weight()? else {
            return Ok(Vec::new());
        };
        let top = self.top_weight();
        let s_max = u32::try_from((top - nu) / 2).map_err(|_| Error::ShapeMismatch)?;
        let s_min = u32::try_from((-nu).max(0)).expect("nonnegative");
        let mut rem = self.clone();
        let mut out = Vec::new();
        for s in (s_min..=s_max).rev() {
            let lambda = u32::try_from(nu + 2 * i64::from(s)).expect("nonnegative weight");
            let u = rem.act(Op::E(s)).scale(&qbinom(lambda, s).inv()?);
            if u.is_zero() {
                continue;
            }
            rem = rem.try_sub(&u.act(Op::F(s)))?;
            out.push((s, u));
        }
        if !rem.is_zero() {
            return Err(Error::Invalid("string decomposition left a remainder".into()));
        }
        out.reverse();
        Ok(out)
    }

    /// `ẽ v = Σ_s F^{(s−1)} u_s`.
    pub fn kashiwara_e(&self) -> Result<TensorVector> {
        let mut out = TensorVector::zero(&self.shape);
        for (s, u) in self.string_decompose()? {
            if s > 0 {
                out = out.try_add(&u.act(Op::F(s - 1)))?;
            }
        }
        Ok(out)
    }

    /// `f̃ v = Σ_s F^{(s+1)} u_s`.
    pub fn kashiwara_f(&self) -> Result<TensorVector> {
        let mut out = TensorVector::zero(&self.shape);
        for (s, u) in self.string_decompose()? {
            out = out.try_add(&u.act(Op::F(s + 1)))?;
        }
        Ok(out)
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        for (k, (idx, c)) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·{idx:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> QScalar {
        QScalar::q_pow(k)
    }

    #[test]
    fn e_on_v_tensor_fv() {
        let v = TensorVector::basis(&[1, 1], &[0, 1]).unwrap();
        assert_eq!(v.act(Op::E(1)), TensorVector::basis(&[1, 1], &[0, 0]).unwrap());
    }

    #[test]
    fn k_is_diagonal() {
        let shape = [2, 3];
        for idx in TensorVector::indices(&shape) {
            let v = TensorVector::basis(&shape, &idx).unwrap();
            let w = TensorVector::index_weight(&shape, &idx);
            assert_eq!(v.act(Op::K(1)), v.scale(&q(w)));
        }
    }

    #[test]
    fn u1_is_singular() {
        let a = TensorVector::basis(&[1, 1], &[0, 1]).unwrap();
        let b = TensorVector::basis(&[1, 1], &[1, 0]).unwrap();
        let u1 = a.try_sub(&b.scale(&q(1))).unwrap();
        assert!(u1.act(Op::E(1)).is_zero());
    }

    #[test]
    fn string_decomposition_examples() {
        let hw = TensorVector::basis(&[1, 1], &[0, 0]).unwrap();
        assert_eq!(hw.string_decompose().unwrap(), vec![(0, hw.clone())]);
        let f2 = hw.act(Op::F(2));
        assert_eq!(f2.string_decompose().unwrap(), vec![(2, hw.clone())]);
        let v = TensorVector::basis(&[1, 1], &[0, 1]).unwrap();
        let parts = v.string_decompose().unwrap();
        assert_eq!(parts.len(), 2);
        let mut rebuilt = TensorVector::zero(&[1, 1]);
        for (s, u) in &parts {
            assert!(u.act(Op::E(1)).is_zero());
            rebuilt = rebuilt.try_add(&u.act(Op::F(*s))).unwrap();
        }
        assert_eq!(rebuilt, v);
        let mixed = hw.try_add(&v).unwrap();
        assert_eq!(mixed.string_decompose(), Err(Error::NotHomogeneous));
    }

    #[test]
    fn bracketings_agree_on_three_factors() {
        for shape in [[1u32, 1, 1], [2, 1, 1]] {
            let (l, r) = (Bracketing::left_comb(3), Bracketing::right_comb(3));
            for idx in TensorVector::indices(&shape) {
                let v = TensorVector::basis(&shape, &idx).unwrap();
                for op in [Op::E(1), Op::F(1), Op::E(2), Op::F(2), Op::K(1), Op::K(-1)] {
                    assert_eq!(v.act_with(op, &l), v.act_with(op, &r), "{op:?} on {idx:?}");
                }
            }
        }
    }
}
