use alloc::vec::Vec;

use super::CrystalKind;
use crate::error::{Error, Result};
use crate::rational;
use crate::weight::Weight;

/// `b_1 ⊗ … ⊗ b_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor<E> {
    pub factors: Vec<E>,
}

impl<E> Tensor<E> {
    pub fn new(factors: Vec<E>) -> Self {
        Tensor { factors }
    }
}

/// Tensor words over a base kind, with the Kashiwara tensor product rule.
///
/// With `r_k = ε_i(b_k) − Σ_{j<k} ⟨α_i^∨, wt b_j⟩`, `ε_i` of the word is
/// `max_k r_k`; `e_i` acts on the leftmost factor attaining the maximum and
/// `f_i` on the rightmost one.
#[derive(Debug, Clone)]
pub struct TensorCrystal<K> {
    pub base: K,
}

impl<K: CrystalKind> TensorCrystal<K> {
    pub fn new(base: K) -> Self {
        TensorCrystal { base }
    }

    /// `(max_k r_k, leftmost argmax, rightmost argmax)`.
    fn signature(&self, x: &Tensor<K::Elem>, i: usize) -> Result<(i64, usize, usize)> {
        if x.factors.is_empty() {
            return Err(Error::Invalid("empty tensor word".into()));
        }
        let mut prefix = 0i64;
        let mut best = (i64::MIN, 0, 0);
        for (k, b) in x.factors.iter().enumerate() {
            let r = self.base.epsilon(b, i)? - prefix;
            if r > best.0 {
                best = (r, k, k);
            } else if r == best.0 {
                best.2 = k;
            }
            prefix += self.base.phi(b, i)? - self.base.epsilon(b, i)?;
        }
        Ok(best)
    }

    fn replace(x: &Tensor<K::Elem>, k: usize, b: K::Elem) -> Tensor<K::Elem> {
        let mut factors = x.factors.clone();
        factors[k] = b;
        Tensor { factors }
    }
}

impl<K: CrystalKind> CrystalKind for TensorCrystal<K> {
    type Elem = Tensor<K::Elem>;

    fn num_labels(&self) -> usize {
        self.base.num_labels()
    }

    fn raise(&self, x: &Self::Elem, i: usize) -> Result<Option<Self::Elem>> {
        let (max, left, _) = self.signature(x, i)?;
        if max <= 0 {
            return Ok(None);
        }
        Ok(self.base.raise(&x.factors[left], i)?.map(|b| Self::replace(x, left, b)))
    }

    fn lower(&self, x: &Self::Elem, i: usize) -> Result<Option<Self::Elem>> {
        let (_, _, right) = self.signature(x, i)?;
        Ok(self.base.lower(&x.factors[right], i)?.map(|b| Self::replace(x, right, b)))
    }

    fn epsilon(&self, x: &Self::Elem, i: usize) -> Result<i64> {
        Ok(self.signature(x, i)?.0.max(0))
    }

    fn phi(&self, x: &Self::Elem, i: usize) -> Result<i64> {
        let eps = self.epsilon(x, i)?;
        let wt = self.weight(x)?;
        let p = rational::to_i64(wt.coord(i)).ok_or_else(|| Error::NonIntegral(alloc::format!("{wt}")))?;
        Ok(eps + p)
    }

    fn weight(&self, x: &Self::Elem) -> Result<Weight> {
        let mut it = x.factors.iter();
        let first = it.next().ok_or_else(|| Error::Invalid("empty tensor word".into()))?;
        let mut w = self.base.weight(first)?;
        for b in it {
            w = w.try_add(&self.base.weight(b)?)?;
        }
        Ok(w)
    }

    fn is_affine(&self) -> bool {
        self.base.is_affine()
    }
}
