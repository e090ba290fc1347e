use super::CrystalKind;
use crate::error::Result;
use crate::rational::{self, Q};
use crate::weight::{Ambient, Weight};

/// `b ⊗ t^n` in the affinization `B × ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Affinized<E> {
    pub base: E,
    pub degree: i64,
}

impl<E> Affinized<E> {
    pub fn new(base: E, degree: i64) -> Self {
        Affinized { base, degree }
    }
}

/// The affinization of a crystal: `e_i` raises the degree by `δ_{i,0}` and
/// `f_i` lowers it by `δ_{i,0}`; `wt(b ⊗ t^n) = wt(b) + nδ`.
#[derive(Debug, Clone)]
pub struct Affinization<K> {
    pub base: K,
}

impl<K: CrystalKind> Affinization<K> {
    pub fn new(base: K) -> Self {
        Affinization { base }
    }
}

impl<K: CrystalKind> CrystalKind for Affinization<K> {
    type Elem = Affinized<K::Elem>;

    fn num_labels(&self) -> usize {
        self.base.num_labels()
    }

    fn raise(&self, x: &Self::Elem, i: usize) -> Result<Option<Self::Elem>> {
        let shift = i64::from(i == 0);
        Ok(self.base.raise(&x.base, i)?.map(|b| Affinized::new(b, x.degree + shift)))
    }

    fn lower(&self, x: &Self::Elem, i: usize) -> Result<Option<Self::Elem>> {
        let shift = i64::from(i == 0);
        Ok(self.base.lower(&x.base, i)?.map(|b| Affinized::new(b, x.degree - shift)))
    }

    fn epsilon(&self, x: &Self::Elem, i: usize) -> Result<i64> {
        self.base.epsilon(&x.base, i)
    }

    fn phi(&self, x: &Self::Elem, i: usize) -> Result<i64> {
        self.base.phi(&x.base, i)
    }

    fn weight(&self, x: &Self::Elem) -> Result<Weight> {
        let w = self.base.weight(&x.base)?;
        let n = rational::int(x.degree);
        Ok(match w.ambient() {
            Ambient::Classical => w.with_delta(n),
            Ambient::Affine => {
                let d: Q = w.delta().cloned().unwrap_or_default() + n;
                w.with_delta(d)
            }
        })
    }

    fn is_affine(&self) -> bool {
        true
    }
}
