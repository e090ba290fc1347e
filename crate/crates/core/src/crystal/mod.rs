//! Generic crystal machinery.
//!
//! A [`CrystalKind`] supplies the operators of one family of elements
//! (paths, tensor words, affinized elements, `sl2` strings). Everything in
//! this module works over any kind: closure generation into a
//! [`CrystalGraph`], the tensor product rule, affinization, audits of the
//! crystal axioms and labeled-graph isomorphism.

mod affine;
mod audit;
mod graph;
mod iso;
mod kinds;
mod tensor;

use core::fmt::Debug;

use crate::error::Result;
use crate::weight::Weight;

pub use affine::{Affinization, Affinized};
pub use audit::{normality_audit, phi_epsilon_audit, quasi_inverse_audit, weight_gradient_audit};
pub use graph::{generate, CrystalGraph, GenerateOptions, Link, DEFAULT_NODE_CAP};
pub use iso::isomorphic;
pub use kinds::{FiniteCrystal, PathCrystal, Sl2Crystal, Sl2Elem};
pub use tensor::{Tensor, TensorCrystal};

/// The operators of a crystal, evaluated element by element.
pub trait CrystalKind {
    type Elem: Clone + Ord + Debug;

    /// Number of labels `|Î|`; labels are `0..num_labels()`.
    fn num_labels(&self) -> usize;

    fn raise(&self, x: &Self::Elem, i: usize) -> Result<Option<Self::Elem>>;

    fn lower(&self, x: &Self::Elem, i: usize) -> Result<Option<Self::Elem>>;

    fn epsilon(&self, x: &Self::Elem, i: usize) -> Result<i64>;

    fn phi(&self, x: &Self::Elem, i: usize) -> Result<i64>;

    fn weight(&self, x: &Self::Elem) -> Result<Weight>;

    /// Whether the crystal is infinite because of a δ-direction, so that
    /// generation needs a window on the δ-coordinate of weights.
    fn is_affine(&self) -> bool {
        false
    }
}

impl<K: CrystalKind + ?Sized> CrystalKind for &K {
    type Elem = K::Elem;

    fn num_labels(&self) -> usize {
        (**self).num_labels()
    }
    fn raise(&self, x: &Self::Elem, i: usize) -> Result<Option<Self::Elem>> {
        (**self).raise(x, i)
    }
    fn lower(&self, x: &Self::Elem, i: usize) -> Result<Option<Self::Elem>> {
        (**self).lower(x, i)
    }
    fn epsilon(&self, x: &Self::Elem, i: usize) -> Result<i64> {
        (**self).epsilon(x, i)
    }
    fn phi(&self, x: &Self::Elem, i: usize) -> Result<i64> {
        (**self).phi(x, i)
    }
    fn weight(&self, x: &Self::Elem) -> Result<Weight> {
        (**self).weight(x)
    }
    fn is_affine(&self) -> bool {
        (**self).is_affine()
    }
}
