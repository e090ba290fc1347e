//! Weights over the basis `{Λ_0, …, Λ_ℓ, δ}`.
//!
//! A weight carries the pairings `⟨α_i^∨, λ⟩` directly as its coordinates.
//! The δ-coordinate is present exactly when the weight lives in the affine
//! ambient `P̂`; a classical weight lives in `P = P̂/ℤδ`. Arithmetic between
//! the two ambients is rejected.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ambient {
    Classical,
    Affine,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    coords: Vec<Q>,
    delta: Option<Q>,
}

impl Weight {
    pub fn classical(coords: Vec<Q>) -> Self {
        Weight { coords, delta: None }
    }

    pub fn affine(coords: Vec<Q>, delta: Q) -> Self {
        Weight { coords, delta: Some(delta) }
    }

    pub fn zero(size: usize, ambient: Ambient) -> Self {
        let coords = alloc::vec![Q::zero(); size];
        match ambient {
            Ambient::Classical => Weight::classical(coords),
            Ambient::Affine => Weight::affine(coords, Q::zero()),
        }
    }

    pub fn from_ints(coords: &[i64], delta: Option<i64>) -> Self {
        Weight { coords: coords.iter().map(|&c| rational::int(c)).collect(), delta: delta.map(rational::int) }
    }

    pub fn ambient(&self) -> Ambient {
        if self.delta.is_some() {
            Ambient::Affine
        } else {
            Ambient::Classical
        }
    }

    /// Number of `Λ` coordinates, i.e. `ℓ + 1`.
    pub fn size(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// `⟨α_i^∨, λ⟩`. Panics if `i` is out of range.
    pub fn coord(&self, i: usize) -> &Q {
        &self.coords[i]
    }

    pub fn delta(&self) -> Option<&Q> {
        self.delta.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero) && self.delta.as_ref().is_none_or(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer()) && self.delta.as_ref().is_none_or(|d| d.is_integer())
    }

    /// Lifts a classical weight to `P̂` with the given δ-coordinate; on an
    /// affine weight the δ-coordinate is replaced.
    pub fn with_delta(&self, delta: Q) -> Self {
        Weight { coords: self.coords.clone(), delta: Some(delta) }
    }

    /// The classical projection `ξ`: forgets the δ-coordinate.
    pub fn without_delta(&self) -> Self {
        Weight { coords: self.coords.clone(), delta: None }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Weight { coords: self.coords.iter().map(|x| x * c).collect(), delta: self.delta.as_ref().map(|d| d * c) }
    }

    fn compatible(&self, other: &Weight) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch);
        }
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch(self.size(), other.size()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Weight) -> Result<Weight> {
        self.compatible(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Weight) -> Result<Weight> {
        self.compatible(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Weight, op: impl Fn(&Q, &Q) -> Q) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| op(a, b)).collect(),
            delta: match (&self.delta, &other.delta) {
                (Some(a), Some(b)) => Some(op(a, b)),
                _ => None,
            },
        }
    }

    /// If `other = c · self` with `c > 0`, returns `c`.
    pub fn positive_ratio(&self, other: &Weight) -> Option<Q> {
        if self.compatible(other).is_err() {
            return None;
        }
        let pivot = self.coords.iter().chain(self.delta.iter()).position(|x| !x.is_zero())?;
        let get = |w: &Weight, k: usize| -> Q {
            if k < w.coords.len() {
                w.coords[k].clone()
            } else {
                w.delta.clone().unwrap_or_default()
            }
        };
        let c = get(other, pivot) / get(self, pivot);
        if !c.is_positive() {
            return None;
        }
        (self.scale(&c) == *other).then_some(c)
    }

    /// Coordinates as `p/q` strings, δ last when present.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().chain(self.delta.iter()).map(rational::to_string).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        if let Some(d) = &self.delta {
            write!(f, "|{d}")?;
        }
        f.write_str(")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{}", format!("weight addition: {e}")))
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{}", format!("weight subtraction: {e}")))
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { coords: self.coords.iter().map(|x| -x).collect(), delta: self.delta.as_ref().map(|d| -d) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn mixing_ambients_is_rejected() {
        let a = Weight::from_ints(&[1, -1], None);
        let b = Weight::from_ints(&[1, -1], Some(0));
        assert_eq!(a.try_add(&b), Err(Error::AmbientMismatch));
        assert!(a.try_add(&a).is_ok());
    }

    #[test]
    fn positive_ratio_detects_collinearity() {
        let a = Weight::from_ints(&[-1, 1], Some(2));
        let b = a.scale(&frac(3, 2));
        assert_eq!(a.positive_ratio(&b), Some(frac(3, 2)));
        assert_eq!(a.positive_ratio(&-&a), None);
        assert_eq!(a.positive_ratio(&Weight::from_ints(&[-1, 1], Some(3))), None);
        assert_eq!(Weight::zero(2, Ambient::Affine).positive_ratio(&a), None);
    }

    #[test]
    fn integrality() {
        assert!(Weight::from_ints(&[2, -2], Some(1)).is_integral());
        assert!(!Weight::classical(alloc::vec![frac(1, 2), int(0)]).is_integral());
    }
}
