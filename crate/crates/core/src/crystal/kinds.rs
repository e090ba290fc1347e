use alloc::format;

use super::{CrystalGraph, CrystalKind, Link};
use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::path::Path;
use crate::rational;
use crate::weight::{Ambient, Weight};

/// Paths under the root operators `e_i`, `f_i`.
#[derive(Debug, Clone, Copy)]
pub struct PathCrystal<'a> {
    pub cartan: &'a CartanData,
    pub ambient: Ambient,
}

impl<'a> PathCrystal<'a> {
    pub fn new(cartan: &'a CartanData, ambient: Ambient) -> Self {
        PathCrystal { cartan, ambient }
    }

    fn check(&self, x: &Path) -> Result<()> {
        if x.ambient() != self.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }
}

impl CrystalKind for PathCrystal<'_> {
    type Elem = Path;

    fn num_labels(&self) -> usize {
        self.cartan.size()
    }

    fn raise(&self, x: &Path, i: usize) -> Result<Option<Path>> {
        self.check(x)?;
        x.raise(self.cartan, i)
    }

    fn lower(&self, x: &Path, i: usize) -> Result<Option<Path>> {
        self.check(x)?;
        x.lower(self.cartan, i)
    }

    fn epsilon(&self, x: &Path, i: usize) -> Result<i64> {
        x.epsilon(self.cartan, i)
    }

    fn phi(&self, x: &Path, i: usize) -> Result<i64> {
        x.phi(self.cartan, i)
    }

    fn weight(&self, x: &Path) -> Result<Weight> {
        self.check(x)?;
        Ok(x.endpoint())
    }

    fn is_affine(&self) -> bool {
        self.ambient == Ambient::Affine
    }
}

/// A closed generated crystal used as a lookup table.
#[derive(Debug, Clone, Copy)]
pub struct FiniteCrystal<'g, E> {
    pub graph: &'g CrystalGraph<E>,
}

impl<'g, E: Clone + Ord + core::fmt::Debug> FiniteCrystal<'g, E> {
    pub fn new(graph: &'g CrystalGraph<E>) -> Result<Self> {
        if graph.truncated() {
            return Err(Error::Truncated);
        }
        Ok(FiniteCrystal { graph })
    }

    fn index(&self, x: &E) -> Result<usize> {
        self.graph.index_of(x).ok_or_else(|| Error::Unregistered(format!("{x:?}")))
    }

    fn follow(&self, l: Link) -> Result<Option<E>> {
        match l {
            Link::Null => Ok(None),
            Link::Node(k) => Ok(Some(self.graph.node(k).clone())),
            Link::Outside => Err(Error::Truncated),
        }
    }
}

impl<E: Clone + Ord + core::fmt::Debug> CrystalKind for FiniteCrystal<'_, E> {
    type Elem = E;

    fn num_labels(&self) -> usize {
        self.graph.num_labels()
    }

    fn raise(&self, x: &E, i: usize) -> Result<Option<E>> {
        self.follow(self.graph.raise_link(self.index(x)?, i))
    }

    fn lower(&self, x: &E, i: usize) -> Result<Option<E>> {
        self.follow(self.graph.lower_link(self.index(x)?, i))
    }

    fn epsilon(&self, x: &E, i: usize) -> Result<i64> {
        Ok(self.graph.epsilon(self.index(x)?, i))
    }

    fn phi(&self, x: &E, i: usize) -> Result<i64> {
        Ok(self.graph.phi(self.index(x)?, i))
    }

    fn weight(&self, x: &E) -> Result<Weight> {
        Ok(self.graph.weight(self.index(x)?).clone())
    }
}

/// `F^{(s)} v` in the crystal `B(t)` of the `(t+1)`-dimensional
/// `sl2`-module: `ε = s`, `φ = t − s`, weight `t − 2s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sl2Elem {
    pub t: u32,
    pub s: u32,
}

/// The single-label crystals `B(t)`; elements carry their own `t`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sl2Crystal;

impl Sl2Crystal {
    fn check(x: &Sl2Elem, i: usize) -> Result<()> {
        if i != 0 {
            return Err(Error::IndexOutOfRange { index: i, size: 1 });
        }
        if x.s > x.t {
            return Err(Error::Invalid(format!("string position {} exceeds {}", x.s, x.t)));
        }
        Ok(())
    }
}

impl CrystalKind for Sl2Crystal {
    type Elem = Sl2Elem;

    fn num_labels(&self) -> usize {
        1
    }

    fn raise(&self, x: &Sl2Elem, i: usize) -> Result<Option<Sl2Elem>> {
        Self::check(x, i)?;
        Ok((x.s > 0).then(|| Sl2Elem { t: x.t, s: x.s - 1 }))
    }

    fn lower(&self, x: &Sl2Elem, i: usize) -> Result<Option<Sl2Elem>> {
        Self::check(x, i)?;
        Ok((x.s < x.t).then(|| Sl2Elem { t: x.t, s: x.s + 1 }))
    }

    fn epsilon(&self, x: &Sl2Elem, i: usize) -> Result<i64> {
        Self::check(x, i)?;
        Ok(i64::from(x.s))
    }

    fn phi(&self, x: &Sl2Elem, i: usize) -> Result<i64> {
        Self::check(x, i)?;
        Ok(i64::from(x.t - x.s))
    }

    fn weight(&self, x: &Sl2Elem) -> Result<Weight> {
        Ok(Weight::classical(alloc::vec![rational::int(i64::from(x.t) - 2 * i64::from(x.s))]))
    }
}
