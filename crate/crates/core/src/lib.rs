//! Exact-arithmetic Littelmann path model for untwisted affine Lie algebras.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is computed over
//! arbitrary-precision rationals; there is no floating point anywhere.
//!
//! Layout:
//!
//! * [`cartan`] and [`weight`]: affine Cartan data and the weight lattice.
//! * [`path`]: piecewise-linear paths and the root operators `e_i`, `f_i`.
//! * [`crystal`]: generic crystal machinery (closure, tensor rule,
//!   affinization, audits, isomorphism).
//! * [`energy`]: energy function on `B(ϖ_i) ⊗ B(ϖ_i)` and the major index.
//! * [`loop_embed`]: the embedding of the affinized tensor power into the
//!   affine path crystal and the decomposition check.
//! * [`sl2`]: exact `U_q(sl2)` module arithmetic over `ℚ(q)`.
//! * [`audit`]: operator identity suites shared by the CLI and the tests.

#![no_std]

extern crate alloc;

pub mod audit;
pub mod cartan;
pub mod crystal;
pub mod energy;
pub mod error;
pub mod loop_embed;
pub mod path;
pub mod rational;
pub mod report;
pub mod sl2;
pub mod weight;

pub use cartan::{CartanData, CartanType};
pub use error::{Error, Result};
pub use path::{Path, Segment};
pub use rational::Q;
pub use weight::{Ambient, Weight};
