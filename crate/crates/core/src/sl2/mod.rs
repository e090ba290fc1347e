//! Exact `U_q(sl2)` computations over `ℚ(q)`.
//!
//! [`poly`] provides the scalars, [`module`] the divided-power tensor
//! modules with the coproduct action and Kashiwara operators, and
//! [`lattice`] the crystal lattice `𝓛 = 𝓛_1 ⊗ 𝓛_2` of a two-fold tensor
//! product: its singular vectors, string coordinates and the action of
//! `ẽ`, `f̃` modulo `q𝓛`.

pub mod lattice;
pub mod module;
pub mod poly;

pub use module::{Bracketing, Op, TensorVector};
pub use poly::{qbinom, qfact, qint, Poly, QScalar};
