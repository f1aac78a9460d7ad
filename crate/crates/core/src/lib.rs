//! Exact computations with solid commutative rings.
//!
//! A ring is *solid* when it admits at most one morphism to any other ring.
//! Up to isomorphism a solid ring is named by [`SolidData`]: an eventually
//! constant exponent function `e: P -> N ∪ {inf}` and a binary parameter `q`.
//! The *core* of a ring is its largest solid subring; [`engine::core`]
//! computes it for every ring expressible in the [`expr`] language.
//!
//! [`oracle`] holds brute-force checks on finite rings that the symbolic
//! rules are tested against.

pub mod arith;
pub mod elements;
pub mod engine;
mod error;
pub mod expfun;
pub mod expr;
pub mod extnat;
pub mod oracle;
pub mod prime;
pub mod solid;
mod text;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use expfun::{ExpFun, Support};
pub use extnat::ExtNat;
pub use prime::{Prime, PrimeSet, SetMode};
pub use solid::{ColimitBound, SolidData, SolidType, TorsionInvariants};
