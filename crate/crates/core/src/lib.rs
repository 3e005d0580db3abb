//! Exact Plücker and Cartan maps on the Grassmannian of `N`-planes in `V ⊕ V*`.
//!
//! Everything is computed over the rationals; identities are checked by exact
//! equality, or by exact projective equality where only a point of projective
//! space is meaningful.

pub mod error;
pub mod exterior;
pub mod grassmann;
pub mod identities;
pub mod indexset;
pub mod linalg;
pub mod partition;
pub mod rational;
pub mod suite;

pub use error::{Error, Result};
pub use indexset::{IndexSet, Sign};
pub use linalg::{det_exact, pfaffian, Matrix, SkewMatrix};
pub use rational::Rational;
pub use suite::{Suite, SuiteSummary};
