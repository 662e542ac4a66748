//! Computation with finite inverse semigroups, presheaves over finite
//! meet-semilattices and supported (étale) actions.
//!
//! The centre of the crate is [`munn::generalized_munn`], which builds the
//! inverse semigroup of isomorphisms between principal subpresheaves of a
//! presheaf, together with the representations of [`munn`] that relate it
//! to supported actions. Everything works on dense integer ids and flat
//! multiplication tables; all structures are immutable once validated.
//!
//! ```
//! use gmunn::zoo::{standard_example, StandardExample};
//! use gmunn::Limits;
//!
//! let i2 = standard_example(StandardExample::SymmetricInverse, 2, &Limits::default()).unwrap();
//! assert_eq!(i2.len(), 7);
//! assert!(gmunn::congruence::is_fundamental(&i2));
//! ```

pub mod actions;
pub mod congruence;
pub mod corpus;
mod error;
pub mod format;
pub mod hom;
pub mod munn;
pub mod partial;
pub mod presheaf;
pub mod semigroup;
pub mod topology;
pub mod zoo;

pub use error::{Error, Result};
pub use semigroup::InverseSemigroup;

/// Dense element id: elements of every finite structure are `0..n`.
pub type Id = usize;

/// Size caps for the exhaustive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Inputs to exhaustive operations (semigroups, carriers, lattices).
    pub max_size: usize,
    /// Semigroups whose whole congruence lattice is enumerated.
    pub max_congruence_size: usize,
    /// Structures produced by enumeration (T_E, T_X, ℐ(X,τ), La(π)).
    pub max_generated: usize,
    /// Source size for bounded homomorphism search.
    pub max_hom_source: usize,
    /// Target size for bounded homomorphism search.
    pub max_hom_target: usize,
    /// Points of a finite space (opens are stored as `u32` bitsets).
    pub max_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_size: 64,
            max_congruence_size: 16,
            max_generated: 4096,
            max_hom_source: 8,
            max_hom_target: 16,
            max_points: 16,
        }
    }
}

impl Limits {
    pub fn with_max_size(mut self, max_size: usize) -> Self {
        self.max_size = max_size;
        self
    }
}
