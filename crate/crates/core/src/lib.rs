//! Symbolic algebra and exact evaluation for isometric representations of the
//! numerical semigroup `ℤ₊ \ {1} = ⟨2, 3⟩`, with a verifier for the identities
//! and classification criteria of its inverse representations.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod monomial;
pub mod representation;
pub mod semigroup;
pub mod state;
pub mod verifier;

pub use error::{Error, Result};
pub use monomial::{enumerate_index_zero, Kind, Monomial, NormalForm, NormalFormPair, TrivialMonomial};
pub use representation::{Disguise, Representation, RepresentationSpec};
pub use semigroup::{GroupIndex, NumericalSemigroup, SemigroupElement};
pub use state::{BasisLabel, StateVector};
