//! Finite universal algebra toolkit for relational identities.
//!
//! Load or build a [`FiniteAlgebra`], compute with relations on it
//! (compatible closure, transitive closure, alternating join, generated
//! congruences), and check identities between them: the subsquare
//! hypothesis `β(γ∘δ∘γ) ⊆ βγ + δ`, the four relational conclusions,
//! witness chains, and arbitrary statements written in the [`dsl`].

pub mod algebra;
pub mod corpus;
pub mod dsl;
pub mod error;
pub mod relations;
pub mod theorems;

pub use algebra::{generate_subuniverse, square, FiniteAlgebra, Operation, SubSquare, Subuniverse};
pub use error::{Error, Result};
pub use relations::{BinRel, Limits, Partition};
