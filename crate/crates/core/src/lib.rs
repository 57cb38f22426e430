//! Rees quotients of numerical semigroups: construction, presentations,
//! isomorphism testing, nilpotent varieties and structural recognition.

pub mod catalog;
pub mod decider;
pub mod error;
pub mod finite;
pub mod ideal;
pub mod morphism;
pub mod numerical;
pub mod presentation;
pub mod quotient;
mod text;
pub mod variety;

pub use decider::{Certificate, ClassName, Verdict};
pub use error::{Error, ParseError, Result};
pub use finite::FiniteSemigroup;
pub use ideal::Ideal;
pub use morphism::SemigroupMap;
pub use numerical::NumericalSemigroup;
pub use presentation::{CommutativeWord, Presentation};
pub use quotient::ReesQuotient;
pub use variety::Identity;
