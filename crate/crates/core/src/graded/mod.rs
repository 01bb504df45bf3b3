//! Graded components of polynomial rings: monomial ranking, homogeneous forms, the group
//! action and echelon subspaces.

pub mod action;
pub mod form;
pub mod monomial;
pub mod subspace;

pub use action::GradedAction;
pub use form::{kill_variables, multiply, Form};
pub use monomial::{basis, monomial_count, MonomialBasis};
pub use subspace::Subspace;
