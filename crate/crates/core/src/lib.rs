//! Exact arithmetic for Weil polynomials, central simple algebras, group
//! actions on abelian surfaces and zeta functions of generalized Kummer
//! surfaces over finite fields.

pub mod brauer;
pub mod citation;
pub mod congruence;
pub mod error;
pub mod existence;
pub mod golden;
pub mod groups;
pub mod kummer;
pub mod numtheory;
pub mod weil;

pub use citation::Citation;
pub use error::{Error, Result};
