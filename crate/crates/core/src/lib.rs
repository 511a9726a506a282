//! Exact computer algebra for 𝒦, the central extension of the subalgebra of the
//! Virasoro algebra spanned by `K_n = L_n - L_0`.
//!
//! Every scalar is a Gaussian rational ([`Gq`]); nothing in the algebraic core
//! touches floating point.

pub mod cohomology;
pub mod error;
pub mod exact;
pub mod ideals;
pub mod jets;
pub mod lie;
pub mod morphisms;
pub mod text;
pub mod verma;

pub use error::{Error, Result};
pub use exact::{Gq, Matrix, Rational};
pub use lie::{AlgebraKind, FourierField, LieElement, Window};
pub use text::{format_element, parse_element};
