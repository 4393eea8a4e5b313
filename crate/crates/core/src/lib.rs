//! Holomorphic discrete series representations of SU(1,1).
//!
//! The representation `U^η`, `η ∈ {1, 3/2, 2, …}`, acts on holomorphic
//! functions on the unit disk,
//!
//! ```text
//! (U^η(g) f)(z) = (−β̄ z + α)^{−2η} f((ᾱ z − β) / (−β̄ z + α)),
//! ```
//!
//! and is described here through its matrix elements in the orthonormal
//! monomial basis `e_n(z) = √((2η)_n / n!) zⁿ`. The crate provides the
//! group itself ([`group`]), the special-function kernel ([`special`]),
//! matrix elements and truncations ([`rep_matrix`]), characters
//! ([`characters`]), Schur orthogonality ([`orthogonality`]), tensor-product
//! multiplicities ([`tensor_product`]) and the numerical verification suite
//! ([`verification`]).

pub mod characters;
pub mod error;
pub mod group;
pub mod orthogonality;
pub mod rep_matrix;
pub mod special;
pub mod tensor_product;
pub mod verification;

pub use error::{Error, Result};
pub use num_complex;
pub use group::{haar_density, CartanCoords, DiskPoint, GroupElement, HalfInteger, RepLabel};
