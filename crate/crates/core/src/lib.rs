//! Exact algebra behind the loop-category picture of modules over polynomial rings.
//!
//! A diagram over the loop category `Λⁿ` is a finite-dimensional vector space with
//! `n` commuting endomorphisms; a module over `k[T₁..Tₙ]` is the same data seen
//! through a presentation. This crate implements both sides (exact scalars,
//! polynomials, Smith normal form, Gröbner bases and syzygies, finitely presented
//! small categories and their diagrams, module presentations, chain complexes) and
//! the conversions between them, so derived invariants can be computed on each side
//! independently and compared.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bridge;
pub mod diagrams;
pub mod error;
pub mod field;
pub mod groebner;
pub mod homotopy;
pub mod matrix;
pub mod poly;
pub mod polymatrix;
pub mod polymods;
pub mod random;
pub mod smallcat;
pub mod smith;

pub use error::{AlgebraError, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use poly::{Monomial, MonomialOrder, Poly, PolyRing};
pub use polymatrix::PolyMatrix;
