//! Exact sequences, layouts and checks for equal circles cut from the
//! hexagonal lattice and enclosed in a circle, triangle or hexagon.
//!
//! Lengths are in units of the circle radius and live in ℚ[√3]
//! ([`exact::Root3Scalar`]); densities may carry a factor of π
//! ([`exact::PiScaled`]). See the book under `book/` for a walkthrough.

pub mod error;
pub mod exact;
pub mod layout;
pub mod oracle;
pub mod cli;
pub mod emit;
pub mod sequences;

pub use error::{Error, Result};

// The book's code listings run as doc-tests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/layouts.md")]
    mod layouts {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/output.md")]
    mod output {}
}
