//! Operator identities of the q-deformed Weyl-Heisenberg algebra and the
//! canonical quantization of the damped harmonic oscillator.
//!
//! Two backends are provided. [`bargmann`] works on polynomials in the
//! Bargmann variable with exact rational coefficients, so the q-calculus
//! identities are checked with zero error. [`fock`] holds dense operators on
//! truncated Fock spaces; [`squeeze`] and [`dissipative`] build on it for the
//! squeezing, Bogoliubov and two-mode (doubled) identities, with truncation
//! handled through explicit margins and tail bounds. [`classical`] is the
//! classical damped oscillator that the quantum construction reproduces.

pub mod bargmann;
pub mod classical;
pub mod dissipative;
pub mod error;
pub mod fock;
pub mod report;
pub mod squeeze;
pub mod suite;

pub use error::{Error, Result};
