//! Numerical laboratory for the gap statistics of zeta zeros, the zeros of
//! ζ′, and the zeros of unit-circle polynomials and their derivatives.
//!
//! * [`polyzeros`]: unit-circle zero configurations, their polynomials,
//!   derivative zeros, and the unrolling map.
//! * [`rmt`]: Haar-random unitary (CUE) eigenangle ensembles.
//! * [`zetalab`]: zero tables and the combinatorial statistics on them.
//! * [`zetaeval`]: ζ, ζ′, ζ″, log-derivative approximations, zeros of ζ′.
//! * [`stats`]: empirical CDFs, power-law fits, and the counting functions
//!   around small normalized gaps.

pub mod error;
pub mod polyzeros;
pub mod rmt;
pub mod stats;
pub mod zetaeval;
pub mod zetalab;

pub use error::{Error, Result};
pub use num_complex::Complex64;
