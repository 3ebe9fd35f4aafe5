//! Gap probabilities of the (thinned) Airy point process.
//!
//! - [`specfun`]: special functions needed by everything else.
//! - [`fredholm`]: Nyström evaluation of the Airy-kernel Fredholm determinant
//!   F(x;s), resolvent diagonals and counting statistics.
//! - [`asymptotics`]: closed-form large-gap expansions.
//! - [`parametrix`]: Airy, Bessel and confluent hypergeometric model
//!   Riemann-Hilbert solutions with jump and asymptotic checks.

#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::needless_range_loop,
    clippy::excessive_precision
)]

pub mod asymptotics;
pub mod beta;
pub mod dd;
pub mod error;
pub mod fredholm;
pub mod parametrix;
pub mod specfun;

pub use beta::Beta;
pub use error::{Error, Result};
