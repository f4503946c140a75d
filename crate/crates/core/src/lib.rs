//! Metric operators for the non-Hermitian Swanson oscillator
//! `H = ω(a†a + ½) + α·a² + β·a†²`.
//!
//! The crate builds the one-parameter family of metrics `Θ(z) = S(z)²`, the
//! hermitized Hamiltonian `h_S = S·H·S⁻¹`, and the `z`-dependent observables in a
//! truncated number basis, and checks them against the closed-form scalars in
//! [`closed_forms`].
//!
//! ```
//! use swanson_metric::{closed_forms::*, operators::OperatorSet};
//!
//! let params = OscillatorParams::demo();
//! let set = OperatorSet::build(&params, &MetricChoice::standard(-0.3)?, 32)?;
//! assert!(set.quasi_hermiticity_residual()? < 1e-12);
//! # Ok::<(), swanson_metric::Error>(())
//! ```

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod linalg;
pub mod operators;
pub mod verification;

pub use closed_forms::{Branch, MetricChoice, MetricScalars, OscillatorParams, SingularBand, SpecialCase};
pub use error::{Error, Result};
pub use linalg::FockMatrix;
pub use operators::OperatorSet;
