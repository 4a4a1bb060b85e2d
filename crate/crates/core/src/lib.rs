//! Numerics for perfect symmetric sets on the circle, Beurling weighted
//! Fourier algebras and operators whose spectrum lies in such sets.
//!
//! The crate is organised bottom-up:
//!
//! * [`cantor`] builds `E_ξ`, its level covers, gaps, distances and the
//!   discretized Cantor–Lebesgue measure.
//! * [`series`] and [`weights`] provide truncated Fourier series, weights
//!   and weighted norms; [`regularizer`] builds the point regularizers `u_n`.
//! * [`herz`] implements the piecewise-polynomial interpolation kernel, the
//!   interpolants `f_{N,p}` and their norm bounds.
//! * [`outer`] constructs outer functions with prescribed modulus near the set.
//! * [`model`] realizes the compressed shift on a model space and certifies
//!   lower bounds for the norms of its inverse powers.
//! * [`harness`] drives all of the above from the command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cantor;
pub mod error;
pub mod fit;
pub mod harness;
pub mod herz;
pub mod model;
pub mod outer;
pub mod regularizer;
pub mod series;
pub mod special;
pub mod weights;

pub use num_complex::Complex64;

pub use cantor::{Angle, Arc, CantorLevel, DiscreteMeasure, Metric, PerfectSymmetricSet};
pub use error::{Error, ErrorCategory, Result};
pub use fit::{growth_exponent_fit, LinearFit};
pub use herz::{DeltaKernel, Interpolant};
pub use model::{ProjectionTable, SingularInnerApprox};
pub use outer::{LogModulusProfile, OuterApprox};
pub use series::FourierSeries;
pub use weights::Weight;
