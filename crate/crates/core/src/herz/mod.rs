//! Piecewise-polynomial interpolation on equispaced nodes of the circle.

pub mod bound;
pub mod convergence;
pub mod interpolant;
pub mod kernel;
pub mod vanishing;

pub use bound::{bound_constants, case_one_term, herz_bound, herz_bound_with, BoundConstants, HerzBound};
pub use convergence::{convergence_study, ConvergenceRow, ConvergenceTable};
pub use interpolant::{herz_interpolant, Interpolant, ResidueWeights};
pub use kernel::DeltaKernel;
pub use vanishing::{cover_residual, vanishing_on_cover, CoverResidual, VanishingReport};
