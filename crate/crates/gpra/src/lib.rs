//! Strain demand and reliability analysis of buried steel pipelines subjected
//! to permanent ground displacement.
//!
//! The pipeline is modeled as an Euler-Bernoulli beam on nonlinear soil
//! springs, with a biaxial smooth elastoplastic steel law and fiber-integrated
//! section forces. Two solvers share that formulation:
//!
//! * [`surrogate`] — a parametric physics-informed neural network mapping
//!   `(x, delta, c, phi, gamma, H)` to axial/lateral displacements, trained by
//!   minimizing governing-equation residuals at collocation points;
//! * [`fdm`] — an independent finite-difference reference solver used to
//!   verify the surrogate and as a fallback demand evaluator.
//!
//! [`reliability`] drives Monte-Carlo probability-of-failure estimation and
//! perturbation sensitivity studies over uncertain soil and ground-movement
//! parameters, using either solver as the strain-demand evaluator.

pub mod autodiff;
pub mod config;
pub mod error;
pub mod fdm;
pub mod material;
pub mod reliability;
pub mod report;
pub mod scenario;
pub mod section;
pub mod soil;
pub mod surrogate;

pub use error::{Error, Result};
