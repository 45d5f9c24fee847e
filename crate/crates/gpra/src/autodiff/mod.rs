//! Derivative engine: truncated Taylor jets in the spatial coordinate and a
//! reverse-accumulation tape for parameter gradients.
//!
//! Spatial derivatives use forward-mode jets because only one scalar input
//! (the coordinate along the pipe) is ever differentiated; the five parametric
//! inputs enter as constants per collocation point. Parameter gradients are
//! obtained by running the same jet-valued forward pass over tape variables
//! and reverse-accumulating through every jet coefficient
//! (reverse-over-forward).
//!
//! Everything downstream (steel law, fiber sums, spring laws, the network
//! forward pass) is written against the [`Scalar`] trait so a single code
//! path serves plain `f64` evaluation, jet evaluation, and taped training.

mod jet;
mod tape;

pub use jet::Jet;
pub use tape::{Tape, Var};

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic closed over the smooth primitives the physics pipeline needs.
///
/// `lift` creates a constant "in the same context" as `self` (same tape for
/// [`Var`], plain value for `f64`), which lets generic code introduce
/// constants without threading a context handle everywhere.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Primal value, used only for branching (fast paths, piecewise laws).
    fn value(self) -> f64;
    /// Constant with the same context as `self`.
    fn lift(self, v: f64) -> Self;
    /// Multiply by a plain constant.
    fn scale(self, c: f64) -> Self;
    /// Add a plain constant.
    fn add_const(self, c: f64) -> Self;
    fn tanh(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    /// Real power with constant exponent; requires a positive base.
    fn powf(self, a: f64) -> Self;
    /// Integer power by repeated squaring; total for any base.
    fn powi(self, n: i32) -> Self;
    fn abs(self) -> Self;
}

impl Scalar for f64 {
    #[inline(always)]
    fn value(self) -> f64 {
        self
    }
    #[inline(always)]
    fn lift(self, v: f64) -> Self {
        v
    }
    #[inline(always)]
    fn scale(self, c: f64) -> Self {
        self * c
    }
    #[inline(always)]
    fn add_const(self, c: f64) -> Self {
        self + c
    }
    #[inline(always)]
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    #[inline(always)]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline(always)]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline(always)]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline(always)]
    fn powf(self, a: f64) -> Self {
        f64::powf(self, a)
    }
    #[inline(always)]
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    #[inline(always)]
    fn abs(self) -> Self {
        f64::abs(self)
    }
}
