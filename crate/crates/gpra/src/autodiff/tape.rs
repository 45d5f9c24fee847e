//! Reverse-accumulation tape for scalar gradients.
//!
//! [`Var`]s record every smooth operation onto a [`Tape`] together with the
//! local partial derivatives; a reverse sweep then yields the gradient of a
//! scalar output with respect to every registered leaf. Constants carry a
//! sentinel index and cost no tape nodes, so lifting material and soil
//! parameters into a taped computation is free.
//!
//! Tapes are single-threaded by design; parallel gradient evaluation gives
//! each worker its own tape and reduces the per-point gradients in a fixed
//! order (see the training loop).

use super::Scalar;
use std::cell::RefCell;
use std::ops::{Add, Div, Mul, Neg, Sub};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Node {
    parents: [u32; 2],
    partials: [f64; 2],
}

#[derive(Default)]
pub struct Tape {
    nodes: RefCell<Vec<Node>>,
}

impl Tape {
    pub fn new() -> Self {
        Tape {
            nodes: RefCell::new(Vec::with_capacity(1 << 16)),
        }
    }

    /// Register a differentiable leaf (a parameter).
    pub fn var(&self, val: f64) -> Var<'_> {
        let idx = self.push(Node {
            parents: [NONE, NONE],
            partials: [0.0, 0.0],
        });
        Var {
            tape: self,
            idx,
            val,
        }
    }

    /// A constant; records nothing.
    pub fn constant(&self, val: f64) -> Var<'_> {
        Var {
            tape: self,
            idx: NONE,
            val,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Drop every node past `mark`, keeping earlier leaves valid. Used to
    /// rewind to the registered parameters between per-point evaluations.
    pub fn truncate(&self, mark: usize) {
        self.nodes.borrow_mut().truncate(mark);
    }

    fn push(&self, node: Node) -> u32 {
        let mut nodes = self.nodes.borrow_mut();
        let idx = nodes.len() as u32;
        nodes.push(node);
        idx
    }

    /// Reverse sweep from `output`, accumulating `scale * d(output)/d(leaf_i)`
    /// into `grad[i]` for the first `grad.len()` nodes. `adjoint` is a
    /// scratch buffer reused across calls.
    pub fn accumulate_gradient(&self, output: Var<'_>, scale: f64, grad: &mut [f64], adjoint: &mut Vec<f64>) {
        let nodes = self.nodes.borrow();
        let n = nodes.len();
        if output.idx == NONE {
            return; // constant output: zero gradient
        }
        adjoint.clear();
        adjoint.resize(n, 0.0);
        adjoint[output.idx as usize] = 1.0;
        for k in (0..n).rev() {
            let a = adjoint[k];
            if a == 0.0 {
                continue;
            }
            let node = &nodes[k];
            for s in 0..2 {
                let p = node.parents[s];
                if p != NONE {
                    adjoint[p as usize] += node.partials[s] * a;
                }
            }
        }
        for (g, a) in grad.iter_mut().zip(adjoint.iter()) {
            *g += scale * a;
        }
    }

    /// Gradient of `output` with respect to the first `n_params` leaves.
    pub fn gradient(&self, output: Var<'_>, n_params: usize) -> Vec<f64> {
        let mut grad = vec![0.0; n_params];
        let mut adjoint = Vec::new();
        self.accumulate_gradient(output, 1.0, &mut grad, &mut adjoint);
        grad
    }
}

/// A scalar value recorded on a [`Tape`].
#[derive(Clone, Copy)]
pub struct Var<'t> {
    tape: &'t Tape,
    idx: u32,
    val: f64,
}

impl<'t> Var<'t> {
    #[inline]
    fn unary(self, val: f64, d: f64) -> Self {
        if self.idx == NONE {
            return Var {
                tape: self.tape,
                idx: NONE,
                val,
            };
        }
        let idx = self.tape.push(Node {
            parents: [self.idx, NONE],
            partials: [d, 0.0],
        });
        Var {
            tape: self.tape,
            idx,
            val,
        }
    }

    #[inline]
    fn binary(self, rhs: Self, val: f64, da: f64, db: f64) -> Self {
        if self.idx == NONE && rhs.idx == NONE {
            return Var {
                tape: self.tape,
                idx: NONE,
                val,
            };
        }
        let idx = self.tape.push(Node {
            parents: [self.idx, rhs.idx],
            partials: [da, db],
        });
        Var {
            tape: self.tape,
            idx,
            val,
        }
    }
}

impl<'t> Add for Var<'t> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        self.binary(rhs, self.val + rhs.val, 1.0, 1.0)
    }
}

impl<'t> Sub for Var<'t> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self.binary(rhs, self.val - rhs.val, 1.0, -1.0)
    }
}

impl<'t> Mul for Var<'t> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.binary(rhs, self.val * rhs.val, rhs.val, self.val)
    }
}

impl<'t> Div for Var<'t> {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        let inv = 1.0 / rhs.val;
        self.binary(rhs, self.val * inv, inv, -self.val * inv * inv)
    }
}

impl<'t> Neg for Var<'t> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self.unary(-self.val, -1.0)
    }
}

impl<'t> Scalar for Var<'t> {
    #[inline(always)]
    fn value(self) -> f64 {
        self.val
    }

    #[inline]
    fn lift(self, v: f64) -> Self {
        Var {
            tape: self.tape,
            idx: NONE,
            val: v,
        }
    }

    #[inline]
    fn scale(self, c: f64) -> Self {
        self.unary(self.val * c, c)
    }

    #[inline]
    fn add_const(self, c: f64) -> Self {
        self.unary(self.val + c, 1.0)
    }

    fn tanh(self) -> Self {
        let t = self.val.tanh();
        self.unary(t, 1.0 - t * t)
    }

    fn exp(self) -> Self {
        let e = self.val.exp();
        self.unary(e, e)
    }

    fn ln(self) -> Self {
        self.unary(self.val.ln(), 1.0 / self.val)
    }

    fn sqrt(self) -> Self {
        let s = self.val.sqrt();
        self.unary(s, 0.5 / s)
    }

    fn powf(self, a: f64) -> Self {
        let v = self.val.powf(a);
        self.unary(v, a * self.val.powf(a - 1.0))
    }

    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return self.lift(1.0);
        }
        let v = self.val.powi(n);
        self.unary(v, n as f64 * self.val.powi(n - 1))
    }

    fn abs(self) -> Self {
        if self.val < 0.0 {
            -self
        } else {
            self
        }
    }
}
