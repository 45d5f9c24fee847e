//! Truncated Taylor jets.
//!
//! A `Jet<S, K>` carries `K` Taylor coefficients `c0..c{K-1}` of a scalar
//! function of one variable; the k-th derivative is `k! * ck`. Arithmetic and
//! the transcendental recurrences below are the standard truncated power
//! series formulas (Griewank & Walther, "Evaluating Derivatives", ch. 13),
//! exact at the coefficient level for the carried order.
//!
//! The coefficient type `S` is any [`Scalar`], so jets of plain `f64` give
//! spatial derivatives while jets of tape [`Var`](super::Var)s make every
//! coefficient differentiable with respect to network parameters.

use super::Scalar;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<S, const K: usize> {
    pub c: [S; K],
}

impl<S: Scalar, const K: usize> Jet<S, K> {
    /// Jet of the independent variable: value `x`, first derivative one.
    pub fn variable(x: S) -> Self {
        let mut c = [x.lift(0.0); K];
        c[0] = x;
        if K > 1 {
            c[1] = x.lift(1.0);
        }
        Jet { c }
    }

    /// Variable with a chain-rule seed `dx_inner/dx_outer` in slot one, for
    /// differentiating with respect to a coordinate that enters through an
    /// affine map (e.g. physical position behind input normalization).
    pub fn variable_scaled(x: S, seed: f64) -> Self {
        let mut c = [x.lift(0.0); K];
        c[0] = x;
        if K > 1 {
            c[1] = x.lift(seed);
        }
        Jet { c }
    }

    pub fn constant(x: S) -> Self {
        let mut c = [x.lift(0.0); K];
        c[0] = x;
        Jet { c }
    }

    /// Multiply every coefficient by an order-zero scalar (a quantity that
    /// does not depend on the jet variable, e.g. a network weight). Costs
    /// `K` scalar products instead of a full Cauchy product.
    #[inline]
    pub fn scale_s(self, s: S) -> Self {
        let mut c = self.c;
        for k in 0..K {
            c[k] = c[k] * s;
        }
        Jet { c }
    }

    /// Add an order-zero scalar to the value coefficient.
    #[inline]
    pub fn add_s(self, s: S) -> Self {
        let mut c = self.c;
        c[0] = c[0] + s;
        Jet { c }
    }

    /// k-th derivative (`k! * c_k`).
    pub fn derivative(&self, k: usize) -> S {
        let mut fact = 1.0;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.c[k].scale(fact)
    }

    /// Jet of the first derivative, one order shorter in validity: the top
    /// coefficient is unknowable without `c[K]` and is set to zero.
    pub fn differentiate(&self) -> Self {
        let mut c = [self.c[0].lift(0.0); K];
        for k in 0..K - 1 {
            c[k] = self.c[k + 1].scale((k + 1) as f64);
        }
        Jet { c }
    }

    fn zero_like(&self) -> S {
        self.c[0].lift(0.0)
    }
}

impl<S: Scalar, const K: usize> Add for Jet<S, K> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let mut c = self.c;
        for k in 0..K {
            c[k] = c[k] + rhs.c[k];
        }
        Jet { c }
    }
}

impl<S: Scalar, const K: usize> Sub for Jet<S, K> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        let mut c = self.c;
        for k in 0..K {
            c[k] = c[k] - rhs.c[k];
        }
        Jet { c }
    }
}

impl<S: Scalar, const K: usize> Neg for Jet<S, K> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        let mut c = self.c;
        for k in 0..K {
            c[k] = -c[k];
        }
        Jet { c }
    }
}

impl<S: Scalar, const K: usize> Mul for Jet<S, K> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let mut c = [self.zero_like(); K];
        for k in 0..K {
            let mut acc = self.c[0] * rhs.c[k];
            for j in 1..=k {
                acc = acc + self.c[j] * rhs.c[k - j];
            }
            c[k] = acc;
        }
        Jet { c }
    }
}

impl<S: Scalar, const K: usize> Div for Jet<S, K> {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        let mut c = [self.zero_like(); K];
        for k in 0..K {
            let mut acc = self.c[k];
            for j in 0..k {
                acc = acc - c[j] * rhs.c[k - j];
            }
            c[k] = acc / rhs.c[0];
        }
        Jet { c }
    }
}

impl<S: Scalar, const K: usize> Scalar for Jet<S, K> {
    #[inline(always)]
    fn value(self) -> f64 {
        self.c[0].value()
    }

    fn lift(self, v: f64) -> Self {
        Jet::constant(self.c[0].lift(v))
    }

    #[inline]
    fn scale(self, f: f64) -> Self {
        let mut c = self.c;
        for k in 0..K {
            c[k] = c[k].scale(f);
        }
        Jet { c }
    }

    #[inline]
    fn add_const(self, f: f64) -> Self {
        let mut c = self.c;
        c[0] = c[0].add_const(f);
        Jet { c }
    }

    fn tanh(self) -> Self {
        let u = &self.c;
        let mut t = [self.zero_like(); K];
        // s tracks t^2 up to the coefficients already known.
        let mut s = [self.zero_like(); K];
        t[0] = u[0].tanh();
        s[0] = t[0] * t[0];
        for k in 1..K {
            // k*t_k = sum_{j=1..k} j*u_j*(1 - t^2)_{k-j}
            let mut acc = self.zero_like();
            for j in 1..=k {
                let w = if k - j == 0 {
                    s[0].scale(-1.0).add_const(1.0)
                } else {
                    -s[k - j]
                };
                acc = acc + u[j].scale(j as f64) * w;
            }
            t[k] = acc.scale(1.0 / k as f64);
            // extend s with the new coefficient of t
            let mut sk = self.zero_like();
            for i in 0..=k {
                sk = sk + t[i] * t[k - i];
            }
            s[k] = sk;
        }
        Jet { c: t }
    }

    fn exp(self) -> Self {
        let u = &self.c;
        let mut e = [self.zero_like(); K];
        e[0] = u[0].exp();
        for k in 1..K {
            let mut acc = self.zero_like();
            for j in 1..=k {
                acc = acc + u[j].scale(j as f64) * e[k - j];
            }
            e[k] = acc.scale(1.0 / k as f64);
        }
        Jet { c: e }
    }

    fn ln(self) -> Self {
        let u = &self.c;
        let mut l = [self.zero_like(); K];
        l[0] = u[0].ln();
        for k in 1..K {
            let mut acc = u[k].scale(k as f64);
            for j in 1..k {
                acc = acc - l[j].scale(j as f64) * u[k - j];
            }
            l[k] = (acc / u[0]).scale(1.0 / k as f64);
        }
        Jet { c: l }
    }

    fn sqrt(self) -> Self {
        let u = &self.c;
        let mut g = [self.zero_like(); K];
        g[0] = u[0].sqrt();
        for k in 1..K {
            let mut acc = u[k];
            for j in 1..k {
                acc = acc - g[j] * g[k - j];
            }
            g[k] = acc / g[0].scale(2.0);
        }
        Jet { c: g }
    }

    /// `u^a` for a real exponent; requires `u0 > 0`.
    fn powf(self, a: f64) -> Self {
        let u = &self.c;
        let mut g = [self.zero_like(); K];
        g[0] = u[0].powf(a);
        for k in 1..K {
            // k*u0*g_k = sum_{j=1..k} ((a+1)j - k) * u_j * g_{k-j}
            let mut acc = self.zero_like();
            for j in 1..=k {
                let w = (a + 1.0) * j as f64 - k as f64;
                acc = acc + u[j].scale(w) * g[k - j];
            }
            g[k] = (acc / u[0]).scale(1.0 / k as f64);
        }
        Jet { c: g }
    }

    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return self.lift(1.0);
        }
        let neg = n < 0;
        let mut m = n.unsigned_abs();
        let mut base = self;
        let mut acc: Option<Self> = None;
        while m > 0 {
            if m & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a * base,
                    None => base,
                });
            }
            m >>= 1;
            if m > 0 {
                base = base * base;
            }
        }
        let r = acc.unwrap();
        if neg {
            self.lift(1.0) / r
        } else {
            r
        }
    }

    /// `|u|` by sign of the primal; coefficients flip with it. Not smooth at
    /// a primal of exactly zero, where the jet is passed through unchanged.
    fn abs(self) -> Self {
        if self.c[0].value() < 0.0 {
            -self
        } else {
            self
        }
    }
}
