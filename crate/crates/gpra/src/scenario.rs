//! Problem definition and the governing-equation residuals shared by every
//! solver.
//!
//! The pipe is an Euler-Bernoulli beam with moderately large deflections on
//! saturating soil springs. For axial displacement `u` and lateral
//! displacement `w`, equilibrium of an infinitesimal segment gives
//!
//! ```text
//! R1 = N_x + h(Ug - u)                      = 0
//! R2 = M_xx - d/dx(N * w_x) - q(Wg - w)     = 0
//! ```
//!
//! with `N`, `M` the fiber-integrated section forces and `h`, `q` the axial
//! and lateral spring force densities. Both solvers evaluate these residuals
//! through the same code path: displacements enter as Taylor jets, the
//! section forces are computed on jets (so `N` and `M` emerge with their own
//! x-derivatives, differentiation applied after the nonlinear material map),
//! and the residuals read off the required derivative coefficients.

use crate::autodiff::{Jet, Scalar};
use crate::error::{Error, Result};
use crate::material::SteelMaterial;
use crate::section::{section_forces, FiberGrid};
use crate::soil::{axial_force_density, lateral_force_density, SoilModel, SoilSample, SpringLaw};

/// Pipe geometry, operational loads, and the ground-movement block.
#[derive(Debug, Clone)]
pub struct PipeProblem {
    /// Outer diameter (m).
    pub d: f64,
    /// Wall thickness (m).
    pub t: f64,
    /// Modeled length (m).
    pub length: f64,
    /// Start of the moving block (m).
    pub block_start: f64,
    /// Length of the moving block (m).
    pub block_len: f64,
    /// Crossing angle between movement and pipe axis (degrees).
    pub beta_deg: f64,
    /// Internal pressure (Pa).
    pub pressure: f64,
    /// Temperature change from installation (degC).
    pub delta_temp: f64,
    /// Half-width of the optional cosine ramp smoothing the block edges (m);
    /// zero keeps the sharp rectangular pattern.
    pub ramp_width: f64,
    pub material: SteelMaterial,
    pub soil_model: SoilModel,
    pub grid: FiberGrid,
}

impl PipeProblem {
    pub fn validate(&self) -> Result<()> {
        self.material.validate()?;
        if !(self.t > 0.0 && self.d > 2.0 * self.t) {
            return Err(Error::InvalidGeometry(format!(
                "need D > 2t > 0, got D = {}, t = {}",
                self.d, self.t
            )));
        }
        if !(0.0 <= self.block_start && self.block_start + self.block_len <= self.length) {
            return Err(Error::InvalidGeometry(format!(
                "block [{}, {}] outside pipe [0, {}]",
                self.block_start,
                self.block_start + self.block_len,
                self.length
            )));
        }
        if !(0.0 < self.beta_deg && self.beta_deg <= 90.0) {
            return Err(Error::InvalidParameter(format!(
                "crossing angle {} outside (0, 90]",
                self.beta_deg
            )));
        }
        if self.ramp_width < 0.0 {
            return Err(Error::InvalidParameter("ramp width must be >= 0".into()));
        }
        Ok(())
    }

    /// Hoop stress of the operating pressure.
    pub fn hoop_stress(&self) -> Result<f64> {
        crate::material::hoop_stress(self.pressure, self.d, self.t)
    }

    /// Uniform pseudo-initial strain from pressure and temperature.
    pub fn initial_strain(&self) -> Result<f64> {
        crate::material::initial_strain(
            self.pressure,
            self.d,
            self.t,
            self.material.nu,
            self.material.alpha,
            self.delta_temp,
            self.material.e,
        )
    }
}

/// Per-parameter bounds for `(delta, c, phi, gamma, H)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterBox {
    pub delta: [f64; 2],
    pub c: [f64; 2],
    pub phi: [f64; 2],
    pub gamma: [f64; 2],
    pub h: [f64; 2],
}

impl ParameterBox {
    /// Ranges of the case-study table.
    pub fn table_defaults() -> Self {
        ParameterBox {
            delta: [0.0, 2.0],
            c: [40.0, 50.0],
            phi: [22.0, 28.0],
            gamma: [15.0, 23.0],
            h: [1.2, 1.7],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, [lo, hi]) in self.named() {
            if !(lo < hi) {
                return Err(Error::InvalidParameter(format!(
                    "box {name}: need lo < hi, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    pub fn named(&self) -> [(&'static str, [f64; 2]); 5] {
        [
            ("delta", self.delta),
            ("c", self.c),
            ("phi", self.phi),
            ("gamma", self.gamma),
            ("h", self.h),
        ]
    }

    pub fn bounds(&self) -> [[f64; 2]; 5] {
        [self.delta, self.c, self.phi, self.gamma, self.h]
    }

    pub fn contains(&self, s: &ScenarioSample) -> bool {
        let v = s.as_array();
        self.bounds().iter().zip(v.iter()).all(|(b, x)| b[0] <= *x && *x <= b[1])
    }

    /// Clamp a sample into the box component-wise; returns the clamped
    /// sample and whether any component moved.
    pub fn clamp(&self, s: &ScenarioSample) -> (ScenarioSample, bool) {
        let b = self.bounds();
        let v = s.as_array();
        let mut out = [0.0; 5];
        let mut clamped = false;
        for i in 0..5 {
            out[i] = v[i].clamp(b[i][0], b[i][1]);
            if out[i] != v[i] {
                clamped = true;
            }
        }
        (ScenarioSample::from_array(out), clamped)
    }

    /// Midpoint sample, used for reference resistance scales.
    pub fn midpoint(&self) -> ScenarioSample {
        let b = self.bounds();
        ScenarioSample::from_array([
            0.5 * (b[0][0] + b[0][1]),
            0.5 * (b[1][0] + b[1][1]),
            0.5 * (b[2][0] + b[2][1]),
            0.5 * (b[3][0] + b[3][1]),
            0.5 * (b[4][0] + b[4][1]),
        ])
    }
}

/// One realization of the uncertain inputs: movement magnitude plus soil.
#[derive(Debug, Clone, Copy)]
pub struct ScenarioSample {
    /// Ground displacement magnitude (m).
    pub delta: f64,
    pub soil: SoilSample,
}

impl ScenarioSample {
    pub fn new(delta: f64, c: f64, phi: f64, gamma: f64, h: f64) -> Self {
        ScenarioSample {
            delta,
            soil: SoilSample { c, phi, gamma, h },
        }
    }

    /// Fixed coordinate order `(delta, c, phi, gamma, H)`.
    pub fn as_array(&self) -> [f64; 5] {
        [self.delta, self.soil.c, self.soil.phi, self.soil.gamma, self.soil.h]
    }

    pub fn from_array(v: [f64; 5]) -> Self {
        ScenarioSample::new(v[0], v[1], v[2], v[3], v[4])
    }
}

/// Ground displacement components `(Ug, Wg)` at position `x`: the block
/// moves rigidly by `delta` at the crossing angle, zero outside, with an
/// optional cosine ramp of half-width `problem.ramp_width` across each edge.
pub fn ground_displacement(x: f64, delta: f64, problem: &PipeProblem) -> Result<(f64, f64)> {
    if !(0.0 <= x && x <= problem.length) {
        return Err(Error::OutOfDomain(format!(
            "x = {x} outside [0, {}]",
            problem.length
        )));
    }
    let s = block_shape(x, problem);
    let beta = problem.beta_deg.to_radians();
    Ok((delta * s * beta.cos(), delta * s * beta.sin()))
}

/// Indicator of the moving block, optionally smoothed: rises from 0 to 1
/// over `[a - r, a + r]` with a half-cosine and symmetrically at the far
/// edge. Sharp step when `ramp_width == 0`.
pub fn block_shape(x: f64, problem: &PipeProblem) -> f64 {
    let a = problem.block_start;
    let b = problem.block_start + problem.block_len;
    let r = problem.ramp_width;
    if r == 0.0 {
        return if (a..=b).contains(&x) { 1.0 } else { 0.0 };
    }
    let rise = |d: f64| -> f64 {
        // -r .. r maps to 0 .. 1
        if d <= -r {
            0.0
        } else if d >= r {
            1.0
        } else {
            0.5 * (1.0 + (std::f64::consts::PI * d / (2.0 * r)).sin())
        }
    };
    rise(x - a) * rise(b - x)
}

/// Affine map of `(x, delta, c, phi, gamma, H)` onto `[-1, 1]^6`. The `x`
/// coordinate is generic so a jet can flow through (spatial derivatives pick
/// up the `2/L` chain factor); the five parameters are plain values.
pub fn normalize_inputs<S: Scalar>(
    x: S,
    sample: &ScenarioSample,
    box_: &ParameterBox,
    length: f64,
) -> [S; 6] {
    let v = sample.as_array();
    let b = box_.bounds();
    let mut out = [x.lift(0.0); 6];
    out[0] = x.scale(2.0 / length).add_const(-1.0);
    for i in 0..5 {
        let [lo, hi] = b[i];
        out[i + 1] = x.lift(2.0 * (v[i] - lo) / (hi - lo) - 1.0);
    }
    out
}

/// Inverse of the x-coordinate map of [`normalize_inputs`].
pub fn denormalize_x(z: f64, length: f64) -> f64 {
    0.5 * (z + 1.0) * length
}

/// Inverse of the parameter part of [`normalize_inputs`].
pub fn denormalize_sample(z: &[f64; 5], box_: &ParameterBox) -> ScenarioSample {
    let b = box_.bounds();
    let mut v = [0.0; 5];
    for i in 0..5 {
        let [lo, hi] = b[i];
        v[i] = lo + 0.5 * (z[i] + 1.0) * (hi - lo);
    }
    ScenarioSample::from_array(v)
}

/// Everything per-scenario the residual evaluation needs, precomputed once:
/// spring law, initial strain, biaxial state.
#[derive(Debug, Clone)]
pub struct ScenarioContext {
    pub law: SpringLaw,
    pub eps_initial: f64,
    pub state: crate::material::BiaxialState,
}

impl ScenarioContext {
    pub fn new(sample: &ScenarioSample, problem: &PipeProblem, fit_strain_max: f64) -> Result<Self> {
        let law = SpringLaw::build(&sample.soil, problem.d, &problem.soil_model)?;
        let eps_initial = problem.initial_strain()?;
        let state = crate::material::BiaxialState::new(&problem.material, problem.hoop_stress()?, fit_strain_max)?;
        Ok(ScenarioContext {
            law,
            eps_initial,
            state,
        })
    }
}

/// Governing-equation residuals `(R1, R2)` in N/m at one position, from jets
/// of `u` (order >= 3) and `w` (order >= 4) in the physical coordinate.
///
/// The jets are pushed through the fiber section so `N` and `M` come out as
/// jets of `x`; `N_x`, `M_xx`, and `(N w_x)_x` are then their derivative
/// coefficients. Generic over the coefficient scalar so the training path
/// can run it on tape variables.
pub fn residuals_with_context<S: Scalar>(
    x: f64,
    delta: f64,
    u: Jet<S, 5>,
    w: Jet<S, 5>,
    problem: &PipeProblem,
    ctx: &ScenarioContext,
) -> Result<(S, S)> {
    let (ug, wg) = ground_displacement(x, delta, problem)?;
    let u_x = u.differentiate();
    let w_x = w.differentiate();
    let w_xx = w_x.differentiate();
    let (n, m) = section_forces(
        u_x,
        w_x,
        w_xx,
        &problem.grid,
        &problem.material,
        &ctx.state,
        ctx.eps_initial,
    );
    let n_x = n.derivative(1);
    let m_xx = m.derivative(2);
    let shear_coupling = (n * w_x).derivative(1);
    let h = axial_force_density(u.c[0].scale(-1.0).add_const(ug), &ctx.law);
    let q = lateral_force_density(w.c[0].scale(-1.0).add_const(wg), &ctx.law);
    Ok((n_x + h, m_xx - shear_coupling - q))
}

/// Residuals for a sample, building the per-scenario context on the fly.
/// The hot paths (training, the reference solver) precompute the context and
/// call [`residuals_with_context`] directly.
pub fn residuals(
    x: f64,
    sample: &ScenarioSample,
    u: Jet<f64, 5>,
    w: Jet<f64, 5>,
    problem: &PipeProblem,
    fit_strain_max: f64,
) -> Result<(f64, f64)> {
    let ctx = ScenarioContext::new(sample, problem, fit_strain_max)?;
    residuals_with_context(x, sample.delta, u, w, problem, &ctx)
}
