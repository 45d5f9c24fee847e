//! Finite-difference reference solver for the coupled axial/lateral
//! equilibrium system.
//!
//! Second-order central differences on a uniform grid, fixed ends
//! (`u = w = 0`, `w_x = 0`; the rotation condition enters through ghost-node
//! elimination so every stencil stays second order). The ground displacement
//! is ramped over uniform load steps with a damped Newton iteration per
//! step; the Jacobian is assembled by forward differencing the residual in
//! column groups spaced past the stencil reach (ten residual sweeps per
//! Jacobian) and factored as a banded matrix.
//!
//! The same module provides a linear beam-on-elastic-foundation mode used to
//! verify the machinery against closed-form solutions.

mod banded;

pub use banded::{BandedLu, BandedMatrix};

use crate::error::{Error, Result};
use crate::scenario::{ground_displacement, PipeProblem, ScenarioContext, ScenarioSample};
use crate::section::section_forces;
use crate::soil::{axial_force_density, lateral_force_density};

/// Discretized fields and diagnostics for one scenario.
#[derive(Debug, Clone)]
pub struct FieldSolution {
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    pub u_x: Vec<f64>,
    pub w_x: Vec<f64>,
    pub w_xx: Vec<f64>,
    /// Axial force per node (N).
    pub n: Vec<f64>,
    /// Bending moment per node (N m).
    pub m: Vec<f64>,
    /// Strain at the extreme fiber `+z_max`.
    pub eps_top: Vec<f64>,
    /// Strain at the extreme fiber `-z_max`.
    pub eps_bottom: Vec<f64>,
    pub eps_max_tensile: f64,
    pub eps_min_compressive: f64,
    /// Scaled infinity norm of the converged residual.
    pub residual_norm: f64,
    pub diagnostics: SolveDiagnostics,
}

#[derive(Debug, Clone, Default)]
pub struct SolveDiagnostics {
    pub load_steps: usize,
    pub newton_iterations: usize,
    /// Residual norms at the end of each load step.
    pub residual_history: Vec<f64>,
}

/// Grid and iteration controls.
#[derive(Debug, Clone, Copy)]
pub struct GridConfig {
    /// Node spacing (m); must be <= 0.25.
    pub spacing: f64,
    /// Uniform ramp steps in the movement magnitude.
    pub load_steps: usize,
    pub newton_max_iterations: usize,
    /// Convergence threshold on the scaled residual infinity norm.
    pub tolerance: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            spacing: 0.1,
            load_steps: 20,
            newton_max_iterations: 50,
            tolerance: 1e-6,
        }
    }
}

struct Discretization<'a> {
    problem: &'a PipeProblem,
    ctx: ScenarioContext,
    /// Highest node index; nodes run 0..=n.
    n: usize,
    dx: f64,
    x: Vec<f64>,
    /// Ground displacement at full magnitude; load steps scale it.
    ug_full: Vec<f64>,
    wg_full: Vec<f64>,
    inv_r1: f64,
    inv_r2: f64,
    bc_scale: f64,
}

/// Nodal derivative reconstruction shared by assembly and reporting:
/// central differences inside, second-order one-sided `u_x` at the ends,
/// exact `w_x = 0` at the ends, `w_xx` at the ends via the rotation ghost.
fn nodal_derivatives(u: &[f64], w: &[f64], dx: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = u.len() - 1;
    let mut u_x = vec![0.0; n + 1];
    let mut w_x = vec![0.0; n + 1];
    let mut w_xx = vec![0.0; n + 1];
    for i in 1..n {
        u_x[i] = (u[i + 1] - u[i - 1]) / (2.0 * dx);
        w_x[i] = (w[i + 1] - w[i - 1]) / (2.0 * dx);
        w_xx[i] = (w[i + 1] - 2.0 * w[i] + w[i - 1]) / (dx * dx);
    }
    u_x[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
    u_x[n] = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * dx);
    w_x[0] = 0.0;
    w_x[n] = 0.0;
    w_xx[0] = 2.0 * (w[1] - w[0]) / (dx * dx);
    w_xx[n] = 2.0 * (w[n - 1] - w[n]) / (dx * dx);
    (u_x, w_x, w_xx)
}

impl<'a> Discretization<'a> {
    fn new(sample: &ScenarioSample, problem: &'a PipeProblem, cfg: &GridConfig, fit_strain_max: f64) -> Result<Self> {
        if cfg.spacing > 0.25 {
            return Err(Error::InvalidParameter(format!(
                "grid spacing {} exceeds 0.25 m",
                cfg.spacing
            )));
        }
        let ctx = ScenarioContext::new(sample, problem, fit_strain_max)?;
        let n = (problem.length / cfg.spacing).round() as usize;
        if n < 8 {
            return Err(Error::InvalidParameter("grid too coarse".into()));
        }
        let dx = problem.length / n as f64;
        let x: Vec<f64> = (0..=n).map(|i| i as f64 * dx).collect();
        let mut ug_full = vec![0.0; n + 1];
        let mut wg_full = vec![0.0; n + 1];
        for i in 0..=n {
            let (ug, wg) = ground_displacement(x[i], sample.delta, problem)?;
            ug_full[i] = ug;
            wg_full[i] = wg;
        }
        let inv_r1 = 1.0 / ctx_scale(ctx.law.tu);
        let inv_r2 = 1.0 / ctx_scale(ctx.law.pu);
        Ok(Discretization {
            problem,
            ctx,
            n,
            dx,
            x,
            ug_full,
            wg_full,
            inv_r1,
            inv_r2,
            bc_scale: 1e3,
        })
    }

    fn n_vars(&self) -> usize {
        2 * (self.n + 1)
    }

    /// Scaled residual of the interleaved state `[u0, w0, u1, w1, ...]` at
    /// load fraction `load`; `scratch` holds per-node section quantities.
    fn residual(&self, state: &[f64], load: f64, f: &mut [f64], scratch: &mut Scratch) {
        let n = self.n;
        let dx = self.dx;
        split_state(state, &mut scratch.u, &mut scratch.w);
        let (u_x, w_x, w_xx) = nodal_derivatives(&scratch.u, &scratch.w, dx);

        for i in 0..=n {
            let (ni, mi) = section_forces(
                u_x[i],
                w_x[i],
                w_xx[i],
                &self.problem.grid,
                &self.problem.material,
                &self.ctx.state,
                self.ctx.eps_initial,
            );
            scratch.nf[i] = ni;
            scratch.mf[i] = mi;
            scratch.tf[i] = ni * w_x[i];
        }

        f[0] = scratch.u[0] * self.bc_scale;
        f[1] = scratch.w[0] * self.bc_scale;
        f[2 * n] = scratch.u[n] * self.bc_scale;
        f[2 * n + 1] = scratch.w[n] * self.bc_scale;
        for i in 1..n {
            let ug = load * self.ug_full[i];
            let wg = load * self.wg_full[i];
            let h = axial_force_density(ug - scratch.u[i], &self.ctx.law);
            let q = lateral_force_density(wg - scratch.w[i], &self.ctx.law);
            let r1 = (scratch.nf[i + 1] - scratch.nf[i - 1]) / (2.0 * dx) + h;
            let r2 = (scratch.mf[i + 1] - 2.0 * scratch.mf[i] + scratch.mf[i - 1]) / (dx * dx)
                - (scratch.tf[i + 1] - scratch.tf[i - 1]) / (2.0 * dx)
                - q;
            f[2 * i] = r1 * self.inv_r1;
            f[2 * i + 1] = r2 * self.inv_r2;
        }
    }

    /// Forward-difference banded Jacobian: columns grouped five nodes apart
    /// (past the two-node stencil reach) so one residual sweep resolves a
    /// whole group, separately for the axial and lateral unknowns.
    fn jacobian(&self, state: &[f64], load: f64, f0: &[f64], scratch: &mut Scratch) -> BandedMatrix {
        let nvars = self.n_vars();
        let mut jac = BandedMatrix::zeros(nvars, 5, 5);
        let mut perturbed = state.to_vec();
        let mut fp = vec![0.0; nvars];
        for vtype in 0..2 {
            for color in 0..5 {
                let mut any = false;
                for node in (color..=self.n).step_by(5) {
                    let j = 2 * node + vtype;
                    let h = fd_step(state[j]);
                    perturbed[j] = state[j] + h;
                    any = true;
                }
                if !any {
                    continue;
                }
                self.residual(&perturbed, load, &mut fp, scratch);
                for node in (color..=self.n).step_by(5) {
                    let j = 2 * node + vtype;
                    let h = perturbed[j] - state[j];
                    let lo = node.saturating_sub(2);
                    let hi = (node + 2).min(self.n);
                    for r_node in lo..=hi {
                        for r_t in 0..2 {
                            let i = 2 * r_node + r_t;
                            let v = (fp[i] - f0[i]) / h;
                            if v != 0.0 {
                                jac.set(i, j, v);
                            }
                        }
                    }
                    perturbed[j] = state[j];
                }
            }
        }
        jac
    }
}

fn ctx_scale(resistance: f64) -> f64 {
    resistance.max(1.0)
}

fn fd_step(v: f64) -> f64 {
    1.49e-8 * v.abs().max(1.0)
}

struct Scratch {
    u: Vec<f64>,
    w: Vec<f64>,
    nf: Vec<f64>,
    mf: Vec<f64>,
    tf: Vec<f64>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            u: vec![0.0; n + 1],
            w: vec![0.0; n + 1],
            nf: vec![0.0; n + 1],
            mf: vec![0.0; n + 1],
            tf: vec![0.0; n + 1],
        }
    }
}

fn split_state(state: &[f64], u: &mut [f64], w: &mut [f64]) {
    for i in 0..u.len() {
        u[i] = state[2 * i];
        w[i] = state[2 * i + 1];
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, b| a.max(b.abs()))
}

fn sum_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Solve the nonlinear system for one scenario by ramping the ground
/// displacement. Failed load steps are bisected down to 1/64 of the uniform
/// increment before giving up.
pub fn solve_fdm(
    sample: &ScenarioSample,
    problem: &PipeProblem,
    cfg: &GridConfig,
    fit_strain_max: f64,
) -> Result<FieldSolution> {
    problem.validate()?;
    let disc = Discretization::new(sample, problem, cfg, fit_strain_max)?;
    let nvars = disc.n_vars();
    let mut scratch = Scratch::new(disc.n);
    let mut state = vec![0.0; nvars];
    let mut f = vec![0.0; nvars];
    let mut diag = SolveDiagnostics::default();

    let min_fraction = 1.0 / (cfg.load_steps as f64 * 64.0);
    let mut reached = 0.0f64;
    let mut target = if sample.delta == 0.0 { 1.0 } else { 1.0 / cfg.load_steps as f64 };
    loop {
        let mut trial = state.clone();
        match newton(&disc, &mut trial, target, cfg, &mut f, &mut scratch, &mut diag) {
            Ok(norm) => {
                state = trial;
                reached = target;
                diag.load_steps += 1;
                diag.residual_history.push(norm);
                if (reached - 1.0).abs() < 1e-12 {
                    break;
                }
                target = (reached + 1.0 / cfg.load_steps as f64).min(1.0);
            }
            Err(_) => {
                let step = target - reached;
                if step * 0.5 < min_fraction {
                    return Err(Error::NoConvergence {
                        load_step: diag.load_steps,
                        residual_history: diag.residual_history.clone(),
                    });
                }
                target = reached + 0.5 * step;
            }
        }
    }

    disc.residual(&state, 1.0, &mut f, &mut scratch);
    let residual_norm = inf_norm(&f);
    Ok(build_solution(&disc, &state, residual_norm, diag))
}

/// Damped Newton at a fixed load fraction; returns the converged scaled norm.
fn newton(
    disc: &Discretization,
    state: &mut [f64],
    load: f64,
    cfg: &GridConfig,
    f: &mut Vec<f64>,
    scratch: &mut Scratch,
    diag: &mut SolveDiagnostics,
) -> Result<f64> {
    let verbose = std::env::var_os("GPRA_DEBUG_NEWTON").is_some();
    disc.residual(state, load, f, scratch);
    let mut norm = inf_norm(f);
    let mut merit = sum_sq(f);
    for it in 0..cfg.newton_max_iterations {
        if !norm.is_finite() {
            return Err(Error::NonFinite("residual".into()));
        }
        if norm < cfg.tolerance {
            return Ok(norm);
        }
        diag.newton_iterations += 1;
        let jac = disc.jacobian(state, load, f, scratch);
        let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
        let step = jac.solve(&rhs)?;
        if verbose {
            // directional derivative of F along the step vs J*s (= -F)
            let smax = inf_norm(&step).max(1e-300);
            let tau = 1e-7 / smax;
            let trial: Vec<f64> = state.iter().zip(step.iter()).map(|(s, d)| s + tau * d).collect();
            let mut ft = vec![0.0; f.len()];
            disc.residual(&trial, load, &mut ft, scratch);
            let mut worst = 0.0f64;
            let mut worst_row = 0;
            for i in 0..f.len() {
                let fd = (ft[i] - f[i]) / tau;
                let expect = -f[i];
                let err = (fd - expect).abs();
                if err > worst {
                    worst = err;
                    worst_row = i;
                }
            }
            eprintln!(
                "  dirderiv err {:.3e} at row {} (|F| {:.3e}, f_row {:.3e})",
                worst,
                worst_row,
                norm,
                f[worst_row]
            );
        }

        // Armijo backtracking on the least-squares merit 1/2 |F|^2; for the
        // exact Newton direction its directional derivative is -|F|^2
        let mut alpha = 1.0;
        let mut fp = vec![0.0; f.len()];
        loop {
            let trial: Vec<f64> = state
                .iter()
                .zip(step.iter())
                .map(|(s, d)| s + alpha * d)
                .collect();
            disc.residual(&trial, load, &mut fp, scratch);
            let new_merit = sum_sq(&fp);
            if verbose {
                eprintln!(
                    "  load {load:.4} it {it} alpha {alpha:.3e}: merit {merit:.6e} -> {new_merit:.6e}"
                );
            }
            if new_merit.is_finite() && new_merit <= merit * (1.0 - 2e-4 * alpha) {
                state.copy_from_slice(&trial);
                f.copy_from_slice(&fp);
                merit = new_merit;
                norm = inf_norm(f);
                break;
            }
            alpha *= 0.5;
            if alpha < 1e-14 {
                return Err(Error::NoConvergence {
                    load_step: diag.load_steps,
                    residual_history: vec![norm],
                });
            }
        }
    }
    if norm < cfg.tolerance {
        Ok(norm)
    } else {
        Err(Error::NoConvergence {
            load_step: diag.load_steps,
            residual_history: vec![norm],
        })
    }
}

fn build_solution(
    disc: &Discretization,
    state: &[f64],
    residual_norm: f64,
    diagnostics: SolveDiagnostics,
) -> FieldSolution {
    let n = disc.n;
    let mut u = vec![0.0; n + 1];
    let mut w = vec![0.0; n + 1];
    split_state(state, &mut u, &mut w);
    let (u_x, w_x, w_xx) = nodal_derivatives(&u, &w, disc.dx);
    let z_max = disc.problem.grid.z_max();
    let eps0 = disc.ctx.eps_initial;
    let mut nf = vec![0.0; n + 1];
    let mut mf = vec![0.0; n + 1];
    let mut eps_top = vec![0.0; n + 1];
    let mut eps_bottom = vec![0.0; n + 1];
    let mut eps_max = f64::NEG_INFINITY;
    let mut eps_min = f64::INFINITY;
    for i in 0..=n {
        let (ni, mi) = section_forces(
            u_x[i],
            w_x[i],
            w_xx[i],
            &disc.problem.grid,
            &disc.problem.material,
            &disc.ctx.state,
            eps0,
        );
        nf[i] = ni;
        mf[i] = mi;
        let membrane = eps0 + u_x[i] + 0.5 * w_x[i] * w_x[i];
        eps_top[i] = membrane - z_max * w_xx[i];
        eps_bottom[i] = membrane + z_max * w_xx[i];
        eps_max = eps_max.max(eps_top[i]).max(eps_bottom[i]);
        eps_min = eps_min.min(eps_top[i]).min(eps_bottom[i]);
    }
    FieldSolution {
        x: disc.x.clone(),
        u,
        w,
        u_x,
        w_x,
        w_xx,
        n: nf,
        m: mf,
        eps_top,
        eps_bottom,
        eps_max_tensile: eps_max,
        eps_min_compressive: eps_min,
        residual_norm,
        diagnostics,
    }
}

/// Linear verification mode: `EI w'''' + k (w - Wg) = 0` with fixed ends,
/// elastic section, no axial coupling. `wg` is the lateral ground
/// displacement per node on the same grid the solver would use.
pub fn solve_linear_winkler(problem: &PipeProblem, k: f64, wg: &[f64], spacing: f64) -> Result<FieldSolution> {
    problem.validate()?;
    if !(k > 0.0) {
        return Err(Error::InvalidParameter("foundation stiffness must be > 0".into()));
    }
    let n = wg.len() - 1;
    if n < 8 {
        return Err(Error::InvalidParameter("grid too coarse".into()));
    }
    let dx = spacing;
    let ei = problem.material.e * problem.grid.second_moment();
    let c4 = ei / dx.powi(4);
    let mut a = BandedMatrix::zeros(n + 1, 2, 2);
    let mut b = vec![0.0; n + 1];
    a.set(0, 0, 1.0);
    a.set(n, n, 1.0);
    for i in 1..n {
        // w'''' stencil with rotation-ghost folding at the ends
        let mut add = |node: i64, v: f64| {
            let node = if node < 0 {
                (-node) as usize
            } else if node as usize > n {
                2 * n - node as usize
            } else {
                node as usize
            };
            a.add(i, node, v);
        };
        add(i as i64 - 2, c4);
        add(i as i64 - 1, -4.0 * c4);
        add(i as i64, 6.0 * c4 + k);
        add(i as i64 + 1, -4.0 * c4);
        add(i as i64 + 2, c4);
        b[i] = k * wg[i];
    }
    let w = a.solve(&b)?;
    let u = vec![0.0; n + 1];
    let (u_x, w_x, w_xx) = nodal_derivatives(&u, &w, dx);
    let z_max = problem.grid.z_max();
    let mut residual: f64 = 0.0;
    for i in 2..n.saturating_sub(1) {
        let w4 = (w[i - 2] - 4.0 * w[i - 1] + 6.0 * w[i] - 4.0 * w[i + 1] + w[i + 2]) / dx.powi(4);
        residual = residual.max((ei * w4 + k * (w[i] - wg[i])).abs());
    }
    let scale = k * wg.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-30);
    let m: Vec<f64> = w_xx.iter().map(|&c| ei * c).collect();
    let eps_top: Vec<f64> = w_xx.iter().map(|&c| -z_max * c).collect();
    let eps_bottom: Vec<f64> = w_xx.iter().map(|&c| z_max * c).collect();
    let eps_max = eps_top.iter().chain(eps_bottom.iter()).cloned().fold(f64::NEG_INFINITY, f64::max);
    let eps_min = eps_top.iter().chain(eps_bottom.iter()).cloned().fold(f64::INFINITY, f64::min);
    Ok(FieldSolution {
        x: (0..=n).map(|i| i as f64 * dx).collect(),
        u,
        w,
        u_x,
        w_x,
        w_xx,
        n: vec![0.0; n + 1],
        m,
        eps_top,
        eps_bottom,
        eps_max_tensile: eps_max,
        eps_min_compressive: eps_min,
        residual_norm: residual / scale,
        diagnostics: SolveDiagnostics::default(),
    })
}
