//! Fiber discretization of the annular cross-section.
//!
//! The pipe wall is split into `n_r x n_theta` annular sector patches. Axial
//! force and bending moment come from summing patch stresses:
//! `N = sum(sigma_ij * A_ij)`, `M = -sum(z_ij * sigma_ij * A_ij)`, with the
//! longitudinal strain at a patch given by
//! `eps = eps_initial + u_x + w_x^2/2 - z*w_xx`.
//!
//! Patch areas are exact sector areas. The offset `z_ij` uses the sector's
//! radial area centroid projected at the angular midpoint: midpoint angles
//! make `sum(z^2 A)` superconvergent to the closed-form annulus inertia
//! (relative error ~1e-6 at 4x24), whereas the full angular centroid would
//! carry a sinc^2(pi/n_theta) deficit (~0.6% at n_theta = 24).

use crate::autodiff::Scalar;
use crate::error::{Error, Result};
use crate::material::{stress_mp, BiaxialState, SteelMaterial};

/// One annular sector patch: exact area and signed centroid offset along the
/// bending axis.
#[derive(Debug, Clone, Copy)]
pub struct Patch {
    pub area: f64,
    pub z: f64,
}

/// Annular cross-section decomposed into area patches.
#[derive(Debug, Clone)]
pub struct FiberGrid {
    pub n_r: usize,
    pub n_theta: usize,
    pub patches: Vec<Patch>,
    total_area: f64,
    second_moment: f64,
    z_max: f64,
}

impl FiberGrid {
    pub fn total_area(&self) -> f64 {
        self.total_area
    }

    /// `sum(z^2 A)` of the grid itself (the grid's own inertia).
    pub fn second_moment(&self) -> f64 {
        self.second_moment
    }

    /// Largest patch centroid offset; strain extremes are evaluated at `+-z_max`.
    pub fn z_max(&self) -> f64 {
        self.z_max
    }
}

/// Decompose the wall annulus into `n_r` radial by `n_theta` circumferential
/// patches.
pub fn build_fiber_grid(d: f64, t: f64, n_r: usize, n_theta: usize) -> Result<FiberGrid> {
    if !(t > 0.0 && d > 2.0 * t) {
        return Err(Error::InvalidGeometry(format!("need D > 2t > 0, got D = {d}, t = {t}")));
    }
    if n_r < 1 || n_theta < 4 {
        return Err(Error::InvalidGeometry(format!(
            "need n_r >= 1 and n_theta >= 4, got {n_r} x {n_theta}"
        )));
    }
    let r_outer = 0.5 * d;
    let r_inner = r_outer - t;
    let d_theta = std::f64::consts::TAU / n_theta as f64;
    let mut patches = Vec::with_capacity(n_r * n_theta);
    for i in 0..n_r {
        let rho0 = r_inner + t * i as f64 / n_r as f64;
        let rho1 = r_inner + t * (i + 1) as f64 / n_r as f64;
        // radial area centroid of the sub-ring
        let r_c = 2.0 / 3.0 * (rho1.powi(3) - rho0.powi(3)) / (rho1 * rho1 - rho0 * rho0);
        let area = 0.5 * d_theta * (rho1 * rho1 - rho0 * rho0);
        for j in 0..n_theta {
            let theta_mid = (j as f64 + 0.5) * d_theta;
            patches.push(Patch {
                area,
                z: r_c * theta_mid.cos(),
            });
        }
    }
    let total_area: f64 = patches.iter().map(|p| p.area).sum();
    let second_moment: f64 = patches.iter().map(|p| p.z * p.z * p.area).sum();
    let z_max = patches.iter().map(|p| p.z.abs()).fold(0.0, f64::max);
    Ok(FiberGrid {
        n_r,
        n_theta,
        patches,
        total_area,
        second_moment,
        z_max,
    })
}

/// Total longitudinal strain at offset `z`:
/// `eps_initial + u_x + w_x^2/2 - z*w_xx`.
#[inline]
pub fn longitudinal_strain<S: Scalar>(u_x: S, w_x: S, w_xx: S, z: f64, eps_initial: f64) -> S {
    let membrane = u_x + w_x * w_x.scale(0.5);
    (membrane - w_xx.scale(z)).add_const(eps_initial)
}

/// Internal axial force and bending moment from the fiber sums. The strain
/// field over the section is affine in `z`, so the membrane part is computed
/// once and each patch only adds its bending contribution.
pub fn section_forces<S: Scalar>(
    u_x: S,
    w_x: S,
    w_xx: S,
    grid: &FiberGrid,
    mat: &SteelMaterial,
    state: &BiaxialState,
    eps_initial: f64,
) -> (S, S) {
    let membrane = (u_x + w_x * w_x.scale(0.5)).add_const(eps_initial);
    let mut n = u_x.lift(0.0);
    let mut m = u_x.lift(0.0);
    for p in &grid.patches {
        let eps = membrane - w_xx.scale(p.z);
        let sigma = stress_mp(eps, mat, state);
        n = n + sigma.scale(p.area);
        m = m - sigma.scale(p.z * p.area);
    }
    (n, m)
}
