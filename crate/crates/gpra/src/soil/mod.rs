//! Axial and lateral soil resistance and the smooth spring force laws.
//!
//! Ultimate resistances and yield displacements follow the American
//! Lifelines Alliance guideline (see [`ala`]); clay (cohesion) and sand
//! (friction) contributions are summed in both directions since the
//! parameter box carries both. The elastic-perfectly-plastic guideline
//! springs are replaced by smooth saturating laws
//! `f(x) = ultimate * tanh(k * x / yield_displacement)` so the coupled
//! problem stays differentiable to the orders the jets carry.
//!
//! Units: cohesion kPa, unit weight kN/m^3, depths/diameters m in;
//! resistances N/m and displacements m out.

pub mod ala;

use crate::autodiff::Scalar;
use crate::error::{Error, Result};

/// One realization of the uncertain soil parameters.
#[derive(Debug, Clone, Copy)]
pub struct SoilSample {
    /// Cohesion (kPa).
    pub c: f64,
    /// Friction angle (degrees).
    pub phi: f64,
    /// Total unit weight (kN/m^3).
    pub gamma: f64,
    /// Burial depth to the pipe centerline (m).
    pub h: f64,
}

impl SoilSample {
    pub fn validate(&self, d: f64) -> Result<()> {
        if !(self.c >= 0.0) {
            return Err(Error::InvalidParameter(format!("cohesion {} must be >= 0", self.c)));
        }
        if !(0.0 <= self.phi && self.phi < 45.0) {
            return Err(Error::InvalidParameter(format!(
                "friction angle {} outside [0, 45)",
                self.phi
            )));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "unit weight {} must be > 0",
                self.gamma
            )));
        }
        if !(self.h > 0.5 * d) {
            return Err(Error::InvalidParameter(format!(
                "burial depth {} must exceed D/2 = {}",
                self.h,
                0.5 * d
            )));
        }
        Ok(())
    }
}

/// Knobs of the soil model that are not per-sample: pipe coating friction
/// factor, the axial yield displacement class, and the smooth-law steepness.
#[derive(Debug, Clone, Copy)]
pub struct SoilModel {
    /// Interface friction factor `f` (coating dependent, 0.6-1.0).
    pub coating_factor: f64,
    /// Axial yield displacement (m); guideline default for loose sand.
    pub delta_t: f64,
    /// Tanh steepness: the smooth law reaches tanh(k) of ultimate at the
    /// guideline yield displacement.
    pub k_smooth: f64,
}

impl Default for SoilModel {
    fn default() -> Self {
        SoilModel {
            coating_factor: 0.8,
            delta_t: ala::DELTA_T_LOOSE_SAND_M,
            k_smooth: 3.0,
        }
    }
}

/// Saturating spring law in one direction.
#[derive(Debug, Clone, Copy)]
pub struct SpringLaw {
    /// Axial ultimate resistance (N/m).
    pub tu: f64,
    /// Axial yield displacement (m).
    pub delta_t: f64,
    /// Lateral ultimate resistance (N/m).
    pub pu: f64,
    /// Lateral yield displacement (m).
    pub delta_p: f64,
    /// Tanh steepness factor.
    pub k_smooth: f64,
}

impl SpringLaw {
    /// Build both directions for a soil realization around a pipe of outer
    /// diameter `d`.
    pub fn build(soil: &SoilSample, d: f64, model: &SoilModel) -> Result<Self> {
        soil.validate(d)?;
        let (tu, delta_t) = axial_resistance(soil, d, model);
        let (pu, delta_p) = lateral_resistance(soil, d);
        Ok(SpringLaw {
            tu,
            delta_t,
            pu,
            delta_p,
            k_smooth: model.k_smooth,
        })
    }
}

/// Ultimate axial resistance per unit length and its yield displacement:
/// `Tu = pi D alpha c + pi D H gamma (1 + K0)/2 tan(f phi)`, `K0 = 1 - sin(phi)`.
pub fn axial_resistance(soil: &SoilSample, d: f64, model: &SoilModel) -> (f64, f64) {
    let c_pa = soil.c * 1e3;
    let gamma_pa = soil.gamma * 1e3;
    let clay = std::f64::consts::PI * d * ala::adhesion_factor(c_pa) * c_pa;
    let k0 = 1.0 - soil.phi.to_radians().sin();
    let sand = std::f64::consts::PI
        * d
        * soil.h
        * gamma_pa
        * 0.5
        * (1.0 + k0)
        * (model.coating_factor * soil.phi).to_radians().tan();
    let tu = if soil.c > 0.0 { clay } else { 0.0 } + sand;
    (tu, model.delta_t)
}

/// Ultimate lateral resistance per unit length and its yield displacement:
/// `Pu = Nch c D + Nqh gamma H D`.
pub fn lateral_resistance(soil: &SoilSample, d: f64) -> (f64, f64) {
    let c_pa = soil.c * 1e3;
    let gamma_pa = soil.gamma * 1e3;
    let x = soil.h / d;
    let pu = ala::nch(c_pa, x) * c_pa * d + ala::nqh(soil.phi, x) * gamma_pa * soil.h * d;
    (pu, ala::lateral_yield_displacement(soil.h, d))
}

/// Axial soil force density `Tu * tanh(k * delta_u / delta_t)` (N/m); odd and
/// bounded by the ultimate resistance.
#[inline]
pub fn axial_force_density<S: Scalar>(delta_u: S, law: &SpringLaw) -> S {
    delta_u.scale(law.k_smooth / law.delta_t).tanh().scale(law.tu)
}

/// Lateral soil force density `Pu * tanh(k * delta_w / delta_p)` (N/m).
#[inline]
pub fn lateral_force_density<S: Scalar>(delta_w: S, law: &SpringLaw) -> S {
    delta_w.scale(law.k_smooth / law.delta_p).tanh().scale(law.pu)
}
