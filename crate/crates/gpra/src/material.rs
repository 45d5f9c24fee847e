//! Smooth biaxial stress-strain law for pipe steel.
//!
//! Internal pressure puts the pipe wall in a biaxial state: the hoop stress
//! shifts the longitudinal tensile and compressive yield stresses apart on
//! the von Mises surface, and the post-yield slopes of the two branches
//! differ. The longitudinal law used by both solvers is a smooth
//! Menegotto-Pinto curve per branch, blended across zero strain by a logistic
//! function so the combined law is infinitely differentiable — a requirement
//! for propagating fourth-order jets through the section integration.
//!
//! All stress quantities are Pa, strains dimensionless.

use crate::autodiff::Scalar;
use crate::error::{Error, Result};

/// Uniaxial steel constants plus the smooth-model shape parameters.
#[derive(Debug, Clone, Copy)]
pub struct SteelMaterial {
    /// Elastic modulus (Pa).
    pub e: f64,
    /// Uniaxial yield stress (Pa).
    pub sigma_y: f64,
    /// Ultimate stress (Pa).
    pub sigma_u: f64,
    /// Ultimate strain.
    pub eps_u: f64,
    /// Thermal expansion coefficient (1/degC).
    pub alpha: f64,
    /// Poisson ratio.
    pub nu: f64,
    /// Transition sharpness of the smooth elastic-plastic knee.
    pub r: f64,
    /// Blend scaling factor (1/strain) joining the two branches at zero.
    pub omega: f64,
}

impl SteelMaterial {
    pub fn validate(&self) -> Result<()> {
        if !(self.e > 0.0) {
            return Err(Error::InvalidParameter(format!("E = {} must be > 0", self.e)));
        }
        if !(0.0 < self.sigma_y && self.sigma_y < self.sigma_u) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < sigma_y < sigma_u, got {} and {}",
                self.sigma_y, self.sigma_u
            )));
        }
        if !(0.0 < self.eps_u && self.eps_u < 1.0) {
            return Err(Error::InvalidParameter(format!("eps_u = {} outside (0,1)", self.eps_u)));
        }
        if !(0.0 < self.nu && self.nu < 0.5) {
            return Err(Error::InvalidParameter(format!("nu = {} outside (0,0.5)", self.nu)));
        }
        if !(self.r > 1.0) {
            return Err(Error::InvalidParameter(format!("R = {} must be > 1", self.r)));
        }
        if !(self.omega > 0.0) {
            return Err(Error::InvalidParameter(format!("omega = {} must be > 0", self.omega)));
        }
        Ok(())
    }

    /// Uniaxial plastic modulus from the yield and ultimate points of the
    /// bilinear idealization: `(sigma_u - sigma_y) / (eps_u - sigma_y/E)`.
    pub fn uniaxial_plastic_modulus(&self) -> f64 {
        (self.sigma_u - self.sigma_y) / (self.eps_u - self.sigma_y / self.e)
    }
}

/// Hoop-stress-dependent quantities of the longitudinal law.
#[derive(Debug, Clone, Copy)]
pub struct BiaxialState {
    /// Hoop stress (Pa).
    pub sigma_h: f64,
    /// Tensile longitudinal yield (Pa).
    pub sigma_y_t: f64,
    /// Compressive longitudinal yield (Pa, negative or zero).
    pub sigma_y_c: f64,
    /// Hardening parameter `E*Ep/(E - Ep)` (Pa).
    pub hp: f64,
    /// Tensile plastic-to-elastic modulus ratio.
    pub b_t: f64,
    /// Compressive plastic-to-elastic modulus ratio.
    pub b_c: f64,
}

impl BiaxialState {
    /// Build the state for a given hoop stress, fitting the branch plastic
    /// moduli up to `fit_strain_max`.
    pub fn new(mat: &SteelMaterial, sigma_h: f64, fit_strain_max: f64) -> Result<Self> {
        mat.validate()?;
        let (sigma_y_t, sigma_y_c) = biaxial_yield(mat.sigma_y, sigma_h)?;
        let ep = mat.uniaxial_plastic_modulus();
        let hp = hardening_parameter(mat.e, ep)?;
        let mut state = BiaxialState {
            sigma_h,
            sigma_y_t,
            sigma_y_c,
            hp,
            b_t: 0.0,
            b_c: 0.0,
        };
        let (ep_t, ep_c) = plastic_moduli(&state, mat.e, fit_strain_max)?;
        state.b_t = ep_t / mat.e;
        state.b_c = ep_c / mat.e;
        Ok(state)
    }

    /// Zero hoop stress: both branches collapse to the uniaxial bilinear law.
    pub fn uniaxial(mat: &SteelMaterial) -> Result<Self> {
        mat.validate()?;
        let ep = mat.uniaxial_plastic_modulus();
        let hp = hardening_parameter(mat.e, ep)?;
        let b = ep / mat.e;
        Ok(BiaxialState {
            sigma_h: 0.0,
            sigma_y_t: mat.sigma_y,
            sigma_y_c: -mat.sigma_y,
            hp,
            b_t: b,
            b_c: b,
        })
    }
}

/// Full hoop stress `P(D - 2t)/(2t)` from internal pressure.
pub fn hoop_stress(p: f64, d: f64, t: f64) -> Result<f64> {
    if !(t > 0.0 && d > 2.0 * t) {
        return Err(Error::InvalidGeometry(format!("need D > 2t > 0, got D = {d}, t = {t}")));
    }
    if p < 0.0 {
        return Err(Error::InvalidParameter(format!("pressure {p} must be >= 0")));
    }
    Ok(p * (d - 2.0 * t) / (2.0 * t))
}

/// Longitudinal yield stresses on the von Mises surface at a given hoop
/// stress: the two real roots of `sigma_l^2 + sigma_h^2 - sigma_l*sigma_h =
/// sigma_y^2`.
pub fn biaxial_yield(sigma_y: f64, sigma_h: f64) -> Result<(f64, f64)> {
    let disc = 4.0 * sigma_y * sigma_y - 3.0 * sigma_h * sigma_h;
    if disc < 0.0 {
        return Err(Error::NoRealRoot { sigma_y, sigma_h });
    }
    let root = disc.sqrt();
    Ok((0.5 * (sigma_h + root), 0.5 * (sigma_h - root)))
}

/// Hardening parameter `E*Ep/(E - Ep)` of the flow rule.
pub fn hardening_parameter(e: f64, ep: f64) -> Result<f64> {
    if !(ep >= 0.0 && ep < e) {
        return Err(Error::InvalidParameter(format!(
            "plastic modulus {ep} must satisfy 0 <= Ep < E = {e}"
        )));
    }
    Ok(e * ep / (e - ep))
}

/// Flow-rule integrand `(2s - sigma_h)^2 / (s^2 + sigma_h^2 - s*sigma_h)`.
fn flow_integrand(s: f64, sigma_h: f64) -> f64 {
    (2.0 * s - sigma_h).powi(2) / (s * s + sigma_h * sigma_h - s * sigma_h)
}

/// Adaptive Simpson quadrature of the flow integrand over `[a, b]`.
fn flow_integral(a: f64, b: f64, sigma_h: f64) -> Result<f64> {
    fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let f = move |s: f64| flow_integrand(s, sigma_h);
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    if !(fa.is_finite() && fm.is_finite() && fb.is_finite()) {
        return Err(Error::QuadratureFailure(format!(
            "non-finite integrand on [{a}, {b}] at sigma_h = {sigma_h}"
        )));
    }
    let whole = simpson(a, b, fa, fm, fb);
    Ok(recurse(&f, a, b, fa, fm, fb, whole, 1e-13 * whole.abs().max(1.0), 40))
}

/// Longitudinal strain on a plastic branch at stress `s`, integrating the
/// flow rule from the branch yield stress `s_y`.
fn branch_strain(s: f64, s_y: f64, sigma_h: f64, e: f64, hp: f64) -> Result<f64> {
    Ok(s / e + flow_integral(s_y, s, sigma_h)? / (4.0 * hp))
}

/// Constant branch plastic moduli `(EpT, EpC)`: least-squares slopes of the
/// integrated flow-rule curves between each yield point and the stress where
/// the branch strain magnitude reaches `fit_strain_max`. Only the yields,
/// hoop stress, and hardening parameter of `state` are read.
pub fn plastic_moduli(state: &BiaxialState, e: f64, fit_strain_max: f64) -> Result<(f64, f64)> {
    let eps_y_t = state.sigma_y_t / e;
    let eps_y_c = state.sigma_y_c / e;
    if !(fit_strain_max > eps_y_t && -fit_strain_max < eps_y_c) {
        return Err(Error::InvalidParameter(format!(
            "fit_strain_max = {fit_strain_max} must exceed both yield strains"
        )));
    }
    let slope = |s_y: f64, target: f64| -> Result<f64> {
        // bracket the stress where the branch strain reaches the target
        let sign = target.signum();
        let mut step = sign * 0.01 * s_y.abs().max(1.0);
        let mut hi = s_y + step;
        while (branch_strain(hi, s_y, state.sigma_h, e, state.hp)? - target) * sign < 0.0 {
            step *= 2.0;
            hi += step;
            if step.abs() > 1e3 * e {
                return Err(Error::QuadratureFailure("no bracket for fit strain".into()));
            }
        }
        let mut lo = s_y;
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if (branch_strain(mid, s_y, state.sigma_h, e, state.hp)? - target) * sign < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s_end = 0.5 * (lo + hi);
        // sample the curve uniformly in stress, then least-squares the slope
        const M: usize = 200;
        let mut pts = Vec::with_capacity(M + 1);
        for i in 0..=M {
            let s = s_y + (s_end - s_y) * i as f64 / M as f64;
            pts.push((branch_strain(s, s_y, state.sigma_h, e, state.hp)?, s));
        }
        let n = pts.len() as f64;
        let mean_eps = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let mean_sig = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let mut sxy = 0.0;
        let mut sxx = 0.0;
        for (eps, sig) in &pts {
            sxy += (eps - mean_eps) * (sig - mean_sig);
            sxx += (eps - mean_eps) * (eps - mean_eps);
        }
        Ok(sxy / sxx)
    };
    let ep_t = slope(state.sigma_y_t, fit_strain_max)?;
    let ep_c = slope(state.sigma_y_c, -fit_strain_max)?;
    Ok((ep_t, ep_c))
}

/// `|x|^r`, total on the whole axis. Even integer exponents avoid the
/// non-smooth absolute value entirely; a zero primal short-circuits to the
/// zero jet (valid continuous extension for the carried orders when r
/// exceeds them, which holds for any realistic transition sharpness).
fn abs_pow<S: Scalar>(x: S, r: f64) -> S {
    let ri = r.round();
    if (r - ri).abs() < 1e-12 && ri.abs() < 1e9 {
        let n = ri as i32;
        if n % 2 == 0 {
            return x.powi(n);
        }
        return x.abs().powi(n);
    }
    let ax = x.abs();
    if ax.value() == 0.0 {
        return x.lift(0.0);
    }
    ax.powf(r)
}

/// `(1 + y)^a` with a first-order fast path when `y` is far below roundoff,
/// the common case for elastic fibers where `y = |E*eps/sigma_y|^R`
/// underflows.
fn one_plus_pow<S: Scalar>(y: S, a: f64) -> S {
    if y.value().abs() < 1e-20 {
        return y.scale(a).add_const(1.0);
    }
    y.add_const(1.0).powf(a)
}

/// One Menegotto-Pinto branch:
/// `E*eps*(b + (1 - b)/(1 + |E*eps/sigma_y_branch|^R)^(1/R))`.
fn branch_stress<S: Scalar>(eps: S, e: f64, sigma_y_branch: f64, b: f64, r: f64) -> S {
    let x = eps.scale(e / sigma_y_branch);
    let y = abs_pow(x, r);
    let knee = one_plus_pow(y, -1.0 / r);
    let factor = knee.scale(1.0 - b).add_const(b);
    eps.scale(e) * factor
}

/// Smooth longitudinal stress: logistic blend of the tensile and compressive
/// branches. Generic over [`Scalar`] so the same code runs on plain values,
/// spatial jets, and taped training variables.
pub fn stress_mp<S: Scalar>(eps_l: S, mat: &SteelMaterial, state: &BiaxialState) -> S {
    let sig_t = branch_stress(eps_l, mat.e, state.sigma_y_t, state.b_t, mat.r);
    let sig_c = branch_stress(eps_l, mat.e, state.sigma_y_c, state.b_c, mat.r);
    // logistic gate 1/(1 + exp(-omega*eps)) in the overflow-safe form
    // (1 + tanh(omega*eps/2))/2; identical function, but tanh saturates
    // cleanly where exp would overflow the jet coefficients
    let gate = eps_l.scale(0.5 * mat.omega).tanh().add_const(1.0).scale(0.5);
    (sig_t - sig_c) * gate + sig_c
}

/// Piecewise-linear reference law (elastic slope `E`, post-yield slopes
/// `EpT`/`EpC` from the branch yields). Verification oracle for
/// [`stress_mp`]; exact piecewise evaluation, not smooth.
pub fn bilinear_reference(eps_l: f64, mat: &SteelMaterial, state: &BiaxialState) -> f64 {
    let eps_y_t = state.sigma_y_t / mat.e;
    let eps_y_c = state.sigma_y_c / mat.e;
    if eps_l > eps_y_t {
        state.sigma_y_t + state.b_t * mat.e * (eps_l - eps_y_t)
    } else if eps_l < eps_y_c {
        state.sigma_y_c + state.b_c * mat.e * (eps_l - eps_y_c)
    } else {
        mat.e * eps_l
    }
}

/// Uniform pseudo-initial strain from internal pressure (Poisson effect of
/// the hoop stress, tensile) and restrained thermal expansion (compressive
/// for heating): `nu*sigma_h/E - alpha*deltaT`.
pub fn initial_strain(p: f64, d: f64, t: f64, nu: f64, alpha: f64, delta_t: f64, e: f64) -> Result<f64> {
    Ok(nu * hoop_stress(p, d, t)? / e - alpha * delta_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autodiff::Jet;
    use approx::assert_relative_eq;

    pub(crate) fn x65() -> SteelMaterial {
        SteelMaterial {
            e: 199e9,
            sigma_y: 448e6,
            sigma_u: 663e6,
            eps_u: 0.3,
            alpha: 12e-6,
            nu: 0.3,
            r: 20.0,
            omega: 8000.0,
        }
    }

    fn von_mises(sigma_l: f64, sigma_h: f64) -> f64 {
        (sigma_l * sigma_l + sigma_h * sigma_h - sigma_l * sigma_h).sqrt()
    }

    #[test]
    fn hoop_stress_examples() {
        let s = hoop_stress(10.26e6, 0.508, 0.00714).unwrap();
        assert_relative_eq!(s, 354.7e6, max_relative = 1e-3);
        assert_eq!(hoop_stress(0.0, 0.508, 0.00714).unwrap(), 0.0);
        // D - 2t = 0.200, t = 0.001
        let s = hoop_stress(1e6, 0.202, 0.001).unwrap();
        assert_relative_eq!(s, 100e6, epsilon = 1e-3);
        assert!(hoop_stress(1e6, 0.01, 0.005).is_err());
    }

    #[test]
    fn biaxial_yield_examples() {
        let (t, c) = biaxial_yield(448e6, 0.0).unwrap();
        assert_relative_eq!(t, 448e6, epsilon = 1.0);
        assert_relative_eq!(c, -448e6, epsilon = 1.0);

        let (t, c) = biaxial_yield(448e6, 354.7e6).unwrap();
        assert_relative_eq!(t, 503.4e6, max_relative = 1e-3);
        assert_relative_eq!(c, -148.7e6, max_relative = 1e-3);

        let (t, c) = biaxial_yield(448e6, 448e6).unwrap();
        assert_relative_eq!(t, 448e6, epsilon = 1.0);
        assert_relative_eq!(c, 0.0, epsilon = 1.0);

        assert!(biaxial_yield(448e6, 448e6 * 2.0 / 3f64.sqrt() + 1e3).is_err());
    }

    #[test]
    fn yield_roots_recover_von_mises_for_random_hoop_stresses() {
        let sigma_y = 448e6;
        let bound = 2.0 * sigma_y / 3f64.sqrt();
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..1000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            let sigma_h = (2.0 * u - 1.0) * bound * 0.999;
            let (t, c) = biaxial_yield(sigma_y, sigma_h).unwrap();
            assert_relative_eq!(von_mises(t, sigma_h), sigma_y, max_relative = 1e-9);
            assert_relative_eq!(von_mises(c, sigma_h), sigma_y, max_relative = 1e-9);
            assert!(c < t);
        }
    }

    #[test]
    fn hardening_parameter_examples() {
        let mat = x65();
        let ep = mat.uniaxial_plastic_modulus();
        assert_relative_eq!(ep, 722e6, max_relative = 1e-3);
        let hp = hardening_parameter(mat.e, ep).unwrap();
        assert_relative_eq!(hp, 724.6e6, max_relative = 1e-3);
        assert_eq!(hardening_parameter(mat.e, 0.0).unwrap(), 0.0);
        assert_relative_eq!(hardening_parameter(mat.e, mat.e / 2.0).unwrap(), mat.e, epsilon = 1.0);
        assert!(hardening_parameter(mat.e, mat.e).is_err());
    }

    #[test]
    fn plastic_moduli_collapse_to_uniaxial_at_zero_hoop_stress() {
        let mat = x65();
        let state = BiaxialState::uniaxial(&mat).unwrap();
        let (ep_t, ep_c) = plastic_moduli(&state, mat.e, 0.05).unwrap();
        let ep = mat.uniaxial_plastic_modulus();
        assert_relative_eq!(ep_t, ep, max_relative = 1e-3);
        assert_relative_eq!(ep_c, ep, max_relative = 1e-3);
        assert_relative_eq!(ep_t, ep_c, max_relative = 1e-9);
    }

    /// Independent oracle: composite trapezoid with 2*10^4 subdivisions per
    /// strain evaluation, same sampling and least-squares procedure.
    fn plastic_moduli_oracle(state: &BiaxialState, e: f64, fit_strain_max: f64) -> (f64, f64) {
        let trapezoid = |a: f64, b: f64| -> f64 {
            let n = 20_000;
            let h = (b - a) / n as f64;
            let mut acc = 0.5 * (flow_integrand(a, state.sigma_h) + flow_integrand(b, state.sigma_h));
            for i in 1..n {
                acc += flow_integrand(a + i as f64 * h, state.sigma_h);
            }
            acc * h
        };
        let strain = |s: f64, s_y: f64| s / e + trapezoid(s_y, s) / (4.0 * state.hp);
        let slope = |s_y: f64, target: f64| -> f64 {
            let sign = target.signum();
            let mut step = sign * 0.01 * s_y.abs();
            let mut hi = s_y + step;
            while (strain(hi, s_y) - target) * sign < 0.0 {
                step *= 2.0;
                hi += step;
            }
            let mut lo = s_y;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if (strain(mid, s_y) - target) * sign < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let s_end = 0.5 * (lo + hi);
            let m = 200;
            let pts: Vec<(f64, f64)> = (0..=m)
                .map(|i| {
                    let s = s_y + (s_end - s_y) * i as f64 / m as f64;
                    (strain(s, s_y), s)
                })
                .collect();
            let n = pts.len() as f64;
            let me = pts.iter().map(|p| p.0).sum::<f64>() / n;
            let ms = pts.iter().map(|p| p.1).sum::<f64>() / n;
            let sxy: f64 = pts.iter().map(|(x, y)| (x - me) * (y - ms)).sum();
            let sxx: f64 = pts.iter().map(|(x, _)| (x - me) * (x - me)).sum();
            sxy / sxx
        };
        (slope(state.sigma_y_t, fit_strain_max), slope(state.sigma_y_c, -fit_strain_max))
    }

    #[test]
    fn plastic_moduli_match_independent_quadrature_oracle() {
        let mat = x65();
        let state = BiaxialState::new(&mat, 354.7e6, 0.05).unwrap();
        let (ep_t, ep_c) = plastic_moduli(&state, mat.e, 0.05).unwrap();
        let (oracle_t, oracle_c) = plastic_moduli_oracle(&state, mat.e, 0.05);
        assert_relative_eq!(ep_t, oracle_t, max_relative = 1e-6);
        assert_relative_eq!(ep_c, oracle_c, max_relative = 1e-6);
    }

    #[test]
    fn stress_mp_examples() {
        let mat = x65();
        let state = BiaxialState::uniaxial(&mat).unwrap();
        assert_eq!(stress_mp(0.0, &mat, &state), 0.0);

        // slope far out approaches b_t * E
        let s1 = stress_mp(0.1, &mat, &state);
        let s2 = stress_mp(0.2, &mat, &state);
        assert_relative_eq!((s2 - s1) / 0.1, state.b_t * mat.e, max_relative = 1e-3);

        // elastic range within 1% of E*eps
        let s = stress_mp(0.001, &mat, &state);
        assert_relative_eq!(s, 199e6, max_relative = 0.01);
    }

    #[test]
    fn stress_mp_tracks_bilinear_reference_away_from_the_knees() {
        let mat = x65();
        for sigma_h in [0.0, 354.7e6] {
            let state = BiaxialState::new(&mat, sigma_h, 0.05).unwrap();
            let eps_y_t = state.sigma_y_t / mat.e;
            let eps_y_c = state.sigma_y_c / mat.e;
            let mut worst: f64 = 0.0;
            let n = 4000;
            for i in 0..=n {
                let eps = -0.05 + 0.1 * i as f64 / n as f64;
                let near_knee = (eps - eps_y_t).abs() < 0.2 * eps_y_t.abs()
                    || (eps - eps_y_c).abs() < 0.2 * eps_y_c.abs();
                if near_knee {
                    continue;
                }
                let diff = (stress_mp(eps, &mat, &state) - bilinear_reference(eps, &mat, &state)).abs();
                worst = worst.max(diff);
            }
            assert!(
                worst < 0.02 * mat.sigma_y,
                "max |smooth - bilinear| = {:.3e} at sigma_h = {sigma_h:.3e}",
                worst
            );
        }
    }

    #[test]
    fn bilinear_reference_piecewise_values() {
        let mat = x65();
        let state = BiaxialState::uniaxial(&mat).unwrap();
        let eps_y = mat.sigma_y / mat.e;
        assert_relative_eq!(bilinear_reference(0.5 * eps_y, &mat, &state), mat.e * 0.5 * eps_y);
        let ep = mat.uniaxial_plastic_modulus();
        assert_relative_eq!(
            bilinear_reference(2.0 * eps_y, &mat, &state),
            mat.sigma_y + ep * eps_y,
            max_relative = 1e-9
        );
    }

    #[test]
    fn stress_mp_odd_under_zero_hoop_stress_only() {
        let mat = x65();
        let state = BiaxialState::uniaxial(&mat).unwrap();
        for i in 1..200 {
            let eps = 0.0005 * i as f64;
            let plus = stress_mp(eps, &mat, &state);
            let minus = stress_mp(-eps, &mat, &state);
            assert_relative_eq!(plus, -minus, max_relative = 1e-9);
        }
        let biaxial = BiaxialState::new(&mat, 354.7e6, 0.05).unwrap();
        let plus = stress_mp(0.01, &mat, &biaxial);
        let minus = stress_mp(-0.01, &mat, &biaxial);
        assert!((plus + minus).abs() > 1e-3 * mat.sigma_y);
        assert!(biaxial.sigma_y_t != -biaxial.sigma_y_c);
    }

    #[test]
    fn stress_mp_slope_positive_everywhere_and_elastic_at_origin() {
        let mat = x65();
        for sigma_h in [0.0, 354.7e6] {
            let state = BiaxialState::new(&mat, sigma_h, 0.05).unwrap();
            let n = 10_000;
            for i in 0..=n {
                let eps = -0.1 + 0.2 * i as f64 / n as f64;
                let jet: Jet<f64, 2> = Jet::variable(eps);
                let d = stress_mp(jet, &mat, &state).derivative(1);
                assert!(d > 0.0, "non-monotone at eps = {eps}, sigma_h = {sigma_h}");
            }
        }
        let state = BiaxialState::uniaxial(&mat).unwrap();
        let jet: Jet<f64, 2> = Jet::variable(0.0);
        let d0 = stress_mp(jet, &mat, &state).derivative(1);
        assert_relative_eq!(d0, mat.e, max_relative = 0.01);
    }

    #[test]
    fn stress_mp_accepts_high_order_jets() {
        let mat = x65();
        let state = BiaxialState::new(&mat, 354.7e6, 0.05).unwrap();
        let jet: Jet<f64, 5> = Jet::variable(0.004);
        let s = stress_mp(jet, &mat, &state);
        for k in 0..5 {
            assert!(s.c[k].is_finite());
        }
        // first derivative against central differences
        let h = 1e-7;
        let fd = (stress_mp(0.004 + h, &mat, &state) - stress_mp(0.004 - h, &mat, &state)) / (2.0 * h);
        assert_relative_eq!(s.derivative(1), fd, max_relative = 1e-6);
    }

    #[test]
    fn initial_strain_examples() {
        let e0 = initial_strain(10.26e6, 0.508, 0.00714, 0.3, 12e-6, 60.0, 199e9).unwrap();
        assert_relative_eq!(e0, -1.85e-4, max_relative = 2e-3);
        assert_eq!(initial_strain(0.0, 0.508, 0.00714, 0.3, 12e-6, 0.0, 199e9).unwrap(), 0.0);
        let cold = initial_strain(0.0, 0.508, 0.00714, 0.3, 12e-6, -60.0, 199e9).unwrap();
        assert_relative_eq!(cold, 7.2e-4, max_relative = 1e-12);
    }
}
