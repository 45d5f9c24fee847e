//! Reference-solver verification: trivial and symmetric cases, the linear
//! Winkler mode against closed-form beam-on-elastic-foundation solutions,
//! grid convergence, and consistency of converged fields with the
//! continuous residual operator through local polynomial jets.

use approx::assert_relative_eq;
use gpra::autodiff::Jet;
use gpra::fdm::{solve_fdm, solve_linear_winkler, GridConfig};
use gpra::material::SteelMaterial;
use gpra::scenario::{residuals, PipeProblem, ScenarioSample};
use gpra::section::build_fiber_grid;
use gpra::soil::SoilModel;

const FIT_STRAIN_MAX: f64 = 0.05;

fn case_study(pressure: f64, delta_temp: f64) -> PipeProblem {
    PipeProblem {
        d: 0.508,
        t: 0.00714,
        length: 90.0,
        block_start: 40.0,
        block_len: 10.0,
        beta_deg: 90.0,
        pressure,
        delta_temp,
        ramp_width: 0.0,
        material: SteelMaterial {
            e: 199e9,
            sigma_y: 448e6,
            sigma_u: 663e6,
            eps_u: 0.3,
            alpha: 12e-6,
            nu: 0.3,
            r: 20.0,
            omega: 8000.0,
        },
        soil_model: SoilModel::default(),
        grid: build_fiber_grid(0.508, 0.00714, 4, 24).unwrap(),
    }
}

fn table_means() -> ScenarioSample {
    ScenarioSample::new(1.1, 45.0, 25.0, 19.0, 1.45)
}

#[test]
fn zero_load_gives_zero_fields() {
    let problem = case_study(0.0, 0.0);
    let sample = ScenarioSample::new(0.0, 45.0, 25.0, 19.0, 1.45);
    let sol = solve_fdm(&sample, &problem, &GridConfig::default(), FIT_STRAIN_MAX).unwrap();
    assert!(sol.u.iter().all(|v| v.abs() < 1e-12));
    assert!(sol.w.iter().all(|v| v.abs() < 1e-12));
    assert!(sol.eps_max_tensile.abs() < 1e-12);
}

#[test]
fn perpendicular_crossing_is_symmetric() {
    let problem = case_study(0.0, 0.0);
    let sample = ScenarioSample::new(0.4, 45.0, 25.0, 19.0, 1.45);
    let sol = solve_fdm(&sample, &problem, &GridConfig::default(), FIT_STRAIN_MAX).unwrap();
    let n = sol.x.len() - 1;
    let w_amp = sol.w.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let u_amp = sol.u.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    for i in 0..=n {
        let j = n - i;
        assert!(
            (sol.w[i] - sol.w[j]).abs() <= 1e-8 * w_amp,
            "w not symmetric at node {i}"
        );
        assert!(
            (sol.u[i] + sol.u[j]).abs() <= 1e-8 * u_amp.max(1e-12),
            "u not antisymmetric at node {i}"
        );
    }
    // fixed ends hold
    assert!(sol.u[0].abs() < 1e-10 && sol.w[0].abs() < 1e-10);
    assert!(sol.w_x[0].abs() < 1e-12);
}

/// Hetenyi step response of an infinite beam on an elastic foundation:
/// deflection of `w(x)` for ground step `s` over `x > 0`.
fn winkler_step_response(x: f64, lambda: f64) -> f64 {
    // unit step: w(x) = 1 - exp(-l x)(cos l x + sin l x)/2 for x >= 0,
    //            w(x) = exp(l x)(cos l x - sin l x)/2     for x < 0
    if x >= 0.0 {
        1.0 - 0.5 * (-lambda * x).exp() * ((lambda * x).cos() + (lambda * x).sin())
    } else {
        0.5 * (lambda * x).exp() * ((lambda * x).cos() - (lambda * x).sin())
    }
}

#[test]
fn linear_winkler_matches_closed_form() {
    let problem = case_study(0.0, 0.0);
    let spacing = 0.05;
    let n = (problem.length / spacing).round() as usize;
    let ei = problem.material.e * problem.grid.second_moment();
    let k = 2e6; // N/m^2, gives a decay length well inside the domain
    let lambda = (k / (4.0 * ei)).powf(0.25);

    // zero load stays zero
    let wg = vec![0.0; n + 1];
    let sol = solve_linear_winkler(&problem, k, &wg, spacing).unwrap();
    assert!(sol.w.iter().all(|v| v.abs() < 1e-14));

    // uniform ground displacement: interior approaches the step value
    let s = 0.3;
    let wg = vec![s; n + 1];
    let sol = solve_linear_winkler(&problem, k, &wg, spacing).unwrap();
    let mid = n / 2;
    assert_relative_eq!(sol.w[mid], s, max_relative = 1e-6);

    // rectangular block: superposed step responses away from edges/ends
    let (a, b) = (40.0, 50.0);
    let wg: Vec<f64> = (0..=n)
        .map(|i| {
            let x = i as f64 * spacing;
            if (a..=b).contains(&x) {
                s
            } else {
                0.0
            }
        })
        .collect();
    let sol = solve_linear_winkler(&problem, k, &wg, spacing).unwrap();
    let mut worst = 0.0f64;
    for i in 0..=n {
        let x = i as f64 * spacing;
        if x < 15.0 || x > 75.0 {
            continue; // keep clear of the clamped ends
        }
        if (x - a).abs() < 1.5 / lambda || (x - b).abs() < 1.5 / lambda {
            continue; // the analytic form is for an infinite beam; skip edges
        }
        let reference = s * (winkler_step_response(x - a, lambda) - winkler_step_response(x - b, lambda));
        worst = worst.max((sol.w[i] - reference).abs());
    }
    assert!(
        worst < 0.01 * s,
        "max deviation from analytic superposition: {worst:.3e}"
    );
}

#[test]
fn small_displacement_elastic_case_matches_winkler_beam() {
    // With a tiny movement the springs stay linear (tanh(x) ~ x near zero)
    // and fibers stay elastic, so the full nonlinear solve must agree with
    // the analytic linear solution built from the springs' initial
    // stiffness k = Pu * k_smooth / delta_p.
    let problem = case_study(0.0, 0.0);
    let sample = ScenarioSample::new(1e-4, 45.0, 25.0, 19.0, 1.45);
    let cfg = GridConfig {
        spacing: 0.05,
        ..GridConfig::default()
    };
    let sol = solve_fdm(&sample, &problem, &cfg, FIT_STRAIN_MAX).unwrap();

    let law = gpra::soil::SpringLaw::build(&sample.soil, problem.d, &problem.soil_model).unwrap();
    let k = law.pu * law.k_smooth / law.delta_p;
    let ei = problem.material.e * problem.grid.second_moment();
    let lambda = (k / (4.0 * ei)).powf(0.25);
    let (a, b) = (40.0, 50.0);

    let mut worst = 0.0f64;
    let w_max = sol.w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for (i, &x) in sol.x.iter().enumerate() {
        if x < 15.0 || x > 75.0 {
            continue;
        }
        let reference = sample.delta
            * (winkler_step_response(x - a, lambda) - winkler_step_response(x - b, lambda));
        worst = worst.max((sol.w[i] - reference).abs());
    }
    assert!(
        worst < 0.01 * w_max,
        "max |w - analytic| = {worst:.3e} vs peak {w_max:.3e}"
    );
}

#[test]
fn grid_convergence_on_peak_strain() {
    let problem = case_study(10.26e6, 60.0);
    let sample = table_means();
    let coarse = solve_fdm(
        &sample,
        &problem,
        &GridConfig {
            spacing: 0.2,
            ..GridConfig::default()
        },
        FIT_STRAIN_MAX,
    )
    .unwrap();
    let fine = solve_fdm(
        &sample,
        &problem,
        &GridConfig {
            spacing: 0.1,
            ..GridConfig::default()
        },
        FIT_STRAIN_MAX,
    )
    .unwrap();
    assert_relative_eq!(
        coarse.eps_max_tensile,
        fine.eps_max_tensile,
        max_relative = 0.01
    );
}

#[test]
fn peak_strain_monotone_in_movement_magnitude() {
    let problem = case_study(10.26e6, 60.0);
    let mut last = 0.0;
    for delta in [0.2, 0.6, 1.0, 1.4, 1.8] {
        let sample = ScenarioSample::new(delta, 45.0, 25.0, 19.0, 1.45);
        let sol = solve_fdm(&sample, &problem, &GridConfig::default(), FIT_STRAIN_MAX).unwrap();
        assert!(
            sol.eps_max_tensile >= last,
            "peak strain dropped at delta = {delta}"
        );
        last = sol.eps_max_tensile;
    }
}

/// Full-scale sanity anchor: at the random-variable means with pressure and
/// temperature applied, the peak tensile strain demand must land in the
/// 1.5..2.3% band reported for this configuration.
#[test]
fn table_means_biaxial_peak_strain_in_reported_band() {
    let problem = case_study(10.26e6, 60.0);
    let sol = solve_fdm(&table_means(), &problem, &GridConfig::default(), FIT_STRAIN_MAX).unwrap();
    assert!(
        sol.eps_max_tensile > 0.015 && sol.eps_max_tensile < 0.023,
        "peak tensile strain {:.4}% outside [1.5%, 2.3%]",
        100.0 * sol.eps_max_tensile
    );
    assert!(sol.eps_min_compressive < 0.0);
}

/// Converged fields, re-expanded as local quartic-polynomial jets, must
/// nearly annihilate the continuous residual operator.
#[test]
fn converged_fields_satisfy_continuous_residuals() {
    let problem = case_study(0.0, 0.0);
    let sample = ScenarioSample::new(0.05, 45.0, 25.0, 19.0, 1.45);
    let cfg = GridConfig {
        spacing: 0.025,
        ..GridConfig::default()
    };
    let sol = solve_fdm(&sample, &problem, &cfg, FIT_STRAIN_MAX).unwrap();
    let law = gpra::soil::SpringLaw::build(&sample.soil, problem.d, &problem.soil_model).unwrap();

    // quartic fit through five consecutive nodes -> Taylor jet at the center
    let jet_at = |field: &[f64], i: usize, dx: f64| -> Jet<f64, 5> {
        let f = [field[i - 2], field[i - 1], field[i], field[i + 1], field[i + 2]];
        let c0 = f[2];
        let c1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * dx);
        let c2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * dx * dx) / 2.0;
        let c3 = (-f[0] + 2.0 * f[1] - 2.0 * f[3] + f[4]) / (2.0 * dx.powi(3)) / 6.0;
        let c4 = (f[0] - 4.0 * f[1] + 6.0 * f[2] - 4.0 * f[3] + f[4]) / dx.powi(4) / 24.0;
        Jet {
            c: [c0, c1, c2, c3, c4],
        }
    };

    let dx = sol.x[1] - sol.x[0];
    let mut worst = 0.0f64;
    for i in (2..sol.x.len() - 2).step_by(7) {
        let u = jet_at(&sol.u, i, dx);
        let w = jet_at(&sol.w, i, dx);
        let (r1, r2) = residuals(sol.x[i], &sample, u, w, &problem, FIT_STRAIN_MAX).unwrap();
        worst = worst.max((r1 / law.tu).abs()).max((r2 / law.pu).abs());
    }
    assert!(
        worst < 1e-5,
        "scaled continuous residual of converged fields: {worst:.3e}"
    );
}
