use gpra::fdm::{solve_fdm, GridConfig};
use gpra::material::SteelMaterial;
use gpra::scenario::{PipeProblem, ScenarioSample};
use gpra::section::build_fiber_grid;
use gpra::soil::SoilModel;

fn main() {
    let problem = PipeProblem {
        d: 0.508, t: 0.00714, length: 90.0,
        block_start: 40.0, block_len: 10.0, beta_deg: 90.0,
        pressure: 10.26e6, delta_temp: 60.0, ramp_width: 0.0,
        material: SteelMaterial { e: 199e9, sigma_y: 448e6, sigma_u: 663e6,
            eps_u: 0.3, alpha: 12e-6, nu: 0.3, r: 20.0, omega: 8000.0 },
        soil_model: SoilModel::default(),
        grid: build_fiber_grid(0.508, 0.00714, 4, 24).unwrap(),
    };
    let deltas: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().unwrap()).collect();
    let deltas = if deltas.is_empty() { vec![0.05, 0.11, 0.2] } else { deltas };
    for delta in deltas {
        let sample = ScenarioSample::new(delta, 45.0, 25.0, 19.0, 1.45);
        let t0 = std::time::Instant::now();
        match solve_fdm(&sample, &problem, &GridConfig::default(), 0.05) {
            Ok(sol) => println!(
                "delta {:5.3}: eps_t {:+.5e}  eps_c {:+.5e}  w_max {:.4}  steps {}  newton {}  |R| {:.2e}  [{:?}]",
                delta, sol.eps_max_tensile, sol.eps_min_compressive,
                sol.w.iter().fold(0.0f64, |a, b| a.max(b.abs())),
                sol.diagnostics.load_steps, sol.diagnostics.newton_iterations,
                sol.residual_norm, t0.elapsed()
            ),
            Err(e) => println!("delta {delta}: FAILED {e} [{:?}]", t0.elapsed()),
        }
    }
}
