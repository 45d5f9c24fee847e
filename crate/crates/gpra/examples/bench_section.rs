use gpra::material::{BiaxialState, SteelMaterial};
use gpra::section::{build_fiber_grid, section_forces};
use std::time::Instant;

fn main() {
    let mat = SteelMaterial { e: 199e9, sigma_y: 448e6, sigma_u: 663e6, eps_u: 0.3,
        alpha: 12e-6, nu: 0.3, r: 20.0, omega: 8000.0 };
    let state = BiaxialState::new(&mat, 354.7e6, 0.05).unwrap();
    let grid = build_fiber_grid(0.508, 0.00714, 4, 24).unwrap();
    // mix of elastic and plastic states
    let cases: Vec<(f64, f64, f64)> = (0..1000)
        .map(|i| {
            let t = i as f64 / 1000.0;
            (2e-3 * t, 0.05 * t, 0.04 * (t - 0.5))
        })
        .collect();
    let t0 = Instant::now();
    let mut acc = 0.0;
    let reps = 100;
    for _ in 0..reps {
        for &(ux, wx, wxx) in &cases {
            let (n, m) = section_forces(ux, wx, wxx, &grid, &mat, &state, -1.85e-4);
            acc += n + m;
        }
    }
    let dt = t0.elapsed();
    println!("acc {acc:e}");
    println!("{:.1} ns per section eval ({} evals)", dt.as_nanos() as f64 / (reps * cases.len()) as f64, reps * cases.len());
    println!("{:.1} ns per fiber", dt.as_nanos() as f64 / (reps * cases.len() * 96) as f64);
}
