//! Soil-spring coefficients transcribed from the American Lifelines Alliance
//! "Guidelines for the Design of Buried Steel Pipe" (ASCE, July 2001),
//! Appendix B. Each constant notes its source location in that document.
//!
//! Unit conventions of the source are preserved where the fits demand them
//! (the adhesion-factor polynomial takes cohesion in kips per square foot);
//! the public functions convert from SI.

/// Pascals per kip/ft^2 (1 lbf/ft^2 = 47.880 26 Pa, 1 kip = 1000 lbf).
pub const PA_PER_KSF: f64 = 47_880.26;

/// Adhesion factor alpha(c) for the axial clay term, ALA (2001) Appendix B,
/// Section B.1, Figure B.1 curve fit:
/// `alpha = 0.608 - 0.123 c - 0.274/(c^2 + 1) + 0.695/(c^3 + 1)`, c in ksf.
pub fn adhesion_factor(cohesion_pa: f64) -> f64 {
    let c = cohesion_pa / PA_PER_KSF;
    0.608 - 0.123 * c - 0.274 / (c * c + 1.0) + 0.695 / (c * c * c + 1.0)
}

/// Horizontal bearing capacity factor for clay, ALA (2001) Appendix B,
/// Section B.3: `Nch = a + b x + c/(x+1)^2 + d/(x+1)^3 <= 9` with `x = H/D`.
pub fn nch(cohesion_pa: f64, h_over_d: f64) -> f64 {
    if cohesion_pa <= 0.0 {
        return 0.0;
    }
    let x = h_over_d;
    let v = 6.752 + 0.065 * x - 11.063 / (x + 1.0).powi(2) + 7.119 / (x + 1.0).powi(3);
    v.min(9.0)
}

/// Rows of the horizontal bearing capacity factor table for sand,
/// ALA (2001) Appendix B, Section B.3:
/// `Nqh = a + b x + c x^2 + d x^3 + e x^4`, `x = H/D`, tabulated at
/// phi = 20..45 degrees and interpolated linearly in between.
const NQH_ROWS: [(f64, [f64; 5]); 6] = [
    (20.0, [2.399, 0.439, -0.030, 1.059e-3, -1.754e-5]),
    (25.0, [3.332, 0.839, -0.090, 5.606e-3, -1.319e-4]),
    (30.0, [4.565, 1.234, -0.089, 4.275e-3, -9.159e-5]),
    (35.0, [6.816, 2.019, -0.146, 7.651e-3, -1.683e-4]),
    (40.0, [10.959, 1.783, 0.045, -5.425e-3, -1.153e-4]),
    (45.0, [17.658, 3.309, 0.048, -6.443e-3, -1.299e-4]),
];

fn nqh_at_row(coeff: &[f64; 5], x: f64) -> f64 {
    coeff[0] + coeff[1] * x + coeff[2] * x * x + coeff[3] * x.powi(3) + coeff[4] * x.powi(4)
}

/// Horizontal bearing capacity factor for sand. The table starts at 20
/// degrees; below that the factor is interpolated linearly down to
/// `Nqh(0) = 0` (frictionless soil offers no sand-term resistance), which is
/// an extension of the source table, not part of it. Above 45 degrees the
/// last row is held.
pub fn nqh(phi_deg: f64, h_over_d: f64) -> f64 {
    if phi_deg <= 0.0 {
        return 0.0;
    }
    let x = h_over_d;
    let first = &NQH_ROWS[0];
    if phi_deg <= first.0 {
        return phi_deg / first.0 * nqh_at_row(&first.1, x);
    }
    let last = &NQH_ROWS[NQH_ROWS.len() - 1];
    if phi_deg >= last.0 {
        return nqh_at_row(&last.1, x);
    }
    for pair in NQH_ROWS.windows(2) {
        let (phi0, c0) = &pair[0];
        let (phi1, c1) = &pair[1];
        if phi_deg <= *phi1 {
            let t = (phi_deg - phi0) / (phi1 - phi0);
            return (1.0 - t) * nqh_at_row(c0, x) + t * nqh_at_row(c1, x);
        }
    }
    unreachable!()
}

/// Axial yield displacement by soil stiffness class, ALA (2001) Appendix B,
/// Section B.1: 0.1 in (3 mm) dense sand, 0.2 in (5 mm) loose sand,
/// 0.3 in (8 mm) stiff clay, 0.4 in (10 mm) soft clay.
pub const DELTA_T_DENSE_SAND_M: f64 = 0.003;
pub const DELTA_T_LOOSE_SAND_M: f64 = 0.005;
pub const DELTA_T_STIFF_CLAY_M: f64 = 0.008;
pub const DELTA_T_SOFT_CLAY_M: f64 = 0.010;

/// Lateral yield displacement, ALA (2001) Appendix B, Section B.3:
/// `delta_p = 0.04 (H + D/2)`, bounded to the 0.10 D .. 0.15 D range.
pub fn lateral_yield_displacement(h_m: f64, d_m: f64) -> f64 {
    (0.04 * (h_m + 0.5 * d_m)).max(0.10 * d_m).min(0.15 * d_m)
}
