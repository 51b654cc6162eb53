//! Randomized invariants spanning the library: conservation, bounds, and
//! symmetry properties that every scheme must keep on arbitrary data.

use proptest::prelude::*;
use sharpfv::diagnostics::{norm, total_variation, NormKind};
use sharpfv::glimm::glimm_step;
use sharpfv::grid::{CellField, Grid1D};
use sharpfv::limited::{
    minmod, step_flux_limited, step_limited_downwind, LimiterKind,
};
use sharpfv::twofluid::y_flux_bounds_scaled;
use sharpfv::vofire::transverse_reconstruct;

fn cell_field(values: Vec<f64>) -> CellField {
    let grid = Grid1D::periodic(0.0, 1.0, values.len()).unwrap();
    CellField::new(grid, values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norms_satisfy_the_triangle_inequality(
        a in prop::collection::vec(-10.0..10.0f64, 12),
        b in prop::collection::vec(-10.0..10.0f64, 12),
        c in prop::collection::vec(-10.0..10.0f64, 12),
    ) {
        let (fa, fb, fc) = (cell_field(a), cell_field(b), cell_field(c));
        for kind in [NormKind::L1, NormKind::L2, NormKind::LInf] {
            let ac = norm(&fa, &fc, kind).unwrap();
            let ab = norm(&fa, &fb, kind).unwrap();
            let bc = norm(&fb, &fc, kind).unwrap();
            prop_assert!(ac <= ab + bc + 1e-12);
        }
    }

    #[test]
    fn total_variation_ignores_rotations(
        values in prop::collection::vec(-5.0..5.0f64, 4..24),
        shift in 0usize..24,
    ) {
        let n = values.len();
        let mut rotated = values.clone();
        rotated.rotate_right(shift % n);
        let tv_a = total_variation(&cell_field(values));
        let tv_b = total_variation(&cell_field(rotated));
        prop_assert!((tv_a - tv_b).abs() < 1e-12);
    }

    #[test]
    fn minmod_fold_is_order_independent(
        xs in prop::collection::vec(-5.0..5.0f64, 1..6),
    ) {
        let forward = minmod(&xs);
        let mut rev = xs.clone();
        rev.reverse();
        prop_assert_eq!(forward, minmod(&rev));
        // Zero unless all arguments share a sign, then the smallest wins.
        if xs.iter().all(|&x| x > 0.0) {
            prop_assert_eq!(forward, xs.iter().cloned().fold(f64::INFINITY, f64::min));
        } else if xs.iter().all(|&x| x < 0.0) {
            prop_assert_eq!(forward, xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        } else if xs.iter().any(|&x| x > 0.0) && xs.iter().any(|&x| x < 0.0) {
            prop_assert_eq!(forward, 0.0);
        }
    }

    #[test]
    fn limited_steps_keep_mass_and_bounds(
        values in prop::collection::vec(0.0..1.0f64, 8..32),
        nu in 0.05..0.95f64,
    ) {
        let c = cell_field(values);
        let lo = c.values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mass = c.conserved_sum();
        let mut stepped = vec![
            step_flux_limited(&c, nu, LimiterKind::Minmod).unwrap(),
            step_flux_limited(&c, nu, LimiterKind::Superbee).unwrap(),
            step_flux_limited(&c, nu, LimiterKind::Ultrabee).unwrap(),
            step_limited_downwind(&c, nu).unwrap(),
        ];
        for next in stepped.drain(..) {
            prop_assert!((next.conserved_sum() - mass).abs() < 1e-12);
            for &v in &next.values {
                prop_assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
            }
        }
    }

    #[test]
    fn glimm_step_only_rearranges_values(
        values in prop::collection::vec(-3.0..3.0f64, 4..20),
        nu in 0.0..1.0f64,
        sample in 0.0..1.0f64,
    ) {
        let c = cell_field(values);
        let next = glimm_step(&c, nu, sample).unwrap();
        let n = c.n();
        for j in 0..n {
            let kept = next.values[j] == c.values[j];
            let shifted = next.values[j] == c.values[(j + n - 1) % n];
            prop_assert!(kept || shifted);
        }
    }

    #[test]
    fn reconstruction_conserves_and_stays_in_hull(
        c_j in -10.0..10.0f64,
        c_k in -10.0..10.0f64,
        c_l in -10.0..10.0f64,
        s_jk in 0.01..1.0f64,
        s_jl in 0.01..1.0f64,
    ) {
        let r = transverse_reconstruct(c_j, c_k, c_l, s_jk, s_jl).unwrap();
        let total = s_jk * r.c_toward_k + s_jl * r.c_toward_l;
        prop_assert!((total - (s_jk + s_jl) * c_j).abs() < 1e-11);
        prop_assert!((0.0..=1.0).contains(&r.lambda_toward_k));
        prop_assert!((0.0..=1.0).contains(&r.lambda_toward_l));
        let lo = c_j.min(c_k).min(c_l) - 1e-11;
        let hi = c_j.max(c_k).max(c_l) + 1e-11;
        prop_assert!((lo..=hi).contains(&r.c_toward_k));
        prop_assert!((lo..=hi).contains(&r.c_toward_l));
    }

    #[test]
    fn fraction_interval_is_sound(
        ys in prop::collection::vec(0.0..1.0f64, 4),
        speeds in prop::collection::vec(0.1..2.0f64, 3),
        forward in any::<bool>(),
        export in 0.05..0.999f64,
    ) {
        let sign = if forward { 1.0 } else { -1.0 };
        let us: Vec<f64> = speeds.iter().map(|s| sign * s).collect();
        let b = y_flux_bounds_scaled(
            ys[0], ys[1], ys[2], ys[3], us[0], us[1], us[2], export,
        );
        prop_assert!(b.lo <= b.hi + 1e-12);
        // The interval never leaves the face pair, and always admits the
        // donor value.
        let pair_lo = ys[1].min(ys[2]);
        let pair_hi = ys[1].max(ys[2]);
        prop_assert!(b.lo >= pair_lo - 1e-12 && b.hi <= pair_hi + 1e-12);
        let donor = if forward { ys[1] } else { ys[2] };
        prop_assert!(b.lo <= donor + 1e-12 && donor <= b.hi + 1e-12);
    }
}
