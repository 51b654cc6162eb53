//! Discrete error norms, total variation, and convergence-order estimation.

use crate::error::{Error, Result};
use crate::grid::{Boundary, CellField};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    L1,
    L2,
    LInf,
}

/// Discrete norm of `a - b`; the fields must share one grid.
///
/// L1 = dx * sum |d|, L2 = sqrt(dx * sum d^2), LInf = max |d|.
pub fn norm(a: &CellField, b: &CellField, kind: NormKind) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let dx = a.grid.dx();
    let diffs = a.values.iter().zip(&b.values).map(|(x, y)| x - y);
    Ok(match kind {
        NormKind::L1 => dx * diffs.map(f64::abs).sum::<f64>(),
        NormKind::L2 => (dx * diffs.map(|d| d * d).sum::<f64>()).sqrt(),
        NormKind::LInf => diffs.map(f64::abs).fold(0.0, f64::max),
    })
}

/// Sum of absolute jumps between neighboring cells. Periodic grids include the
/// wrap-around jump; inflow grids include the jumps against both ghost values.
pub fn total_variation(c: &CellField) -> f64 {
    let n = c.n();
    let interior: f64 = c.values.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    match c.grid.boundary {
        Boundary::Periodic => interior + (c.values[0] - c.values[n - 1]).abs(),
        Boundary::Inflow { left, right } => {
            interior + (c.values[0] - left).abs() + (right - c.values[n - 1]).abs()
        }
    }
}

/// Pairwise observed convergence orders log(e_i/e_{i+1}) / log(dx_i/dx_{i+1}).
///
/// A pair with a vanishing error has no defined order and yields `None`.
pub fn estimate_eoc(errors: &[f64], dxs: &[f64]) -> Result<Vec<Option<f64>>> {
    if errors.len() != dxs.len() || errors.len() < 2 {
        return Err(Error::InvalidArgument(
            "need matching error/dx sequences of length >= 2".into(),
        ));
    }
    if errors.iter().any(|e| !e.is_finite() || *e < 0.0) {
        return Err(Error::InvalidArgument("errors must be finite and nonnegative".into()));
    }
    if dxs.iter().any(|h| !h.is_finite() || *h <= 0.0) || dxs.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "dx sequence must be positive and strictly decreasing".into(),
        ));
    }
    Ok(errors
        .windows(2)
        .zip(dxs.windows(2))
        .map(|(e, h)| {
            if e[0] > 0.0 && e[1] > 0.0 {
                Some((e[0] / e[1]).ln() / (h[0] / h[1]).ln())
            } else {
                None
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;

    fn field(values: Vec<f64>) -> CellField {
        let g = Grid1D::periodic(0.0, 1.0, values.len()).unwrap();
        CellField::new(g, values).unwrap()
    }

    #[test]
    fn norms_of_unit_difference() {
        // Difference (1, 0, 0, 0) on dx = 1/4.
        let a = field(vec![1.0, 0.0, 0.0, 0.0]);
        let b = field(vec![0.0; 4]);
        assert!((norm(&a, &b, NormKind::L1).unwrap() - 0.25).abs() < 1e-15);
        assert!((norm(&a, &b, NormKind::L2).unwrap() - 0.5).abs() < 1e-15);
        assert!((norm(&a, &b, NormKind::LInf).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn norm_rejects_grid_mismatch() {
        let a = field(vec![0.0; 4]);
        let g = Grid1D::periodic(0.0, 2.0, 4).unwrap();
        let b = CellField::new(g, vec![0.0; 4]).unwrap();
        assert!(matches!(norm(&a, &b, NormKind::L1), Err(Error::GridMismatch)));
    }

    #[test]
    fn tv_of_single_step_is_two_jumps() {
        // Periodic closure sees the ascent and the wrap-around descent.
        let c = field(vec![0.0, 0.0, 1.0, 1.0]);
        assert!((total_variation(&c) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn tv_of_constant_is_zero() {
        let c = field(vec![0.7; 6]);
        assert!(total_variation(&c).abs() < 1e-15);
    }

    #[test]
    fn tv_invariant_under_cyclic_shift() {
        let vals = vec![0.3, -1.2, 4.0, 0.0, 2.5, 2.5, -0.7, 1.1];
        let c = field(vals.clone());
        for shift in 0..vals.len() {
            let mut rotated = vals.clone();
            rotated.rotate_right(shift);
            let r = field(rotated);
            assert!((total_variation(&c) - total_variation(&r)).abs() < 1e-13);
        }
    }

    #[test]
    fn eoc_recovers_power_law() {
        // e = C * dx^2 on a halving sequence.
        let dxs = [0.1, 0.05, 0.025];
        let errors: Vec<f64> = dxs.iter().map(|h| 3.0 * h * h).collect();
        let q = estimate_eoc(&errors, &dxs).unwrap();
        assert_eq!(q.len(), 2);
        for v in q {
            assert!((v.unwrap() - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn eoc_first_order_example() {
        let q = estimate_eoc(&[0.1, 0.05, 0.025], &[0.1, 0.05, 0.025]).unwrap();
        for v in q {
            assert!((v.unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn eoc_zero_error_pair_is_absent() {
        let q = estimate_eoc(&[0.1, 0.0, 0.025], &[0.1, 0.05, 0.025]).unwrap();
        assert!(q[0].is_none());
        assert!(q[1].is_none());
    }

    #[test]
    fn eoc_rejects_bad_input() {
        assert!(estimate_eoc(&[0.1], &[0.1]).is_err());
        assert!(estimate_eoc(&[0.1, 0.05], &[0.05, 0.1]).is_err());
        assert!(estimate_eoc(&[-0.1, 0.05], &[0.1, 0.05]).is_err());
        assert!(estimate_eoc(&[0.1, 0.05], &[0.1, 0.1]).is_err());
    }
}
