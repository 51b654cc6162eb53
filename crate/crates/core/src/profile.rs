//! Canonical initial data with closed-form cell averages, projection of
//! arbitrary functions, and the exact periodic-advection oracle.

use crate::error::{Error, Result};
use crate::grid::{CellField, Grid1D};

/// How pointwise data become cell data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectMode {
    /// Sample at cell centers.
    Point,
    /// Exact cell averages.
    Average,
}

/// Canonical initial profiles. Each carries a closed-form antiderivative, so
/// cell averages and exact advected averages are computed without quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    Constant(f64),
    /// 0 for x < jump, 1 for x >= jump.
    Heaviside { jump: f64 },
    /// Indicator of [lo, hi).
    BoxIndicator { lo: f64, hi: f64 },
    /// exp(-(x-center)^2 / (2 sigma^2)).
    Gaussian { center: f64, sigma: f64 },
    /// mean + amplitude * sin(2 pi (x - phase) / wavelength).
    Sinusoid { mean: f64, amplitude: f64, wavelength: f64, phase: f64 },
}

impl Profile {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Profile::Constant(c) => c.is_finite(),
            Profile::Heaviside { jump } => jump.is_finite(),
            Profile::BoxIndicator { lo, hi } => lo.is_finite() && hi.is_finite() && lo < hi,
            Profile::Gaussian { center, sigma } => center.is_finite() && sigma > 0.0,
            Profile::Sinusoid { mean, amplitude, wavelength, phase } => {
                mean.is_finite() && amplitude.is_finite() && wavelength > 0.0 && phase.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("degenerate profile {self:?}")))
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Profile::Constant(c) => c,
            Profile::Heaviside { jump } => {
                if x >= jump {
                    1.0
                } else {
                    0.0
                }
            }
            Profile::BoxIndicator { lo, hi } => {
                if x >= lo && x < hi {
                    1.0
                } else {
                    0.0
                }
            }
            Profile::Gaussian { center, sigma } => {
                let z = (x - center) / sigma;
                (-0.5 * z * z).exp()
            }
            Profile::Sinusoid { mean, amplitude, wavelength, phase } => {
                mean + amplitude * (std::f64::consts::TAU * (x - phase) / wavelength).sin()
            }
        }
    }

    /// One fixed antiderivative of the profile.
    fn antiderivative(&self, x: f64) -> f64 {
        match *self {
            Profile::Constant(c) => c * x,
            Profile::Heaviside { jump } => (x - jump).max(0.0),
            Profile::BoxIndicator { lo, hi } => x.clamp(lo, hi) - lo,
            Profile::Gaussian { center, sigma } => {
                let half_sqrt_2pi = (0.5 * std::f64::consts::PI).sqrt();
                sigma * half_sqrt_2pi * libm::erf((x - center) / (sigma * std::f64::consts::SQRT_2))
            }
            Profile::Sinusoid { mean, amplitude, wavelength, phase } => {
                let w = std::f64::consts::TAU / wavelength;
                mean * x - amplitude / w * (w * (x - phase)).cos()
            }
        }
    }

    fn integral(&self, a: f64, b: f64) -> f64 {
        self.antiderivative(b) - self.antiderivative(a)
    }

    /// Integral of the domain-restricted periodic extension over
    /// `[x_min, x]` for arbitrary real `x` (possibly many periods away).
    fn periodic_cumulative(&self, x_min: f64, period: f64, x: f64) -> f64 {
        let total = self.integral(x_min, x_min + period);
        let t = x - x_min;
        let k = (t / period).floor();
        let tau = t - k * period;
        k * total + self.integral(x_min, x_min + tau.clamp(0.0, period))
    }

    /// Closed-form projection onto a grid.
    pub fn project(&self, grid: &Grid1D, mode: ProjectMode) -> Result<CellField> {
        self.validate()?;
        let values = match mode {
            ProjectMode::Point => {
                (0..grid.n_cells).map(|j| self.eval(grid.cell_center(j))).collect()
            }
            ProjectMode::Average => {
                let dx = grid.dx();
                (0..grid.n_cells)
                    .map(|j| {
                        let (a, b) = grid.cell_bounds(j);
                        self.integral(a, b) / dx
                    })
                    .collect()
            }
        };
        CellField::new(grid.clone(), values)
    }
}

/// Exact cell averages at time `t` of the advected periodic extension of the
/// profile: the solution of c_t + u c_x = 0 with the projected initial data.
pub fn exact_advect_average(profile: &Profile, grid: &Grid1D, u: f64, t: f64) -> Result<CellField> {
    profile.validate()?;
    if !u.is_finite() || !t.is_finite() {
        return Err(Error::InvalidArgument("u and t must be finite".into()));
    }
    let shift = u * t;
    let period = grid.length();
    let dx = grid.dx();
    let values = (0..grid.n_cells)
        .map(|j| {
            let (a, b) = grid.cell_bounds(j);
            (self_cum(profile, grid, period, b - shift) - self_cum(profile, grid, period, a - shift))
                / dx
        })
        .collect();
    CellField::new(grid.clone(), values)
}

fn self_cum(profile: &Profile, grid: &Grid1D, period: f64, x: f64) -> f64 {
    profile.periodic_cumulative(grid.x_min, period, x)
}

/// Project an arbitrary function: center samples, or cell averages by
/// adaptive bisection quadrature (estimates refined until they differ by less
/// than an absolute 1e-13 per interval).
pub fn project_initial<F: Fn(f64) -> f64>(
    f: F,
    grid: &Grid1D,
    mode: ProjectMode,
) -> Result<CellField> {
    project_initial_with_breakpoints(f, &[], grid, mode)
}

/// Like [`project_initial`], but the integration in every cell is split at the
/// supplied breakpoints first, so data with known jumps integrate exactly.
pub fn project_initial_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    grid: &Grid1D,
    mode: ProjectMode,
) -> Result<CellField> {
    let values: Vec<f64> = match mode {
        ProjectMode::Point => (0..grid.n_cells).map(|j| f(grid.cell_center(j))).collect(),
        ProjectMode::Average => {
            let dx = grid.dx();
            (0..grid.n_cells)
                .map(|j| {
                    let (a, b) = grid.cell_bounds(j);
                    let mut cuts: Vec<f64> = breakpoints
                        .iter()
                        .copied()
                        .filter(|&p| p > a && p < b)
                        .collect();
                    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
                    let mut left = a;
                    let mut total = 0.0;
                    for cut in cuts.into_iter().chain(std::iter::once(b)) {
                        total += adaptive_simpson(&f, left, cut, 1e-13);
                        left = cut;
                    }
                    total / dx
                })
                .collect()
        }
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "function produced non-finite values on the grid".into(),
        ));
    }
    CellField::new(grid.clone(), values)
}

fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    // Endpoints are sampled one-sidedly just inside the interval, so a piece
    // bounded by supplied jump locations integrates its own side exactly.
    let nudge = 1e-14 * (b - a);
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a + nudge), f(m), f(b - nudge));
    let whole = simpson(fa, fm, fb, b - a);
    adapt(f, a, b, fa, fm, fb, whole, tol, 60)
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
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
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let refined = left + right;
    if depth == 0 || (refined - whole).abs() < tol {
        refined + (refined - whole) / 15.0
    } else {
        // The tolerance is deliberately not halved: on jump data the defect
        // shrinks like the interval width, and this keeps the recursion finite.
        adapt(f, a, m, fa, flm, fm, left, tol, depth - 1)
            + adapt(f, m, b, fm, frm, fb, right, tol, depth - 1)
    }
}
