//! Lagrange-remap scheme for a two-gas mixture in one dimension: acoustic
//! face states, the Lagrange phase, and a remap whose mass-fraction flux is
//! the downwind value clamped into a stability interval.

use crate::error::{Error, Result};
use crate::limited::FluxInterval;

/// Two perfect gases identified by the mass fraction carried in each cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasPair {
    pub gamma: [f64; 2],
    pub c_v: [f64; 2],
}

impl GasPair {
    pub fn new(gamma: [f64; 2], c_v: [f64; 2]) -> Result<Self> {
        for k in 0..2 {
            if !(gamma[k] > 1.0) || !(c_v[k] > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "gas {k} needs gamma > 1 and c_v > 0, got gamma={}, c_v={}",
                    gamma[k], c_v[k]
                )));
            }
        }
        Ok(GasPair { gamma, c_v })
    }

    /// Both components identical: the mixture reduces to a single gas.
    pub fn single(gamma: f64) -> Result<Self> {
        Self::new([gamma, gamma], [1.0, 1.0])
    }

    /// Mixture Grueneisen coefficient at mass fraction `y` of gas 1:
    /// a c_v-weighted average of the component gamma - 1 values.
    pub fn gruneisen(&self, y: f64) -> f64 {
        let w1 = y * self.c_v[0];
        let w2 = (1.0 - y) * self.c_v[1];
        (w1 * (self.gamma[0] - 1.0) + w2 * (self.gamma[1] - 1.0)) / (w1 + w2)
    }
}

/// P = Grueneisen(y) * rho e.
pub fn mixture_pressure(y: f64, rho_e: f64, gases: &GasPair) -> f64 {
    gases.gruneisen(y) * rho_e
}

/// Volumetric conserved state: density, momentum, total energy, and partial
/// density of gas 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conserved {
    pub rho: f64,
    pub momentum: f64,
    pub energy: f64,
    pub rho_y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitives {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
    pub y: f64,
    pub sound_speed: f64,
}

impl Conserved {
    pub fn from_primitives(rho: f64, u: f64, p: f64, y: f64, gases: &GasPair) -> Result<Self> {
        if !(rho > 0.0) || !(p > 0.0) || !(-1e-12..=1.0 + 1e-12).contains(&y) {
            return Err(Error::NonpositiveState(format!(
                "need rho > 0, p > 0 and y in [0, 1]; got rho={rho}, p={p}, y={y}"
            )));
        }
        let y = y.clamp(0.0, 1.0);
        let rho_e = p / gases.gruneisen(y);
        Ok(Conserved {
            rho,
            momentum: rho * u,
            energy: rho_e + 0.5 * rho * u * u,
            rho_y: rho * y,
        })
    }

    pub fn primitives(&self, gases: &GasPair) -> Result<Primitives> {
        if !(self.rho > 0.0) {
            return Err(Error::NonpositiveState(format!(
                "density {} is not positive",
                self.rho
            )));
        }
        let u = self.momentum / self.rho;
        let y_raw = self.rho_y / self.rho;
        if !(-1e-10..=1.0 + 1e-10).contains(&y_raw) {
            return Err(Error::InvariantViolation(format!(
                "mass fraction {y_raw} left [0, 1]"
            )));
        }
        let y = y_raw.clamp(0.0, 1.0);
        let rho_e = self.energy - 0.5 * self.rho * u * u;
        if !(rho_e > 0.0) {
            return Err(Error::NonpositiveState(format!(
                "internal energy {rho_e} is not positive"
            )));
        }
        let p = mixture_pressure(y, rho_e, gases);
        let sound_speed = ((gases.gruneisen(y) + 1.0) * p / self.rho).sqrt();
        Ok(Primitives {
            rho: self.rho,
            u,
            p,
            y,
            sound_speed,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TubeBoundary {
    Periodic,
    Transmissive,
}

/// How the remap carries the mass fraction: the sharp clamped-downwind flux
/// or plain upwind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YFluxMode {
    LimitedDownwind,
    Upwind,
}

/// A shock-tube discretization on a uniform grid.
#[derive(Debug, Clone)]
pub struct TwoFluidTube {
    pub dx: f64,
    pub boundary: TubeBoundary,
    pub gases: GasPair,
    pub y_mode: YFluxMode,
    pub cells: Vec<Conserved>,
}

impl TwoFluidTube {
    pub fn new(
        dx: f64,
        boundary: TubeBoundary,
        gases: GasPair,
        y_mode: YFluxMode,
        cells: Vec<Conserved>,
    ) -> Result<Self> {
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::InvalidGrid(format!("need dx > 0, got {dx}")));
        }
        if cells.is_empty() {
            return Err(Error::InvalidGrid("tube has no cells".into()));
        }
        let tube = TwoFluidTube {
            dx,
            boundary,
            gases,
            y_mode,
            cells,
        };
        // Every cell must decode to a valid state.
        tube.primitives()?;
        Ok(tube)
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_at(&self, j: isize) -> Conserved {
        let n = self.cells.len() as isize;
        match self.boundary {
            TubeBoundary::Periodic => self.cells[j.rem_euclid(n) as usize],
            TubeBoundary::Transmissive => self.cells[j.clamp(0, n - 1) as usize],
        }
    }

    pub fn primitives(&self) -> Result<Vec<Primitives>> {
        self.cells.iter().map(|c| c.primitives(&self.gases)).collect()
    }

    /// (mass, momentum, energy, mass of gas 1) per unit section.
    pub fn totals(&self) -> (f64, f64, f64, f64) {
        let mut t = (0.0, 0.0, 0.0, 0.0);
        for c in &self.cells {
            t.0 += c.rho * self.dx;
            t.1 += c.momentum * self.dx;
            t.2 += c.energy * self.dx;
            t.3 += c.rho_y * self.dx;
        }
        t
    }
}

/// Face velocity and pressure from the linearized (acoustic) two-state
/// problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceState {
    pub u_star: f64,
    pub p_star: f64,
}

pub fn acoustic_face(left: &Primitives, right: &Primitives) -> FaceState {
    let impedance = 0.5 * (left.rho * left.sound_speed + right.rho * right.sound_speed);
    FaceState {
        u_star: 0.5 * (left.u + right.u) - (right.p - left.p) / (2.0 * impedance),
        p_star: 0.5 * (left.p + right.p) - 0.5 * impedance * (right.u - left.u),
    }
}

/// Cell state after the Lagrange phase; the mass fraction rides along
/// unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagrangeCell {
    pub rho: f64,
    pub u: f64,
    pub energy: f64,
    pub y: f64,
}

fn face_at(tube: &TwoFluidTube, i: isize) -> Result<FaceState> {
    let left = tube.cell_at(i - 1).primitives(&tube.gases)?;
    let right = tube.cell_at(i).primitives(&tube.gases)?;
    Ok(acoustic_face(&left, &right))
}

/// Moves each cell with the flow for one step: fixed mass, volume change
/// from the face velocities, work from the face pressures. Returns the new
/// cell states and the n + 1 face states.
pub fn lagrange_step(tube: &TwoFluidTube, dt: f64) -> Result<(Vec<LagrangeCell>, Vec<FaceState>)> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidArgument(format!("need dt > 0, got {dt}")));
    }
    let n = tube.n();
    let prims = tube.primitives()?;
    let faces: Vec<FaceState> = (0..=n as isize)
        .map(|i| face_at(tube, i))
        .collect::<Result<_>>()?;
    let mut cells = Vec::with_capacity(n);
    for j in 0..n {
        let stretch = tube.dx + dt * (faces[j + 1].u_star - faces[j].u_star);
        if !(stretch > 0.0) {
            return Err(Error::CflViolation(format!(
                "cell {j} is compressed to non-positive volume"
            )));
        }
        let rho = tube.cells[j].rho * tube.dx / stretch;
        let inv_mass = dt / (tube.cells[j].rho * tube.dx);
        let u = prims[j].u - inv_mass * (faces[j + 1].p_star - faces[j].p_star);
        let energy_specific = tube.cells[j].energy / tube.cells[j].rho
            - inv_mass
                * (faces[j + 1].p_star * faces[j + 1].u_star
                    - faces[j].p_star * faces[j].u_star);
        cells.push(LagrangeCell {
            rho,
            u,
            energy: energy_specific,
            y: prims[j].y,
        });
    }
    Ok((cells, faces))
}

/// Admissible interval for the mass-fraction value carried across face
/// j+1/2, from the four surrounding fractions and the three surrounding face
/// velocities, for transport at uniform density: the donor cell exports the
/// fraction |u| dt / dx of its mass. The downwind value clamped into the
/// interval keeps every updated fraction inside the local bounds of its
/// donor pair.
#[allow(clippy::too_many_arguments)]
pub fn y_flux_bounds(
    y_jm1: f64,
    y_j: f64,
    y_jp1: f64,
    y_jp2: f64,
    u_face_left: f64,
    u_face: f64,
    u_face_right: f64,
    dt: f64,
    dx: f64,
) -> FluxInterval {
    y_flux_bounds_scaled(
        y_jm1,
        y_j,
        y_jp1,
        y_jp2,
        u_face_left,
        u_face,
        u_face_right,
        u_face.abs() * dt / dx,
    )
}

/// General form of the flux interval: `export_fraction` is the share of the
/// donor cell's mass that crosses the face this step. The donor fraction
/// always lies inside the returned interval while that share stays at or
/// below one.
#[allow(clippy::too_many_arguments)]
pub fn y_flux_bounds_scaled(
    y_jm1: f64,
    y_j: f64,
    y_jp1: f64,
    y_jp2: f64,
    u_face_left: f64,
    u_face: f64,
    u_face_right: f64,
    export_fraction: f64,
) -> FluxInterval {
    let pair_lo = y_j.min(y_jp1);
    let pair_hi = y_j.max(y_jp1);
    let (d, big_d) = if u_face > 0.0 {
        if u_face_left > 0.0 {
            let bracket = 1.0 - 1.0 / export_fraction;
            let lo = y_jm1.min(y_j);
            let hi = y_jm1.max(y_j);
            (y_j + (hi - y_j) * bracket, y_j + (lo - y_j) * bracket)
        } else {
            (y_j, y_j)
        }
    } else if u_face < 0.0 {
        if u_face_right < 0.0 {
            let bracket = 1.0 - 1.0 / export_fraction;
            let lo = y_jp1.min(y_jp2);
            let hi = y_jp1.max(y_jp2);
            (
                y_jp1 + (hi - y_jp1) * bracket,
                y_jp1 + (lo - y_jp1) * bracket,
            )
        } else {
            (y_jp1, y_jp1)
        }
    } else {
        (y_j, y_j)
    };
    FluxInterval {
        lo: pair_lo.max(d.min(big_d)),
        hi: pair_hi.min(d.max(big_d)),
    }
}

/// Projects the moved cells back onto the fixed grid with donor-cell fluxes;
/// the mass-fraction flux value is sharpened per the tube's mode.
pub fn remap_step(
    tube: &TwoFluidTube,
    lagrange: &[LagrangeCell],
    faces: &[FaceState],
    dt: f64,
) -> Result<Vec<Conserved>> {
    let n = tube.n();
    if lagrange.len() != n || faces.len() != n + 1 {
        return Err(Error::InvalidArgument(
            "remap inputs do not match the tube size".into(),
        ));
    }
    for (i, f) in faces.iter().enumerate() {
        if f.u_star.abs() * dt / tube.dx >= 1.0 {
            return Err(Error::CflViolation(format!(
                "face {i} moves {} cell widths in one step",
                f.u_star.abs() * dt / tube.dx
            )));
        }
    }
    let lag_at = |j: isize| -> LagrangeCell {
        let n = n as isize;
        match tube.boundary {
            TubeBoundary::Periodic => lagrange[j.rem_euclid(n) as usize],
            TubeBoundary::Transmissive => lagrange[j.clamp(0, n - 1) as usize],
        }
    };
    let u_at = |i: isize| -> Result<f64> {
        if (0..=n as isize).contains(&i) {
            Ok(faces[i as usize].u_star)
        } else {
            match tube.boundary {
                TubeBoundary::Periodic => Ok(faces[i.rem_euclid(n as isize) as usize].u_star),
                TubeBoundary::Transmissive => Ok(face_at(tube, i)?.u_star),
            }
        }
    };

    // Face index i sits between cells i-1 and i.
    let mut flux_rho = vec![0.0; n + 1];
    let mut flux_mom = vec![0.0; n + 1];
    let mut flux_energy = vec![0.0; n + 1];
    let mut flux_rho_y = vec![0.0; n + 1];
    for i in 0..=n {
        let u = faces[i].u_star;
        let donor = if u >= 0.0 {
            lag_at(i as isize - 1)
        } else {
            lag_at(i as isize)
        };
        flux_rho[i] = donor.rho * u;
        flux_mom[i] = donor.rho * donor.u * u;
        flux_energy[i] = donor.rho * donor.energy * u;
        let y_face = match tube.y_mode {
            YFluxMode::Upwind => donor.y,
            YFluxMode::LimitedDownwind => {
                let downwind = if u >= 0.0 {
                    lag_at(i as isize)
                } else {
                    lag_at(i as isize - 1)
                };
                let j = i as isize - 1;
                // Share of the donor's mass crossing this face: the moved
                // material at Lagrangian density out of the fixed-mass cell.
                let donor_mass = if u >= 0.0 {
                    tube.cell_at(j).rho
                } else {
                    tube.cell_at(j + 1).rho
                } * tube.dx;
                let export_fraction = u.abs() * dt * donor.rho / donor_mass;
                let bounds = y_flux_bounds_scaled(
                    lag_at(j - 1).y,
                    lag_at(j).y,
                    lag_at(j + 1).y,
                    lag_at(j + 2).y,
                    u_at(i as isize - 1)?,
                    u,
                    u_at(i as isize + 1)?,
                    export_fraction,
                );
                bounds.clamp(downwind.y)
            }
        };
        flux_rho_y[i] = donor.rho * y_face * u;
    }

    let lambda = dt / tube.dx;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let rho = tube.cells[j].rho - lambda * (flux_rho[j + 1] - flux_rho[j]);
        if !(rho > 0.0) {
            return Err(Error::NonpositiveState(format!(
                "cell {j} lost all its mass in the remap"
            )));
        }
        let momentum =
            tube.cells[j].rho * lagrange[j].u - lambda * (flux_mom[j + 1] - flux_mom[j]);
        let energy = tube.cells[j].rho * lagrange[j].energy
            - lambda * (flux_energy[j + 1] - flux_energy[j]);
        let rho_y =
            tube.cells[j].rho * lagrange[j].y - lambda * (flux_rho_y[j + 1] - flux_rho_y[j]);
        out.push(Conserved {
            rho,
            momentum,
            energy,
            rho_y,
        });
    }

    // When both faces of a cell move the same way, the new fraction must lie
    // between the cell's own old fraction and its donor neighbor's.
    for j in 0..n {
        let y_new = out[j].rho_y / out[j].rho;
        let (u_l, u_r) = (faces[j].u_star, faces[j + 1].u_star);
        let bound = if u_l > 0.0 && u_r > 0.0 {
            Some((lag_at(j as isize - 1).y, lagrange[j].y))
        } else if u_l < 0.0 && u_r < 0.0 {
            Some((lagrange[j].y, lag_at(j as isize + 1).y))
        } else {
            None
        };
        if let Some((a, b)) = bound {
            let (lo, hi) = (a.min(b), a.max(b));
            if y_new < lo - 1e-12 || y_new > hi + 1e-12 {
                return Err(Error::InvariantViolation(format!(
                    "cell {j}: fraction {y_new} left its donor bounds [{lo}, {hi}]"
                )));
            }
        }
    }
    Ok(out)
}

/// One Lagrange phase followed by its remap.
pub fn full_step(tube: &TwoFluidTube, dt: f64) -> Result<TwoFluidTube> {
    let (lagrange, faces) = lagrange_step(tube, dt)?;
    let cells = remap_step(tube, &lagrange, &faces, dt)?;
    TwoFluidTube::new(tube.dx, tube.boundary, tube.gases, tube.y_mode, cells)
}

/// Acoustic step-size suggestion: `cfl` times the fastest-signal crossing
/// time.
pub fn suggest_dt(tube: &TwoFluidTube, cfl: f64) -> Result<f64> {
    if !(cfl > 0.0) || cfl > 1.0 {
        return Err(Error::InvalidArgument(format!(
            "need 0 < cfl <= 1, got {cfl}"
        )));
    }
    let mut speed = 0.0f64;
    for p in tube.primitives()? {
        speed = speed.max(p.u.abs() + p.sound_speed);
    }
    if speed == 0.0 {
        return Err(Error::InvalidArgument(
            "state has no signal speed".into(),
        ));
    }
    Ok(cfl * tube.dx / speed)
}
