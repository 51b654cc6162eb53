//! Uniform 1D cell-centered grids and scalar cell fields.

use crate::error::{Error, Result};
use std::io::Write;

/// Boundary treatment for a 1D grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    /// Wrap-around indexing: cell -1 is cell n-1.
    Periodic,
    /// Prescribed constant ghost values outside the domain.
    Inflow { left: f64, right: f64 },
}

/// Uniform grid of `n_cells` cells covering `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub boundary: Boundary,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize, boundary: Boundary) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() || x_max <= x_min {
            return Err(Error::InvalidGrid(format!(
                "domain [{x_min}, {x_max}] must be finite and nonempty"
            )));
        }
        if n_cells == 0 {
            return Err(Error::InvalidGrid("n_cells must be positive".into()));
        }
        Ok(Grid1D { x_min, x_max, n_cells, boundary })
    }

    /// Periodic grid on `[x_min, x_max]`.
    pub fn periodic(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        Grid1D::new(x_min, x_max, n_cells, Boundary::Periodic)
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn cell_center(&self, j: usize) -> f64 {
        self.x_min + (j as f64 + 0.5) * self.dx()
    }

    /// Lower and upper face positions of cell `j`.
    pub fn cell_bounds(&self, j: usize) -> (f64, f64) {
        let dx = self.dx();
        (self.x_min + j as f64 * dx, self.x_min + (j + 1) as f64 * dx)
    }
}

/// Scalar field of one value per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellField {
    pub grid: Grid1D,
    pub values: Vec<f64>,
}

impl CellField {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_cells {
            return Err(Error::InvalidArgument(format!(
                "value count {} does not match cell count {}",
                values.len(),
                grid.n_cells
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("field values must be finite".into()));
        }
        Ok(CellField { grid, values })
    }

    pub fn constant(grid: Grid1D, value: f64) -> Self {
        let n = grid.n_cells;
        CellField { grid, values: vec![value; n] }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Value at a signed cell index with the grid's boundary treatment applied.
    pub fn value_at(&self, j: isize) -> f64 {
        let n = self.values.len() as isize;
        match self.grid.boundary {
            Boundary::Periodic => self.values[j.rem_euclid(n) as usize],
            Boundary::Inflow { left, right } => {
                if j < 0 {
                    left
                } else if j >= n {
                    right
                } else {
                    self.values[j as usize]
                }
            }
        }
    }

    /// `dx * sum(values)`: the discrete conserved total.
    pub fn conserved_sum(&self) -> f64 {
        self.grid.dx() * self.values.iter().sum::<f64>()
    }

    /// Field mirrored about the domain midpoint (used to advect leftward by
    /// stepping the mirror rightward).
    pub fn reversed(&self) -> CellField {
        let mut values = self.values.clone();
        values.reverse();
        CellField { grid: self.grid.clone(), values }
    }

    /// Write `x,value` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "x,value")?;
        for (j, v) in self.values.iter().enumerate() {
            writeln!(w, "{:.16e},{:.16e}", self.grid.cell_center(j), v)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}
