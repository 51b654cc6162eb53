//! Conforming triangulations of planar rectangles: per-cell edge geometry,
//! adjacency (optionally periodic), face classification against a velocity,
//! and the two-subcell split of cells with two downwind faces.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A point or vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// Signed area of a polygon given counterclockwise (positive) or clockwise
/// (negative) vertices.
pub fn polygon_signed_area(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    let mut acc = 0.0;
    for i in 0..n {
        acc += poly[i].cross(poly[(i + 1) % n]);
    }
    0.5 * acc
}

/// One face of a triangle: its length, outward unit normal, and the adjacent
/// cell with the matching slot on the other side (None on open boundaries).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeInfo {
    pub length: f64,
    pub normal: Vec2,
    pub neighbor: Option<(usize, usize)>,
}

/// A triangulation with precomputed per-cell geometry. Cell `j` has vertices
/// `cells[j]` in counterclockwise order; face slot `e` runs from vertex `e`
/// to vertex `(e + 1) % 3`.
#[derive(Debug, Clone)]
pub struct TriMesh {
    pub vertices: Vec<Vec2>,
    pub cells: Vec<[usize; 3]>,
    pub edges: Vec<[EdgeInfo; 3]>,
    pub areas: Vec<f64>,
    pub centroids: Vec<Vec2>,
}

impl TriMesh {
    /// Builds a mesh from shared-vertex triangles; faces listing the same
    /// vertex pair are joined as neighbors.
    pub fn from_cells(vertices: Vec<Vec2>, cells: Vec<[usize; 3]>) -> Result<Self> {
        Self::build(
            vertices,
            cells,
            |a, b| (a.min(b), a.max(b), usize::MAX, usize::MAX),
            false,
        )
    }

    fn build(
        vertices: Vec<Vec2>,
        cells: Vec<[usize; 3]>,
        edge_key: impl Fn(usize, usize) -> (usize, usize, usize, usize),
        require_closed: bool,
    ) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Mesh("mesh has no cells".into()));
        }
        for v in &vertices {
            if !v.x.is_finite() || !v.y.is_finite() {
                return Err(Error::Mesh("non-finite vertex coordinate".into()));
            }
        }
        let mut areas = Vec::with_capacity(cells.len());
        let mut centroids = Vec::with_capacity(cells.len());
        for (j, cell) in cells.iter().enumerate() {
            for &v in cell {
                if v >= vertices.len() {
                    return Err(Error::Mesh(format!("cell {j} references vertex {v}")));
                }
            }
            let [a, b, c] = [vertices[cell[0]], vertices[cell[1]], vertices[cell[2]]];
            let signed = 0.5 * (b - a).cross(c - a);
            if !(signed > 1e-300) {
                return Err(Error::Mesh(format!(
                    "cell {j} is not counterclockwise (signed area {signed})"
                )));
            }
            areas.push(signed);
            centroids.push(Vec2::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0));
        }

        let mut edges: Vec<[EdgeInfo; 3]> = cells
            .iter()
            .map(|cell| {
                let mut per_cell = [EdgeInfo {
                    length: 0.0,
                    normal: Vec2::new(0.0, 0.0),
                    neighbor: None,
                }; 3];
                for e in 0..3 {
                    let a = vertices[cell[e]];
                    let b = vertices[cell[(e + 1) % 3]];
                    let d = b - a;
                    let length = d.norm();
                    per_cell[e] = EdgeInfo {
                        length,
                        normal: Vec2::new(d.y / length, -d.x / length),
                        neighbor: None,
                    };
                }
                per_cell
            })
            .collect();

        let mut incidences: HashMap<(usize, usize, usize, usize), Vec<(usize, usize)>> =
            HashMap::new();
        for (j, cell) in cells.iter().enumerate() {
            for e in 0..3 {
                let key = edge_key(cell[e], cell[(e + 1) % 3]);
                incidences.entry(key).or_default().push((j, e));
            }
        }
        for (key, inc) in &incidences {
            match inc.len() {
                1 => {
                    if require_closed {
                        return Err(Error::Mesh(format!(
                            "edge {key:?} of cell {} has no periodic partner",
                            inc[0].0
                        )));
                    }
                }
                2 => {
                    let (j0, e0) = inc[0];
                    let (j1, e1) = inc[1];
                    edges[j0][e0].neighbor = Some((j1, e1));
                    edges[j1][e1].neighbor = Some((j0, e0));
                }
                n => {
                    return Err(Error::Mesh(format!(
                        "edge {key:?} is shared by {n} cells"
                    )));
                }
            }
        }

        Ok(TriMesh {
            vertices,
            cells,
            edges,
            areas,
            centroids,
        })
    }

    /// Splits each square of an `nx` by `ny` grid on the rectangle into two
    /// triangles along the up-right diagonal. With `periodic`, opposite sides
    /// of the rectangle are identified.
    pub fn structured(
        nx: usize,
        ny: usize,
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        periodic: bool,
    ) -> Result<Self> {
        if nx == 0 || ny == 0 || !(x_min < x_max) || !(y_min < y_max) {
            return Err(Error::Mesh(format!(
                "need nx, ny > 0 and a nonempty rectangle; got nx={nx}, ny={ny}, \
                 x=[{x_min}, {x_max}], y=[{y_min}, {y_max}]"
            )));
        }
        let dx = (x_max - x_min) / nx as f64;
        let dy = (y_max - y_min) / ny as f64;
        let stride = nx + 1;
        let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            for i in 0..=nx {
                vertices.push(Vec2::new(x_min + i as f64 * dx, y_min + j as f64 * dy));
            }
        }
        let mut cells = Vec::with_capacity(2 * nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let v00 = j * stride + i;
                let v10 = v00 + 1;
                let v01 = v00 + stride;
                let v11 = v01 + 1;
                cells.push([v00, v10, v11]);
                cells.push([v00, v11, v01]);
            }
        }
        if periodic {
            // An edge is identified with its translate by a full period, so
            // shift the endpoint pair jointly back into the fundamental
            // domain: every edge spans at most one lattice unit, so a shift
            // is needed exactly when its smaller coordinate sits on the far
            // boundary.
            let key = move |va: usize, vb: usize| {
                let (ia, ja) = (va % stride, va / stride);
                let (ib, jb) = (vb % stride, vb / stride);
                let si = if ia.min(ib) == nx { nx } else { 0 };
                let sj = if ja.min(jb) == ny { ny } else { 0 };
                let p = (ia - si, ja - sj);
                let q = (ib - si, jb - sj);
                let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
                (lo.0, lo.1, hi.0, hi.1)
            };
            Self::build(vertices, cells, key, true)
        } else {
            Self::from_cells(vertices, cells)
        }
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_vertices(&self, cell: usize) -> [Vec2; 3] {
        let c = self.cells[cell];
        [self.vertices[c[0]], self.vertices[c[1]], self.vertices[c[2]]]
    }

    pub fn total_area(&self) -> f64 {
        self.areas.iter().sum()
    }

    /// Checks per-cell closure of the length-weighted normals, neighbor
    /// reciprocity, and that paired faces agree in length and have opposite
    /// normals.
    pub fn validate_geometry(&self) -> Result<()> {
        for j in 0..self.n_cells() {
            let mut sum = Vec2::new(0.0, 0.0);
            for e in 0..3 {
                let info = &self.edges[j][e];
                sum = sum + info.normal * info.length;
                let norm_len = info.normal.norm();
                if (norm_len - 1.0).abs() > 1e-12 {
                    return Err(Error::Mesh(format!(
                        "cell {j} face {e} normal has length {norm_len}"
                    )));
                }
                if let Some((k, s)) = info.neighbor {
                    let back = &self.edges[k][s];
                    if back.neighbor != Some((j, e)) {
                        return Err(Error::Mesh(format!(
                            "cell {j} face {e} and cell {k} face {s} disagree on adjacency"
                        )));
                    }
                    if (back.length - info.length).abs() > 1e-12 * (1.0 + info.length) {
                        return Err(Error::Mesh(format!(
                            "cell {j} face {e}: paired faces differ in length"
                        )));
                    }
                    if (back.normal + info.normal).norm() > 1e-12 {
                        return Err(Error::Mesh(format!(
                            "cell {j} face {e}: paired normals are not opposite"
                        )));
                    }
                }
            }
            if sum.norm() > 1e-12 * self.areas[j].sqrt().max(1.0) {
                return Err(Error::Mesh(format!(
                    "cell {j}: length-weighted normals do not close (|sum| = {})",
                    sum.norm()
                )));
            }
        }
        Ok(())
    }

    /// Serializes as a vertex/triangle listing: a header with counts, one
    /// `x y` line per vertex, one `a b c` line per cell.
    pub fn to_text_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "tri-mesh {} {}\n",
            self.vertices.len(),
            self.cells.len()
        ));
        for v in &self.vertices {
            out.push_str(&format!("{:.16e} {:.16e}\n", v.x, v.y));
        }
        for c in &self.cells {
            out.push_str(&format!("{} {} {}\n", c[0], c[1], c[2]));
        }
        out
    }

    pub fn write_text(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_text_string())?;
        Ok(())
    }

    /// Parses the vertex/triangle listing produced by `to_text_string`.
    /// Adjacency is rebuilt from shared vertices, so periodic identifications
    /// are not preserved.
    pub fn from_text_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty mesh file".into()))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("tri-mesh") {
            return Err(Error::Parse("mesh file must start with 'tri-mesh'".into()));
        }
        let nv: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse("bad vertex count".into()))?;
        let nt: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse("bad triangle count".into()))?;
        let mut vertices = Vec::with_capacity(nv);
        for _ in 0..nv {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing vertex line".into()))?;
            let mut nums = line.split_whitespace();
            let x: f64 = nums
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad vertex line: {line}")))?;
            let y: f64 = nums
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad vertex line: {line}")))?;
            vertices.push(Vec2::new(x, y));
        }
        let mut cells = Vec::with_capacity(nt);
        for _ in 0..nt {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing triangle line".into()))?;
            let mut nums = line.split_whitespace();
            let mut cell = [0usize; 3];
            for slot in &mut cell {
                *slot = nums
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad triangle line: {line}")))?;
            }
            cells.push(cell);
        }
        Self::from_cells(vertices, cells)
    }

    pub fn read_text(path: &std::path::Path) -> Result<Self> {
        Self::from_text_str(&std::fs::read_to_string(path)?)
    }
}

/// Side of a face relative to a velocity: strictly outgoing, strictly
/// incoming, or tangent (zero normal velocity joins neither side).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceSide {
    Downwind,
    Upwind,
    Tangent,
}

pub fn classify_faces(mesh: &TriMesh, cell: usize, u: Vec2) -> [FaceSide; 3] {
    let mut sides = [FaceSide::Tangent; 3];
    for e in 0..3 {
        let un = u.dot(mesh.edges[cell][e].normal);
        sides[e] = if un > 0.0 {
            FaceSide::Downwind
        } else if un < 0.0 {
            FaceSide::Upwind
        } else {
            FaceSide::Tangent
        };
    }
    sides
}

/// One half of a split cell: the downwind face it carries and its area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPart {
    pub slot: usize,
    pub area: f64,
    pub triangle: [Vec2; 3],
}

/// A cell cut in two along the velocity direction through the vertex shared
/// by its two downwind faces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubcellSplit {
    pub apex: Vec2,
    pub foot: Vec2,
    pub parts: [SplitPart; 2],
}

/// Splits a cell with exactly two downwind faces into two subtriangles by the
/// line through their shared vertex along the velocity; cells with fewer
/// downwind faces are left whole (None).
pub fn split_cell(mesh: &TriMesh, cell: usize, u: Vec2) -> Result<Option<SubcellSplit>> {
    if u.norm() == 0.0 {
        return Err(Error::InvalidArgument("zero velocity".into()));
    }
    let sides = classify_faces(mesh, cell, u);
    let down: Vec<usize> = (0..3).filter(|&e| sides[e] == FaceSide::Downwind).collect();
    if down.len() != 2 {
        return Ok(None);
    }
    let verts = mesh.cell_vertices(cell);
    // Face e runs from vertex e to vertex e+1; two faces of a triangle share
    // exactly one vertex. The remaining face is the upwind one.
    let up = 3 - down[0] - down[1];
    let apex_vertex = if (down[0] + 1) % 3 == down[1] {
        down[1]
    } else {
        down[0]
    };
    let apex = verts[apex_vertex];
    let a = verts[up];
    let b = verts[(up + 1) % 3];
    let d = b - a;
    let denom = d.cross(u);
    if denom == 0.0 {
        return Err(Error::InvariantViolation(format!(
            "cell {cell}: velocity is parallel to the upwind face"
        )));
    }
    let s = (apex - a).cross(u) / denom;
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvariantViolation(format!(
            "cell {cell}: split foot parameter {s} leaves the upwind face"
        )));
    }
    let foot = a + d * s;
    let mut parts = [SplitPart {
        slot: 0,
        area: 0.0,
        triangle: [Vec2::new(0.0, 0.0); 3],
    }; 2];
    for (i, &e) in down.iter().enumerate() {
        let triangle = [verts[e], verts[(e + 1) % 3], foot];
        parts[i] = SplitPart {
            slot: e,
            area: polygon_signed_area(&triangle),
            triangle,
        };
    }
    Ok(Some(SubcellSplit { apex, foot, parts }))
}

/// Largest time step such that every cell's outgoing volume fraction stays
/// at or below one.
pub fn max_stable_dt(mesh: &TriMesh, u: Vec2) -> Result<f64> {
    if u.norm() == 0.0 {
        return Err(Error::InvalidArgument("zero velocity".into()));
    }
    let mut dt = f64::INFINITY;
    for j in 0..mesh.n_cells() {
        let outflux: f64 = (0..3)
            .map(|e| {
                let info = &mesh.edges[j][e];
                info.length * u.dot(info.normal).max(0.0)
            })
            .sum();
        if outflux > 0.0 {
            dt = dt.min(mesh.areas[j] / outflux);
        }
    }
    if !dt.is_finite() {
        return Err(Error::InvalidArgument(
            "no cell has an outgoing face for this velocity".into(),
        ));
    }
    Ok(dt)
}

/// Area of the intersection of a triangle with an axis-aligned box, by
/// clipping against the four box half-planes.
pub fn triangle_box_overlap_area(
    tri: [Vec2; 3],
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
) -> f64 {
    // Keep the side where signed(v) >= 0 for each clip line.
    let clips: [Box<dyn Fn(Vec2) -> f64>; 4] = [
        Box::new(move |v: Vec2| v.x - x_lo),
        Box::new(move |v: Vec2| x_hi - v.x),
        Box::new(move |v: Vec2| v.y - y_lo),
        Box::new(move |v: Vec2| y_hi - v.y),
    ];
    let mut poly: Vec<Vec2> = tri.to_vec();
    for clip in &clips {
        if poly.is_empty() {
            return 0.0;
        }
        let mut next = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            let da = clip(a);
            let db = clip(b);
            if da >= 0.0 {
                next.push(a);
            }
            if (da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0) {
                let t = da / (da - db);
                next.push(a + (b - a) * t);
            }
        }
        poly = next;
    }
    if poly.len() < 3 {
        return 0.0;
    }
    polygon_signed_area(&poly).abs()
}

/// Piecewise-constant values on the cells of a shared mesh.
#[derive(Debug, Clone)]
pub struct TriField {
    pub mesh: Arc<TriMesh>,
    pub values: Vec<f64>,
}

impl TriField {
    pub fn new(mesh: Arc<TriMesh>, values: Vec<f64>) -> Result<Self> {
        if values.len() != mesh.n_cells() {
            return Err(Error::InvalidArgument(format!(
                "field has {} values for {} cells",
                values.len(),
                mesh.n_cells()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite field value".into()));
        }
        Ok(TriField { mesh, values })
    }

    pub fn constant(mesh: Arc<TriMesh>, value: f64) -> Result<Self> {
        let n = mesh.n_cells();
        Self::new(mesh, vec![value; n])
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Area-weighted total.
    pub fn conserved_sum(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.mesh.areas)
            .map(|(v, a)| v * a)
            .sum()
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("cell_index,cx,cy,value\n");
        for (j, v) in self.values.iter().enumerate() {
            let c = self.mesh.centroids[j];
            out.push_str(&format!("{j},{:.16e},{:.16e},{:.16e}\n", c.x, c.y, v));
        }
        out
    }

    pub fn write_csv(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string())?;
        Ok(())
    }
}
