//! Maximal circle packings of triangulated disks.
//!
//! Radii are solved in the hyperbolic plane with boundary circles as
//! horocycles, then laid out in the Poincare disk, where they form a
//! Euclidean packing of the unit disk with the boundary circles internally
//! tangent to the unit circle.

mod layout;
mod svg;

use std::collections::VecDeque;
use std::f64::consts::PI;

use serde::Serialize;

use crate::complex::{Complex2D, VertexId};
use crate::error::{Error, Result};

pub use svg::{render_svg, write_svg, ColorBy};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100_000;

#[derive(Clone, Debug, Serialize)]
pub struct Packing {
    #[serde(skip)]
    pub complex: Complex2D,
    /// `exp(-h)` for hyperbolic radius `h`; 0 on the boundary.
    pub s_radii: Vec<f64>,
    /// Euclidean radii in the unit disk.
    pub radii: Vec<f64>,
    pub centers: Vec<[f64; 2]>,
    /// Vertex placed at the origin, if any vertex is interior.
    pub root: Option<VertexId>,
    pub sweeps: usize,
}

impl Packing {
    /// Largest `|angle_sum(v) - 2 pi|` over interior vertices.
    pub fn angle_residual(&self) -> f64 {
        (0..self.complex.n_vertices())
            .filter(|&v| self.complex.is_interior_vertex(v))
            .map(|v| (angle_sum(self, v).unwrap() - 2.0 * PI).abs())
            .fold(0.0, f64::max)
    }

    /// Largest `|dist(center_u, center_v) - (r_u + r_v)|` over edges.
    pub fn tangency_error(&self) -> f64 {
        self.complex
            .edges()
            .iter()
            .map(|&[u, v]| {
                let [a, b] = self.centers[u];
                let [c, d] = self.centers[v];
                ((a - c).hypot(b - d) - self.radii[u] - self.radii[v]).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Radius of `v` over the largest radius among its neighbours.
    pub fn neighbor_ratio(&self, v: VertexId) -> f64 {
        let c = &self.complex;
        let max = c.vertex_edges(v).iter().map(|&e| self.radii[c.other_end(e, v)]).fold(0.0, f64::max);
        self.radii[v] / max
    }
}

/// Angle sum at an interior vertex from the Euclidean radii, by the law of
/// cosines on the triangles of tangent circles.
pub fn angle_sum(p: &Packing, v: VertexId) -> Result<f64> {
    let c = &p.complex;
    if v >= c.n_vertices() {
        return Err(Error::UnknownVertex(v));
    }
    if !c.is_interior_vertex(v) {
        return Err(Error::BoundaryVertex(v));
    }
    let r = &p.radii;
    Ok(c.vertex_faces(v)
        .iter()
        .map(|&f| {
            let (u, w) = others(c, f, v);
            euclidean_angle(r[v], r[u], r[w])
        })
        .sum())
}

pub(crate) fn euclidean_angle(rv: f64, ru: f64, rw: f64) -> f64 {
    let (a, b, o) = (rv + ru, rv + rw, ru + rw);
    ((a * a + b * b - o * o) / (2.0 * a * b)).clamp(-1.0, 1.0).acos()
}

/// Hyperbolic angle at `v` in the triangle of circles with s-radii
/// `xv, xu, xw`.
pub(crate) fn hyperbolic_angle(xv: f64, xu: f64, xw: f64) -> f64 {
    let (v2, u2, w2) = (xv * xv, xu * xu, xw * xw);
    let s2 = v2 * (1.0 - u2) * (1.0 - w2) / ((1.0 - v2 * u2) * (1.0 - v2 * w2));
    2.0 * s2.sqrt().min(1.0).asin()
}

/// The other two vertices of triangle `f`, in cyclic order after `v`.
pub(crate) fn others(c: &Complex2D, f: usize, v: VertexId) -> (VertexId, VertexId) {
    let face = c.face(f);
    let i = face.position(v).expect("vertex on face");
    (face.vertices[(i + 1) % 3], face.vertices[(i + 2) % 3])
}

fn check_disk(c: &Complex2D) -> Result<()> {
    if !c.is_triangulation() {
        return Err(Error::NotATriangulatedDisk("faces must be triangles".into()));
    }
    match c.boundary_cycles() {
        Some(cycles) if cycles.len() == 1 && c.euler_characteristic() == 1 => {}
        _ => return Err(Error::NotATriangulatedDisk("boundary must be a single circle".into())),
    }
    if (0..c.n_vertices()).any(|v| c.vertex_faces(v).is_empty()) {
        return Err(Error::NotATriangulatedDisk("isolated vertex".into()));
    }
    // parallel edges cannot bound tangent-circle triangles
    let mut pairs: Vec<(usize, usize)> = c.edges().iter().map(|&[a, b]| (a.min(b), a.max(b))).collect();
    pairs.sort_unstable();
    if pairs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NotATriangulatedDisk("parallel edges".into()));
    }
    Ok(())
}

/// Hyperbolic s-radii of the maximal packing, by Gauss-Seidel sweeps of
/// the uniform-neighbour update. Returns the radii and the sweep count.
pub fn solve_radii(c: &Complex2D, tol: f64, max_sweeps: usize) -> Result<(Vec<f64>, usize)> {
    check_disk(c)?;
    let interior: Vec<VertexId> = (0..c.n_vertices()).filter(|&v| c.is_interior_vertex(v)).collect();
    let mut x = vec![0.0; c.n_vertices()];
    for &v in &interior {
        x[v] = 0.5;
    }
    let angle = |x: &[f64], v: VertexId| -> f64 {
        c.vertex_faces(v)
            .iter()
            .map(|&f| {
                let (u, w) = others(c, f, v);
                hyperbolic_angle(x[v], x[u], x[w])
            })
            .sum()
    };
    for sweep in 0..=max_sweeps {
        let worst = interior.iter().map(|&v| (angle(&x, v) - 2.0 * PI).abs()).fold(0.0, f64::max);
        if worst < tol {
            return Ok((x, sweep));
        }
        if sweep == max_sweeps {
            break;
        }
        for &v in &interior {
            let k = c.valence(v) as f64;
            let theta = angle(&x, v);
            let beta = (theta / (2.0 * k)).sin();
            let xv = x[v];
            let y = ((xv - beta) / (xv * (1.0 - beta * xv))).max(0.0);
            let delta = (PI / k).sin();
            x[v] = if y == 0.0 {
                delta
            } else {
                let b = 1.0 - y;
                (-b + (b * b + 4.0 * delta * delta * y).sqrt()) / (2.0 * delta * y)
            };
        }
    }
    Err(Error::IterationLimit(max_sweeps))
}

/// Maximal packing of a triangulated disk with angle sums within `tol` of
/// `2 pi`, laid out in the unit disk.
pub fn pack(c: &Complex2D, tol: f64) -> Result<Packing> {
    pack_with_limit(c, tol, MAX_SWEEPS)
}

pub fn pack_with_limit(c: &Complex2D, tol: f64, max_sweeps: usize) -> Result<Packing> {
    if !(tol > 0.0) {
        return Err(Error::NonPositive(format!("tol = {tol}")));
    }
    let (s_radii, sweeps) = solve_radii(c, tol, max_sweeps)?;
    let root = deepest_vertex(c);
    let circles = layout::layout(c, &s_radii, root);
    Ok(Packing {
        complex: c.clone(),
        radii: circles.iter().map(|k| k.r).collect(),
        centers: circles.iter().map(|k| [k.c.re, k.c.im]).collect(),
        s_radii,
        root,
        sweeps,
    })
}

/// Interior vertex farthest from the boundary, lowest id first.
fn deepest_vertex(c: &Complex2D) -> Option<VertexId> {
    let mut dist = vec![usize::MAX; c.n_vertices()];
    let mut queue = VecDeque::new();
    for v in 0..c.n_vertices() {
        if c.is_boundary_vertex(v) {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &e in c.vertex_edges(v) {
            let w = c.other_end(e, v);
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let best = (0..c.n_vertices()).filter(|&v| dist[v] > 0).max_by_key(|&v| (dist[v], std::cmp::Reverse(v)))?;
    Some(best)
}

#[cfg(test)]
mod tests;
