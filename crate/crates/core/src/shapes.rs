//! Small standard complexes.

use std::collections::HashMap;

use crate::complex::{Complex2D, EdgeId, Face, VertexId};
use crate::error::Result;
use crate::marking::{QuadMarking, RingMarking};

/// Builds a complex from vertex cycles, creating one edge per unordered
/// pair of consecutive vertices (edges are numbered in order of first use).
pub fn from_polygons(n_vertices: usize, polygons: &[Vec<VertexId>]) -> Result<Complex2D> {
    let mut ids: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
    let mut edges = Vec::new();
    let mut faces = Vec::with_capacity(polygons.len());
    for poly in polygons {
        let k = poly.len();
        let mut es = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (poly[i], poly[(i + 1) % k]);
            let key = (a.min(b), a.max(b));
            let e = *ids.entry(key).or_insert_with(|| {
                edges.push([a, b]);
                edges.len() - 1
            });
            es.push(e);
        }
        faces.push(Face { vertices: poly.clone(), edges: es });
    }
    Complex2D::from_faces(n_vertices, edges, faces, None)
}

pub fn triangle() -> Complex2D {
    from_polygons(3, &[vec![0, 1, 2]]).unwrap()
}

/// `k` triangles around vertex 0; the rim is `1..=k`.
pub fn fan(k: usize) -> Complex2D {
    let polys: Vec<Vec<VertexId>> = (0..k).map(|i| vec![0, 1 + i, 1 + (i + 1) % k]).collect();
    from_polygons(k + 1, &polys).unwrap()
}

pub fn tetrahedron() -> Complex2D {
    from_polygons(4, &[vec![0, 1, 2], vec![0, 3, 1], vec![1, 3, 2], vec![0, 2, 3]]).unwrap()
}

/// Poles 0 and 5 over the square 1, 2, 3, 4.
pub fn octahedron() -> Complex2D {
    let mut polys = Vec::new();
    for i in 0..4 {
        let (a, b) = (1 + i, 1 + (i + 1) % 4);
        polys.push(vec![0, a, b]);
        polys.push(vec![5, b, a]);
    }
    from_polygons(6, &polys).unwrap()
}

/// Square 0, 1, 2, 3 cut by the diagonal 0 to 2, with top 0-1 and
/// bottom 2-3.
pub fn split_square() -> QuadMarking {
    let c = from_polygons(4, &[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
    QuadMarking::from_ends(c, &[0], &[3]).unwrap()
}

/// Ring of `n` quadrilaterals: inner cycle `0..n`, outer cycle `n..2n`.
pub fn square_ring(n: usize) -> RingMarking {
    let polys: Vec<Vec<VertexId>> = (0..n).map(|i| vec![i, n + i, n + (i + 1) % n, (i + 1) % n]).collect();
    ring_from_polygons(2 * n, &polys, n)
}

/// Ring of `2n` triangles: inner cycle `0..n`, outer cycle `n..2n`.
pub fn triangle_ring(n: usize) -> RingMarking {
    let mut polys = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        polys.push(vec![i, n + i, n + j]);
        polys.push(vec![i, n + j, j]);
    }
    ring_from_polygons(2 * n, &polys, n)
}

pub(crate) fn ring_from_polygons(n_vertices: usize, polys: &[Vec<VertexId>], inner: usize) -> RingMarking {
    let c = from_polygons(n_vertices, polys).unwrap();
    let mut inner_edges = Vec::new();
    let mut outer_edges = Vec::new();
    for (e, &[a, b]) in c.edges().iter().enumerate() {
        if c.is_boundary_edge(e) {
            if a < inner && b < inner {
                inner_edges.push(e);
            } else if a >= inner && b >= inner {
                outer_edges.push(e);
            }
        }
    }
    RingMarking::new(c, &inner_edges, &outer_edges).unwrap()
}

/// The ring left around a valence-`n` vertex after one barycentric
/// subdivision when its star is removed: `2n` squares, each cut into two
/// triangles. Inner cycle `0..2n` alternates edge midpoints and
/// barycenters; outer cycle `2n..4n` alternates old neighbours and
/// midpoints of the old link.
pub fn barycentric_ring(n: usize) -> RingMarking {
    let m = 2 * n;
    let inner = |i: usize| i % m;
    let outer = |i: usize| m + i % m;
    let mut polys = Vec::new();
    for i in 0..n {
        let (mi, bi, mj) = (inner(2 * i), inner(2 * i + 1), inner(2 * i + 2));
        let (ui, wi, uj) = (outer(2 * i), outer(2 * i + 1), outer(2 * i + 2));
        polys.push(vec![bi, mi, ui]);
        polys.push(vec![bi, ui, wi]);
        polys.push(vec![bi, wi, uj]);
        polys.push(vec![bi, uj, mj]);
    }
    ring_from_polygons(2 * m, &polys, m)
}
