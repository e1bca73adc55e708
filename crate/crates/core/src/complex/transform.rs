use std::collections::HashMap;

use super::{Complex2D, EdgeId, Face, VertexId};
use crate::error::{Error, Result};

/// Tile type given to the faces that replace vertices in a blow-up.
pub const BLOWUP_TILE: &str = "blowup";

impl Complex2D {
    /// Dual tiling of a closed surface: one vertex per face, one edge per
    /// edge and one face per vertex.
    pub fn dual_tiling(&self) -> Result<Complex2D> {
        if !self.is_closed() {
            return Err(Error::HasBoundary);
        }
        let edges = (0..self.n_edges())
            .map(|e| {
                let fs = self.edge_faces(e);
                [fs[0], fs[1]]
            })
            .collect();
        let mut faces = Vec::with_capacity(self.n_vertices());
        for v in 0..self.n_vertices() {
            let order = self.rotation(v)?;
            let edges_out = order
                .iter()
                .map(|&f| {
                    let face = self.face(f);
                    face.edges[face.position(v).unwrap()]
                })
                .collect();
            faces.push(Face { vertices: order, edges: edges_out });
        }
        Complex2D::from_faces(self.n_faces(), edges, faces, None)
    }

    /// Replaces every vertex by a polygon, so that the original tiles meet
    /// only along edges and every vertex of the result has valence at most 3.
    /// Boundary vertices become polygons closed off by one extra boundary
    /// vertex.
    pub fn blow_up_vertices(&self) -> Result<Complex2D> {
        // one new vertex per (vertex, incident edge)
        let mut node: HashMap<(VertexId, EdgeId), VertexId> = HashMap::new();
        let mut n = 0;
        for v in 0..self.n_vertices() {
            for &e in self.vertex_edges(v) {
                node.insert((v, e), n);
                n += 1;
            }
        }
        let mut edges: Vec<[VertexId; 2]> = self
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &[a, b])| [node[&(a, e)], node[&(b, e)]])
            .collect();
        let mut cut: HashMap<(usize, usize), EdgeId> = HashMap::new();
        let mut faces = Vec::with_capacity(self.n_faces() + self.n_vertices());
        for (fi, f) in self.faces().iter().enumerate() {
            let k = f.len();
            let mut vs = Vec::with_capacity(2 * k);
            let mut es = Vec::with_capacity(2 * k);
            for i in 0..k {
                let v = f.vertices[i];
                let e_in = f.edges[(i + k - 1) % k];
                let e_out = f.edges[i];
                let c = edges.len();
                edges.push([node[&(v, e_in)], node[&(v, e_out)]]);
                cut.insert((fi, i), c);
                vs.push(node[&(v, e_in)]);
                es.push(c);
                vs.push(node[&(v, e_out)]);
                es.push(e_out);
            }
            faces.push(Face { vertices: vs, edges: es });
        }
        for v in 0..self.n_vertices() {
            let fan = self.fan(v);
            if fan.is_empty() {
                continue;
            }
            let mut vs = Vec::new();
            let mut es = Vec::new();
            for &(f, i) in &fan {
                let face = self.face(f);
                let k = face.len();
                vs.push(node[&(v, face.edges[(i + k - 1) % k])]);
                es.push(cut[&(f, i)]);
            }
            if self.is_boundary_vertex(v) {
                let (lf, li) = *fan.last().unwrap();
                let last = node[&(v, self.face(lf).edges[li])];
                let extra = n;
                n += 1;
                vs.push(last);
                es.push(edges.len());
                edges.push([last, extra]);
                vs.push(extra);
                es.push(edges.len());
                edges.push([extra, vs[0]]);
            }
            faces.push(Face { vertices: vs, edges: es });
        }
        let tile_types = self.tile_types().map(|t| {
            let mut t = t.to_vec();
            t.resize(faces.len(), BLOWUP_TILE.to_string());
            t
        });
        Complex2D::from_faces(n, edges, faces, tile_types)
    }

    /// Corners `(face, position)` at `v` in rotation order; for a boundary
    /// vertex the fan starts at the face whose incoming edge is on the
    /// boundary.
    pub(crate) fn fan(&self, v: VertexId) -> Vec<(usize, usize)> {
        let faces = self.vertex_faces(v);
        if faces.is_empty() {
            return Vec::new();
        }
        let corner = |f: usize| (f, self.face(f).position(v).unwrap());
        let mut start = faces[0];
        for &f in faces {
            let face = self.face(f);
            let i = face.position(v).unwrap();
            let e_in = face.edges[(i + face.len() - 1) % face.len()];
            if self.is_boundary_edge(e_in) {
                start = f;
                break;
            }
        }
        let mut out = vec![corner(start)];
        let mut f = start;
        while out.len() < faces.len() {
            let face = self.face(f);
            let e_out = face.edges[face.position(v).unwrap()];
            match self.edge_faces(e_out).iter().copied().find(|&g| g != f) {
                Some(g) if g != start => {
                    out.push(corner(g));
                    f = g;
                }
                _ => break,
            }
        }
        out
    }
}
