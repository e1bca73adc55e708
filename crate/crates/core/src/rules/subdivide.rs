use super::{EdgeRole, SubdivisionRule, TilePattern, VertexRole};
use crate::complex::{Complex2D, Cycle, EdgeId, Face, FaceId, VertexId};
use crate::error::{Error, Result};
use crate::marking::{Arc, QuadMarking, RingMarking};

/// One application of a rule, with the bookkeeping needed to carry
/// markings and faces across.
///
/// Old vertices keep their ids. New vertices follow: first the points
/// subdividing each old edge (in edge order, running from the edge's first
/// to its second vertex), then the interior points of each face's pattern
/// (in face order).
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: Complex2D,
    /// Old face each new face came from.
    pub face_parent: Vec<FaceId>,
    /// New edges along each old edge, from its first to its second vertex.
    pub edge_children: Vec<Vec<EdgeId>>,
    /// New vertices strictly inside each old edge, in the same direction.
    pub edge_points: Vec<Vec<VertexId>>,
}

pub fn subdivide(c: &Complex2D, rule: &SubdivisionRule) -> Result<Complex2D> {
    Ok(subdivide_detailed(c, rule)?.complex)
}

pub fn subdivide_n(c: &Complex2D, rule: &SubdivisionRule, n: usize) -> Result<Complex2D> {
    let mut cur = c.clone();
    for _ in 0..n {
        cur = subdivide(&cur, rule)?;
    }
    Ok(cur)
}

pub fn subdivide_detailed(c: &Complex2D, rule: &SubdivisionRule) -> Result<Subdivision> {
    let tiles: Vec<&TilePattern> = (0..c.n_faces())
        .map(|f| rule.tile_for(c.tile_type(f), c.face(f).len()).ok_or(Error::MissingTileType(f)))
        .collect::<Result<_>>()?;

    // how many pieces each old edge splits into, agreed on by both sides
    let mut split: Vec<Option<(usize, &str)>> = vec![None; c.n_edges()];
    for (f, tile) in tiles.iter().enumerate() {
        let face = c.face(f);
        let k = face.len();
        for (j, &e) in face.edges.iter().enumerate() {
            let t = tile.boundary[(j + tile.base_corner) % k].as_str();
            let s = rule.splits(t);
            match split[e] {
                Some((s0, t0)) if s0 != s || t0 != t => return Err(Error::GluingFailure(e)),
                _ => split[e] = Some((s, t)),
            }
        }
    }

    let mut n_vertices = c.n_vertices();
    let mut edges: Vec<[VertexId; 2]> = Vec::new();
    let mut edge_points = Vec::with_capacity(c.n_edges());
    let mut edge_children = Vec::with_capacity(c.n_edges());
    for (e, s) in split.iter().enumerate() {
        let (s, _) = s.ok_or(Error::GluingFailure(e))?;
        let [a, b] = c.edge(e);
        let pts: Vec<VertexId> = (0..s - 1).map(|q| n_vertices + q).collect();
        n_vertices += s - 1;
        let mut chain = Vec::with_capacity(s + 1);
        chain.push(a);
        chain.extend(&pts);
        chain.push(b);
        let kids: Vec<EdgeId> = chain
            .windows(2)
            .map(|w| {
                edges.push([w[0], w[1]]);
                edges.len() - 1
            })
            .collect();
        edge_points.push(pts);
        edge_children.push(kids);
    }

    let mut faces = Vec::new();
    let mut face_parent = Vec::new();
    let mut types = Vec::new();
    for (f, tile) in tiles.iter().enumerate() {
        let face = c.face(f);
        let k = face.len();
        let p = &tile.pattern;
        let first_interior_vertex = n_vertices;
        n_vertices += tile.n_interior_vertices;
        let first_interior_edge = edges.len();
        edges.reserve(tile.n_interior_edges);
        // model edge i lives on face slot (i - base) mod k
        let slot = |i: usize| (i + k - tile.base_corner) % k;
        let forward = |i: usize| {
            let j = slot(i);
            c.edge(face.edges[j])[0] == face.vertices[j]
        };
        let vmap: Vec<VertexId> = tile
            .vertex_roles
            .iter()
            .map(|role| match *role {
                VertexRole::Corner(i) => face.vertices[slot(i)],
                VertexRole::OnEdge(i, q) => {
                    let pts = &edge_points[face.edges[slot(i)]];
                    if forward(i) {
                        pts[q]
                    } else {
                        pts[pts.len() - 1 - q]
                    }
                }
                VertexRole::Interior(x) => first_interior_vertex + x,
            })
            .collect();
        for (pe, role) in tile.edge_roles.iter().enumerate() {
            if let EdgeRole::Interior(_) = role {
                let [a, b] = p.edge(pe);
                edges.push([vmap[a], vmap[b]]);
            }
        }
        let emap: Vec<EdgeId> = tile
            .edge_roles
            .iter()
            .map(|role| match *role {
                EdgeRole::Segment(i, q) => {
                    let kids = &edge_children[face.edges[slot(i)]];
                    if forward(i) {
                        kids[q]
                    } else {
                        kids[kids.len() - 1 - q]
                    }
                }
                EdgeRole::Interior(x) => first_interior_edge + x,
            })
            .collect();
        let ptypes = p.tile_types().expect("patterns are labeled");
        for (pf, pface) in p.faces().iter().enumerate() {
            faces.push(Face {
                vertices: pface.vertices.iter().map(|&v| vmap[v]).collect(),
                edges: pface.edges.iter().map(|&e| emap[e]).collect(),
            });
            face_parent.push(f);
            types.push(ptypes[pf].clone());
        }
    }
    let complex = Complex2D::from_faces(n_vertices, edges, faces, Some(types))?;
    Ok(Subdivision { complex, face_parent, edge_children, edge_points })
}

impl Subdivision {
    /// Image of a vertex path: each edge is replaced by its children.
    pub fn map_path(&self, old: &Complex2D, vertices: &[VertexId], edges: &[EdgeId]) -> (Vec<VertexId>, Vec<EdgeId>) {
        let mut vs = vec![vertices[0]];
        let mut es = Vec::new();
        for (i, &e) in edges.iter().enumerate() {
            let fw = old.edge(e)[0] == vertices[i];
            let pts = &self.edge_points[e];
            let kids = &self.edge_children[e];
            if fw {
                vs.extend(pts.iter().copied());
                es.extend(kids.iter().copied());
            } else {
                vs.extend(pts.iter().rev().copied());
                es.extend(kids.iter().rev().copied());
            }
            vs.push(vertices[(i + 1) % vertices.len()]);
        }
        (vs, es)
    }

    fn map_cycle(&self, old: &Complex2D, c: &Cycle) -> Vec<EdgeId> {
        self.map_path(old, &c.vertices, &c.edges).1
    }

    fn map_arc(&self, old: &Complex2D, a: &Arc) -> Vec<EdgeId> {
        self.map_path(old, &a.vertices, &a.edges).1
    }

    /// The ring subdivided along with its complex; `self` must be the
    /// subdivision of `ring.complex()`.
    pub fn map_ring(&self, ring: &RingMarking) -> Result<RingMarking> {
        let old = ring.complex();
        RingMarking::new(self.complex.clone(), &self.map_cycle(old, ring.inner()), &self.map_cycle(old, ring.outer()))
    }

    pub fn map_quad(&self, quad: &QuadMarking) -> Result<QuadMarking> {
        let old = quad.complex();
        QuadMarking::new(
            self.complex.clone(),
            &self.map_arc(old, quad.top()),
            &self.map_arc(old, quad.bottom()),
            &self.map_arc(old, quad.left()),
            &self.map_arc(old, quad.right()),
        )
    }
}

/// Subdivides a ring `n` times, carrying its marking.
pub fn subdivide_ring(ring: &RingMarking, rule: &SubdivisionRule, n: usize) -> Result<RingMarking> {
    let mut cur = ring.clone();
    for _ in 0..n {
        cur = subdivide_detailed(cur.complex(), rule)?.map_ring(&cur)?;
    }
    Ok(cur)
}

/// Subdivides a quadrilateral `n` times, carrying its marking.
pub fn subdivide_quad(quad: &QuadMarking, rule: &SubdivisionRule, n: usize) -> Result<QuadMarking> {
    let mut cur = quad.clone();
    for _ in 0..n {
        cur = subdivide_detailed(cur.complex(), rule)?.map_quad(&cur)?;
    }
    Ok(cur)
}
