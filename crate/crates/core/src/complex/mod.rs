//! Combinatorial 2-complexes.
//!
//! A [`Complex2D`] stores vertices as dense indices, edges as unordered
//! vertex pairs (parallel edges are allowed, loops are not) and faces as
//! cyclic vertex sequences together with the edge joining each consecutive
//! pair. After validation every face is oriented so that an interior edge
//! is traversed in opposite directions by its two faces.
//!
//! The first vertex of a face's cycle is its base corner. Orientation
//! sensitive tile types are placed relative to it during subdivision.

mod canonical;
pub mod io;
mod transform;

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub use canonical::CanonicalForm;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Cyclic vertex sequence; `vertices[0]` is the base corner.
    pub vertices: Vec<VertexId>,
    /// `edges[i]` joins `vertices[i]` to `vertices[(i + 1) % len]`.
    pub edges: Vec<EdgeId>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn edge_position(&self, e: EdgeId) -> Option<usize> {
        self.edges.iter().position(|&x| x == e)
    }

    fn reversed(&self) -> Face {
        let k = self.len();
        let mut vertices = Vec::with_capacity(k);
        vertices.push(self.vertices[0]);
        vertices.extend(self.vertices[1..].iter().rev());
        let edges = self.edges.iter().rev().copied().collect();
        Face { vertices, edges }
    }
}

/// A simple closed curve of edges: `edges[i]` joins `vertices[i]` and
/// `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// Faces sharing an edge.
    Edge,
    /// Faces sharing at least a vertex.
    Vertex,
}

#[derive(Clone, Debug)]
pub struct Complex2D {
    n_vertices: usize,
    edges: Vec<[VertexId; 2]>,
    faces: Vec<Face>,
    tile_types: Option<Vec<String>>,
    edge_faces: Vec<Vec<FaceId>>,
    vertex_faces: Vec<Vec<FaceId>>,
    vertex_edges: Vec<Vec<EdgeId>>,
}

impl PartialEq for Complex2D {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices
            && self.edges == other.edges
            && self.faces == other.faces
            && self.tile_types == other.tile_types
    }
}

/// Result of [`Complex2D::sub_complex`]: the new complex plus maps from its
/// ids back to the parent's ids.
#[derive(Clone, Debug)]
pub struct SubComplex {
    pub complex: Complex2D,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
    pub face_map: Vec<FaceId>,
}

#[derive(Clone, Debug)]
pub struct Star {
    pub center: VertexId,
    pub faces: Vec<FaceId>,
    /// Boundary of the closed star, oriented like the faces. Empty when the
    /// closed star is not a disk.
    pub link: Vec<VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ValenceReport {
    pub vertex: VertexId,
    /// Number of faces at the vertex.
    pub valence: usize,
    /// Largest valence among the vertices of the link.
    pub max_neighbor_valence: usize,
}

impl Complex2D {
    /// Builds a complex from faces given as signed edge lists; `true` means
    /// the edge is traversed from its first to its second vertex.
    pub fn new(
        n_vertices: usize,
        edges: Vec<[VertexId; 2]>,
        faces: Vec<Vec<(EdgeId, bool)>>,
        tile_types: Option<Vec<String>>,
    ) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                if v >= n_vertices {
                    return Err(Error::UnknownEdgeVertex { edge: i, vertex: v as i64 });
                }
            }
            if e[0] == e[1] {
                return Err(Error::LoopEdge(i));
            }
        }
        let mut built = Vec::with_capacity(faces.len());
        for (fi, f) in faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(Error::DegenerateFace(fi));
            }
            let mut vertices = Vec::with_capacity(f.len());
            let mut fedges = Vec::with_capacity(f.len());
            for &(e, forward) in f {
                let ends = *edges
                    .get(e)
                    .ok_or(Error::DanglingEdge { face: fi, edge: e as i64 })?;
                vertices.push(if forward { ends[0] } else { ends[1] });
                fedges.push(e);
            }
            // consecutive edges must chain head to tail
            for i in 0..f.len() {
                let (e, fw) = f[i];
                let ends = edges[e];
                let head = if fw { ends[1] } else { ends[0] };
                let (e2, fw2) = f[(i + 1) % f.len()];
                let tail = if fw2 { edges[e2][0] } else { edges[e2][1] };
                if head != tail {
                    return Err(Error::BrokenCycle(fi));
                }
            }
            built.push(Face { vertices, edges: fedges });
        }
        Self::from_faces(n_vertices, edges, built, tile_types)
    }

    /// Builds a complex from faces already expressed as vertex cycles with
    /// their edges. All invariants are checked.
    pub fn from_faces(
        n_vertices: usize,
        edges: Vec<[VertexId; 2]>,
        faces: Vec<Face>,
        tile_types: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(t) = &tile_types {
            if t.len() != faces.len() {
                return Err(Error::TileTypeCount { got: t.len(), faces: faces.len() });
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if e[0] >= n_vertices || e[1] >= n_vertices {
                return Err(Error::UnknownEdgeVertex { edge: i, vertex: e[0].max(e[1]) as i64 });
            }
            if e[0] == e[1] {
                return Err(Error::LoopEdge(i));
            }
        }
        let mut edge_faces = vec![Vec::new(); edges.len()];
        let mut vertex_faces = vec![Vec::new(); n_vertices];
        let mut vertex_edges = vec![Vec::new(); n_vertices];
        for (i, e) in edges.iter().enumerate() {
            vertex_edges[e[0]].push(i);
            vertex_edges[e[1]].push(i);
        }
        for (fi, f) in faces.iter().enumerate() {
            let k = f.vertices.len();
            if k < 3 || f.edges.len() != k {
                return Err(Error::DegenerateFace(fi));
            }
            for i in 0..k {
                let e = f.edges[i];
                let ends = *edges.get(e).ok_or(Error::DanglingEdge { face: fi, edge: e as i64 })?;
                let (a, b) = (f.vertices[i], f.vertices[(i + 1) % k]);
                if !((ends[0] == a && ends[1] == b) || (ends[0] == b && ends[1] == a)) {
                    return Err(Error::BrokenCycle(fi));
                }
                if edge_faces[e].contains(&fi) {
                    return Err(Error::NonManifold { edge: e, count: 2 });
                }
                edge_faces[e].push(fi);
            }
            let mut seen = BTreeSet::new();
            for &v in &f.vertices {
                if seen.insert(v) {
                    vertex_faces[v].push(fi);
                }
            }
        }
        for (e, fs) in edge_faces.iter().enumerate() {
            if fs.len() > 2 || (fs.is_empty() && !faces.is_empty()) {
                return Err(Error::NonManifold { edge: e, count: fs.len() });
            }
        }
        let mut c = Complex2D {
            n_vertices,
            edges,
            faces,
            tile_types,
            edge_faces,
            vertex_faces,
            vertex_edges,
        };
        c.check_connected()?;
        c.orient()?;
        Ok(c)
    }

    fn check_connected(&self) -> Result<()> {
        if self.n_vertices == 0 {
            return Ok(());
        }
        let mut seen = vec![false; self.n_vertices];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &e in &self.vertex_edges[v] {
                let w = self.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        if count == self.n_vertices {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Makes every interior edge traversed in opposite directions by its two
    /// faces, flipping faces when needed.
    fn orient(&mut self) -> Result<()> {
        let nf = self.faces.len();
        let mut state: Vec<Option<bool>> = vec![None; nf];
        for root in 0..nf {
            if state[root].is_some() {
                continue;
            }
            state[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                let flip_f = state[f].unwrap();
                for i in 0..self.faces[f].len() {
                    let e = self.faces[f].edges[i];
                    let dir_f = self.traverses_forward(f, i) ^ flip_f;
                    for &g in &self.edge_faces[e] {
                        if g == f {
                            continue;
                        }
                        let j = self.faces[g].edge_position(e).unwrap();
                        let dir_g = self.traverses_forward(g, j);
                        // opposite directions wanted
                        let need_flip = dir_g == dir_f;
                        match state[g] {
                            None => {
                                state[g] = Some(need_flip);
                                queue.push_back(g);
                            }
                            Some(s) if s != need_flip => return Err(Error::NonOrientable),
                            _ => {}
                        }
                    }
                }
            }
        }
        for (f, s) in state.iter().enumerate() {
            if *s == Some(true) {
                self.faces[f] = self.faces[f].reversed();
            }
        }
        Ok(())
    }

    fn traverses_forward(&self, f: FaceId, i: usize) -> bool {
        self.edges[self.faces[f].edges[i]][0] == self.faces[f].vertices[i]
    }

    /// The same complex with every face orientation reversed; base corners
    /// are kept.
    pub fn reversed(&self) -> Complex2D {
        let mut c = self.clone();
        for f in &mut c.faces {
            *f = f.reversed();
        }
        c
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn tile_types(&self) -> Option<&[String]> {
        self.tile_types.as_deref()
    }

    pub fn tile_type(&self, f: FaceId) -> Option<&str> {
        self.tile_types.as_ref().map(|t| t[f].as_str())
    }

    pub fn with_tile_types(mut self, types: Option<Vec<String>>) -> Result<Self> {
        if let Some(t) = &types {
            if t.len() != self.faces.len() {
                return Err(Error::TileTypeCount { got: t.len(), faces: self.faces.len() });
            }
        }
        self.tile_types = types;
        Ok(self)
    }

    pub fn edge_faces(&self, e: EdgeId) -> &[FaceId] {
        &self.edge_faces[e]
    }

    pub fn vertex_faces(&self, v: VertexId) -> &[FaceId] {
        &self.vertex_faces[v]
    }

    pub fn vertex_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.vertex_edges[v]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Whether face `f` runs along edge slot `i` from `edges[e][0]` to `edges[e][1]`.
    pub fn face_traverses_forward(&self, f: FaceId, i: usize) -> bool {
        self.traverses_forward(f, i)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn is_boundary_edge(&self, e: EdgeId) -> bool {
        self.edge_faces[e].len() == 1
    }

    pub fn is_closed(&self) -> bool {
        self.edge_faces.iter().all(|f| f.len() == 2)
    }

    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        self.vertex_edges[v].iter().any(|&e| self.is_boundary_edge(e))
    }

    pub fn is_interior_vertex(&self, v: VertexId) -> bool {
        v < self.n_vertices && !self.vertex_faces[v].is_empty() && !self.is_boundary_vertex(v)
    }

    pub fn is_triangulation(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 3)
    }

    /// Boundary components as simple cycles, oriented like the faces.
    /// Returns `None` when the boundary is pinched at some vertex.
    pub fn boundary_cycles(&self) -> Option<Vec<Cycle>> {
        let mut next: Vec<Option<(EdgeId, VertexId)>> = vec![None; self.n_vertices];
        let mut count = 0;
        for f in 0..self.faces.len() {
            let face = &self.faces[f];
            for i in 0..face.len() {
                let e = face.edges[i];
                if self.is_boundary_edge(e) {
                    let a = face.vertices[i];
                    let b = face.vertices[(i + 1) % face.len()];
                    if next[a].is_some() {
                        return None;
                    }
                    next[a] = Some((e, b));
                    count += 1;
                }
            }
        }
        let mut used = vec![false; self.n_vertices];
        let mut cycles = Vec::new();
        for start in 0..self.n_vertices {
            if used[start] || next[start].is_none() {
                continue;
            }
            let mut cycle = Cycle { vertices: Vec::new(), edges: Vec::new() };
            let mut v = start;
            loop {
                used[v] = true;
                let (e, w) = next[v]?;
                cycle.vertices.push(v);
                cycle.edges.push(e);
                v = w;
                if v == start {
                    break;
                }
                if used[v] {
                    return None;
                }
            }
            cycles.push(cycle);
        }
        debug_assert_eq!(cycles.iter().map(|c| c.edges.len()).sum::<usize>(), count);
        Some(cycles)
    }

    /// Faces of `f_ids` plus everything they touch, re-indexed densely in
    /// increasing parent-id order.
    pub fn sub_complex(&self, f_ids: &[FaceId]) -> Result<SubComplex> {
        let mut fs: Vec<FaceId> = f_ids.to_vec();
        fs.sort_unstable();
        fs.dedup();
        let mut vset = BTreeSet::new();
        let mut eset = BTreeSet::new();
        for &f in &fs {
            let face = self.faces.get(f).ok_or(Error::UnknownFace(f))?;
            vset.extend(face.vertices.iter().copied());
            eset.extend(face.edges.iter().copied());
        }
        let vertex_map: Vec<VertexId> = vset.into_iter().collect();
        let edge_map: Vec<EdgeId> = eset.into_iter().collect();
        let mut vnew = vec![usize::MAX; self.n_vertices];
        for (i, &v) in vertex_map.iter().enumerate() {
            vnew[v] = i;
        }
        let mut enew = vec![usize::MAX; self.edges.len()];
        for (i, &e) in edge_map.iter().enumerate() {
            enew[e] = i;
        }
        let edges = edge_map.iter().map(|&e| [vnew[self.edges[e][0]], vnew[self.edges[e][1]]]).collect();
        let faces = fs
            .iter()
            .map(|&f| Face {
                vertices: self.faces[f].vertices.iter().map(|&v| vnew[v]).collect(),
                edges: self.faces[f].edges.iter().map(|&e| enew[e]).collect(),
            })
            .collect();
        let tile_types = self.tile_types.as_ref().map(|t| fs.iter().map(|&f| t[f].clone()).collect());
        let complex = Complex2D::from_faces(vertex_map.len(), edges, faces, tile_types)?;
        Ok(SubComplex { complex, vertex_map, edge_map, face_map: fs })
    }

    /// Faces within combinatorial distance `depth` of `v`: depth 1 is the
    /// closed star, depth d + 1 adds every face touching a vertex of depth d.
    pub fn star_faces(&self, v: VertexId, depth: usize) -> Result<Vec<FaceId>> {
        if v >= self.n_vertices {
            return Err(Error::UnknownVertex(v));
        }
        let mut in_faces = vec![false; self.faces.len()];
        let mut in_verts = vec![false; self.n_vertices];
        let mut frontier = vec![v];
        in_verts[v] = true;
        for _ in 0..depth {
            let mut new_faces = Vec::new();
            for &u in &frontier {
                for &f in &self.vertex_faces[u] {
                    if !in_faces[f] {
                        in_faces[f] = true;
                        new_faces.push(f);
                    }
                }
            }
            frontier.clear();
            for f in new_faces {
                for &w in &self.faces[f].vertices {
                    if !in_verts[w] {
                        in_verts[w] = true;
                        frontier.push(w);
                    }
                }
            }
        }
        Ok((0..self.faces.len()).filter(|&f| in_faces[f]).collect())
    }

    /// Closed star of `v` with its link.
    pub fn star(&self, v: VertexId) -> Result<Star> {
        let faces = self.star_faces(v, 1)?;
        let mut link = Vec::new();
        if !faces.is_empty() {
            let sub = self.sub_complex(&faces)?;
            if sub.complex.euler_characteristic() == 1 {
                if let Some(cycles) = sub.complex.boundary_cycles() {
                    if cycles.len() == 1 {
                        link = cycles[0].vertices.iter().map(|&x| sub.vertex_map[x]).collect();
                    }
                }
            }
        }
        Ok(Star { center: v, faces, link })
    }

    /// Face adjacency graph: `result[f]` lists neighbours of `f` in
    /// increasing order.
    pub fn adjacency_graph(&self, mode: Adjacency) -> Vec<Vec<FaceId>> {
        let mut adj: Vec<BTreeSet<FaceId>> = vec![BTreeSet::new(); self.faces.len()];
        match mode {
            Adjacency::Edge => {
                for fs in &self.edge_faces {
                    if fs.len() == 2 {
                        adj[fs[0]].insert(fs[1]);
                        adj[fs[1]].insert(fs[0]);
                    }
                }
            }
            Adjacency::Vertex => {
                for fs in &self.vertex_faces {
                    for &a in fs {
                        for &b in fs {
                            if a != b {
                                adj[a].insert(b);
                            }
                        }
                    }
                }
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.vertex_faces[v].len()
    }

    pub fn valence_report(&self, v: VertexId) -> Result<ValenceReport> {
        if v >= self.n_vertices {
            return Err(Error::UnknownVertex(v));
        }
        let max_neighbor_valence = self.vertex_edges[v]
            .iter()
            .map(|&e| self.valence(self.other_end(e, v)))
            .max()
            .unwrap_or(0);
        Ok(ValenceReport { vertex: v, valence: self.valence(v), max_neighbor_valence })
    }

    /// Faces around an interior vertex in rotation order.
    pub fn rotation(&self, v: VertexId) -> Result<Vec<FaceId>> {
        if !self.is_interior_vertex(v) {
            return Err(Error::NotInterior(v));
        }
        let start = self.vertex_faces[v][0];
        let mut order = vec![start];
        let mut f = start;
        loop {
            let face = &self.faces[f];
            let i = face.position(v).unwrap();
            let e_out = face.edges[i];
            let g = *self.edge_faces[e_out].iter().find(|&&g| g != f).ok_or(Error::NotInterior(v))?;
            if g == start {
                break;
            }
            if order.len() > self.vertex_faces[v].len() {
                return Err(Error::NotInterior(v));
            }
            order.push(g);
            f = g;
        }
        Ok(order)
    }
}

#[cfg(test)]
pub(crate) mod tests;
