//! Carrier graphs: the tiles or vertices that carry weight, their
//! adjacency, and for rings the winding of each step around the hole.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use super::Mode;
use crate::complex::{Complex2D, Cycle, EdgeId};
use crate::error::{Error, Result};
use crate::marking::{Arc, QuadMarking, RingMarking};

/// Deepest winding level explored when looking for essential loops.
const LEVELS: i32 = 3;

#[derive(Clone, Debug)]
pub(crate) struct CarrierGraph {
    pub n: usize,
    /// `(neighbour, winding increment)`, sorted and deduplicated.
    pub adj: Vec<Vec<(usize, i32)>>,
    pub sources: Vec<bool>,
    pub targets: Vec<bool>,
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    cost: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on cost, then on node id
        other.cost.total_cmp(&self.cost).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest connecting paths from every source at once.
pub(crate) struct PathTree {
    pub dist: Vec<f64>,
    pub parent: Vec<Option<usize>>,
}

impl PathTree {
    pub fn path_to(&self, mut t: usize) -> Vec<usize> {
        let mut out = vec![t];
        while let Some(p) = self.parent[t] {
            out.push(p);
            t = p;
        }
        out.sort_unstable();
        out
    }
}

pub(crate) fn set_cost(w: &[f64], set: &[usize]) -> f64 {
    set.iter().map(|&i| w[i]).sum()
}

impl CarrierGraph {
    pub fn for_quad(q: &QuadMarking, mode: Mode) -> CarrierGraph {
        let c = q.complex();
        let mut g = Self::skeleton(c, mode, None);
        g.sources = touching(c, mode, q.top());
        g.targets = touching(c, mode, q.bottom());
        g
    }

    pub fn for_ring(r: &RingMarking, mode: Mode) -> Result<CarrierGraph> {
        let c = r.complex();
        let cocycle = winding_cocycle(c, r.inner(), r.outer())?;
        let mut g = Self::skeleton(c, mode, Some(&cocycle));
        g.sources = touching(c, mode, &cycle_arc(r.inner()));
        g.targets = touching(c, mode, &cycle_arc(r.outer()));
        Ok(g)
    }

    fn skeleton(c: &Complex2D, mode: Mode, cocycle: Option<&[i32]>) -> CarrierGraph {
        // value of the cocycle on an edge run from `from`
        let step = |e: EdgeId, from: usize| -> i32 {
            match cocycle {
                Some(z) if c.edge(e)[0] == from => z[e],
                Some(z) => -z[e],
                None => 0,
            }
        };
        let mut adj: Vec<BTreeSet<(usize, i32)>>;
        match mode {
            Mode::Vertex => {
                adj = vec![BTreeSet::new(); c.n_vertices()];
                for (e, &[a, b]) in c.edges().iter().enumerate() {
                    adj[a].insert((b, step(e, a)));
                    adj[b].insert((a, step(e, b)));
                }
            }
            Mode::TileSkinny | Mode::TileFat => {
                adj = vec![BTreeSet::new(); c.n_faces()];
                // winding from the face's first vertex forward to its corner i
                let to_corner = |f: usize, i: usize| -> i32 {
                    let face = c.face(f);
                    (0..i).map(|j| step(face.edges[j], face.vertices[j])).sum()
                };
                let mut link = |f: usize, g: usize, v: usize| {
                    let (pf, pg) = (c.face(f).position(v).unwrap(), c.face(g).position(v).unwrap());
                    adj[f].insert((g, to_corner(f, pf) - to_corner(g, pg)));
                };
                if mode == Mode::TileSkinny {
                    for e in 0..c.n_edges() {
                        if let [f, g] = *c.edge_faces(e) {
                            let v = c.edge(e)[0];
                            link(f, g, v);
                            link(g, f, v);
                        }
                    }
                } else {
                    for v in 0..c.n_vertices() {
                        let fs = c.vertex_faces(v);
                        for &f in fs {
                            for &g in fs {
                                if f != g {
                                    link(f, g, v);
                                }
                            }
                        }
                    }
                }
            }
        }
        let n = adj.len();
        CarrierGraph {
            n,
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            sources: vec![false; n],
            targets: vec![false; n],
        }
    }

    /// Node-weighted multi-source shortest paths; ties go to the lowest id.
    pub fn shortest_paths(&self, w: &[f64]) -> PathTree {
        let mut dist = vec![f64::INFINITY; self.n];
        let mut parent = vec![None; self.n];
        let mut heap = BinaryHeap::new();
        for s in (0..self.n).filter(|&s| self.sources[s]) {
            dist[s] = w[s];
            heap.push(Entry { cost: w[s], node: s });
        }
        let mut done = vec![false; self.n];
        while let Some(Entry { cost, node }) = heap.pop() {
            if done[node] {
                continue;
            }
            done[node] = true;
            for &(m, _) in &self.adj[node] {
                let d = cost + w[m];
                if d < dist[m] {
                    dist[m] = d;
                    parent[m] = Some(node);
                    heap.push(Entry { cost: d, node: m });
                }
            }
        }
        PathTree { dist, parent }
    }

    /// Shortest connecting path: `(length, carriers)`.
    pub fn shortest_connecting(&self, w: &[f64]) -> Result<(f64, Vec<usize>)> {
        let tree = self.shortest_paths(w);
        let t = (0..self.n)
            .filter(|&t| self.targets[t] && tree.dist[t].is_finite())
            .min_by(|&a, &b| tree.dist[a].total_cmp(&tree.dist[b]).then(a.cmp(&b)))
            .ok_or(Error::NoPath)?;
        let path = tree.path_to(t);
        Ok((set_cost(w, &path), path))
    }

    /// Carriers next to a step that changes the winding; every essential
    /// loop passes through one.
    pub fn loop_starts(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v].iter().any(|&(_, k)| k != 0)).collect()
    }

    /// Shortest essential loop through `s`, as a carrier set.
    pub fn essential_loop_from(&self, w: &[f64], s: usize) -> Option<Vec<usize>> {
        let width = (2 * LEVELS + 1) as usize;
        let idx = |v: usize, k: i32| v * width + (k + LEVELS) as usize;
        let mut dist = vec![f64::INFINITY; self.n * width];
        let mut parent: Vec<Option<usize>> = vec![None; self.n * width];
        let mut heap = BinaryHeap::new();
        dist[idx(s, 0)] = w[s];
        heap.push(Entry { cost: w[s], node: idx(s, 0) });
        let mut done = vec![false; self.n * width];
        while let Some(Entry { cost, node }) = heap.pop() {
            if done[node] {
                continue;
            }
            done[node] = true;
            let (v, k) = (node / width, (node % width) as i32 - LEVELS);
            if v == s && k != 0 {
                let mut set = BTreeSet::new();
                let mut cur = node;
                set.insert(cur / width);
                while let Some(p) = parent[cur] {
                    set.insert(p / width);
                    cur = p;
                }
                return Some(set.into_iter().collect());
            }
            for &(m, dk) in &self.adj[v] {
                let k2 = k + dk;
                if k2.abs() > LEVELS {
                    continue;
                }
                let j = idx(m, k2);
                let d = cost + w[m];
                if d < dist[j] {
                    dist[j] = d;
                    parent[j] = Some(node);
                    heap.push(Entry { cost: d, node: j });
                }
            }
        }
        None
    }

    /// Shortest essential loop over all starts: `(length, carriers)`.
    pub fn shortest_essential(&self, w: &[f64]) -> Result<(f64, Vec<usize>)> {
        let mut best: Option<(f64, Vec<usize>)> = None;
        for s in self.loop_starts() {
            if let Some(l) = self.essential_loop_from(w, s) {
                let len = set_cost(w, &l);
                if best.as_ref().is_none_or(|(b, _)| len < *b) {
                    best = Some((len, l));
                }
            }
        }
        best.ok_or(Error::NoPath)
    }

    /// Whether the carriers in `set` contain a source-to-target path.
    pub fn set_connects(&self, inside: &[bool]) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| inside[v] && self.sources[v]).collect();
        for &v in &queue {
            seen[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            if self.targets[v] {
                return true;
            }
            for &(m, _) in &self.adj[v] {
                if inside[m] && !seen[m] {
                    seen[m] = true;
                    queue.push_back(m);
                }
            }
        }
        false
    }

    /// Whether the carriers in `set` contain a loop around the hole: some
    /// component carries no consistent winding potential.
    pub fn set_has_essential_loop(&self, inside: &[bool]) -> bool {
        let mut pot: Vec<Option<i32>> = vec![None; self.n];
        for root in 0..self.n {
            if !inside[root] || pot[root].is_some() {
                continue;
            }
            pot[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let pv = pot[v].unwrap();
                for &(m, k) in &self.adj[v] {
                    if !inside[m] {
                        continue;
                    }
                    match pot[m] {
                        None => {
                            pot[m] = Some(pv + k);
                            queue.push_back(m);
                        }
                        Some(pm) if pm != pv + k => return true,
                        _ => {}
                    }
                }
            }
        }
        false
    }
}

fn cycle_arc(c: &Cycle) -> Arc {
    let mut vertices = c.vertices.clone();
    vertices.push(c.vertices[0]);
    Arc { vertices, edges: c.edges.clone() }
}

/// Carriers meeting an arc: its vertices, the tiles containing one of its
/// edges (skinny) or one of its vertices (fat).
fn touching(c: &Complex2D, mode: Mode, arc: &Arc) -> Vec<bool> {
    match mode {
        Mode::Vertex => {
            let mut out = vec![false; c.n_vertices()];
            for &v in &arc.vertices {
                out[v] = true;
            }
            out
        }
        Mode::TileSkinny => {
            let mut out = vec![false; c.n_faces()];
            for &e in &arc.edges {
                for &f in c.edge_faces(e) {
                    out[f] = true;
                }
            }
            // an empty arc is a corner
            if arc.edges.is_empty() {
                for &f in c.vertex_faces(arc.vertices[0]) {
                    out[f] = true;
                }
            }
            out
        }
        Mode::TileFat => {
            let mut out = vec![false; c.n_faces()];
            for &v in &arc.vertices {
                for &f in c.vertex_faces(v) {
                    out[f] = true;
                }
            }
            out
        }
    }
}

/// An integer 1-cochain on the edges, closed on every face, whose sum
/// along a closed edge path counts its turns around the hole. It is dual
/// to a shortest chain of faces from the inner to the outer boundary.
fn winding_cocycle(c: &Complex2D, inner: &Cycle, outer: &Cycle) -> Result<Vec<i32>> {
    let is_inner: BTreeSet<EdgeId> = inner.edges.iter().copied().collect();
    let is_outer: BTreeSet<EdgeId> = outer.edges.iter().copied().collect();
    // BFS over faces through interior edges, from faces on the inner cycle
    let nf = c.n_faces();
    let mut prev: Vec<Option<(usize, EdgeId)>> = vec![None; nf];
    let mut seen = vec![false; nf];
    let mut entry: Vec<Option<EdgeId>> = vec![None; nf];
    let mut queue = VecDeque::new();
    for &e in &inner.edges {
        let f = c.edge_faces(e)[0];
        if !seen[f] {
            seen[f] = true;
            entry[f] = Some(e);
            queue.push_back(f);
        }
    }
    let mut end = None;
    while let Some(f) = queue.pop_front() {
        if let Some(&e) = c.face(f).edges.iter().find(|e| is_outer.contains(e)) {
            end = Some((f, e));
            break;
        }
        for &e in &c.face(f).edges {
            if is_inner.contains(&e) {
                continue;
            }
            for &g in c.edge_faces(e) {
                if !seen[g] {
                    seen[g] = true;
                    prev[g] = Some((f, e));
                    queue.push_back(g);
                }
            }
        }
    }
    let (last, out_edge) = end.ok_or(Error::NotARing)?;
    let mut z = vec![0i32; c.n_edges()];
    // direction of `e` as run by face `f`, as a sign on the stored edge
    let run = |f: usize, e: EdgeId| -> i32 {
        let face = c.face(f);
        let i = face.edge_position(e).unwrap();
        if c.face_traverses_forward(f, i) {
            1
        } else {
            -1
        }
    };
    z[out_edge] = run(last, out_edge);
    let mut f = last;
    while let Some((g, e)) = prev[f] {
        z[e] = run(g, e);
        f = g;
    }
    let first_edge = entry[f].expect("chain starts on the inner boundary");
    z[first_edge] = -run(f, first_edge);
    Ok(z)
}
