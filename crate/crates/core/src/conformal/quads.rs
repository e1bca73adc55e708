use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{CanonicalForm, Complex2D, EdgeId, FaceId, SubComplex};
use crate::error::{Error, Result};
use crate::marking::QuadMarking;
use crate::modulus::{modulus_sup, Mode};
use crate::parallel::par_map;
use crate::rules::{subdivide_detailed, SubdivisionRule};
use crate::shapes::from_polygons;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuadKind {
    I,
    II,
    III,
}

/// One, two or three tiles in a row with single-edge ends.
#[derive(Clone, Debug)]
pub struct TestQuad {
    pub kind: QuadKind,
    pub tiles: Vec<FaceId>,
    /// Edges shared by consecutive tiles.
    pub interior_edges: Vec<EdgeId>,
    pub top: EdgeId,
    pub bottom: EdgeId,
    /// The quad on its own, re-indexed.
    pub marking: QuadMarking,
    pub vertex_map: Vec<usize>,
    pub face_map: Vec<FaceId>,
}

impl TestQuad {
    /// Isomorphism class, ignoring which end is which.
    pub fn canonical_form(&self) -> CanonicalForm {
        let c = self.marking.complex();
        let names: BTreeSet<&str> = c.tile_types().into_iter().flatten().map(String::as_str).collect();
        let faces: Vec<u64> = (0..c.n_faces())
            .map(|f| c.tile_type(f).map_or(0, |t| 1 + names.iter().position(|n| *n == t).unwrap() as u64))
            .collect();
        let mut edges = vec![0u64; c.n_edges()];
        for &e in self.marking.top().edges.iter().chain(&self.marking.bottom().edges) {
            edges[e] = 1;
        }
        c.canonical_form_labeled(Some(&faces), Some(&edges)).expect("test quads are edge-connected")
    }
}

fn vertex_set(c: &Complex2D, f: FaceId) -> BTreeSet<usize> {
    c.face(f).vertices.iter().copied().collect()
}

fn shares_vertex(c: &Complex2D, a: EdgeId, b: EdgeId) -> bool {
    let [x, y] = c.edge(a);
    c.edge(b).contains(&x) || c.edge(b).contains(&y)
}

fn other_face(c: &Complex2D, e: EdgeId, f: FaceId) -> Option<FaceId> {
    match *c.edge_faces(e) {
        [a, b] if a == f && b != f => Some(b),
        [a, b] if b == f && a != f => Some(a),
        _ => None,
    }
}

fn build(c: &Complex2D, kind: QuadKind, tiles: Vec<FaceId>, interior: Vec<EdgeId>, top: EdgeId, bottom: EdgeId) -> Option<TestQuad> {
    let SubComplex { complex, vertex_map, edge_map, face_map } = c.sub_complex(&tiles).ok()?;
    let local = |e: EdgeId| edge_map.binary_search(&e).ok();
    let (t, b) = (local(top)?, local(bottom)?);
    if !complex.is_boundary_edge(t) || !complex.is_boundary_edge(b) || t == b {
        return None;
    }
    let marking = QuadMarking::from_ends(complex, &[t], &[b]).ok()?;
    Some(TestQuad { kind, tiles, interior_edges: interior, top, bottom, marking, vertex_map, face_map })
}

/// All Type I, II and III test quadrilaterals of `c`, each placement once.
pub fn enumerate_test_quads(c: &Complex2D) -> Vec<TestQuad> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |q: Option<TestQuad>| {
        if let Some(q) = q {
            let mut tiles = q.tiles.clone();
            tiles.sort_unstable();
            if seen.insert((q.kind, tiles, q.top.min(q.bottom), q.top.max(q.bottom))) {
                out.push(q);
            }
        }
    };
    // one tile, ends on disjoint edges
    for t in 0..c.n_faces() {
        let es = &c.face(t).edges;
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                if es[i] != es[j] && !shares_vertex(c, es[i], es[j]) {
                    push(build(c, QuadKind::I, vec![t], vec![], es[i], es[j]));
                }
            }
        }
    }
    // two tiles meeting in exactly one edge f, ends meeting f
    for f in 0..c.n_edges() {
        let [t1, t2] = match *c.edge_faces(f) {
            [a, b] if a != b => [a, b],
            _ => continue,
        };
        let common: BTreeSet<usize> = vertex_set(c, t1).intersection(&vertex_set(c, t2)).copied().collect();
        let shared_edges = c.face(t1).edges.iter().filter(|e| c.face(t2).edges.contains(e)).count();
        if common.len() != 2 || shared_edges != 1 {
            continue;
        }
        for &top in &c.face(t1).edges {
            for &bottom in &c.face(t2).edges {
                if top != f && bottom != f && shares_vertex(c, top, f) && shares_vertex(c, bottom, f) {
                    push(build(c, QuadKind::II, vec![t1, t2], vec![f], top, bottom));
                }
            }
        }
    }
    // triangle t2 between t1 and t3, which meet only at v
    for t2 in 0..c.n_faces() {
        let face = c.face(t2);
        if face.len() != 3 {
            continue;
        }
        for i in 0..3 {
            let v = face.vertices[i];
            let (f1, f3, f2) = (face.edges[(i + 2) % 3], face.edges[i], face.edges[(i + 1) % 3]);
            let (Some(t1), Some(t3)) = (other_face(c, f1, t2), other_face(c, f3, t2)) else { continue };
            if t1 == t3 {
                continue;
            }
            let (s1, s2, s3) = (vertex_set(c, t1), vertex_set(c, t2), vertex_set(c, t3));
            let meet = |a: &BTreeSet<usize>, b: &BTreeSet<usize>| a.intersection(b).copied().collect::<BTreeSet<_>>();
            let edge_set = |e: EdgeId| c.edge(e).into_iter().collect::<BTreeSet<_>>();
            if meet(&s1, &s3) != BTreeSet::from([v]) || meet(&s1, &s2) != edge_set(f1) || meet(&s2, &s3) != edge_set(f3) {
                continue;
            }
            for (t, f) in [(t1, f1), (t3, f3)] {
                for &top in &c.face(t).edges {
                    if top != f && c.edge(top).contains(&v) {
                        push(build(c, QuadKind::III, vec![t1, t2, t3], vec![f1, f3], top, f2));
                    }
                }
            }
        }
    }
    out
}

/// Result of the 1,2,3-tile criterion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub rule: String,
    pub mode: Mode,
    pub levels: usize,
    /// Least modulus over all test quads and levels.
    pub m: f64,
    /// Largest area of one tile under the sum of the unit-area optimal
    /// weightings of all test quads, at the deepest level.
    pub a_max: f64,
    pub quad_count: usize,
    /// Distinct quads up to isomorphism.
    pub class_count: usize,
    pub per_kind: BTreeMap<String, f64>,
    /// `per_level[l]` is the least modulus after `l + 1` subdivisions.
    pub per_level: Vec<f64>,
    /// Whether `per_level` never increases.
    pub monotone: bool,
}

/// One placement of a test quad inside a subdivided complex.
struct Placed {
    marking: QuadMarking,
    sub: SubComplex,
}

/// Places every quad of `quads` (quads of `base`) inside `fine`, given the
/// base face of each fine face and the fine edges under each base edge.
fn place(fine: &Complex2D, ancestor: &[FaceId], under: &[Vec<EdgeId>], quad: &TestQuad) -> Result<Placed> {
    let faces: Vec<FaceId> = (0..fine.n_faces()).filter(|&f| quad.tiles.contains(&ancestor[f])).collect();
    let sub = fine.sub_complex(&faces)?;
    let local = |e: EdgeId| -> Vec<EdgeId> {
        under[e].iter().map(|x| sub.edge_map.binary_search(x).expect("end edges lie in the quad")).collect()
    };
    let marking = QuadMarking::from_ends(sub.complex.clone(), &local(quad.top), &local(quad.bottom))?;
    Ok(Placed { marking, sub })
}

/// Evaluates the 1,2,3-tile criterion: every tile type is subdivided once
/// to give a sample of adjacent tiles, all test quads of the sample are
/// subdivided `levels` more times, and the least modulus is reported.
pub fn criterion_123(rule: &SubdivisionRule, levels: usize, mode: Mode, tol: f64) -> Result<CriterionReport> {
    if levels == 0 {
        return Err(Error::InvalidArgument("levels must be at least 1".into()));
    }
    let mut per_level = vec![f64::INFINITY; levels];
    let mut per_kind: BTreeMap<String, f64> = BTreeMap::new();
    let mut classes = BTreeSet::new();
    let mut quad_count = 0;
    let mut a_max: f64 = 0.0;
    for (name, tile) in &rule.tiles {
        let k = tile.sides();
        let seed = from_polygons(k, &[(0..k).collect()])?.with_tile_types(Some(vec![name.clone()]))?;
        let base = subdivide_detailed(&seed, rule)?.complex;
        let quads = enumerate_test_quads(&base);
        quad_count += quads.len();
        classes.extend(quads.iter().map(TestQuad::canonical_form));
        let mut fine = base.clone();
        let mut ancestor: Vec<FaceId> = (0..base.n_faces()).collect();
        let mut under: Vec<Vec<EdgeId>> = (0..base.n_edges()).map(|e| vec![e]).collect();
        for level in 0..levels {
            let d = subdivide_detailed(&fine, rule)?;
            ancestor = d.face_parent.iter().map(|&p| ancestor[p]).collect();
            under = under.iter().map(|es| es.iter().flat_map(|&e| d.edge_children[e].iter().copied()).collect()).collect();
            fine = d.complex;
            let results = par_map(&quads, |q| -> Result<(Placed, crate::modulus::ModulusResult)> {
                let placed = place(&fine, &ancestor, &under, q)?;
                let m = modulus_sup(&placed.marking, mode, tol)?;
                Ok((placed, m))
            });
            let n_carriers = match mode {
                Mode::Vertex => fine.n_vertices(),
                _ => fine.n_faces(),
            };
            let mut total = vec![0.0; n_carriers];
            for (q, r) in quads.iter().zip(results) {
                let (placed, m) = r?;
                per_level[level] = per_level[level].min(m.value);
                let slot = per_kind.entry(format!("{:?}", q.kind)).or_insert(f64::INFINITY);
                *slot = slot.min(m.value);
                let norm = m.weights.weights.iter().map(|x| x * x).sum::<f64>().sqrt();
                let map = match mode {
                    Mode::Vertex => &placed.sub.vertex_map,
                    _ => &placed.sub.face_map,
                };
                for (i, w) in m.weights.weights.iter().enumerate() {
                    total[map[i]] += w / norm;
                }
            }
            if level + 1 == levels {
                for t in 0..base.n_faces() {
                    let faces = (0..fine.n_faces()).filter(|&f| ancestor[f] == t);
                    let carriers: BTreeSet<usize> = match mode {
                        Mode::Vertex => faces.flat_map(|f| fine.face(f).vertices.clone()).collect(),
                        _ => faces.collect(),
                    };
                    a_max = a_max.max(carriers.iter().map(|&c| total[c] * total[c]).sum());
                }
            }
        }
    }
    let m = per_level.iter().copied().fold(f64::INFINITY, f64::min);
    let monotone = per_level.windows(2).all(|w| w[1] <= w[0]);
    Ok(CriterionReport {
        rule: rule.name.clone(),
        mode,
        levels,
        m: if m.is_finite() { m } else { 0.0 },
        a_max,
        quad_count,
        class_count: classes.len(),
        per_kind,
        per_level,
        monotone,
    })
}
