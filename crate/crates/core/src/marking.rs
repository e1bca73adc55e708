//! Rings (annuli with marked inner/outer boundary) and quadrilaterals
//! (disks with four marked boundary arcs).

use std::collections::BTreeSet;

use crate::complex::io::MarkingDoc;
use crate::complex::{Complex2D, Cycle, EdgeId, FaceId, VertexId};
use crate::error::{Error, Result};

/// A path of boundary edges; `vertices` has one more entry than `edges`,
/// so an empty arc still records its corner vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug)]
pub struct RingMarking {
    complex: Complex2D,
    inner: Cycle,
    outer: Cycle,
    parent_faces: Vec<FaceId>,
    parent_vertices: Vec<VertexId>,
}

impl RingMarking {
    pub fn new(complex: Complex2D, inner_edges: &[EdgeId], outer_edges: &[EdgeId]) -> Result<Self> {
        let cycles = annulus_cycles(&complex)?;
        let inner_set: BTreeSet<_> = inner_edges.iter().copied().collect();
        let outer_set: BTreeSet<_> = outer_edges.iter().copied().collect();
        let set_of = |c: &Cycle| c.edges.iter().copied().collect::<BTreeSet<_>>();
        let (inner, outer) = if set_of(&cycles[0]) == inner_set && set_of(&cycles[1]) == outer_set {
            (cycles[0].clone(), cycles[1].clone())
        } else if set_of(&cycles[1]) == inner_set && set_of(&cycles[0]) == outer_set {
            (cycles[1].clone(), cycles[0].clone())
        } else {
            return Err(Error::NotAnAnnulus("marked cycles are not the two boundary components".into()));
        };
        Ok(RingMarking { complex, inner, outer, parent_faces: Vec::new(), parent_vertices: Vec::new() })
    }

    /// Marks the boundary component containing `inner_vertex` as inner.
    pub fn with_inner_vertex(complex: Complex2D, inner_vertex: VertexId) -> Result<Self> {
        let cycles = annulus_cycles(&complex)?;
        let (inner, outer) = if cycles[0].vertices.contains(&inner_vertex) {
            (cycles[0].clone(), cycles[1].clone())
        } else if cycles[1].vertices.contains(&inner_vertex) {
            (cycles[1].clone(), cycles[0].clone())
        } else {
            return Err(Error::NotAnAnnulus(format!("vertex {inner_vertex} is on neither boundary")));
        };
        Ok(RingMarking { complex, inner, outer, parent_faces: Vec::new(), parent_vertices: Vec::new() })
    }

    pub fn complex(&self) -> &Complex2D {
        &self.complex
    }

    pub fn inner(&self) -> &Cycle {
        &self.inner
    }

    pub fn outer(&self) -> &Cycle {
        &self.outer
    }

    /// Face ids in the complex this ring was extracted from (empty if the
    /// ring was built directly).
    pub fn parent_faces(&self) -> &[FaceId] {
        &self.parent_faces
    }

    /// `parent_vertices()[v]` is the parent id of ring vertex `v`.
    pub fn parent_vertices(&self) -> &[VertexId] {
        &self.parent_vertices
    }

    pub fn to_doc(&self) -> MarkingDoc {
        MarkingDoc::Ring { inner: self.inner.edges.clone(), outer: self.outer.edges.clone() }
    }
}

fn annulus_cycles(c: &Complex2D) -> Result<Vec<Cycle>> {
    if c.euler_characteristic() != 0 {
        return Err(Error::NotAnAnnulus(format!("Euler characteristic {}", c.euler_characteristic())));
    }
    let cycles = c
        .boundary_cycles()
        .ok_or_else(|| Error::NotAnAnnulus("boundary is not a union of simple cycles".into()))?;
    if cycles.len() != 2 {
        return Err(Error::NotAnAnnulus(format!("{} boundary components", cycles.len())));
    }
    Ok(cycles)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct QuadMarking {
    complex: Complex2D,
    top: Arc,
    bottom: Arc,
    left: Arc,
    right: Arc,
}

impl QuadMarking {
    /// Validates four edge sets partitioning the boundary in cyclic order
    /// top, side, bottom, side. Sides may be empty (the ends then meet at a
    /// corner); top and bottom may not.
    pub fn new(
        complex: Complex2D,
        top: &[EdgeId],
        bottom: &[EdgeId],
        left: &[EdgeId],
        right: &[EdgeId],
    ) -> Result<Self> {
        if complex.euler_characteristic() != 1 {
            return Err(Error::NotAQuad(format!("Euler characteristic {}", complex.euler_characteristic())));
        }
        let cycles = complex
            .boundary_cycles()
            .filter(|c| c.len() == 1)
            .ok_or_else(|| Error::NotAQuad("boundary is not a single simple cycle".into()))?;
        let cycle = &cycles[0];
        if top.is_empty() || bottom.is_empty() {
            return Err(Error::NotAQuad("top and bottom must be nonempty".into()));
        }
        let mut label = vec![None; complex.n_edges()];
        for (side, arc) in [(Side::Top, top), (Side::Bottom, bottom), (Side::Left, left), (Side::Right, right)] {
            for &e in arc {
                if e >= complex.n_edges() || !complex.is_boundary_edge(e) {
                    return Err(Error::NotAQuad(format!("edge {e} is not a boundary edge")));
                }
                if label[e].replace(side).is_some() {
                    return Err(Error::NotAQuad(format!("edge {e} is in two arcs")));
                }
            }
        }
        let labels: Vec<Side> = cycle
            .edges
            .iter()
            .map(|&e| label[e].ok_or_else(|| Error::NotAQuad(format!("boundary edge {e} is unmarked"))))
            .collect::<Result<_>>()?;
        let n = labels.len();
        // rotate so the cycle starts at the beginning of the top run
        let start = (0..n)
            .find(|&i| labels[i] == Side::Top && labels[(i + n - 1) % n] != Side::Top)
            .ok_or_else(|| Error::NotAQuad("top covers the whole boundary".into()))?;
        let mut runs: Vec<(Side, usize, usize)> = Vec::new();
        for k in 0..n {
            let i = (start + k) % n;
            match runs.last_mut() {
                Some(r) if r.0 == labels[i] => r.2 += 1,
                _ => runs.push((labels[i], k, 1)),
            }
        }
        let order: Vec<Side> = runs.iter().map(|r| r.0).collect();
        let valid = match order.as_slice() {
            [Side::Top, Side::Bottom] => left.is_empty() && right.is_empty(),
            [Side::Top, x, Side::Bottom] | [Side::Top, Side::Bottom, x] => {
                matches!(x, Side::Left | Side::Right)
                    && (if *x == Side::Left { right.is_empty() } else { left.is_empty() })
            }
            [Side::Top, x, Side::Bottom, y] => {
                matches!((x, y), (Side::Left, Side::Right) | (Side::Right, Side::Left))
            }
            _ => false,
        };
        if !valid {
            return Err(Error::NotAQuad("arcs are not in cyclic order top, side, bottom, side".into()));
        }
        let arc_at = |offset: usize, len: usize| {
            let vertices = (0..=len).map(|k| cycle.vertices[(start + offset + k) % n]).collect();
            let edges = (0..len).map(|k| cycle.edges[(start + offset + k) % n]).collect();
            Arc { vertices, edges }
        };
        let find = |side: Side| runs.iter().find(|r| r.0 == side).map(|r| arc_at(r.1, r.2));
        let top_arc = find(Side::Top).unwrap();
        let bottom_arc = find(Side::Bottom).unwrap();
        let bottom_run = runs.iter().find(|r| r.0 == Side::Bottom).unwrap();
        // empty sides sit at the corner between the neighbouring runs
        let after_top = arc_at(top_arc.edges.len(), 0);
        let after_bottom = arc_at(bottom_run.1 + bottom_run.2, 0);
        let side_arc = |side: Side| {
            find(side).unwrap_or_else(|| {
                let other = if side == Side::Left { Side::Right } else { Side::Left };
                match runs.iter().position(|r| r.0 == other) {
                    Some(1) => after_bottom.clone(),
                    Some(_) => after_top.clone(),
                    // both empty: left after top, right after bottom
                    None if side == Side::Left => after_top.clone(),
                    None => after_bottom.clone(),
                }
            })
        };
        let left_arc = side_arc(Side::Left);
        let right_arc = side_arc(Side::Right);
        Ok(QuadMarking { complex, top: top_arc, bottom: bottom_arc, left: left_arc, right: right_arc })
    }

    /// Marks `top` and `bottom`; the two remaining boundary runs become the
    /// sides.
    pub fn from_ends(complex: Complex2D, top: &[EdgeId], bottom: &[EdgeId]) -> Result<Self> {
        let cycles = complex
            .boundary_cycles()
            .filter(|c| c.len() == 1)
            .ok_or_else(|| Error::NotAQuad("boundary is not a single simple cycle".into()))?;
        let cycle = &cycles[0];
        let ends: BTreeSet<EdgeId> = top.iter().chain(bottom).copied().collect();
        let top_set: BTreeSet<EdgeId> = top.iter().copied().collect();
        let n = cycle.edges.len();
        let start = (0..n)
            .find(|&i| top_set.contains(&cycle.edges[i]) && !top_set.contains(&cycle.edges[(i + n - 1) % n]))
            .ok_or_else(|| Error::NotAQuad("top is not a proper arc".into()))?;
        let mut sides: [Vec<EdgeId>; 2] = [Vec::new(), Vec::new()];
        let mut which = 0;
        let mut seen_bottom = false;
        for k in 0..n {
            let e = cycle.edges[(start + k) % n];
            if ends.contains(&e) {
                if !top_set.contains(&e) {
                    seen_bottom = true;
                }
                if seen_bottom {
                    which = 1;
                }
            } else {
                sides[which].push(e);
            }
        }
        let [right, left] = sides;
        QuadMarking::new(complex, top, bottom, &left, &right)
    }

    pub fn complex(&self) -> &Complex2D {
        &self.complex
    }

    pub fn top(&self) -> &Arc {
        &self.top
    }

    pub fn bottom(&self) -> &Arc {
        &self.bottom
    }

    pub fn left(&self) -> &Arc {
        &self.left
    }

    pub fn right(&self) -> &Arc {
        &self.right
    }

    /// The same quadrilateral with left/right as ends.
    pub fn transposed(&self) -> Result<QuadMarking> {
        if self.left.edges.is_empty() || self.right.edges.is_empty() {
            return Err(Error::NotAQuad("transposing needs nonempty sides".into()));
        }
        QuadMarking::new(
            self.complex.clone(),
            &self.left.edges,
            &self.right.edges,
            &self.bottom.edges,
            &self.top.edges,
        )
    }

    pub fn to_doc(&self) -> MarkingDoc {
        MarkingDoc::Quad {
            top: self.top.edges.clone(),
            bottom: self.bottom.edges.clone(),
            left: self.left.edges.clone(),
            right: self.right.edges.clone(),
        }
    }
}

/// Either kind of marked complex.
#[derive(Clone, Debug)]
pub enum Marked {
    Ring(RingMarking),
    Quad(QuadMarking),
}

impl Marked {
    pub fn complex(&self) -> &Complex2D {
        match self {
            Marked::Ring(r) => r.complex(),
            Marked::Quad(q) => q.complex(),
        }
    }

    pub fn from_doc(complex: Complex2D, doc: &MarkingDoc) -> Result<Self> {
        Ok(match doc {
            MarkingDoc::Ring { inner, outer } => Marked::Ring(RingMarking::new(complex, inner, outer)?),
            MarkingDoc::Quad { top, bottom, left, right } => {
                Marked::Quad(QuadMarking::new(complex, top, bottom, left, right)?)
            }
        })
    }

    pub fn to_doc(&self) -> MarkingDoc {
        match self {
            Marked::Ring(r) => r.to_doc(),
            Marked::Quad(q) => q.to_doc(),
        }
    }
}

/// Whether the closed faces `faces` of `c` form a disk.
pub fn faces_form_disk(c: &Complex2D, faces: &[FaceId]) -> bool {
    match c.sub_complex(faces) {
        Ok(sub) => {
            sub.complex.euler_characteristic() == 1
                && sub.complex.boundary_cycles().is_some_and(|b| b.len() == 1)
        }
        Err(_) => false,
    }
}

/// The ring between the depth-`inner_depth` and depth-`outer_depth` stars
/// of `v`.
pub fn extract_vertex_annulus(
    c: &Complex2D,
    v: VertexId,
    inner_depth: usize,
    outer_depth: usize,
) -> Result<RingMarking> {
    if inner_depth == 0 || inner_depth >= outer_depth {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= inner_depth < outer_depth, got {inner_depth}, {outer_depth}"
        )));
    }
    if !c.is_interior_vertex(v) {
        return Err(Error::NotAnAnnulus(format!("vertex {v} is not interior")));
    }
    let inner_faces = c.star_faces(v, inner_depth)?;
    let outer_faces = c.star_faces(v, outer_depth)?;
    if !faces_form_disk(c, &inner_faces) || !faces_form_disk(c, &outer_faces) {
        return Err(Error::NotAnAnnulus(format!("a star of vertex {v} is not a disk")));
    }
    let inner_set: BTreeSet<FaceId> = inner_faces.iter().copied().collect();
    let ring_faces: Vec<FaceId> = outer_faces.into_iter().filter(|f| !inner_set.contains(f)).collect();
    let sub = c.sub_complex(&ring_faces).map_err(|e| Error::NotAnAnnulus(e.to_string()))?;
    // the inner boundary is made of vertices of the inner star
    let inner_star_vertices: BTreeSet<VertexId> =
        inner_faces.iter().flat_map(|&f| c.face(f).vertices.iter().copied()).collect();
    let cycles = annulus_cycles(&sub.complex)?;
    let touches_inner = |cy: &Cycle| cy.vertices.iter().all(|&x| inner_star_vertices.contains(&sub.vertex_map[x]));
    let anchor = if touches_inner(&cycles[0]) {
        cycles[0].vertices[0]
    } else if touches_inner(&cycles[1]) {
        cycles[1].vertices[0]
    } else {
        return Err(Error::NotAnAnnulus("could not identify the inner boundary".into()));
    };
    let mut ring = RingMarking::with_inner_vertex(sub.complex, anchor)?;
    ring.parent_faces = sub.face_map;
    ring.parent_vertices = sub.vertex_map;
    Ok(ring)
}
