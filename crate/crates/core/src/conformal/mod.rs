//! Lower bounds on moduli: test quadrilaterals and the 1,2,3-tile
//! criterion, star and valence bounds, layering, and empirical probes of
//! the conformality axioms.

mod axiom;
mod quads;

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{Complex2D, FaceId, ValenceReport, VertexId};
use crate::error::{Error, Result};
use crate::marking::RingMarking;

pub use axiom::{axiom_probe, Axiom, AxiomParams, AxiomReport, AxiomTarget};
pub use quads::{criterion_123, enumerate_test_quads, CriterionReport, QuadKind, TestQuad};

/// `M / (A k)`: lower bound for an annulus around a star of `k` tiles.
pub fn star_alpha_bound(m: f64, a_max: f64, k: usize) -> Result<f64> {
    if !(m > 0.0) {
        return Err(Error::NonPositive(format!("M = {m}")));
    }
    if !(a_max > 0.0) {
        return Err(Error::NonPositive(format!("A = {a_max}")));
    }
    if k == 0 {
        return Err(Error::NonPositive("k = 0".into()));
    }
    Ok(m / (a_max * k as f64))
}

/// `C / val(v)`: lower bound for an annulus containing the star of `v`.
pub fn vertex_modulus_bound(report: &ValenceReport, c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::NonPositive(format!("C = {c}")));
    }
    if report.valence == 0 {
        return Err(Error::NonPositive("valence 0".into()));
    }
    Ok(c / report.valence as f64)
}

/// Nested disjoint annuli and the lower bound their moduli give for the
/// annulus they fill.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerEstimate {
    pub moduli: Vec<f64>,
    pub bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<VertexId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stages: Vec<usize>,
}

/// Sums the moduli of rings extracted from `parent` (innermost first),
/// after checking that they are disjoint and each lies inside the next.
pub fn layer_bound(parent: &Complex2D, layers: &[(RingMarking, f64)]) -> Result<LayerEstimate> {
    if layers.is_empty() {
        return Err(Error::InvalidArgument("no annuli".into()));
    }
    let mut face_sets = Vec::with_capacity(layers.len());
    for (ring, _) in layers {
        if ring.parent_faces().is_empty() {
            return Err(Error::InvalidArgument("annuli must be extracted from the parent complex".into()));
        }
        face_sets.push(ring.parent_faces().iter().copied().collect::<BTreeSet<FaceId>>());
    }
    for i in 0..layers.len() {
        for j in i + 1..layers.len() {
            if !face_sets[i].is_disjoint(&face_sets[j]) {
                return Err(Error::Overlapping);
            }
        }
    }
    for j in 0..layers.len() - 1 {
        let (outer, _) = &layers[j + 1];
        let pv = outer.parent_vertices();
        let cycle = &outer.inner().vertices;
        let wall: BTreeSet<(VertexId, VertexId)> = (0..cycle.len())
            .map(|i| {
                let (a, b) = (pv[cycle[i]], pv[cycle[(i + 1) % cycle.len()]]);
                (a.min(b), a.max(b))
            })
            .collect();
        // faces reachable from annulus j without crossing the wall
        let mut seen: BTreeSet<FaceId> = face_sets[j].clone();
        let mut queue: VecDeque<FaceId> = seen.iter().copied().collect();
        while let Some(f) = queue.pop_front() {
            for &e in &parent.face(f).edges {
                let [a, b] = parent.edge(e);
                if wall.contains(&(a.min(b), a.max(b))) {
                    continue;
                }
                for &g in parent.edge_faces(e) {
                    if seen.insert(g) {
                        queue.push_back(g);
                    }
                }
            }
        }
        if !seen.is_disjoint(&face_sets[j + 1]) {
            return Err(Error::NotNested);
        }
    }
    let moduli: Vec<f64> = layers.iter().map(|(_, m)| *m).collect();
    Ok(LayerEstimate { bound: moduli.iter().sum(), moduli, center: None, stages: Vec::new() })
}

#[cfg(test)]
mod tests;
