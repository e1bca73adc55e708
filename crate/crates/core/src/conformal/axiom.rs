use serde::{Deserialize, Serialize};

use crate::complex::{Complex2D, VertexId};
use crate::error::{Error, Result};
use crate::marking::{extract_vertex_annulus, RingMarking};
use crate::modulus::{modulus, Mode, Which, DEFAULT_TOL};
use crate::rules::{subdivide, subdivide_ring, SubdivisionRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    /// Moduli bounded away from 0.
    #[serde(rename = "0")]
    Zero,
    /// Moduli within a bounded ratio of each other.
    #[serde(rename = "1")]
    One,
    /// Layered moduli around a point grow without bound.
    #[serde(rename = "2")]
    Two,
}

#[derive(Clone, Debug)]
pub enum AxiomTarget {
    /// The ring between the first and second stars of a vertex, taken
    /// afresh at every stage.
    Vertex(VertexId),
    /// A fixed ring, subdivided along with the complex.
    Ring(RingMarking),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxiomParams {
    pub mode: Mode,
    pub which: Which,
    pub tol: f64,
    /// Level the layered bound should exceed (Axiom 2).
    pub threshold: Option<f64>,
}

impl Default for AxiomParams {
    fn default() -> Self {
        AxiomParams { mode: Mode::Vertex, which: Which::Inf, tol: DEFAULT_TOL, threshold: None }
    }
}

/// Per-stage moduli and the verdicts derived from them. An empirical
/// probe over the stages examined, not a proof.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub mode: Mode,
    pub which: Which,
    pub moduli: Vec<f64>,
    /// Least modulus seen.
    pub infimum: f64,
    /// `r` and `K` with every modulus in `[r, K r]`.
    pub r: f64,
    pub k: f64,
    /// Running sums of the moduli.
    pub layered: Vec<f64>,
    pub threshold: Option<f64>,
    /// First stage whose layered sum exceeds the threshold.
    pub threshold_stage: Option<usize>,
}

impl AxiomReport {
    pub fn from_moduli(axiom: Axiom, mode: Mode, which: Which, moduli: Vec<f64>, threshold: Option<f64>) -> Self {
        let infimum = moduli.iter().copied().fold(f64::INFINITY, f64::min);
        let max = moduli.iter().copied().fold(0.0, f64::max);
        let layered: Vec<f64> = moduli
            .iter()
            .scan(0.0, |s, m| {
                *s += m;
                Some(*s)
            })
            .collect();
        let threshold_stage = threshold.and_then(|t| layered.iter().position(|&s| s > t));
        AxiomReport {
            axiom,
            mode,
            which,
            infimum,
            r: infimum,
            k: if infimum > 0.0 { max / infimum } else { f64::INFINITY },
            layered,
            threshold,
            threshold_stage,
            moduli,
        }
    }
}

/// Moduli of the target over `stages` stages of subdivision of `c`.
///
/// For a vertex, stage `j` is the ring between the first and second stars
/// after `j + 1` subdivisions; these rings are disjoint and nested, so
/// their running sums bound the moduli of the rings they fill.
pub fn axiom_probe(
    rule: &SubdivisionRule,
    c: &Complex2D,
    target: &AxiomTarget,
    axiom: Axiom,
    stages: usize,
    params: AxiomParams,
) -> Result<AxiomReport> {
    if stages < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 stages, got {stages}")));
    }
    let mut moduli = Vec::with_capacity(stages);
    match target {
        AxiomTarget::Vertex(v) => {
            let mut v = *v;
            if v >= c.n_vertices() {
                return Err(Error::UnknownVertex(v));
            }
            if !c.is_interior_vertex(v) {
                return Err(Error::NotInterior(v));
            }
            let mut cur = c.clone();
            for _ in 0..stages {
                // the next second star lies inside this one
                let local = cur.sub_complex(&cur.star_faces(v, 2)?)?;
                v = local.vertex_map.binary_search(&v).expect("center is in its star");
                cur = subdivide(&local.complex, rule)?;
                let ring = extract_vertex_annulus(&cur, v, 1, 2)?;
                moduli.push(modulus(&ring, params.mode, params.which, params.tol)?.value);
            }
        }
        AxiomTarget::Ring(ring) => {
            if axiom == Axiom::Two {
                return Err(Error::InvalidArgument("the layering probe needs a vertex target".into()));
            }
            let mut r = ring.clone();
            for j in 0..stages {
                if j > 0 {
                    r = subdivide_ring(&r, rule, 1)?;
                }
                moduli.push(modulus(&r, params.mode, params.which, params.tol)?.value);
            }
        }
    }
    Ok(AxiomReport::from_moduli(axiom, params.mode, params.which, moduli, params.threshold))
}
