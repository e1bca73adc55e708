use serde::{Deserialize, Serialize};

use super::{subdivide_detailed, SubdivisionRule};
use crate::complex::{Complex2D, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    Bounded,
    Linear,
    Exponential,
}

/// Valence sequence of a vertex under repeated subdivision and the model
/// it matches.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthClass {
    pub kind: Growth,
    /// `valences[i]` is the valence after `i` subdivisions.
    pub valences: Vec<usize>,
    /// Per-stage ratio, when the sequence is geometric.
    pub multiplier: Option<u64>,
    /// Per-stage difference, when the sequence is affine.
    pub addend: Option<i64>,
}

/// Tracks the valence of interior vertex `v` over `stages` stages, the
/// first being `c` itself.
pub fn classify_growth(rule: &SubdivisionRule, c: &Complex2D, v: VertexId, stages: usize) -> Result<GrowthClass> {
    if stages < 4 {
        return Err(Error::InvalidArgument(format!("need at least 4 stages, got {stages}")));
    }
    if v >= c.n_vertices() {
        return Err(Error::UnknownVertex(v));
    }
    if !c.is_interior_vertex(v) {
        return Err(Error::NotInterior(v));
    }
    let mut valences = vec![c.valence(v)];
    let mut cur = c.clone();
    let mut v = v;
    while valences.len() < stages {
        // the valence only depends on the closed star
        let star = cur.sub_complex(&cur.star_faces(v, 1)?)?;
        v = star.vertex_map.binary_search(&v).expect("center is in its star");
        cur = subdivide_detailed(&star.complex, rule)?.complex;
        valences.push(cur.valence(v));
    }
    Ok(fit(valences))
}

fn fit(valences: Vec<usize>) -> GrowthClass {
    let vals: Vec<i64> = valences.iter().map(|&x| x as i64).collect();
    let d = vals[1] - vals[0];
    let affine = vals.windows(2).all(|w| w[1] - w[0] == d);
    let (kind, multiplier, addend) = if affine && d == 0 {
        (Growth::Bounded, Some(1), Some(0))
    } else if affine {
        (Growth::Linear, None, Some(d))
    } else if let Some(m) = geometric(&vals) {
        (Growth::Exponential, Some(m), None)
    } else if vals.windows(2).all(|w| w[1] > w[0]) && vals.windows(3).all(|w| w[2] - w[1] > w[1] - w[0]) {
        (Growth::Exponential, None, None)
    } else {
        (Growth::Linear, None, None)
    };
    GrowthClass { kind, valences, multiplier, addend }
}

fn geometric(vals: &[i64]) -> Option<u64> {
    if vals[0] <= 0 || vals[1] % vals[0] != 0 {
        return None;
    }
    let m = vals[1] / vals[0];
    (m > 1 && vals.windows(2).all(|w| w[1] == m * w[0])).then_some(m as u64)
}
