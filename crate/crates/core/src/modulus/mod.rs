//! Combinatorial moduli of rings and quadrilaterals.
//!
//! A weight function puts a nonnegative weight on every carrier (tile or
//! vertex). The height `H` is the least weight of a path joining the two
//! marked sides, the circumference `C` the least weight of a loop around a
//! ring, and the area `A` the sum of squared weights. Then
//! `M_sup = sup H²/A` and `m_inf = inf A/C²`. Both are computed as
//! `min A` over weights whose every path (or loop) has length at least 1,
//! by cutting planes: solve the program over the paths found so far, look
//! for a shorter path, add it, repeat.

mod graph;
mod oracle;
mod qp;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::marking::{Marked, QuadMarking, RingMarking};
use graph::{set_cost, CarrierGraph};
use qp::LeastDistance;

pub use oracle::{brute_force_modulus, brute_force_modulus_with_limit, DEFAULT_ORACLE_LIMIT};

pub const DEFAULT_TOL: f64 = 1e-7;
pub const MAX_ITERATIONS: usize = 10_000;
/// Most violated paths added per round.
const BATCH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Tiles, with paths through tiles sharing a vertex.
    #[serde(rename = "tile-fat")]
    TileFat,
    /// Tiles, with paths through tiles sharing an edge.
    #[serde(rename = "tile-skinny")]
    TileSkinny,
    /// Vertices, with edge paths.
    #[serde(rename = "vertex")]
    Vertex,
}

impl Mode {
    pub fn carrier(self) -> Carrier {
        match self {
            Mode::Vertex => Carrier::Vertices,
            _ => Carrier::Tiles,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::TileFat => "tile-fat",
            Mode::TileSkinny => "tile-skinny",
            Mode::Vertex => "vertex",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fat" | "tile-fat" => Ok(Mode::TileFat),
            "skinny" | "tile-skinny" => Ok(Mode::TileSkinny),
            "vertex" => Ok(Mode::Vertex),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Carrier {
    Tiles,
    Vertices,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Sup,
    Inf,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightFunction {
    pub carrier: Carrier,
    pub weights: Vec<f64>,
}

impl WeightFunction {
    pub fn new(carrier: Carrier, weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidArgument(format!("weight {w} is not a nonnegative number")));
        }
        Ok(WeightFunction { carrier, weights })
    }

    pub fn uniform(carrier: Carrier, n: usize, w: f64) -> Self {
        WeightFunction { carrier, weights: vec![w; n] }
    }

    pub fn scaled(&self, c: f64) -> Self {
        WeightFunction { carrier: self.carrier, weights: self.weights.iter().map(|w| w * c).collect() }
    }
}

/// A marked complex borrowed for a modulus computation.
#[derive(Clone, Copy, Debug)]
pub enum MarkedRef<'a> {
    Ring(&'a RingMarking),
    Quad(&'a QuadMarking),
}

impl<'a> From<&'a RingMarking> for MarkedRef<'a> {
    fn from(r: &'a RingMarking) -> Self {
        MarkedRef::Ring(r)
    }
}

impl<'a> From<&'a QuadMarking> for MarkedRef<'a> {
    fn from(q: &'a QuadMarking) -> Self {
        MarkedRef::Quad(q)
    }
}

impl<'a> From<&'a Marked> for MarkedRef<'a> {
    fn from(m: &'a Marked) -> Self {
        match m {
            Marked::Ring(r) => MarkedRef::Ring(r),
            Marked::Quad(q) => MarkedRef::Quad(q),
        }
    }
}

impl MarkedRef<'_> {
    fn graph(self, mode: Mode) -> Result<CarrierGraph> {
        match self {
            MarkedRef::Ring(r) => CarrierGraph::for_ring(r, mode),
            MarkedRef::Quad(q) => Ok(CarrierGraph::for_quad(q, mode)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModulusResult {
    pub value: f64,
    pub which: Which,
    pub mode: Mode,
    pub weights: WeightFunction,
    /// Paths (or loops) that are tight at the optimum, as sorted carrier ids.
    pub certificate: Vec<Vec<usize>>,
    pub iterations: usize,
    /// Length of the shortest path (or loop) minus 1.
    pub residual: f64,
}

impl ModulusResult {
    pub fn to_json_value(&self) -> serde_json::Value {
        let weights: serde_json::Map<String, serde_json::Value> =
            self.weights.weights.iter().enumerate().map(|(i, w)| (i.to_string(), (*w).into())).collect();
        serde_json::json!({
            "value": self.value,
            "which": self.which,
            "mode": self.mode,
            "carrier": self.weights.carrier,
            "weights": weights,
            "certificate": self.certificate,
            "iterations": self.iterations,
            "residual": self.residual,
        })
    }
}

pub fn area(w: &WeightFunction) -> f64 {
    w.weights.iter().map(|x| x * x).sum()
}

fn check_carrier(g: &CarrierGraph, w: &WeightFunction, mode: Mode) -> Result<()> {
    if w.carrier != mode.carrier() || w.weights.len() != g.n {
        return Err(Error::CarrierMismatch);
    }
    Ok(())
}

/// Least weight of a path joining the marked sides: inner to outer for a
/// ring, top to bottom for a quadrilateral.
pub fn height<'a>(marked: impl Into<MarkedRef<'a>>, w: &WeightFunction, mode: Mode) -> Result<f64> {
    let g = marked.into().graph(mode)?;
    check_carrier(&g, w, mode)?;
    Ok(g.shortest_connecting(&w.weights)?.0)
}

/// Least weight of a loop going around a ring.
pub fn circumference(ring: &RingMarking, w: &WeightFunction, mode: Mode) -> Result<f64> {
    let g = CarrierGraph::for_ring(ring, mode)?;
    check_carrier(&g, w, mode)?;
    Ok(g.shortest_essential(&w.weights)?.0)
}

/// `M_sup`, with `H` normalized to 1.
pub fn modulus_sup<'a>(marked: impl Into<MarkedRef<'a>>, mode: Mode, tol: f64) -> Result<ModulusResult> {
    let g = marked.into().graph(mode)?;
    let sol = cutting_planes(&g, tol, |w| {
        let tree = g.shortest_paths(w);
        let mut found: Vec<(f64, Vec<usize>)> = Vec::new();
        for t in (0..g.n).filter(|&t| g.targets[t] && tree.dist[t].is_finite()) {
            let p = tree.path_to(t);
            found.push((set_cost(w, &p), p));
        }
        if found.is_empty() {
            return Err(Error::NoPath);
        }
        Ok(found)
    })?;
    let h = 1.0 + sol.residual;
    let a = area(&WeightFunction { carrier: mode.carrier(), weights: sol.weights.clone() });
    Ok(sol.into_result(h * h / a, Which::Sup, mode))
}

/// `m_inf`, with `C` normalized to 1.
pub fn modulus_inf(ring: &RingMarking, mode: Mode, tol: f64) -> Result<ModulusResult> {
    let g = CarrierGraph::for_ring(ring, mode)?;
    let starts = g.loop_starts();
    let sol = cutting_planes(&g, tol, |w| {
        let mut found: Vec<(f64, Vec<usize>)> = Vec::new();
        for &s in &starts {
            if let Some(l) = g.essential_loop_from(w, s) {
                found.push((set_cost(w, &l), l));
            }
        }
        if found.is_empty() {
            return Err(Error::NoPath);
        }
        Ok(found)
    })?;
    let c = 1.0 + sol.residual;
    let a = area(&WeightFunction { carrier: mode.carrier(), weights: sol.weights.clone() });
    Ok(sol.into_result(a / (c * c), Which::Inf, mode))
}

/// `M_sup` or `m_inf` by whichever applies.
pub fn modulus<'a>(marked: impl Into<MarkedRef<'a>>, mode: Mode, which: Which, tol: f64) -> Result<ModulusResult> {
    let marked = marked.into();
    match (which, marked) {
        (Which::Sup, m) => modulus_sup(m, mode, tol),
        (Which::Inf, MarkedRef::Ring(r)) => modulus_inf(r, mode, tol),
        (Which::Inf, MarkedRef::Quad(_)) => Err(Error::NotARing),
    }
}

/// `(M_sup` with fat paths, `M_sup` with skinny paths`)`.
pub fn fat_skinny_gap(quad: &QuadMarking, tol: f64) -> Result<(f64, f64)> {
    Ok((modulus_sup(quad, Mode::TileFat, tol)?.value, modulus_sup(quad, Mode::TileSkinny, tol)?.value))
}

struct Solution {
    weights: Vec<f64>,
    certificate: Vec<Vec<usize>>,
    iterations: usize,
    residual: f64,
}

impl Solution {
    fn into_result(self, value: f64, which: Which, mode: Mode) -> ModulusResult {
        ModulusResult {
            value,
            which,
            mode,
            weights: WeightFunction { carrier: mode.carrier(), weights: self.weights },
            certificate: self.certificate,
            iterations: self.iterations,
            residual: self.residual,
        }
    }
}

/// Minimizes the area subject to every separated set having weight at
/// least 1. `separate` returns candidate sets with their current weights;
/// the lightest one must be the global minimum.
fn cutting_planes<F>(g: &CarrierGraph, tol: f64, mut separate: F) -> Result<Solution>
where
    F: FnMut(&[f64]) -> Result<Vec<(f64, Vec<usize>)>>,
{
    let mut qp = LeastDistance::new(g.n);
    let mut w = vec![0.0; g.n];
    let mut iterations = 0;
    let mut last_area = 0.0;
    loop {
        let mut found = separate(&w)?;
        found.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let shortest = found[0].0;
        if shortest >= 1.0 - tol {
            let u = qp.multipliers();
            let top = u.iter().copied().fold(0.0, f64::max);
            let certificate =
                qp.sets().iter().zip(u).filter(|(_, &x)| x > 1e-9 * top).map(|(s, _)| s.clone()).collect();
            return Ok(Solution { weights: w, certificate, iterations, residual: shortest - 1.0 });
        }
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::IterationLimit(MAX_ITERATIONS));
        }
        let mut added = 0;
        for (len, set) in found {
            if len >= 1.0 - tol || added == BATCH {
                break;
            }
            if qp.push(set) {
                added += 1;
            }
        }
        if added == 0 {
            return Err(Error::QpFailure("no progress on violated constraint".into()));
        }
        w = qp.solve()?;
        let a: f64 = w.iter().map(|x| x * x).sum();
        debug_assert!(a >= last_area * (1.0 - 1e-9), "area decreased: {last_area} -> {a}");
        last_area = a;
    }
}

#[cfg(test)]
mod tests;
