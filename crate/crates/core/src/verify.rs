//! Built-in check suites: published moduli, solver against brute force, and
//! packing residuals.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::conformal::{axiom_probe, criterion_123, layer_bound, star_alpha_bound, Axiom, AxiomParams, AxiomTarget};
use crate::error::{Error, Result};
use crate::marking::extract_vertex_annulus;
use crate::modulus::{
    brute_force_modulus, modulus, modulus_inf, modulus_sup, MarkedRef, Mode, Which, DEFAULT_ORACLE_LIMIT, DEFAULT_TOL,
};
use crate::packing::{pack, render_svg, ColorBy};
use crate::random::{random_quad, random_ring};
use crate::rules::{builtin, subdivide_n, subdivide_quad};
use crate::shapes::{barycentric_ring, fan, split_square, triangle};

pub const SEED_VAR: &str = "SUBDIV_SEED";

/// Seed from `SUBDIV_SEED`, or 0.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Paper,
    Oracle,
    Packing,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Suite::Paper),
            "oracle" => Ok(Suite::Oracle),
            "packing" => Ok(Suite::Packing),
            _ => Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Paper => "paper",
            Suite::Oracle => "oracle",
            Suite::Packing => "packing",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn run(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check { name: name.into(), passed, detail }
}

pub fn verify_suite(suite: Suite, seed: u64) -> SuiteReport {
    let checks = match suite {
        Suite::Paper => paper(seed),
        Suite::Oracle => oracle(seed),
        Suite::Packing => packing(),
    };
    SuiteReport { suite, seed, passed: checks.iter().all(|c| c.passed), checks }
}

fn paper(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(run("square-modulus-1", || {
        let rule = builtin("barycentric")?;
        let mut values = Vec::new();
        let mut ok = true;
        for n in 0..=3 {
            let t = Instant::now();
            let q = subdivide_quad(&split_square(), &rule, n)?;
            let m = modulus_sup(&q, Mode::Vertex, DEFAULT_TOL)?.value;
            ok &= (m - 1.0).abs() <= 1e-6 && t.elapsed().as_secs_f64() < 10.0;
            values.push(m);
        }
        Ok((ok, format!("{values:?}")))
    }));
    out.push(run("annulus-1/n", || {
        let mut ok = true;
        let mut detail = Vec::new();
        for n in [4, 6, 8] {
            let r = barycentric_ring(n);
            let inf = modulus_inf(&r, Mode::Vertex, DEFAULT_TOL)?.value;
            let sup = modulus_sup(&r, Mode::Vertex, DEFAULT_TOL)?.value;
            let want = 1.0 / n as f64;
            ok &= (inf - want).abs() <= 1e-6 && (sup - want).abs() <= 1e-6;
            detail.push(format!("n={n}: {inf} {sup}"));
        }
        Ok((ok, detail.join("; ")))
    }));
    out.push(run("geometric-decay", || {
        let r = axiom_probe(&builtin("barycentric")?, &fan(6), &AxiomTarget::Vertex(0), Axiom::Two, 3, AxiomParams::default())?;
        let ok = r.moduli.iter().enumerate().all(|(k, m)| (m - 1.0 / (6.0 * 2f64.powi(k as i32))).abs() <= 1e-5)
            && r.layered.last().is_some_and(|&s| s <= 2.0 / 6.0 + 1e-5);
        Ok((ok, format!("{:?}", r.moduli)))
    }));
    out.push(run("hexagonal-lower-bound", || {
        let r = axiom_probe(&builtin("hexagonal")?, &fan(6), &AxiomTarget::Vertex(0), Axiom::Zero, 3, AxiomParams::default())?;
        let max = r.moduli.iter().copied().fold(0.0, f64::max);
        let ok = r.infimum >= 1.0 / 12.0 - 1e-6 && max - r.infimum <= 1e-6;
        Ok((ok, format!("{:?}", r.moduli)))
    }));
    out.push(run("symmetry-duality", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..25 {
            let r = random_ring(&mut rng, 14);
            let sup = modulus_sup(&r, Mode::Vertex, DEFAULT_TOL)?.value;
            let inf = modulus_inf(&r, Mode::Vertex, DEFAULT_TOL)?.value;
            worst = worst.max((sup - inf).abs());
        }
        Ok((worst <= 1e-6, format!("max |M_sup - m_inf| = {worst:e}")))
    }));
    out.push(run("layer-theorem", || {
        let mut worst = f64::INFINITY;
        for (rule, stages) in [("hexagonal", 3), ("barycentric", 3)] {
            for k in 3..=7 {
                let c = subdivide_n(&fan(k), &builtin(rule)?, stages)?;
                let m = |a, b| -> Result<_> {
                    let r = extract_vertex_annulus(&c, 0, a, b)?;
                    let v = modulus_inf(&r, Mode::Vertex, DEFAULT_TOL)?.value;
                    Ok((r, v))
                };
                let bound = layer_bound(&c, &[m(1, 2)?, m(3, 4)?])?.bound;
                worst = worst.min(m(1, 4)?.1 - bound);
            }
        }
        Ok((worst >= -1e-6, format!("min union - sum = {worst:e}")))
    }));
    out.push(run("criterion-123", || {
        let rule = builtin("hexagonal")?;
        let rep = criterion_123(&rule, 2, Mode::Vertex, DEFAULT_TOL)?;
        let mut ok = rep.m > 0.0;
        for k in 4..=8 {
            let c = subdivide_n(&fan(k), &rule, 2)?;
            let measured = modulus_inf(&extract_vertex_annulus(&c, 0, 1, 2)?, Mode::Vertex, DEFAULT_TOL)?.value;
            ok &= star_alpha_bound(rep.m, rep.a_max, k)? <= measured;
        }
        Ok((ok, format!("M = {}, A = {}", rep.m, rep.a_max)))
    }));
    out.push(run("axiom-2-probe", || {
        let bary = builtin("barycentric")?;
        let mut ok = true;
        let mut detail = Vec::new();
        for n in [4, 6] {
            let r = axiom_probe(&bary, &fan(n), &AxiomTarget::Vertex(0), Axiom::Two, 4, AxiomParams::default())?;
            ok &= r.layered.iter().all(|&s| s <= 2.0 / n as f64 + 1e-5);
            detail.push(format!("barycentric n={n}: {:?}", r.layered));
        }
        let r = axiom_probe(&builtin("hexagonal")?, &fan(6), &AxiomTarget::Vertex(0), Axiom::Two, 4, AxiomParams::default())?;
        ok &= r.moduli.iter().all(|&m| m >= 1.0 / 12.0 - 1e-6);
        detail.push(format!("hexagonal: {:?}", r.layered));
        Ok((ok, detail.join("; ")))
    }));
    out
}

fn carriers(c: &crate::complex::Complex2D, mode: Mode) -> usize {
    match mode {
        Mode::Vertex => c.n_vertices(),
        _ => c.n_faces(),
    }
}

fn oracle(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let modes = [Mode::Vertex, Mode::TileSkinny, Mode::TileFat];
    for i in 0..100 {
        let mode = modes[i % 3];
        let name = format!("random-{i:03}");
        if i % 2 == 0 {
            let which = if i % 4 == 0 { Which::Sup } else { Which::Inf };
            let r = loop {
                let r = random_ring(&mut rng, 14);
                if carriers(r.complex(), mode) <= DEFAULT_ORACLE_LIMIT {
                    break r;
                }
            };
            out.push(run(&name, || compare(&r, mode, which)));
        } else {
            let q = loop {
                let q = random_quad(&mut rng, 14);
                if carriers(q.complex(), mode) <= DEFAULT_ORACLE_LIMIT {
                    break q;
                }
            };
            out.push(run(&name, || compare(&q, mode, Which::Sup)));
        }
    }
    out
}

fn compare<'a>(m: impl Into<MarkedRef<'a>> + Copy, mode: Mode, which: Which) -> Result<(bool, String)> {
    let exact = brute_force_modulus(m, mode, which)?.value;
    let solved = modulus(m, mode, which, DEFAULT_TOL)?.value;
    Ok(((solved - exact).abs() <= 1e-6, format!("{mode} {which:?}: {solved} vs {exact}")))
}

fn packing() -> Vec<Check> {
    [("barycentric", 3), ("hexagonal", 4)]
        .into_iter()
        .map(|(rule, n)| {
            run(&format!("{rule}-stage-{n}"), || {
                let c = subdivide_n(&triangle(), &builtin(rule)?, n)?;
                let p = pack(&c, 1e-10)?;
                let (res, tan) = (p.angle_residual(), p.tangency_error());
                let same = render_svg(&p, &ColorBy::Type) == render_svg(&pack(&c, 1e-10)?, &ColorBy::Type);
                Ok((res < 1e-8 && tan < 1e-6 && same, format!("residual {res:e}, tangency {tan:e}, svg stable {same}")))
            })
        })
        .collect()
}
