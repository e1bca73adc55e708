//! Exhaustive modulus for small instances.
//!
//! Every minimal connecting set (or essential loop set) is enumerated.
//! By blocking duality, `min A` over weights giving every such set length
//! at least 1 equals `1 / min |y|²` over the convex hull of their indicator
//! vectors, with optimal weights `y / |y|²`. The nearest point of the hull
//! is found with Wolfe's algorithm, independently of the cutting-plane
//! solver.

use super::{area, MarkedRef, Mode, ModulusResult, Which, WeightFunction};
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_LIMIT: usize = 14;

pub fn brute_force_modulus<'a>(marked: impl Into<MarkedRef<'a>>, mode: Mode, which: Which) -> Result<ModulusResult> {
    brute_force_modulus_with_limit(marked, mode, which, DEFAULT_ORACLE_LIMIT)
}

pub fn brute_force_modulus_with_limit<'a>(
    marked: impl Into<MarkedRef<'a>>,
    mode: Mode,
    which: Which,
    limit: usize,
) -> Result<ModulusResult> {
    let marked = marked.into();
    if which == Which::Inf && matches!(marked, MarkedRef::Quad(_)) {
        return Err(Error::NotARing);
    }
    let g = marked.graph(mode)?;
    let n = g.n;
    if n > limit || n >= 31 {
        return Err(Error::TooLarge { carriers: n, limit });
    }
    let good = |inside: &[bool]| match which {
        Which::Sup => g.set_connects(inside),
        Which::Inf => g.set_has_essential_loop(inside),
    };
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut inside = vec![false; n];
    for mask in 1u32..(1 << n) {
        for (i, x) in inside.iter_mut().enumerate() {
            *x = mask >> i & 1 == 1;
        }
        if !good(&inside) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| inside[i]).collect();
        let minimal = members.iter().all(|&i| {
            inside[i] = false;
            let still = good(&inside);
            inside[i] = true;
            !still
        });
        if minimal {
            sets.push(members);
        }
    }
    if sets.is_empty() {
        return Err(Error::NoPath);
    }
    let points: Vec<Vec<f64>> = sets
        .iter()
        .map(|s| {
            let mut p = vec![0.0; n];
            for &i in s {
                p[i] = 1.0;
            }
            p
        })
        .collect();
    let (y, support, iterations) = min_norm_point(&points)?;
    let norm2: f64 = y.iter().map(|x| x * x).sum();
    let weights = WeightFunction { carrier: mode.carrier(), weights: y.iter().map(|x| x / norm2).collect() };
    let value = match which {
        Which::Sup => norm2,
        Which::Inf => 1.0 / norm2,
    };
    let shortest = sets.iter().map(|s| s.iter().map(|&i| weights.weights[i]).sum::<f64>()).fold(f64::INFINITY, f64::min);
    debug_assert!((area(&weights) * norm2 - 1.0).abs() < 1e-8);
    Ok(ModulusResult {
        value,
        which,
        mode,
        weights,
        certificate: support.into_iter().map(|i| sets[i].clone()).collect(),
        iterations,
        residual: shortest - 1.0,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Point of least norm in the convex hull of `points`: `(point, indices of
/// the supporting points, major iterations)`.
fn min_norm_point(points: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<usize>, usize)> {
    const EPS: f64 = 1e-12;
    let dim = points[0].len();
    let combine = |s: &[usize], lam: &[f64]| -> Vec<f64> {
        let mut x = vec![0.0; dim];
        for (&i, &l) in s.iter().zip(lam) {
            for (xk, pk) in x.iter_mut().zip(&points[i]) {
                *xk += l * pk;
            }
        }
        x
    };
    let first = (0..points.len())
        .min_by(|&a, &b| dot(&points[a], &points[a]).total_cmp(&dot(&points[b], &points[b])))
        .unwrap();
    let mut s = vec![first];
    let mut lam = vec![1.0];
    let mut x = points[first].clone();
    let scale = points.iter().map(|p| dot(p, p)).fold(0.0, f64::max);
    let mut major = 0;
    loop {
        major += 1;
        if major > 10_000 {
            return Err(Error::QpFailure("min-norm iteration limit".into()));
        }
        let j = (0..points.len()).min_by(|&a, &b| dot(&x, &points[a]).total_cmp(&dot(&x, &points[b]))).unwrap();
        if dot(&x, &x) - dot(&x, &points[j]) <= EPS * scale || s.contains(&j) {
            break;
        }
        s.push(j);
        lam.push(0.0);
        loop {
            let alpha = affine_min(points, &s)?;
            if alpha.iter().all(|&a| a > EPS) {
                lam = alpha;
                break;
            }
            let theta = (0..s.len())
                .filter(|&i| alpha[i] <= EPS)
                .map(|i| lam[i] / (lam[i] - alpha[i]))
                .fold(f64::INFINITY, f64::min)
                .clamp(0.0, 1.0);
            for (l, a) in lam.iter_mut().zip(&alpha) {
                *l += theta * (a - *l);
            }
            let keep: Vec<usize> = (0..s.len()).filter(|&i| lam[i] > EPS).collect();
            s = keep.iter().map(|&i| s[i]).collect();
            lam = keep.iter().map(|&i| lam[i]).collect();
            let total: f64 = lam.iter().sum();
            for l in &mut lam {
                *l /= total;
            }
        }
        x = combine(&s, &lam);
    }
    Ok((x, s, major))
}

/// Affine combination of the points in `s` of least norm.
fn affine_min(points: &[Vec<f64>], s: &[usize]) -> Result<Vec<f64>> {
    let k = s.len();
    // [PᵀP 1; 1ᵀ 0] [α; μ] = [0; 1]
    let mut m = vec![vec![0.0; k + 2]; k + 1];
    for i in 0..k {
        for j in 0..k {
            m[i][j] = dot(&points[s[i]], &points[s[j]]);
        }
        m[i][k] = 1.0;
        m[k][i] = 1.0;
    }
    m[k][k + 1] = 1.0;
    let x = gauss(m)?;
    Ok(x[..k].to_vec())
}

fn gauss(mut m: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        if m[piv][col].abs() < 1e-14 {
            return Err(Error::QpFailure("singular affine system".into()));
        }
        m.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                if f != 0.0 {
                    for c in col..=n {
                        m[r][c] -= f * m[col][c];
                    }
                }
            }
        }
    }
    Ok((0..n).map(|i| m[i][n] / m[i][i]).collect())
}
