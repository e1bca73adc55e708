use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{hyperbolic_angle, others};
use crate::complex::{Complex2D, VertexId};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Circle {
    pub c: Complex64,
    pub r: f64,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Image of `k` under the disk automorphism `z -> (z - a) / (1 - conj(a) z)`.
fn moved(k: Circle, a: Complex64) -> Circle {
    if a.norm() == 0.0 {
        return k;
    }
    let t = |z: Complex64| (z - a) / (1.0 - a.conj() * z);
    // the line through the centre and the pole maps to a diameter of the image
    let pole = 1.0 / a.conj();
    let d = k.c - pole;
    let d = d / d.norm();
    let (p, q) = (t(k.c + d * k.r), t(k.c - d * k.r));
    Circle { c: (p + q) / 2.0, r: (p - q).norm() / 2.0 }
}

/// Hyperbolic centre of a circle strictly inside the unit disk.
fn hyperbolic_center(k: Circle) -> Complex64 {
    let m = k.c.norm();
    if m == 0.0 {
        return k.c;
    }
    let t = (((m + k.r).atanh() + (m - k.r).atanh()) / 2.0).tanh();
    k.c * (t / m)
}

/// Euclidean radius of a circle at the origin, tangent to one of s-radius
/// `xu`, reaching out to hyperbolic distance `h_u + 2 h_w`.
fn outward(xu: f64, xw: f64, phi: f64) -> Circle {
    let lo = (1.0 - xu) / (1.0 + xu);
    let hi = (1.0 - xu * xw * xw) / (1.0 + xu * xw * xw);
    Circle { c: Complex64::from_polar((lo + hi) / 2.0, phi), r: (hi - lo) / 2.0 }
}

/// Radius `r` of a circle centred at distance `sqrt(r + r^2)` from 0 on the
/// bisector of two horocycles tangent at 0, with s-radius `x`.
fn between_horocycles(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0 / 3.0;
    }
    let h = -x.ln();
    let (mut lo, mut hi) = (0.0f64, 1.0 / 3.0);
    for _ in 0..200 {
        let r = (lo + hi) / 2.0;
        let s = (r + r * r).sqrt();
        if (s + r).atanh() - (s - r).atanh() < h {
            lo = r;
        } else {
            hi = r;
        }
    }
    (lo + hi) / 2.0
}

/// Places `w`, the third vertex of a triangle with cyclic order `(u, v, w)`.
fn place(k: &[Option<Circle>], x: &[f64], u: VertexId, v: VertexId, w: VertexId) -> Circle {
    let (cu, cv) = (k[u].unwrap(), k[v].unwrap());
    if x[u] > 0.0 || x[v] > 0.0 {
        let (centre, other, sign) = if x[u] > 0.0 { (u, v, 1.0) } else { (v, u, -1.0) };
        let a = hyperbolic_center(k[centre].unwrap());
        let o = moved(k[other].unwrap(), a);
        let alpha = hyperbolic_angle(x[centre], x[other], x[w]);
        let local = outward(x[centre], x[w], o.c.arg() + sign * alpha);
        return moved(local, -a);
    }
    let d = cv.c - cu.c;
    let p = cu.c + d * (cu.r / d.norm());
    let zeta = moved(cu, p).c;
    let zeta = zeta / zeta.norm();
    let r = between_horocycles(x[w]);
    let local = Circle { c: -I * zeta * (r + r * r).sqrt(), r };
    moved(local, -p)
}

/// Euclidean circles of the packing in the unit disk, placed breadth-first
/// across edges from the root (or from the first face if there is none).
pub(crate) fn layout(c: &Complex2D, x: &[f64], root: Option<VertexId>) -> Vec<Circle> {
    let mut k: Vec<Option<Circle>> = vec![None; c.n_vertices()];
    let first = match root {
        Some(v) => {
            let f = c.vertex_faces(v)[0];
            let (u, w) = others(c, f, v);
            k[v] = Some(Circle { c: Complex64::new(0.0, 0.0), r: (1.0 - x[v]) / (1.0 + x[v]) });
            k[u] = Some(outward(x[v], x[u], 0.0));
            k[w] = Some(place(&k, x, v, u, w));
            f
        }
        None => {
            let r = 2.0 * 3f64.sqrt() - 3.0;
            for (j, &v) in c.face(0).vertices.iter().enumerate() {
                let phi = PI / 2.0 + 2.0 * PI * j as f64 / 3.0;
                k[v] = Some(Circle { c: Complex64::from_polar(1.0 - r, phi), r });
            }
            0
        }
    };
    let mut done = vec![false; c.n_faces()];
    done[first] = true;
    let mut queue = VecDeque::from([first]);
    while let Some(f) = queue.pop_front() {
        for &e in &c.face(f).edges {
            for &g in c.edge_faces(e) {
                if done[g] {
                    continue;
                }
                done[g] = true;
                let vs = &c.face(g).vertices;
                if let Some(i) = (0..3).find(|&i| k[vs[i]].is_none()) {
                    let w = vs[i];
                    k[w] = Some(place(&k, x, vs[(i + 1) % 3], vs[(i + 2) % 3], w));
                }
                queue.push_back(g);
            }
        }
    }
    k.into_iter().map(|k| k.expect("disk is edge-connected")).collect()
}
