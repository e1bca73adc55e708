//! Random small markings for randomized checks.

use rand::Rng;

use crate::complex::VertexId;
use crate::marking::{QuadMarking, RingMarking};
use crate::shapes::{from_polygons, ring_from_polygons};

/// Triangles filling the band between two vertex sequences, advancing
/// along `a` or `b` as `steps` says (`true` advances `a`).
fn zip(a: &[VertexId], b: &[VertexId], steps: &[bool]) -> Vec<Vec<VertexId>> {
    let (mut i, mut j) = (0, 0);
    let mut polys = Vec::with_capacity(steps.len());
    for &s in steps {
        if s {
            polys.push(vec![a[i], a[i + 1], b[j]]);
            i += 1;
        } else {
            polys.push(vec![a[i], b[j + 1], b[j]]);
            j += 1;
        }
    }
    polys
}

fn shuffled_steps(rng: &mut impl Rng, n_a: usize, n_b: usize) -> Vec<bool> {
    let mut steps: Vec<bool> = (0..n_a).map(|_| true).chain((0..n_b).map(|_| false)).collect();
    for i in (1..steps.len()).rev() {
        steps.swap(i, rng.gen_range(0..=i));
    }
    steps
}

/// Triangulated ring of one or two layers of random band triangulations,
/// with at most `max_vertices` vertices (at least 6).
pub fn random_ring(rng: &mut impl Rng, max_vertices: usize) -> RingMarking {
    assert!(max_vertices >= 6);
    loop {
        if let Some(r) = try_ring(rng, max_vertices) {
            return r;
        }
    }
}

/// `None` when the bands fold back onto an edge already used.
fn try_ring(rng: &mut impl Rng, max_vertices: usize) -> Option<RingMarking> {
    let layers = if max_vertices >= 9 { rng.gen_range(1..=2) } else { 1 };
    let mut sizes = Vec::new();
    let mut left = max_vertices;
    for l in 0..=layers {
        let room = left - 3 * (layers - l);
        let n = rng.gen_range(3..=room.min(6));
        sizes.push(n);
        left -= n;
    }
    let mut polys = Vec::new();
    let mut offset = 0;
    for w in sizes.windows(2) {
        let (na, nb) = (w[0], w[1]);
        let a: Vec<VertexId> = (0..=na).map(|i| offset + i % na).collect();
        let b: Vec<VertexId> = (0..=nb).map(|i| offset + na + i % nb).collect();
        polys.extend(zip(&a, &b, &shuffled_steps(rng, na, nb)));
        offset += na;
    }
    let n = offset + sizes[sizes.len() - 1];
    from_polygons(n, &polys).ok()?;
    Some(ring_from_polygons(n, &polys, sizes[0]))
}

/// Triangulated strip between two paths with `top` and `bottom` at its two
/// ends, with at most `max_vertices` vertices (at least 4).
pub fn random_quad(rng: &mut impl Rng, max_vertices: usize) -> QuadMarking {
    assert!(max_vertices >= 4);
    let p = rng.gen_range(2..=max_vertices - 2);
    let q = rng.gen_range(2..=max_vertices - p);
    let a: Vec<VertexId> = (0..p).collect();
    let b: Vec<VertexId> = (p..p + q).collect();
    let polys = zip(&a, &b, &shuffled_steps(rng, p - 1, q - 1));
    let c = from_polygons(p + q, &polys).expect("strip is a disk");
    let edge = |x: VertexId, y: VertexId| c.edges().iter().position(|e| e.contains(&x) && e.contains(&y)).unwrap();
    let (top, bottom) = (edge(0, p), edge(p - 1, p + q - 1));
    QuadMarking::from_ends(c, &[top], &[bottom]).expect("strip is a quadrilateral")
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::modulus::{brute_force_modulus, modulus, Mode, Which, DEFAULT_TOL};

    #[test]
    fn generated_markings_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..200 {
            let r = random_ring(&mut rng, 14);
            assert!(r.complex().n_vertices() <= 14);
            assert_eq!(r.complex().euler_characteristic(), 0);
            let q = random_quad(&mut rng, 14);
            assert!(q.complex().n_vertices() <= 14);
        }
    }

    #[test]
    fn solver_matches_oracle_on_random_markings() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst: f64 = 0.0;
        for i in 0..40 {
            let mode = [Mode::Vertex, Mode::TileSkinny, Mode::TileFat][i % 3];
            let which = if i % 2 == 0 { Which::Sup } else { Which::Inf };
            let r = random_ring(&mut rng, 12);
            if let Ok(b) = brute_force_modulus(&r, mode, which) {
                let m = modulus(&r, mode, which, DEFAULT_TOL).unwrap();
                worst = worst.max((m.value - b.value).abs());
            }
            let q = random_quad(&mut rng, 12);
            if let Ok(b) = brute_force_modulus(&q, mode, Which::Sup) {
                let m = modulus(&q, mode, Which::Sup, DEFAULT_TOL).unwrap();
                worst = worst.max((m.value - b.value).abs());
            }
        }
        assert!(worst < 1e-6, "{worst}");
    }
}
