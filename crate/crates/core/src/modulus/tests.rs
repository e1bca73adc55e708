use super::*;
use crate::marking::extract_vertex_annulus;
use crate::rules::{builtin, subdivide_n, subdivide_quad};
use crate::shapes::{fan, from_polygons, split_square, square_ring, triangle_ring};

const TOL: f64 = 1e-7;

fn close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps * b.abs().max(1.0)
}

#[test]
fn area_examples() {
    assert_eq!(area(&WeightFunction::uniform(Carrier::Tiles, 3, 1.0)), 3.0);
    assert_eq!(area(&WeightFunction::uniform(Carrier::Tiles, 4, 0.0)), 0.0);
    assert_eq!(area(&WeightFunction::new(Carrier::Tiles, vec![3.0, 4.0]).unwrap()), 25.0);
    assert!(WeightFunction::new(Carrier::Tiles, vec![-1.0]).is_err());
}

#[test]
fn single_tile_quad() {
    let c = from_polygons(4, &[vec![0, 1, 2, 3]]).unwrap();
    let q = QuadMarking::from_ends(c, &[0], &[2]).unwrap();
    let w = WeightFunction::uniform(Carrier::Tiles, 1, 1.0);
    assert_eq!(height(&q, &w, Mode::TileSkinny).unwrap(), 1.0);
    assert!(close(modulus_sup(&q, Mode::TileSkinny, TOL).unwrap().value, 1.0, 1e-6));
    assert!(close(brute_force_modulus(&q, Mode::TileSkinny, Which::Sup).unwrap().value, 1.0, 1e-9));
}

#[test]
fn stacked_tiles() {
    let c = from_polygons(6, &[vec![0, 1, 2, 3], vec![3, 2, 4, 5]]).unwrap();
    let q = QuadMarking::from_ends(c, &[0], &[5]).unwrap();
    let w = WeightFunction::uniform(Carrier::Tiles, 2, 1.0);
    assert_eq!(height(&q, &w, Mode::TileSkinny).unwrap(), 2.0);
    let m = modulus_sup(&q, Mode::TileSkinny, TOL).unwrap();
    assert!(close(m.value, 2.0, 1e-6), "{}", m.value);
}

#[test]
fn carrier_mismatch() {
    let q = split_square();
    let w = WeightFunction::uniform(Carrier::Tiles, 2, 1.0);
    assert!(matches!(height(&q, &w, Mode::Vertex), Err(Error::CarrierMismatch)));
}

#[test]
fn square_ring_skinny() {
    let r = square_ring(4);
    let w = WeightFunction::uniform(Carrier::Tiles, 4, 1.0);
    assert_eq!(circumference(&r, &w, Mode::TileSkinny).unwrap(), 4.0);
    assert_eq!(circumference(&r, &w.scaled(2.5), Mode::TileSkinny).unwrap(), 10.0);
    for k in [3, 4, 7] {
        let r = square_ring(k);
        let inf = modulus_inf(&r, Mode::TileSkinny, TOL).unwrap();
        assert!(close(inf.value, 1.0 / k as f64, 1e-6), "{}", inf.value);
        assert!(inf.weights.weights.iter().all(|&x| close(x, 1.0 / k as f64, 1e-6)));
        let sup = modulus_sup(&r, Mode::TileSkinny, TOL).unwrap();
        assert!(close(sup.value, 1.0 / k as f64, 1e-6));
    }
}

#[test]
fn split_square_vertex_mode() {
    let q = split_square();
    assert!(close(modulus_sup(&q, Mode::Vertex, TOL).unwrap().value, 1.0, 1e-6));
    assert!(close(brute_force_modulus(&q, Mode::Vertex, Which::Sup).unwrap().value, 1.0, 1e-9));
    let (fat, skinny) = fat_skinny_gap(&q, TOL).unwrap();
    assert!(fat <= skinny + 1e-9);
}

#[test]
fn subdivided_square_has_modulus_one() {
    let rule = builtin("barycentric").unwrap();
    for level in 0..3 {
        let q = subdivide_quad(&split_square(), &rule, level).unwrap();
        let m = modulus_sup(&q, Mode::Vertex, TOL).unwrap();
        assert!(close(m.value, 1.0, 1e-6), "level {level}: {}", m.value);
    }
}

#[test]
fn certificates_are_tight() {
    let q = subdivide_quad(&split_square(), &builtin("hexagonal").unwrap(), 1).unwrap();
    let m = modulus_sup(&q, Mode::Vertex, TOL).unwrap();
    assert!(!m.certificate.is_empty());
    for p in &m.certificate {
        let len: f64 = p.iter().map(|&i| m.weights.weights[i]).sum();
        assert!((len - 1.0).abs() < 1e-6, "{len}");
    }
    assert!(m.residual >= -TOL);
}

#[test]
fn scale_invariance() {
    let r = triangle_ring(5);
    let w = WeightFunction::new(Carrier::Vertices, (0..10).map(|i| 0.3 + i as f64 * 0.1).collect()).unwrap();
    let c = 3.7;
    let h = height(&r, &w, Mode::Vertex).unwrap();
    let circ = circumference(&r, &w, Mode::Vertex).unwrap();
    let ws = w.scaled(c);
    assert!((height(&r, &ws, Mode::Vertex).unwrap() - c * h).abs() < 1e-12);
    assert!((circumference(&r, &ws, Mode::Vertex).unwrap() - c * circ).abs() < 1e-12);
    assert!((area(&ws) - c * c * area(&w)).abs() < 1e-12);
}

#[test]
fn ring_duality_in_vertex_mode() {
    let rule = builtin("barycentric").unwrap();
    for n in [3, 4, 5] {
        let c = subdivide_n(&fan(n), &rule, 1).unwrap();
        let ring = extract_vertex_annulus(&c, 0, 1, 2).unwrap();
        let sup = modulus_sup(&ring, Mode::Vertex, TOL).unwrap().value;
        let inf = modulus_inf(&ring, Mode::Vertex, TOL).unwrap().value;
        assert!(close(sup, inf, 1e-6), "n = {n}: {sup} vs {inf}");
        assert!(close(inf, 1.0 / n as f64, 1e-6), "n = {n}: {inf}");
    }
}

#[test]
fn oracle_agreement_small() {
    for r in [triangle_ring(3), triangle_ring(4), square_ring(5)] {
        for mode in [Mode::Vertex, Mode::TileSkinny, Mode::TileFat] {
            for which in [Which::Sup, Which::Inf] {
                let Ok(b) = brute_force_modulus(&r, mode, which) else { continue };
                let m = modulus(&r, mode, which, TOL).unwrap();
                assert!(close(m.value, b.value, 1e-6), "{mode} {which:?}: {} vs {}", m.value, b.value);
            }
        }
    }
}

#[test]
fn oracle_limits() {
    let big = triangle_ring(8);
    assert!(matches!(
        brute_force_modulus(&big, Mode::TileSkinny, Which::Sup),
        Err(Error::TooLarge { carriers: 16, limit: 14 })
    ));
    assert!(matches!(brute_force_modulus(&split_square(), Mode::Vertex, Which::Inf), Err(Error::NotARing)));
}
