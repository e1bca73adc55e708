use super::*;
use crate::rules::{builtin, subdivide_n};
use crate::shapes::{fan, octahedron, square_ring, triangle};

fn stage(rule: &str, n: usize) -> Complex2D {
    subdivide_n(&triangle(), &builtin(rule).unwrap(), n).unwrap()
}

fn packing_with_radii(c: Complex2D, r: f64) -> Packing {
    let n = c.n_vertices();
    Packing { complex: c, s_radii: vec![0.5; n], radii: vec![r; n], centers: vec![[0.0; 2]; n], root: None, sweeps: 0 }
}

#[test]
fn equal_radii_angle_sums() {
    let p = packing_with_radii(fan(6), 0.1);
    assert!((angle_sum(&p, 0).unwrap() - 2.0 * PI).abs() < 1e-12);
    let p = packing_with_radii(fan(4), 0.1);
    assert!((angle_sum(&p, 0).unwrap() - 4.0 * PI / 3.0).abs() < 1e-12);
    assert!(matches!(angle_sum(&p, 1), Err(Error::BoundaryVertex(1))));
}

#[test]
fn single_triangle() {
    let p = pack(&triangle(), DEFAULT_TOL).unwrap();
    let want = 2.0 * 3f64.sqrt() - 3.0;
    for v in 0..3 {
        assert!((p.radii[v] - want).abs() < 1e-12);
        let [x, y] = p.centers[v];
        assert!((x.hypot(y) + p.radii[v] - 1.0).abs() < 1e-12);
    }
    assert!(p.tangency_error() < 1e-12);
}

#[test]
fn fan_is_symmetric() {
    for k in [3, 5, 7] {
        let p = pack(&fan(k), DEFAULT_TOL).unwrap();
        assert_eq!(p.root, Some(0));
        // hyperbolic angle pi/k between two horocycles and the centre: sin(pi/k) = x
        assert!((p.s_radii[0] - (PI / k as f64).sin()).abs() < 1e-9);
        assert!(p.angle_residual() < 1e-8);
        assert!(p.tangency_error() < 1e-9);
        let r1 = p.radii[1];
        assert!((1..=k).all(|v| (p.radii[v] - r1).abs() < 1e-9));
    }
}

#[test]
fn boundary_circles_touch_the_unit_circle() {
    let p = pack(&stage("barycentric", 2), DEFAULT_TOL).unwrap();
    let c = &p.complex;
    for v in 0..c.n_vertices() {
        let [x, y] = p.centers[v];
        let reach = x.hypot(y) + p.radii[v];
        if c.is_boundary_vertex(v) {
            assert!((reach - 1.0).abs() < 1e-9, "{v}: {reach}");
        } else {
            assert!(reach < 1.0);
        }
    }
    assert!(p.angle_residual() < 1e-8);
    assert!(p.tangency_error() < 1e-8);
}

#[test]
fn hexagonal_interior_is_nearly_uniform() {
    let spread = |n| {
        let p = pack(&stage("hexagonal", n), DEFAULT_TOL).unwrap();
        let c = &p.complex;
        let (c0, r0) = (p.centers[p.root.unwrap()], p.radii[p.root.unwrap()]);
        // circles near the root
        let near: Vec<f64> = (0..c.n_vertices())
            .filter(|&v| (p.centers[v][0] - c0[0]).hypot(p.centers[v][1] - c0[1]) < 2.5 * r0)
            .map(|v| p.radii[v])
            .collect();
        near.iter().copied().fold(0.0, f64::max) / near.iter().copied().fold(f64::INFINITY, f64::min)
    };
    let (a, b) = (spread(3), spread(4));
    assert!(b < a && b < 1.2, "{a} {b}");
}

#[test]
fn errors() {
    assert!(matches!(pack(&octahedron(), 1e-10), Err(Error::NotATriangulatedDisk(_))));
    assert!(matches!(pack(square_ring(4).complex(), 1e-10), Err(Error::NotATriangulatedDisk(_))));
    assert!(matches!(pack_with_limit(&stage("barycentric", 2), 1e-10, 1), Err(Error::IterationLimit(1))));
}

#[test]
fn svg_output() {
    let p = pack(&triangle(), DEFAULT_TOL).unwrap();
    let s = render_svg(&p, &ColorBy::None);
    assert_eq!(s.matches("data-vertex").count(), 3);
    assert!(s.contains("viewBox=\"-1 -1 2 2\""));
    let c = stage("barycentric", 2);
    let p = pack(&c, DEFAULT_TOL).unwrap();
    let s = render_svg(&p, &ColorBy::Type);
    assert_eq!(s.matches("data-vertex").count(), c.n_vertices());
    assert_eq!(s, render_svg(&pack(&c, DEFAULT_TOL).unwrap(), &ColorBy::Type));
}
