use super::*;
use crate::complex::Complex2D;
use crate::error::Error;
use crate::shapes::{fan, from_polygons, octahedron, split_square, tetrahedron, triangle_ring, triangle};

const LINEAR: &str = include_str!("../../tests/data/linear.json");

fn doc(rule: &SubdivisionRule) -> serde_json::Value {
    serde_json::from_str(&rule.to_json()).unwrap()
}

#[test]
fn face_counts() {
    let b = builtin_barycentric();
    let h = builtin_hexagonal();
    assert_eq!(subdivide(&triangle(), &b).unwrap().n_faces(), 6);
    assert_eq!(subdivide_n(&triangle(), &b, 2).unwrap().n_faces(), 36);
    assert_eq!(subdivide_n(&triangle(), &b, 3).unwrap().n_faces(), 216);
    assert_eq!(subdivide(&triangle(), &h).unwrap().n_faces(), 4);
    assert_eq!(subdivide_n(&triangle(), &h, 3).unwrap().n_faces(), 64);
    assert_eq!(subdivide(&octahedron(), &h).unwrap().n_faces(), 32);
}

#[test]
fn two_triangles_barycentric() {
    let sq = split_square();
    let s = subdivide(sq.complex(), &builtin_barycentric()).unwrap();
    assert_eq!(s.n_faces(), 12);
    assert_eq!(s.n_vertices(), 4 + 5 + 2);
    let quad = subdivide_quad(&sq, &builtin_barycentric(), 1).unwrap();
    assert_eq!(quad.top().edges.len(), 2);
    assert_eq!(quad.bottom().edges.len(), 2);
}

#[test]
fn zero_levels_is_identity() {
    let c = octahedron();
    assert_eq!(subdivide_n(&c, &builtin_barycentric(), 0).unwrap(), c);
}

#[test]
fn iteration_matches_repeated_application() {
    let r = builtin_barycentric();
    let once_twice = subdivide(&subdivide(&tetrahedron(), &r).unwrap(), &r).unwrap();
    assert_eq!(subdivide_n(&tetrahedron(), &r, 2).unwrap(), once_twice);
}

#[test]
fn deterministic_output() {
    let r = builtin_hexagonal();
    let a = subdivide_n(&octahedron(), &r, 2).unwrap().to_json();
    let b = subdivide_n(&octahedron(), &r, 2).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn preserves_topology() {
    for rule in [builtin_barycentric(), builtin_hexagonal()] {
        for c in [triangle(), octahedron(), fan(5), triangle_ring(4).complex().clone()] {
            let s = subdivide(&c, &rule).unwrap();
            assert_eq!(s.euler_characteristic(), c.euler_characteristic());
            assert_eq!(s.boundary_cycles().unwrap().len(), c.boundary_cycles().unwrap().len());
        }
    }
}

#[test]
fn every_edge_is_split() {
    for rule in [builtin_barycentric(), builtin_hexagonal()] {
        let d = subdivide_detailed(&octahedron(), &rule).unwrap();
        assert!(d.edge_children.iter().all(|kids| kids.len() >= 2));
    }
}

#[test]
fn ring_marking_follows() {
    let ring = subdivide_ring(&triangle_ring(4), &builtin_hexagonal(), 2).unwrap();
    assert_eq!(ring.inner().edges.len(), 16);
    assert_eq!(ring.outer().edges.len(), 16);
}

#[test]
fn round_trip() {
    for rule in [builtin_barycentric(), builtin_hexagonal()] {
        let back = SubdivisionRule::from_json(&rule.to_json()).unwrap();
        assert_eq!(doc(&back), doc(&rule));
        let c = subdivide_n(&octahedron(), &back, 2).unwrap();
        assert_eq!(c, subdivide_n(&octahedron(), &rule, 2).unwrap());
    }
}

#[test]
fn unknown_tile_type() {
    let mut d = doc(&builtin_hexagonal());
    d["tile_types"]["tri"]["pattern"]["tile_types"][3] = "B".into();
    let err = SubdivisionRule::from_json(&d.to_string()).unwrap_err();
    assert!(matches!(err, Error::UnknownTileType(ref t) if t == "B"), "{err:?}");
}

#[test]
fn inconsistent_edge_split() {
    // a second edge type claims three pieces but its model edge is cut in two
    let mut d = doc(&builtin_hexagonal());
    d["edge_types"]["f"] = serde_json::json!({ "splits_into": ["f", "f", "f"] });
    d["tile_types"]["tri"]["boundary"] = serde_json::json!(["e", "f", "e"]);
    let err = SubdivisionRule::from_json(&d.to_string()).unwrap_err();
    assert!(matches!(err, Error::EdgeMismatch(_)), "{err:?}");
}

#[test]
fn pattern_must_be_disk() {
    let mut d = doc(&builtin_hexagonal());
    // drop the middle face: the pattern becomes an annulus
    d["tile_types"]["tri"]["pattern"]["faces"].as_array_mut().unwrap().pop();
    d["tile_types"]["tri"]["pattern"]["tile_types"].as_array_mut().unwrap().pop();
    let err = SubdivisionRule::from_json(&d.to_string()).unwrap_err();
    assert!(matches!(err, Error::NotADisk(_)), "{err:?}");
}

#[test]
fn missing_tile_type() {
    let c = triangle().with_tile_types(Some(vec!["square".into()])).unwrap();
    assert!(matches!(subdivide(&c, &builtin_barycentric()), Err(Error::MissingTileType(0))));
    let quad = from_polygons(4, &[vec![0, 1, 2, 3]]).unwrap();
    assert!(matches!(subdivide(&quad, &builtin_barycentric()), Err(Error::MissingTileType(0))));
}

#[test]
fn unknown_builtin() {
    assert!(matches!(builtin("pentagonal"), Err(Error::UnknownRule(_))));
}

#[test]
fn hexagonal_growth_is_bounded() {
    let c = subdivide(&fan(6), &builtin_hexagonal()).unwrap();
    let g = classify_growth(&builtin_hexagonal(), &c, 0, 4).unwrap();
    assert_eq!(g.kind, Growth::Bounded);
    assert_eq!(g.valences, vec![6; 4]);
}

#[test]
fn barycentric_growth_doubles() {
    let g = classify_growth(&builtin_barycentric(), &octahedron(), 0, 5).unwrap();
    assert_eq!(g.kind, Growth::Exponential);
    assert_eq!(g.multiplier, Some(2));
    assert_eq!(g.valences, vec![4, 8, 16, 32, 64]);
}

#[test]
fn growth_localizes_correctly() {
    let r = builtin_barycentric();
    let g = classify_growth(&r, &fan(5), 0, 4).unwrap();
    let full: Vec<usize> = (0..4).map(|k| subdivide_n(&fan(5), &r, k).unwrap().valence(0)).collect();
    assert_eq!(g.valences, full);
}

#[test]
fn linear_growth_rule() {
    let rule = SubdivisionRule::from_json(LINEAR).unwrap();
    let mut types = vec!["B".to_string(); 5];
    types[0] = "A".into();
    types[2] = "A".into();
    let c: Complex2D = fan(5).with_tile_types(Some(types)).unwrap();
    let g = classify_growth(&rule, &c, 0, 5).unwrap();
    assert_eq!(g.kind, Growth::Linear);
    assert_eq!(g.addend, Some(2));
    assert_eq!(g.valences, vec![5, 7, 9, 11, 13]);
}

#[test]
fn growth_errors() {
    let r = builtin_hexagonal();
    assert!(matches!(classify_growth(&r, &fan(6), 1, 4), Err(Error::NotInterior(1))));
    assert!(classify_growth(&r, &fan(6), 0, 3).is_err());
}
