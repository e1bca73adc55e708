use super::*;
use crate::marking::extract_vertex_annulus;
use crate::modulus::{modulus_inf, modulus_sup, Mode, Which, DEFAULT_TOL};
use crate::rules::{builtin, subdivide_n};
use crate::shapes::{barycentric_ring, fan, from_polygons};

#[test]
fn bound_formulas() {
    assert_eq!(star_alpha_bound(1.0, 1.0, 4).unwrap(), 0.25);
    assert!((star_alpha_bound(0.5, 2.0, 10).unwrap() - 0.025).abs() < 1e-15);
    assert!(matches!(star_alpha_bound(0.0, 1.0, 4), Err(Error::NonPositive(_))));
    let r = |valence| ValenceReport { vertex: 0, valence, max_neighbor_valence: 0 };
    assert_eq!(vertex_modulus_bound(&r(6), 1.0).unwrap(), 1.0 / 6.0);
    assert_eq!(vertex_modulus_bound(&r(12), 1.0).unwrap(), 1.0 / 12.0);
    assert!(vertex_modulus_bound(&r(6), -1.0).is_err());
}

#[test]
fn square_tile_has_two_type_one_quads() {
    let c = from_polygons(4, &[vec![0, 1, 2, 3]]).unwrap();
    let qs = enumerate_test_quads(&c);
    assert_eq!(qs.len(), 2);
    assert!(qs.iter().all(|q| q.kind == QuadKind::I));
}

#[test]
fn two_triangles_give_type_two_quads() {
    let c = from_polygons(4, &[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
    let qs = enumerate_test_quads(&c);
    assert!(!qs.is_empty());
    let f = (0..c.n_edges()).find(|&e| c.edge_faces(e).len() == 2).unwrap();
    for q in &qs {
        assert_eq!(q.kind, QuadKind::II);
        assert_eq!(q.interior_edges, vec![f]);
        for e in [q.top, q.bottom] {
            assert!(c.edge(e).iter().any(|v| c.edge(f).contains(v)));
        }
    }
}

#[test]
fn three_tiles_around_a_vertex_give_type_three_quads() {
    // triangles (0,1,2), (0,2,3), (0,3,4): the outer two meet only at 0
    let c = from_polygons(5, &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4]]).unwrap();
    let threes: Vec<_> = enumerate_test_quads(&c).into_iter().filter(|q| q.kind == QuadKind::III).collect();
    assert_eq!(threes.len(), 2);
    for q in &threes {
        assert_eq!(q.tiles.len(), 3);
        assert!(c.edge(q.top).contains(&0));
        assert_eq!(c.edge(q.bottom).iter().copied().collect::<BTreeSet<_>>(), BTreeSet::from([2, 3]));
    }
}

#[test]
fn barycentric_rings_shrink_geometrically() {
    let rule = builtin("barycentric").unwrap();
    let params = AxiomParams::default();
    let r = axiom_probe(&rule, &fan(6), &AxiomTarget::Vertex(0), Axiom::Two, 3, params).unwrap();
    for (k, m) in r.moduli.iter().enumerate() {
        let want = 1.0 / (6.0 * 2f64.powi(k as i32));
        assert!((m - want).abs() < 1e-5, "stage {k}: {m} vs {want}");
    }
    assert!(*r.layered.last().unwrap() <= 2.0 / 6.0 + 1e-5);
}

#[test]
fn hexagonal_rings_are_constant() {
    let rule = builtin("hexagonal").unwrap();
    let r = axiom_probe(&rule, &fan(6), &AxiomTarget::Vertex(0), Axiom::Zero, 3, AxiomParams::default()).unwrap();
    assert!(r.infimum >= 1.0 / 12.0 - 1e-6, "{:?}", r.moduli);
    assert!(r.k - 1.0 < 1e-5, "{:?}", r.moduli);
}

#[test]
fn direct_barycentric_ring_matches_extraction() {
    for n in [3, 5] {
        let c = subdivide_n(&fan(n), &builtin("barycentric").unwrap(), 1).unwrap();
        let extracted = extract_vertex_annulus(&c, 0, 1, 2).unwrap();
        assert_eq!(extracted.complex().canonical_form(), barycentric_ring(n).complex().canonical_form());
    }
}

#[test]
fn layers_are_checked() {
    let c = subdivide_n(&fan(5), &builtin("hexagonal").unwrap(), 3).unwrap();
    let ring = |a, b| extract_vertex_annulus(&c, 0, a, b).unwrap();
    let m = |r: &RingMarking| modulus_inf(r, Mode::Vertex, DEFAULT_TOL).unwrap().value;
    let (a, b) = (ring(1, 2), ring(3, 4));
    let est = layer_bound(&c, &[(a.clone(), m(&a)), (b.clone(), m(&b))]).unwrap();
    assert!((est.bound - m(&a) - m(&b)).abs() < 1e-15);
    let union = m(&ring(1, 4));
    assert!(union >= est.bound - 1e-6, "{union} < {}", est.bound);
    let overlap = ring(1, 3);
    assert!(matches!(layer_bound(&c, &[(a.clone(), 0.1), (overlap, 0.1)]), Err(Error::Overlapping)));
    assert!(matches!(layer_bound(&c, &[(b, 0.1), (a, 0.1)]), Err(Error::NotNested)));
}

#[test]
fn hexagonal_criterion_is_positive() {
    let rule = builtin("hexagonal").unwrap();
    let report = criterion_123(&rule, 2, Mode::Vertex, DEFAULT_TOL).unwrap();
    assert!(report.m > 0.0);
    assert!(report.a_max > 0.0);
    assert_eq!(report.per_level.len(), 2);
    // M is attained by some quad; recompute one directly
    let base = crate::rules::subdivide(&fan(3).sub_complex(&[0]).unwrap().complex, &rule).unwrap();
    let q = &enumerate_test_quads(&base)[0];
    let fine = crate::rules::subdivide_quad(&q.marking, &rule, 1).unwrap();
    assert!(modulus_sup(&fine, Mode::Vertex, DEFAULT_TOL).unwrap().value >= report.m - 1e-9);
}

#[test]
fn ring_target_probe() {
    let rule = builtin("hexagonal").unwrap();
    let ring = barycentric_ring(4);
    let r = axiom_probe(&rule, ring.complex(), &AxiomTarget::Ring(ring.clone()), Axiom::One, 2, AxiomParams::default()).unwrap();
    assert_eq!(r.moduli.len(), 2);
    assert!(r.k >= 1.0);
    let again = AxiomReport::from_moduli(Axiom::One, r.mode, Which::Inf, r.moduli.clone(), None);
    assert_eq!(again, r);
    assert!(axiom_probe(&rule, &ring.complex().clone(), &AxiomTarget::Ring(ring.clone()), Axiom::Two, 2, AxiomParams::default()).is_err());
}
