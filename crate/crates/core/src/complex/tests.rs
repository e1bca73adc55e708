use super::io::ComplexDoc;
use super::*;
use crate::error::Error;
use crate::marking::extract_vertex_annulus;
use crate::rules::{builtin, subdivide_n};
use crate::shapes::{fan, from_polygons, octahedron, square_ring, tetrahedron, triangle};

fn bary() -> crate::rules::SubdivisionRule {
    builtin("barycentric").unwrap()
}

fn hex() -> crate::rules::SubdivisionRule {
    builtin("hexagonal").unwrap()
}

#[test]
fn octahedron_counts() {
    let c = octahedron();
    assert_eq!((c.n_vertices(), c.n_edges(), c.n_faces()), (6, 12, 8));
    assert_eq!(c.euler_characteristic(), 6 - 12 + 8);
    assert!(c.is_closed());
}

#[test]
fn euler_characteristics() {
    assert_eq!(triangle().euler_characteristic(), 1);
    assert_eq!(square_ring(4).complex().euler_characteristic(), 0);
    assert_eq!(tetrahedron().euler_characteristic(), 2);
}

#[test]
fn json_round_trip() {
    let c = octahedron();
    let text = c.to_json();
    let back = Complex2D::from_json(&text).unwrap();
    assert_eq!(back, c);
}

#[test]
fn json_rejects_bad_documents() {
    let dangling = r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"faces":[[1,2,4]]}"#;
    assert!(matches!(Complex2D::from_json(dangling), Err(Error::DanglingEdge { .. })));
    let unknown = r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"faces":[[1,2,3]],"colour":1}"#;
    assert!(ComplexDoc::from_json(unknown).is_err());
    let dup = r#"{"vertices":[0,0,2],"edges":[[0,2],[2,0],[0,0]],"faces":[[1,2,3]]}"#;
    assert!(matches!(Complex2D::from_json(dup), Err(Error::DuplicateVertex(0))));
    let sparse = r#"{"vertices":[10,20,30],"edges":[[10,20],[20,30],[30,10]],"faces":[[1,2,3]]}"#;
    assert_eq!(Complex2D::from_json(sparse).unwrap().n_faces(), 1);
}

#[test]
fn rejects_non_manifold_and_disconnected() {
    let three = from_polygons(5, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]);
    assert!(matches!(three, Err(Error::NonManifold { .. })));
    let apart = from_polygons(6, &[vec![0, 1, 2], vec![3, 4, 5]]);
    assert!(matches!(apart, Err(Error::Disconnected)));
}

#[test]
fn orientation_is_made_consistent() {
    // second face listed against the first
    let c = from_polygons(4, &[vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
    let e = (0..c.n_edges()).find(|&e| c.edge_faces(e).len() == 2).unwrap();
    let dirs: Vec<bool> = c
        .edge_faces(e)
        .iter()
        .map(|&f| c.face_traverses_forward(f, c.face(f).edge_position(e).unwrap()))
        .collect();
    assert_ne!(dirs[0], dirs[1]);
}

#[test]
fn stars() {
    let s1 = subdivide_n(&triangle(), &bary(), 1).unwrap();
    let center = (0..s1.n_vertices()).find(|&v| s1.is_interior_vertex(v)).unwrap();
    let star = s1.star(center).unwrap();
    assert_eq!(star.faces.len(), 6);
    assert_eq!(star.link.len(), 6);
    assert_eq!(triangle().star(0).unwrap().faces.len(), 1);
    let sphere = subdivide_n(&octahedron(), &hex(), 1).unwrap();
    for v in 6..sphere.n_vertices() {
        assert_eq!(sphere.star(v).unwrap().faces.len(), 6);
    }
    assert!(matches!(triangle().star(7), Err(Error::UnknownVertex(7))));
}

#[test]
fn dual_of_octahedron_is_cube() {
    let d = octahedron().dual_tiling().unwrap();
    assert_eq!((d.n_vertices(), d.n_edges(), d.n_faces()), (8, 12, 6));
    assert!(d.faces().iter().all(|f| f.len() == 4));
    let dd = d.dual_tiling().unwrap();
    assert_eq!(dd.canonical_form(), octahedron().canonical_form());
    assert!(matches!(triangle().dual_tiling(), Err(Error::HasBoundary)));
}

#[test]
fn dual_of_subdivided_tetrahedron_is_trivalent() {
    let c = subdivide_n(&tetrahedron(), &bary(), 1).unwrap();
    let d = c.dual_tiling().unwrap();
    assert!((0..d.n_vertices()).all(|v| d.valence(v) == 3));
}

#[test]
fn blow_up() {
    let tet = tetrahedron().blow_up_vertices().unwrap();
    assert_eq!(tet.euler_characteristic(), 2);
    assert_eq!(tet.faces().iter().filter(|f| f.len() == 3).count(), 4);
    let oct = octahedron().blow_up_vertices().unwrap();
    assert_eq!(oct.euler_characteristic(), 2);
    let s1 = subdivide_n(&octahedron(), &bary(), 1).unwrap().blow_up_vertices().unwrap();
    assert!((0..s1.n_vertices()).all(|v| s1.valence(v) == 3));
    let skinny = s1.adjacency_graph(Adjacency::Edge);
    let fat = s1.adjacency_graph(Adjacency::Vertex);
    assert_eq!(skinny, fat);
}

#[test]
fn blow_up_with_boundary() {
    let b = fan(5).blow_up_vertices().unwrap();
    assert_eq!(b.euler_characteristic(), 1);
    assert_eq!(b.boundary_cycles().unwrap().len(), 1);
}

#[test]
fn adjacency_modes() {
    let pair = from_polygons(4, &[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
    assert_eq!(pair.adjacency_graph(Adjacency::Edge)[0], vec![1]);
    assert_eq!(pair.adjacency_graph(Adjacency::Vertex)[0], vec![1]);
    let bow = from_polygons(5, &[vec![0, 1, 2], vec![0, 3, 4], vec![0, 2, 3]]).unwrap();
    assert!(!bow.adjacency_graph(Adjacency::Edge)[0].contains(&1));
    assert!(bow.adjacency_graph(Adjacency::Vertex)[0].contains(&1));
}

#[test]
fn valence_growth_at_barycenter() {
    let s1 = subdivide_n(&triangle(), &bary(), 1).unwrap();
    let center = (0..s1.n_vertices()).find(|&v| s1.is_interior_vertex(v)).unwrap();
    assert_eq!(s1.valence_report(center).unwrap().valence, 6);
    let s2 = subdivide_n(&s1, &bary(), 1).unwrap();
    assert_eq!(s2.valence(center), 12);
}

#[test]
fn hexagonal_valence_is_six() {
    let mut c = fan(6);
    for _ in 0..3 {
        c = subdivide_n(&c, &hex(), 1).unwrap();
        assert_eq!(c.valence_report(0).unwrap().valence, 6);
    }
}

#[test]
fn vertex_annuli() {
    // valence n at stage k, one further subdivision: 4n triangles
    for n in [3, 5, 6] {
        let c = subdivide_n(&fan(n), &bary(), 1).unwrap();
        let ring = extract_vertex_annulus(&c, 0, 1, 2).unwrap();
        assert_eq!(ring.complex().n_faces(), 4 * n);
        assert_eq!(ring.complex().euler_characteristic(), 0);
    }
    let c = subdivide_n(&fan(6), &hex(), 1).unwrap();
    assert_eq!(extract_vertex_annulus(&c, 0, 1, 2).unwrap().complex().n_faces(), 18);
    let blown = subdivide_n(&octahedron(), &bary(), 1).unwrap().blow_up_vertices().unwrap();
    let ring = extract_vertex_annulus(&blown, 0, 1, 2).unwrap();
    assert_eq!(ring.complex().euler_characteristic(), 0);
    assert!(matches!(extract_vertex_annulus(&fan(5), 1, 1, 2), Err(Error::NotInterior(_)) | Err(Error::NotAnAnnulus(_))));
}

#[test]
fn canonical_form_ignores_numbering() {
    let a = from_polygons(4, &[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
    let b = from_polygons(4, &[vec![3, 2, 1], vec![3, 1, 0]]).unwrap();
    assert_eq!(a.canonical_form(), b.canonical_form());
    assert_ne!(a.canonical_form(), fan(3).canonical_form());
}
