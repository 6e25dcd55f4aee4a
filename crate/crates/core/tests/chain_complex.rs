use std::collections::HashMap;

use flatnorm::{Chain, ChainDocument, GridComplex64, Topology};
use proptest::prelude::*;

fn complexes(w: usize, h: usize) -> [GridComplex64; 2] {
    [GridComplex64::cubical(w, h, 0.5).unwrap(), GridComplex64::triangulated(w, h, 0.5).unwrap()]
}

/// Boundary of a face rebuilt from geometry alone: walk the corners
/// counterclockwise (checked by the shoelace area) and sign each side by
/// whether it agrees with the stored edge direction.
fn geometric_face_boundary(k: &GridComplex64, f: usize) -> Vec<(usize, i64)> {
    let corners = k.face_vertices(f);
    let pos: Vec<(f64, f64)> = corners.iter().map(|&v| k.vertex_position(v)).collect();
    let mut area2 = 0.0;
    for a in 0..pos.len() {
        let (p, q) = (pos[a], pos[(a + 1) % pos.len()]);
        area2 += p.0 * q.1 - q.0 * p.1;
    }
    assert!((area2 / 2.0 - k.face_area(f)).abs() < 1e-12, "face {f} is not counterclockwise");
    let by_ends: HashMap<(usize, usize), usize> = (0..k.num_edges()).map(|e| (k.edge_endpoints(e), e)).collect();
    let mut out = Vec::new();
    for a in 0..corners.len() {
        let (u, v) = (corners[a], corners[(a + 1) % corners.len()]);
        if let Some(&e) = by_ends.get(&(u, v)) {
            out.push((e, 1));
        } else {
            out.push((by_ends[&(v, u)], -1));
        }
    }
    out.sort();
    out
}

#[test]
fn face_boundaries_match_geometry() {
    for k in complexes(3, 2) {
        for f in 0..k.num_faces() {
            let ours = k.boundary(&Chain::cell(&k, 2, f, 1).unwrap()).unwrap();
            assert_eq!(ours.cells(), geometric_face_boundary(&k, f).as_slice(), "face {f}");
        }
    }
}

#[test]
fn cell_counts() {
    let [c, t] = complexes(4, 3);
    assert_eq!((c.num_vertices(), c.num_edges(), c.num_faces()), (20, 31, 12));
    assert_eq!((t.num_vertices(), t.num_edges(), t.num_faces()), (20, 43, 24));
    // Euler characteristic of a disk
    for k in [c, t] {
        assert_eq!(k.num_vertices() as i64 - k.num_edges() as i64 + k.num_faces() as i64, 1);
    }
}

#[test]
fn boundary_of_every_single_cell_closes() {
    for k in complexes(5, 4) {
        for f in 0..k.num_faces() {
            let s = Chain::cell(&k, 2, f, 1).unwrap();
            assert!(k.boundary(&k.boundary(&s).unwrap()).unwrap().is_zero());
        }
    }
}

#[test]
fn masses_weight_cells() {
    let [c, t] = complexes(2, 2);
    let all = |k: &GridComplex64| Chain::from_cells(k, 2, (0..k.num_faces()).map(|f| (f, 1))).unwrap();
    assert!((c.mass(&all(&c)).unwrap() - 1.0).abs() < 1e-12);
    assert!((t.mass(&all(&t)).unwrap() - 1.0).abs() < 1e-12);
    // outer boundary of the 2x2 block: 8 half-length sides
    assert!((c.mass(&c.boundary(&all(&c)).unwrap()).unwrap() - 4.0).abs() < 1e-12);
    assert!((t.mass(&t.boundary(&all(&t)).unwrap()).unwrap() - 4.0).abs() < 1e-12);
    let d = t.diagonal_edge(0, 0).unwrap();
    let m = t.mass(&Chain::cell(&t, 1, d, -3).unwrap()).unwrap();
    assert!((m - 1.5 * 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn chains_do_not_mix_complexes() {
    let a = GridComplex64::cubical(2, 2, 1.0).unwrap();
    let b = GridComplex64::cubical(2, 2, 1.0).unwrap();
    let x = Chain::cell(&a, 1, 0, 1).unwrap();
    let y = Chain::cell(&b, 1, 0, 1).unwrap();
    assert!(x.add(&y).is_err());
    assert!(b.boundary(&x).is_err());
    assert!(x.add(&Chain::cell(&a, 2, 0, 1).unwrap()).is_err());
    assert!(Chain::cell(&a, 1, a.num_edges(), 1).is_err());
    assert!(Chain::cell(&a, 3, 0, 1).is_err());
}

fn topology() -> impl Strategy<Value = Topology> {
    prop_oneof![Just(Topology::Cubical), Just(Topology::RightTriangulated)]
}

fn complex_and_faces() -> impl Strategy<Value = (GridComplex64, Vec<i64>)> {
    (1usize..=32, 1usize..=32, topology()).prop_flat_map(|(w, h, t)| {
        let k = GridComplex64::new(w, h, 1.0, t).unwrap();
        let n = k.num_faces();
        (Just(k), prop::collection::vec(-5i64..=5, n))
    })
}

fn complex_and_edges() -> impl Strategy<Value = (GridComplex64, Vec<i64>, Vec<i64>)> {
    (1usize..=8, 1usize..=8, topology()).prop_flat_map(|(w, h, t)| {
        let k = GridComplex64::new(w, h, 1.0, t).unwrap();
        let n = k.num_edges();
        (Just(k), prop::collection::vec(-3i64..=3, n), prop::collection::vec(-3i64..=3, n))
    })
}

proptest! {
    #[test]
    fn boundary_of_boundary_vanishes((k, dense) in complex_and_faces()) {
        let s = Chain::from_dense(&k, 2, &dense).unwrap();
        let bb = k.boundary(&k.boundary(&s).unwrap()).unwrap();
        prop_assert!(bb.is_zero());
    }

    #[test]
    fn boundary_is_linear((k, a, b) in complex_and_edges(), m in -4i64..=4) {
        let a = Chain::from_dense(&k, 1, &a).unwrap();
        let b = Chain::from_dense(&k, 1, &b).unwrap();
        let lhs = k.boundary(&a.add(&b.scale(m).unwrap()).unwrap()).unwrap();
        let rhs = k.boundary(&a).unwrap().add(&k.boundary(&b).unwrap().scale(m).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mass_is_a_norm((k, a, b) in complex_and_edges(), m in -4i64..=4) {
        let a = Chain::from_dense(&k, 1, &a).unwrap();
        let b = Chain::from_dense(&k, 1, &b).unwrap();
        let (ma, mb) = (k.mass(&a).unwrap(), k.mass(&b).unwrap());
        prop_assert!(k.mass(&a.add(&b).unwrap()).unwrap() <= ma + mb + 1e-9);
        prop_assert!((k.mass(&a.scale(m).unwrap()).unwrap() - m.abs() as f64 * ma).abs() < 1e-9);
        prop_assert_eq!(a.sub(&a).unwrap().is_zero(), true);
    }

    #[test]
    fn json_round_trip((k, a, _b) in complex_and_edges()) {
        let a = Chain::from_dense(&k, 1, &a).unwrap();
        let text = a.to_document(&k).unwrap().to_json();
        let doc = ChainDocument::from_json(&text).unwrap();
        prop_assert_eq!(k.chain_from_document(&doc).unwrap(), a.clone());
        let (k2, a2) = doc.into_complex_and_chain::<f64>().unwrap();
        prop_assert_eq!(a2.to_document(&k2).unwrap().to_json(), text);
    }
}
