use std::collections::BTreeSet;

use fanpart_core::arrangement::{h1_form, h2_form, k_form, ones, xi_forms};
use fanpart_core::exactlin::{q, ExactVector};
use fanpart_core::groups::quaternion_on_wn;
use fanpart_core::obstruction::{
    build_sphere, decompose_broken_class, define_h, enumerate_l_intersections, expected_v, expected_w,
    intersect_with_jpieces, obstruction_class, preimage_simplices, table_families, translation, u, ObstructionError,
    Pipeline, Vertex,
};
use fanpart_core::Rational;
use num_traits::Zero;

const CASES: [(usize, usize); 5] = [(1, 2), (2, 1), (2, 2), (1, 3), (3, 1)];

#[test]
fn sphere_counts() {
    let s = build_sphere(4);
    assert_eq!(s.complex.vertices.len(), 16);
    assert_eq!(s.chain_ranks(), [64, 128, 80, 16]);
}

#[test]
fn j_on_sphere_vertices() {
    let n = 4;
    let s = build_sphere(n);
    let g = quaternion_on_wn(n).unwrap();
    let j = g.index_of(0, true);
    assert_eq!(s.act(&g, j, Vertex::A(1)), Vertex::B(1));
    for i in 2..=2 * n {
        assert_eq!(s.act(&g, j, Vertex::A(i)), Vertex::B(2 * n + 2 - i));
    }
    assert_eq!(s.act(&g, j, Vertex::B(1)), Vertex::A(n + 1));
    assert_eq!(s.act(&g, j, Vertex::B(2)), Vertex::A(n));
    // j² = ε^n on the sphere
    for v in [Vertex::A(3), Vertex::B(5)] {
        let jj = s.act(&g, j, s.act(&g, j, v));
        assert_eq!(jj, s.act(&g, g.index_of(n, false), v));
    }
}

#[test]
fn vertex_map_on_orbit_of_a1() {
    for n in [6, 8] {
        let s = build_sphere(n);
        let g = quaternion_on_wn(n).unwrap();
        let h = define_h(n);
        let t = Vertex::A(1);
        assert_eq!(h.image(t), u(n, 1));
        let jt = s.act(&g, g.index_of(0, true), t);
        assert_eq!(h.image(jt), u(n, n as isize));
        for i in 0..2 * n {
            let v = s.act(&g, g.index_of(i, true), t);
            assert_eq!(h.image(v), u(n, i as isize));
        }
        assert!(h.is_equivariant(&s, &g));
        // f(e) = Σ [u_i, u_{i+1}, u_n, u_1]
        for (i, cell) in s.fundamental_image().iter().enumerate() {
            let imgs: Vec<ExactVector> = cell.iter().map(|&v| h.image(v)).collect();
            let i = i as isize + 1;
            assert_eq!(imgs, vec![u(n, i), u(n, i + 1), u(n, n as isize), u(n, 1)]);
        }
    }
}

#[test]
fn table_has_six_rows_for_large_blocks() {
    let t = table_families(2, 2);
    let rows: BTreeSet<usize> = t.iter().map(|f| f.row).collect();
    assert_eq!(rows, (1..=6).collect());
    // row 3 is empty when a = 1
    assert!(table_families(1, 2).iter().all(|f| f.row != 3));
}

#[test]
fn census_rows() {
    for (a, b, rows) in [
        (1, 2, vec![1, 2, 5, 6]),
        (2, 2, vec![1, 2, 3, 4, 5, 6]),
        (1, 3, vec![1, 2, 5, 6]),
    ] {
        let c = enumerate_l_intersections(a, b);
        assert_eq!(c.rows_present, rows, "({a},{b})");
    }
}

fn eval(f: &ExactVector, x: &ExactVector) -> Rational {
    f.dot(x)
}

#[test]
fn v_and_w_lie_on_the_pieces() {
    for (a, b) in CASES {
        let n = 2 * a + 2 * b;
        let (v, w) = (expected_v(a, b), expected_w(a, b));
        for x in [&v, &w] {
            assert!(eval(&ones(n), x).is_zero());
            for f in xi_forms(n, a, b) {
                assert!(eval(&f, x).is_zero(), "({a},{b})");
            }
        }
        assert!(eval(&h1_form(n, a, b), &v).is_zero());
        assert!(eval(&k_form(n, a, b), &v) >= q(0));
        assert!(eval(&h2_form(n, a, b), &w).is_zero());
        // ε^a j v = w
        let g = quaternion_on_wn(n).unwrap();
        assert_eq!(g.act(g.index_of(a, true), &v).unwrap(), w, "({a},{b})");
    }
}

#[test]
fn pieces_are_met_in_v_and_w() {
    for (a, b) in [(1, 2), (1, 3), (3, 1)] {
        let m = intersect_with_jpieces(a, b).unwrap();
        assert!(m.is_v_w(), "({a},{b})");
    }
    // for a = b, w = −v and both pull back to the same point of σ
    assert_eq!(expected_w(2, 2), -&expected_v(2, 2));
    let g = quaternion_on_wn(8).unwrap();
    let p = preimage_simplices(2, 2, &build_sphere(8), &define_h(8), &g);
    assert_eq!(p.v_star, p.w_star);
}

#[test]
fn preimages_lie_in_one_orbit() {
    for (a, b) in [(1, 2), (1, 3), (3, 1)] {
        let n = 2 * a + 2 * b;
        let g = quaternion_on_wn(n).unwrap();
        let p = preimage_simplices(a, b, &build_sphere(n), &define_h(n), &g);
        assert!(p.single_orbit, "({a},{b})");
        assert!(p.points_are_v_w_star(), "({a},{b})");
        assert_eq!(p.simplices.len(), 16, "({a},{b})");
    }
}

#[test]
fn translations_are_generic_and_reproducible() {
    let n = 6;
    let s1 = translation(n, 1);
    assert_eq!(s1, translation(n, 1));
    assert_ne!(s1, translation(n, 2));
    assert!(s1.iter().sum::<Rational>().is_zero());
    assert!(!s1.is_zero());
}

#[test]
fn zero_translation_is_rejected() {
    let p = Pipeline::new(1, 2).unwrap();
    let z = ExactVector::zeros(p.n);
    assert!(decompose_broken_class(&p.arr, &p.homology.model, 1, 2, &z).is_err());
}

#[test]
fn bad_parameters() {
    assert!(matches!(Pipeline::new(1, 1), Err(ObstructionError::BadParams { a: 1, b: 1 })));
    assert!(matches!(Pipeline::new(0, 3), Err(ObstructionError::BadParams { .. })));
    assert!(obstruction_class(3, 0).is_err());
}

#[test]
fn cocycle_is_stable_under_translation() {
    let p = Pipeline::new(1, 2).unwrap();
    let mut classes = BTreeSet::new();
    for seed in 1..=5 {
        let hits = p.cell_hits(&translation(p.n, seed)).unwrap();
        assert!(!hits.is_empty());
        let x = p.pairing(&hits);
        assert_eq!(x.len(), p.homology.rank());
        classes.insert(p.class(&x).unwrap().coords);
    }
    assert_eq!(classes.len(), 1);
}

#[test]
fn certificate_for_one_two() {
    let c = obstruction_class(1, 2).unwrap();
    assert!(c.failed_checks().is_empty(), "{:?}", c.failed_checks());
    assert_eq!(c.coinvariants.factors, vec!["Z2".to_string(), "Z".to_string()]);
    assert!(!c.obstruction.nonzero);
    assert!(!c.positive());
    assert_eq!(c.homology.rank, 15);
}
