use std::collections::HashSet;

use fanpart_core::arrangement::{
    canonical_equal, z8_fixture, z4_fixture, form, h1_form, intersection_poset, k_form, main_arrangement, make_j_pieces,
    make_l_alpha, ones, ArrangementError, HalfOpenSubspace,
};
use fanpart_core::exactlin::{rref, ExactMatrix, ExactVector};
use fanpart_core::groups::quaternion_on_wn;
use proptest::prelude::*;

const CASES: [(usize, usize); 5] = [(1, 2), (2, 1), (2, 2), (1, 3), (3, 1)];

// orbit of a subspace by brute force over all group elements
fn orbit_size(s: &HalfOpenSubspace, n: usize) -> usize {
    let g = quaternion_on_wn(n).unwrap();
    g.elements.iter().map(|e| s.apply(&e.action, "").key()).collect::<HashSet<_>>().len()
}

fn in_row_span(rows: &ExactMatrix, v: &ExactVector) -> bool {
    let mut all = rows.row_vectors();
    let r = rref(rows).rank;
    all.push(v.clone());
    rref(&ExactMatrix::from_rows(&all, v.dim())).rank == r
}

#[test]
fn l_alpha_dimensions() {
    let l = make_l_alpha(4, 1, 1).unwrap();
    // the ones form is the sum of the three block forms
    assert_eq!(l.dim(), 1);
    assert!(l.is_linear());
    let l = make_l_alpha(6, 1, 2).unwrap();
    assert_eq!(l.dim(), 3);
    assert!(l.contains_point(&ExactVector::from_ints(&[0, 1, -1, 0, 0, 0])));
    assert!(!l.contains_point(&ExactVector::from_ints(&[1, -1, 0, 0, 0, 0])));
}

#[test]
fn parameter_errors() {
    assert_eq!(make_l_alpha(6, 0, 3).unwrap_err(), ArrangementError::BadBlocks { a: 0, b: 3 });
    assert_eq!(make_l_alpha(7, 1, 2).unwrap_err(), ArrangementError::BadN { n: 7, a: 1, b: 2 });
    assert!(main_arrangement(0, 2).is_err());
}

#[test]
fn j_pieces_have_codimension_four() {
    for (a, b) in CASES {
        let n = 2 * a + 2 * b;
        let (l1, l2) = make_j_pieces(n, a, b).unwrap();
        assert_eq!(l1.dim(), n - 4, "({a},{b})");
        assert_eq!(l2.dim(), n - 4, "({a},{b})");
        assert!(l2.is_linear());
        // for (2,1) the form K lies in the span of the defining equalities,
        // so the half-space condition is vacuous and L1* is linear
        let vacuous = in_row_span(&l1.equalities, &k_form(n, a, b));
        assert_eq!(vacuous, (a, b) == (2, 1));
        assert_eq!(l1.inequalities.len(), usize::from(!vacuous), "({a},{b})");
    }
}

#[test]
fn rotation_by_a_plus_b_negates_h1_and_k() {
    for (a, b) in CASES {
        let n = 2 * a + 2 * b;
        let g = quaternion_on_wn(n).unwrap();
        let e = &g.elements[g.index_of(a + b, false)].action;
        let h = h1_form(n, a, b);
        assert_eq!(e.apply_vec(&h), -&h, "({a},{b})");
        // ε^{a+b}K is the complementary block, i.e. −K on W_n
        let k = k_form(n, a, b);
        assert_eq!(&e.apply_vec(&k) + &k, ones(n));
    }
}

#[test]
fn canonical_equality_ignores_presentation() {
    let a = HalfOpenSubspace::new(&[form(&[1, 1, 0]), form(&[0, 1, 1])], &[form(&[1, 0, 0])], 3, "a");
    let b = HalfOpenSubspace::new(
        &[form(&[2, 4, 2]), form(&[1, 0, -1])],
        &[form(&[3, 0, 0])],
        3,
        "b",
    );
    assert!(canonical_equal(&a, &b));
    let c = HalfOpenSubspace::new(&[form(&[1, 1, 0]), form(&[0, 1, 1])], &[form(&[-1, 0, 0])], 3, "c");
    assert!(!canonical_equal(&a, &c));
}

#[test]
fn fixture_orbits() {
    let z8 = z8_fixture();
    assert_eq!(z8.maximal_elements.len(), 2);
    assert_eq!(z8.degree(), 4);
    let z4 = z4_fixture();
    assert_eq!(z4.maximal_elements.len(), 4);
    assert_eq!(z4.degree(), 3);
}

#[test]
fn fixture_posets() {
    let p = intersection_poset(&z8_fixture());
    // L ∩ εL = {x_i = −x_{i+1} for all i} is the line spanned by (1,−1,1,…)
    assert_eq!(p.len(), 3);
    assert_eq!(p.levels(), vec![(4, 2), (1, 1)]);
    let bottom = &p.nodes[2].subspace;
    assert!(bottom.contains_point(&ExactVector::from_ints(&[1, -1, 1, -1, 1, -1, 1, -1])));
    let p = intersection_poset(&z4_fixture());
    assert_eq!(p.maximal_node_ids.len(), 4);
}

#[test]
fn main_orbits_match_brute_force() {
    for (a, b) in CASES {
        let n = 2 * a + 2 * b;
        let arr = main_arrangement(a, b).unwrap();
        let (l1, l2) = make_j_pieces(n, a, b).unwrap();
        let (o1, o2) = (orbit_size(&l1, n), orbit_size(&l2, n));
        if (a, b) == (2, 1) {
            // the two orbits collapse into one
            assert!(arr.maximal_elements.iter().any(|m| m.contains(&l1)));
            assert!(arr.maximal_elements.iter().any(|m| m.contains(&l2)));
            assert_eq!(arr.maximal_elements.len(), 3);
        } else {
            assert_eq!(arr.maximal_elements.len(), o1 + o2, "({a},{b})");
        }
        assert!(arr.maximal_elements.iter().all(|m| m.dim() == n - 4));
        // L2* has stabiliser of order 4n/(a+b); twice that when a = b
        let expect2 = if a == b { (a + b) / 2 } else { a + b };
        assert_eq!(o2, expect2, "({a},{b})");
        let expect1 = if (a, b) == (2, 1) { 3 } else { 2 * n };
        assert_eq!(o1, expect1, "({a},{b})");
    }
}

#[test]
fn posets_are_group_invariant() {
    for (a, b) in [(1, 2), (2, 2)] {
        let arr = main_arrangement(a, b).unwrap();
        let p = intersection_poset(&arr);
        for g in &arr.group.elements {
            for node in &p.nodes {
                assert!(p.find(&node.subspace.apply(&g.action, "")).is_some());
            }
        }
        for node in &p.nodes {
            let meet = node.above.iter().skip(1).fold(arr.maximal_elements[node.above[0]].clone(), |acc, &k| {
                acc.intersect(&arr.maximal_elements[k])
            });
            assert!(canonical_equal(&meet, &node.subspace));
        }
        for &(lo, hi) in &p.hasse_edges {
            assert!(p.nodes[hi].subspace.contains(&p.nodes[lo].subspace));
            assert!(p.nodes[lo].dim <= p.nodes[hi].dim);
        }
    }
}

proptest! {
    #[test]
    fn membership_is_equivariant(case in 0usize..5, g in 0usize..40, xs in prop::collection::vec(-3i64..=3, 10)) {
        let (a, b) = CASES[case];
        let n = 2 * a + 2 * b;
        let arr = main_arrangement(a, b).unwrap();
        let g = &arr.group.elements[g % arr.group.order()].action;
        let x = ExactVector::from_ints(&xs[..n]);
        for m in &arr.maximal_elements {
            let gm = m.apply(g, "");
            prop_assert_eq!(m.contains_point(&x), gm.contains_point(&g.apply_vec(&x)));
        }
    }
}
