use fanpart_core::arrangement::{z8_fixture, z4_fixture, intersection_poset, main_arrangement};
use fanpart_core::exactlin::{rref, ExactMatrix};
use fanpart_core::homology::{
    boundary_squares_vanish, deep_node_violations, order_complex, reduced_homology, SimplicialComplex, TopHomology,
};
use fanpart_core::obstruction::build_sphere;
use num_bigint::BigInt;

fn complex(facets: &[&[usize]]) -> SimplicialComplex {
    let mut vertices: Vec<usize> = facets.iter().flat_map(|f| f.iter().copied()).collect();
    vertices.sort_unstable();
    vertices.dedup();
    SimplicialComplex { vertices, facets: facets.iter().map(|f| f.to_vec()).collect() }
}

// free rank of the cell cycles by rank–nullity on the wall conditions
fn cycle_rank_oracle(h: &TopHomology) -> usize {
    let m = &h.model;
    if m.conditions.is_empty() {
        return m.region_count;
    }
    let mut a = ExactMatrix::zeros(m.conditions.len(), m.region_count);
    for (i, row) in m.conditions.iter().enumerate() {
        for &(j, c) in row {
            a[(i, j)] = fanpart_core::exactlin::q(c);
        }
    }
    m.region_count - rref(&a).rank
}

#[test]
fn small_complexes() {
    let s0 = complex(&[&[0], &[1]]);
    assert_eq!(reduced_homology(&s0, 0).rank, 1);
    let pt = complex(&[&[0]]);
    assert_eq!(reduced_homology(&pt, 0).rank, 0);
    let tri = complex(&[&[0, 1], &[1, 2], &[0, 2]]);
    assert!(boundary_squares_vanish(&tri));
    assert_eq!(reduced_homology(&tri, 0).rank, 0);
    assert_eq!(reduced_homology(&tri, 1).rank, 1);
    let disk = complex(&[&[0, 1, 2]]);
    assert_eq!(reduced_homology(&disk, 1).rank, 0);
    assert_eq!(reduced_homology(&disk, 2).rank, 0);
}

#[test]
fn projective_plane_has_two_torsion() {
    // six-vertex triangulation of RP²
    let rp2 = complex(&[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 3, 4],
        &[0, 4, 5],
        &[0, 1, 5],
        &[1, 2, 4],
        &[2, 3, 5],
        &[1, 3, 4],
        &[1, 3, 5],
        &[2, 4, 5],
    ]);
    assert!(boundary_squares_vanish(&rp2));
    let h1 = reduced_homology(&rp2, 1);
    assert_eq!(h1.rank, 0);
    assert_eq!(h1.torsion, vec![BigInt::from(2)]);
    assert_eq!(reduced_homology(&rp2, 2).rank, 0);
}

#[test]
fn join_sphere_is_a_three_sphere() {
    let s = build_sphere(3);
    assert!(boundary_squares_vanish(&s.complex));
    let ranks = s.chain_ranks();
    // Euler characteristic of S³
    assert_eq!(ranks[0] as i64 - ranks[1] as i64 + ranks[2] as i64 - ranks[3] as i64, 0);
    assert_eq!(reduced_homology(&s.complex, 3).rank, 1);
    assert_eq!(reduced_homology(&s.complex, 2).rank, 0);
    assert_eq!(reduced_homology(&s.complex, 1).rank, 0);
}

#[test]
fn z8_fixture_rank() {
    let arr = z8_fixture();
    let p = intersection_poset(&arr);
    let h = TopHomology::compute(&arr, &p).unwrap();
    assert_eq!(h.degree, 4);
    assert_eq!(h.rank(), 2);
    assert_eq!(h.rank(), cycle_rank_oracle(&h));
    assert!(h.zz_is_basis);
}

#[test]
fn z4_fixture_rank() {
    let arr = z4_fixture();
    let p = intersection_poset(&arr);
    let h = TopHomology::compute(&arr, &p).unwrap();
    assert_eq!(h.degree, 3);
    assert_eq!(h.rank(), 6);
    assert_eq!(h.rank(), cycle_rank_oracle(&h));
    assert_eq!(h.rank(), h.poset_rank);
}

#[test]
fn main_cases() {
    // (a, b, rank of the top homology)
    for (a, b, rank) in [(1, 2, 15), (2, 1, 3), (2, 2, 18), (1, 3, 20), (3, 1, 24)] {
        let arr = main_arrangement(a, b).unwrap();
        let p = intersection_poset(&arr);
        let h = TopHomology::compute(&arr, &p).unwrap();
        assert_eq!(h.degree, 2 * a + 2 * b - 4);
        assert_eq!(h.rank(), rank, "({a},{b})");
        assert_eq!(h.rank(), cycle_rank_oracle(&h), "({a},{b})");
        assert_eq!(h.rank(), h.poset_rank, "({a},{b})");
        for g in &h.zz {
            assert!(h.model.is_cycle(&g.cycle), "{}", g.name);
        }
        for v in 0..p.len() {
            assert!(boundary_squares_vanish(&order_complex(&p, v)));
        }
    }
}

#[test]
fn deep_nodes_have_vanishing_top_homology() {
    for (a, b) in [(1, 2), (2, 2)] {
        let arr = main_arrangement(a, b).unwrap();
        let p = intersection_poset(&arr);
        assert!(deep_node_violations(&p, arr.degree()).is_empty(), "({a},{b})");
    }
    // for (3,1) some nodes have nonzero top homology of their upper interval
    let arr = main_arrangement(3, 1).unwrap();
    let p = intersection_poset(&arr);
    assert_eq!(deep_node_violations(&p, arr.degree()).len(), 20);
}
