use std::collections::HashSet;

use fanpart_core::exactlin::{determinant, ExactVector};
use fanpart_core::groups::{cyclic_shift_group, quaternion_on_wn, reversal, rotation};
use fanpart_core::obstruction::u;
use proptest::prelude::*;

// sign of a permutation by counting inversions
fn perm_sign(img: &[usize]) -> i32 {
    let n = img.len();
    let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| img[i] > img[j]).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn orders() {
    for n in 3..=8 {
        let g = quaternion_on_wn(n).unwrap();
        assert_eq!(g.order(), 4 * n);
        // ε^n and j² act trivially on R^n, so only the dihedral quotient is visible
        assert_eq!(g.distinct_actions().len(), 2 * n);
    }
    assert!(quaternion_on_wn(1).is_err());
}

#[test]
fn generators_on_standard_basis() {
    let g = quaternion_on_wn(4).unwrap();
    let e = |i| ExactVector::unit(4, i);
    assert_eq!(g.act(1, &e(0)).unwrap(), e(1));
    assert_eq!(g.act(g.index_of(0, true), &e(0)).unwrap(), e(3));
    assert_eq!(g.act(g.index_of(4, false), &e(2)).unwrap(), e(2));
    assert!(g.act(1, &ExactVector::unit(3, 0)).is_err());
}

#[test]
fn action_on_cyclic_points() {
    for n in [6, 8, 10] {
        let g = quaternion_on_wn(n).unwrap();
        assert_eq!(g.act(1, &u(n, 1)).unwrap(), u(n, 2));
        assert_eq!(g.act(g.index_of(0, true), &u(n, 1)).unwrap(), u(n, n as isize));
    }
}

#[test]
fn determinant_character_matches_inversions() {
    for n in 2..=9 {
        let g = quaternion_on_wn(n).unwrap();
        let eps: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let j: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
        assert_eq!(rotation(n).det(), perm_sign(&eps));
        assert_eq!(reversal(n).det(), perm_sign(&j));
        for x in 0..g.order() {
            let d = determinant(&g.elements[x].matrix()).unwrap();
            assert_eq!(d, fanpart_core::exactlin::q(g.det_character(x) as i64));
        }
    }
    // n = 4: j fixes no coordinate and is a product of two transpositions
    assert_eq!(reversal(4).det(), 1);
    assert_eq!(rotation(4).det(), -1);
}

#[test]
fn multiplication_table_is_a_group() {
    for n in [3, 4, 6] {
        let g = quaternion_on_wn(n).unwrap();
        let m = g.order();
        for a in 0..m {
            let row: HashSet<usize> = (0..m).map(|b| g.mul(a, b)).collect();
            assert_eq!(row.len(), m, "Latin square row");
            assert_eq!(g.mul(a, g.inverse(a)), 0);
        }
        let e = 1;
        let j = g.index_of(0, true);
        assert_eq!(g.pow(e, 2 * n), 0);
        assert_eq!(g.mul(j, j), g.index_of(n, false));
        // j ε j⁻¹ = ε⁻¹
        assert_eq!(g.mul(g.mul(j, e), g.inverse(j)), g.inverse(e));
    }
}

#[test]
fn cyclic_fixture_orders() {
    let z8 = cyclic_shift_group(8, 8, &[2, 3, 4, 5, 6, 7, 8, 1]).unwrap();
    assert_eq!(z8.order(), 8);
    assert_eq!(z8.distinct_actions().len(), 8);
    assert!(cyclic_shift_group(4, 4, &[1, 1, 2, 3]).is_err());
}

proptest! {
    #[test]
    fn matrices_form_a_representation(n in 2usize..=8, x in 0usize..32, y in 0usize..32) {
        let g = quaternion_on_wn(n).unwrap();
        let (a, b) = (x % g.order(), y % g.order());
        let lhs = &g.elements[a].matrix() * &g.elements[b].matrix();
        prop_assert_eq!(lhs, g.elements[g.mul(a, b)].matrix());
        prop_assert_eq!(g.det_character(g.mul(a, b)), g.det_character(a) * g.det_character(b));
    }

    #[test]
    fn action_preserves_the_sum_zero_hyperplane(n in 3usize..=8, k in 0usize..16, jf: bool, xs in prop::collection::vec(-5i64..=5, 8)) {
        let g = quaternion_on_wn(n).unwrap();
        let mut v = xs[..n].to_vec();
        let s: i64 = v.iter().sum();
        v[0] -= s;
        let w = g.act(g.index_of(k, jf), &ExactVector::from_ints(&v)).unwrap();
        prop_assert!(w.iter().sum::<fanpart_core::Rational>() == fanpart_core::exactlin::q(0));
    }
}
