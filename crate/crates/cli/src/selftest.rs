//! Invariant suites at small sizes.

use fanpart_core::arrangement::{z8_fixture, z4_fixture, intersection_poset, main_arrangement, Arrangement};
use fanpart_core::coinvariants::{induced_action, modified_coinvariants, GroupAction, Twist};
use fanpart_core::exactlin::{smith_normal_form, ExactMatrix};
use fanpart_core::groups::quaternion_on_wn;
use fanpart_core::homology::{boundary_squares_vanish, deep_node_violations, order_complex, TopHomology};
use fanpart_core::obstruction::{build_sphere, define_h};

#[derive(Clone, Debug)]
pub struct SelftestResult {
    pub name: String,
    pub passed: bool,
    /// Informational lines do not affect the exit code.
    pub informational: bool,
}

fn lcg(state: &mut u64) -> i64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    ((*state >> 33) % 11) as i64 - 5
}

fn representation(arr: &Arrangement, fault: bool) -> bool {
    let p = intersection_poset(arr);
    let Ok(h) = TopHomology::compute(arr, &p) else { return false };
    let Ok(mut act): Result<GroupAction, _> = induced_action(arr, &h) else { return false };
    if fault {
        // flip the orientation sign of one generator
        let g = act.generators[0];
        act.matrices[g] = act.matrices[g].scale(&(-fanpart_core::exactlin::q(1)));
    }
    let gens = modified_coinvariants(&act, Twist::Homology, false);
    let all = modified_coinvariants(&act, Twist::Homology, true);
    act.is_representation(&arr.group) && gens.factors() == all.factors()
}

/// Runs every suite; `fault` injects a sign error into the group action.
pub fn run_selftest(fault: bool) -> Vec<SelftestResult> {
    let mut out = Vec::new();
    let mut push = |name: String, passed: bool, informational: bool| out.push(SelftestResult { name, passed, informational });

    let mut st = 7u64;
    let snf_ok = (0..60).all(|k| {
        let (r, c) = (1 + k % 4, 1 + (k / 4) % 5);
        let xs: Vec<i64> = (0..r * c).map(|_| lcg(&mut st)).collect();
        let m = ExactMatrix::from_ints(r, c, &xs);
        smith_normal_form(&m).is_ok_and(|s| s.verify(&m))
    });
    push("Smith normal form contract on 60 integer matrices".into(), snf_ok, false);

    for n in [3, 4] {
        let s = build_sphere(n);
        let ranks = s.chain_ranks();
        push(format!("sphere n={n}: boundary squares vanish"), boundary_squares_vanish(&s.complex), false);
        push(
            format!("sphere n={n}: chain ranks {ranks:?}"),
            ranks == [4 * n * n, 8 * n * n, 4 * n * n + 4 * n, 4 * n],
            false,
        );
    }
    for n in [6, 8] {
        let g = quaternion_on_wn(n).expect("group");
        push(format!("h equivariant for n={n}"), define_h(n).is_equivariant(&build_sphere(n), &g), false);
    }

    push("representation check, Z8 fixture".into(), representation(&z8_fixture(), fault), false);
    push("representation check, Z4 fixture".into(), representation(&z4_fixture(), false), false);

    for (a, b) in [(1, 2), (2, 1), (2, 2), (1, 3), (3, 1)] {
        let arr = main_arrangement(a, b).expect("valid parameters");
        let p = intersection_poset(&arr);
        let deg = arr.degree();
        let complexes_ok = (0..p.nodes.len()).all(|v| boundary_squares_vanish(&order_complex(&p, v)));
        push(format!("({a},{b}): order complexes satisfy dd = 0"), complexes_ok, false);
        let rank_ok = TopHomology::compute(&arr, &p).is_ok_and(|h| h.rank() == h.poset_rank);
        push(format!("({a},{b}): homology rank equals the poset count"), rank_ok, false);
        let viol = deep_node_violations(&p, deg);
        push(
            format!("({a},{b}): deep nodes have vanishing top homology ({} exceptions)", viol.len()),
            viol.is_empty(),
            true,
        );
        if a == 1 && b == 2 {
            push(format!("({a},{b}): representation check"), representation(&arr, false), false);
        }
    }
    out
}
