use fanpart_core::arrangement::{z8_fixture, z4_fixture, intersection_poset, main_arrangement, Arrangement};
use fanpart_core::coinvariants::{induced_action, modified_coinvariants, orientation_sign, GroupAction, Twist};
use fanpart_core::homology::TopHomology;
use num_bigint::BigInt;
use proptest::prelude::*;

fn action(arr: &Arrangement) -> GroupAction {
    let p = intersection_poset(arr);
    let h = TopHomology::compute(arr, &p).unwrap();
    induced_action(arr, &h).unwrap()
}

#[test]
fn orientation_signs_on_fixtures() {
    let arr = z8_fixture();
    let l = &arr.maximal_elements[0];
    let e2 = &arr.group.elements[2].action;
    assert_eq!(orientation_sign(e2, l).unwrap(), -1);
    assert_eq!(orientation_sign(&arr.group.elements[0].action, l).unwrap(), 1);
    // ε does not stabilise L
    assert!(orientation_sign(&arr.group.elements[1].action, l).is_err());

    let arr = z4_fixture();
    let e2 = &arr.group.elements[2].action;
    let m = arr.maximal_elements[0].intersect(&arr.maximal_elements[0].apply(e2, ""));
    assert_eq!(orientation_sign(e2, &m).unwrap(), 1);
}

#[test]
fn z8_coinvariants() {
    let act = action(&z8_fixture());
    assert!(act.is_representation(&z8_fixture().group));
    let c = modified_coinvariants(&act, Twist::Homology, false);
    assert!(c.is_isomorphic(&[2], 0));
    assert_eq!(c.factors(), vec!["Z2".to_string()]);
    assert_eq!(modified_coinvariants(&act, Twist::Homology, true).factors(), c.factors());
}

#[test]
fn z4_coinvariants() {
    let act = action(&z4_fixture());
    let c = modified_coinvariants(&act, Twist::Homology, false);
    assert_eq!(c.factors(), vec!["Z2".to_string(), "Z".to_string()]);
    assert_eq!(modified_coinvariants(&act, Twist::Homology, true).factors(), c.factors());
}

#[test]
fn main_case_cohomology_coinvariants() {
    for (a, b, expect) in [(1, 2, vec!["Z2", "Z"]), (1, 3, vec!["Z2", "Z"]), (3, 1, vec!["Z2", "Z2", "Z"])] {
        let arr = main_arrangement(a, b).unwrap();
        let act = action(&arr);
        assert!(act.is_representation(&arr.group));
        let c = modified_coinvariants(&act, Twist::Cohomology, false);
        assert_eq!(c.factors(), expect, "({a},{b})");
        assert_eq!(modified_coinvariants(&act, Twist::Cohomology, true).factors(), c.factors());
    }
}

#[test]
fn zero_projects_to_zero() {
    let act = action(&z4_fixture());
    let c = modified_coinvariants(&act, Twist::Homology, false);
    let z = vec![BigInt::from(0); act.dim()];
    let p = c.project(&z).unwrap();
    assert!(p.is_zero());
    assert_eq!(p.order, Some(BigInt::from(1)));
    assert!(c.project(&z[1..]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twisted_images_are_identified(fixture in 0usize..2, g in 0usize..8, xs in prop::collection::vec(-9i64..=9, 6)) {
        let arr = if fixture == 0 { z8_fixture() } else { z4_fixture() };
        let act = action(&arr);
        let g = g % arr.group.order();
        let c = modified_coinvariants(&act, Twist::Homology, false);
        let x: Vec<BigInt> = xs[..act.dim()].iter().map(|&v| BigInt::from(v)).collect();
        let m = act.modified(g, Twist::Homology);
        let gx: Vec<BigInt> = (0..act.dim())
            .map(|i| (0..act.dim()).map(|j| m[(i, j)].to_integer() * &x[j]).sum())
            .collect();
        prop_assert!(c.same_class(&x, &gx).unwrap());
    }
}
