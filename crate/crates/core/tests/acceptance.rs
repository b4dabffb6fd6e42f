//! One PASS/FAIL line per acceptance criterion. The target itself only fails
//! on internal inconsistencies; a FAIL line records a mismatch with the
//! published values.

use std::time::{Duration, Instant};

use fanpart_core::arrangement::{z8_fixture, z4_fixture, intersection_poset, main_arrangement, Arrangement};
use fanpart_core::coinvariants::{induced_action, modified_coinvariants, Twist};
use fanpart_core::exactlin::{smith_normal_form, ExactMatrix};
use fanpart_core::groups::quaternion_on_wn;
use fanpart_core::homology::{boundary_squares_vanish, deep_node_violations, order_complex, TopHomology};
use fanpart_core::obstruction::{
    build_sphere, enumerate_l_intersections, intersect_with_jpieces, obstruction_class, preimage_simplices, define_h,
    ObstructionCertificate,
};

const CASES: [(usize, usize); 5] = [(1, 2), (2, 1), (2, 2), (1, 3), (3, 1)];

struct Line {
    k: usize,
    pass: bool,
    detail: String,
    time: Duration,
}

fn report(lines: &[Line]) {
    for l in lines {
        let tag = if l.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag} ({:.2?}) {}", l.k, l.time, l.detail);
    }
}

// top homology is a kernel lattice, hence free; only the rank is reported
fn fixture(arr: &Arrangement) -> (usize, Vec<String>) {
    let p = intersection_poset(arr);
    let h = TopHomology::compute(arr, &p).expect("cell model");
    let act = induced_action(arr, &h).expect("action");
    assert!(act.is_representation(&arr.group));
    let c = modified_coinvariants(&act, Twist::Homology, false);
    (h.rank(), c.factors())
}

fn reference(c: &ObstructionCertificate, name: &str) -> Option<bool> {
    c.checks.iter().chain(&c.reference).find(|x| x.name == name).map(|x| x.passed)
}

fn lcg(state: &mut u64) -> i64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    ((*state >> 33) % 13) as i64 - 6
}

fn main() {
    let mut lines = Vec::new();

    let t = Instant::now();
    let (rank, factors) = fixture(&z8_fixture());
    let time = t.elapsed();
    lines.push(Line {
        k: 1,
        pass: rank == 2 && factors == ["Z2"] && time < Duration::from_secs(5),
        detail: format!("rank {rank}, coinvariants {factors:?}"),
        time,
    });

    let t = Instant::now();
    let (rank, factors) = fixture(&z4_fixture());
    let time = t.elapsed();
    lines.push(Line {
        k: 2,
        pass: rank == 6 && factors == ["Z", "Z"] && time < Duration::from_secs(10),
        detail: format!("rank {rank}, coinvariants {factors:?}"),
        time,
    });

    // criterion 3: one certificate per case
    let t3 = Instant::now();
    let mut certs = Vec::new();
    let mut pass3 = true;
    let mut d3 = Vec::new();
    for (a, b) in CASES {
        let t = Instant::now();
        let c = obstruction_class(a, b).expect("certificate");
        let dt = t.elapsed();
        // internal consistency: the cell-model rank is the poset count
        assert_eq!(c.homology.rank, c.homology.poset_rank, "({a},{b})");
        let ok = c.homology.rank == 5 * (a + b)
            && c.homology.torsion.is_empty()
            && c.coinvariants.factors == ["Z2", "Z4"]
            && c.obstruction.nonzero
            && c.obstruction.order.as_deref() == Some("2")
            && c.failed_checks().is_empty()
            && dt < Duration::from_secs(60);
        pass3 &= ok;
        d3.push(format!(
            "({a},{b}) rank {} {:?} class {} order {}",
            c.homology.rank,
            c.coinvariants.factors,
            if c.obstruction.nonzero { "nonzero" } else { "zero" },
            c.obstruction.order.clone().unwrap_or_else(|| "-".into())
        ));
        certs.push(((a, b), c));
    }
    lines.push(Line { k: 3, pass: pass3, detail: d3.join("; "), time: t3.elapsed() });

    let t = Instant::now();
    let mut pass4 = true;
    let mut d4 = Vec::new();
    for (a, b) in CASES {
        let n = 2 * a + 2 * b;
        let census = enumerate_l_intersections(a, b);
        let jm = intersect_with_jpieces(a, b).expect("valid parameters");
        let g = quaternion_on_wn(n).unwrap();
        let pre = preimage_simplices(a, b, &build_sphere(n), &define_h(n), &g);
        let ok = census.matches_table()
            && census.family_count() == 6
            && jm.is_v_w()
            && pre.simplices.len() == 16
            && pre.single_orbit
            && pre.points_are_v_w_star();
        pass4 &= ok;
        d4.push(format!(
            "({a},{b}) rows {:?} table {} v/w {} preimages {} orbit {} v*/w* {}",
            census.rows_present,
            census.matches_table(),
            jm.is_v_w(),
            pre.simplices.len(),
            pre.single_orbit,
            pre.points_are_v_w_star()
        ));
    }
    lines.push(Line { k: 4, pass: pass4, detail: d4.join("; "), time: t.elapsed() });

    let t = Instant::now();
    let mut pass5 = true;
    let mut d5 = Vec::new();
    for (a, b) in CASES {
        let arr = main_arrangement(a, b).unwrap();
        let p = intersection_poset(&arr);
        let v = deep_node_violations(&p, arr.degree());
        pass5 &= v.is_empty();
        d5.push(format!("({a},{b}) {} exceptions", v.len()));
    }
    lines.push(Line { k: 5, pass: pass5, detail: d5.join("; "), time: t.elapsed() });

    let t = Instant::now();
    let mut pass6 = true;
    let mut d6 = Vec::new();
    for ((a, b), c) in &certs {
        let chain = reference(c, "proportionality chain as printed");
        let agree = reference(c, "decompositions for s and -s agree in coinvariants");
        pass6 &= chain == Some(true) && agree == Some(true) && c.counts.translations >= 20;
        let show = |x: Option<bool>| x.map_or("n/a".to_string(), |b| b.to_string());
        d6.push(format!(
            "({a},{b}) chain {} agree {} ratio {}",
            show(chain),
            show(agree),
            c.obstruction.chain_ratio.clone().unwrap_or_else(|| "-".into())
        ));
    }
    lines.push(Line { k: 6, pass: pass6, detail: d6.join("; "), time: t.elapsed() });

    let t = Instant::now();
    let c12 = &certs[0].1;
    let robust = reference(c12, "verdict class != 0 survives every sign choice");
    lines.push(Line {
        k: 7,
        pass: robust == Some(true),
        detail: format!("(1,2) {} sign combinations", c12.counts.sign_combinations),
        time: t.elapsed(),
    });

    let t = Instant::now();
    let mut st = 11u64;
    let snf = (0..200).all(|k| {
        let (r, c) = (1 + k % 5, 1 + (k / 5) % 6);
        let xs: Vec<i64> = (0..r * c).map(|_| lcg(&mut st)).collect();
        let m = ExactMatrix::from_ints(r, c, &xs);
        smith_normal_form(&m).is_ok_and(|s| s.verify(&m))
    });
    let mut dd = (3..=8).all(|n| boundary_squares_vanish(&build_sphere(n).complex));
    for arr in [z8_fixture(), z4_fixture()].into_iter().chain(CASES.iter().map(|&(a, b)| main_arrangement(a, b).unwrap())) {
        let p = intersection_poset(&arr);
        dd &= (0..p.len()).all(|v| boundary_squares_vanish(&order_complex(&p, v)));
    }
    let rep = (2..=8).all(|n| {
        let g = quaternion_on_wn(n).unwrap();
        let m: Vec<ExactMatrix> = g.elements.iter().map(|e| e.matrix()).collect();
        (0..g.order()).all(|x| (0..g.order()).all(|y| &m[x] * &m[y] == m[g.mul(x, y)]))
    });
    let pass8 = snf && dd && rep;
    lines.push(Line { k: 8, pass: pass8, detail: format!("snf {snf}, dd {dd}, representation {rep}"), time: t.elapsed() });

    report(&lines);
    // these two are backed by independent oracles; the rest may FAIL honestly
    if !(lines[0].pass && lines[7].pass) {
        std::process::exit(1);
    }
}
