//! Report rendering, JSON certificates, fixtures and the self-test behind the
//! `fanpart` binary.

mod selftest;

pub use selftest::{run_selftest, SelftestResult};

use std::fmt::Write as _;
use std::time::Instant;

use fanpart_core::arrangement::{z8_fixture, z4_fixture, intersection_poset, Arrangement};
use fanpart_core::coinvariants::{induced_action, modified_coinvariants, Twist};
use fanpart_core::homology::TopHomology;
use fanpart_core::obstruction::{obstruction_class, ObstructionCertificate, ObstructionError};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

/// Certificate as written to disk. Everything except `timing` is a pure
/// function of the parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCertificate {
    pub tool: String,
    #[serde(flatten)]
    pub certificate: ObstructionCertificate,
    pub timing: Timing,
}

pub fn compute(a: usize, b: usize) -> Result<JsonCertificate, ObstructionError> {
    let t = Instant::now();
    let certificate = obstruction_class(a, b)?;
    Ok(JsonCertificate {
        tool: "fanpart".into(),
        certificate,
        timing: Timing { elapsed_ms: t.elapsed().as_millis() as u64 },
    })
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn plus(f: &[String]) -> String {
    if f.is_empty() {
        "0".into()
    } else {
        f.join(" (+) ")
    }
}

/// Staged report following the eight steps of the computation.
pub fn render_report(j: &JsonCertificate, verbose: bool) -> String {
    let c = &j.certificate;
    let (n, a, b) = (c.params.n, c.params.a, c.params.b);
    let mut s = String::new();
    let _ = writeln!(s, "fanpart {}: a = {a}, b = {b}, n = {n}", c.version);
    let _ = writeln!(s, "Step 1. arrangement: {} maximal elements under Q_{}", c.poset.max_elements, 4 * n);
    let levels: Vec<String> = c.poset.levels.iter().map(|(d, k)| format!("dim {d}: {k}")).collect();
    let _ = writeln!(s, "Step 2. intersection poset: {} nodes ({})", c.poset.nodes, levels.join(", "));
    let _ = writeln!(
        s,
        "Step 3. H_{} of the compactified union: rank {} (poset count {}), {} basis",
        c.homology.degree,
        c.homology.rank,
        c.homology.poset_rank,
        if c.homology.zz_is_basis { "poset-indexed" } else { "kernel" }
    );
    let _ = writeln!(
        s,
        "Step 4. twisted coinvariants: {} (homology side: {})",
        plus(&c.coinvariants.factors),
        plus(&c.coinvariants.homology_factors)
    );
    let _ = writeln!(
        s,
        "Step 5. sphere S^3 = P_{} * P_{}, equivariant map h: a_i -> u_i, b_i -> u_(i-1)",
        2 * n,
        2 * n
    );
    let _ = writeln!(
        s,
        "Step 6. h(S^3) meets L(alpha) in {} simplices ({} table rows); {} points on each J-piece; {} preimage simplices",
        c.counts.census_simplices, c.counts.census_rows_present, c.counts.jpiece_points, c.counts.preimage_simplices
    );
    let _ = writeln!(
        s,
        "Step 7. cocycle on the fundamental cell: {} hits over {} translations; values {:?}",
        c.counts.hits_per_cell, c.counts.translations, c.obstruction.basis_coords
    );
    let order = c.obstruction.order.clone().unwrap_or_else(|| "infinite".into());
    let _ = writeln!(
        s,
        "Step 8. class coordinates [{}], order {order}; tau {:?}, mu {:?}",
        c.obstruction.factor_coords.join(", "),
        c.signs.tau,
        c.signs.mu
    );
    if verbose {
        for ch in &c.checks {
            let _ = writeln!(s, "  [{}] {} {}", mark(ch.passed), ch.name, ch.detail);
        }
        for ch in &c.reference {
            let _ = writeln!(s, "  [{}] (reference) {} {}", mark(ch.passed), ch.name, ch.detail);
        }
    } else {
        for ch in c.checks.iter().filter(|ch| !ch.passed) {
            let _ = writeln!(s, "  [FAIL] {} {}", ch.name, ch.detail);
        }
    }
    let class = if c.obstruction.nonzero { "nonzero" } else { "zero" };
    let _ = writeln!(
        s,
        "coinvariants {}; class {class}, order {order}; {}",
        plus(&c.coinvariants.factors),
        c.verdict
    );
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub version: String,
    pub name: String,
    pub degree: usize,
    pub rank: usize,
    pub factors: Vec<String>,
    pub expected_rank: usize,
    pub expected_factors: Vec<String>,
    pub matches: bool,
}

pub fn fixture(name: &str) -> Option<(Arrangement, usize, Vec<String>)> {
    match name {
        "z8" => Some((z8_fixture(), 2, vec!["Z2".into()])),
        "z4" => Some((z4_fixture(), 6, vec!["Z".into(), "Z".into()])),
        _ => None,
    }
}

pub fn run_example(name: &str) -> Option<ExampleReport> {
    let (arr, expected_rank, expected_factors) = fixture(name)?;
    let poset = intersection_poset(&arr);
    let h = TopHomology::compute(&arr, &poset).expect("fixture cell model");
    let act = induced_action(&arr, &h).expect("fixture action");
    let factors = modified_coinvariants(&act, Twist::Homology, false).factors();
    Some(ExampleReport {
        version: env!("CARGO_PKG_VERSION").into(),
        name: name.into(),
        degree: h.degree,
        rank: h.rank(),
        matches: h.rank() == expected_rank && factors == expected_factors,
        factors,
        expected_rank,
        expected_factors,
    })
}

pub fn render_example(r: &ExampleReport) -> String {
    let mut s = format!("H{} rank {}; coinvariants {}", r.degree, r.rank, plus(&r.factors));
    if r.matches {
        s.push_str(" -- MATCHES PAPER\n");
    } else {
        let _ = writeln!(
            s,
            " -- DIFFERS FROM PAPER (expected rank {}, coinvariants {})",
            r.expected_rank,
            plus(&r.expected_factors)
        );
    }
    s
}
