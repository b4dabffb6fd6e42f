//! The join sphere, the general-position map `h`, its meeting points with the
//! arrangement and the obstruction class of `h` on the fundamental cell.
//!
//! The cocycle value on the fundamental cell is evaluated by translating the
//! cell's image by a small generic vector and counting transversal hits with
//! the maximal elements; each hit is a point class, which pairs with a top
//! cycle by its coefficient on the hit region. The resulting functional on
//! `H` is projected into the twisted coinvariants of the dual module.

mod census;
mod hits;
mod sphere;

pub use census::{
    barycentric, degenerate_pair, edge_pairs, enumerate_l_intersections, expected_v, expected_w, intersect_with_jpieces,
    meet_vertices, preimage_simplices, simplex_points, table_families, JMeets, LCensus, PreimageSimplex, Preimages,
    TableFamily,
};
pub use hits::{
    decompose_broken_class, pair_point_class, rho1, simplex_hits, translation, BrokenDecomposition, CandidatePoint, Hit,
};
pub use sphere::{build_sphere, define_h, u, GeneralPositionMap, SphereComplex, Vertex};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{intersection_poset, main_arrangement, Arrangement, ArrangementError, IntersectionPoset};
use crate::coinvariants::{
    induced_action, modified_coinvariants, CoinvariantError, CoinvariantGroup, GroupAction, ProjectedClass, Twist,
};
use crate::exactlin::ExactVector;
use crate::homology::{CellError, TopHomology};

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error("need a, b >= 1 and n = 2a+2b >= 6 (got a={a}, b={b})")]
    BadParams { a: usize, b: usize },
    #[error("degenerate position: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Coinvariant(#[from] CoinvariantError),
}

/// Arrangement, homology and dual coinvariants for one parameter pair.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub a: usize,
    pub b: usize,
    pub n: usize,
    pub arr: Arrangement,
    pub poset: IntersectionPoset,
    pub homology: TopHomology,
    pub action: GroupAction,
    /// Coinvariants of `Hom(H, Z)` under the twisted contragredient action.
    pub coinvariants: CoinvariantGroup,
}

impl Pipeline {
    pub fn new(a: usize, b: usize) -> Result<Pipeline, ObstructionError> {
        if a == 0 || b == 0 || a + b < 3 {
            return Err(ObstructionError::BadParams { a, b });
        }
        let arr = main_arrangement(a, b)?;
        let poset = intersection_poset(&arr);
        let homology = TopHomology::compute(&arr, &poset)?;
        let action = induced_action(&arr, &homology)?;
        let coinvariants = modified_coinvariants(&action, Twist::Cohomology, false);
        Ok(Pipeline { a, b, n: 2 * a + 2 * b, arr, poset, homology, action, coinvariants })
    }

    /// Functional on `H` defined by a set of hits.
    pub fn pairing(&self, hits: &[Hit]) -> Vec<i64> {
        self.homology.basis.vectors.iter().map(|z| hits.iter().map(|h| pair_point_class(h, z)).sum()).collect()
    }

    pub fn class(&self, x: &[i64]) -> Result<ProjectedClass, ObstructionError> {
        Ok(self.coinvariants.project(&big(x))?)
    }

    /// `g ∗ x` in the dual module.
    pub fn twisted(&self, g: usize, x: &[i64]) -> Vec<i64> {
        let m = self.action.modified(g, Twist::Cohomology);
        let y = m.mul_vec(&ExactVector::from_ints(x));
        y.iter().map(|c| i64::try_from(c.to_integer()).expect("small coordinates")).collect()
    }

    /// Image of the fundamental cell: `[u_i, u_{i+1}; u_n, u_1]`, `i = 1..n`.
    pub fn fundamental_simplices(&self) -> Vec<Vec<ExactVector>> {
        let sphere = build_sphere(self.n);
        let h = define_h(self.n);
        sphere.fundamental_image().iter().map(|cell| cell.iter().map(|&v| h.image(v)).collect()).collect()
    }

    /// All hits of `f(e) + s`.
    pub fn cell_hits(&self, s: &ExactVector) -> Result<Vec<Hit>, ObstructionError> {
        let mut out = Vec::new();
        for (i, verts) in self.fundamental_simplices().iter().enumerate() {
            out.extend(simplex_hits(&self.arr, &self.homology.model, verts, s, i + 1)?);
        }
        Ok(out)
    }
}

fn big(x: &[i64]) -> Vec<BigInt> {
    x.iter().map(|&c| BigInt::from(c)).collect()
}

fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(p, q)| p + q).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSummary {
    pub nodes: usize,
    pub max_elements: usize,
    /// `(dimension, node count)` pairs.
    pub levels: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
    pub poset_rank: usize,
    pub basis: Vec<String>,
    pub zz_is_basis: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoinvariantSummary {
    pub factors: Vec<String>,
    pub homology_factors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionSummary {
    /// Values of the cocycle class on the homology basis.
    pub basis_coords: Vec<i64>,
    /// Coordinates in the invariant-factor decomposition of the coinvariants.
    pub factor_coords: Vec<String>,
    /// `None` when of infinite order.
    pub order: Option<String>,
    pub nonzero: bool,
    /// Class of the single broken point class `‖v‖`.
    pub v_coords: Vec<String>,
    /// Ratio `f₃/f₁` of the half-space forms at `v₃` and `v₁`.
    pub chain_ratio: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signs {
    /// Intersection signs of the points decomposing `‖v‖`.
    pub tau: Vec<i32>,
    /// Signs of `‖y₁‖` on the basis elements it pairs with.
    pub mu: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub census_simplices: usize,
    pub census_rows_present: usize,
    pub table_missing: usize,
    pub table_extra: usize,
    pub jpiece_points: usize,
    pub preimage_simplices: usize,
    pub unperturbed_points: usize,
    pub elements_per_point: Vec<usize>,
    pub translations: usize,
    pub degenerate_translations: usize,
    pub hits_per_cell: usize,
    pub sign_combinations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub version: String,
    pub params: Params,
    pub poset: PosetSummary,
    pub homology: HomologySummary,
    pub coinvariants: CoinvariantSummary,
    pub obstruction: ObstructionSummary,
    pub signs: Signs,
    pub counts: Counts,
    /// Internal consistency checks; any failure makes the verdict inconclusive.
    pub checks: Vec<Check>,
    /// Comparisons with the published values (informational).
    pub reference: Vec<Check>,
    pub verdict: String,
}

impl ObstructionCertificate {
    pub fn positive(&self) -> bool {
        self.verdict.starts_with("partition exists")
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

pub const TRANSLATIONS: usize = 20;

/// Generic translations: the first `count` seeds for which the moved
/// fundamental cell meets the arrangement transversally, with their hits.
pub fn generic_translations(p: &Pipeline, count: usize) -> (Vec<(ExactVector, Vec<Hit>)>, usize) {
    let mut out = Vec::new();
    let mut rejected = 0;
    let mut seed = 1u64;
    while out.len() < count && seed < 50 * count as u64 + 50 {
        let s = translation(p.n, seed);
        seed += 1;
        match p.cell_hits(&s) {
            Ok(h) => out.push((s, h)),
            Err(_) => rejected += 1,
        }
    }
    (out, rejected)
}


/// Class of `(ε^b + ε^a j)∗‖v‖` for sign choices on the summands of `‖v‖`
/// and on the `‖y₁‖` coordinates, plus a global orientation flip.
fn assembled(p: &Pipeline, parts: &[(i32, Vec<i64>)], mu_flip: &[usize], global: i64, y: Option<usize>) -> Vec<i64> {
    let g1 = p.arr.group.index_of(p.b % (2 * p.n), false);
    let g2 = p.arr.group.index_of(p.a % (2 * p.n), true);
    let mut v = vec![0i64; p.homology.rank()];
    for (k, (tau, theta)) in parts.iter().enumerate() {
        let mut th = theta.clone();
        if Some(k) == y {
            for &i in mu_flip {
                th[i] = -th[i];
            }
        }
        v = add(&v, &th.iter().map(|x| *tau as i64 * x).collect::<Vec<_>>());
    }
    let c = add(&p.twisted(g1, &v), &p.twisted(g2, &v));
    c.into_iter().map(|x| global * x).collect()
}

fn coords_str(c: &ProjectedClass) -> Vec<String> {
    c.coords.iter().map(|x| x.to_string()).collect()
}

pub fn obstruction_class(a: usize, b: usize) -> Result<ObstructionCertificate, ObstructionError> {
    let p = Pipeline::new(a, b)?;
    certify(&p)
}

pub fn certify(p: &Pipeline) -> Result<ObstructionCertificate, ObstructionError> {
    let (a, b, n) = (p.a, p.b, p.n);
    let group = &p.arr.group;
    let mut checks = Vec::new();
    let mut reference = Vec::new();

    // sphere and map
    let sphere = build_sphere(n);
    let hmap = define_h(n);
    let ranks = sphere.chain_ranks();
    let want = [4 * n * n, 8 * n * n, 4 * n * n + 4 * n, 4 * n];
    checks.push(check("sphere chain ranks", ranks == want, format!("{ranks:?}")));
    checks.push(check("h equivariant", hmap.is_equivariant(&sphere, group), ""));
    let rep = p.action.is_representation(group);
    checks.push(check("homology action is a representation", rep, ""));
    let hom_coinv = modified_coinvariants(&p.action, Twist::Homology, false);
    let all = modified_coinvariants(&p.action, Twist::Cohomology, true);
    checks.push(check(
        "generator relations equal all-element relations",
        all.factors() == p.coinvariants.factors(),
        p.coinvariants.describe(),
    ));

    // census
    let census = enumerate_l_intersections(a, b);
    reference.push(check(
        "simplices meeting L(alpha) are the six listed families",
        census.matches_table() && census.family_count() == 6,
        format!("rows present {:?}, missing {:?}, extra {:?}", census.rows_present, census.missing, census.extra),
    ));
    let jm = intersect_with_jpieces(a, b).ok_or(ObstructionError::BadParams { a, b })?;
    checks.push(check("h(S3) meets L1* and L2* exactly in {v, w}", jm.is_v_w(), format!("{} / {} points", jm.l1.len(), jm.l2.len())));
    let pre = preimage_simplices(a, b, &sphere, &hmap, group);
    checks.push(check(
        "preimage simplices form one orbit with points {v*, w*}",
        pre.single_orbit && pre.simplices.len() == 16 && pre.points_are_v_w_star(),
        format!("{} simplices", pre.simplices.len()),
    ));
    let ea_j = group.index_of(a % (2 * n), true);
    let w_from_v = group.elements[ea_j].action.apply_vec(&jm.v);
    checks.push(check("e^a j v = w", w_from_v == jm.w, ""));

    // unperturbed cell: finitely many points, each on several elements
    let mut zero_points: BTreeSet<ExactVector> = BTreeSet::new();
    for verts in p.fundamental_simplices() {
        for el in &p.arr.maximal_elements {
            for lam in meet_vertices(&verts, &el.equalities.row_vectors(), &el.inequalities) {
                zero_points.insert(census::combine(&verts, &lam));
            }
        }
    }
    let per_point: Vec<usize> =
        zero_points.iter().map(|x| p.arr.maximal_elements.iter().filter(|e| e.contains_point(x)).count()).collect();
    reference.push(check(
        "h(e) meets the union in 2 points, each on 5 elements",
        zero_points.len() == 2 && per_point.iter().all(|&c| c == 5),
        format!("{} points on {:?} elements", zero_points.len(), per_point),
    ));
    reference.push(check(
        "zero translation is degenerate",
        p.cell_hits(&ExactVector::zeros(n)).is_err(),
        "",
    ));

    // translations
    let (runs, rejected) = generic_translations(p, TRANSLATIONS);
    if runs.is_empty() {
        return Err(ObstructionError::Degenerate("no generic translation found".into()));
    }
    let classes: Vec<Vec<i64>> = runs.iter().map(|(_, h)| p.pairing(h)).collect();
    let phi = classes[0].clone();
    let class = p.class(&phi)?;
    let constant = classes.iter().all(|c| p.coinvariants.same_class(&big(c), &big(&phi)).unwrap_or(false));
    checks.push(check(
        "cocycle class independent of the translation",
        runs.len() >= TRANSLATIONS && constant,
        format!("{} translations, {} rejected", runs.len(), rejected),
    ));
    let hits_per_cell = runs[0].1.len();

    // the broken class ‖v‖, moved along the same translations
    let mut decs = Vec::new();
    let mut dec_error = None;
    for (s, _) in &runs {
        let pair = decompose_broken_class(&p.arr, &p.homology.model, a, b, s)
            .and_then(|d| Ok((d, decompose_broken_class(&p.arr, &p.homology.model, a, b, &-s)?)));
        match pair {
            Ok(x) => decs.push(x),
            Err(e) => {
                dec_error = Some(e.to_string());
                break;
            }
        }
    }
    checks.push(check(
        "carrier of v moves into general position",
        dec_error.is_none(),
        dec_error.clone().unwrap_or_default(),
    ));
    let mut tau = Vec::new();
    let mut mu = Vec::new();
    let mut robust = false;
    let mut k = 0;
    let mut v_coords = Vec::new();
    let mut chain_ratio = None;
    if dec_error.is_none() {
        let dec0 = &decs[0].0;
        let v_ref = p.pairing(&dec0.hits);
        let all = |f: &dyn Fn(&BrokenDecomposition) -> bool| decs.iter().all(|(d, e)| f(d) && f(e));
        checks.push(check("exactly one point of each pair {v1,v2}, {v3,v4} is realized", all(&|d| d.exclusive_pairs), ""));
        reference.push(check("proportionality chain as printed", all(&|d| d.chain_as_printed), ""));
        checks.push(check("f2 = -f1 and f4 = -f3", all(&|d| d.chain_antisymmetric), ""));
        let r0 = dec0.chain_ratio.clone();
        chain_ratio = r0.as_ref().map(|r| r.to_string());
        checks.push(check(
            "f3/f1 independent of the translation",
            r0.is_some() && all(&|d| d.chain_ratio == r0),
            chain_ratio.clone().unwrap_or_default(),
        ));
        let realized_ok = all(&|d| {
            let got: BTreeSet<&str> = d.realized.iter().map(String::as_str).collect();
            let want: BTreeSet<&str> = d.candidates.iter().filter(|c| c.member).map(|c| c.name.as_str()).collect();
            d.realized.len() == got.len() && got == want
        });
        checks.push(check("hits near v are exactly the realized candidates", realized_ok, dec0.realized.join(" ")));
        let mut both_sides = true;
        let mut v_constant = true;
        for (d, e) in &decs {
            let vs = p.pairing(&d.hits);
            both_sides &= p.coinvariants.same_class(&big(&vs), &big(&p.pairing(&e.hits)))?;
            v_constant &= p.coinvariants.same_class(&big(&vs), &big(&v_ref))?;
        }
        checks.push(check("decompositions for s and -s agree in coinvariants", both_sides, ""));
        checks.push(check("class of ||v|| independent of the translation", v_constant, ""));

        // moved hits are the group image of the point classes
        let s0 = &runs[0].0;
        let gb = group.index_of(b % (2 * n), false);
        let pushed = p.twisted(gb, &v_ref);
        let act = &group.elements[gb].action;
        let moved_verts: Vec<ExactVector> = rho1(a, b).iter().map(|x| act.apply_vec(x)).collect();
        let moved = simplex_hits(&p.arr, &p.homology.model, &moved_verts, &act.apply_vec(s0), 0)?;
        let near: Vec<Hit> = moved.into_iter().filter(|h| dec0.hits.iter().any(|d| act.apply_vec(&d.point) == h.point)).collect();
        checks.push(check("translated point classes follow the dual twisted action", p.pairing(&near) == pushed, ""));

        // ε^b‖v‖ + ε^a j‖v‖ against the direct evaluation; v and w coincide when a = b
        let parts: Vec<(i32, Vec<i64>)> =
            dec0.hits.iter().map(|h| (h.sign, p.pairing(&[Hit { sign: 1, ..h.clone() }]))).collect();
        let asm = assembled(p, &parts, &[], 1, None);
        let direct = p.coinvariants.same_class(&big(&asm), &big(&phi))?;
        let two_v: Vec<i64> = v_ref.iter().map(|x| 2 * x).collect();
        let twice = p.coinvariants.same_class(&big(&two_v), &big(&phi))?;
        if a != b {
            checks.push(check("direct evaluation equals e^b||v|| + e^a j||v||", direct, ""));
            checks.push(check("cocycle class equals 2||v||", twice, ""));
        } else {
            reference.push(check("direct evaluation equals e^b||v|| + e^a j||v|| (a = b: v*, w* coincide)", direct, ""));
            reference.push(check("cocycle class equals 2||v|| (a = b)", twice, ""));
        }
        v_coords = coords_str(&p.class(&v_ref)?);

        // ‖y₁‖ and its support
        let y_part = dec0.realized.iter().position(|r| r == "y1");
        let support: Vec<usize> = match y_part {
            Some(i) => (0..parts[i].1.len()).filter(|&j| parts[i].1[j] != 0).collect(),
            None => vec![],
        };
        if let Some(i) = y_part {
            mu = support.iter().map(|&j| (parts[i].0 as i64 * parts[i].1[j]).signum() as i32).collect();
        }
        let names: Vec<String> = support.iter().map(|&i| p.homology.names[i].clone()).collect();
        reference.push(check("||y1|| pairs with exactly two basis elements", support.len() == 2, names.join(", ")));

        // every choice of the undetermined signs
        tau = parts.iter().map(|x| x.0).collect();
        k = tau.len() + mu.len() + 1;
        robust = true;
        for mask in 0..(1u32 << k) {
            let flipped: Vec<(i32, Vec<i64>)> = parts
                .iter()
                .enumerate()
                .map(|(i, (t, th))| (if mask >> i & 1 == 1 { -t } else { *t }, th.clone()))
                .collect();
            let mu_flip: Vec<usize> =
                (0..mu.len()).filter(|&i| mask >> (tau.len() + i) & 1 == 1).map(|i| support[i]).collect();
            let global = if mask >> (k - 1) & 1 == 1 { -1 } else { 1 };
            let c = assembled(p, &flipped, &mu_flip, global, y_part);
            robust &= !p.class(&c)?.is_zero();
        }
    }

    let finite = class.order.is_some();
    checks.push(check("class has finite order", finite, class.order.as_ref().map_or("infinite".into(), |o| o.to_string())));
    let nonzero = !class.is_zero();
    reference.push(check("verdict class != 0 survives every sign choice", robust, format!("{} combinations", 1u32 << k)));
    reference.push(check("homology rank 5(a+b)", p.homology.rank() == 5 * (a + b), p.homology.rank().to_string()));
    reference.push(check("coinvariants Z2 + Z4", p.coinvariants.is_isomorphic(&[2, 4], 0), p.coinvariants.describe()));
    reference.push(check(
        "class nonzero of order 2",
        nonzero && class.order == Some(BigInt::from(2)),
        class.order.as_ref().map_or("infinite".into(), |o| o.to_string()),
    ));

    let verdict = if let Some(c) = checks.iter().find(|c| !c.passed) {
        format!("inconclusive: {} failed", c.name)
    } else if !nonzero {
        "inconclusive: obstruction class vanishes in coinvariants".to_string()
    } else {
        format!("partition exists for ({}/{n}, {}/{n}, {}/{n})", a, a + b, b)
    };

    Ok(ObstructionCertificate {
        version: env!("CARGO_PKG_VERSION").to_string(),
        params: Params { n, a, b },
        poset: PosetSummary {
            nodes: p.poset.nodes.len(),
            max_elements: p.arr.maximal_elements.len(),
            levels: p.poset.levels(),
        },
        homology: HomologySummary {
            degree: p.homology.degree,
            rank: p.homology.rank(),
            torsion: vec![],
            poset_rank: p.homology.poset_rank,
            basis: p.homology.names.clone(),
            zz_is_basis: p.homology.zz_is_basis,
        },
        coinvariants: CoinvariantSummary { factors: p.coinvariants.factors(), homology_factors: hom_coinv.factors() },
        obstruction: ObstructionSummary {
            basis_coords: phi,
            factor_coords: coords_str(&class),
            order: class.order.as_ref().map(|o| o.to_string()),
            nonzero,
            v_coords,
            chain_ratio,
        },
        signs: Signs { tau, mu },
        counts: Counts {
            census_simplices: census.meets.len(),
            census_rows_present: census.family_count(),
            table_missing: census.missing.len(),
            table_extra: census.extra.len(),
            jpiece_points: jm.l1.len(),
            preimage_simplices: pre.simplices.len(),
            unperturbed_points: zero_points.len(),
            elements_per_point: per_point,
            translations: runs.len(),
            degenerate_translations: rejected,
            hits_per_cell,
            sign_combinations: 1 << k,
        },
        checks,
        reference,
        verdict,
    })
}

