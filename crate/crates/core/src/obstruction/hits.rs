//! Transversal hits of translated simplices with the arrangement, and the
//! decomposition of a broken point class by moving its carrier simplex.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arrangement::{k_form, make_j_pieces, Arrangement, HalfOpenSubspace};
use crate::exactlin::{determinant, frac, q, rref, sign, ExactMatrix, ExactVector, Rational};
use crate::homology::CellModel;

use super::census::{combine, expected_v, meet_vertices};
use super::ObstructionError;

/// One transversal intersection of an oriented 3-simplex with a maximal element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub simplex: usize,
    pub element: usize,
    /// Global region index in the cell model.
    pub region: usize,
    pub point: ExactVector,
    /// Local intersection number: `sign det[p₁−p₀, p₂−p₀, p₃−p₀, B_element, 𝟙]`.
    pub sign: i32,
}

const PRIMES: [i64; 16] = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179];

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Deterministic small translation in `W_n`: coordinate `i` is `c_i/(p_i·n)`
/// with distinct primes `p_i` and `c_i ∈ {±1, ±2, ±3}`, then centred.
pub fn translation(n: usize, seed: u64) -> ExactVector {
    let raw: Vec<Rational> = (0..n)
        .map(|i| {
            let r = splitmix(seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
            let mag = (r % 3) as i64 + 1;
            let c = if (r >> 8) & 1 == 0 { mag } else { -mag };
            frac(c, PRIMES[(i + seed as usize) % PRIMES.len()] * n as i64)
        })
        .collect();
    let mean: Rational = raw.iter().sum::<Rational>() / q(n as i64);
    ExactVector(raw.into_iter().map(|x| x - &mean).collect())
}

/// Unique solution of `Σ x_k cols_k = rhs`; `Ok(None)` if inconsistent.
fn solve_unique(cols: &[ExactVector], rhs: &ExactVector) -> Result<Option<Vec<Rational>>, ()> {
    let m = cols.len();
    let mut all = cols.to_vec();
    all.push(rhs.clone());
    let r = rref(&ExactMatrix::from_cols(&all, rhs.dim()));
    if r.pivots.contains(&m) {
        return Ok(None);
    }
    if r.rank < m {
        return Err(());
    }
    Ok(Some((0..m).map(|c| r.matrix[(c, m)].clone()).collect()))
}

fn ones(n: usize) -> ExactVector {
    ExactVector(vec![q(1); n])
}

/// Hits of the simplex `verts + s` with every maximal element. Any incidence
/// that is not a transversal point in the interior of a region is reported
/// as degenerate.
pub fn simplex_hits(
    arr: &Arrangement,
    model: &CellModel,
    verts: &[ExactVector],
    s: &ExactVector,
    simplex: usize,
) -> Result<Vec<Hit>, ObstructionError> {
    let n = arr.ambient_dim;
    let p: Vec<ExactVector> = verts.iter().map(|v| v + s).collect();
    let d: Vec<ExactVector> = p[1..].iter().map(|x| x - &p[0]).collect();
    let degenerate = |what: &str, k: usize| ObstructionError::Degenerate(format!("simplex {simplex}, element {k}: {what}"));
    let mut hits = Vec::new();
    for (k, el) in arr.maximal_elements.iter().enumerate() {
        let cells = &model.elements[k];
        let basis: Vec<ExactVector> = cells.basis.iter().map(|b| ExactVector::from_ints(b)).collect();
        let mut cols = d.clone();
        cols.extend(basis.iter().map(|b| -b));
        let sol = match solve_unique(&cols, &-&p[0]) {
            Ok(Some(x)) => x,
            Ok(None) => continue,
            Err(()) => return Err(degenerate("non-transversal spans", k)),
        };
        let lam = &sol[..d.len()];
        let mut bary = vec![q(1) - lam.iter().sum::<Rational>()];
        bary.extend(lam.iter().cloned());
        if bary.iter().any(|x| sign(x) < 0) {
            continue;
        }
        if bary.iter().any(|x| sign(x) == 0) {
            return Err(degenerate("meets the simplex boundary", k));
        }
        let mut x = p[0].clone();
        for (l, dv) in lam.iter().zip(&d) {
            x = &x + &dv.scale(l);
        }
        let vals: Vec<i32> = el.inequalities.iter().map(|g| sign(&g.dot(&x))).collect();
        if vals.iter().any(|&v| v < 0) {
            continue;
        }
        if vals.iter().any(|&v| v == 0) {
            return Err(degenerate("on the boundary inequality", k));
        }
        let Some(r) = cells.region_of_exact(&x) else {
            return Err(degenerate("on an internal wall", k));
        };
        let mut frame = d.clone();
        frame.extend(basis);
        frame.push(ones(n));
        let sg = sign(&determinant(&ExactMatrix::from_cols(&frame, n)).expect("square"));
        hits.push(Hit { simplex, element: k, region: model.offsets[k] + r, point: x, sign: sg });
    }
    Ok(hits)
}

/// Value of the point class of a hit on a top cycle: transversal counting.
pub fn pair_point_class(hit: &Hit, cycle: &[i64]) -> i64 {
    hit.sign as i64 * cycle[hit.region]
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidatePoint {
    pub name: String,
    pub element: String,
    pub point: ExactVector,
    pub member: bool,
    /// The moved form `g·(x₁+…+x_{a+b})` at the point (`None` for `L₂*`).
    pub form_value: Option<Rational>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BrokenDecomposition {
    pub candidates: Vec<CandidatePoint>,
    /// `v₁ ∈ L₁* ⟺ v₂ ∉ ε^{a+b}L₁*` and the same for `v₃, v₄`.
    pub exclusive_pairs: bool,
    /// `(a+b+1)f₁ = −(a+b+1)f₂ = (a+b−1)f₃ = −(a+b+1)f₄`.
    pub chain_as_printed: bool,
    /// `f₂ = −f₁` and `f₄ = −f₃`.
    pub chain_antisymmetric: bool,
    /// `f₃ / f₁`.
    pub chain_ratio: Option<Rational>,
    pub hits: Vec<Hit>,
    /// Candidate name of each hit, in hit order.
    pub realized: Vec<String>,
}

impl BrokenDecomposition {
    pub fn signs(&self) -> Vec<i32> {
        self.hits.iter().map(|h| h.sign).collect()
    }
}

/// Carrier simplex `ρ₁ = [u_a, u_{a+1}; u_{2a+b}, u_{2a+b+1}]` of `v`.
pub fn rho1(a: usize, b: usize) -> Vec<ExactVector> {
    let n = 2 * a + 2 * b;
    let u = |i: usize| super::sphere::u(n, i as isize);
    vec![u(a), u(a + 1), u(2 * a + b), u(2 * a + b + 1)]
}

/// Moves `ρ₁` by `s` and intersects its affine span with the spans of the five
/// elements through `v`. Hits with the arrangement are computed independently
/// and matched against these candidates.
pub fn decompose_broken_class(
    arr: &Arrangement,
    model: &CellModel,
    a: usize,
    b: usize,
    s: &ExactVector,
) -> Result<BrokenDecomposition, ObstructionError> {
    let n = 2 * a + 2 * b;
    if s.is_zero() {
        return Err(ObstructionError::Degenerate("zero translation".into()));
    }
    let (l1, l2) = make_j_pieces(n, a, b)?;
    let g = |k: usize, j: bool| arr.group.elements[arr.group.index_of(k % (2 * n), j)].action.clone();
    let kf = k_form(n, a, b);
    let moved = |k: usize, j: bool, label: &str| {
        let h = g(k, j);
        (l1.apply(&h, label), Some(h.apply_vec(&kf)))
    };
    let elems: Vec<(&str, (HalfOpenSubspace, Option<ExactVector>))> = vec![
        ("v1", (l1.clone(), Some(kf.clone()))),
        ("v2", moved(a + b, false, "e^(a+b) L1*")),
        ("v3", moved(a, true, "e^a j L1*")),
        ("v4", moved(2 * a + b, true, "e^(2a+b) j L1*")),
        ("y1", (l2.clone(), None)),
    ];
    let verts = rho1(a, b);
    let p: Vec<ExactVector> = verts.iter().map(|v| v + s).collect();
    let d: Vec<ExactVector> = p[1..].iter().map(|x| x - &p[0]).collect();
    let mut candidates = Vec::new();
    for (name, (el, form)) in &elems {
        // rows e·(p₀ + Dλ) = 0 over λ
        let rows = el.equalities.row_vectors();
        let cols: Vec<ExactVector> = d.iter().map(|dv| ExactVector(rows.iter().map(|e| e.dot(dv)).collect())).collect();
        let rhs = ExactVector(rows.iter().map(|e| -e.dot(&p[0])).collect());
        let lam = match solve_unique(&cols, &rhs) {
            Ok(Some(l)) => l,
            _ => return Err(ObstructionError::Degenerate(format!("span of {} not met in a point", el.label))),
        };
        let mut x = p[0].clone();
        for (l, dv) in lam.iter().zip(&d) {
            x = &x + &dv.scale(l);
        }
        let form_value = form.as_ref().map(|f| f.dot(&x));
        if form_value.as_ref().is_some_and(|v| sign(v) == 0) {
            return Err(ObstructionError::Degenerate(format!("{name} on the half-space wall")));
        }
        candidates.push(CandidatePoint {
            name: name.to_string(),
            element: el.label.clone(),
            member: el.contains_point(&x),
            point: x,
            form_value,
        });
    }
    let exclusive_pairs = candidates[0].member != candidates[1].member && candidates[2].member != candidates[3].member;
    let f: Vec<Rational> = candidates[..4].iter().map(|c| c.form_value.clone().unwrap_or_else(|| q(0))).collect();
    let (p1, m1) = (q((a + b + 1) as i64), q((a + b) as i64 - 1));
    let chain = |c4: Rational| {
        let vals = [&p1 * &f[0], -&p1 * &f[1], &m1 * &f[2], c4 * &f[3]];
        vals.iter().all(|v| *v == vals[0])
    };
    let chain_as_printed = chain(-p1.clone());
    let chain_antisymmetric = f[1] == -&f[0] && f[3] == -&f[2];
    let chain_ratio = (sign(&f[0]) != 0).then(|| &f[2] / &f[0]);

    // ρ₁ meets the union in further points away from v; keep the hits nearest v
    let v = expected_v(a, b);
    let mut anchors: BTreeSet<ExactVector> = BTreeSet::new();
    for el in &arr.maximal_elements {
        for lam in meet_vertices(&verts, &el.equalities.row_vectors(), &el.inequalities) {
            anchors.insert(combine(&verts, &lam));
        }
    }
    let dist = |x: &ExactVector, y: &ExactVector| {
        let d = x - y;
        d.dot(&d)
    };
    let hits: Vec<Hit> = simplex_hits(arr, model, &verts, s, 0)?
        .into_iter()
        .filter(|h| anchors.iter().all(|z| dist(&h.point, &v) <= dist(&h.point, z)))
        .collect();
    let realized = hits
        .iter()
        .map(|h| candidates.iter().find(|c| c.point == h.point).map_or_else(|| "other".to_string(), |c| c.name.clone()))
        .collect();
    Ok(BrokenDecomposition { candidates, exclusive_pairs, chain_as_printed, chain_antisymmetric, chain_ratio, hits, realized })
}
