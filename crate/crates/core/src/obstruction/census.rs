//! Which simplices of `h(S³)` meet `L(α)` and the two J-pieces, and where the
//! meeting points come from in the fundamental cell.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arrangement::{make_j_pieces, make_l_alpha, xi_forms, ones, h1_form, HalfOpenSubspace};
use crate::exactlin::{frac, q, rref, ExactMatrix, ExactVector, Rational};
use crate::groups::ActionGroup;

use super::sphere::{u, wrap, GeneralPositionMap, SphereComplex, Vertex};

/// `[u_i, u_{i+1}; u_j, u_{j+1}]` with `i < j`, edges disjoint mod `n`.
pub fn edge_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if !degenerate_pair(n, i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn degenerate_pair(n: usize, i: usize, j: usize) -> bool {
    let s: BTreeSet<usize> = [i, wrap(i as isize + 1, n), j, wrap(j as isize + 1, n)].into_iter().collect();
    s.len() < 4
}

fn normalize(n: usize, i: usize, j: usize) -> (usize, usize) {
    let (i, j) = (wrap(i as isize, n), wrap(j as isize, n));
    (i.min(j), i.max(j))
}

pub fn simplex_points(n: usize, (i, j): (usize, usize)) -> Vec<ExactVector> {
    vec![u(n, i as isize), u(n, i as isize + 1), u(n, j as isize), u(n, j as isize + 1)]
}

pub(crate) fn combine(verts: &[ExactVector], lam: &[Rational]) -> ExactVector {
    let mut x = ExactVector::zeros(verts[0].dim());
    for (v, l) in verts.iter().zip(lam) {
        x = &x + &v.scale(l);
    }
    x
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in k - 1..m {
        for mut s in subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

/// Barycentric vertices of `{λ ∈ Δ : E·x = 0, G·x ≥ 0}` with `x = Σ λ_k v_k`.
pub fn meet_vertices(verts: &[ExactVector], eqs: &[ExactVector], ineqs: &[ExactVector]) -> Vec<Vec<Rational>> {
    let k = verts.len();
    // constraint rows over λ: inequality rows are λ_i ≥ 0 then g·x ≥ 0
    let mut ineq_rows: Vec<Vec<Rational>> = (0..k).map(|i| (0..k).map(|j| q((i == j) as i64)).collect()).collect();
    ineq_rows.extend(ineqs.iter().map(|g| verts.iter().map(|v| g.dot(v)).collect()));
    let mut base: Vec<Vec<Rational>> = vec![vec![q(1); k + 1]];
    for e in eqs {
        let mut row: Vec<Rational> = verts.iter().map(|v| e.dot(v)).collect();
        row.push(q(0));
        base.push(row);
    }
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for t in 0..=k {
        for tight in subsets(ineq_rows.len(), t) {
            let mut rows = base.clone();
            for &i in &tight {
                let mut r = ineq_rows[i].clone();
                r.push(q(0));
                rows.push(r);
            }
            let m = ExactMatrix::from_rows(&rows.into_iter().map(ExactVector).collect::<Vec<_>>(), k + 1);
            let r = rref(&m);
            if r.pivots.contains(&k) || r.rank != k {
                continue;
            }
            let lam: Vec<Rational> = (0..k).map(|c| r.matrix[(r.pivots.iter().position(|&p| p == c).unwrap(), k)].clone()).collect();
            let feasible = ineq_rows.iter().all(|row| row.iter().zip(&lam).map(|(a, b)| a * b).sum::<Rational>() >= q(0));
            if feasible {
                found.insert(lam);
            }
        }
    }
    found.into_iter().collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableFamily {
    pub row: usize,
    pub simplex: (usize, usize),
    pub degenerate: bool,
}

/// The six families of simplices listed as meeting `L(α)`.
pub fn table_families(a: usize, b: usize) -> Vec<TableFamily> {
    let n = 2 * a + 2 * b;
    let mut rows: Vec<(usize, usize, usize)> = vec![(1, a, 2 * a + b)];
    rows.extend((2 * a + b + 1..n).map(|r| (2, a, r)));
    rows.extend((1..a).map(|r| (3, r, 2 * a + b)));
    rows.push((4, a, n));
    rows.push((5, 2 * a + b, n));
    rows.extend((a + 1..2 * a + b).map(|r| (6, r, n)));
    rows.into_iter()
        .map(|(row, i, j)| {
            let simplex = normalize(n, i, j);
            TableFamily { row, simplex, degenerate: degenerate_pair(n, simplex.0, simplex.1) }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LCensus {
    /// Simplices meeting `L(α)` with the endpoints of the meeting segment.
    pub meets: Vec<((usize, usize), usize)>,
    pub table: Vec<TableFamily>,
    /// Table rows with at least one non-degenerate member.
    pub rows_present: Vec<usize>,
    pub missing: Vec<(usize, usize)>,
    pub extra: Vec<(usize, usize)>,
}

impl LCensus {
    pub fn matches_table(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.table.iter().all(|f| !f.degenerate)
    }

    pub fn family_count(&self) -> usize {
        self.rows_present.len()
    }
}

pub fn enumerate_l_intersections(a: usize, b: usize) -> LCensus {
    let n = 2 * a + 2 * b;
    let eqs = xi_forms(n, a, b).to_vec();
    let mut meets = Vec::new();
    for p in edge_pairs(n) {
        let v = meet_vertices(&simplex_points(n, p), &eqs, &[]);
        if !v.is_empty() {
            meets.push((p, v.len()));
        }
    }
    let table = table_families(a, b);
    let got: BTreeSet<(usize, usize)> = meets.iter().map(|m| m.0).collect();
    let want: BTreeSet<(usize, usize)> = table.iter().filter(|f| !f.degenerate).map(|f| f.simplex).collect();
    let rows_present: BTreeSet<usize> = table.iter().filter(|f| !f.degenerate && got.contains(&f.simplex)).map(|f| f.row).collect();
    LCensus {
        meets,
        missing: want.difference(&got).cloned().collect(),
        extra: got.difference(&want).cloned().collect(),
        table,
        rows_present: rows_present.into_iter().collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JMeets {
    /// `(simplex, point)` for every simplex meeting `L₁*`.
    pub l1: Vec<((usize, usize), ExactVector)>,
    pub l2: Vec<((usize, usize), ExactVector)>,
    /// Simplices meeting `L(α) ∩ H₁` but cut away by the half-space.
    pub excluded_by_halfspace: Vec<(usize, usize)>,
    pub v: ExactVector,
    pub w: ExactVector,
}

impl JMeets {
    /// Both pieces are met exactly in the two points `{v, w}`.
    pub fn is_v_w(&self) -> bool {
        let pts = |s: &[((usize, usize), ExactVector)]| -> BTreeSet<ExactVector> { s.iter().map(|x| x.1.clone()).collect() };
        let want: BTreeSet<ExactVector> = [self.v.clone(), self.w.clone()].into_iter().collect();
        self.l1.len() == 2 && self.l2.len() == 2 && pts(&self.l1) == want && pts(&self.l2) == want
    }
}

pub fn expected_v(a: usize, b: usize) -> ExactVector {
    let n = 2 * a + 2 * b;
    let c = |x: usize| frac(x as i64, n as i64);
    combine(
        &[u(n, a as isize), u(n, a as isize + 1), u(n, (2 * a + b) as isize), u(n, (2 * a + b + 1) as isize)],
        &[c(a), c(b), c(a), c(b)],
    )
}

pub fn expected_w(a: usize, b: usize) -> ExactVector {
    let n = 2 * a + 2 * b;
    let c = |x: usize| frac(x as i64, n as i64);
    combine(
        &[u(n, (a + b) as isize), u(n, (a + b + 1) as isize), u(n, n as isize), u(n, 1)],
        &[c(b), c(a), c(b), c(a)],
    )
}

fn cone_meets(n: usize, el: &HalfOpenSubspace) -> Vec<((usize, usize), ExactVector)> {
    let eqs = el.equalities.row_vectors();
    let mut out = Vec::new();
    for p in edge_pairs(n) {
        let verts = simplex_points(n, p);
        for lam in meet_vertices(&verts, &eqs, &el.inequalities) {
            out.push((p, combine(&verts, &lam)));
        }
    }
    out
}

pub fn intersect_with_jpieces(a: usize, b: usize) -> Option<JMeets> {
    let n = 2 * a + 2 * b;
    let (l1, l2) = make_j_pieces(n, a, b).ok()?;
    let l1m = cone_meets(n, &l1);
    let l2m = cone_meets(n, &l2);
    let mut eqs = xi_forms(n, a, b).to_vec();
    eqs.push(ones(n));
    eqs.push(h1_form(n, a, b));
    let lh = HalfOpenSubspace::new(&eqs, &[], n, "L(alpha)&H1");
    let met: BTreeSet<(usize, usize)> = l1m.iter().map(|x| x.0).collect();
    let excluded: Vec<(usize, usize)> = cone_meets(n, &lh).into_iter().map(|x| x.0).filter(|p| !met.contains(p)).collect();
    let _ = make_l_alpha(n, a, b).ok()?;
    Some(JMeets { l1: l1m, l2: l2m, excluded_by_halfspace: excluded, v: expected_v(a, b), w: expected_w(a, b) })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PreimageSimplex {
    pub cell: [String; 4],
    /// Which target simplex: 1 for the carrier of `v`, 2 for that of `w`.
    pub target: usize,
    /// Group element `g` with `g·σ = cell`, as a word `(k, j)`.
    pub word: (usize, bool),
    /// Barycentric coordinates in `σ` of the pulled-back meeting point.
    pub point_in_sigma: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Preimages {
    pub simplices: Vec<PreimageSimplex>,
    pub sigma: [String; 4],
    pub single_orbit: bool,
    pub v_star: Vec<Rational>,
    pub w_star: Vec<Rational>,
    /// Distinct pulled-back points.
    pub points: Vec<Vec<Rational>>,
}

impl Preimages {
    pub fn points_are_v_w_star(&self) -> bool {
        let want: BTreeSet<Vec<Rational>> = [self.v_star.clone(), self.w_star.clone()].into_iter().collect();
        self.points.iter().cloned().collect::<BTreeSet<_>>() == want
    }
}

/// Top cells of the sphere mapped onto the carriers of `v` and `w`, the group
/// elements moving `σ = [a_{a+b}, a_{a+b+1}; b₁, b₂]` onto them, and the
/// meeting points pulled back into `σ`.
pub fn preimage_simplices(a: usize, b: usize, sphere: &SphereComplex, hmap: &GeneralPositionMap, group: &ActionGroup) -> Preimages {
    let n = 2 * a + 2 * b;
    let m = 2 * n;
    let targets = [
        ((a, 2 * a + b), expected_v(a, b)),
        ((a + b, n), expected_w(a, b)),
    ];
    let sigma = [Vertex::A(a + b), Vertex::A(a + b + 1), Vertex::B(1), Vertex::B(2)];
    let mut simplices = Vec::new();
    let mut single_orbit = true;
    let mut points: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for i in 1..=m {
        for j in 1..=m {
            let cell = [Vertex::A(i), Vertex::A(wrap(i as isize + 1, m)), Vertex::B(j), Vertex::B(wrap(j as isize + 1, m))];
            let img: BTreeSet<usize> = cell.iter().map(|&v| hmap.vertex_index(v)).collect();
            for (t, ((p, r), pt)) in targets.iter().enumerate() {
                let want: BTreeSet<usize> =
                    [*p, wrap(*p as isize + 1, n), *r, wrap(*r as isize + 1, n)].into_iter().collect();
                if img != want {
                    continue;
                }
                // barycentric coordinates of the target point on this cell
                let verts: Vec<ExactVector> = cell.iter().map(|&v| hmap.image(v)).collect();
                let lam = barycentric(&verts, pt);
                let g = (0..group.order()).find(|&g| {
                    let moved: BTreeSet<Vertex> = sigma.iter().map(|&v| sphere.act(group, g, v)).collect();
                    moved == cell.iter().cloned().collect()
                });
                let Some(g) = g else {
                    single_orbit = false;
                    continue;
                };
                // pull back: the σ-vertex sent to cell[k] receives lam[k]
                let mut back = vec![q(0); 4];
                for (si, &sv) in sigma.iter().enumerate() {
                    let tv = sphere.act(group, g, sv);
                    let k = cell.iter().position(|&c| c == tv).unwrap();
                    back[si] = lam[k].clone();
                }
                points.insert(back.clone());
                simplices.push(PreimageSimplex {
                    cell: cell.map(|v| v.to_string()),
                    target: t + 1,
                    word: group.elements[g].word(),
                    point_in_sigma: back,
                });
            }
        }
    }
    let c = |x: usize| frac(x as i64, n as i64);
    Preimages {
        simplices,
        sigma: sigma.map(|v| v.to_string()),
        single_orbit,
        v_star: vec![c(a), c(b), c(a), c(b)],
        w_star: vec![c(b), c(a), c(b), c(a)],
        points: points.into_iter().collect(),
    }
}

/// Barycentric coordinates of `x` with respect to affinely independent `verts`.
pub fn barycentric(verts: &[ExactVector], x: &ExactVector) -> Vec<Rational> {
    let k = verts.len();
    let dim = x.dim();
    let mut rows: Vec<ExactVector> = Vec::new();
    let mut r0 = vec![q(1); k];
    r0.push(q(1));
    rows.push(ExactVector(r0));
    for i in 0..dim {
        let mut r: Vec<Rational> = verts.iter().map(|v| v[i].clone()).collect();
        r.push(x[i].clone());
        rows.push(ExactVector(r));
    }
    let r = rref(&ExactMatrix::from_rows(&rows, k + 1));
    assert!(!r.pivots.contains(&k) && r.rank == k, "point not in the affine span");
    (0..k).map(|c| r.matrix[(r.pivots.iter().position(|&p| p == c).unwrap(), k)].clone()).collect()
}
