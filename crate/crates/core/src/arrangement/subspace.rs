use std::fmt;

use num_traits::Zero;

use crate::exactlin::{kernel_basis, primitive, q, rref, sign, ExactMatrix, ExactVector, Rational};
use crate::groups::SignedPerm;

/// A linear subspace of R^N, optionally cut down by closed half-space
/// inequalities: `{x : E·x = 0, g_k·x ≥ 0}`.
///
/// Construction canonicalizes the cone: implicit equalities are promoted,
/// redundant or vanishing inequalities are dropped, equalities are kept in
/// RREF and each facet inequality is reduced modulo the equality row space and
/// scaled to a primitive integer form. Two subspaces are equal as sets iff
/// their [`SubspaceKey`]s agree.
#[derive(Clone, Debug)]
pub struct HalfOpenSubspace {
    pub equalities: ExactMatrix,
    pub inequalities: Vec<ExactVector>,
    pub ambient_dim: usize,
    pub label: String,
    /// Oriented carrier basis: primitive integer kernel basis of `equalities`.
    pub basis: Vec<ExactVector>,
    /// Basis of the lineality space (the whole carrier when linear).
    pub lineality: Vec<ExactVector>,
    /// Extreme rays modulo lineality (empty when linear).
    pub rays: Vec<ExactVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceKey {
    pub equalities: Vec<Vec<Rational>>,
    pub inequalities: Vec<Vec<Rational>>,
}

fn prim_vec(v: &[Rational]) -> ExactVector {
    ExactVector::from_bigints(&primitive(v))
}

fn reduce_mod_rows(f: &ExactVector, r: &ExactMatrix, pivots: &[usize]) -> ExactVector {
    let mut g = f.clone();
    for (i, &p) in pivots.iter().enumerate() {
        if g[p].is_zero() {
            continue;
        }
        let c = g[p].clone();
        for j in 0..g.dim() {
            let v = &r[(i, j)] * &c;
            g[j] -= v;
        }
    }
    g
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

fn to_global(basis: &[ExactVector], local: &ExactVector, n: usize) -> ExactVector {
    let mut x = ExactVector::zeros(n);
    for (b, c) in basis.iter().zip(local.iter()) {
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            let v = &b[i] * c;
            x[i] += v;
        }
    }
    x
}

impl HalfOpenSubspace {
    pub fn new(equalities: &[ExactVector], inequalities: &[ExactVector], ambient_dim: usize, label: impl Into<String>) -> Self {
        let label = label.into();
        let eq = ExactMatrix::from_rows(equalities, ambient_dim);
        let r = rref(&eq);
        let basis: Vec<ExactVector> = kernel_basis(&r.matrix).iter().map(|v| prim_vec(&v.0)).collect();
        let d = basis.len();

        // local coefficient rows of the inequalities, zero rows dropped
        let mut local: Vec<(ExactVector, ExactVector)> = Vec::new();
        for g in inequalities {
            assert_eq!(g.dim(), ambient_dim, "inequality dimension");
            let c: Vec<Rational> = basis.iter().map(|b| g.dot(b)).collect();
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            let c = prim_vec(&c);
            if !local.iter().any(|(l, _)| *l == c) {
                local.push((c, g.clone()));
            }
        }
        if local.is_empty() {
            return Self::linear_from_rref(r.matrix, r.rank, basis, ambient_dim, label);
        }

        let cmat = ExactMatrix::from_rows(&local.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>(), d);
        let lin_local = kernel_basis(&cmat);
        let rk = d - lin_local.len();
        let mut rays_local: Vec<ExactVector> = Vec::new();
        for subset in combinations(local.len(), rk - 1) {
            let mut rows: Vec<ExactVector> = subset.iter().map(|&i| local[i].0.clone()).collect();
            rows.extend(lin_local.iter().cloned());
            let ker = kernel_basis(&ExactMatrix::from_rows(&rows, d));
            if ker.len() != 1 {
                continue;
            }
            let base = prim_vec(&ker[0].0);
            for cand in [base.clone(), -&base] {
                if local.iter().all(|(c, _)| sign(&c.dot(&cand)) >= 0) && !rays_local.contains(&cand) {
                    rays_local.push(cand);
                }
            }
        }

        // span of the cone = lineality + rays
        let mut span_local = lin_local.clone();
        span_local.extend(rays_local.iter().cloned());
        let span_global: Vec<ExactVector> = span_local.iter().map(|v| to_global(&basis, v, ambient_dim)).collect();
        let new_eq = if span_global.is_empty() {
            ExactMatrix::identity(ambient_dim)
        } else {
            let ann = kernel_basis(&ExactMatrix::from_rows(&span_global, ambient_dim));
            ExactMatrix::from_rows(&ann, ambient_dim)
        };
        let nr = rref(&new_eq);
        let new_basis: Vec<ExactVector> = kernel_basis(&nr.matrix).iter().map(|v| prim_vec(&v.0)).collect();
        let eq_rows = ExactMatrix::from_rows(&nr.matrix.row_vectors()[..nr.rank], ambient_dim);

        let ray_rank = if rays_local.is_empty() { 0 } else { ExactMatrix::from_rows(&rays_local, d).rank() };
        let mut ineqs: Vec<ExactVector> = Vec::new();
        if ray_rank > 0 {
            for (c, g) in &local {
                let on_face: Vec<ExactVector> =
                    rays_local.iter().filter(|r| c.dot(r).is_zero()).cloned().collect();
                if on_face.len() == rays_local.len() {
                    continue; // implicit equality
                }
                let face_rank = if on_face.is_empty() { 0 } else { ExactMatrix::from_rows(&on_face, d).rank() };
                if face_rank + 1 != ray_rank {
                    continue; // not a facet
                }
                let red = reduce_mod_rows(g, &nr.matrix, &nr.pivots);
                let red = prim_vec(&red.0);
                if !ineqs.contains(&red) {
                    ineqs.push(red);
                }
            }
        }
        ineqs.sort();
        let lineality = lin_local.iter().map(|v| prim_vec(&to_global(&basis, v, ambient_dim).0)).collect();
        let mut rays: Vec<ExactVector> =
            rays_local.iter().map(|v| prim_vec(&to_global(&basis, v, ambient_dim).0)).collect();
        rays.sort();
        if ineqs.is_empty() {
            return Self::linear_from_rref(eq_rows, nr.rank, new_basis, ambient_dim, label);
        }
        HalfOpenSubspace { equalities: eq_rows, inequalities: ineqs, ambient_dim, label, basis: new_basis, lineality, rays }
    }

    fn linear_from_rref(r: ExactMatrix, rank: usize, basis: Vec<ExactVector>, n: usize, label: String) -> Self {
        let rows = r.row_vectors();
        let eq = ExactMatrix::from_rows(&rows[..rank], n);
        HalfOpenSubspace {
            equalities: eq,
            inequalities: vec![],
            ambient_dim: n,
            label,
            lineality: basis.clone(),
            basis,
            rays: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equalities.rows()
    }

    pub fn is_linear(&self) -> bool {
        self.inequalities.is_empty()
    }

    pub fn key(&self) -> SubspaceKey {
        SubspaceKey {
            equalities: self.equalities.row_vectors().into_iter().map(|v| v.0).collect(),
            inequalities: self.inequalities.iter().map(|v| v.0.clone()).collect(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn contains_point(&self, x: &ExactVector) -> bool {
        self.equalities.mul_vec(x).is_zero() && self.inequalities.iter().all(|g| sign(&g.dot(x)) >= 0)
    }

    /// Linear-span membership.
    pub fn span_contains(&self, x: &ExactVector) -> bool {
        self.equalities.mul_vec(x).is_zero()
    }

    pub fn contains(&self, other: &HalfOpenSubspace) -> bool {
        other.lineality.iter().all(|l| self.span_contains(l) && self.inequalities.iter().all(|g| g.dot(l).is_zero()))
            && other.rays.iter().all(|r| self.contains_point(r))
    }

    pub fn intersect(&self, other: &HalfOpenSubspace) -> HalfOpenSubspace {
        let mut eqs = self.equalities.row_vectors();
        eqs.extend(other.equalities.row_vectors());
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        HalfOpenSubspace::new(&eqs, &ineqs, self.ambient_dim, format!("{} & {}", self.label, other.label))
    }

    /// Image under a signed permutation; forms transform like vectors.
    pub fn apply(&self, g: &SignedPerm, label: impl Into<String>) -> HalfOpenSubspace {
        let eqs: Vec<ExactVector> = self.equalities.row_vectors().iter().map(|f| g.apply_vec(f)).collect();
        let ineqs: Vec<ExactVector> = self.inequalities.iter().map(|f| g.apply_vec(f)).collect();
        HalfOpenSubspace::new(&eqs, &ineqs, self.ambient_dim, label)
    }

    /// A point in the relative interior.
    pub fn relint_point(&self) -> ExactVector {
        let mut x = ExactVector::zeros(self.ambient_dim);
        for r in &self.rays {
            x = &x + r;
        }
        x
    }
}

pub fn canonical_equal(s1: &HalfOpenSubspace, s2: &HalfOpenSubspace) -> bool {
    s1.ambient_dim == s2.ambient_dim && s1.key() == s2.key()
}

impl fmt::Display for HalfOpenSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [dim {}{}]", self.label, self.dim(), if self.is_linear() { "" } else { ", half" })
    }
}

/// Form with integer coefficients.
pub fn form(coeffs: &[i64]) -> ExactVector {
    ExactVector(coeffs.iter().map(|&c| q(c)).collect())
}
