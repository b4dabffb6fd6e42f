//! Group action on the top homology, the determinant-twisted ("modified")
//! action, and coinvariant quotients computed by Smith normal form.
//!
//! Two twisted modules are available. [`Twist::Homology`] acts on `H` itself
//! by `g ∗ x = det(g)·(g·x)`. [`Twist::Cohomology`] is the contragredient
//! `g ∗ φ = det(g)·(φ ∘ g⁻¹)` on `Hom(H, Z)`, which is where point classes and
//! the obstruction cocycle live.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{Arrangement, HalfOpenSubspace, IntersectionPoset};
use crate::exactlin::{determinant, rref, sign, smith_normal_form, ExactMatrix, ExactVector, Rational, SmithForm};
use crate::groups::{ActionGroup, SignedPerm};
use crate::homology::{CellError, TopHomology};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoinvariantError {
    #[error("group element does not stabilize the subspace")]
    NotStabilized,
    #[error("order complex above the node is not a 0-sphere")]
    NotZeroSphere,
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error("class has {got} coordinates, expected {expected}")]
    Length { expected: usize, got: usize },
}

/// Sign of `det(g|_V)` on the carrier of `V`, via `det_ambient(g)·det(g|_{V⊥})`.
/// The complement basis is completed from RREF pivots of the equations.
pub fn orientation_sign(g: &SignedPerm, v: &HalfOpenSubspace) -> Result<i32, CoinvariantError> {
    let img = v.apply(g, "");
    if img.key() != v.key() {
        return Err(CoinvariantError::NotStabilized);
    }
    let n = v.ambient_dim;
    // V⊥ is the row space of the equations; g acts on it as on vectors
    let rows = v.equalities.row_vectors();
    let c = rows.len();
    if c == 0 {
        return Ok(g.det());
    }
    let basis_mat = ExactMatrix::from_cols(&rows, n);
    let images: Vec<ExactVector> = rows.iter().map(|r| g.apply_vec(r)).collect();
    let coords = solve_in_span(&basis_mat, &images);
    let d = determinant(&coords).expect("square");
    Ok(g.det() * sign(&d))
}

/// Direct determinant of `g` on the carrier basis; cross-check of [`orientation_sign`].
pub fn carrier_sign(g: &SignedPerm, v: &HalfOpenSubspace) -> Result<i32, CoinvariantError> {
    if v.apply(g, "").key() != v.key() {
        return Err(CoinvariantError::NotStabilized);
    }
    let n = v.ambient_dim;
    let b = ExactMatrix::from_cols(&v.basis, n);
    let images: Vec<ExactVector> = v.basis.iter().map(|x| g.apply_vec(x)).collect();
    let coords = solve_in_span(&b, &images);
    Ok(sign(&determinant(&coords).expect("square")))
}

fn solve_in_span(basis: &ExactMatrix, targets: &[ExactVector]) -> ExactMatrix {
    let k = basis.cols();
    let r = rref(&basis.transpose());
    let mut sub = ExactMatrix::zeros(k, k);
    for (i, &p) in r.pivots.iter().enumerate() {
        for j in 0..k {
            sub[(i, j)] = basis[(p, j)].clone();
        }
    }
    let inv = sub.inverse().expect("independent columns");
    let mut out = ExactMatrix::zeros(k, targets.len());
    for (j, t) in targets.iter().enumerate() {
        let rhs = ExactVector(r.pivots.iter().map(|&p| t[p].clone()).collect());
        let x = inv.mul_vec(&rhs);
        for i in 0..k {
            out[(i, j)] = x[i].clone();
        }
    }
    out
}

/// Sign by which `g` acts on the class `Ŝ⁰ ∗ V̂` of a codimension-one node
/// lying in exactly two maximal elements: the carrier sign times the action on
/// `H̃₀(S⁰)`, which is `−1` when `g` swaps the two elements.
pub fn join_sphere_sign(arr: &Arrangement, poset: &IntersectionPoset, g: usize, node: usize) -> Result<i32, CoinvariantError> {
    let nd = &poset.nodes[node];
    if nd.above.len() != 2 {
        return Err(CoinvariantError::NotZeroSphere);
    }
    let act = &arr.group.elements[g].action;
    let carrier = orientation_sign(act, &nd.subspace)?;
    let perm = &arr.element_permutation()[g];
    let (x, y) = (nd.above[0], nd.above[1]);
    let s0 = if perm[x] == x && perm[y] == y {
        1
    } else if perm[x] == y && perm[y] == x {
        -1
    } else {
        return Err(CoinvariantError::NotStabilized);
    };
    Ok(carrier * s0)
}

/// Matrices of every group element on `H` in the basis of a [`TopHomology`].
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub matrices: Vec<ExactMatrix>,
    pub dets: Vec<i32>,
    pub generators: Vec<usize>,
    pub names: Vec<String>,
}

pub fn induced_action(arr: &Arrangement, h: &TopHomology) -> Result<GroupAction, CoinvariantError> {
    let matrices = (0..arr.group.order()).map(|g| h.action_matrix(arr, g)).collect::<Result<Vec<_>, _>>()?;
    let dets = (0..arr.group.order()).map(|g| arr.group.det_character(g)).collect();
    Ok(GroupAction { matrices, dets, generators: arr.group.generators.clone(), names: h.names.clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Twist {
    Homology,
    Cohomology,
}

impl GroupAction {
    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.rows())
    }

    /// `M(g)M(h) = M(gh)` for all pairs.
    pub fn is_representation(&self, group: &ActionGroup) -> bool {
        (0..group.order()).all(|a| {
            (0..group.order()).all(|b| &self.matrices[a] * &self.matrices[b] == self.matrices[group.mul(a, b)])
        })
    }

    /// Matrix of `g∗` in the given twisted module.
    pub fn modified(&self, g: usize, twist: Twist) -> ExactMatrix {
        let d = Rational::from_integer(self.dets[g].into());
        match twist {
            Twist::Homology => self.matrices[g].scale(&d),
            Twist::Cohomology => self.matrices[g].inverse().expect("invertible").transpose().scale(&d),
        }
    }

    /// Columns `g∗e_i − e_i` for the chosen elements.
    pub fn relation_matrix(&self, twist: Twist, all_elements: bool) -> ExactMatrix {
        let r = self.dim();
        let elems: Vec<usize> = if all_elements { (0..self.matrices.len()).collect() } else { self.generators.clone() };
        let blocks: Vec<ExactMatrix> = elems.iter().map(|&g| self.modified(g, twist).sub(&ExactMatrix::identity(r))).collect();
        if blocks.is_empty() {
            ExactMatrix::zeros(r, 0)
        } else {
            ExactMatrix::hstack(&blocks, r)
        }
    }
}

/// `Z^r / im(relations)` presented by its Smith form.
#[derive(Clone, Debug)]
pub struct CoinvariantGroup {
    pub twist: Twist,
    pub dim: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
    smith: SmithForm,
}

pub fn modified_coinvariants(action: &GroupAction, twist: Twist, all_elements: bool) -> CoinvariantGroup {
    let rel = action.relation_matrix(twist, all_elements);
    let smith = smith_normal_form(&rel).expect("integral relations");
    let torsion: Vec<BigInt> = smith.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
    let dim = action.dim();
    CoinvariantGroup { twist, dim, torsion, free_rank: dim - smith.rank, smith }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectedClass {
    /// One coordinate per torsion factor (reduced) followed by the free coordinates.
    pub coords: Vec<BigInt>,
    /// `None` when the class has infinite order.
    pub order: Option<BigInt>,
}

impl ProjectedClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl CoinvariantGroup {
    /// Cyclic factors, e.g. `["Z2", "Z4", "Z"]`.
    pub fn factors(&self) -> Vec<String> {
        let mut out: Vec<String> = self.torsion.iter().map(|d| format!("Z{d}")).collect();
        out.extend(std::iter::repeat("Z".to_string()).take(self.free_rank));
        out
    }

    pub fn describe(&self) -> String {
        let f = self.factors();
        if f.is_empty() {
            "0".into()
        } else {
            f.join(" ⊕ ")
        }
    }

    pub fn is_isomorphic(&self, torsion: &[u64], free_rank: usize) -> bool {
        self.free_rank == free_rank
            && self.torsion.len() == torsion.len()
            && self.torsion.iter().zip(torsion).all(|(a, &b)| *a == BigInt::from(b))
    }

    pub fn project(&self, x: &[BigInt]) -> Result<ProjectedClass, CoinvariantError> {
        if x.len() != self.dim {
            return Err(CoinvariantError::Length { expected: self.dim, got: x.len() });
        }
        let xv = ExactVector::from_bigints(x);
        let y = self.smith.u.mul_vec(&xv);
        let diag = self.smith.diagonal();
        let mut coords = Vec::new();
        let mut order = Some(BigInt::one());
        for i in 0..self.dim {
            let yi = y[i].to_integer();
            if i < self.smith.rank {
                let d = &diag[i];
                if d.is_one() {
                    continue;
                }
                let c = yi.mod_floor(d);
                let ord = d / c.gcd(d);
                order = order.map(|o| o.lcm(&ord));
                coords.push(c);
            } else {
                if !yi.is_zero() {
                    order = None;
                }
                coords.push(yi);
            }
        }
        Ok(ProjectedClass { coords, order })
    }

    /// Whether `x` and `y` have the same image.
    pub fn same_class(&self, x: &[BigInt], y: &[BigInt]) -> Result<bool, CoinvariantError> {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        Ok(self.project(&d)?.is_zero())
    }
}

/// Integer column of a matrix as `i64`s, for reporting.
pub fn column_i64(m: &ExactMatrix, j: usize) -> Vec<i64> {
    (0..m.rows()).map(|i| m[(i, j)].to_integer().to_i64().unwrap_or(i64::MAX)).collect()
}
