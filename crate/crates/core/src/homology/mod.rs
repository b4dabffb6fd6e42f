//! Integral homology: simplicial complexes, order complexes of the poset, and
//! the top homology of the one-point compactified union with its group action.
//!
//! The union of a conical arrangement of dimension `d` has a cell structure in
//! dimensions `≤ d` only, so `H_{d+1}` vanishes and `H_d` is free: it is the
//! lattice of top chains killed by every wall equation.

mod cells;
mod simplicial;
mod zz;

pub use cells::{CellError, CellModel, ElementCells, IVec, LatticeBasis, Region};
pub use simplicial::{
    boundary_squares_vanish, order_complex, reduced_homology, top_degree_homology, HomologyGroup,
    SimplicialComplex,
};
pub use zz::{element_cycle, poset_rank, deep_node_violations, pair_cycle, zz_basis, ZZGenerator, ZZKind};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arrangement::{Arrangement, IntersectionPoset};
use crate::exactlin::{determinant, ExactMatrix, Rational};

/// `H_deg` of the compactified union with a chosen Z-basis.
#[derive(Clone, Debug)]
pub struct TopHomology {
    pub degree: usize,
    pub model: CellModel,
    pub basis: LatticeBasis,
    /// Names of the basis vectors.
    pub names: Vec<String>,
    pub zz: Vec<ZZGenerator>,
    /// Whether the poset-indexed cycles form a Z-basis (and are then used as `basis`).
    pub zz_is_basis: bool,
    pub poset_rank: usize,
    element_perm: Vec<Vec<usize>>,
}

impl TopHomology {
    pub fn compute(arr: &Arrangement, poset: &IntersectionPoset) -> Result<TopHomology, CellError> {
        let model = CellModel::build(arr, poset)?;
        let kernel = LatticeBasis::new(model.cycle_basis());
        let zz = zz_basis(arr, poset, &model);
        let zz_is_basis = zz.len() == kernel.rank() && zz.iter().all(|g| model.is_cycle(&g.cycle)) && {
            let cols: Vec<Vec<BigInt>> = zz.iter().map(|g| kernel.coordinates(&g.cycle)).collect::<Result<_, _>>()?;
            let r = cols.len();
            let mut m = ExactMatrix::zeros(r, r);
            for (j, c) in cols.iter().enumerate() {
                for i in 0..r {
                    m[(i, j)] = Rational::from_integer(c[i].clone());
                }
            }
            r == 0 || determinant(&m).map(|d| d.abs() == Rational::from_integer(1.into())).unwrap_or(false)
        };
        let (basis, names) = if zz_is_basis {
            (LatticeBasis::new(zz.iter().map(|g| g.cycle.clone()).collect()), zz.iter().map(|g| g.name.clone()).collect())
        } else {
            let names = (0..kernel.rank()).map(|i| format!("z{i}")).collect();
            (kernel, names)
        };
        Ok(TopHomology {
            degree: model.degree,
            poset_rank: poset_rank(poset, model.degree),
            model,
            basis,
            names,
            zz,
            zz_is_basis,
            element_perm: arr.element_permutation(),
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// Matrix of the group element `g` (index into the group) on `H_deg` in `basis`.
    pub fn action_matrix(&self, arr: &Arrangement, g: usize) -> Result<ExactMatrix, CellError> {
        let act = self.model.region_action(&arr.group.elements[g].action, &self.element_perm[g]);
        let r = self.rank();
        let mut m = ExactMatrix::zeros(r, r);
        for (j, z) in self.basis.vectors.iter().enumerate() {
            let img = CellModel::act(&act, z);
            let c = self.basis.coordinates(&img)?;
            for i in 0..r {
                m[(i, j)] = Rational::from_integer(c[i].clone());
            }
        }
        Ok(m)
    }

    pub fn coordinates(&self, z: &[i64]) -> Result<Vec<BigInt>, CellError> {
        self.basis.coordinates(z)
    }
}
