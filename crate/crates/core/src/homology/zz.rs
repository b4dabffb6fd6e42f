//! Explicit top cycles indexed by the poset: one per linear maximal element and
//! one per extra maximal element above each linear wall.

use serde::Serialize;

use crate::arrangement::{Arrangement, IntersectionPoset};
use crate::exactlin::primitive_i64;

use super::cells::{CellModel, IVec};
use super::simplicial::top_degree_homology;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum ZZKind {
    /// Fundamental class of a linear maximal element.
    Element { element: usize },
    /// Difference of two half-sheets glued along a common linear wall.
    Pair { wall: usize, first: usize, second: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ZZGenerator {
    pub name: String,
    pub kind: ZZKind,
    #[serde(skip)]
    pub cycle: IVec,
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub fn element_cycle(model: &CellModel, k: usize) -> IVec {
    let mut z = vec![0; model.region_count];
    for r in 0..model.elements[k].regions.len() {
        z[model.offsets[k] + r] = 1;
    }
    z
}

/// `ε·[D_W]` where `D_W` is the half of `W` bounded by the wall `v`, oriented
/// so its boundary induces the wall's own basis orientation.
fn half_sheet(model: &CellModel, poset: &IntersectionPoset, wall: usize, w: usize) -> Option<IVec> {
    let el = &model.elements[w];
    let vbasis: Vec<IVec> = poset.nodes[wall].subspace.basis.iter().map(|b| primitive_i64(&b.0)).collect();
    let h = el
        .hyperplanes
        .iter()
        .position(|h| vbasis.iter().all(|b| dot(h, b) == 0))?;
    let half = el.bounding == Some(h);
    let chosen: Vec<usize> = (0..el.regions.len()).filter(|&r| half || el.regions[r].signs[h] > 0).collect();
    let q = &el.regions[*chosen.first()?].point;
    let mut vecs = vec![q.clone()];
    vecs.extend(vbasis);
    let eps = -el.orientation(&vecs) as i64;
    let mut z = vec![0; model.region_count];
    for r in chosen {
        z[model.offsets[w] + r] = eps;
    }
    Some(z)
}

/// Cycle supported on elements `x` and `y` through their common linear wall.
pub fn pair_cycle(model: &CellModel, poset: &IntersectionPoset, x: usize, y: usize) -> Option<IVec> {
    let wall = poset.nodes.iter().position(|nd| {
        nd.subspace.is_linear() && nd.dim + 1 == model.degree && nd.above.contains(&x) && nd.above.contains(&y)
    })?;
    let a = half_sheet(model, poset, wall, x)?;
    let b = half_sheet(model, poset, wall, y)?;
    Some(a.iter().zip(&b).map(|(p, q)| p - q).collect())
}

pub fn zz_basis(arr: &Arrangement, poset: &IntersectionPoset, model: &CellModel) -> Vec<ZZGenerator> {
    let mut out = Vec::new();
    for (k, el) in arr.maximal_elements.iter().enumerate() {
        if el.is_linear() {
            out.push(ZZGenerator {
                name: format!("[{}]", el.label),
                kind: ZZKind::Element { element: k },
                cycle: element_cycle(model, k),
            });
        }
    }
    let deg = model.degree;
    for (v, node) in poset.nodes.iter().enumerate() {
        if deg == 0 || node.dim + 1 != deg || !node.subspace.is_linear() || node.above.len() < 2 {
            continue;
        }
        let w0 = node.above[0];
        let Some(a) = half_sheet(model, poset, v, w0) else { continue };
        for &wi in &node.above[1..] {
            let Some(b) = half_sheet(model, poset, v, wi) else { continue };
            out.push(ZZGenerator {
                name: format!("<{} | {}>", arr.maximal_elements[w0].label, arr.maximal_elements[wi].label),
                kind: ZZKind::Pair { wall: v, first: w0, second: wi },
                cycle: a.iter().zip(&b).map(|(p, q)| p - q).collect(),
            });
        }
    }
    out
}

/// Rank predicted by the poset: Σ over linear nodes `V` of the top reduced
/// homology of the order complex above `V` (the empty complex counts once).
pub fn poset_rank(poset: &IntersectionPoset, deg: usize) -> usize {
    poset
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, nd)| nd.subspace.is_linear())
        .map(|(v, nd)| if nd.dim == deg { 1 } else { top_degree_homology(poset, v, deg).rank })
        .sum()
}

/// Nodes `V` with `dim V ≤ deg − 2` whose order complex above has nonzero
/// reduced homology in degree `deg − 1 − dim V`, with that rank.
pub fn deep_node_violations(poset: &IntersectionPoset, deg: usize) -> Vec<(usize, usize)> {
    (0..poset.nodes.len())
        .filter(|&v| poset.nodes[v].dim + 2 <= deg)
        .map(|v| (v, top_degree_homology(poset, v, deg).rank))
        .filter(|&(_, r)| r != 0)
        .collect()
}
