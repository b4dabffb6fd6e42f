//! Half-open subspaces, the equivariant arrangement generated by a few seeds,
//! and its intersection poset.

mod poset;
mod subspace;

pub use poset::{intersection_poset, IntersectionPoset, PosetNode};
pub use subspace::{canonical_equal, form, HalfOpenSubspace, SubspaceKey};

use std::collections::HashMap;

use thiserror::Error;

use crate::exactlin::ExactVector;
use crate::groups::{cyclic_shift_group, quaternion_on_wn, ActionGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("need a >= 1 and b >= 1 (got a={a}, b={b})")]
    BadBlocks { a: usize, b: usize },
    #[error("n must equal 2a+2b (n={n}, a={a}, b={b})")]
    BadN { n: usize, a: usize, b: usize },
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub maximal_elements: Vec<HalfOpenSubspace>,
    pub group: ActionGroup,
    pub ambient_dim: usize,
    /// For each maximal element: (seed index, group element) producing it first.
    pub origins: Vec<(usize, usize)>,
}

impl Arrangement {
    pub fn degree(&self) -> usize {
        self.maximal_elements.iter().map(|m| m.dim()).max().unwrap_or(0)
    }

    pub fn find(&self, s: &HalfOpenSubspace) -> Option<usize> {
        let key = s.key();
        self.maximal_elements.iter().position(|m| m.key() == key)
    }

    /// `perm[g][k]` = index of `g·M_k`.
    pub fn element_permutation(&self) -> Vec<Vec<usize>> {
        let index: HashMap<SubspaceKey, usize> =
            self.maximal_elements.iter().enumerate().map(|(i, m)| (m.key(), i)).collect();
        self.group
            .elements
            .iter()
            .map(|g| {
                self.maximal_elements
                    .iter()
                    .map(|m| index[&m.apply(&g.action, "").key()])
                    .collect()
            })
            .collect()
    }
}

/// Distinct group images of the seeds, with elements contained in others removed.
pub fn orbit_closure(group: &ActionGroup, seeds: &[HalfOpenSubspace]) -> Arrangement {
    let mut elems: Vec<HalfOpenSubspace> = Vec::new();
    let mut origins = Vec::new();
    let mut index: HashMap<SubspaceKey, usize> = HashMap::new();
    for (si, seed) in seeds.iter().enumerate() {
        for g in 0..group.order() {
            let el = &group.elements[g];
            let label = if g == 0 { seed.label.clone() } else { format!("{}·{}", el, seed.label) };
            let img = seed.apply(&el.action, label);
            let key = img.key();
            if index.contains_key(&key) {
                continue;
            }
            index.insert(key, elems.len());
            elems.push(img);
            origins.push((si, g));
        }
    }
    let keep: Vec<bool> = (0..elems.len())
        .map(|i| !(0..elems.len()).any(|j| j != i && elems[j].contains(&elems[i]) && !elems[i].contains(&elems[j])))
        .collect();
    let (maximal_elements, origins) = elems
        .into_iter()
        .zip(origins)
        .zip(keep)
        .filter_map(|(e, k)| if k { Some(e) } else { None })
        .unzip();
    Arrangement { maximal_elements, group: group.clone(), ambient_dim: group.ambient_dim, origins }
}

fn check_params(n: usize, a: usize, b: usize) -> Result<(), ArrangementError> {
    if a == 0 || b == 0 {
        return Err(ArrangementError::BadBlocks { a, b });
    }
    if n != 2 * a + 2 * b {
        return Err(ArrangementError::BadN { n, a, b });
    }
    Ok(())
}

/// Indicator form of the 1-based coordinate block `lo..=hi`.
pub fn block_form(n: usize, lo: usize, hi: usize) -> ExactVector {
    let mut v = vec![0; n];
    for i in lo..=hi {
        v[i - 1] = 1;
    }
    form(&v)
}

pub fn ones(n: usize) -> ExactVector {
    form(&vec![1; n])
}

/// ξ₁, ξ₂, ξ₃ with block sizes a, a+b, b.
pub fn xi_forms(n: usize, a: usize, b: usize) -> [ExactVector; 3] {
    [block_form(n, 1, a), block_form(n, a + 1, 2 * a + b), block_form(n, 2 * a + b + 1, n)]
}

/// (a+b)(x_a − x_{2a+b} + x_1 − x_{a+b+1}) + x_{a+1} − x_{2a+b+1} + x_n − x_{a+b},
/// accumulated coefficient-wise since indices may coincide.
pub fn h1_form(n: usize, a: usize, b: usize) -> ExactVector {
    let mut v = vec![0i64; n];
    let c = (a + b) as i64;
    let mut add = |i: usize, x: i64| v[(i + n - 1) % n] += x;
    add(a, c);
    add(2 * a + b, -c);
    add(1, c);
    add(a + b + 1, -c);
    add(a + 1, 1);
    add(2 * a + b + 1, -1);
    add(n, 1);
    add(a + b, -1);
    form(&v)
}

pub fn h2_form(n: usize, a: usize, b: usize) -> ExactVector {
    block_form(n, a + 1, a + b)
}

pub fn k_form(n: usize, a: usize, b: usize) -> ExactVector {
    block_form(n, 1, a + b)
}

pub fn make_l_alpha(n: usize, a: usize, b: usize) -> Result<HalfOpenSubspace, ArrangementError> {
    check_params(n, a, b)?;
    let mut eqs = xi_forms(n, a, b).to_vec();
    eqs.push(ones(n));
    Ok(HalfOpenSubspace::new(&eqs, &[], n, "L(alpha)"))
}

pub fn make_j_pieces(n: usize, a: usize, b: usize) -> Result<(HalfOpenSubspace, HalfOpenSubspace), ArrangementError> {
    check_params(n, a, b)?;
    let mut eqs = xi_forms(n, a, b).to_vec();
    eqs.push(ones(n));
    let mut e1 = eqs.clone();
    e1.push(h1_form(n, a, b));
    let l1 = HalfOpenSubspace::new(&e1, &[k_form(n, a, b)], n, "L1*");
    eqs.push(h2_form(n, a, b));
    let l2 = HalfOpenSubspace::new(&eqs, &[], n, "L2*");
    Ok((l1, l2))
}

/// A(J, α) for n = 2a+2b under Q_{4n}.
pub fn main_arrangement(a: usize, b: usize) -> Result<Arrangement, ArrangementError> {
    let n = 2 * a + 2 * b;
    let (l1, l2) = make_j_pieces(n, a, b)?;
    let group = quaternion_on_wn(n).map_err(|_| ArrangementError::BadBlocks { a, b })?;
    Ok(orbit_closure(&group, &[l1, l2]))
}

/// The Z₈ fixture: orbit of {x1+x2 = x3+x4 = x5+x6 = x7+x8 = 0} in R⁸.
pub fn z8_fixture() -> Arrangement {
    let eqs = [form(&[1, 1, 0, 0, 0, 0, 0, 0]), form(&[0, 0, 1, 1, 0, 0, 0, 0]), form(&[0, 0, 0, 0, 1, 1, 0, 0]), form(&[0, 0, 0, 0, 0, 0, 1, 1])];
    let l = HalfOpenSubspace::new(&eqs, &[], 8, "L");
    let g = cyclic_shift_group(8, 8, &[2, 3, 4, 5, 6, 7, 8, 1]).expect("valid shift");
    orbit_closure(&g, &[l])
}

/// The Z₄ fixture on R⁴ ⊕ R⁴.
pub fn z4_fixture() -> Arrangement {
    let eqs = [
        form(&[1, 0, 0, 0, 0, 0, 0, 0]),
        form(&[0, 0, 0, 0, 1, 0, 0, 0]),
        form(&[1, 1, 1, 1, 0, 0, 0, 0]),
        form(&[0, 0, 0, 0, 1, 1, 1, 1]),
        form(&[0, 0, 1, 0, 0, 0, 1, 0]),
    ];
    let l = HalfOpenSubspace::new(&eqs, &[], 8, "L");
    let g = cyclic_shift_group(4, 8, &[2, 3, 4, 1, 6, 7, 8, 5]).expect("valid shift");
    orbit_closure(&g, &[l])
}
