use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::arrangement::IntersectionPoset;
use crate::exactlin::{integer_kernel, q, smith_normal_form, ExactMatrix, Rational};

#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    pub vertices: Vec<usize>,
    /// Maximal simplices as vertex lists.
    pub facets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    /// Cycles (over the sorted `d`-faces) whose classes span the free part.
    pub generator_reps: Vec<Vec<BigInt>>,
}

impl SimplicialComplex {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Sorted `d`-faces, each a sorted vertex list.
    pub fn faces(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            let mut f = f.clone();
            f.sort_unstable();
            subsets(&f, d + 1, &mut |s| {
                out.insert(s.to_vec());
            });
        }
        out.into_iter().collect()
    }

    /// Boundary `C_d → C_{d-1}`; for `d = 0` the augmentation `C_0 → Z`.
    pub fn boundary_matrix(&self, d: usize) -> ExactMatrix {
        let cols = self.faces(d);
        if d == 0 {
            let mut m = ExactMatrix::zeros(1, cols.len());
            for j in 0..cols.len() {
                m[(0, j)] = q(1);
            }
            return m;
        }
        let rows = self.faces(d - 1);
        boundary_between(&rows, &cols)
    }
}

fn subsets(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), f)
}

fn boundary_between(rows: &[Vec<usize>], cols: &[Vec<usize>]) -> ExactMatrix {
    let index: HashMap<&[usize], usize> = rows.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
    let mut m = ExactMatrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let r = index[face.as_slice()];
            m[(r, j)] = q(if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

pub fn reduced_homology(c: &SimplicialComplex, d: isize) -> HomologyGroup {
    assert!(d >= -1, "degree must be >= -1");
    if d == -1 {
        let rank = usize::from(c.is_empty());
        return HomologyGroup { rank, torsion: vec![], generator_reps: if rank == 1 { vec![vec![]] } else { vec![] } };
    }
    let d = d as usize;
    let cd = c.faces(d);
    if cd.is_empty() {
        return HomologyGroup { rank: 0, torsion: vec![], generator_reps: vec![] };
    }
    let kernel = integer_kernel(&c.boundary_matrix(d)).expect("integral boundary");
    let k = kernel.len();
    let up = c.faces(d + 1);
    if k == 0 {
        return HomologyGroup { rank: 0, torsion: vec![], generator_reps: vec![] };
    }
    let kmat = ExactMatrix::from_cols(
        &kernel.iter().map(|v| crate::exactlin::ExactVector::from_bigints(v)).collect::<Vec<_>>(),
        cd.len(),
    );
    if up.is_empty() {
        return HomologyGroup { rank: k, torsion: vec![], generator_reps: kernel };
    }
    let bd = boundary_between(&cd, &up);
    // coordinates of the boundaries in the kernel basis
    let coords = lattice_coordinates(&kmat, &bd);
    let s = smith_normal_form(&coords).expect("integral coordinates");
    let uinv = s.u.inverse().expect("unimodular");
    let newbasis = &kmat * &uinv;
    let torsion: Vec<BigInt> = s.invariant_factors().into_iter().filter(|x| !x.is_one()).collect();
    let generator_reps = (s.rank..k).map(|j| (0..cd.len()).map(|i| newbasis[(i, j)].to_integer()).collect()).collect();
    HomologyGroup { rank: k - s.rank, torsion, generator_reps }
}

/// Solve `basis · X = targets` exactly (columns of `targets` lie in the span).
pub(crate) fn lattice_coordinates(basis: &ExactMatrix, targets: &ExactMatrix) -> ExactMatrix {
    let r = crate::exactlin::rref(&basis.transpose());
    let rows: Vec<usize> = r.pivots.clone();
    let k = basis.cols();
    let mut sub = ExactMatrix::zeros(k, k);
    for (i, &p) in rows.iter().enumerate() {
        for j in 0..k {
            sub[(i, j)] = basis[(p, j)].clone();
        }
    }
    let inv = sub.inverse().expect("basis has full column rank");
    let mut rhs = ExactMatrix::zeros(k, targets.cols());
    for (i, &p) in rows.iter().enumerate() {
        for j in 0..targets.cols() {
            rhs[(i, j)] = targets[(p, j)].clone();
        }
    }
    let x = &inv * &rhs;
    debug_assert!(&(basis * &x) == targets, "target outside the lattice span");
    x
}

/// Δ of the nodes strictly containing `v`: facets are the maximal chains.
pub fn order_complex(poset: &IntersectionPoset, v: usize) -> SimplicialComplex {
    let above: Vec<usize> = poset.strictly_above(v).to_vec();
    let mut covers: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(lo, up) in &poset.hasse_edges {
        covers.entry(lo).or_default().push(up);
    }
    let starts: Vec<usize> = covers.get(&v).cloned().unwrap_or_default();
    let mut facets = Vec::new();
    fn extend(node: usize, chain: &mut Vec<usize>, covers: &HashMap<usize, Vec<usize>>, out: &mut Vec<Vec<usize>>) {
        chain.push(node);
        match covers.get(&node) {
            Some(ups) if !ups.is_empty() => {
                for &u in ups {
                    extend(u, chain, covers, out);
                }
            }
            _ => out.push(chain.clone()),
        }
        chain.pop();
    }
    for s in starts {
        extend(s, &mut Vec::new(), &covers, &mut facets);
    }
    SimplicialComplex { vertices: above, facets }
}

const P: u64 = 2_147_483_647;

fn inv_mod(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank over GF(p) of a sparse matrix given by columns of (row, ±1·coeff) entries.
pub(crate) fn sparse_rank_mod_p(cols: &[Vec<(usize, i64)>]) -> usize {
    let mut pivot_of: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut c: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
        for &(r, v) in col {
            let v = v.rem_euclid(P as i64) as u64;
            let e = c.entry(r).or_insert(0);
            *e = (*e + v) % P;
        }
        c.retain(|_, v| *v != 0);
        loop {
            let Some((&low, &lv)) = c.iter().next_back() else { break };
            match pivot_of.get(&low) {
                Some(pc) => {
                    let pv = pc.iter().find(|(r, _)| *r == low).unwrap().1;
                    let f = lv * inv_mod(pv) % P;
                    for &(r, v) in pc {
                        let e = c.entry(r).or_insert(0);
                        *e = (*e + P - f * v % P) % P;
                    }
                    c.retain(|_, v| *v != 0);
                }
                None => {
                    pivot_of.insert(low, c.into_iter().collect());
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Reduced homology of Δ(P_{>v}) in its top possible degree
/// `deg − 1 − dim v`, where `deg` is the dimension of the maximal elements.
/// Only chains through every intermediate dimension reach that degree, and
/// no simplices live above it, so the group is the kernel of one boundary map.
pub fn top_degree_homology(poset: &IntersectionPoset, v: usize, deg: usize) -> HomologyGroup {
    let dv = poset.nodes[v].dim;
    let len = deg - dv;
    let cx = order_complex(poset, v);
    let mut top: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in &cx.facets {
        if f.len() == len {
            let mut s = f.clone();
            s.sort_unstable();
            top.insert(s);
        }
    }
    if top.is_empty() {
        return HomologyGroup { rank: 0, torsion: vec![], generator_reps: vec![] };
    }
    if len == 1 {
        // degree 0: reduced H̃₀ of a discrete set
        return reduced_homology(&cx, 0);
    }
    let top: Vec<Vec<usize>> = top.into_iter().collect();
    let mut rows: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut cols = Vec::with_capacity(top.len());
    for s in &top {
        let mut col = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let next = rows.len();
            let r = *rows.entry(face).or_insert(next);
            col.push((r, if i % 2 == 0 { 1 } else { -1 }));
        }
        cols.push(col);
    }
    if sparse_rank_mod_p(&cols) == cols.len() {
        return HomologyGroup { rank: 0, torsion: vec![], generator_reps: vec![] };
    }
    let mut m = ExactMatrix::zeros(rows.len(), cols.len());
    for (j, col) in cols.iter().enumerate() {
        for &(r, v) in col {
            m[(r, j)] = Rational::from_integer(BigInt::from(v));
        }
    }
    let kernel = integer_kernel(&m).expect("integral");
    HomologyGroup { rank: kernel.len(), torsion: vec![], generator_reps: kernel }
}

/// `∂_{d} ∘ ∂_{d+1} = 0` for every degree of the complex.
pub fn boundary_squares_vanish(c: &SimplicialComplex) -> bool {
    let maxd = c.facets.iter().map(|f| f.len()).max().unwrap_or(0);
    (1..maxd).all(|d| {
        let low = c.boundary_matrix(d - 1);
        let high = c.boundary_matrix(d);
        (&low * &high).is_zero()
    })
}
