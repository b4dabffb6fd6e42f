//! Finite groups acting on R^N by signed permutations.
//!
//! Two families are needed: the generalized quaternion group Q_{4n} acting on
//! R^n through its dihedral quotient (`ε·e_i = e_{i+1}`, `j·e_i = e_{n-i+1}`),
//! and cyclic groups generated by a single coordinate permutation.

use std::fmt;
use std::ops::Neg;

use thiserror::Error;

use crate::exactlin::{q, ExactMatrix, ExactVector, LinAlgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("quaternion group needs n >= 2, got {0}")]
    TooSmall(usize),
    #[error("shift spec is not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("permutation order {order} does not divide {m}")]
    OrderMismatch { order: usize, m: usize },
}

/// `e_i ↦ sign[i] · e_{image[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    image: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { image: (0..n).collect(), sign: vec![1; n] }
    }

    pub fn from_images(image: Vec<usize>) -> Self {
        let n = image.len();
        SignedPerm { image, sign: vec![1; n] }
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self, i: usize) -> (usize, i8) {
        (self.image[i], self.sign[i])
    }

    pub fn apply<T: Clone + Neg<Output = T>>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.dim(), "signed permutation: dimension mismatch");
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.image[i]] = if self.sign[i] < 0 { -x.clone() } else { x.clone() };
        }
        out
    }

    pub fn apply_vec(&self, v: &ExactVector) -> ExactVector {
        ExactVector(self.apply(&v.0))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let n = self.dim();
        let mut image = vec![0; n];
        let mut sign = vec![1; n];
        for i in 0..n {
            let (j, s) = other.image(i);
            let (k, t) = self.image(j);
            image[i] = k;
            sign[i] = s * t;
        }
        SignedPerm { image, sign }
    }

    pub fn matrix(&self) -> ExactMatrix {
        let n = self.dim();
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(self.image[i], i)] = q(self.sign[i] as i64);
        }
        m
    }

    pub fn det(&self) -> i32 {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut s: i32 = self.sign.iter().map(|&x| x as i32).product();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.image[j];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j) && self.sign.iter().all(|&s| s == 1)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Q_{4n}: words ε^k j^δ with k mod 2n.
    Quaternion { n: usize },
    /// Z_m: words ε^k with k mod m.
    Cyclic { m: usize },
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub k: usize,
    pub jflag: bool,
    pub action: SignedPerm,
}

impl GroupElement {
    pub fn word(&self) -> (usize, bool) {
        (self.k, self.jflag)
    }

    pub fn matrix(&self) -> ExactMatrix {
        self.action.matrix()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.jflag) {
            (0, false) => write!(f, "1"),
            (0, true) => write!(f, "j"),
            (1, j) => write!(f, "e{}", if j { "j" } else { "" }),
            (k, j) => write!(f, "e^{k}{}", if j { "j" } else { "" }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ActionGroup {
    pub kind: GroupKind,
    pub elements: Vec<GroupElement>,
    pub ambient_dim: usize,
    pub generators: Vec<usize>,
}

impl ActionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, k: usize, jflag: bool) -> usize {
        match self.kind {
            GroupKind::Quaternion { n } => k % (2 * n) + if jflag { 2 * n } else { 0 },
            GroupKind::Cyclic { m } => {
                assert!(!jflag, "cyclic group has no j");
                k % m
            }
        }
    }

    /// Product by normal forms.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (k1, j1) = self.elements[a].word();
        let (k2, j2) = self.elements[b].word();
        match self.kind {
            GroupKind::Quaternion { n } => {
                let m = 2 * n;
                match (j1, j2) {
                    (false, _) => self.index_of(k1 + k2, j2),
                    (true, false) => self.index_of(k1 + m - k2 % m, true),
                    (true, true) => self.index_of(k1 + m - k2 % m + n, false),
                }
            }
            GroupKind::Cyclic { .. } => self.index_of(k1 + k2, false),
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).expect("group element without inverse")
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn act(&self, g: usize, v: &ExactVector) -> Result<ExactVector, LinAlgError> {
        if v.dim() != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch { expected: self.ambient_dim, got: v.dim() });
        }
        Ok(self.elements[g].action.apply_vec(v))
    }

    pub fn det_character(&self, g: usize) -> i32 {
        self.elements[g].action.det()
    }

    /// One element index per distinct action matrix, in element order.
    pub fn distinct_actions(&self) -> Vec<usize> {
        let mut seen = std::collections::HashSet::new();
        (0..self.order()).filter(|&g| seen.insert(self.elements[g].action.clone())).collect()
    }
}

/// ε·e_i = e_{i mod n + 1}.
pub fn rotation(n: usize) -> SignedPerm {
    SignedPerm::from_images((0..n).map(|i| (i + 1) % n).collect())
}

/// j·e_i = e_{n-i+1}.
pub fn reversal(n: usize) -> SignedPerm {
    SignedPerm::from_images((0..n).map(|i| n - 1 - i).collect())
}

pub fn quaternion_on_wn(n: usize) -> Result<ActionGroup, GroupError> {
    if n < 2 {
        return Err(GroupError::TooSmall(n));
    }
    let eps = rotation(n);
    let j = reversal(n);
    let mut elements = Vec::with_capacity(4 * n);
    for jflag in [false, true] {
        let mut p = if jflag { j.clone() } else { SignedPerm::identity(n) };
        for k in 0..2 * n {
            elements.push(GroupElement { k, jflag, action: p.clone() });
            p = eps.compose(&p);
        }
    }
    Ok(ActionGroup { kind: GroupKind::Quaternion { n }, elements, ambient_dim: n, generators: vec![1, 2 * n] })
}

/// Cyclic group of order `m` generated by `e_i ↦ e_{shift[i]}` (1-based).
pub fn cyclic_shift_group(m: usize, dim: usize, shift: &[usize]) -> Result<ActionGroup, GroupError> {
    let mut seen = vec![false; dim];
    if shift.len() != dim {
        return Err(GroupError::NotPermutation(dim));
    }
    for &s in shift {
        if s == 0 || s > dim || seen[s - 1] {
            return Err(GroupError::NotPermutation(dim));
        }
        seen[s - 1] = true;
    }
    let gen = SignedPerm::from_images(shift.iter().map(|&s| s - 1).collect());
    let order = gen.order();
    if m % order != 0 {
        return Err(GroupError::OrderMismatch { order, m });
    }
    let mut elements = Vec::with_capacity(m);
    let mut p = SignedPerm::identity(dim);
    for k in 0..m {
        elements.push(GroupElement { k, jflag: false, action: p.clone() });
        p = gen.compose(&p);
    }
    let generators = if m > 1 { vec![1] } else { vec![] };
    Ok(ActionGroup { kind: GroupKind::Cyclic { m }, elements, ambient_dim: dim, generators })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_relations() {
        for n in 2..=8 {
            let g = quaternion_on_wn(n).unwrap();
            let eps = 1;
            let j = 2 * n;
            assert_eq!(g.pow(eps, 2 * n), 0);
            assert_eq!(g.mul(j, j), g.pow(eps, n));
            assert_eq!(g.mul(g.mul(j, eps), g.inverse(j)), g.inverse(eps));
            assert!(g.elements[g.pow(eps, n)].action.is_identity());
        }
    }

    #[test]
    fn reversal_images() {
        let g = quaternion_on_wn(4).unwrap();
        let e1 = ExactVector::unit(4, 0);
        assert_eq!(g.act(1, &e1).unwrap(), ExactVector::unit(4, 1));
        assert_eq!(g.act(8, &e1).unwrap(), ExactVector::unit(4, 3));
    }

    #[test]
    fn determinants() {
        let g = quaternion_on_wn(4).unwrap();
        assert_eq!(g.det_character(0), 1);
        assert_eq!(g.det_character(1), -1);
        assert_eq!(g.det_character(8), 1);
        assert_eq!(quaternion_on_wn(6).unwrap().distinct_actions().len(), 12);
    }

    #[test]
    fn cyclic_fixtures() {
        let z8 = cyclic_shift_group(8, 8, &[2, 3, 4, 5, 6, 7, 8, 1]).unwrap();
        assert_eq!(z8.det_character(1), -1);
        let z4 = cyclic_shift_group(4, 8, &[2, 3, 4, 1, 6, 7, 8, 5]).unwrap();
        assert_eq!(z4.det_character(1), 1);
        let triv = cyclic_shift_group(1, 3, &[1, 2, 3]).unwrap();
        assert_eq!(triv.order(), 1);
        assert!(cyclic_shift_group(3, 4, &[2, 3, 4, 1]).is_err());
    }
}
