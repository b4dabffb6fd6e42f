use std::fmt;

use crate::exactlin::{frac, q, ExactVector};
use crate::groups::ActionGroup;
use crate::homology::SimplicialComplex;

/// 1-based index reduced into `1..=m`.
pub(crate) fn wrap(i: isize, m: usize) -> usize {
    (i - 1).rem_euclid(m as isize) as usize + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    A(usize),
    B(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::A(i) => write!(f, "a{i}"),
            Vertex::B(i) => write!(f, "b{i}"),
        }
    }
}

/// The join of two `2n`-gons `a₁…a_{2n}` and `b₁…b_{2n}`, a free `Q_{4n}`
/// triangulation of `S³`.
#[derive(Clone, Debug)]
pub struct SphereComplex {
    pub n: usize,
    pub complex: SimplicialComplex,
}

pub fn build_sphere(n: usize) -> SphereComplex {
    assert!(n >= 2, "need n >= 2");
    let m = 2 * n;
    let mut facets = Vec::with_capacity(m * m);
    let sc = SphereComplex { n, complex: SimplicialComplex::default() };
    for i in 1..=m {
        for j in 1..=m {
            let f = [Vertex::A(i), Vertex::A(wrap(i as isize + 1, m)), Vertex::B(j), Vertex::B(wrap(j as isize + 1, m))];
            facets.push(f.iter().map(|&v| sc.id(v)).collect());
        }
    }
    SphereComplex { n, complex: SimplicialComplex { vertices: (0..2 * m).collect(), facets } }
}

impl SphereComplex {
    pub fn id(&self, v: Vertex) -> usize {
        match v {
            Vertex::A(i) => i - 1,
            Vertex::B(i) => 2 * self.n + i - 1,
        }
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        let m = 2 * self.n;
        if id < m {
            Vertex::A(id + 1)
        } else {
            Vertex::B(id - m + 1)
        }
    }

    /// Ranks of the simplicial chain groups `C₃, C₂, C₁, C₀`.
    pub fn chain_ranks(&self) -> [usize; 4] {
        [self.complex.faces(3).len(), self.complex.faces(2).len(), self.complex.faces(1).len(), self.complex.faces(0).len()]
    }

    /// `ε: a_i ↦ a_{i+1}, b_i ↦ b_{i+1}`; `j: a_i ↦ b_{2−i}, b_i ↦ a_{n+2−i}`.
    pub fn act(&self, group: &ActionGroup, g: usize, v: Vertex) -> Vertex {
        let m = 2 * self.n;
        let (k, jflag) = group.elements[g].word();
        let v = if jflag {
            match v {
                Vertex::A(i) => Vertex::B(wrap(2 - i as isize, m)),
                Vertex::B(i) => Vertex::A(wrap((self.n + 2) as isize - i as isize, m)),
            }
        } else {
            v
        };
        match v {
            Vertex::A(i) => Vertex::A(wrap((i + k) as isize, m)),
            Vertex::B(i) => Vertex::B(wrap((i + k) as isize, m)),
        }
    }

    /// The image of the fundamental cell: `Σ_{i=1..n} [a_i, a_{i+1}; b₁, b₂]`.
    pub fn fundamental_image(&self) -> Vec<[Vertex; 4]> {
        let m = 2 * self.n;
        (1..=self.n).map(|i| [Vertex::A(i), Vertex::A(wrap(i as isize + 1, m)), Vertex::B(1), Vertex::B(2)]).collect()
    }
}

/// `u_i = e_i − (1/n)·𝟙`, index taken mod `n`.
pub fn u(n: usize, i: isize) -> ExactVector {
    let i = wrap(i, n);
    ExactVector((1..=n).map(|k| if k == i { q(1) } else { q(0) } - frac(1, n as i64)).collect())
}

/// The equivariant vertex map `a_i ↦ u_i`, `b_i ↦ u_{i−1}`.
#[derive(Clone, Debug)]
pub struct GeneralPositionMap {
    pub n: usize,
}

pub fn define_h(n: usize) -> GeneralPositionMap {
    GeneralPositionMap { n }
}

impl GeneralPositionMap {
    pub fn vertex_index(&self, v: Vertex) -> usize {
        match v {
            Vertex::A(i) => wrap(i as isize, self.n),
            Vertex::B(i) => wrap(i as isize - 1, self.n),
        }
    }

    pub fn image(&self, v: Vertex) -> ExactVector {
        u(self.n, self.vertex_index(v) as isize)
    }

    /// `h(g·x) = g·h(x)` on every vertex and group element.
    pub fn is_equivariant(&self, sphere: &SphereComplex, group: &ActionGroup) -> bool {
        (0..sphere.complex.vertices.len()).all(|id| {
            let v = sphere.vertex(id);
            (0..group.order()).all(|g| self.image(sphere.act(group, g, v)) == group.elements[g].action.apply_vec(&self.image(v)))
        })
    }
}
