//! Cone-cell model of the union of an arrangement of (half-)subspaces.
//!
//! Each maximal element `C` of dimension `d` is cut by the hyperplanes (inside
//! its span) spanned by the `(d−1)`-dimensional intersection nodes it
//! contains, plus its own bounding hyperplane when it is a half-space. The
//! resulting regions are the top cells. A top chain is a cycle iff at every
//! generic point of every `(d−1)`-dimensional wall the signed sum of the
//! coefficients of the incident regions vanishes, so
//! `H_d(∪Â) = ker(wall equations)` over Z.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arrangement::{Arrangement, HalfOpenSubspace, IntersectionPoset};
use crate::exactlin::{
    determinant, integer_kernel, kernel_basis, primitive_i64, q, rref, sign, ExactMatrix, ExactVector,
};
use crate::groups::SignedPerm;

pub type IVec = Vec<i64>;

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn sgn128(x: i128) -> i8 {
    x.signum() as i8
}

fn to_exact(v: &[i64]) -> ExactVector {
    ExactVector::from_ints(v)
}

fn to_ivec(v: &ExactVector) -> IVec {
    primitive_i64(&v.0)
}

fn unsigned_key(v: &[i64]) -> IVec {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    let mut out: IVec = if g == 0 { v.to_vec() } else { v.iter().map(|x| x / g).collect() };
    if out.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        out.iter_mut().for_each(|x| *x = -*x);
    }
    out
}

#[derive(Clone, Debug)]
pub struct Region {
    pub signs: Vec<i8>,
    /// Integer point in the relative interior.
    pub point: IVec,
}

#[derive(Clone, Debug)]
pub struct ElementCells {
    /// Oriented carrier basis, integer.
    pub basis: Vec<IVec>,
    coord: ExactMatrix,
    pub hyperplanes: Vec<IVec>,
    pub bounding: Option<usize>,
    pub regions: Vec<Region>,
    index: HashMap<Vec<i8>, usize>,
    facets: Vec<(Vec<i8>, Vec<IVec>)>,
    equalities: Vec<IVec>,
    inequalities: Vec<IVec>,
}

impl ElementCells {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.span_contains(x) && self.inequalities.iter().all(|g| dot(g, x) >= 0)
    }

    pub fn span_contains(&self, x: &[i64]) -> bool {
        self.equalities.iter().all(|e| dot(e, x) == 0)
    }

    pub fn signs(&self, x: &[i64]) -> Vec<i8> {
        self.hyperplanes.iter().map(|h| sgn128(dot(h, x))).collect()
    }

    /// Coordinates of a carrier vector in the oriented basis.
    pub fn coords(&self, x: &[i64]) -> ExactVector {
        self.coord.mul_vec(&to_exact(x))
    }

    pub fn region_of(&self, x: &[i64]) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        self.index.get(&self.signs(x)).copied()
    }

    /// Region of a rational point; `None` off the element or on a wall.
    pub fn region_of_exact(&self, x: &ExactVector) -> Option<usize> {
        let ex = |f: &IVec| crate::exactlin::sign(&to_exact(f).dot(x));
        if self.equalities.iter().any(|e| ex(e) != 0) || self.inequalities.iter().any(|g| ex(g) < 0) {
            return None;
        }
        let signs: Vec<i8> = self.hyperplanes.iter().map(|h| ex(h) as i8).collect();
        self.index.get(&signs).copied()
    }

    /// Sign of the determinant of `vectors` (d of them) in the oriented basis.
    pub fn orientation(&self, vectors: &[IVec]) -> i32 {
        let cols: Vec<ExactVector> = vectors.iter().map(|v| self.coords(v)).collect();
        let m = ExactMatrix::from_cols(&cols, self.dim());
        sign(&determinant(&m).expect("square"))
    }
}

fn combinations(m: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, f);
            cur.pop();
        }
    }
    rec(0, m, k, &mut Vec::new(), f)
}

fn compose(x: &[i8], y: &[i8]) -> Vec<i8> {
    x.iter().zip(y).map(|(&a, &b)| if a != 0 { a } else { b }).collect()
}

fn conformal(y: &[i8], f: &[i8]) -> bool {
    y.iter().zip(f).all(|(&a, &b)| a == 0 || a == b)
}

fn build_element(el: &HalfOpenSubspace, walls: &[&HalfOpenSubspace]) -> ElementCells {
    let n = el.ambient_dim;
    let basis: Vec<IVec> = el.basis.iter().map(to_ivec).collect();
    let d = basis.len();
    let bmat = ExactMatrix::from_cols(&basis.iter().map(|b| to_exact(b)).collect::<Vec<_>>(), n);
    let gram = &bmat.transpose() * &bmat;
    let coord = &gram.inverse().expect("independent basis") * &bmat.transpose();
    let restrict = |h: &IVec| -> IVec { basis.iter().map(|b| dot(h, b) as i64).collect() };

    let mut hyperplanes: Vec<IVec> = Vec::new();
    let mut seen: HashSet<IVec> = HashSet::new();
    let mut push = |h: IVec, hyperplanes: &mut Vec<IVec>| -> Option<usize> {
        let loc = restrict(&h);
        if loc.iter().all(|&x| x == 0) {
            return None;
        }
        let key = unsigned_key(&loc);
        if seen.insert(key.clone()) {
            hyperplanes.push(h);
            Some(hyperplanes.len() - 1)
        } else {
            let sgn_match = hyperplanes.iter().position(|g| unsigned_key(&restrict(g)) == key);
            sgn_match
        }
    };
    for w in walls {
        let rows = w.equalities.row_vectors();
        let row = rows
            .iter()
            .map(to_ivec)
            .find(|r| restrict(r).iter().any(|&x| x != 0))
            .expect("wall is a hyperplane of the element");
        push(row, &mut hyperplanes);
    }
    let bounding = el.inequalities.first().and_then(|g| {
        let h = to_ivec(g);
        let idx = push(h.clone(), &mut hyperplanes)?;
        // keep the inequality's orientation on the bounding hyperplane
        if dot(&restrict(&hyperplanes[idx]), &restrict(&h)) < 0 {
            hyperplanes[idx] = h;
        }
        Some(idx)
    });
    assert!(el.inequalities.len() <= 1, "elements are subspaces or half-subspaces");
    let local_rank = |hs: &[IVec]| -> usize {
        if hs.is_empty() {
            0
        } else {
            ExactMatrix::from_rows(&hs.iter().map(|h| to_exact(&restrict(h))).collect::<Vec<_>>(), d).rank()
        }
    };
    if local_rank(&hyperplanes) < d {
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            push(e, &mut hyperplanes);
        }
    }
    assert_eq!(local_rank(&hyperplanes), d, "cell model needs an essential arrangement");

    let local: Vec<IVec> = hyperplanes.iter().map(|h| restrict(h)).collect();
    let m = local.len();
    // cocircuits
    let mut cocircuits: Vec<(Vec<i8>, IVec)> = Vec::new();
    let mut cseen: HashSet<Vec<i8>> = HashSet::new();
    combinations(m, d - 1, &mut |s| {
        let rows: Vec<ExactVector> = s.iter().map(|&i| to_exact(&local[i])).collect();
        let ker = kernel_basis(&ExactMatrix::from_rows(&rows, d));
        if ker.len() != 1 {
            return;
        }
        let y = to_ivec(&ker[0]);
        for y in [y.clone(), y.iter().map(|x| -x).collect::<IVec>()] {
            let sv: Vec<i8> = local.iter().map(|c| sgn128(dot(c, &y))).collect();
            if cseen.insert(sv.clone()) {
                let mut x = vec![0i64; n];
                for (b, c) in basis.iter().zip(&y) {
                    for i in 0..n {
                        x[i] += b[i] * c;
                    }
                }
                cocircuits.push((sv, x));
            }
        }
    });
    // covectors by composition closure
    let mut all: HashSet<Vec<i8>> = cocircuits.iter().map(|c| c.0.clone()).collect();
    let mut frontier: Vec<Vec<i8>> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for (y, _) in &cocircuits {
                let z = compose(x, y);
                if !all.contains(&z) {
                    all.insert(z.clone());
                    next.push(z);
                }
            }
        }
        frontier = next;
    }
    let relint = |f: &[i8]| -> (IVec, Vec<IVec>) {
        let rays: Vec<IVec> = cocircuits.iter().filter(|(y, _)| conformal(y, f)).map(|(_, r)| r.clone()).collect();
        let mut p = vec![0i64; n];
        for r in &rays {
            for i in 0..n {
                p[i] += r[i];
            }
        }
        (p, rays)
    };
    let mut topes: Vec<Vec<i8>> = all
        .iter()
        .filter(|x| x.iter().all(|&s| s != 0) && bounding.map_or(true, |b| x[b] > 0))
        .cloned()
        .collect();
    topes.sort();
    let regions: Vec<Region> = topes
        .into_iter()
        .map(|s| {
            let (p, _) = relint(&s);
            Region { signs: s, point: unsigned_scale(p) }
        })
        .collect();
    let index: HashMap<Vec<i8>, usize> = regions.iter().enumerate().map(|(i, r)| (r.signs.clone(), i)).collect();
    let mut facet_list: Vec<Vec<i8>> = all
        .iter()
        .filter(|x| x.iter().filter(|&&s| s == 0).count() == 1)
        .filter(|x| {
            let h = x.iter().position(|&s| s == 0).unwrap();
            [1i8, -1].iter().any(|&s| {
                let mut t = (*x).clone();
                t[h] = s;
                index.contains_key(&t)
            })
        })
        .cloned()
        .collect();
    facet_list.sort();
    let facets = facet_list.into_iter().map(|f| {
        let (_, rays) = relint(&f);
        (f, rays)
    }).collect();

    let equalities = el.equalities.row_vectors().iter().map(to_ivec).collect();
    let inequalities = el.inequalities.iter().map(to_ivec).collect();
    ElementCells { basis, coord, hyperplanes, bounding, regions, index, facets, equalities, inequalities }
}

fn unsigned_scale(p: IVec) -> IVec {
    let g = p.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g == 0 {
        p
    } else {
        p.into_iter().map(|x| x / g).collect()
    }
}

fn independent_subset(vs: &[IVec], k: usize) -> Vec<IVec> {
    let mut out: Vec<IVec> = Vec::new();
    for v in vs {
        let mut cand = out.clone();
        cand.push(v.clone());
        let m = ExactMatrix::from_rows(&cand.iter().map(|x| to_exact(x)).collect::<Vec<_>>(), v.len());
        if m.rank() == cand.len() {
            out = cand;
            if out.len() == k {
                break;
            }
        }
    }
    out
}

/// Small deterministic generator for perturbation weights.
struct Weights(u64);

impl Weights {
    fn next(&mut self) -> i64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        1 + (self.0 % 9) as i64
    }
}

#[derive(Clone, Debug)]
pub struct CellModel {
    pub degree: usize,
    pub elements: Vec<ElementCells>,
    pub offsets: Vec<usize>,
    pub region_count: usize,
    /// Wall equations: sparse rows over global region ids.
    pub conditions: Vec<Vec<(usize, i64)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellError {
    #[error("maximal elements have different dimensions")]
    MixedDimensions,
    #[error("no generic point found on a wall of element {0}")]
    NoGenericPoint(usize),
    #[error("cycle is not in the lattice spanned by the basis")]
    NotInLattice,
}

impl CellModel {
    pub fn build(arr: &Arrangement, poset: &IntersectionPoset) -> Result<CellModel, CellError> {
        let degree = arr.degree();
        if arr.maximal_elements.iter().any(|m| m.dim() != degree) {
            return Err(CellError::MixedDimensions);
        }
        let walls_of: Vec<Vec<&HalfOpenSubspace>> = (0..arr.maximal_elements.len())
            .map(|k| {
                poset
                    .nodes
                    .iter()
                    .filter(|nd| degree >= 1 && nd.dim == degree - 1 && nd.above.contains(&k))
                    .map(|nd| &nd.subspace)
                    .collect()
            })
            .collect();
        let elements: Vec<ElementCells> =
            arr.maximal_elements.iter().zip(&walls_of).map(|(el, w)| build_element(el, w)).collect();
        let mut offsets = Vec::with_capacity(elements.len());
        let mut total = 0;
        for e in &elements {
            offsets.push(total);
            total += e.regions.len();
        }
        let mut model = CellModel { degree, elements, offsets, region_count: total, conditions: vec![] };
        model.conditions = model.wall_conditions()?;
        Ok(model)
    }

    fn wall_conditions(&self) -> Result<Vec<Vec<(usize, i64)>>, CellError> {
        let mut rows: HashSet<Vec<(usize, i64)>> = HashSet::new();
        for (k, el) in self.elements.iter().enumerate() {
            for (fi, (_, rays)) in el.facets.iter().enumerate() {
                let bx = independent_subset(rays, self.degree - 1);
                let mut w = Weights(0x9E37_79B9_7F4A_7C15 ^ ((k as u64) << 32) ^ fi as u64);
                let mut row = None;
                for attempt in 0..64 {
                    let p: IVec = if attempt == 0 {
                        let mut p = vec![0; rays[0].len()];
                        for r in rays {
                            for i in 0..p.len() {
                                p[i] += r[i];
                            }
                        }
                        p
                    } else {
                        let mut p = vec![0; rays[0].len()];
                        for r in rays {
                            let c = w.next();
                            for i in 0..p.len() {
                                p[i] += c * r[i];
                            }
                        }
                        p
                    };
                    if let Some(r) = self.wall_row(&p, rays, &bx) {
                        row = Some(r);
                        break;
                    }
                }
                let mut row = row.ok_or(CellError::NoGenericPoint(k))?;
                if row.is_empty() {
                    continue;
                }
                row.sort_unstable();
                if row[0].1 < 0 {
                    row.iter_mut().for_each(|e| e.1 = -e.1);
                }
                rows.insert(row);
            }
        }
        let mut rows: Vec<_> = rows.into_iter().collect();
        rows.sort();
        Ok(rows)
    }

    /// The wall equation at `p`, or `None` if `p` is not generic.
    fn wall_row(&self, p: &[i64], rays: &[IVec], bx: &[IVec]) -> Option<Vec<(usize, i64)>> {
        let mut row = Vec::new();
        for (m, el) in self.elements.iter().enumerate() {
            if !el.contains(p) {
                continue;
            }
            if !rays.iter().all(|r| el.span_contains(r)) {
                return None;
            }
            let s = el.signs(p);
            let zeros: Vec<usize> = (0..s.len()).filter(|&i| s[i] == 0).collect();
            if zeros.len() != 1 || !bx.iter().all(|r| dot(&el.hyperplanes[zeros[0]], r) == 0) {
                return None;
            }
            for side in [1i8, -1] {
                let mut t = s.clone();
                t[zeros[0]] = side;
                if let Some(&ri) = el.index.get(&t) {
                    let qpt = &el.regions[ri].point;
                    let nu: IVec = qpt.iter().zip(p).map(|(a, b)| a - b).collect();
                    let mut vecs = vec![nu];
                    vecs.extend(bx.iter().cloned());
                    let inc = -el.orientation(&vecs) as i64;
                    row.push((self.offsets[m] + ri, inc));
                }
            }
        }
        Some(row)
    }

    pub fn element_of_region(&self, r: usize) -> (usize, usize) {
        let k = self.offsets.partition_point(|&o| o <= r) - 1;
        (k, r - self.offsets[k])
    }

    /// Global region containing `x` in its interior, with its element.
    pub fn locate(&self, x: &[i64]) -> Vec<(usize, usize)> {
        self.elements
            .iter()
            .enumerate()
            .filter_map(|(k, el)| el.region_of(x).map(|r| (k, self.offsets[k] + r)))
            .collect()
    }

    /// Z-basis of the top homology as region-coefficient vectors.
    pub fn cycle_basis(&self) -> Vec<IVec> {
        solve_integer_kernel(self.region_count, &self.conditions)
    }

    pub fn is_cycle(&self, z: &[i64]) -> bool {
        self.conditions.iter().all(|row| row.iter().map(|&(r, c)| c as i128 * z[r] as i128).sum::<i128>() == 0)
    }

    /// Region permutation with orientation signs for one group element.
    pub fn region_action(&self, g: &SignedPerm, element_perm: &[usize]) -> Vec<(usize, i64)> {
        let mut out = vec![(0, 0); self.region_count];
        for (k, el) in self.elements.iter().enumerate() {
            let m = element_perm[k];
            let target = &self.elements[m];
            let gb: Vec<IVec> = el.basis.iter().map(|b| g.apply(b)).collect();
            let s = target.orientation(&gb) as i64;
            for (ri, reg) in el.regions.iter().enumerate() {
                let gp = g.apply(&reg.point);
                let rj = target.region_of(&gp).expect("group maps regions to regions");
                out[self.offsets[k] + ri] = (self.offsets[m] + rj, s);
            }
        }
        out
    }

    pub fn act(action: &[(usize, i64)], z: &[i64]) -> IVec {
        let mut out = vec![0; z.len()];
        for (i, &c) in z.iter().enumerate() {
            if c != 0 {
                let (j, s) = action[i];
                out[j] += s * c;
            }
        }
        out
    }
}

/// Integer kernel of sparse ±1 wall equations: two-term equations are folded
/// by a signed union-find, the rest goes through exact elimination.
fn solve_integer_kernel(nvars: usize, rows: &[Vec<(usize, i64)>]) -> Vec<IVec> {
    let mut parent: Vec<usize> = (0..nvars).collect();
    let mut par: Vec<i64> = vec![1; nvars];
    fn find(i: usize, parent: &mut Vec<usize>, par: &mut Vec<i64>) -> (usize, i64) {
        let p = parent[i];
        if p == i {
            return (i, 1);
        }
        let (r, s) = find(p, parent, par);
        parent[i] = r;
        par[i] *= s;
        (r, par[i])
    }
    let mut forced_zero: Vec<usize> = Vec::new();
    for row in rows.iter().filter(|r| r.len() == 2) {
        let (a, ca) = row[0];
        let (b, cb) = row[1];
        let (ra, sa) = find(a, &mut parent, &mut par);
        let (rb, sb) = find(b, &mut parent, &mut par);
        // x_b = -ca*cb * x_a  (coefficients are ±1)
        let rel = -ca * cb;
        if ra != rb {
            parent[rb] = ra;
            par[rb] = rel * sa * sb;
        } else if sb != rel * sa {
            forced_zero.push(ra);
        }
    }
    let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rep: Vec<(usize, i64)> = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let (r, s) = find(i, &mut parent, &mut par);
        let next = roots.len();
        let c = *roots.entry(r).or_insert(next);
        rep.push((c, s));
    }
    // roots were numbered in order of first appearance; that is ascending i
    let nrep = roots.len();
    let mut mrows: Vec<Vec<(usize, i64)>> = Vec::new();
    for row in rows.iter().filter(|r| r.len() != 2) {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(v, c) in row {
            let (r, s) = rep[v];
            *acc.entry(r).or_insert(0) += c * s;
        }
        acc.retain(|_, c| *c != 0);
        if !acc.is_empty() {
            mrows.push(acc.into_iter().collect());
        }
    }
    for r in forced_zero {
        let (c, _) = rep[r];
        mrows.push(vec![(c, 2)]);
    }
    let mut m = ExactMatrix::zeros(mrows.len(), nrep);
    for (i, row) in mrows.iter().enumerate() {
        for &(c, v) in row {
            m[(i, c)] = q(v);
        }
    }
    let small: Vec<IVec> = {
        let kb = kernel_basis(&m);
        if kb.iter().all(|v| v.iter().all(|x| x.is_integer())) {
            kb.iter().map(|v| v.iter().map(|x| x.to_integer().to_i64().expect("small")).collect()).collect()
        } else {
            integer_kernel(&m)
                .expect("integral")
                .into_iter()
                .map(|v| v.into_iter().map(|x| x.to_i64().expect("small")).collect())
                .collect()
        }
    };
    small.iter().map(|c| (0..nvars).map(|i| rep[i].1 * c[rep[i].0]).collect()).collect()
}

/// A Z-basis with precomputed coordinate extraction.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    pub vectors: Vec<IVec>,
    pivots: Vec<usize>,
    inv: ExactMatrix,
}

impl LatticeBasis {
    pub fn new(vectors: Vec<IVec>) -> Self {
        let r = vectors.len();
        if r == 0 {
            return LatticeBasis { vectors, pivots: vec![], inv: ExactMatrix::zeros(0, 0) };
        }
        let len = vectors[0].len();
        let rows = ExactMatrix::from_rows(&vectors.iter().map(|v| to_exact(v)).collect::<Vec<_>>(), len);
        let pivots = rref(&rows).pivots;
        assert_eq!(pivots.len(), r, "basis vectors must be independent");
        let mut sub = ExactMatrix::zeros(r, r);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..r {
                sub[(i, j)] = q(vectors[j][p]);
            }
        }
        let inv = sub.inverse().expect("independent");
        LatticeBasis { vectors, pivots, inv }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Integer coordinates of `y`, or an error if `y` is outside the lattice.
    pub fn coordinates(&self, y: &[i64]) -> Result<Vec<BigInt>, CellError> {
        let rhs = ExactVector(self.pivots.iter().map(|&p| q(y[p])).collect());
        let c = self.inv.mul_vec(&rhs);
        if !c.iter().all(|x| x.is_integer()) {
            return Err(CellError::NotInLattice);
        }
        let c: Vec<BigInt> = c.iter().map(|x| x.to_integer()).collect();
        for i in 0..y.len() {
            let mut s = BigInt::zero();
            for (v, cj) in self.vectors.iter().zip(&c) {
                if v[i] != 0 {
                    s += cj * v[i];
                }
            }
            if s != BigInt::from(y[i]) {
                return Err(CellError::NotInLattice);
            }
        }
        Ok(c)
    }

    pub fn combine(&self, coeffs: &[BigInt]) -> IVec {
        let len = self.vectors.first().map_or(0, |v| v.len());
        let mut out = vec![0i64; len];
        for (v, c) in self.vectors.iter().zip(coeffs) {
            let c = c.to_i64().expect("small coefficient");
            for i in 0..len {
                out[i] += c * v[i];
            }
        }
        out
    }
}
