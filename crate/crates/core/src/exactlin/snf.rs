use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactMatrix, LinAlgError, Rational};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | … ` and non-negative entries.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: ExactMatrix,
    pub d: ExactMatrix,
    pub v: ExactMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Diagonal entries `d_1, …, d_min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].to_integer()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().take(self.rank).collect()
    }

    /// The full contract against the input: `U·A·V = D`, `U` and `V` integral
    /// with determinant ±1, `D` diagonal, non-negative and dividing down.
    pub fn verify(&self, a: &ExactMatrix) -> bool {
        let unimodular = |m: &ExactMatrix| {
            m.is_integral() && super::determinant(m).is_ok_and(|d| d.abs() == Rational::one())
        };
        let diag_only = (0..self.d.rows())
            .all(|i| (0..self.d.cols()).all(|j| i == j || self.d[(i, j)].is_zero()));
        let diag = self.diagonal();
        let nonneg = diag.iter().all(|x| !x.is_negative());
        let nonzero = diag.iter().take_while(|x| !x.is_zero()).count();
        let divides = diag.windows(2).all(|w| w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (w[1].clone() % &w[0]).is_zero());
        &(&self.u * a) * &self.v == self.d
            && unimodular(&self.u)
            && unimodular(&self.v)
            && self.d.is_integral()
            && diag_only
            && nonneg
            && nonzero == self.rank
            && divides
    }
}

type IMat = Vec<Vec<BigInt>>;

fn to_int(m: &ExactMatrix) -> Result<IMat, LinAlgError> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let x = &m[(i, j)];
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(LinAlgError::NotIntegral { row: i, col: j })
                    }
                })
                .collect()
        })
        .collect()
}

fn from_int(m: &IMat, rows: usize, cols: usize) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(rows, cols);
    for (i, r) in m.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            if !x.is_zero() {
                out[(i, j)] = Rational::from_integer(x.clone());
            }
        }
    }
    out
}

fn eye(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

struct Calc {
    a: IMat,
    u: IMat,
    v: IMat,
    m: usize,
    n: usize,
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in self.a.iter_mut() {
                r.swap(i, j);
            }
            for r in self.v.iter_mut() {
                r.swap(i, j);
            }
        }
    }

    // row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.n {
            if !self.a[j][k].is_zero() {
                let t = &self.a[j][k] * c;
                self.a[i][k] += t;
            }
        }
        for k in 0..self.m {
            if !self.u[j][k].is_zero() {
                let t = &self.u[j][k] * c;
                self.u[i][k] += t;
            }
        }
    }

    // col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for r in self.a.iter_mut() {
            if !r[j].is_zero() {
                let t = &r[j] * c;
                r[i] += t;
            }
        }
        for r in self.v.iter_mut() {
            if !r[j].is_zero() {
                let t = &r[j] * c;
                r[i] += t;
            }
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.smallest_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let qt = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &-qt);
                    if !self.a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let qt = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &-qt);
                    if !self.a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // bring the smallest remainder in row/column t to the pivot
                    let mut best = (t, t);
                    for i in t + 1..self.m {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.m).find(|&i| (t + 1..self.n).any(|j| !self.a[i][j].is_multiple_of(&p)));
                if let Some(i) = bad {
                    self.add_row(t, i, &BigInt::one());
                    continue;
                }
                break;
            }
            if self.a[t][t].is_negative() {
                for k in 0..self.n {
                    self.a[t][k] = -&self.a[t][k];
                }
                for k in 0..self.m {
                    self.u[t][k] = -&self.u[t][k];
                }
            }
            t += 1;
        }
        t
    }
}

pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithForm, LinAlgError> {
    let a = to_int(m)?;
    let (rows, cols) = (m.rows(), m.cols());
    let mut c = Calc { a, u: eye(rows), v: eye(cols), m: rows, n: cols };
    let rank = c.run();
    Ok(SmithForm {
        u: from_int(&c.u, rows, rows),
        d: from_int(&c.a, rows, cols),
        v: from_int(&c.v, cols, cols),
        rank,
    })
}

/// A Z-basis of `{x ∈ Z^cols : m·x = 0}`; automatically saturated.
pub fn integer_kernel(m: &ExactMatrix) -> Result<Vec<Vec<BigInt>>, LinAlgError> {
    let s = smith_normal_form(m)?;
    Ok((s.rank..m.cols())
        .map(|j| (0..m.cols()).map(|i| s.v[(i, j)].to_integer()).collect())
        .collect())
}
