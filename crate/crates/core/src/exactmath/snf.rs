use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{ExactError, IntMatrix};

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal in divisibility order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries `S[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Work {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        fn op(m: &mut [Vec<BigInt>], i: usize, j: usize, k: &BigInt) {
            let src = m[j].clone();
            for (d, s) in m[i].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *d += k * s;
                }
            }
        }
        op(&mut self.a, i, j, k);
        if let Some(u) = self.u.as_mut() {
            op(u, i, j, k);
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        fn op(m: &mut [Vec<BigInt>], i: usize, j: usize, k: &BigInt) {
            for row in m.iter_mut() {
                if !row[j].is_zero() {
                    let t = k * &row[j];
                    row[i] += t;
                }
            }
        }
        op(&mut self.a, i, j, k);
        if let Some(v) = self.v.as_mut() {
            op(v, i, j, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
    }

    fn run(&mut self) {
        let (m, n) = (self.rows(), self.cols());
        for t in 0..m.min(n) {
            loop {
                // Smallest nonzero |entry| in the trailing block becomes the pivot.
                let mut best: Option<(usize, usize)> = None;
                for i in t..m {
                    for j in t..n {
                        let e = &self.a[i][j];
                        if e.is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| e.abs() < self.a[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else { return };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = &self.a[i][t] / &p;
                    self.add_row(i, t, &-q);
                    clean &= self.a[i][t].is_zero();
                }
                for j in t + 1..n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = &self.a[t][j] / &p;
                    self.add_col(j, t, &-q);
                    clean &= self.a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }
                let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad_row {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

fn to_rows(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..a.rows()).map(|r| a.row(r).to_vec()).collect()
}

/// Smith normal form with unimodular cofactors.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut w = Work {
        a: to_rows(a),
        u: Some(identity_rows(a.rows())),
        v: Some(identity_rows(a.cols())),
    };
    if a.rows() > 0 && a.cols() > 0 {
        w.run();
    }
    let pack = |rows: Vec<Vec<BigInt>>, c: usize| IntMatrix::from_big_rows(rows, c).expect("rectangular");
    SnfResult {
        s: if a.rows() > 0 { pack(w.a, a.cols()) } else { IntMatrix::zeros(0, a.cols()) },
        u: pack(w.u.unwrap(), a.rows()),
        v: pack(w.v.unwrap(), a.cols()),
    }
}

/// Diagonal of the Smith normal form (length `min(rows, cols)`), without cofactors.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    if a.rows() == 0 || a.cols() == 0 {
        return Vec::new();
    }
    let mut w = Work {
        a: to_rows(a),
        u: None,
        v: None,
    };
    w.run();
    (0..a.rows().min(a.cols())).map(|i| w.a[i][i].clone()).collect()
}

/// Order of the cokernel `Z^rows / A Z^cols`, or `None` when it is infinite.
pub fn cokernel_order(a: &IntMatrix) -> Option<BigInt> {
    let d = invariant_factors(a);
    if d.len() < a.rows() || d.iter().any(Zero::is_zero) {
        return None;
    }
    Some(d.iter().product())
}

/// Basis of the integer kernel `{x : A x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols()).map(|j| snf.v.column(j)).collect()
}

/// An integer solution of `A x = b`, or `None`.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, ExactError> {
    if b.len() != a.rows() {
        return Err(ExactError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b)?;
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !ci.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = ci.div_rem(&d);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(snf.v.mul_vec(&y)?))
}
