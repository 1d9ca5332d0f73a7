use serde::{Deserialize, Serialize};

use super::{ArithError, Rat};

/// Symmetric matrix over ℚ, stored densely in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QSymMatrix {
    dim: usize,
    entries: Vec<Rat>,
}

/// Counts of positive, negative and zero directions of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }
}

impl QSymMatrix {
    pub fn zeros(dim: usize) -> Self {
        QSymMatrix {
            dim,
            entries: vec![Rat::zero(); dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, ArithError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(ArithError::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        let m = QSymMatrix { dim, entries };
        m.check_symmetric()?;
        Ok(m)
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, ArithError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rat::int(x)).collect())
                .collect(),
        )
    }

    fn check_symmetric(&self) -> Result<(), ArithError> {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.get(i, j) != self.get(j, i) {
                    return Err(ArithError::NotSymmetric { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.dim + j]
    }

    /// Sets entries `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[j * self.dim + i] = v.clone();
        self.entries[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Result<Vec<Rat>, ArithError> {
        self.check_len(x.len())?;
        Ok((0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `xᵀ Q x`.
    pub fn quadratic_form(&self, x: &[Rat]) -> Result<Rat, ArithError> {
        let qx = self.mul_vec(x)?;
        Ok(dot(x, &qx))
    }

    /// `Eᵀ Q E` for a square `E` given by rows.
    pub fn congruence(&self, e: &[Vec<Rat>]) -> Result<QSymMatrix, ArithError> {
        self.check_len(e.len())?;
        for row in e {
            self.check_len(row.len())?;
        }
        let n = self.dim;
        // QE
        let mut qe = vec![Rat::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !e[k][j].is_zero() {
                        qe[i * n + j] += &(a * &e[k][j]);
                    }
                }
            }
        }
        let mut out = QSymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v: Rat = (0..n)
                    .filter(|&k| !e[k][i].is_zero())
                    .map(|k| &e[k][i] * &qe[k * n + j])
                    .sum();
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    fn check_len(&self, len: usize) -> Result<(), ArithError> {
        if len == self.dim {
            Ok(())
        } else {
            Err(ArithError::DimensionMismatch {
                expected: self.dim,
                found: len,
            })
        }
    }

    /// Exact determinant by Gaussian elimination.
    pub fn determinant(&self) -> Rat {
        let n = self.dim;
        let mut a = self.rows();
        let mut det = Rat::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Rat::zero();
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            det *= &pivot;
            for i in (k + 1)..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &pivot;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= &t;
                }
            }
        }
        det
    }
}

pub fn dot(x: &[Rat], y: &[Rat]) -> Rat {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Inertia by symmetric congruence diagonalization over ℚ.
///
/// Each step either takes a nonzero diagonal pivot or, when the remaining diagonal vanishes
/// but some off-diagonal entry `a_ij` does not, replaces `e_i` by `e_i + e_j` so that the new
/// diagonal entry is `2 a_ij`.
pub fn inertia(q: &QSymMatrix) -> Inertia {
    let n = q.dim();
    let mut a = q.rows();
    let mut out = Inertia::default();
    let mut k = 0;
    while k < n {
        let pivot = match (k..n).find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let hit =
                    (k..n).find_map(|i| ((i + 1)..n).find(|&j| !a[i][j].is_zero()).map(|j| (i, j)));
                let Some((i, j)) = hit else {
                    out.n_zero += n - k;
                    break;
                };
                // e_i <- e_i + e_j
                for l in 0..n {
                    let t = a[j][l].clone();
                    a[i][l] += &t;
                }
                for l in 0..n {
                    let t = a[l][j].clone();
                    a[l][i] += &t;
                }
                i
            }
        };
        if pivot != k {
            a.swap(pivot, k);
            for row in a.iter_mut() {
                row.swap(pivot, k);
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            out.n_plus += 1;
        } else {
            out.n_minus += 1;
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in (k + 1)..n {
                if !a[k][j].is_zero() {
                    let t = &f * &a[k][j];
                    a[i][j] -= &t;
                }
            }
        }
        for i in (k + 1)..n {
            a[i][k] = Rat::zero();
            a[k][i] = Rat::zero();
        }
        k += 1;
    }
    out
}

/// Finds some `x` with `Q x = r`, or `None` when `r` is outside the column space.
///
/// Free variables are set to zero. Any returned vector is an exact solution.
pub fn solve_linear(q: &QSymMatrix, r: &[Rat]) -> Result<Option<Vec<Rat>>, ArithError> {
    q.check_len(r.len())?;
    let n = q.dim();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row = q.row(i).to_vec();
            row.push(r[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][col].recip()?;
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == row || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in col..=n {
                let t = &f * &a[row][j];
                a[i][j] -= &t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[n].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = a[i][n].clone();
    }
    Ok(Some(x))
}
