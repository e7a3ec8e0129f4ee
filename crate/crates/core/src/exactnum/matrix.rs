use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Dense matrix over [`ExactScalar`], row-major.
///
/// Group elements are square; rectangular shapes appear for stacked linear
/// systems and subspace bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ExactScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ExactScalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[ExactScalar]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Diagonal ±1 matrix with `-1` at the given 1-based positions.
    pub fn sign_diagonal(n: usize, negated: &[usize]) -> Self {
        let mut m = Self::identity(n);
        for &p in negated {
            m.data[(p - 1) * n + (p - 1)] = ExactScalar::int(-1);
        }
        m
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged integer matrix".into()));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|&x| ExactScalar::int(x))
            .collect();
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_rationals(rows: &[Vec<BigRational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rational matrix".into()));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|x| ExactScalar::Rational(x.clone()))
            .collect();
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(ExactScalar::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn neg(&self) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(ExactScalar::neg).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            a.mul(other.get(k, l)),
                        );
                    }
                }
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn stack(blocks: &[ExactMatrix], cols: usize) -> Result<Self> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "stacking a {}-column block onto {cols} columns",
                    b.cols
                )));
            }
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// `Mᵀ·M = I`, checked exactly.
    pub fn is_orthogonal(&self) -> bool {
        self.is_square()
            && self
                .transpose()
                .mul(self)
                .map(|p| p.is_identity())
                .unwrap_or(false)
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(|x| x.as_rational().is_some())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(ExactScalar::is_integer)
    }

    /// `Some` when every off-diagonal entry is zero and every diagonal entry is ±1.
    pub fn sign_vector(&self) -> Option<Vec<i8>> {
        if !self.is_square() {
            return None;
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if i == j {
                    if v.is_one() {
                        out.push(1);
                    } else if *v == ExactScalar::int(-1) {
                        out.push(-1);
                    } else {
                        return None;
                    }
                } else if !v.is_zero() {
                    return None;
                }
            }
        }
        Some(out)
    }

    /// Rank, by fraction-free elimination for rational matrices and by
    /// field elimination otherwise.
    pub fn rank(&self) -> usize {
        if self.is_rational() {
            let rows: Vec<Vec<BigInt>> = (0..self.rows)
                .map(|i| clear_denominators(self.row(i)))
                .collect();
            bareiss_rank(rows, self.cols)
        } else {
            self.rref().1.len()
        }
    }

    /// Reduced row echelon form over the field and the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, ExactScalar::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n].iter().any(|&p| p >= n) {
            return None;
        }
        let mut inv = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel. Each basis vector has a 1 in its own free
    /// coordinate and 0 in every other free coordinate.
    pub fn nullspace(&self) -> Vec<Vec<ExactScalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![ExactScalar::zero(); self.cols];
                v[f] = ExactScalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, f).neg();
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI - M)`, coefficients from degree 0 up.
    pub fn char_poly(&self) -> Result<Vec<ExactScalar>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "characteristic polynomial of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        // Similarity reduction to upper Hessenberg form.
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !a.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    a.data.swap(i * n + j, m * n + j);
                }
                for j in 0..n {
                    a.data.swap(j * n + i, j * n + m);
                }
            }
            let piv_inv = a.get(m, m - 1).inv().expect("nonzero pivot");
            for i in m + 1..n {
                if a.get(i, m - 1).is_zero() {
                    continue;
                }
                let u = a.get(i, m - 1).mul(&piv_inv);
                for j in 0..n {
                    let v = a.get(i, j).sub(&u.mul(a.get(m, j)));
                    a.set(i, j, v);
                }
                for j in 0..n {
                    let v = a.get(j, m).add(&u.mul(a.get(j, i)));
                    a.set(j, m, v);
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - Σ_i h_{m-i,m} (Π h_{j,j-1}) p_{m-i-1}, 1-based.
        let h = |i: usize, j: usize| a.get(i - 1, j - 1);
        let mut polys: Vec<Vec<ExactScalar>> = vec![vec![ExactScalar::one()]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut p = vec![ExactScalar::zero(); m + 1];
            for (k, c) in prev.iter().enumerate() {
                p[k + 1] = p[k + 1].add(c);
                p[k] = p[k].sub(&h(m, m).mul(c));
            }
            let mut t = ExactScalar::one();
            for i in 1..m {
                t = t.mul(h(m - i + 1, m - i));
                if t.is_zero() {
                    break;
                }
                let coef = h(m - i, m).mul(&t);
                if coef.is_zero() {
                    continue;
                }
                for (k, c) in polys[m - i - 1].iter().enumerate() {
                    p[k] = p[k].sub(&coef.mul(c));
                }
            }
            polys.push(p);
        }
        Ok(polys.pop().unwrap())
    }

    /// Coefficients of `det(I - tM)` in `t`, degree 0 up.
    pub fn det_one_minus_t(&self) -> Result<Vec<ExactScalar>> {
        let mut c = self.char_poly()?;
        c.reverse();
        Ok(c)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn clear_denominators(row: &[ExactScalar]) -> Vec<BigInt> {
    let rats: Vec<&BigRational> = row
        .iter()
        .map(|x| x.as_rational().expect("rational row"))
        .collect();
    let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    rats.iter().map(|r| (*r * &l).to_integer()).collect()
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}
