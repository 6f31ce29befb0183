//! Exact linear algebra over truncated Laurent series: matrices, Gaussian
//! elimination with valuation pivoting, and Smith reduction over the
//! (discrete-valuation) power-series ring.

use thiserror::Error;

use crate::scalars::{Q, Series};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("precision exhausted: cannot certify a pivot valuation")]
    PrecisionExhausted,
    #[error("matrix is singular through the tracked window")]
    Singular,
    #[error("dimension mismatch")]
    Dimension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Series>,
}

impl SeriesMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SeriesMatrix { rows, cols, data: vec![Series::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SeriesMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Series::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Series) -> Self {
        let mut m = SeriesMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn scalar(n: usize, s: &Series) -> Self {
        let mut m = SeriesMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn min_prec(&self) -> i64 {
        self.data.iter().map(Series::prec).min().unwrap_or(crate::scalars::PREC_EXACT)
    }

    pub fn truncate(&self, prec: i64) -> SeriesMatrix {
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|s| s.truncate(prec)).collect(),
        }
    }

    pub fn add(&self, rhs: &SeriesMatrix) -> SeriesMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> SeriesMatrix {
        SeriesMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|s| s.scale(c)).collect() }
    }

    pub fn shift(&self, k: i64) -> SeriesMatrix {
        SeriesMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|s| s.shift(k)).collect() }
    }

    pub fn mul(&self, rhs: &SeriesMatrix) -> SeriesMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = SeriesMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Series::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self[(i, k)].mul(&rhs[(k, j)]));
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn ddu(&self) -> SeriesMatrix {
        SeriesMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Series::ddu).collect() }
    }

    pub fn hstack(&self, rhs: &SeriesMatrix) -> SeriesMatrix {
        assert_eq!(self.rows, rhs.rows);
        SeriesMatrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn column(&self, j: usize) -> Vec<Series> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<Series>>) -> SeriesMatrix {
        let m = SeriesMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone());
        m
    }

    /// Evaluate at u = 0 (requires every entry to have no pole and a window
    /// containing 0).
    pub fn at_zero(&self) -> Result<Vec<Vec<Q>>, LinalgError> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let s = &self[(i, j)];
                if let Some(v) = s.valuation() {
                    if v < 0 {
                        return Err(LinalgError::Singular);
                    }
                }
                out[i][j] = s.coeff(0).ok_or(LinalgError::PrecisionExhausted)?;
            }
        }
        Ok(out)
    }

    /// Solve M X = B for square M, by Gaussian elimination with minimal-
    /// valuation pivoting over the Laurent field.
    pub fn solve(&self, b: &SeriesMatrix) -> Result<SeriesMatrix, LinalgError> {
        if self.rows != self.cols || b.rows != self.rows {
            return Err(LinalgError::Dimension);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut rhs = b.clone();
        let mut row_of_col = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for col in 0..n {
            // pick the unused row with minimal valuation in this column
            let mut best: Option<(usize, i64)> = None;
            for r in 0..n {
                if used[r] {
                    continue;
                }
                if let Some(v) = m[(r, col)].valuation() {
                    if best.map_or(true, |(_, bv)| v < bv) {
                        best = Some((r, v));
                    }
                }
            }
            let Some((r, _)) = best else {
                let any_unknown = (0..n).any(|r| !used[r] && !m[(r, col)].is_exact());
                return Err(if any_unknown {
                    LinalgError::PrecisionExhausted
                } else {
                    LinalgError::Singular
                });
            };
            used[r] = true;
            row_of_col[col] = r;
            let inv = m[(r, col)].invert().map_err(|_| LinalgError::Singular)?;
            for rr in 0..n {
                if rr == r {
                    continue;
                }
                let factor = m[(rr, col)].mul(&inv);
                if factor.is_zero_through_window() {
                    continue;
                }
                for cc in 0..n {
                    let delta = factor.mul(&m[(r, cc)]);
                    m[(rr, cc)] = m[(rr, cc)].sub(&delta);
                }
                for cc in 0..rhs.cols {
                    let delta = factor.mul(&rhs[(r, cc)]);
                    rhs[(rr, cc)] = rhs[(rr, cc)].sub(&delta);
                }
            }
        }
        let mut out = SeriesMatrix::zero(n, b.cols);
        for col in 0..n {
            let r = row_of_col[col];
            let inv = m[(r, col)].invert().map_err(|_| LinalgError::Singular)?;
            for cc in 0..b.cols {
                out[(col, cc)] = rhs[(r, cc)].mul(&inv);
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<SeriesMatrix, LinalgError> {
        self.solve(&SeriesMatrix::identity(self.rows))
    }
}

impl std::ops::Index<(usize, usize)> for SeriesMatrix {
    type Output = Series;
    fn index(&self, (i, j): (usize, usize)) -> &Series {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SeriesMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Series {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith reduction over the series ring: M = U⁻¹ · diag(u^{e_1},..) · V⁻¹
/// with pivoting on minimal valuation. Exponents may be negative for
/// Laurent inputs. Also returns the transforms needed downstream:
/// `u_inv` (left) and `v` (right) with  Σ = u · M · v, M = u_inv · Σ · v_inv.
pub struct Smith {
    /// invariant-factor exponents, ascending; length = rank
    pub exponents: Vec<i64>,
    pub rank: usize,
    /// Σ = u_fwd · M · v_fwd
    pub u_fwd: SeriesMatrix,
    pub v_fwd: SeriesMatrix,
    /// inverse transforms: M = u_inv · Σ · v_inv
    pub u_inv: SeriesMatrix,
    pub v_inv: SeriesMatrix,
}

pub fn smith(m: &SeriesMatrix) -> Result<Smith, LinalgError> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u_fwd = SeriesMatrix::identity(rows);
    let mut u_inv = SeriesMatrix::identity(rows);
    let mut v_fwd = SeriesMatrix::identity(cols);
    let mut v_inv = SeriesMatrix::identity(cols);
    let mut exponents = Vec::new();
    let mut k = 0usize;
    while k < rows.min(cols) {
        // find the entry of minimal valuation in the remaining block
        let mut best: Option<(usize, usize, i64)> = None;
        let mut unknown = false;
        for i in k..rows {
            for j in k..cols {
                match a[(i, j)].valuation() {
                    Some(v) => {
                        if best.map_or(true, |(.., bv)| v < bv) {
                            best = Some((i, j, v));
                        }
                    }
                    None => {
                        if !a[(i, j)].is_exact() {
                            unknown = true;
                        }
                    }
                }
            }
        }
        let Some((pi, pj, pv)) = best else {
            if unknown {
                // remaining block is zero through its window but not exactly:
                // the zero invariant factors cannot be certified beyond it
            }
            break;
        };
        // the pivot valuation must be certified smaller than anything hidden
        for i in k..rows {
            for j in k..cols {
                if a[(i, j)].valuation().is_none() && !a[(i, j)].is_exact() && a[(i, j)].prec() <= pv {
                    return Err(LinalgError::PrecisionExhausted);
                }
            }
        }
        // move pivot to (k, k)
        if pi != k {
            swap_rows(&mut a, pi, k);
            swap_rows(&mut u_fwd, pi, k);
            swap_cols(&mut u_inv, pi, k);
        }
        if pj != k {
            swap_cols(&mut a, pj, k);
            swap_cols(&mut v_fwd, pj, k);
            swap_rows(&mut v_inv, pj, k);
        }
        // normalize pivot to u^pv: divide the row by the unit part
        let unit = a[(k, k)].shift(-pv);
        let unit_inv = unit.invert().map_err(|_| LinalgError::PrecisionExhausted)?;
        row_scale(&mut a, k, &unit_inv);
        row_scale(&mut u_fwd, k, &unit_inv);
        col_scale(&mut u_inv, k, &unit);
        // clear the rest of column k and row k
        for i in 0..rows {
            if i == k {
                continue;
            }
            if a[(i, k)].valuation().is_some() {
                let factor = a[(i, k)].shift(-pv);
                row_axpy(&mut a, i, k, &factor);
                row_axpy(&mut u_fwd, i, k, &factor);
                col_axpy_inv(&mut u_inv, i, k, &factor);
            }
        }
        for j in 0..cols {
            if j == k {
                continue;
            }
            if a[(k, j)].valuation().is_some() {
                let factor = a[(k, j)].shift(-pv);
                col_axpy(&mut a, j, k, &factor);
                col_axpy(&mut v_fwd, j, k, &factor);
                row_axpy_inv(&mut v_inv, j, k, &factor);
            }
        }
        exponents.push(pv);
        k += 1;
    }
    // exponents ascending because pivots are chosen globally minimal
    let rank = exponents.len();
    Ok(Smith { exponents, rank, u_fwd, v_fwd, u_inv, v_inv })
}

fn swap_rows(m: &mut SeriesMatrix, a: usize, b: usize) {
    for j in 0..m.cols {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
}

fn swap_cols(m: &mut SeriesMatrix, a: usize, b: usize) {
    for i in 0..m.rows {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

fn row_scale(m: &mut SeriesMatrix, r: usize, s: &Series) {
    for j in 0..m.cols {
        m[(r, j)] = m[(r, j)].mul(s);
    }
}

fn col_scale(m: &mut SeriesMatrix, c: usize, s: &Series) {
    for i in 0..m.rows {
        m[(i, c)] = m[(i, c)].mul(s);
    }
}

/// row_i -= factor · row_k
fn row_axpy(m: &mut SeriesMatrix, i: usize, k: usize, factor: &Series) {
    for j in 0..m.cols {
        let d = factor.mul(&m[(k, j)]);
        m[(i, j)] = m[(i, j)].sub(&d);
    }
}

/// col_k += factor · col_i  (inverse bookkeeping of row_axpy)
fn col_axpy_inv(m: &mut SeriesMatrix, i: usize, k: usize, factor: &Series) {
    for r in 0..m.rows {
        let d = factor.mul(&m[(r, i)]);
        m[(r, k)] = m[(r, k)].add(&d);
    }
}

/// col_j -= factor · col_k
fn col_axpy(m: &mut SeriesMatrix, j: usize, k: usize, factor: &Series) {
    for i in 0..m.rows {
        let d = factor.mul(&m[(i, k)]);
        m[(i, j)] = m[(i, j)].sub(&d);
    }
}

/// row_k += factor · row_j  (inverse bookkeeping of col_axpy)
fn row_axpy_inv(m: &mut SeriesMatrix, j: usize, k: usize, factor: &Series) {
    for c in 0..m.cols {
        let d = factor.mul(&m[(j, c)]);
        m[(k, c)] = m[(k, c)].add(&d);
    }
}

/// Dense exact RREF over the rationals; returns (rank, pivot columns).
pub fn rref_q(mat: &mut Vec<Vec<Q>>) -> (usize, Vec<usize>) {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else { continue };
        mat.swap(r, pr);
        let inv = mat[r][c].recip();
        for j in c..cols {
            mat[r][j] = &mat[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..cols {
                    let d = &mat[r][j] * &f;
                    mat[i][j] = &mat[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (r, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q::qi;

    fn u(k: i64) -> Series {
        Series::monomial(qi(1), k)
    }

    #[test]
    fn smith_diagonal_example() {
        // diag(u, 0): invariant factor u, one zero column
        let mut m = SeriesMatrix::zero(2, 2);
        m[(0, 0)] = u(1);
        let s = smith(&m).unwrap();
        assert_eq!(s.exponents, vec![1]);
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn smith_identity() {
        let s = smith(&SeriesMatrix::identity(3)).unwrap();
        assert_eq!(s.exponents, vec![0, 0, 0]);
    }

    #[test]
    fn smith_triangular_example() {
        // [[u^2, u^3], [0, u]] has invariant factors u, u^2
        let mut m = SeriesMatrix::zero(2, 2);
        m[(0, 0)] = u(2);
        m[(0, 1)] = u(3);
        m[(1, 1)] = u(1);
        let s = smith(&m).unwrap();
        assert_eq!(s.exponents, vec![1, 2]);
        // transforms reproduce the matrix: M = u_inv Σ v_inv
        let mut sigma = SeriesMatrix::zero(2, 2);
        for (i, e) in s.exponents.iter().enumerate() {
            sigma[(i, i)] = u(*e);
        }
        let back = s.u_inv.mul(&sigma).mul(&s.v_inv);
        for i in 0..2 {
            for j in 0..2 {
                assert!(back[(i, j)].sub(&m[(i, j)]).is_zero_through_window());
            }
        }
    }

    #[test]
    fn smith_invariance_under_permutation() {
        let mut m = SeriesMatrix::zero(2, 3);
        m[(0, 0)] = u(2);
        m[(0, 2)] = u(0);
        m[(1, 1)] = u(1);
        let s1 = smith(&m).unwrap();
        // permute rows/cols
        let mut p = SeriesMatrix::zero(2, 3);
        p[(1, 2)] = u(2);
        p[(1, 0)] = u(0);
        p[(0, 1)] = u(1);
        let s2 = smith(&p).unwrap();
        assert_eq!(s1.exponents, s2.exponents);
    }

    #[test]
    fn solve_round_trip() {
        let mut m = SeriesMatrix::identity(2);
        m[(0, 1)] = u(1);
        m[(1, 0)] = Series::monomial(qi(2), 0);
        let b = SeriesMatrix::from_fn(2, 1, |i, _| if i == 0 { u(0) } else { u(2) });
        let x = m.solve(&b).unwrap();
        let back = m.mul(&x);
        for i in 0..2 {
            let (eq, _) = back[(i, 0)].eq_on_window(&b[(i, 0)]);
            assert!(eq);
        }
    }

    #[test]
    fn precision_exhaustion_detected() {
        let mut m = SeriesMatrix::zero(1, 1);
        m[(0, 0)] = Series::zero_with_prec(0);
        assert!(matches!(m.solve(&SeriesMatrix::identity(1)), Err(LinalgError::PrecisionExhausted)));
    }
}
