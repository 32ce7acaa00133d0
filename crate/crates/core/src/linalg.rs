//! Exact integer matrix kernels.
//!
//! Everything here works over arbitrary-precision integers. The [`small`]
//! submodule carries fixed-width fast paths for the tiny matrices that the
//! geometry code produces in bulk; each of them detects overflow and falls
//! back to the `BigInt` routines of this module.
//!
//! # Conventions
//!
//! * Hermite normal form is column-style: `A·U = H` with `U` unimodular and
//!   `H` in lower column echelon form. Pivot `j` sits in row `r_j` with
//!   `r_0 < r_1 < …`, is strictly positive, and every entry above it in its
//!   column is zero. In a pivot row `r_j`, the entries of the earlier columns
//!   (which lie below their own pivots) are reduced into `[0, pivot)`. Zero
//!   columns come last.
//! * Smith normal form: `U·A·V = S` with `S` diagonal, nonnegative, and
//!   `d_1 | d_2 | … | d_r`.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from a list of rows. Ragged input is a shape error.
    pub fn from_rows<T>(rows: &[Vec<T>]) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
    {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols: ncols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<T>(cols: &[Vec<T>]) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
    {
        Ok(Self::from_rows(cols)?.transpose())
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
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

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
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
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Converts to `i64` rows, failing if any entry does not fit.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_i64().ok_or(Error::Overflow("matrix entry")))
                    .collect()
            })
            .collect()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..self.rows {
                if m[i][col].is_zero() {
                    continue;
                }
                let f = m[i][col].clone();
                let g = m[rank][col].clone();
                for j in col..self.cols {
                    let v = &m[i][j] * &g - &m[rank][j] * &f;
                    m[i][j] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `col[dst] -= factor * col[src]`
    fn sub_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let d = self.get(i, src) * factor;
            self.data[i * self.cols + dst] -= d;
        }
    }

    /// `row[dst] -= factor * row[src]`
    fn sub_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let d = self.get(src, j) * factor;
            self.data[dst * self.cols + j] -= d;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.data[i * self.cols + j] = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.data[i * self.cols + j] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.get(i, j)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Hermite normal form together with its unimodular transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    /// Lower column echelon form, `A·U = H`.
    pub h: IntMatrix,
    /// Unimodular column transform.
    pub u: IntMatrix,
    /// Row index of each pivot, in column order. Its length is the rank.
    pub pivot_rows: Vec<usize>,
}

impl HnfResult {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

/// Smith normal form `U·A·V = S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// The nonzero diagonal entries `d_1 | d_2 | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det(a: &IntMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Column-style Hermite normal form, see the module docs for the convention.
pub fn hnf(a: &IntMatrix) -> HnfResult {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.cols);
    let mut pivot_rows = Vec::new();
    let mut r = 0;
    for i in 0..a.rows {
        if r == a.cols {
            break;
        }
        loop {
            let best = (r..a.cols)
                .filter(|&j| !h[(i, j)].is_zero())
                .min_by(|&x, &y| h[(i, x)].abs().cmp(&h[(i, y)].abs()));
            let Some(p) = best else { break };
            h.swap_cols(p, r);
            u.swap_cols(p, r);
            let mut cleared = true;
            for j in r + 1..a.cols {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(i, r)]);
                h.sub_col_multiple(j, r, &q);
                u.sub_col_multiple(j, r, &q);
                if !h[(i, j)].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h[(i, r)].is_zero() {
            continue;
        }
        if h[(i, r)].is_negative() {
            h.negate_col(r);
            u.negate_col(r);
        }
        for j in 0..r {
            let q = h[(i, j)].div_floor(&h[(i, r)]);
            h.sub_col_multiple(j, r, &q);
            u.sub_col_multiple(j, r, &q);
        }
        pivot_rows.push(i);
        r += 1;
    }
    HnfResult { h, u, pivot_rows }
}

/// Smith normal form with transforms.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_snf(s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)]))
            });
            match offender {
                Some(i) => {
                    // row t += row i, then reduce again
                    let minus_one = -BigInt::one();
                    s.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_snf(s, u, v)
}

fn finish_snf(s: IntMatrix, u: IntMatrix, v: IntMatrix) -> SnfResult {
    SnfResult { s, u, v }
}

/// One integer solution of `A·x = b` together with a basis of the integer
/// kernel of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

impl IntegerSolution {
    /// The representative of `particular + kernel` reduced against the
    /// Hermite basis of the kernel lattice. It does not depend on which
    /// particular solution was found.
    pub fn canonical(&self) -> Vec<BigInt> {
        let mut x = self.particular.clone();
        if self.kernel.is_empty() {
            return x;
        }
        let k = IntMatrix::from_columns(&self.kernel).expect("kernel vectors share a length");
        let HnfResult { h, pivot_rows, .. } = hnf(&k);
        for (j, &row) in pivot_rows.iter().enumerate() {
            let q = x[row].div_floor(&h[(row, j)]);
            if q.is_zero() {
                continue;
            }
            for (i, xi) in x.iter_mut().enumerate() {
                *xi -= &q * &h[(i, j)];
            }
        }
        x
    }
}

/// Solves `A·x = b` over the integers. Returns `None` when no integer
/// solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<IntegerSolution>> {
    if b.len() != a.rows {
        return Err(Error::Shape(format!(
            "right-hand side has {} entries for {} rows",
            b.len(),
            a.rows
        )));
    }
    let HnfResult { h, u, pivot_rows } = hnf(a);
    let rank = pivot_rows.len();
    let mut y = vec![BigInt::zero(); a.cols];
    let mut next = 0;
    for i in 0..a.rows {
        let acc: BigInt = (0..next).map(|k| &h[(i, k)] * &y[k]).sum();
        if next < rank && pivot_rows[next] == i {
            let (q, rem) = (&b[i] - acc).div_rem(&h[(i, next)]);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[next] = q;
            next += 1;
        } else if acc != b[i] {
            return Ok(None);
        }
    }
    let particular = u.mul_vec(&y)?;
    let kernel = (rank..a.cols).map(|j| u.col(j)).collect();
    Ok(Some(IntegerSolution { particular, kernel }))
}

/// `|det(a)| = 1`.
pub fn is_unimodular(a: &IntMatrix) -> Result<bool> {
    Ok(det(a)?.abs().is_one())
}

/// Inverse of a unimodular matrix.
pub fn inverse_unimodular(a: &IntMatrix) -> Result<IntMatrix> {
    if !is_unimodular(a)? {
        return Err(Error::Argument("matrix is not unimodular".into()));
    }
    // The Hermite form of a unimodular matrix is the identity, so A·U = I.
    Ok(hnf(a).u)
}

/// Fixed-width fast paths. Every routine runs in checked `i128` arithmetic
/// and reruns the `BigInt` kernel when an intermediate value overflows.
pub mod small {
    use super::*;

    fn bareiss_i128(m: &mut [Vec<i128>]) -> Option<i128> {
        let n = m.len();
        if n == 0 {
            return Some(1);
        }
        let mut negate = false;
        let mut prev: i128 = 1;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                    return Some(0);
                };
                m.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = m[i][j].checked_mul(m[k][k])?;
                    let b = m[i][k].checked_mul(m[k][j])?;
                    m[i][j] = a.checked_sub(b)? / prev;
                }
            }
            prev = m[k][k];
        }
        let d = m[n - 1][n - 1];
        Some(if negate { d.checked_neg()? } else { d })
    }

    /// Determinant of a square matrix given by rows.
    pub fn det<R: AsRef<[i64]>>(rows: &[R]) -> Result<BigInt> {
        let n = rows.len();
        if rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        match n {
            0 => return Ok(BigInt::one()),
            1 => return Ok(BigInt::from(rows[0].as_ref()[0])),
            _ => {}
        }
        let mut m: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| x as i128).collect())
            .collect();
        if let Some(d) = bareiss_i128(&mut m) {
            return Ok(BigInt::from(d));
        }
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.as_ref().to_vec()).collect();
        super::det(&IntMatrix::from_rows(&rows)?)
    }

    /// Determinant that must fit in `i64`.
    pub fn det_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<i64> {
        det(rows)?.to_i64().ok_or(Error::Overflow("determinant"))
    }

    /// Rank over the rationals.
    pub fn rank<R: AsRef<[i64]>>(rows: &[R]) -> usize {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| x as i128).collect())
            .collect();
        let fast = (|| -> Option<usize> {
            let mut rank = 0;
            for col in 0..ncols {
                let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
                    continue;
                };
                m.swap(rank, p);
                for i in rank + 1..m.len() {
                    if m[i][col] == 0 {
                        continue;
                    }
                    let f = m[i][col];
                    let g = m[rank][col];
                    let mut content = 0i128;
                    for j in col..ncols {
                        let v = m[i][j].checked_mul(g)?.checked_sub(m[rank][j].checked_mul(f)?)?;
                        m[i][j] = v;
                        content = gcd_i128(content, v);
                    }
                    if content > 1 {
                        for j in col..ncols {
                            m[i][j] /= content;
                        }
                    }
                }
                rank += 1;
            }
            Some(rank)
        })();
        fast.unwrap_or_else(|| {
            let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.as_ref().to_vec()).collect();
            IntMatrix::from_rows(&rows).map(|m| m.rank()).unwrap_or(0)
        })
    }

    pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
        let (mut a, mut b) = (a.abs(), b.abs());
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }

    /// Column-style Hermite form of a small matrix, returning `(H, U)` with
    /// `A·U = H`. Same convention as [`super::hnf`].
    pub fn hnf(rows: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(res) = hnf_checked(rows, m, n) {
            return Ok(res);
        }
        let r = super::hnf(&IntMatrix::from_rows(rows)?);
        Ok((r.h.to_i64_rows()?, r.u.to_i64_rows()?))
    }

    fn hnf_checked(rows: &[Vec<i64>], m: usize, n: usize) -> Option<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
        let mut h: Vec<Vec<i64>> = rows.to_vec();
        let mut u: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        fn sub_col(mat: &mut [Vec<i64>], dst: usize, src: usize, q: i64) -> Option<()> {
            if q == 0 {
                return Some(());
            }
            for row in mat.iter_mut() {
                row[dst] = row[dst].checked_sub(row[src].checked_mul(q)?)?;
            }
            Some(())
        }
        fn swap_col(mat: &mut [Vec<i64>], a: usize, b: usize) {
            for row in mat.iter_mut() {
                row.swap(a, b);
            }
        }
        let mut r = 0;
        for i in 0..m {
            if r == n {
                break;
            }
            loop {
                let best = (r..n)
                    .filter(|&j| h[i][j] != 0)
                    .min_by_key(|&j| h[i][j].unsigned_abs());
                let Some(p) = best else { break };
                swap_col(&mut h, p, r);
                swap_col(&mut u, p, r);
                let mut cleared = true;
                for j in r + 1..n {
                    if h[i][j] == 0 {
                        continue;
                    }
                    let q = floor_div(h[i][j], h[i][r])?;
                    sub_col(&mut h, j, r, q)?;
                    sub_col(&mut u, j, r, q)?;
                    cleared &= h[i][j] == 0;
                }
                if cleared {
                    break;
                }
            }
            if h[i][r] == 0 {
                continue;
            }
            if h[i][r] < 0 {
                for row in h.iter_mut().chain(u.iter_mut()) {
                    row[r] = row[r].checked_neg()?;
                }
            }
            for j in 0..r {
                let q = floor_div(h[i][j], h[i][r])?;
                sub_col(&mut h, j, r, q)?;
                sub_col(&mut u, j, r, q)?;
            }
            r += 1;
        }
        Some((h, u))
    }

    fn floor_div(a: i64, b: i64) -> Option<i64> {
        let q = a.checked_div(b)?;
        if (a % b != 0) && ((a < 0) != (b < 0)) {
            q.checked_sub(1)
        } else {
            Some(q)
        }
    }
}
