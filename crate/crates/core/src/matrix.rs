//! Dense integer matrices with exact arithmetic: determinants, characteristic
//! polynomials, Hermite and Smith normal forms, and integer kernels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    #[serde(with = "crate::report::bigint_vec")]
    data: Vec<BigInt>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_vecs()).finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return invalid("ragged matrix rows");
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for literals; panics on ragged input.
    pub fn from_i64<const C: usize>(rows: &[[i64; C]]) -> Self {
        Matrix {
            rows: rows.len(),
            cols: C,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if self.cols != v.len() {
            return invalid("matrix-vector dimension mismatch");
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `x^T M y` for a square matrix.
    pub fn bilinear(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        debug_assert!(self.is_square() && x.len() == self.rows && y.len() == self.rows);
        let mut acc = BigInt::zero();
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for j in 0..self.cols {
                row += &self[(i, j)] * &y[j];
            }
            acc += &x[i] * row;
        }
        acc
    }

    /// `B G B^T` where the rows of `self` are the basis vectors `B`.
    pub fn congruence(&self, gram: &Matrix) -> Result<Matrix> {
        self.mul(gram)?.mul(&self.transpose())
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Characteristic polynomial `det(x I - M)`, coefficients from the constant
    /// term upward (monic, length `n + 1`). Faddeev-LeVerrier; every division
    /// is exact over the integers.
    pub fn charpoly(&self) -> Vec<BigInt> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m).expect("square");
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self.mul(&next).expect("square");
            coeffs[n - k] = -am.trace() / BigInt::from(k);
            m = next;
        }
        coeffs
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a <- row_a + k * row_b
    fn add_row_multiple(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(b, j)] * k;
            self[(a, j)] += v;
        }
    }

    fn add_col_multiple(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, b)] * k;
            self[(i, a)] += v;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -&self[(a, j)];
            self[(a, j)] = v;
        }
    }

    /// Row-style Hermite normal form restricted to the first `pivot_cols`
    /// columns; the remaining columns ride along with the row operations.
    /// Pivots are positive, entries above a pivot lie in `[0, pivot)`, and the
    /// returned rank counts the nonzero rows of the pivot block (all of them
    /// come first).
    pub(crate) fn hermite_in_place(&mut self, pivot_cols: usize) -> usize {
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            // Euclid down the column until a single nonzero entry remains.
            loop {
                let pivot = (r..self.rows)
                    .filter(|&i| !self[(i, c)].is_zero())
                    .min_by(|&i, &j| self[(i, c)].abs().cmp(&self[(j, c)].abs()));
                let Some(p) = pivot else { break };
                self.swap_rows(r, p);
                let mut done = true;
                for i in r + 1..self.rows {
                    if self[(i, c)].is_zero() {
                        continue;
                    }
                    let q = self[(i, c)].div_floor(&self[(r, c)]);
                    self.add_row_multiple(i, r, &-q);
                    if !self[(i, c)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if self[(r, c)].is_zero() {
                continue;
            }
            if self[(r, c)].is_negative() {
                self.negate_row(r);
            }
            for i in 0..r {
                let q = self[(i, c)].div_floor(&self[(r, c)]);
                self.add_row_multiple(i, r, &-q);
            }
            r += 1;
        }
        r
    }

    /// Row Hermite normal form of the row lattice, zero rows dropped.
    /// This is the canonical basis used for every reported sublattice.
    pub fn hermite_rows(&self) -> Matrix {
        let mut h = self.clone();
        let rank = h.hermite_in_place(h.cols);
        h.data.truncate(rank * h.cols);
        h.rows = rank;
        h
    }

    /// Basis (as rows, in Hermite normal form) of the integer kernel
    /// `{x in Z^cols : M x = 0}`. The result is saturated in `Z^cols`.
    pub fn integer_kernel(&self) -> Matrix {
        let n = self.cols;
        let t = self.transpose();
        let mut aug = Self::zeros(n, t.cols + n);
        for i in 0..n {
            for j in 0..t.cols {
                aug[(i, j)] = t[(i, j)].clone();
            }
            aug[(i, t.cols + i)] = BigInt::one();
        }
        let rank = aug.hermite_in_place(t.cols);
        let mut rows = Vec::new();
        for i in rank..n {
            rows.push((0..n).map(|j| aug[(i, t.cols + j)].clone()).collect());
        }
        if rows.is_empty() {
            return Self::zeros(0, n);
        }
        Matrix::from_rows(rows).expect("uniform").hermite_rows()
    }

    pub fn rank(&self) -> usize {
        self.hermite_rows().rows
    }

    /// Nonzero invariant factors of the Smith normal form, each dividing the
    /// next. Unit factors are kept, so the list has length `rank`.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut t = 0;
        let mut diag = Vec::new();
        while t < m.min(n) {
            let smallest = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()));
            let Some((pi, pj)) = smallest else { break };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    a.add_row_multiple(i, t, &-q);
                    if !a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    a.add_col_multiple(j, t, &-q);
                    if !a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    // divisibility: fold any offending row into the pivot row
                    let bad = (t + 1..m)
                        .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| !(&a[(i, j)] % &a[(t, t)]).is_zero());
                    match bad {
                        None => break,
                        Some((i, _)) => a.add_row_multiple(t, i, &BigInt::one()),
                    }
                }
                let smallest = (t..m)
                    .flat_map(|i| (t..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| (i == t || j == t) && !a[(i, j)].is_zero())
                    .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()));
                if let Some((pi, pj)) = smallest {
                    a.swap_rows(t, pi);
                    a.swap_cols(t, pj);
                }
            }
            diag.push(a[(t, t)].abs());
            t += 1;
        }
        diag
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn determinants() {
        assert_eq!(Matrix::from_i64(&[[8, -33], [-33, 132]]).determinant(), b(-33));
        assert_eq!(Matrix::from_i64(&[[6, -2], [-2, -24]]).determinant(), b(-148));
        assert_eq!(Matrix::from_i64(&[[0, 0, -1], [0, 4, 0], [-1, 0, 0]]).determinant(), b(-4));
        assert_eq!(Matrix::from_i64(&[[0, 1], [0, 5]]).determinant(), b(0));
        assert_eq!(Matrix::from_i64(&[[-2, 1, 0], [1, -2, 1], [0, 1, 24]]).determinant(), b(74));
    }

    #[test]
    fn charpoly_of_small_matrices() {
        let m = Matrix::from_i64(&[[2, 1], [1, 1]]);
        assert_eq!(m.charpoly(), vec![b(1), b(-3), b(1)]);
        let r = Matrix::from_i64(&[[0, 0, -1], [0, 1, 0], [-1, 0, 0]]);
        // (x - 1)^2 (x + 1) = x^3 - x^2 - x + 1
        assert_eq!(r.charpoly(), vec![b(1), b(-1), b(-1), b(1)]);
    }

    #[test]
    fn kernel_of_mukai_functional() {
        // pairing with v = (4, 1, 16) at h^2 = 132 is a -> -16 r + 132 t - 4 s
        let f = Matrix::from_i64(&[[-16, 132, -4]]);
        let k = f.integer_kernel();
        assert_eq!(k, Matrix::from_i64(&[[1, 0, -4], [0, 1, 33]]));
    }

    #[test]
    fn smith_of_diagonal_and_mixed() {
        assert_eq!(Matrix::from_i64(&[[2, 0], [0, 2]]).smith_invariants(), vec![b(2), b(2)]);
        assert_eq!(Matrix::from_i64(&[[2, 0], [0, 3]]).smith_invariants(), vec![b(1), b(6)]);
        assert_eq!(
            Matrix::from_i64(&[[8, -33], [-33, 132]]).smith_invariants(),
            vec![b(1), b(33)]
        );
        assert_eq!(Matrix::from_i64(&[[0, 1], [1, 0]]).smith_invariants(), vec![b(1), b(1)]);
    }

    #[test]
    fn hermite_is_canonical() {
        let a = Matrix::from_i64(&[[2, 4], [3, 7]]);
        let bm = Matrix::from_i64(&[[5, 11], [3, 7]]);
        assert_eq!(a.hermite_rows(), bm.hermite_rows());
        assert_eq!(Matrix::from_i64(&[[2, 0]]).hermite_rows(), Matrix::from_i64(&[[2, 0]]));
    }
}
