//! Dense matrices over an exact scalar ring. Determinants over Q use
//! fraction-free Bareiss elimination on a denominator-cleared integer matrix;
//! determinants over polynomial entries use minor expansion.

use super::rat::Rat;
use super::ExactError;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Scalar ring operations needed by `Mat`.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        Mat { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut out = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul_mat(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out: Mat<T> = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a.mul(&rhs[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&term);
                }
            }
        }
        out
    }

    pub fn add_mat(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Mat::new(self.rows, self.cols, data)
    }

    pub fn sub_mat(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Mat::new(self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &T) -> Mat<T> {
        Mat::new(
            self.rows,
            self.cols,
            self.data.iter().map(|x| x.mul(c)).collect(),
        )
    }

    pub fn neg_mat(&self) -> Mat<T> {
        Mat::new(self.rows, self.cols, self.data.iter().map(|x| x.neg()).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.rows)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat<T> {
        let mut out = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat<T>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self[(i, j)].mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    /// Determinant by recursive minor expansion with memoization over column
    /// subsets. Used for polynomial entries; exponential in size, fine for the
    /// symbolic modes which are guarded at small n.
    pub fn det_minor_expansion(&self) -> T {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        assert!(n <= 12, "minor expansion guard");
        let mut memo: std::collections::HashMap<u32, T> = std::collections::HashMap::new();
        memo.insert(0, T::one());
        self.det_minor_rec(n, (1u32 << n) - 1, &mut memo)
    }

    fn det_minor_rec(&self, n: usize, cols: u32, memo: &mut std::collections::HashMap<u32, T>) -> T {
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let k = cols.count_ones() as usize;
        let row = n - k; // expand along successive rows
        let mut acc = T::zero();
        let mut sign_pos = true;
        for j in 0..n {
            if cols & (1 << j) == 0 {
                continue;
            }
            let a = &self[(row, j)];
            if !a.is_zero() {
                let sub = self.det_minor_rec(n, cols & !(1 << j), memo);
                let term = a.mul(&sub);
                acc = if sign_pos { acc.add(&term) } else { acc.sub(&term) };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(cols, acc.clone());
        acc
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat<Rat> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_int(v)).collect())
                .collect(),
        )
    }

    /// Exact determinant via fraction-free Bareiss elimination on the
    /// denominator-cleared integer matrix.
    pub fn det_bareiss(&self) -> Result<Rat, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        // Clear denominators row by row: det(M) = det(Z) / prod(row factors).
        let mut z: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        let mut denom = BigInt::one();
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = num_integer::lcm(lcm, self[(i, j)].denom().clone());
            }
            let row = (0..n)
                .map(|j| self[(i, j)].numer() * (&lcm / self[(i, j)].denom()))
                .collect();
            z.push(row);
            denom *= &lcm;
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if z[k][k].is_zero() {
                match (k + 1..n).find(|&r| !z[r][k].is_zero()) {
                    Some(r) => {
                        z.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &z[k][k] * &z[i][j] - &z[i][k] * &z[k][j];
                    // Bareiss: exact division by the previous pivot.
                    debug_assert!(prev.is_one() || (&num % &prev).is_zero());
                    z[i][j] = num / &prev;
                }
                z[i][k] = BigInt::zero();
            }
            prev = z[k][k].clone();
        }
        Ok(Rat::from_bigints(sign * z[n - 1][n - 1].clone(), denom))
    }

    /// Exact inverse by Gauss-Jordan elimination; None when singular.
    pub fn inverse(&self) -> Result<Option<Mat<Rat>>, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::<Rat>::identity(n);
        for c in 0..n {
            let pivot = match (c..n).find(|&r| !a[(r, c)].is_zero()) {
                Some(p) => p,
                None => return Ok(None),
            };
            if pivot != c {
                for j in 0..n {
                    let t = a[(c, j)].clone();
                    a[(c, j)] = a[(pivot, j)].clone();
                    a[(pivot, j)] = t;
                    let t = inv[(c, j)].clone();
                    inv[(c, j)] = inv[(pivot, j)].clone();
                    inv[(pivot, j)] = t;
                }
            }
            let pinv = a[(c, c)].inv();
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] * &pinv;
                inv[(c, j)] = &inv[(c, j)] * &pinv;
            }
            for r in 0..n {
                if r != c && !a[(r, c)].is_zero() {
                    let f = a[(r, c)].clone();
                    for j in 0..n {
                        let t = &a[(c, j)] * &f;
                        a[(r, j)] = &a[(r, j)] - &t;
                        let t = &inv[(c, j)] * &f;
                        inv[(r, j)] = &inv[(r, j)] - &t;
                    }
                }
            }
        }
        Ok(Some(inv))
    }

    /// Exact determinant together with the inverse when it exists.
    pub fn det_and_inverse(&self) -> Result<(Rat, Option<Mat<Rat>>), ExactError> {
        let det = self.det_bareiss()?;
        let inv = if det.is_zero() { None } else { self.inverse()? };
        Ok((det, inv))
    }

    /// Adjugate matrix (transpose of cofactors), exact.
    pub fn adjugate(&self) -> Mat<Rat> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Mat::identity(1);
        }
        let mut adj = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut minor = Mat::zero(n - 1, n - 1);
                let mut r = 0;
                for ii in 0..n {
                    if ii == i {
                        continue;
                    }
                    let mut c = 0;
                    for jj in 0..n {
                        if jj == j {
                            continue;
                        }
                        minor[(r, c)] = self[(ii, jj)].clone();
                        c += 1;
                    }
                    r += 1;
                }
                let cof = minor.det_bareiss().expect("square minor");
                let s = if (i + j) % 2 == 0 { cof } else { -cof };
                adj[(j, i)] = s;
            }
        }
        adj
    }

    pub fn entries_to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect()
    }

    /// Random matrix with integer entries in [-bound, bound].
    pub fn random_int<R: rand::Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Mat<Rat> {
        let data = (0..rows * cols).map(|_| Rat::random_int(rng, bound)).collect();
        Mat::new(rows, cols, data)
    }

    /// Random upper-triangular unipotent matrix with entries in [-bound, bound].
    pub fn random_unipotent<R: rand::Rng>(rng: &mut R, n: usize, bound: i64) -> Mat<Rat> {
        let mut u = Mat::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                u[(i, j)] = Rat::random_int(rng, bound);
            }
        }
        u
    }

    pub fn is_upper_unipotent(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = &self[(i, j)];
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if i > j && !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
