//! Dense exact matrices over the rationals.
//!
//! Row reduction clears denominators row by row and then runs Bareiss'
//! fraction-free elimination over the integers; rationals only reappear in the
//! final back substitution.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactRational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ExactRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ExactRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[ExactRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = ExactRational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[ExactRational]) -> Result<Vec<ExactRational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(ExactRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn scale(&self, c: &ExactRational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(LinalgError::Dimension("shape".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
            })
            .collect()
    }

    /// Integer row echelon form and pivot columns, plus the final Bareiss
    /// pivot (± the determinant when square and nonsingular) and row-swap parity.
    fn bareiss(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, BigInt, bool) {
        let mut m = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        let mut odd_swaps = false;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap(p, r);
                odd_swaps = !odd_swaps;
            }
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    debug_assert!((&num % &prev).is_zero());
                    m[i][j] = num / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        (m, pivots, prev, odd_swaps)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    pub fn det(&self) -> Result<ExactRational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Dimension("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(ExactRational::one());
        }
        let (_, pivots, last, odd) = self.bareiss();
        if pivots.len() < self.rows {
            return Ok(ExactRational::zero());
        }
        // undo the per-row denominator clearing
        let scale = (0..self.rows).fold(BigInt::one(), |acc, r| {
            acc * self
                .row(r)
                .iter()
                .fold(BigInt::one(), |d, x| d.lcm(x.denom()))
        });
        let d = BigRational::new(last, scale);
        Ok(if odd { -d } else { d })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (m, pivots, _, _) = self.bareiss();
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (r, row) in m.iter().enumerate().take(pivots.len()) {
            for (c, x) in row.iter().enumerate() {
                out.set(r, c, BigRational::from_integer(x.clone()));
            }
        }
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let inv = out.get(r, pc).recip();
            for c in 0..self.cols {
                let v = out.get(r, c) * &inv;
                out.set(r, c, v);
            }
            for above in 0..r {
                let f = out.get(above, pc).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..self.cols {
                    let v = out.get(above, c) - &f * out.get(r, c);
                    out.set(above, c, v);
                }
            }
        }
        (out, pivots)
    }

    /// Basis of `{x : Mx = 0}`; each vector has a 1 in its free column.
    pub fn nullspace(&self) -> Vec<Vec<ExactRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![ExactRational::zero(); self.cols];
                v[f] = ExactRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, ExactRational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn solve(&self, b: &[ExactRational]) -> Result<Vec<ExactRational>, LinalgError> {
        self.inverse()?.mul_vec(b)
    }

    /// Coefficients `c₀ … c_n` of `det(xI − M)` (monic, `c_n = 1`), by
    /// Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Result<Vec<ExactRational>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Dimension("characteristic polynomial".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![ExactRational::zero(); n + 1];
        coeffs[n] = ExactRational::one();
        let mut m_k = Matrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1} I
            let mut next = self.mul(&m_k)?;
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            let am = self.mul(&next)?;
            let trace = (0..n).fold(ExactRational::zero(), |acc, i| acc + am.get(i, i));
            coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
            m_k = next;
        }
        Ok(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Largest absolute numerator, handy for sanity bounds in tests.
    pub fn max_abs_numer(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.numer().abs())
            .max()
            .unwrap_or_default()
    }
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn poly_eval(coeffs: &[ExactRational], x: &ExactRational) -> ExactRational {
    coeffs
        .iter()
        .rev()
        .fold(ExactRational::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn small_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec((-9i64..=9, 1i64..=4), n * n).prop_map(move |v| {
            let rows = v
                .chunks(n)
                .map(|c| c.iter().map(|&(a, b)| rat(a, b)).collect())
                .collect();
            Matrix::from_rows(rows).unwrap()
        })
    }

    // cofactor expansion oracle
    fn det_oracle(m: &Matrix) -> ExactRational {
        let n = m.nrows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = ExactRational::zero();
        for c in 0..n {
            let minor = Matrix::from_rows(
                (1..n)
                    .map(|r| (0..n).filter(|&j| j != c).map(|j| m.get(r, j).clone()).collect())
                    .collect(),
            )
            .unwrap();
            let term = m.get(0, c) * det_oracle(&minor);
            acc = if c % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn basis_inverse() {
        let m = Matrix::from_i64(&[
            &[1, 0, 1, 1],
            &[456, 1, -512, 512],
            &[50652, 0, -13092, -53028],
            &[-316352, 456, 262144, 262144],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(4));
        assert_eq!(
            inv.row(0),
            &[
                rat(8432992, 22947840),
                rat(5928, 22947840),
                rat(152, 22947840),
                rat(-13, 22947840)
            ]
        );
    }

    #[test]
    fn singular_and_nullspace() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det().unwrap(), int(0));
        assert_eq!(m.inverse(), Err(LinalgError::Singular));
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn char_poly_diagonal() {
        let m = Matrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(m.char_poly().unwrap(), vec![int(6), int(-5), int(1)]);
    }

    proptest! {
        #[test]
        fn det_matches_cofactor(m in small_matrix(4)) {
            prop_assert_eq!(m.det().unwrap(), det_oracle(&m));
        }

        #[test]
        fn inverse_roundtrip(m in small_matrix(3)) {
            match m.inverse() {
                Ok(inv) => prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(3)),
                Err(_) => prop_assert!(m.det().unwrap().is_zero()),
            }
        }

        #[test]
        fn char_poly_kills_matrix(m in small_matrix(3)) {
            // Cayley–Hamilton
            let cp = m.char_poly().unwrap();
            let mut acc = Matrix::zeros(3, 3);
            let mut power = Matrix::identity(3);
            for c in &cp {
                acc = acc.sub(&power.scale(&-c.clone())).unwrap();
                power = power.mul(&m).unwrap();
            }
            prop_assert!(acc.is_zero());
            prop_assert_eq!(poly_eval(&cp, &int(0)), det_oracle(&m.scale(&int(-1))));
        }

        #[test]
        fn rank_plus_nullity(m in small_matrix(4)) {
            prop_assert_eq!(m.rank() + m.nullspace().len(), 4);
        }
    }
}
