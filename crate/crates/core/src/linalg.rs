//! Exact integer linear algebra.
//!
//! Every routine runs first on checked `i128` arithmetic and falls back to
//! arbitrary precision when an intermediate value overflows, so results are
//! always exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix stored in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if rows == 0 {
            return Err(Error::NoRows);
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Result<Self> {
        if rows == 0 {
            return Err(Error::NoRows);
        }
        let cols = columns.len();
        let mut entries = vec![0; rows * cols];
        for (c, column) in columns.iter().enumerate() {
            if column.len() != rows {
                return Err(Error::ShapeMismatch {
                    rows,
                    cols,
                    len: column.len() * cols,
                });
            }
            for (r, &v) in column.iter().enumerate() {
                entries[r * cols + c] = v;
            }
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::diagonal(&vec![1; n])
    }

    /// Square diagonal matrix with the given diagonal.
    pub fn diagonal(diag: &[i64]) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zeros(n, n)?;
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        Ok(m)
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

    /// Row-major entries.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Submatrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, indices: &[usize]) -> IntMatrix {
        let cols = indices.len();
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            let row = self.row(r);
            entries.extend(indices.iter().map(|&c| row[c]));
        }
        IntMatrix {
            rows: self.rows,
            cols,
            entries,
        }
    }

    /// Submatrix made of the listed rows, in the listed order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<IntMatrix> {
        let mut entries = Vec::with_capacity(indices.len() * self.cols);
        for &r in indices {
            entries.extend_from_slice(self.row(r));
        }
        IntMatrix::new(indices.len(), self.cols, entries)
    }

    pub fn transpose(&self) -> Result<IntMatrix> {
        let columns = self.columns();
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in columns {
            entries.extend(c);
        }
        IntMatrix::new(self.cols, self.rows, entries)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(match bareiss_det(self.grid::<i128>()) {
            Some(d) => BigInt::from(d),
            None => bareiss_det(self.grid::<BigInt>()).expect("bigint arithmetic cannot overflow"),
        })
    }

    /// Determinant on the fixed-width path; `None` when an intermediate
    /// value leaves `i128` or the matrix is not square.
    pub fn determinant_i128(&self) -> Option<i128> {
        if !self.is_square() {
            return None;
        }
        bareiss_det(self.grid::<i128>())
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        match fraction_free_rank(self.grid::<i128>(), self.cols) {
            Some(r) => r,
            None => fraction_free_rank(self.grid::<BigInt>(), self.cols)
                .expect("bigint arithmetic cannot overflow"),
        }
    }

    pub fn smith_normal_form(&self) -> SmithForm {
        let divisors = match smith_divisors(self.grid::<i128>(), self.cols) {
            Some(d) => d.into_iter().map(BigInt::from).collect(),
            None => smith_divisors(self.grid::<BigInt>(), self.cols)
                .expect("bigint arithmetic cannot overflow"),
        };
        SmithForm { divisors }
    }

    /// Largest elementary divisor, `None` for the zero matrix.
    pub fn largest_elementary_divisor(&self) -> Option<BigInt> {
        match smith_divisors(self.grid::<i128>(), self.cols) {
            Some(d) => d.last().map(|&v| BigInt::from(v)),
            None => self.smith_normal_form().divisors.pop(),
        }
    }

    /// Product of the elementary divisors (1 for the zero matrix).
    pub fn arithmetic_multiplicity(&self) -> BigInt {
        self.smith_normal_form().product()
    }

    fn grid<T: ExactInt>(&self) -> Vec<Vec<T>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&v| T::from_i64(v)).collect())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Elementary divisors `e_1 | e_2 | ... | e_r` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub divisors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn largest(&self) -> Option<&BigInt> {
        self.divisors.last()
    }

    pub fn product(&self) -> BigInt {
        self.divisors.iter().product()
    }
}

/// Integer arithmetic with overflow reported as `None`.
trait ExactInt: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Option<Self>;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn abs(&self) -> Option<Self>;
    /// Division known to be exact.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
    /// Truncating quotient.
    fn quot(&self, rhs: &Self) -> Option<Self>;
    fn divides(&self, rhs: &Self) -> bool;
    fn abs_less(&self, rhs: &Self) -> bool;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, rhs: &Self) -> Option<Self> {
        self.checked_add(*rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(*rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(*rhs)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn abs(&self) -> Option<Self> {
        self.checked_abs()
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        debug_assert_eq!(self.checked_rem(*rhs), Some(0));
        self.checked_div(*rhs)
    }
    fn quot(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(*rhs)
    }
    fn divides(&self, rhs: &Self) -> bool {
        rhs.checked_rem(*self) == Some(0)
    }
    fn abs_less(&self, rhs: &Self) -> bool {
        self.unsigned_abs() < rhs.unsigned_abs()
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn abs(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        debug_assert!(Zero::is_zero(&(self % rhs)));
        Some(self / rhs)
    }
    fn quot(&self, rhs: &Self) -> Option<Self> {
        Some(self / rhs)
    }
    fn divides(&self, rhs: &Self) -> bool {
        rhs.is_multiple_of(self)
    }
    fn abs_less(&self, rhs: &Self) -> bool {
        self.magnitude() < rhs.magnitude()
    }
}

fn bareiss_det<T: ExactInt>(mut a: Vec<Vec<T>>) -> Option<T> {
    let n = a.len();
    if n == 0 {
        return Some(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match swap {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Some(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i][j].mul(&a[k][k])?;
                let rhs = a[i][k].mul(&a[k][j])?;
                a[i][j] = lhs.sub(&rhs)?.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        Some(det)
    }
}

fn fraction_free_rank<T: ExactInt>(mut a: Vec<Vec<T>>, cols: usize) -> Option<usize> {
    let rows = a.len();
    let mut rank = 0;
    let mut prev = T::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let lhs = a[i][j].mul(&a[rank][col])?;
                let rhs = a[i][col].mul(&a[rank][j])?;
                a[i][j] = lhs.sub(&rhs)?.div_exact(&prev)?;
            }
            a[i][col] = T::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    Some(rank)
}

fn swap_cols<T>(a: &mut [Vec<T>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Smith normal form by repeated gcd reduction of the pivot row and column.
#[allow(clippy::needless_range_loop)]
fn smith_divisors<T: ExactInt>(mut a: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>> {
    let rows = a.len();
    let mut divisors = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[i][j].abs_less(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);

        loop {
            let mut clear = true;
            for i in t + 1..rows {
                while !a[i][t].is_zero() {
                    let q = a[i][t].quot(&a[t][t])?;
                    for j in t..cols {
                        let s = q.mul(&a[t][j])?;
                        a[i][j] = a[i][j].sub(&s)?;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(i, t);
                    }
                }
            }
            for j in t + 1..cols {
                while !a[t][j].is_zero() {
                    let q = a[t][j].quot(&a[t][t])?;
                    for i in t..rows {
                        let s = q.mul(&a[i][t])?;
                        a[i][j] = a[i][j].sub(&s)?;
                    }
                    if !a[t][j].is_zero() {
                        swap_cols(&mut a, j, t);
                        clear = false;
                    }
                }
            }
            if !clear {
                continue;
            }
            // the pivot must divide the whole trailing block
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[t][t].divides(&a[i][j])));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].add(&a[i][j])?;
                    }
                }
                None => break,
            }
        }
        divisors.push(a[t][t].abs()?);
    }
    Some(divisors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::new(rows, cols, e.to_vec()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            IntMatrix::identity(3).unwrap().determinant().unwrap(),
            BigInt::from(1)
        );
        // columns (1,0,0), (0,1,0), (1,1,1)
        let s = IntMatrix::from_columns(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]).unwrap();
        assert_eq!(s.determinant().unwrap(), BigInt::from(1));
        let twin =
            IntMatrix::from_columns(3, &[vec![1, 2, 3], vec![1, 2, 3], vec![0, 1, 5]]).unwrap();
        assert_eq!(twin.determinant().unwrap(), BigInt::from(0));
    }

    #[test]
    fn determinant_needs_pivot_swap() {
        let a = m(3, 3, &[0, 1, 2, 1, 0, 3, 4, -3, 8]);
        // 0*(0+9) - 1*(8-12) + 2*(-3-0) = 4 - 6
        assert_eq!(a.determinant().unwrap(), BigInt::from(-2));
    }

    #[test]
    fn determinant_rejects_rectangular() {
        let a = m(2, 3, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(a.determinant(), Err(Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn determinant_overflow_falls_back() {
        let v = 1i64 << 62;
        let a = m(3, 3, &[v, 1, 0, 0, v, 1, 1, 0, v]);
        let expect = BigInt::from(v).pow(3) + 1;
        assert_eq!(a.determinant().unwrap(), expect);
        assert_eq!(a.determinant_i128(), None);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(IntMatrix::identity(4).unwrap().rank(), 4);
        assert_eq!(IntMatrix::zeros(3, 5).unwrap().rank(), 0);
        let cs = m(3, 4, &[1, 0, 1, 0, 0, 1, 1, 1, 0, 0, 1, 1]);
        assert_eq!(cs.rank(), 3);
        let dep = m(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(dep.rank(), 2);
    }

    #[test]
    fn smith_examples() {
        assert_eq!(
            IntMatrix::identity(4).unwrap().smith_normal_form().divisors,
            big(&[1, 1, 1, 1])
        );
        assert_eq!(
            IntMatrix::diagonal(&[2, 4])
                .unwrap()
                .smith_normal_form()
                .divisors,
            big(&[2, 4])
        );
        assert_eq!(
            IntMatrix::diagonal(&[4, 6])
                .unwrap()
                .smith_normal_form()
                .divisors,
            big(&[2, 12])
        );
        let b =
            IntMatrix::from_columns(3, &[vec![1, 0, 0], vec![0, 1, -1], vec![1, 1, -3]]).unwrap();
        assert_eq!(b.smith_normal_form().divisors, big(&[1, 1, 2]));
        assert_eq!(b.arithmetic_multiplicity(), BigInt::from(2));
        assert!(IntMatrix::zeros(2, 2)
            .unwrap()
            .smith_normal_form()
            .divisors
            .is_empty());
        assert_eq!(
            IntMatrix::zeros(2, 2).unwrap().arithmetic_multiplicity(),
            BigInt::from(1)
        );
    }

    #[test]
    fn smith_rectangular() {
        let a = m(2, 3, &[2, 4, 4, -6, 6, 12]);
        // gcd of entries is 2, gcd of 2x2 minors is 12 = 2 * 6
        assert_eq!(a.smith_normal_form().divisors, big(&[2, 6]));
        assert_eq!(
            IntMatrix::diagonal(&[2, 3])
                .unwrap()
                .arithmetic_multiplicity(),
            BigInt::from(6)
        );
    }

    #[test]
    fn select_columns_keeps_order() {
        let a = m(2, 3, &[1, 2, 3, 4, 5, 6]);
        let s = a.select_columns(&[2, 0]);
        assert_eq!(s.entries(), &[3, 1, 6, 4]);
        assert_eq!(a.transpose().unwrap().entries(), &[1, 4, 2, 5, 3, 6]);
    }

    #[test]
    fn shape_errors() {
        assert!(IntMatrix::new(0, 2, vec![]).is_err());
        assert!(IntMatrix::new(2, 2, vec![1, 2, 3]).is_err());
        assert_eq!(IntMatrix::new(3, 0, vec![]).unwrap().cols(), 0);
    }
}
