use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rat};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix of exact rationals.
pub type RatMatrix = Matrix<Rat>;

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero_el())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one_el() } else { T::zero_el() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero_el() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero_el() {
                        let v = out.get(r, c).plus(&a.times(b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero_el() && !b.is_zero_el())
                    .fold(T::zero_el(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect()
    }

    /// Reduced row echelon form by Gauss-Jordan elimination; returns the
    /// reduced matrix and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero_el()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c).times(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero_el() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c).minus(&f.times(m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(self.cols, &pivots, |i, c| r.get(i, c).clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                T::one_el()
            } else {
                T::zero_el()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |r, c| red.get(r, c + n).clone()))
    }

    /// Solves `self · x = b`. Returns `None` when the system is inconsistent,
    /// otherwise one solution together with the rank of `self`.
    pub fn solve(&self, b: &[T]) -> Result<Option<(Vec<T>, usize)>> {
        if b.len() != self.rows {
            return Err(Error::Shape("right-hand side length".into()));
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![T::zero_el(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Ok(Some((x, pivots.len())))
    }
}

fn kernel_from_rref<T: Field>(
    cols: usize,
    pivots: &[usize],
    entry: impl Fn(usize, usize) -> T,
) -> Vec<Vec<T>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![T::zero_el(); cols];
            v[free] = T::one_el();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = entry(i, free).negated();
            }
            v
        })
        .collect()
}

/// Exact right kernel of a rational matrix.
///
/// Rows are scaled to primitive integer vectors and reduced with
/// fraction-free elimination (row ← p·row − a·pivot_row, then divided by
/// its content); only the final back-substitution introduces fractions.
pub fn rat_kernel(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let (ech, pivots) = integer_echelon(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &(_, p) in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for &(r, p) in &pivots {
            let a = &ech[r][free];
            if !a.is_zero() {
                v[p] = -Rat::new(a.clone(), ech[r][p].clone());
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank of a rational matrix via the fraction-free path.
pub fn rat_rank(m: &RatMatrix) -> usize {
    integer_echelon(m).1.len()
}

// Fully reduced integer echelon form: each pivot column is zero outside its
// pivot row. Returns rows and (row, pivot column) pairs.
fn integer_echelon(m: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| primitive_row(m.row(r))).collect();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == rows.len() {
            break;
        }
        // smallest nonzero entry keeps the numbers small
        let Some(p) = (top..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
        else {
            continue;
        };
        rows.swap(top, p);
        let pivot_row = rows[top].clone();
        let pv = &pivot_row[col];
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[col]);
            let mul_row = pv / &g;
            let mul_piv = &row[col] / &g;
            for c in 0..cols {
                row[c] = &row[c] * &mul_row - &pivot_row[c] * &mul_piv;
            }
            make_primitive(row);
        }
        pivots.push((top, col));
        top += 1;
    }
    (rows, pivots)
}

fn primitive_row(row: &[Rat]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{rat, F3};

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn kernel_of_all_ones() {
        let k = rat_kernel(&rm(&[&[1, 1], &[1, 1]]));
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn identity_is_injective() {
        assert!(rat_kernel(&RatMatrix::identity(3)).is_empty());
    }

    #[test]
    fn generic_and_fraction_free_agree() {
        let m = rm(&[&[2, 4, 6, 1], &[1, 2, 3, 0], &[3, 6, 9, 1]]);
        let a = rat_kernel(&m);
        let b = m.kernel();
        assert_eq!(a.len(), 2);
        assert_eq!(b.len(), 2);
        for v in a.iter().chain(&b) {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(rat_rank(&m), 2);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_and_singular() {
        let m = rm(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert_eq!(rm(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn kernel_over_f3() {
        let m = Matrix::from_rows(vec![
            vec![F3::new(1), F3::new(1)],
            vec![F3::new(2), F3::new(2)],
        ])
        .unwrap();
        let k = m.kernel();
        assert_eq!(k, vec![vec![F3::new(2), F3::new(1)]]);
    }

    #[test]
    fn solve_inconsistent() {
        let m = rm(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[rat(1), rat(2)]).unwrap().is_none());
        let (x, rank) = m.solve(&[rat(2), rat(2)]).unwrap().unwrap();
        assert_eq!(rank, 1);
        assert_eq!(x, vec![rat(2), rat(0)]);
    }

    #[test]
    fn rejects_empty_and_ragged() {
        assert!(RatMatrix::new(0, 2, vec![]).is_err());
        assert!(Matrix::from_rows(vec![vec![rat(1)], vec![rat(1), rat(2)]]).is_err());
    }
}
