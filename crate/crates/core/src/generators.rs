//! Example objects: Hadamard families, character tables of finite abelian
//! groups, exterior squares, A1 Kac-Peterson matrices and fixed fixtures.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::{CycNum, Matrix};
use crate::hadamard::{normalize_hadamard, HadamardMatrix};
use crate::ring::FusionRing;
use crate::spectra::SMatrix;

/// Sylvester matrix of order `2^m`, `m ≥ 2`.
pub fn gen_sylvester(m: u32) -> Result<HadamardMatrix> {
    if !(2..=12).contains(&m) {
        return Err(Error::InvalidParameter(format!("m must be in 2..=12, got {m}")));
    }
    let n = 1usize << m;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if (r & c).count_ones() % 2 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect();
    normalize_hadamard(&rows)
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Paley I matrix of order `q + 1` for a prime `q ≡ 3 (mod 4)`.
pub fn gen_paley(q: u64) -> Result<HadamardMatrix> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(Error::InvalidParameter(format!(
            "q must be a prime congruent to 3 mod 4, got {q}"
        )));
    }
    if q > 2000 {
        return Err(Error::InvalidParameter(format!("q = {q} is too large")));
    }
    let mut chi = vec![-1i64; q as usize];
    chi[0] = 0;
    for x in 1..q {
        chi[(x * x % q) as usize] = 1;
    }
    let n = q as usize + 1;
    // H = I + S with S = [[0, 1ᵀ], [-1, Q]] and Q_ab = χ(b - a)
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let s = match (r, c) {
                        (0, 0) => 0,
                        (0, _) => 1,
                        (_, 0) => -1,
                        _ => chi[((c as u64 + q - r as u64) % q) as usize],
                    };
                    s + i64::from(r == c)
                })
                .collect()
        })
        .collect();
    normalize_hadamard(&rows)
}

/// `H1 ⊗ H2`, renormalized.
pub fn gen_kronecker(a: &HadamardMatrix, b: &HadamardMatrix) -> Result<HadamardMatrix> {
    let (na, nb) = (a.n(), b.n());
    let rows: Vec<Vec<i64>> = (0..na * nb)
        .map(|r| {
            (0..na * nb)
                .map(|c| a.get(r / nb, c / nb) * b.get(r % nb, c % nb))
                .collect()
        })
        .collect();
    normalize_hadamard(&rows)
}

/// The 2×2 Hadamard matrix, usable as a Kronecker factor.
pub fn hadamard2() -> HadamardMatrix {
    normalize_hadamard(&[vec![1, 1], vec![1, -1]]).unwrap()
}

/// A finite abelian group `Z/m_1 × … × Z/m_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    orders: Vec<u32>,
}

impl GroupSpec {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&m| m < 2) {
            return Err(Error::InvalidParameter(
                "group needs at least one cyclic factor, each of order at least 2".into(),
            ));
        }
        orders
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m as usize))
            .filter(|&s| s <= 4096)
            .ok_or_else(|| Error::InvalidParameter("group is too large".into()))?;
        Ok(GroupSpec { orders })
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().map(|&m| m as usize).product()
    }

    /// Mixed-radix digits of `idx`, first factor most significant.
    pub fn digits(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.orders.len()];
        for (t, &m) in self.orders.iter().enumerate().rev() {
            out[t] = (idx % m as usize) as u32;
            idx /= m as usize;
        }
        out
    }

    pub fn index(&self, digits: &[u32]) -> usize {
        digits
            .iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&d, &m)| acc * m as usize + (d % m) as usize)
    }

    fn exponent(&self) -> u32 {
        self.orders.iter().fold(1u32, |acc, &m| acc.lcm(&m))
    }
}

/// Character table of the group: entry `(a, b)` is `Π_t ζ_{m_t}^{a_t b_t}`.
pub fn group_ring_smatrix(g: &GroupSpec) -> Result<SMatrix> {
    let n = g.size();
    let q = g.exponent();
    let digits: Vec<Vec<u32>> = (0..n).map(|i| g.digits(i)).collect();
    let mut data = Vec::with_capacity(n * n);
    for a in &digits {
        for b in &digits {
            let e: u64 = a
                .iter()
                .zip(b)
                .zip(g.orders())
                .map(|((&x, &y), &m)| (x as u64 * y as u64 % m as u64) * (q / m) as u64)
                .sum();
            data.push(CycNum::root(q, (e % q as u64) as i64)?);
        }
    }
    SMatrix::exact(Matrix::new(n, n, data)?)
}

/// The group ring `Z[G]`, with `b_a b_b = b_{a+b}` and `b̃_a = b_{-a}`.
pub fn group_ring(g: &GroupSpec) -> Result<FusionRing> {
    let n = g.size();
    let digits: Vec<Vec<u32>> = (0..n).map(|i| g.digits(i)).collect();
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let mut t = vec![0i64; n * n * n];
    for i in 0..n {
        for j in 0..n {
            t[(i * n + j) * n + g.index(&add(&digits[i], &digits[j]))] = 1;
        }
    }
    let tilde = digits
        .iter()
        .map(|d| {
            let neg: Vec<u32> = d.iter().zip(g.orders()).map(|(&x, &m)| (m - x) % m).collect();
            g.index(&neg)
        })
        .collect();
    FusionRing::new(n, t, tilde)
}

/// `Λ²(M)_{(i<j),(k<l)} = M_ik M_jl − M_il M_jk`, pairs in lexicographic order.
pub fn exterior_square(m: &Matrix<CycNum>) -> Result<Matrix<CycNum>> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    let n = m.rows();
    if n < 2 {
        return Err(Error::Shape("exterior square needs n >= 2".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let p = pairs.len();
    let mut data = Vec::with_capacity(p * p);
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            data.push(&(m.get(i, k) * m.get(j, l)) - &(m.get(i, l) * m.get(j, k)));
        }
    }
    Matrix::new(p, p, data)
}

/// The `(k+1)×(k+1)` A1 matrix at level `k`, rows scaled so that the vacuum
/// column is 1: `s_li = sin(π(l+1)(i+1)/(k+2)) / sin(π(l+1)/(k+2))`.
pub fn kac_peterson_a1(level: u32) -> Result<SMatrix> {
    if level == 0 || level > 200 {
        return Err(Error::InvalidParameter(format!("level must be in 1..=200, got {level}")));
    }
    let n = level as usize + 1;
    let h = (level + 2) as f64;
    let m = DMatrix::from_fn(n, n, |l, i| {
        let num = (PI * ((l + 1) * (i + 1)) as f64 / h).sin();
        let den = (PI * (l + 1) as f64 / h).sin();
        Complex64::new(num / den, 0.0)
    });
    SMatrix::numeric(m)
}

/// The unitary A1 matrix `sqrt(2/(k+2)) sin(π(a+1)(b+1)/(k+2))`.
pub fn kac_peterson_a1_unitary(level: u32) -> Result<DMatrix<Complex64>> {
    if level == 0 || level > 200 {
        return Err(Error::InvalidParameter(format!("level must be in 1..=200, got {level}")));
    }
    let n = level as usize + 1;
    let h = (level + 2) as f64;
    let c = (2.0 / h).sqrt();
    Ok(DMatrix::from_fn(n, n, |a, b| {
        Complex64::new(c * (PI * ((a + 1) * (b + 1)) as f64 / h).sin(), 0.0)
    }))
}

/// Quotient of the double of S_3 by a nontrivial ideal, as a 6×6 s-matrix.
pub fn fixture_ds3() -> Vec<Vec<i64>> {
    vec![
        vec![1, 2, 3, 2, 2, 2],
        vec![1, 2, -3, 2, 2, 2],
        vec![1, 2, 0, -1, -1, -1],
        vec![1, -1, 0, -1, -1, 2],
        vec![1, -1, 0, -1, 2, -1],
        vec![1, -1, 0, 2, -1, -1],
    ]
}

/// The s-matrix of the monoid ring on `{1, a, b, 0}` with `ab = a² = b² = 0`.
pub fn fixture_monoid() -> Vec<Vec<i64>> {
    vec![
        vec![1, 1, 1, 1],
        vec![1, 0, 1, 0],
        vec![1, 1, 0, 0],
        vec![1, 0, 0, 0],
    ]
}

/// The exterior square of the `(Z/2)²` character table as printed, in an
/// unspecified pair order.
pub fn fixture_ext2_printed() -> Vec<Vec<i64>> {
    vec![
        vec![-2, 0, 2, -2, 0, -2],
        vec![0, -2, -2, -2, -2, 0],
        vec![2, -2, 0, 0, 2, -2],
        vec![-2, -2, 0, 0, 2, 2],
        vec![0, -2, 2, 2, -2, 0],
        vec![-2, 0, -2, 2, 0, -2],
    ]
}

/// Matrix of integers as cyclotomic numbers of order 1.
pub fn int_matrix(rows: &[Vec<i64>]) -> Result<Matrix<CycNum>> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect())
            .collect(),
    )
}
