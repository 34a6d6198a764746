//! s-matrices: the change of basis to the primitive idempotents of R ⊗ C.
//!
//! Column `i` of an s-matrix is the image of `b_i`; row `k` is the k-th
//! one-dimensional character, so `s_ki s_kj = Σ_m N_ij^m s_km`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::field::rat_to_i64;
use crate::exact::{common_order, rat_kernel, CycNum, Field, Matrix, Rat};
use crate::ring::FusionRing;

/// Rounding window used when reading integers off floating-point values.
pub const INTEGER_WINDOW: f64 = 1e-6;
/// Default cutoff for numerically zero singular values.
pub const KERNEL_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub enum SMatrix {
    /// Entries share one cyclotomic order.
    Exact(Matrix<CycNum>),
    Numeric(DMatrix<Complex64>),
}

impl PartialEq for SMatrix {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SMatrix::Exact(a), SMatrix::Exact(b)) => a == b,
            (SMatrix::Numeric(a), SMatrix::Numeric(b)) => a == b,
            _ => false,
        }
    }
}

impl SMatrix {
    pub fn exact(m: Matrix<CycNum>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!(
                "s-matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let q = common_order(m.data());
        let mut data = Vec::with_capacity(m.data().len());
        for x in m.data() {
            data.push(x.embed(q)?);
        }
        Ok(SMatrix::Exact(Matrix::new(m.rows(), m.cols(), data)?))
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect())
            .collect();
        Self::exact(Matrix::from_rows(rows)?)
    }

    pub fn numeric(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::Shape(format!(
                "s-matrix must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(SMatrix::Numeric(m))
    }

    pub fn n(&self) -> usize {
        match self {
            SMatrix::Exact(m) => m.rows(),
            SMatrix::Numeric(m) => m.nrows(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SMatrix::Exact(_))
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        match self {
            SMatrix::Exact(m) => {
                DMatrix::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c).to_complex())
            }
            SMatrix::Numeric(m) => m.clone(),
        }
    }

    /// Rational entries, when every entry is rational.
    pub fn as_rational(&self) -> Option<Matrix<Rat>> {
        match self {
            SMatrix::Exact(m) => {
                let data: Option<Vec<Rat>> = m.data().iter().map(|x| x.to_rat()).collect();
                Matrix::new(m.rows(), m.cols(), data?).ok()
            }
            SMatrix::Numeric(_) => None,
        }
    }

    /// Integer entries, when every entry is an integer that fits an `i64`.
    pub fn as_integers(&self) -> Option<Vec<Vec<i64>>> {
        let r = self.as_rational()?;
        (0..r.rows())
            .map(|i| r.row(i).iter().map(rat_to_i64).collect())
            .collect()
    }

    pub fn select_rows(&self, rows: &[usize]) -> SMatrix {
        match self {
            SMatrix::Exact(m) => {
                let data = rows.iter().flat_map(|&r| m.row(r).to_vec()).collect();
                SMatrix::Exact(Matrix::new(rows.len(), m.cols(), data).unwrap())
            }
            SMatrix::Numeric(m) => SMatrix::Numeric(m.select_rows(rows)),
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> SMatrix {
        match self {
            SMatrix::Exact(m) => SMatrix::Exact(m.select_columns(cols)),
            SMatrix::Numeric(m) => SMatrix::Numeric(m.select_columns(cols)),
        }
    }

    fn entries_equal(&self, a: (usize, usize), b: (usize, usize), tol: f64) -> bool {
        match self {
            SMatrix::Exact(m) => m.get(a.0, a.1) == m.get(b.0, b.1),
            SMatrix::Numeric(m) => (m[a] - m[b]).norm() <= tol,
        }
    }

    fn entry_is_zero(&self, r: usize, c: usize, tol: f64) -> bool {
        match self {
            SMatrix::Exact(m) => m.get(r, c).is_zero(),
            SMatrix::Numeric(m) => m[(r, c)].norm() <= tol,
        }
    }
}

/// Structure constants read off an s-matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct VerlindeTensor {
    pub n: usize,
    /// Indexed `(i * n + j) * n + m`.
    pub tensor: Vec<i64>,
    pub nonnegative: bool,
    /// Largest distance to the nearest integer (0 in exact mode).
    pub max_deviation: f64,
}

impl VerlindeTensor {
    pub fn constant(&self, i: usize, j: usize, m: usize) -> i64 {
        self.tensor[(i * self.n + j) * self.n + m]
    }

    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        subset.iter().for_each(|&s| member[s] = true);
        subset.iter().all(|&i| {
            subset
                .iter()
                .all(|&j| (0..self.n).all(|m| member[m] || self.constant(i, j, m) == 0))
        })
    }
}

/// `N_ij^m = Σ_l s_li s_lj (s⁻¹)_ml`.
pub fn verlinde_tensor(s: &SMatrix) -> Result<VerlindeTensor> {
    let n = s.n();
    let tensor = if let Some(r) = s.as_rational() {
        verlinde_rational(&r)?
    } else {
        match s {
            SMatrix::Exact(m) => verlinde_cyclotomic(m)?,
            SMatrix::Numeric(m) => return verlinde_numeric(m),
        }
    };
    let nonnegative = tensor.iter().all(|&x| x >= 0);
    Ok(VerlindeTensor {
        n,
        tensor,
        nonnegative,
        max_deviation: 0.0,
    })
}

fn big_to_i128(x: &BigInt) -> Option<i128> {
    x.to_i128()
}

fn verlinde_rational(s: &Matrix<Rat>) -> Result<Vec<i64>> {
    let n = s.rows();
    let inv = s.inverse()?;
    // s = A / da and s⁻¹ = B / db with integer A, B
    let lcm_den = |m: &Matrix<Rat>| {
        m.data()
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    };
    let da = lcm_den(s);
    let db = lcm_den(&inv);
    let scaled = |m: &Matrix<Rat>, d: &BigInt| -> Option<Vec<i128>> {
        m.data()
            .iter()
            .map(|x| big_to_i128(&(x.numer() * (d / x.denom()))))
            .collect()
    };
    let fast = match (scaled(s, &da), scaled(&inv, &db), big_to_i128(&(&da * &da * &db))) {
        (Some(a), Some(b), Some(den)) => verlinde_i128(n, &a, &b, den),
        _ => None,
    };
    if let Some(res) = fast {
        return res;
    }
    let mut out = vec![0i64; n * n * n];
    for i in 0..n {
        for j in i..n {
            let p: Vec<Rat> = (0..n).map(|l| s.get(l, i) * s.get(l, j)).collect();
            for m in 0..n {
                let v = p
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .fold(Rat::zero(), |acc, (l, x)| acc + x * inv.get(m, l));
                let v = rat_to_i64(&v).ok_or(Error::NonIntegral { i, j, m })?;
                out[(i * n + j) * n + m] = v;
                out[(j * n + i) * n + m] = v;
            }
        }
    }
    Ok(out)
}

// None on overflow, so the caller can fall back to big rationals.
fn verlinde_i128(n: usize, a: &[i128], b: &[i128], den: i128) -> Option<Result<Vec<i64>>> {
    let mut out = vec![0i64; n * n * n];
    let mut p = vec![0i128; n];
    for i in 0..n {
        for j in i..n {
            for l in 0..n {
                p[l] = a[l * n + i].checked_mul(a[l * n + j])?;
            }
            for m in 0..n {
                let mut acc: i128 = 0;
                for l in 0..n {
                    acc = acc.checked_add(p[l].checked_mul(b[m * n + l])?)?;
                }
                if acc % den != 0 {
                    return Some(Err(Error::NonIntegral { i, j, m }));
                }
                let v = i64::try_from(acc / den).ok()?;
                out[(i * n + j) * n + m] = v;
                out[(j * n + i) * n + m] = v;
            }
        }
    }
    Some(Ok(out))
}

fn verlinde_cyclotomic(s: &Matrix<CycNum>) -> Result<Vec<i64>> {
    let n = s.rows();
    let inv = s.inverse()?;
    let mut out = vec![0i64; n * n * n];
    for i in 0..n {
        for j in i..n {
            let p: Vec<CycNum> = (0..n).map(|l| s.get(l, i) * s.get(l, j)).collect();
            for m in 0..n {
                let mut acc = CycNum::zero();
                for (l, x) in p.iter().enumerate() {
                    if !x.is_zero() {
                        acc = &acc + &(x * inv.get(m, l));
                    }
                }
                let v = acc
                    .to_rat()
                    .as_ref()
                    .and_then(rat_to_i64)
                    .ok_or(Error::NonIntegral { i, j, m })?;
                out[(i * n + j) * n + m] = v;
                out[(j * n + i) * n + m] = v;
            }
        }
    }
    Ok(out)
}

/// Which `N_ij^m` are nonzero, computed without requiring integrality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerlindeSupport {
    pub n: usize,
    pub nonzero: Vec<bool>,
}

impl VerlindeSupport {
    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let n = self.n;
        let mut member = vec![false; n];
        subset.iter().for_each(|&s| member[s] = true);
        subset.iter().all(|&i| {
            subset
                .iter()
                .all(|&j| (0..n).all(|m| member[m] || !self.nonzero[(i * n + j) * n + m]))
        })
    }
}

/// Nonzero pattern of the Verlinde constants; exact for exact input and
/// thresholded at the integer window otherwise.
pub fn verlinde_support(s: &SMatrix) -> Result<VerlindeSupport> {
    let n = s.n();
    let mut nonzero = vec![false; n * n * n];
    let mut set = |i: usize, j: usize, m: usize, v: bool| {
        nonzero[(i * n + j) * n + m] = v;
        nonzero[(j * n + i) * n + m] = v;
    };
    if let Some(r) = s.as_rational() {
        let inv = r.inverse()?;
        for i in 0..n {
            for j in i..n {
                let p: Vec<Rat> = (0..n).map(|l| r.get(l, i) * r.get(l, j)).collect();
                for m in 0..n {
                    let v = p
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .fold(Rat::zero(), |acc, (l, x)| acc + x * inv.get(m, l));
                    set(i, j, m, !v.is_zero());
                }
            }
        }
    } else {
        match s {
            SMatrix::Exact(c) => {
                let inv = c.inverse()?;
                for i in 0..n {
                    for j in i..n {
                        let p: Vec<CycNum> = (0..n).map(|l| c.get(l, i) * c.get(l, j)).collect();
                        for m in 0..n {
                            let mut acc = CycNum::zero();
                            for (l, x) in p.iter().enumerate() {
                                if !x.is_zero() {
                                    acc = &acc + &(x * inv.get(m, l));
                                }
                            }
                            set(i, j, m, !acc.is_zero());
                        }
                    }
                }
            }
            SMatrix::Numeric(c) => {
                if smallest_singular_value(c) <= KERNEL_TOL {
                    return Err(Error::Singular);
                }
                let inv = c.clone().try_inverse().ok_or(Error::Singular)?;
                for i in 0..n {
                    for j in i..n {
                        for m in 0..n {
                            let v: Complex64 = (0..n).map(|l| c[(l, i)] * c[(l, j)] * inv[(m, l)]).sum();
                            set(i, j, m, v.norm() > INTEGER_WINDOW);
                        }
                    }
                }
            }
        }
    }
    Ok(VerlindeSupport { n, nonzero })
}

fn smallest_singular_value(m: &DMatrix<Complex64>) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

fn verlinde_numeric(s: &DMatrix<Complex64>) -> Result<VerlindeTensor> {
    let n = s.nrows();
    if smallest_singular_value(s) <= KERNEL_TOL {
        return Err(Error::Singular);
    }
    let inv = s.clone().try_inverse().ok_or(Error::Singular)?;
    let mut out = vec![0i64; n * n * n];
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let p: Vec<Complex64> = (0..n).map(|l| s[(l, i)] * s[(l, j)]).collect();
            for m in 0..n {
                let v: Complex64 = (0..n).map(|l| p[l] * inv[(m, l)]).sum();
                let r = v.re.round();
                let dev = (v.re - r).abs().max(v.im.abs());
                if dev > INTEGER_WINDOW || !r.is_finite() || r.abs() > i64::MAX as f64 {
                    return Err(Error::NonIntegral { i, j, m });
                }
                worst = worst.max(dev);
                out[(i * n + j) * n + m] = r as i64;
                out[(j * n + i) * n + m] = r as i64;
            }
        }
    }
    Ok(VerlindeTensor {
        n,
        nonnegative: out.iter().all(|&x| x >= 0),
        tensor: out,
        max_deviation: worst,
    })
}

/// Outcome of an orthogonality test; `max_deviation` is the largest modulus
/// of an off-diagonal product (0 when exact and orthogonal).
#[derive(Clone, Debug, PartialEq)]
pub struct Orthogonality {
    pub orthogonal: bool,
    pub max_deviation: f64,
    /// First row pair whose product is nonzero.
    pub witness: Option<(usize, usize)>,
}

/// Checks `Σ_i s_li s_{m,ĩ} = 0` for all `l ≠ m`.
pub fn row_orthogonality_check(s: &SMatrix, tilde: &[usize], tol: f64) -> Result<Orthogonality> {
    let n = s.n();
    if tilde.len() != n {
        return Err(Error::Shape(format!(
            "involution of length {} for an s-matrix of size {n}",
            tilde.len()
        )));
    }
    orthogonality(s, tol, |m, l, r| match m {
        SMatrix::Exact(x) => {
            let mut acc = CycNum::zero();
            for i in 0..n {
                acc = &acc + &(x.get(l, i) * x.get(r, tilde[i]));
            }
            Pair::Exact(acc)
        }
        SMatrix::Numeric(x) => Pair::Numeric((0..n).map(|i| x[(l, i)] * x[(r, tilde[i])]).sum()),
    })
}

/// Checks `Σ_i s_li conj(s_mi) = 0` for all `l ≠ m`.
pub fn hermitian_orthogonality_check(s: &SMatrix, tol: f64) -> Orthogonality {
    let n = s.n();
    orthogonality(s, tol, |m, l, r| match m {
        SMatrix::Exact(x) => {
            let mut acc = CycNum::zero();
            for i in 0..n {
                acc = &acc + &(x.get(l, i) * &x.get(r, i).conj());
            }
            Pair::Exact(acc)
        }
        SMatrix::Numeric(x) => {
            Pair::Numeric((0..n).map(|i| x[(l, i)] * x[(r, i)].conj()).sum())
        }
    })
    .unwrap()
}

enum Pair {
    Exact(CycNum),
    Numeric(Complex64),
}

fn orthogonality(
    s: &SMatrix,
    tol: f64,
    product: impl Fn(&SMatrix, usize, usize) -> Pair,
) -> Result<Orthogonality> {
    let n = s.n();
    let mut worst = 0.0f64;
    let mut witness = None;
    for l in 0..n {
        for m in 0..n {
            if l == m {
                continue;
            }
            let (zero, dev) = match product(s, l, m) {
                Pair::Exact(v) => (v.is_zero(), v.to_complex().norm()),
                Pair::Numeric(v) => (v.norm() <= tol, v.norm()),
            };
            worst = worst.max(dev);
            if !zero && witness.is_none() {
                witness = Some((l, m));
            }
        }
    }
    Ok(Orthogonality {
        orthogonal: witness.is_none(),
        max_deviation: worst,
        witness,
    })
}

/// Rows scaled by the positive square roots of their hermitian norms.
///
/// Refuses matrices whose rows are not mutually orthogonal.
pub fn fourier_matrix(s: &SMatrix, tol: f64) -> Result<DMatrix<Complex64>> {
    let c = s.to_complex();
    let n = c.nrows();
    for r in 0..n {
        if c.row(r).iter().all(|x| x.norm() <= tol) {
            return Err(Error::ZeroRow(r));
        }
    }
    let orth = hermitian_orthogonality_check(s, tol);
    if let Some((l, m)) = orth.witness {
        return Err(Error::NotOrthogonal(l, m));
    }
    let mut f = c;
    for r in 0..n {
        let norm = f.row(r).iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for x in f.row_mut(r).iter_mut() {
            *x /= norm;
        }
    }
    Ok(f)
}

/// The permutation `~` with column `ĩ` equal to the conjugate of column `i`.
pub fn involution_from_smatrix(s: &SMatrix, tol: f64) -> Result<Vec<usize>> {
    let n = s.n();
    let mut tilde = Vec::with_capacity(n);
    for i in 0..n {
        let found = match s {
            SMatrix::Exact(m) => {
                let conj: Vec<CycNum> = m.column(i).iter().map(|x| x.conj()).collect();
                (0..n).find(|&j| (0..n).all(|r| *m.get(r, j) == conj[r]))
            }
            SMatrix::Numeric(m) => {
                (0..n).find(|&j| (0..n).all(|r| (m[(r, j)] - m[(r, i)].conj()).norm() <= tol))
            }
        };
        tilde.push(found.ok_or(Error::NoConjugation(i))?);
    }
    Ok(tilde)
}

/// Common eigenvectors of commuting matrices whose eigenvalues all lie in
/// `candidates`, found by splitting subspaces with exact kernels.
///
/// Returns one spanning vector per one-dimensional common eigenspace.
pub fn split_exact<T: Field>(
    mats: &[Matrix<T>],
    candidates: &[T],
    kernel: impl Fn(&Matrix<T>) -> Vec<Vec<T>>,
) -> Result<Vec<Vec<T>>> {
    let n = match mats.first() {
        Some(m) => m.rows(),
        None => return Err(Error::Shape("no matrices to split by".into())),
    };
    // each subspace is a list of basis vectors of length n
    let mut spaces: Vec<Vec<Vec<T>>> = vec![(0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one_el() } else { T::zero_el() }).collect())
        .collect()];
    for (idx, a) in mats.iter().enumerate() {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            let image: Vec<Vec<T>> = basis.iter().map(|v| a.mul_vec(v)).collect();
            let mut found = 0;
            for lambda in candidates {
                // columns (A - λ) v_c for each basis vector
                let m = Matrix::from_fn(n, d, |r, c| image[c][r].minus(&lambda.times(&basis[c][r])));
                let ker = kernel(&m);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<T>> = ker
                    .iter()
                    .map(|coef| {
                        (0..n)
                            .map(|r| {
                                coef.iter()
                                    .zip(&basis)
                                    .filter(|(c, _)| !c.is_zero_el())
                                    .fold(T::zero_el(), |acc, (c, v)| acc.plus(&c.times(&v[r])))
                            })
                            .collect()
                    })
                    .collect();
                next.push(sub);
            }
            if found != d {
                return Err(Error::SplittingFailed(format!(
                    "matrix {idx} has eigenvalues outside the expected set on a {d}-dimensional subspace"
                )));
            }
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() > 1) {
        return Err(Error::SplittingFailed(format!(
            "a {}-dimensional common eigenspace survives every matrix",
            s.len()
        )));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

/// Eigenvalue of `a` on the eigenvector `v`.
pub fn eigenvalue_on<T: Field>(a: &Matrix<T>, v: &[T]) -> Result<T> {
    let p = v
        .iter()
        .position(|x| !x.is_zero_el())
        .ok_or_else(|| Error::SplittingFailed("zero eigenvector".into()))?;
    let av = a.mul_vec(v);
    let inv = v[p].inverse().unwrap();
    let lambda = av[p].times(&inv);
    if av
        .iter()
        .zip(v)
        .any(|(x, y)| *x != lambda.times(y))
    {
        return Err(Error::SplittingFailed("vector is not an eigenvector".into()));
    }
    Ok(lambda)
}

fn rat_int(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

fn left_matrix_rat(ring: &FusionRing, i: usize) -> Matrix<Rat> {
    let n = ring.rank();
    Matrix::from_fn(n, n, |j, m| rat_int(ring.constant(i, j, m)))
}

/// `Some(k)` when `~` is trivial and `b_i² = k b_0` for every `i`, in which
/// case every `N_i` has eigenvalues `±k`.
pub fn hadamard_type(ring: &FusionRing) -> Option<i64> {
    let n = ring.rank();
    if ring.tilde().iter().enumerate().any(|(i, &t)| i != t) {
        return None;
    }
    let k = ring.constant(0, 0, 0);
    if k <= 0 {
        return None;
    }
    let ok = (0..n).all(|i| (0..n).all(|m| ring.constant(i, i, m) == if m == 0 { k } else { 0 }));
    ok.then_some(k)
}

/// Rows of the s-matrix as eigenvalue tuples, split exactly over Q when all
/// eigenvalues are `±k`.
pub fn exact_hadamard_rows(ring: &FusionRing, k: i64) -> Result<Vec<Vec<Rat>>> {
    let n = ring.rank();
    let mats: Vec<Matrix<Rat>> = (0..n).map(|i| left_matrix_rat(ring, i)).collect();
    let vecs = split_exact(&mats, &[rat_int(k), rat_int(-k)], rat_kernel)?;
    vecs.iter()
        .map(|v| mats.iter().map(|a| eigenvalue_on(a, v)).collect())
        .collect()
}

/// The characters of `R`, one per row.
///
/// Hadamard-type rings are split exactly; all others numerically by
/// processing `N_0, N_1, …` in order. Rows are sorted by their entries
/// rounded to the integer window (real parts first, then imaginary).
pub fn smatrix_from_tensor(ring: &FusionRing, tol: f64) -> Result<SMatrix> {
    if let Some(k) = hadamard_type(ring) {
        if let Ok(mut rows) = exact_hadamard_rows(ring, k) {
            rows.sort();
            let m = Matrix::from_rows(
                rows.into_iter()
                    .map(|r| r.into_iter().map(CycNum::from_rat).collect())
                    .collect(),
            )?;
            return SMatrix::exact(m);
        }
    }
    numeric_smatrix(ring, tol)
}

fn numeric_smatrix(ring: &FusionRing, tol: f64) -> Result<SMatrix> {
    let n = ring.rank();
    let mats: Vec<DMatrix<Complex64>> = (0..n)
        .map(|i| DMatrix::from_fn(n, n, |j, m| Complex64::new(ring.constant(i, j, m) as f64, 0.0)))
        .collect();
    let mut spaces: Vec<DMatrix<Complex64>> = vec![DMatrix::identity(n, n)];
    for (idx, a) in mats.iter().enumerate() {
        if spaces.iter().all(|q| q.ncols() == 1) {
            break;
        }
        let mut next = Vec::new();
        for q in spaces {
            if q.ncols() == 1 {
                next.push(q);
                continue;
            }
            next.extend(split_numeric(a, &q, tol).map_err(|e| match e {
                Error::SplittingFailed(msg) => Error::SplittingFailed(format!("matrix {idx}: {msg}")),
                e => e,
            })?);
        }
        spaces = next;
    }
    if let Some(q) = spaces.iter().find(|q| q.ncols() > 1) {
        return Err(Error::SplittingFailed(format!(
            "a {}-dimensional common eigenspace survives every matrix",
            q.ncols()
        )));
    }
    let mut rows: Vec<Vec<Complex64>> = spaces
        .iter()
        .map(|q| {
            let v = q.column(0);
            mats.iter()
                .map(|a| (v.adjoint() * a * v)[(0, 0)])
                .collect()
        })
        .collect();
    for row in &rows {
        for i in 0..n {
            for j in 0..n {
                let lhs = row[i] * row[j];
                let rhs: Complex64 = (0..n)
                    .map(|m| row[m] * ring.constant(i, j, m) as f64)
                    .sum();
                if (lhs - rhs).norm() > INTEGER_WINDOW * (1.0 + lhs.norm()) {
                    return Err(Error::SplittingFailed(format!(
                        "character property fails at ({i},{j})"
                    )));
                }
            }
        }
    }
    rows.sort_by_key(|r| row_key(r));
    let m = DMatrix::from_fn(n, n, |r, c| rows[r][c]);
    SMatrix::numeric(m)
}

fn row_key(r: &[Complex64]) -> Vec<(i64, i64)> {
    let round = |x: f64| (x / INTEGER_WINDOW).round() as i64;
    r.iter().map(|z| (round(z.re), round(z.im))).collect()
}

// QR iteration can stall on permutation-like matrices; retry on a fixed
// similarity transform when it does.
fn eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let d = a.nrows();
    let diag = |t: &DMatrix<Complex64>| (0..d).map(|i| t[(i, i)]).collect::<Vec<_>>();
    if let Some(schur) = a.clone().try_schur(f64::EPSILON, 200 * d.max(1)) {
        return Ok(diag(&schur.unpack().1));
    }
    for attempt in 1..=4 {
        let p = DMatrix::from_fn(d, d, |r, c| {
            let x = if r == c { 1.0 } else { 0.0 };
            let wiggle = ((r * 7 + c * 13 + attempt * 5) as f64).sin() * 0.25;
            Complex64::new(x + wiggle / d as f64, 0.0)
        });
        let Some(pinv) = p.clone().try_inverse() else {
            continue;
        };
        let b = &p * a * pinv;
        if let Some(schur) = b.try_schur(f64::EPSILON, 200 * d.max(1)) {
            return Ok(diag(&schur.unpack().1));
        }
    }
    Err(Error::SplittingFailed("eigenvalue iteration did not converge".into()))
}

// Splits the invariant subspace spanned by the orthonormal columns of `q`
// into eigenspaces of `a`.
fn split_numeric(
    a: &DMatrix<Complex64>,
    q: &DMatrix<Complex64>,
    tol: f64,
) -> Result<Vec<DMatrix<Complex64>>> {
    let d = q.ncols();
    let restricted = q.adjoint() * a * q;
    let scale = 1.0 + restricted.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let eig = eigenvalues(&restricted)?;
    // cluster eigenvalues that agree to within the integer window
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for z in eig {
        match clusters
            .iter_mut()
            .find(|(c, _)| (*c - z).norm() <= INTEGER_WINDOW * scale)
        {
            Some((c, m)) => {
                *c = (*c * *m as f64 + z) / (*m as f64 + 1.0);
                *m += 1;
            }
            None => clusters.push((z, 1)),
        }
    }
    if clusters.len() == 1 {
        return Ok(vec![q.clone()]);
    }
    let mut out = Vec::with_capacity(clusters.len());
    for (lambda, mult) in clusters {
        let shifted = &restricted - DMatrix::identity(d, d) * lambda;
        let svd = shifted.svd(false, true);
        let vt = svd.v_t.as_ref().unwrap();
        // singular values are sorted in descending order
        let sv = &svd.singular_values;
        if sv[d - mult] > tol.max(1e-6) * scale {
            return Err(Error::SplittingFailed(format!(
                "eigenvalue {lambda} has a numerically trivial kernel"
            )));
        }
        let coef = DMatrix::from_fn(d, mult, |r, c| vt[(d - mult + c, r)].conj());
        out.push(q * coef);
    }
    Ok(out)
}

/// Subsets found by the row-agreement heuristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSubsetResult {
    /// Sets confirmed closed against the Verlinde constants, sorted.
    pub sets: Vec<Vec<usize>>,
    /// Sets accepted by the row test but not closed.
    pub rejected: Vec<Vec<usize>>,
}

fn distinct_nonzero_rows(s: &SMatrix, cols: &[usize], tol: f64) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    for r in 0..s.n() {
        if cols.iter().all(|&c| s.entry_is_zero(r, c, tol)) {
            continue;
        }
        if !reps
            .iter()
            .any(|&p| cols.iter().all(|&c| s.entries_equal((p, c), (r, c), tol)))
        {
            reps.push(r);
        }
    }
    reps
}

fn row_test(s: &SMatrix, set: &[usize], tol: f64) -> bool {
    !set.is_empty() && distinct_nonzero_rows(s, set, tol).len() == set.len()
}

/// For each pair of rows, the columns where they agree form a candidate;
/// candidates with exactly as many distinct nonzero rows as columns are
/// kept, then the family is closed under intersections.
pub fn closed_subset_heuristic(s: &SMatrix, tol: f64) -> Result<ClosedSubsetResult> {
    let n = s.n();
    let mut family: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut consider = |set: Vec<usize>, family: &mut Vec<Vec<usize>>| {
        if seen.insert(set.clone()) && row_test(s, &set, tol) {
            family.push(set);
        }
    };
    for l in 0..n {
        for m in l + 1..n {
            let set: Vec<usize> = (0..n).filter(|&c| s.entries_equal((l, c), (m, c), tol)).collect();
            consider(set, &mut family);
        }
    }
    let mut start = 0;
    loop {
        let len = family.len();
        for a in 0..len {
            for b in start.max(a + 1)..len {
                let inter: Vec<usize> = family[a]
                    .iter()
                    .filter(|x| family[b].contains(x))
                    .cloned()
                    .collect();
                consider(inter, &mut family);
            }
        }
        if family.len() == len {
            break;
        }
        start = len;
    }
    consider((0..n).collect(), &mut family);
    let full: Vec<usize> = (0..n).collect();
    if !family.contains(&full) {
        family.push(full);
    }
    let support = verlinde_support(s)?;
    let (mut sets, mut rejected): (Vec<_>, Vec<_>) =
        family.into_iter().partition(|set| support.is_closed(set));
    sets.sort();
    rejected.sort();
    Ok(ClosedSubsetResult { sets, rejected })
}

/// The distinct nonzero rows of the columns in `subset`, in order of first
/// occurrence.
pub fn subring_smatrix(s: &SMatrix, subset: &[usize], tol: f64) -> Result<SMatrix> {
    let n = s.n();
    let mut set = subset.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() || set.iter().any(|&c| c >= n) {
        return Err(Error::Shape("subset must be a nonempty set of column indices".into()));
    }
    let tensor = verlinde_tensor(s)?;
    if !tensor.is_closed(&set) {
        let mut member = vec![false; n];
        set.iter().for_each(|&x| member[x] = true);
        for &i in &set {
            for &j in &set {
                if let Some(m) = (0..n).find(|&m| !member[m] && tensor.constant(i, j, m) != 0) {
                    return Err(Error::NotClosed { i, j, m });
                }
            }
        }
    }
    let reps = distinct_nonzero_rows(s, &set, tol);
    if reps.len() != set.len() {
        return Err(Error::Verification(format!(
            "{} distinct nonzero rows on a closed subset of size {}",
            reps.len(),
            set.len()
        )));
    }
    Ok(s.select_columns(&set).select_rows(&reps))
}

/// Common modulus of the column scalars `μ_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct MuUniformity {
    pub modulus: f64,
    /// `|μ|²` exactly, for exact input.
    pub modulus_sq: Option<CycNum>,
}

fn is_root_of_unity(x: &CycNum) -> bool {
    let q = x.order();
    let ord = if q.is_multiple_of(2) { q } else { 2 * q };
    let mut base = x.clone();
    let mut acc = CycNum::one();
    let mut e = ord;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc == CycNum::one()
}

/// Factors each column as `μ_i v_i` with `v_i` a vector of roots of unity
/// and checks `|μ_i|` is the same for every column.
pub fn mu_uniformity_check(s: &SMatrix, tol: f64) -> Result<MuUniformity> {
    let n = s.n();
    match s {
        SMatrix::Exact(m) => {
            let mut common: Option<CycNum> = None;
            for i in 0..n {
                let mu = m.get(0, i);
                let inv = mu.inverse().ok_or(Error::NotRootOfUnityType(i))?;
                for r in 0..n {
                    if !is_root_of_unity(&(m.get(r, i) * &inv)) {
                        return Err(Error::NotRootOfUnityType(i));
                    }
                }
                let sq = mu * &mu.conj();
                match &common {
                    None => common = Some(sq),
                    Some(c) if *c != sq => return Err(Error::ModuliDiffer(0, i)),
                    _ => {}
                }
            }
            let sq = common.unwrap();
            Ok(MuUniformity {
                modulus: sq.to_complex().re.sqrt(),
                modulus_sq: Some(sq),
            })
        }
        SMatrix::Numeric(m) => {
            let mut first = None;
            for i in 0..n {
                let mu = m[(0, i)].norm();
                if mu <= tol || (0..n).any(|r| (m[(r, i)].norm() - mu).abs() > tol * (1.0 + mu)) {
                    return Err(Error::NotRootOfUnityType(i));
                }
                match first {
                    None => first = Some(mu),
                    Some(f) if (f - mu).abs() > tol * (1.0 + mu) => {
                        return Err(Error::ModuliDiffer(0, i))
                    }
                    _ => {}
                }
            }
            Ok(MuUniformity {
                modulus: first.unwrap(),
                modulus_sq: None,
            })
        }
    }
}

/// Largest `|s_ki s_kj − Σ_m N_ij^m s_km|` over all rows and index pairs.
pub fn character_defect(s: &SMatrix, ring: &FusionRing) -> f64 {
    let c = s.to_complex();
    let n = ring.rank();
    let mut worst = 0.0f64;
    for k in 0..c.nrows() {
        for i in 0..n {
            for j in 0..n {
                let rhs: Complex64 = (0..n).map(|m| c[(k, m)] * ring.constant(i, j, m) as f64).sum();
                worst = worst.max((c[(k, i)] * c[(k, j)] - rhs).norm());
            }
        }
    }
    worst
}

/// `true` if the absolute value of every rational entry is at most `bound`.
pub fn entries_bounded(s: &SMatrix, bound: i64) -> bool {
    s.as_rational()
        .map(|r| r.data().iter().all(|x| x.abs() <= rat_int(bound)))
        .unwrap_or(false)
}
