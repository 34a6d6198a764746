//! Factor rings: pointed Z-algebras, quotients by an element of order two
//! and the lift of a ring to an algebra with nonnegative structure constants.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::field::rat_to_i64;
use crate::exact::{CycNum, Matrix, Rat};
use crate::ring::FusionRing;
use crate::spectra::SMatrix;

/// A commutative, associative algebra free over Z with a distinguished basis.
///
/// Products are stored sparsely: `b_i b_j = Σ c b_k` over the entries of
/// `products(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedAlgebra {
    m: usize,
    offsets: Vec<usize>,
    entries: Vec<(u32, i64)>,
    labels: Vec<String>,
}

impl PointedAlgebra {
    /// Builds from a dense `m × m × m` tensor and checks commutativity and
    /// associativity.
    pub fn from_dense(m: usize, tensor: &[i64], labels: Vec<String>) -> Result<Self> {
        if m == 0 || tensor.len() != m * m * m {
            return Err(Error::Shape(format!(
                "tensor has {} entries, expected {}",
                tensor.len(),
                m * m * m
            )));
        }
        let mut offsets = Vec::with_capacity(m * m + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for pair in tensor.chunks(m) {
            entries.extend(
                pair.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (k as u32, c)),
            );
            offsets.push(entries.len());
        }
        let alg = Self::assemble(m, offsets, entries, labels)?;
        alg.check_axioms()?;
        Ok(alg)
    }

    /// Builds from monomial products `b_i b_j = c b_k`; `table[i * m + j]`
    /// holds `(k, c)`. Only commutativity is checked.
    pub fn from_monomial(m: usize, table: &[(usize, i64)], labels: Vec<String>) -> Result<Self> {
        if m == 0 || table.len() != m * m {
            return Err(Error::Shape(format!(
                "product table has {} entries, expected {}",
                table.len(),
                m * m
            )));
        }
        let mut offsets = Vec::with_capacity(m * m + 1);
        let mut entries = Vec::with_capacity(m * m);
        offsets.push(0);
        for &(k, c) in table {
            if k >= m {
                return Err(Error::Shape(format!("product index {k} out of range")));
            }
            if c != 0 {
                entries.push((k as u32, c));
            }
            offsets.push(entries.len());
        }
        let alg = Self::assemble(m, offsets, entries, labels)?;
        if let Some((i, j, k)) = alg.commutativity_witness() {
            return Err(Error::NotCommutative { i, j, m: k });
        }
        Ok(alg)
    }

    fn assemble(
        m: usize,
        offsets: Vec<usize>,
        entries: Vec<(u32, i64)>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let labels = if labels.is_empty() {
            (0..m).map(|i| i.to_string()).collect()
        } else {
            labels
        };
        if labels.len() != m {
            return Err(Error::Shape(format!("{} labels for rank {m}", labels.len())));
        }
        Ok(PointedAlgebra {
            m,
            offsets,
            entries,
            labels,
        })
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn product(&self, i: usize, j: usize) -> &[(u32, i64)] {
        let p = i * self.m + j;
        &self.entries[self.offsets[p]..self.offsets[p + 1]]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> i64 {
        self.product(i, j)
            .iter()
            .find(|(x, _)| *x as usize == k)
            .map_or(0, |(_, c)| *c)
    }

    pub fn dense_tensor(&self) -> Vec<i64> {
        let m = self.m;
        let mut t = vec![0; m * m * m];
        for i in 0..m {
            for j in 0..m {
                for &(k, c) in self.product(i, j) {
                    t[(i * m + j) * m + k as usize] = c;
                }
            }
        }
        t
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&(_, c)| c >= 0)
    }

    /// Number of nonzero structure constants.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    fn commutativity_witness(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.m {
            for j in i + 1..self.m {
                let mut a = self.product(i, j).to_vec();
                let mut b = self.product(j, i).to_vec();
                a.sort_unstable();
                b.sort_unstable();
                if a != b {
                    let k = a
                        .iter()
                        .chain(&b)
                        .find(|(k, _)| self.constant(i, j, *k as usize) != self.constant(j, i, *k as usize))
                        .map_or(0, |(k, _)| *k as usize);
                    return Some((i, j, k));
                }
            }
        }
        None
    }

    /// `(b_i b_j) b_l = b_i (b_j b_l)` for all triples; `O(m³)` sparse products.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let m = self.m;
        let mut lhs = vec![0i64; m];
        let mut rhs = vec![0i64; m];
        for i in 0..m {
            for j in 0..m {
                for l in 0..m {
                    lhs.iter_mut().for_each(|x| *x = 0);
                    rhs.iter_mut().for_each(|x| *x = 0);
                    for &(k, c) in self.product(i, j) {
                        for &(p, d) in self.product(k as usize, l) {
                            lhs[p as usize] += c * d;
                        }
                    }
                    for &(k, c) in self.product(j, l) {
                        for &(p, d) in self.product(i, k as usize) {
                            rhs[p as usize] += c * d;
                        }
                    }
                    if lhs != rhs {
                        return Some((i, j, l));
                    }
                }
            }
        }
        None
    }

    pub fn check_axioms(&self) -> Result<()> {
        if let Some((i, j, m)) = self.commutativity_witness() {
            return Err(Error::NotCommutative { i, j, m });
        }
        if let Some((i, j, l)) = self.associativity_witness() {
            return Err(Error::NotAssociative { i, j, l });
        }
        Ok(())
    }
}

/// Quotient by `⟨1 − b_d⟩` together with the map from basis indices of the
/// ring to basis indices of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order2Quotient {
    pub algebra: PointedAlgebra,
    pub class_of: Vec<usize>,
    /// Smallest index of each class.
    pub representatives: Vec<usize>,
}

/// Requires `b_d² = e` and `b_d b_i = b_î` for a permutation `i ↦ î`.
/// Classes `{b, b_d b}` are represented by their smallest index and
/// `Ñ_ij^k = Σ_{m ∈ [k]} N_ij^m`.
pub fn order2_quotient(ring: &FusionRing, d: usize) -> Result<Order2Quotient> {
    let n = ring.rank();
    if d >= n {
        return Err(Error::Shape(format!("index {d} out of range")));
    }
    let e = ring.identity_coefficients()?;
    for (m, em) in e.iter().enumerate() {
        if CycNum::from_int(ring.constant(d, d, m)) != *em {
            return Err(Error::NotOrderTwo(d));
        }
    }
    let mut hat = vec![0usize; n];
    for (i, h) in hat.iter_mut().enumerate() {
        let nz: Vec<usize> = (0..n).filter(|&m| ring.constant(d, i, m) != 0).collect();
        match nz.as_slice() {
            [m] if ring.constant(d, i, *m) == 1 => *h = *m,
            _ => return Err(Error::NotPermuting(i)),
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for i in 0..n {
        if class_of[i] == usize::MAX {
            class_of[i] = representatives.len();
            class_of[hat[i]] = representatives.len();
            representatives.push(i);
        }
    }
    let r = representatives.len();
    let mut t = vec![0i64; r * r * r];
    for (a, &i) in representatives.iter().enumerate() {
        for (b, &j) in representatives.iter().enumerate() {
            for m in 0..n {
                t[(a * r + b) * r + class_of[m]] += ring.constant(i, j, m);
            }
        }
    }
    let labels = representatives
        .iter()
        .map(|&i| if hat[i] == i { format!("{i}") } else { format!("{i}~{}", hat[i]) })
        .collect();
    Ok(Order2Quotient {
        algebra: PointedAlgebra::from_dense(r, &t, labels)?,
        class_of,
        representatives,
    })
}

const ZERO_ENTRY: u16 = u16::MAX;

/// A vector whose entries are `0` or powers of `ζ_Q`, stored as exponents.
type RootVector = Vec<u16>;

fn mul_roots(a: &[u16], b: &[u16], q: u32) -> RootVector {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            if x == ZERO_ENTRY || y == ZERO_ENTRY {
                ZERO_ENTRY
            } else {
                ((x as u32 + y as u32) % q) as u16
            }
        })
        .collect()
}

/// The nonnegative lift of a ring given by its s-matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftPresentation {
    pub lifted: PointedAlgebra,
    /// Row `x` gives the decomposition of lifted basis element `x` in the
    /// basis of the ring.
    pub embedding: Vec<Vec<i64>>,
    /// `distinguished[i]` is the lifted element mapping to `b_i`.
    pub distinguished: Vec<usize>,
    /// Scalar `g_v` of each lifted basis element `g_v v`.
    pub scalars: Vec<u128>,
    /// Root-of-unity vector `v` of each lifted basis element.
    pub vectors: Vec<Vec<Option<u32>>>,
    /// Order of the roots of unity in `vectors`.
    pub root_order: u32,
    /// Shortest word length of each `v` in the column generators.
    pub word_length: Vec<usize>,
}

impl LiftPresentation {
    /// Generators `x − Σ_i μ_{x,i} b_i` of the ideal, skipping the
    /// distinguished elements (whose generators vanish).
    pub fn ideal_generators(&self) -> Vec<(usize, &[i64])> {
        let mut dist = vec![false; self.lifted.rank()];
        self.distinguished.iter().for_each(|&x| dist[x] = true);
        (0..self.lifted.rank())
            .filter(|&x| !dist[x])
            .map(|x| (x, self.embedding[x].as_slice()))
            .collect()
    }
}

struct ColumnFactor {
    mu: u128,
    roots: RootVector,
}

// Column i as μ_i v_i with μ_i > 0 and v_i a vector of roots of unity or 0.
fn factor_columns(s: &Matrix<CycNum>, q: u32) -> Result<Vec<ColumnFactor>> {
    let n = s.rows();
    let roots: Vec<CycNum> = (0..q).map(|e| CycNum::root(q, e as i64)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let col = s.column(i);
        let mut mu: Option<u128> = None;
        let mut exps = Vec::with_capacity(n);
        for x in &col {
            if x.is_zero() {
                exps.push(ZERO_ENTRY);
                continue;
            }
            let norm = (x * &x.conj()).to_rat().ok_or(Error::NotRootOfUnityType(i))?;
            let sq = rat_to_i64(&norm).ok_or(Error::NotRootOfUnityType(i))?;
            let r = (sq as f64).sqrt().round() as i64;
            if r <= 0 || r * r != sq || mu.is_some_and(|m| m != r as u128) {
                return Err(Error::NotRootOfUnityType(i));
            }
            mu = Some(r as u128);
            let unit = x.scale(&Rat::new(BigInt::from(1), BigInt::from(r))).embed(q)?;
            let e = roots
                .iter()
                .position(|z| *z == unit)
                .ok_or(Error::NotRootOfUnityType(i))?;
            exps.push(e as u16);
        }
        out.push(ColumnFactor {
            mu: mu.ok_or(Error::ZeroRow(i))?,
            roots: exps,
        });
    }
    Ok(out)
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    a.gcd(&b)
}

/// Builds the semigroup `H` of the root-of-unity parts, the scalars
/// `g_v` (gcd of the divisibility-minimal scalars reaching `v`, closed under
/// products) and the lifted algebra `x_v x_w = (g_v g_w / g_vw) x_vw`.
pub fn fannsc_lift(s: &SMatrix, cap: usize) -> Result<LiftPresentation> {
    let SMatrix::Exact(sm) = s else {
        return Err(Error::InvalidParameter("the lift needs an exact s-matrix".into()));
    };
    let n = sm.rows();
    let q0 = sm.get(0, 0).order();
    let q = if q0 % 2 == 0 { q0 } else { 2 * q0 };
    if q >= ZERO_ENTRY as u32 {
        return Err(Error::InvalidParameter(format!("root order {q} is too large")));
    }
    let cols = factor_columns(sm, q)?;

    // breadth-first enumeration of H with word lengths
    let mut index: HashMap<RootVector, usize> = HashMap::new();
    let mut vectors: Vec<RootVector> = Vec::new();
    let mut word_length: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    for c in &cols {
        if !index.contains_key(&c.roots) {
            index.insert(c.roots.clone(), vectors.len());
            queue.push_back(vectors.len());
            vectors.push(c.roots.clone());
            word_length.push(1);
        }
    }
    if vectors.len() != n {
        return Err(Error::Singular);
    }
    if n > cap {
        return Err(Error::CapExceeded(cap));
    }
    while let Some(v) = queue.pop_front() {
        for c in &cols {
            let w = mul_roots(&vectors[v], &c.roots, q);
            if !index.contains_key(&w) {
                if vectors.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                index.insert(w.clone(), vectors.len());
                queue.push_back(vectors.len());
                vectors.push(w);
                word_length.push(word_length[v] + 1);
            }
        }
    }
    let h = vectors.len();
    let mut mult = vec![0u32; h * h];
    for a in 0..h {
        for b in a..h {
            let p = index[&mul_roots(&vectors[a], &vectors[b], q)] as u32;
            mult[a * h + b] = p;
            mult[b * h + a] = p;
        }
    }
    let gen_idx: Vec<usize> = (0..n).collect();

    // divisibility-minimal scalars a with a·v in the column semigroup
    let iteration_cap = 64 * cap * n.max(1) + 1024;
    let mut antichain: Vec<Vec<u128>> = vec![Vec::new(); h];
    let mut work: VecDeque<(usize, u128)> = VecDeque::new();
    let mut pushes = 0usize;
    let mut offer = |v: usize, a: u128, antichain: &mut Vec<Vec<u128>>, work: &mut VecDeque<(usize, u128)>| {
        if antichain[v].iter().any(|&b| a.is_multiple_of(b)) {
            return Ok(());
        }
        antichain[v].retain(|&b| b % a != 0);
        antichain[v].push(a);
        work.push_back((v, a));
        pushes += 1;
        if pushes > iteration_cap {
            Err(Error::IterationCap(iteration_cap))
        } else {
            Ok(())
        }
    };
    for (i, c) in cols.iter().enumerate() {
        offer(gen_idx[i], c.mu, &mut antichain, &mut work)?;
    }
    while let Some((v, a)) = work.pop_front() {
        if !antichain[v].contains(&a) {
            continue;
        }
        for (i, c) in cols.iter().enumerate() {
            let w = mult[v * h + gen_idx[i]] as usize;
            let b = a
                .checked_mul(c.mu)
                .ok_or_else(|| Error::Overflow("lift scalar".into()))?;
            offer(w, b, &mut antichain, &mut work)?;
        }
    }
    let mut g: Vec<u128> = antichain
        .iter()
        .map(|ch| ch.iter().fold(0u128, |acc, &x| gcd_u128(acc, x)))
        .collect();

    // close under products: g_vw must divide g_v g_w
    let mut rounds = 0usize;
    loop {
        let mut changed = false;
        for a in 0..h {
            for b in a..h {
                let p = mult[a * h + b] as usize;
                let prod = g[a]
                    .checked_mul(g[b])
                    .ok_or_else(|| Error::Overflow("lift scalar".into()))?;
                if prod % g[p] != 0 {
                    g[p] = gcd_u128(g[p], prod);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        rounds += 1;
        if rounds > h + 1 {
            return Err(Error::IterationCap(rounds));
        }
    }
    for (i, c) in cols.iter().enumerate() {
        if g[gen_idx[i]] != c.mu {
            return Err(Error::Verification(format!(
                "column {i} is not maximal in the lift"
            )));
        }
    }

    let mut table = Vec::with_capacity(h * h);
    for a in 0..h {
        for b in 0..h {
            let p = mult[a * h + b] as usize;
            let c = g[a] * g[b] / g[p];
            let c = i64::try_from(c).map_err(|_| Error::Overflow("lift constant".into()))?;
            table.push((p, c));
        }
    }
    let labels: Vec<String> = vectors.iter().map(|v| root_label(v, q)).collect();
    let lifted = PointedAlgebra::from_monomial(h, &table, labels)?;
    let embedding = decompose(sm, &vectors, &g, q, lifted.labels())?;
    Ok(LiftPresentation {
        lifted,
        embedding,
        distinguished: gen_idx,
        scalars: g,
        vectors: vectors
            .iter()
            .map(|v| v.iter().map(|&e| (e != ZERO_ENTRY).then_some(e as u32)).collect())
            .collect(),
        root_order: q,
        word_length,
    })
}

fn root_label(v: &[u16], q: u32) -> String {
    if q == 2 && !v.contains(&ZERO_ENTRY) {
        return v.iter().map(|&e| if e == 0 { '+' } else { '-' }).collect();
    }
    v.iter()
        .map(|&e| if e == ZERO_ENTRY { "*".to_string() } else { e.to_string() })
        .collect::<Vec<_>>()
        .join(".")
}

// Coefficients of g_v v in the basis of columns, required integral.
fn decompose(
    s: &Matrix<CycNum>,
    vectors: &[RootVector],
    g: &[u128],
    q: u32,
    labels: &[String],
) -> Result<Vec<Vec<i64>>> {
    let n = s.rows();
    let rational: Option<Vec<Rat>> = s.data().iter().map(|x| x.to_rat()).collect();
    let mut out = Vec::with_capacity(vectors.len());
    if let Some(data) = rational {
        let inv = Matrix::new(n, n, data)?.inverse()?;
        for (idx, v) in vectors.iter().enumerate() {
            let gv = Rat::from_integer(BigInt::from(g[idx]));
            let u: Vec<Rat> = v
                .iter()
                .map(|&e| match e {
                    ZERO_ENTRY => Rat::zero(),
                    0 => gv.clone(),
                    e if 2 * e as u32 == q => -gv.clone(),
                    _ => Rat::zero(),
                })
                .collect();
            if v.iter().any(|&e| e != ZERO_ENTRY && e != 0 && 2 * e as u32 != q) {
                return Err(Error::NonIntegralDecomposition(labels[idx].clone()));
            }
            out.push(integral_row(&inv.mul_vec(&u), &labels[idx])?);
        }
    } else {
        let inv = s.inverse()?;
        for (idx, v) in vectors.iter().enumerate() {
            let gv = Rat::from_integer(BigInt::from(g[idx]));
            let u: Vec<CycNum> = v
                .iter()
                .map(|&e| match e {
                    ZERO_ENTRY => Ok(CycNum::zero()),
                    e => Ok(CycNum::root(q, e as i64)?.scale(&gv)),
                })
                .collect::<Result<_>>()?;
            let c = inv.mul_vec(&u);
            let rats: Option<Vec<Rat>> = c.iter().map(|x| x.to_rat()).collect();
            let rats = rats.ok_or_else(|| Error::NonIntegralDecomposition(labels[idx].clone()))?;
            out.push(integral_row(&rats, &labels[idx])?);
        }
    }
    Ok(out)
}

fn integral_row(c: &[Rat], label: &str) -> Result<Vec<i64>> {
    c.iter()
        .map(|x| rat_to_i64(x).ok_or_else(|| Error::NonIntegralDecomposition(label.to_string())))
        .collect()
}

/// Checks that the embedding is multiplicative on every pair of lifted
/// basis elements and maps the distinguished elements onto the basis of
/// `ring`, using the regular representation of `ring` in integer arithmetic.
pub fn quotient_verify(lift: &LiftPresentation, ring: &FusionRing) -> bool {
    let n = ring.rank();
    let m = lift.lifted.rank();
    if lift.embedding.len() != m
        || lift.embedding.iter().any(|r| r.len() != n)
        || lift.distinguished.len() != n
    {
        return false;
    }
    for (i, &x) in lift.distinguished.iter().enumerate() {
        if x >= m || lift.embedding[x].iter().enumerate().any(|(j, &c)| c != i64::from(i == j)) {
            return false;
        }
    }
    // left[x][j][k] = coefficient of b_k in image(x) b_j
    let mut left: Vec<Vec<i128>> = Vec::with_capacity(m);
    for row in &lift.embedding {
        let mut l = vec![0i128; n * n];
        for (i, &a) in row.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = ring.constant(i, j, k);
                    if c != 0 {
                        l[j * n + k] += a as i128 * c as i128;
                    }
                }
            }
        }
        left.push(l);
    }
    let emb: Vec<Vec<i128>> = lift
        .embedding
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut lhs = vec![0i128; n];
    let mut rhs = vec![0i128; n];
    for x in 0..m {
        for y in x..m {
            lhs.iter_mut().for_each(|v| *v = 0);
            for (j, &b) in emb[y].iter().enumerate() {
                if b != 0 {
                    for k in 0..n {
                        lhs[k] += b * left[x][j * n + k];
                    }
                }
            }
            rhs.iter_mut().for_each(|v| *v = 0);
            for &(z, c) in lift.lifted.product(x, y) {
                for k in 0..n {
                    rhs[k] += c as i128 * emb[z as usize][k];
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `true` if every lifted element is `k^t` times a vector of roots of unity.
pub fn inside_scaled_group_ring(lift: &LiftPresentation, k: u128) -> bool {
    lift.scalars.iter().all(|&g| {
        let mut x = g;
        while x > 1 && x % k == 0 {
            x /= k;
        }
        x == 1 && g >= k
    })
}

/// Value of `g` as an `i64`, when it fits.
pub fn scalar_i64(g: u128) -> Option<i64> {
    g.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{group_ring, group_ring_smatrix, GroupSpec};

    fn group(orders: &[u32]) -> FusionRing {
        group_ring(&GroupSpec::new(orders.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn quotient_z2_by_generator() {
        let q = order2_quotient(&group(&[2]), 1).unwrap();
        assert_eq!(q.algebra.rank(), 1);
        assert_eq!(q.algebra.dense_tensor(), vec![1]);
        assert_eq!(q.class_of, vec![0, 0]);
    }

    #[test]
    fn quotient_z2xz3() {
        let g = GroupSpec::new(vec![2, 3]).unwrap();
        let ring = group_ring(&g).unwrap();
        let d = g.index(&[1, 0]);
        let q = order2_quotient(&ring, d).unwrap();
        assert_eq!(q.algebra.dense_tensor(), group(&[3]).tensor());
        assert!(q.algebra.is_nonnegative());
        assert_eq!(q.representatives, vec![0, 1, 2]);
    }

    #[test]
    fn quotient_z4_by_square() {
        let q = order2_quotient(&group(&[4]), 2).unwrap();
        assert_eq!(q.class_of, vec![0, 1, 0, 1]);
        assert_eq!(q.algebra.constant(1, 1, 0), 1);
        assert_eq!(q.algebra.constant(1, 1, 1), 0);
        assert_eq!(q.algebra.constant(0, 1, 1), 1);
    }

    #[test]
    fn quotient_rejects_bad_elements() {
        assert_eq!(order2_quotient(&group(&[4]), 1), Err(Error::NotOrderTwo(1)));
        assert_eq!(order2_quotient(&group(&[3]), 1), Err(Error::NotOrderTwo(1)));
    }

    #[test]
    fn lift_of_z3_is_itself() {
        let s = group_ring_smatrix(&GroupSpec::new(vec![3]).unwrap()).unwrap();
        let lift = fannsc_lift(&s, 4096).unwrap();
        assert_eq!(lift.lifted.rank(), 3);
        assert!(lift.ideal_generators().is_empty());
        assert!(lift.scalars.iter().all(|&g| g == 1));
        assert!(quotient_verify(&lift, &group(&[3])));
        let mut bad = lift.clone();
        bad.lifted = PointedAlgebra::from_monomial(
            3,
            &[(0, 1), (1, 1), (2, 1), (1, 1), (2, 1), (0, 2), (2, 1), (0, 2), (1, 1)],
            vec![],
        )
        .unwrap();
        assert!(!quotient_verify(&bad, &group(&[3])));
    }

    #[test]
    fn lift_cap() {
        let s = group_ring_smatrix(&GroupSpec::new(vec![2, 2, 2]).unwrap()).unwrap();
        assert_eq!(fannsc_lift(&s, 4), Err(Error::CapExceeded(4)));
    }

    #[test]
    fn lift_is_associative() {
        // columns (1,1) and (2,-2): H = {++, +-} with scalars 1 and 2
        let s = SMatrix::from_ints(&[vec![1, 2], vec![1, -2]]).unwrap();
        let lift = fannsc_lift(&s, 64).unwrap();
        assert!(lift.lifted.is_nonnegative());
        assert_eq!(lift.lifted.associativity_witness(), None);
        let tensor = crate::spectra::verlinde_tensor(&s).unwrap();
        let ring = FusionRing::new(2, tensor.tensor, vec![0, 1]).unwrap();
        assert!(quotient_verify(&lift, &ring));
    }

    #[test]
    fn pointed_algebra_rejects_non_associative() {
        let mut t = vec![0; 8];
        t[1] = 1; // b0 b0 = b1
        t[3] = 1; // b0 b1 = b1
        t[5] = 1; // b1 b0 = b1
        t[6] = 1; // b1 b1 = b0
        assert!(matches!(
            PointedAlgebra::from_dense(2, &t, vec![]),
            Err(Error::NotAssociative { .. })
        ));
    }

    #[test]
    fn paley12_lift_matches_word_lengths() {
        let h = crate::generators::gen_paley(11).unwrap();
        let rows: Vec<Vec<i64>> = h.rows().iter().map(|r| r.iter().map(|x| 3 * x).collect()).collect();
        let s = SMatrix::from_ints(&rows).unwrap();
        let lift = fannsc_lift(&s, 4096).unwrap();

        // breadth-first distances on sign patterns as bitmasks
        let cols: Vec<u16> = (0..12)
            .map(|c| (0..12).filter(|&r| h.get(r, c) < 0).fold(0u16, |m, r| m | 1 << r))
            .collect();
        let mut dist: HashMap<u16, u32> = cols.iter().map(|&c| (c, 1)).collect();
        let mut frontier: Vec<u16> = dist.keys().copied().collect();
        let mut d = 1;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for v in frontier {
                for &c in &cols {
                    if !dist.contains_key(&(v ^ c)) {
                        dist.insert(v ^ c, d);
                        next.push(v ^ c);
                    }
                }
            }
            frontier = next;
        }
        assert_eq!(lift.lifted.rank(), dist.len());
        let mask = |x: usize| {
            lift.vectors[x]
                .iter()
                .enumerate()
                .fold(0u16, |m, (r, e)| if *e == Some(1) { m | 1 << r } else { m })
        };
        let word: Vec<u32> = (0..lift.lifted.rank()).map(|x| dist[&mask(x)]).collect();
        for x in 0..lift.lifted.rank() {
            assert_eq!(lift.scalars[x], 3u128.pow(word[x]));
        }
        for x in (0..lift.lifted.rank()).step_by(7) {
            for y in 0..lift.lifted.rank() {
                let [(z, c)] = lift.lifted.product(x, y) else { panic!() };
                assert_eq!(mask(*z as usize), mask(x) ^ mask(y));
                assert_eq!(*c, 3i64.pow(word[x] + word[y] - word[*z as usize]));
            }
        }

        let ring = crate::hadamard::ring_from_hadamard(&h).unwrap();
        assert!(quotient_verify(&lift, &ring));
        let mut bad = lift.clone();
        let x = bad.ideal_generators()[0].0;
        bad.embedding[x][0] += 1;
        assert!(!quotient_verify(&bad, &ring));
    }
}
