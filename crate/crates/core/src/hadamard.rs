//! Rings attached to Hadamard matrices.
//!
//! For a normalized Hadamard matrix `s` of order `4k` the columns are closed
//! under componentwise multiplication and
//! `N_ij^m = (1/4) Σ_l s_li s_lj s_lm` defines a ring with trivial
//! involution, `b_i² = k b_0` and identity `(1/k) b_0`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, F2, F3};
use crate::ring::FusionRing;
use crate::spectra::{exact_hadamard_rows, hadamard_type, split_exact, eigenvalue_on};

/// A ±1 matrix with `H Hᵀ = n I` whose first column is all `+1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HadamardMatrix {
    n: usize,
    data: Vec<i8>,
}

impl std::fmt::Debug for HadamardMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "HadamardMatrix({})", self.n)?;
        for r in 0..self.n {
            let line: String = self
                .row(r)
                .iter()
                .map(|&x| if x > 0 { '+' } else { '-' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl HadamardMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `n / 4`; zero for orders 1 and 2.
    pub fn k(&self) -> usize {
        self.n / 4
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c] as i64
    }

    pub fn row(&self, r: usize) -> &[i8] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|r| self.row(r).iter().map(|&x| x as i64).collect())
            .collect()
    }

    /// Rows in lexicographic order, for comparisons up to row permutation.
    pub fn sorted_rows(&self) -> Vec<Vec<i64>> {
        let mut rows = self.rows();
        rows.sort();
        rows
    }

    /// The matrix with its columns reordered and renormalized on the new
    /// first column.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<HadamardMatrix> {
        let rows: Vec<Vec<i64>> = self
            .rows()
            .into_iter()
            .map(|r| perm.iter().map(|&c| r[c]).collect())
            .collect();
        normalize_hadamard(&rows)
    }
}

/// Checks `M Mᵀ = n I` and negates the rows that start with `-1`.
pub fn normalize_hadamard(m: &[Vec<i64>]) -> Result<HadamardMatrix> {
    let n = m.len();
    if n == 0 {
        return Err(Error::NotHadamard("empty matrix".into()));
    }
    if let Some(r) = m.iter().position(|row| row.len() != n) {
        return Err(Error::NotHadamard(format!("row {r} has the wrong length")));
    }
    if m.iter().flatten().any(|&x| x != 1 && x != -1) {
        return Err(Error::NotHadamard("entries must be +1 or -1".into()));
    }
    if n > 2 && !n.is_multiple_of(4) {
        return Err(Error::NotHadamard(format!("order {n} is not divisible by 4")));
    }
    for a in 0..n {
        for b in a + 1..n {
            let dot: i64 = m[a].iter().zip(&m[b]).map(|(x, y)| x * y).sum();
            if dot != 0 {
                return Err(Error::NotHadamard(format!("rows {a} and {b} are not orthogonal")));
            }
        }
    }
    let mut data = Vec::with_capacity(n * n);
    for row in m {
        let sign = row[0];
        data.extend(row.iter().map(|&x| (x * sign) as i8));
    }
    Ok(HadamardMatrix { n, data })
}

/// `N_ij^m = (1/4) Σ_l s_li s_lj s_lm`, with trivial involution.
pub fn ring_from_hadamard(h: &HadamardMatrix) -> Result<FusionRing> {
    let n = h.n();
    let mut t = vec![0i64; n * n * n];
    let cols: Vec<Vec<i64>> = (0..n).map(|c| (0..n).map(|r| h.get(r, c)).collect()).collect();
    let mut prod = vec![0i64; n];
    for i in 0..n {
        for j in i..n {
            for l in 0..n {
                prod[l] = cols[i][l] * cols[j][l];
            }
            for m in 0..n {
                let sum: i64 = prod.iter().zip(&cols[m]).map(|(a, b)| a * b).sum();
                if sum % 4 != 0 {
                    return Err(Error::NonIntegral { i, j, m });
                }
                t[(i * n + j) * n + m] = sum / 4;
                t[(j * n + i) * n + m] = sum / 4;
            }
        }
    }
    FusionRing::new(n, t, (0..n).collect())
}

/// `ξ_i = { j : s_ji = -1 }` for every column.
pub fn xi_sets(h: &HadamardMatrix) -> Vec<Vec<usize>> {
    (0..h.n())
        .map(|c| (0..h.n()).filter(|&r| h.get(r, c) == -1).collect())
        .collect()
}

/// `k − 2|ξ_i ∩ ξ_j ∩ ξ_m|`.
pub fn xi_constant(xi: &[Vec<usize>], k: i64, i: usize, j: usize, m: usize) -> i64 {
    let triple = xi[i]
        .iter()
        .filter(|x| xi[j].contains(x) && xi[m].contains(x))
        .count() as i64;
    k - 2 * triple
}

/// Tally of `p_ijlm = |Σ_q s_qi s_qj s_ql s_qm|` over 4-sets of columns.
pub type Profile = BTreeMap<u64, u64>;

pub fn profile(h: &HadamardMatrix) -> Result<Profile> {
    let n = h.n();
    let k = h.k() as u64;
    let cols: Vec<Vec<i64>> = (0..n).map(|c| (0..n).map(|r| h.get(r, c)).collect()).collect();
    let mut out = Profile::new();
    let mut pair = vec![0i64; n];
    let mut triple = vec![0i64; n];
    for i in 0..n {
        for j in i + 1..n {
            for q in 0..n {
                pair[q] = cols[i][q] * cols[j][q];
            }
            for l in j + 1..n {
                for q in 0..n {
                    triple[q] = pair[q] * cols[l][q];
                }
                for m in l + 1..n {
                    let p = triple
                        .iter()
                        .zip(&cols[m])
                        .map(|(a, b)| a * b)
                        .sum::<i64>()
                        .unsigned_abs();
                    if n >= 4 && p % 8 != (4 * k) % 8 {
                        return Err(Error::Verification(format!(
                            "p({i},{j},{l},{m}) = {p} is not congruent to 4k mod 8"
                        )));
                    }
                    *out.entry(p).or_insert(0) += 1;
                }
            }
        }
    }
    Ok(out)
}

/// `Σ_m (N_ij^m)² = k²`.
pub fn sum_squares_check(ring: &FusionRing, i: usize, j: usize) -> bool {
    let n = ring.rank();
    let k = ring.constant(0, 0, 0);
    (0..n).map(|m| ring.constant(i, j, m).pow(2)).sum::<i64>() == k * k
}

/// Partitions of the `(k-3)/2`-th triangular number into nonzero
/// triangular numbers.
pub fn triangular_bound(k: u64) -> Result<u128> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("k must be odd and at least 3, got {k}")));
    }
    let t = |x: u64| x * (x + 1) / 2;
    let target = t((k - 3) / 2) as usize;
    let mut ways = vec![0u128; target + 1];
    ways[0] = 1;
    let mut x = 1;
    while (t(x) as usize) <= target {
        let part = t(x) as usize;
        for v in part..=target {
            ways[v] = ways[v]
                .checked_add(ways[v - part])
                .ok_or_else(|| Error::Overflow("partition count".into()))?;
        }
        x += 1;
    }
    Ok(ways[target])
}

/// A multiset of absolute values, stored as sorted `(value, count)` pairs.
pub type AbsMultiset = Vec<(u64, usize)>;

/// The distinct multisets `{|N_ij^m| : m ∉ {0,i,j}}` over pairs with
/// `|{0,i,j}| = 3`.
pub fn multiset_census(ring: &FusionRing) -> BTreeSet<AbsMultiset> {
    let n = ring.rank();
    let mut out = BTreeSet::new();
    for i in 1..n {
        for j in i + 1..n {
            let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
            for m in (1..n).filter(|&m| m != i && m != j) {
                *counts.entry(ring.constant(i, j, m).unsigned_abs()).or_insert(0) += 1;
            }
            out.insert(counts.into_iter().collect());
        }
    }
    out
}

fn odd_hadamard_k(ring: &FusionRing) -> Result<i64> {
    let k = hadamard_type(ring)
        .ok_or_else(|| Error::NotHadamard("ring is not of Hadamard type".into()))?;
    if k % 2 == 0 {
        return Err(Error::InvalidParameter(format!("k = {k} is even")));
    }
    Ok(k)
}

/// `{0}`, the pairs `{0, i}` and the full basis, each verified closed; also
/// verifies that no `{0, i, j}` of size 3 is closed. Requires odd `k`.
pub fn had_closed_subsets(ring: &FusionRing) -> Result<Vec<Vec<usize>>> {
    odd_hadamard_k(ring)?;
    let n = ring.rank();
    let mut out: Vec<Vec<usize>> = vec![vec![0]];
    out.extend((1..n).map(|i| vec![0, i]));
    out.push((0..n).collect());
    if let Some(s) = out.iter().find(|s| !ring.is_closed_subset(s)) {
        return Err(Error::Verification(format!("{s:?} is not closed")));
    }
    for i in 1..n {
        for j in i + 1..n {
            if ring.is_closed_subset(&[0, i, j]) {
                return Err(Error::Verification(format!("{{0, {i}, {j}}} is closed")));
            }
        }
    }
    Ok(out)
}

/// For odd `k`: every `N_ij^m` with `0, i, j, m` distinct is odd and lies
/// in `[−k+2, k−2]`; also no `b_i b_j = ±k b_m` with `i, j, m` nonzero.
pub fn parity_check(ring: &FusionRing) -> Result<bool> {
    let k = odd_hadamard_k(ring)?;
    let n = ring.rank();
    for i in 1..n {
        for j in 1..n {
            for m in 1..n {
                let c = ring.constant(i, j, m);
                if i == j || j == m || i == m {
                    continue;
                }
                if c % 2 == 0 || c.abs() > k - 2 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `[[N̂+I, N̂−I], [N̂−I, −N̂−I]]` where `N̂` is `N_i` without rows and
/// columns `0` and `i`; verified to satisfy `W Wᵀ = (2k²+2) I`.
pub fn wmatrix(ring: &FusionRing, i: usize) -> Result<Vec<Vec<i64>>> {
    let n = ring.rank();
    let k = hadamard_type(ring)
        .ok_or_else(|| Error::NotHadamard("ring is not of Hadamard type".into()))?;
    if i == 0 || i >= n {
        return Err(Error::InvalidParameter(format!("index must be in 1..{n}, got {i}")));
    }
    let keep: Vec<usize> = (1..n).filter(|&x| x != i).collect();
    let d = keep.len();
    let hat = |a: usize, b: usize| ring.constant(i, keep[a], keep[b]);
    let delta = |a: usize, b: usize| i64::from(a == b);
    let w: Vec<Vec<i64>> = (0..2 * d)
        .map(|r| {
            (0..2 * d)
                .map(|c| {
                    let (a, b) = (r % d, c % d);
                    match (r < d, c < d) {
                        (true, true) => hat(a, b) + delta(a, b),
                        (true, false) | (false, true) => hat(a, b) - delta(a, b),
                        (false, false) => -hat(a, b) - delta(a, b),
                    }
                })
                .collect()
        })
        .collect();
    if let Some((r, c)) = (0..2 * d)
        .flat_map(|r| (0..2 * d).map(move |c| (r, c)))
        .find(|&(r, c)| w[r][c] == 0)
    {
        return Err(Error::Verification(format!("W has a zero entry at ({r},{c})")));
    }
    let norm = 2 * k * k + 2;
    for a in 0..2 * d {
        for b in a..2 * d {
            let dot: i64 = w[a].iter().zip(&w[b]).map(|(x, y)| x * y).sum();
            if dot != if a == b { norm } else { 0 } {
                return Err(Error::Verification(format!(
                    "W W^T has entry {dot} at ({a},{b}), expected {}",
                    if a == b { norm } else { 0 }
                )));
            }
        }
    }
    Ok(w)
}

/// Recovers the Hadamard matrix from its ring by exact common-eigenspace
/// splitting with eigenvalues `±k`; rows come out sorted.
pub fn reconstruct_exact(ring: &FusionRing) -> Result<HadamardMatrix> {
    let k = hadamard_type(ring)
        .ok_or_else(|| Error::NotHadamard("tensor does not satisfy N_ii^j = k δ_0j".into()))?;
    let rows = exact_hadamard_rows(ring, k)?;
    let kq = crate::exact::rat(k);
    let mut ints = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::with_capacity(row.len());
        for x in row {
            let v = crate::exact::field::rat_to_i64(&(x / &kq))
                .filter(|v| v.abs() == 1)
                .ok_or_else(|| Error::SplittingFailed("eigenvalue is not ±k".into()))?;
            r.push(v);
        }
        ints.push(r);
    }
    ints.sort();
    let h = normalize_hadamard(&ints)?;
    if ring_from_hadamard(&h)?.tensor() != ring.tensor() {
        return Err(Error::Verification(
            "reconstructed matrix does not reproduce the tensor".into(),
        ));
    }
    Ok(h)
}

/// The same splitting over F_3 using only the constants mod 3; requires
/// `k ≡ 1 (mod 3)` so that the eigenvalues are `±1`. Entries of the
/// result are `±1`, rows sorted.
pub fn reconstruct_mod3(n: usize, tensor: &[F3], k: u64) -> Result<Vec<Vec<i64>>> {
    if k % 3 != 1 {
        return Err(Error::InvalidParameter(format!("k = {k} is not 1 mod 3")));
    }
    if n == 0 || tensor.len() != n * n * n {
        return Err(Error::Shape(format!(
            "tensor has {} entries, expected {}",
            tensor.len(),
            n * n * n
        )));
    }
    let mats: Vec<Matrix<F3>> = (0..n)
        .map(|i| Matrix::from_fn(n, n, |j, m| tensor[(i * n + j) * n + m]))
        .collect();
    let one = F3::new(1);
    let vecs = split_exact(&mats, &[one, one.negated()], |m| m.kernel())?;
    let mut rows: Vec<Vec<i64>> = vecs
        .iter()
        .map(|v| {
            mats.iter()
                .map(|a| eigenvalue_on(a, v).map(|x| x.symmetric()))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    rows.sort();
    Ok(rows)
}

/// Reduces the tensor of a ring mod 3.
pub fn tensor_mod3(ring: &FusionRing) -> Vec<F3> {
    ring.tensor().iter().map(|&x| F3::new(x)).collect()
}

/// The `4k`-dimensional F_2 algebra with `N_ij^0 = N_0i^j = N_i0^j = δ_ij`
/// and `N_ij^m = 1` whenever `0, i, j, m` are distinct.
pub fn f2_algebra_tensor(k: usize) -> Result<Vec<F2>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let n = 4 * k;
    let mut t = vec![F2::new(0); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let v = if m == 0 {
                    i == j
                } else if i == 0 || j == 0 {
                    i + j == m
                } else {
                    i != j && m != i && m != j
                };
                t[(i * n + j) * n + m] = F2::new(v as i64);
            }
        }
    }
    Ok(t)
}

/// Exhaustive commutativity and associativity check over F_2.
pub fn f2_algebra_check(n: usize, t: &[F2]) -> bool {
    if t.len() != n * n * n {
        return false;
    }
    let at = |i: usize, j: usize, m: usize| t[(i * n + j) * n + m].value() as u8;
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                if at(i, j, m) != at(j, i, m) {
                    return false;
                }
            }
        }
    }
    // (b_i b_j) b_l = b_i (b_j b_l), compared coefficientwise
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for p in 0..n {
                    let mut lhs = 0u8;
                    let mut rhs = 0u8;
                    for m in 0..n {
                        lhs ^= at(i, j, m) & at(m, l, p);
                        rhs ^= at(j, l, m) & at(i, m, p);
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Rank over F_2 of `v_ij = (1 − s_ij)/2`; checked against `4k − 2`.
pub fn v_rank(h: &HadamardMatrix) -> Result<usize> {
    let n = h.n();
    let v = Matrix::from_fn(n, n, |r, c| F2::new((1 - h.get(r, c)) / 2));
    let rank = v.rank();
    if n >= 4 && rank > n - 2 {
        return Err(Error::Verification(format!("rank {rank} exceeds {}", n - 2)));
    }
    Ok(rank)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Screen {
    Inequivalent,
    Indistinguishable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Invariants {
    profile: Profile,
    censuses: Vec<BTreeSet<AbsMultiset>>,
    spectra: Vec<Vec<Vec<u64>>>,
}

// Census and |N| row sums depend on the normalizing column, so they are
// collected for every choice of first column and sorted.
fn invariants(h: &HadamardMatrix) -> Result<Invariants> {
    let n = h.n();
    let profile = profile(h)?;
    let mut censuses = Vec::with_capacity(n);
    let mut spectra = Vec::with_capacity(n);
    for c in 0..n {
        let mut perm: Vec<usize> = vec![c];
        perm.extend((0..n).filter(|&x| x != c));
        let ring = ring_from_hadamard(&h.permute_columns(&perm)?)?;
        censuses.push(multiset_census(&ring));
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut sums: Vec<u64> = (0..n)
                    .map(|j| (0..n).map(|m| ring.constant(i, j, m).unsigned_abs()).sum())
                    .collect();
                sums.sort_unstable();
                sums
            })
            .collect();
        rows.sort();
        spectra.push(rows);
    }
    censuses.sort();
    spectra.sort();
    Ok(Invariants {
        profile,
        censuses,
        spectra,
    })
}

/// Compares permutation- and sign-invariant data; a mismatch proves the
/// matrices inequivalent, a match proves nothing.
pub fn equiv_screen(a: &HadamardMatrix, b: &HadamardMatrix) -> Result<Screen> {
    if a.n() != b.n() {
        return Err(Error::OrderMismatch(a.n() as u32, b.n() as u32));
    }
    Ok(if invariants(a)? == invariants(b)? {
        Screen::Indistinguishable
    } else {
        Screen::Inequivalent
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sylvester(m: u32) -> HadamardMatrix {
        let mut rows = vec![vec![1i64]];
        for _ in 0..m {
            let n = rows.len();
            let mut next = vec![vec![0; 2 * n]; 2 * n];
            for r in 0..n {
                for c in 0..n {
                    let x = rows[r][c];
                    next[r][c] = x;
                    next[r][c + n] = x;
                    next[r + n][c] = x;
                    next[r + n][c + n] = -x;
                }
            }
            rows = next;
        }
        normalize_hadamard(&rows).unwrap()
    }

    #[test]
    fn normalize_negates_rows() {
        let h = sylvester(2);
        let mut rows = h.rows();
        rows[2].iter_mut().for_each(|x| *x = -*x);
        assert_eq!(normalize_hadamard(&rows).unwrap(), h);
        assert_eq!(normalize_hadamard(&h.rows()).unwrap(), h);
    }

    #[test]
    fn normalize_rejects_bad_input() {
        let five = vec![vec![1i64; 5]; 5];
        assert!(normalize_hadamard(&five).is_err());
        let bad = vec![vec![1, 1], vec![1, 1]];
        assert!(normalize_hadamard(&bad).is_err());
        let zero = vec![vec![1, 0], vec![1, -1]];
        assert!(normalize_hadamard(&zero).is_err());
    }

    #[test]
    fn sylvester4_ring() {
        let r = ring_from_hadamard(&sylvester(2)).unwrap();
        assert!(r.verify_axioms().all_passed());
        for i in 0..4 {
            for m in 0..4 {
                assert_eq!(r.constant(i, i, m), if m == 0 { 1 } else { 0 });
            }
        }
        let p = profile(&sylvester(2)).unwrap();
        assert_eq!(p, Profile::from([(4, 1)]));
    }

    #[test]
    fn sylvester8_profile() {
        let p = profile(&sylvester(3)).unwrap();
        assert!(p.keys().all(|k| *k == 0 || *k == 8));
        assert_eq!(p.values().sum::<u64>(), 70);
    }

    #[test]
    fn triangular_bounds() {
        assert_eq!(triangular_bound(3).unwrap(), 1);
        assert_eq!(triangular_bound(5).unwrap(), 1);
        assert_eq!(triangular_bound(7).unwrap(), 2);
        // T = 6: {6}, {3,3}, {3,1,1,1}, {1×6}
        assert_eq!(triangular_bound(9).unwrap(), 4);
        assert!(triangular_bound(4).is_err());
    }

    #[test]
    fn v_rank_of_sylvester() {
        for m in 2..=5 {
            assert_eq!(v_rank(&sylvester(m)).unwrap(), m as usize);
        }
    }

    #[test]
    fn exact_reconstruction_sylvester16() {
        let h = sylvester(4);
        let r = ring_from_hadamard(&h).unwrap();
        let back = reconstruct_exact(&r).unwrap();
        assert_eq!(back.sorted_rows(), h.sorted_rows());
    }

    #[test]
    fn mod3_reconstruction_rejects_k3() {
        assert!(matches!(
            reconstruct_mod3(12, &vec![F3::new(0); 1728], 3),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn mod3_reconstruction_sylvester16() {
        let h = sylvester(4);
        let r = ring_from_hadamard(&h).unwrap();
        let rows = reconstruct_mod3(16, &tensor_mod3(&r), 4).unwrap();
        assert_eq!(rows, h.sorted_rows());
    }

    #[test]
    fn f2_algebra() {
        let t = f2_algebra_tensor(1).unwrap();
        assert!(f2_algebra_check(4, &t));
        let t = f2_algebra_tensor(2).unwrap();
        assert!(f2_algebra_check(8, &t));
        let mut bad = t.clone();
        let idx = (1 * 8 + 2) * 8 + 3;
        bad[idx] = F2::new(bad[idx].value() as i64 + 1);
        assert!(!f2_algebra_check(8, &bad));
    }

    #[test]
    fn even_k_closed_subsets_refused() {
        let r = ring_from_hadamard(&sylvester(3)).unwrap();
        assert!(matches!(had_closed_subsets(&r), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn equiv_screen_on_permutations() {
        let h = sylvester(3);
        let perm = [3, 1, 7, 0, 2, 6, 5, 4];
        let p = h.permute_columns(&perm).unwrap();
        assert_eq!(equiv_screen(&h, &p).unwrap(), Screen::Indistinguishable);
        assert!(equiv_screen(&h, &sylvester(2)).is_err());
    }

    #[test]
    fn parity_on_paley() {
        for q in [11, 19] {
            let ring = ring_from_hadamard(&crate::generators::gen_paley(q).unwrap()).unwrap();
            assert!(parity_check(&ring).unwrap());
        }
        assert!(parity_check(&ring_from_hadamard(&sylvester(3)).unwrap()).is_err());
    }
}
