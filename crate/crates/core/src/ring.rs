//! Z-based rngs given by their structure constants.
//!
//! A [`FusionRing`] is a free Z-module with basis `b_0 … b_{n-1}`,
//! commutative multiplication `b_i b_j = Σ_m N_ij^m b_m` with integer (possibly
//! negative) constants, and an involution `~` on the basis. The identity is
//! only required to exist after tensoring with C; its coefficients `e_i` and
//! the trace `τ = Σ conj(e_i) τ_i` are recovered from the constants alone.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{CycNum, Matrix, Rat};

/// Structure constants, involution and (once computed) identity coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionRing {
    n: usize,
    tensor: Vec<i64>,
    tilde: Vec<usize>,
    identity: Option<Vec<Rat>>,
}

/// Element `Σ μ_i b_i` with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RingElement {
    pub coeffs: Vec<CycNum>,
}

impl RingElement {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        RingElement {
            coeffs: coeffs.iter().map(|&c| CycNum::from_int(c)).collect(),
        }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self::from_ints(&v)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Integer coefficients, if every coefficient is an integer that fits.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| c.to_rat().and_then(|r| crate::exact::field::rat_to_i64(&r)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Commutativity,
    Associativity,
    InvolutionCompatibility,
    IdentityExists,
    IdentitySelfDual,
    Duality,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Commutativity,
        Axiom::Associativity,
        Axiom::InvolutionCompatibility,
        Axiom::IdentityExists,
        Axiom::IdentitySelfDual,
        Axiom::Duality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::InvolutionCompatibility => "involution-compatibility",
            Axiom::IdentityExists => "identity-exists",
            Axiom::IdentitySelfDual => "identity-self-dual",
            Axiom::Duality => "duality",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// First failing index tuple; empty when the check passed.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<AxiomCheck>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).unwrap()
    }
}

impl FusionRing {
    /// Validates shape, commutativity and the involution; identity
    /// coefficients stay unset.
    pub fn from_tensor(n: usize, tensor: Vec<i64>, tilde: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("empty basis".into()));
        }
        if tensor.len() != n * n * n {
            return Err(Error::Shape(format!(
                "tensor has {} entries, expected {}",
                tensor.len(),
                n * n * n
            )));
        }
        check_involution(&tilde, n)?;
        let ring = FusionRing {
            n,
            tensor,
            tilde,
            identity: None,
        };
        if let Some((i, j, m)) = ring.commutativity_witness() {
            return Err(Error::NotCommutative { i, j, m });
        }
        Ok(ring)
    }

    /// Same as [`from_tensor`](Self::from_tensor) followed by
    /// [`with_identity`](Self::with_identity).
    pub fn new(n: usize, tensor: Vec<i64>, tilde: Vec<usize>) -> Result<Self> {
        Self::from_tensor(n, tensor, tilde)?.with_identity()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, m: usize) -> i64 {
        self.tensor[(i * self.n + j) * self.n + m]
    }

    pub fn tensor(&self) -> &[i64] {
        &self.tensor
    }

    pub fn tilde(&self) -> &[usize] {
        &self.tilde
    }

    /// Regular-representation matrix of `b_i`: entry `(j, m)` is `N_ij^m`.
    pub fn left_matrix(&self, i: usize) -> Vec<i64> {
        self.tensor[i * self.n * self.n..(i + 1) * self.n * self.n].to_vec()
    }

    pub fn with_tilde(&self, tilde: Vec<usize>) -> Result<Self> {
        check_involution(&tilde, self.n)?;
        Ok(FusionRing {
            n: self.n,
            tensor: self.tensor.clone(),
            tilde,
            identity: self.identity.clone(),
        })
    }

    fn commutativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for m in 0..n {
                    if self.constant(i, j, m) != self.constant(j, i, m) {
                        return Some((i, j, m));
                    }
                }
            }
        }
        None
    }

    /// First `(i, j, l)` with `(b_i b_j) b_l ≠ b_i (b_j b_l)`.
    ///
    /// Equivalent to `N_i N_j = Σ_m N_ij^m N_m` on the regular representation.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let mut lhs = vec![0i64; n];
        let mut rhs = vec![0i64; n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    lhs.iter_mut().for_each(|x| *x = 0);
                    rhs.iter_mut().for_each(|x| *x = 0);
                    for m in 0..n {
                        let a = self.constant(i, j, m);
                        if a != 0 {
                            for (p, x) in lhs.iter_mut().enumerate() {
                                *x += a * self.constant(m, l, p);
                            }
                        }
                        let b = self.constant(j, l, m);
                        if b != 0 {
                            for (p, x) in rhs.iter_mut().enumerate() {
                                *x += b * self.constant(i, m, p);
                            }
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

    fn involution_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let t = &self.tilde;
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    if self.constant(t[i], t[j], m) != self.constant(i, j, t[m]) {
                        return Some((i, j, m));
                    }
                }
            }
        }
        None
    }

    /// Solves `(Σ e_i b_i) b_j = b_j` for all `j` exactly.
    ///
    /// The system has integer coefficients, so the unique solution (when it
    /// exists) is rational.
    pub fn solve_identity(&self) -> Result<Vec<Rat>> {
        let n = self.n;
        // row (j, m): Σ_i e_i N_ij^m = δ_jm
        let a = Matrix::from_fn(n * n, n, |row, i| {
            let (j, m) = (row / n, row % n);
            Rat::from_integer(BigInt::from(self.constant(i, j, m)))
        });
        let b: Vec<Rat> = (0..n * n)
            .map(|row| {
                if row / n == row % n {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        match a.solve(&b)? {
            None => Err(Error::NoIdentity),
            Some((_, rank)) if rank < n => Err(Error::IdentityNotUnique),
            Some((x, _)) => Ok(x),
        }
    }

    /// Computes and stores the identity coefficients.
    pub fn with_identity(mut self) -> Result<Self> {
        if self.identity.is_none() {
            self.identity = Some(self.solve_identity()?);
        }
        Ok(self)
    }

    /// Coefficients `e_i` of the identity of R ⊗ C.
    pub fn identity_coefficients(&self) -> Result<Vec<CycNum>> {
        let e = match &self.identity {
            Some(e) => e.clone(),
            None => self.solve_identity()?,
        };
        Ok(e.into_iter().map(CycNum::from_rat).collect())
    }

    pub fn identity_rational(&self) -> Option<&[Rat]> {
        self.identity.as_deref()
    }

    fn stored_identity(&self) -> Result<&[Rat]> {
        self.identity.as_deref().ok_or(Error::MissingIdentity)
    }

    /// `τ(r) = Σ_i conj(e_i) r_i`.
    pub fn trace(&self, r: &RingElement) -> Result<CycNum> {
        let e = self.stored_identity()?;
        self.check_len(r)?;
        let mut acc = CycNum::zero();
        for (ei, ri) in e.iter().zip(&r.coeffs) {
            if !ei.is_zero() && !ri.is_zero() {
                // e is rational, so conj(e_i) = e_i
                acc = &acc + &ri.scale(ei);
            }
        }
        Ok(acc)
    }

    fn trace_of_ints(&self, e: &[Rat], r: &[BigInt]) -> Rat {
        e.iter()
            .zip(r)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * Rat::from_integer(b.clone()))
            .fold(Rat::zero(), |acc, x| acc + x)
    }

    fn check_len(&self, r: &RingElement) -> Result<()> {
        if r.len() != self.n {
            return Err(Error::Shape(format!(
                "element of length {} in a rank-{} ring",
                r.len(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check_len(a)?;
        self.check_len(b)?;
        let n = self.n;
        let mut out = vec![CycNum::zero(); n];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (m, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, m);
                    if c != 0 {
                        *slot = &*slot + &ab.scale(&Rat::from_integer(BigInt::from(c)));
                    }
                }
            }
        }
        Ok(RingElement { coeffs: out })
    }

    /// Integer product through the tensor.
    pub fn multiply_ints(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (m, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, m);
                    if c != 0 {
                        *slot += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Smallest `m ≥ 1` with `τ(b_i^m) ≠ 0`, searching up to `2n + 2`.
    pub fn tau_power_search(&self, i: usize) -> Result<usize> {
        let e = self.stored_identity()?;
        if i >= self.n {
            return Err(Error::Shape(format!("index {i} out of range")));
        }
        let bound = 2 * self.n + 2;
        let mut base = vec![BigInt::zero(); self.n];
        base[i] = BigInt::one();
        let mut pow = base.clone();
        for m in 1..=bound {
            if !self.trace_of_ints(e, &pow).is_zero() {
                return Ok(m);
            }
            pow = self.multiply_ints(&pow, &base);
        }
        Err(Error::BoundExceeded { index: i, bound })
    }

    /// True iff `N_ij^m = 0` for all `i, j ∈ S`, `m ∉ S`.
    pub fn is_closed_subset(&self, subset: &[usize]) -> bool {
        self.closure_witness(subset).is_none()
    }

    fn closure_witness(&self, subset: &[usize]) -> Option<(usize, usize, usize)> {
        let mut member = vec![false; self.n];
        for &s in subset {
            member[s] = true;
        }
        for &i in subset {
            for &j in subset {
                for m in (0..self.n).filter(|&m| !member[m]) {
                    if self.constant(i, j, m) != 0 {
                        return Some((i, j, m));
                    }
                }
            }
        }
        None
    }

    /// The subring spanned by a closed subset, basis in increasing index order.
    pub fn subring(&self, subset: &[usize]) -> Result<FusionRing> {
        let mut s: Vec<usize> = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || s.iter().any(|&x| x >= self.n) {
            return Err(Error::Shape("subset must be a nonempty set of basis indices".into()));
        }
        if let Some((i, j, m)) = self.closure_witness(&s) {
            return Err(Error::NotClosed { i, j, m });
        }
        let pos = |x: usize| s.iter().position(|&y| y == x);
        let mut tilde = Vec::with_capacity(s.len());
        for &x in &s {
            match pos(self.tilde[x]) {
                Some(p) => tilde.push(p),
                None => return Err(Error::NotInvolutionStable(x)),
            }
        }
        let k = s.len();
        let mut tensor = Vec::with_capacity(k * k * k);
        for &i in &s {
            for &j in &s {
                for &m in &s {
                    tensor.push(self.constant(i, j, m));
                }
            }
        }
        FusionRing::new(k, tensor, tilde)
    }

    /// Checks the six axioms in order, recording the first witness of each failure.
    pub fn verify_axioms(&self) -> VerifyReport {
        let n = self.n;
        let mut checks = Vec::with_capacity(6);
        let push = |checks: &mut Vec<AxiomCheck>, axiom, w: Option<Vec<usize>>| {
            checks.push(AxiomCheck {
                axiom,
                passed: w.is_none(),
                witness: w.unwrap_or_default(),
            })
        };
        push(
            &mut checks,
            Axiom::Commutativity,
            self.commutativity_witness().map(|(i, j, m)| vec![i, j, m]),
        );
        push(
            &mut checks,
            Axiom::Associativity,
            self.associativity_witness().map(|(i, j, l)| vec![i, j, l]),
        );
        push(
            &mut checks,
            Axiom::InvolutionCompatibility,
            self.involution_witness().map(|(i, j, m)| vec![i, j, m]),
        );
        let e = match &self.identity {
            Some(e) => Ok(e.clone()),
            None => self.solve_identity(),
        };
        match e {
            Err(_) => {
                push(&mut checks, Axiom::IdentityExists, Some(vec![]));
                push(&mut checks, Axiom::IdentitySelfDual, Some(vec![]));
                push(&mut checks, Axiom::Duality, Some(vec![]));
            }
            Ok(e) => {
                push(&mut checks, Axiom::IdentityExists, None);
                let w = (0..n).find(|&i| e[i] != e[self.tilde[i]]).map(|i| vec![i]);
                push(&mut checks, Axiom::IdentitySelfDual, w);
                push(&mut checks, Axiom::Duality, self.duality_witness(&e));
            }
        }
        VerifyReport { checks }
    }

    // τ(b̃_i b_j) = δ_ij
    fn duality_witness(&self, e: &[Rat]) -> Option<Vec<usize>> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let t = (0..n)
                    .filter(|&m| !e[m].is_zero())
                    .map(|m| &e[m] * Rat::from_integer(BigInt::from(self.constant(self.tilde[i], j, m))))
                    .fold(Rat::zero(), |acc, x| acc + x);
                let want = if i == j { Rat::one() } else { Rat::zero() };
                if t != want {
                    return Some(vec![i, j]);
                }
            }
        }
        None
    }
}

fn check_involution(tilde: &[usize], n: usize) -> Result<()> {
    if tilde.len() != n {
        return Err(Error::NotPermutation(format!(
            "length {} for a rank-{n} ring",
            tilde.len()
        )));
    }
    let mut seen = vec![false; n];
    for &t in tilde {
        if t >= n || seen[t] {
            return Err(Error::NotPermutation(format!("{tilde:?}")));
        }
        seen[t] = true;
    }
    if let Some(i) = (0..n).find(|&i| tilde[tilde[i]] != i) {
        return Err(Error::NotPermutation(format!("not an involution at {i}")));
    }
    Ok(())
}

/// All involutive permutations of `0..n`.
pub fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn rec(p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(first) = p.iter().position(|&x| x == usize::MAX) else {
            out.push(p.clone());
            return;
        };
        p[first] = first;
        rec(p, out);
        for j in first + 1..p.len() {
            if p[j] == usize::MAX {
                p[first] = j;
                p[j] = first;
                rec(p, out);
                p[j] = usize::MAX;
            }
        }
        p[first] = usize::MAX;
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], &mut out);
    out
}

/// Tries every involution of the basis (n ≤ 12) and returns the first one
/// for which all axioms hold, or `None`.
pub fn find_valid_involution(n: usize, tensor: &[i64]) -> Result<Option<(Vec<usize>, VerifyReport)>> {
    if n > 12 {
        return Err(Error::InvalidParameter(format!(
            "involution search limited to rank 12, got {n}"
        )));
    }
    let base = FusionRing::from_tensor(n, tensor.to_vec(), (0..n).collect())?;
    let e = base.solve_identity().ok();
    for t in involutions(n) {
        let mut ring = base.with_tilde(t.clone())?;
        ring.identity = e.clone();
        let report = ring.verify_axioms();
        if report.all_passed() {
            return Ok(Some((t, report)));
        }
    }
    Ok(None)
}
