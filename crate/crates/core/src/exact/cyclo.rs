//! Elements of the cyclotomic field Q(ζ_q) with rational coefficients.
//!
//! An element of order `q` is stored in the power basis `1, ζ, …, ζ^(φ(q)-1)`
//! after reduction modulo the cyclotomic polynomial Φ_q, so two elements of
//! the same order are equal iff their coefficient vectors are equal.
//! Elements of different orders are compared after embedding both into the
//! field of order `lcm(q1, q2)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{rat_to_f64, Field, Rat};
use crate::error::{Error, Result};

/// Largest order accepted by constructors and the literal parser.
pub const MAX_ORDER: u32 = 1 << 14;

type Poly = Arc<Vec<i64>>;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Φ_q, lowest degree first. Monic of degree φ(q).
pub fn cyclotomic_polynomial(q: u32) -> Poly {
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&q) {
        return p.clone();
    }
    // x^q - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; q as usize + 1];
    num[0] = -1;
    num[q as usize] = 1;
    for d in 1..q {
        if q.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(q, p.clone());
    p
}

// Division of integer polynomials by a monic divisor, remainder zero.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (t, &d) in den.iter().enumerate() {
                rem[k + t] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

pub fn euler_phi(q: u32) -> usize {
    cyclotomic_polynomial(q).len() - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Exact element of Q(ζ_q).
#[derive(Clone)]
pub struct CycNum {
    q: u32,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum {
            q: 1,
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        CycNum { q: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// ζ_q^e for any integer exponent.
    pub fn root(q: u32, e: i64) -> Result<Self> {
        if q == 0 || q > MAX_ORDER {
            return Err(Error::OutOfRange(format!("order {q}")));
        }
        let e = e.rem_euclid(q as i64) as usize;
        let mut full = vec![Rat::zero(); q as usize];
        full[e] = Rat::one();
        Ok(Self::reduce(q, full))
    }

    /// Builds an element from coefficients on ζ_q^0 … ζ_q^(len-1); exponents
    /// at or above `q` wrap around.
    pub fn from_exponent_coeffs(q: u32, coeffs: &[Rat]) -> Result<Self> {
        if q == 0 || q > MAX_ORDER {
            return Err(Error::OutOfRange(format!("order {q}")));
        }
        Ok(Self::reduce(q, coeffs.to_vec()))
    }

    // Fold exponents mod q, then reduce mod Φ_q.
    fn reduce(q: u32, mut poly: Vec<Rat>) -> Self {
        let qu = q as usize;
        if poly.len() > qu {
            let tail: Vec<Rat> = poly.drain(qu..).collect();
            for (k, c) in tail.into_iter().enumerate() {
                if !c.is_zero() {
                    poly[k % qu] += c;
                }
            }
        }
        let phi = cyclotomic_polynomial(q);
        let deg = phi.len() - 1;
        if poly.len() < deg {
            poly.resize(deg, Rat::zero());
        }
        for top in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[top]);
            if c.is_zero() {
                continue;
            }
            let base = top - deg;
            for (t, &p) in phi.iter().enumerate().take(deg) {
                if p != 0 {
                    poly[base + t] -= &c * Rat::from_integer(BigInt::from(p));
                }
            }
        }
        poly.truncate(deg);
        CycNum { q, coeffs: poly }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Power-basis coefficients (length φ(q)).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, when it is one.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses `self` in Q(ζ_target); `target` must be a multiple of the order.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.q) {
            return Err(Error::OrderMismatch(self.q, target));
        }
        if target == self.q {
            return Ok(self.clone());
        }
        let step = (target / self.q) as usize;
        let mut full = vec![Rat::zero(); target as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            full[(e * step) % target as usize] += c;
        }
        Ok(Self::reduce(target, full))
    }

    fn common(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        if a.q == b.q {
            return (a.clone(), b.clone());
        }
        let l = lcm(a.q, b.q);
        (a.embed(l).unwrap(), b.embed(l).unwrap())
    }

    fn add_same(&self, other: &CycNum) -> CycNum {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum { q: self.q, coeffs }
    }

    fn sub_same(&self, other: &CycNum) -> CycNum {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNum { q: self.q, coeffs }
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        if self.coeffs.len() == 1 {
            let c = &self.coeffs[0];
            return CycNum {
                q: self.q,
                coeffs: other.coeffs.iter().map(|x| c * x).collect(),
            };
        }
        let n = self.coeffs.len();
        let mut prod = vec![Rat::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.q, prod)
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        CycNum {
            q: self.q,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Applies the Galois automorphism ζ ↦ ζ^j (j coprime to q).
    pub fn galois(&self, j: i64) -> CycNum {
        let qu = self.q as i64;
        let mut full = vec![Rat::zero(); self.q as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                full[(e as i64 * j).rem_euclid(qu) as usize] += c;
            }
        }
        Self::reduce(self.q, full)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rat() {
            return Some(CycNum {
                q: self.q,
                coeffs: {
                    let mut c = vec![Rat::zero(); self.coeffs.len()];
                    c[0] = r.recip();
                    c
                },
            });
        }
        // product of the other Galois conjugates; a * prod is the field norm
        let mut prod = CycNum {
            q: self.q,
            coeffs: {
                let mut c = vec![Rat::zero(); self.coeffs.len()];
                c[0] = Rat::one();
                c
            },
        };
        for j in 2..self.q as i64 {
            if j.gcd(&(self.q as i64)) == 1 {
                prod = prod.mul_same(&self.galois(j));
            }
        }
        let norm = self.mul_same(&prod).to_rat()?;
        Some(prod.scale(&norm.recip()))
    }

    /// Floating-point value with ζ_q = exp(2πi/q).
    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * e as f64 / self.q as f64;
            acc += Complex64::from_polar(rat_to_f64(c), angle);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
}

/// Strict binary arithmetic: both operands must already share an order.
pub fn cyc_arith(a: &CycNum, b: &CycNum, op: CycOp) -> Result<CycNum> {
    if a.q != b.q {
        return Err(Error::OrderMismatch(a.q, b.q));
    }
    Ok(match op {
        CycOp::Add => a.add_same(b),
        CycOp::Sub => a.sub_same(b),
        CycOp::Mul => a.mul_same(b),
    })
}

/// Lowest common order of a collection of elements.
pub fn common_order<'a>(xs: impl IntoIterator<Item = &'a CycNum>) -> u32 {
    xs.into_iter().fold(1, |acc, x| lcm(acc, x.q))
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.q == other.q {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CycNum::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::literal::format_cyc(self))
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::literal::format_cyc(self))
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.q == rhs.q {
            return self.add_same(rhs);
        }
        let (a, b) = CycNum::common(self, rhs);
        a.add_same(&b)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        if self.q == rhs.q {
            return self.sub_same(rhs);
        }
        let (a, b) = CycNum::common(self, rhs);
        a.sub_same(&b)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.q == rhs.q {
            return self.mul_same(rhs);
        }
        // rational scalars skip the embedding
        if let (1, Some(r)) = (self.q, self.to_rat()) {
            return rhs.scale(&r);
        }
        if let (1, Some(r)) = (rhs.q, rhs.to_rat()) {
            return self.scale(&r);
        }
        let (a, b) = CycNum::common(self, rhs);
        a.mul_same(&b)
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            q: self.q,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

impl From<Rat> for CycNum {
    fn from(r: Rat) -> Self {
        CycNum::from_rat(r)
    }
}

impl Field for CycNum {
    fn zero_el() -> Self {
        CycNum::zero()
    }
    fn one_el() -> Self {
        CycNum::one()
    }
    fn is_zero_el(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        CycNum::inverse(self)
    }
}
