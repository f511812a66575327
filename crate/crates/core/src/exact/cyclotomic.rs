//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element of `Q(ζ_N)` is stored as a polynomial of degree `< φ(N)` in
//! `ζ_N`, i.e. as a residue in `Q[x]/Φ_N(x)`, with integer numerators over a
//! single positive common denominator. The power basis `1, ζ, …, ζ^{φ(N)-1}`
//! makes the representation unique for a fixed `N`, so equality is a
//! coefficient comparison. Values of different orders are compared and
//! combined after embedding both into `Q(ζ_lcm)` via `ζ_N = ζ_M^{M/N}`.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{lcm_u64, Rational};
use crate::error::{Error, Result};

static MODULI: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();

/// Coefficients (low degree first) of the cyclotomic polynomial `Φ_N`.
pub fn cyclotomic_polynomial(order: u64) -> Arc<Vec<i64>> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let cache = MODULI.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("modulus cache poisoned").get(&order) {
        return Arc::clone(p);
    }
    let poly = Arc::new(compute_cyclotomic_polynomial(order));
    cache
        .write()
        .expect("modulus cache poisoned")
        .entry(order)
        .or_insert(poly)
        .clone()
}

// Φ_N = Π_{d | N} (x^d - 1)^{μ(N/d)}
fn compute_cyclotomic_polynomial(order: u64) -> Vec<i64> {
    let divisors: Vec<u64> = (1..=order).filter(|d| order.is_multiple_of(*d)).collect();
    let mut poly = vec![1i64];
    for &d in &divisors {
        if moebius(order / d) == 1 {
            let d = d as usize;
            let mut next = vec![0i64; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                next[i] = next[i].checked_sub(c).expect("Φ_N coefficient overflow");
                next[i + d] = next[i + d].checked_add(c).expect("Φ_N coefficient overflow");
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if moebius(order / d) == -1 {
            let d = d as usize;
            let deg = poly.len() - 1;
            let mut quot = vec![0i64; deg + 1 - d];
            for i in (d..=deg).rev() {
                let above = if i < quot.len() { quot[i] } else { 0 };
                quot[i - d] = poly[i].checked_add(above).expect("Φ_N coefficient overflow");
            }
            poly = quot;
        }
    }
    debug_assert_eq!(poly.last(), Some(&1));
    poly
}

fn moebius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Euler's totient, read off as the degree of `Φ_N`.
pub fn euler_phi(order: u64) -> usize {
    cyclotomic_polynomial(order).len() - 1
}

/// Reduces a polynomial (low degree first, any length) modulo `Φ_N`.
fn reduce_mod(mut buf: Vec<BigInt>, modulus: &[i64]) -> Vec<BigInt> {
    let degree = modulus.len() - 1;
    for i in (degree..buf.len()).rev() {
        if buf[i].is_zero() {
            continue;
        }
        let top = std::mem::take(&mut buf[i]);
        let base = i - degree;
        for (j, &m) in modulus[..degree].iter().enumerate() {
            if m != 0 {
                buf[base + j] -= &top * m;
            }
        }
    }
    buf.truncate(degree);
    buf.resize(degree, BigInt::zero());
    buf
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Self {
        let degree = euler_phi(order);
        Cyclotomic {
            order,
            numer: vec![BigInt::zero(); degree],
            denom: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(&Rational::one())
    }

    pub fn from_rational(q: &Rational) -> Self {
        Cyclotomic {
            order: 1,
            numer: vec![q.numer().clone()],
            denom: q.denom().clone(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// `ζ_N^k` in canonical form; `k` is taken modulo `N`.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        let k = k.rem_euclid(order as i64) as usize;
        let modulus = cyclotomic_polynomial(order);
        let mut buf = vec![BigInt::zero(); (order as usize).max(modulus.len())];
        buf[k] = BigInt::one();
        Cyclotomic {
            order,
            numer: reduce_mod(buf, &modulus),
            denom: BigInt::one(),
        }
    }

    /// Builds `Σ c_k ζ_N^k` from arbitrary exponents and reduces it.
    pub fn from_terms<I>(order: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let terms: Vec<(usize, Rational)> = terms
            .into_iter()
            .map(|(k, c)| (k.rem_euclid(order as i64) as usize, c))
            .collect();
        let common = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let modulus = cyclotomic_polynomial(order);
        let mut buf = vec![BigInt::zero(); (order as usize).max(modulus.len())];
        for (k, c) in terms {
            buf[k] += c.numer() * (&common / c.denom());
        }
        Self::normalized(order, reduce_mod(buf, &modulus), common)
    }

    fn normalized(order: u64, mut numer: Vec<BigInt>, mut denom: BigInt) -> Self {
        if denom.is_negative() {
            denom = -denom;
            numer.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        let mut g = denom.clone();
        for c in &numer {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if numer.iter().all(Zero::is_zero) {
            denom = BigInt::one();
        } else if !g.is_one() {
            numer.iter_mut().for_each(|c| *c /= &g);
            denom /= &g;
        }
        Cyclotomic { order, numer, denom }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.numer.len()
    }

    /// Coefficient of `ζ_N^k` in the canonical basis, `k < φ(N)`.
    pub fn coefficient(&self, k: usize) -> Rational {
        Rational::new(self.numer[k].clone(), self.denom.clone())
    }

    /// Nonzero canonical coefficients as `(exponent, numerator, denominator)`.
    pub fn terms(&self) -> Vec<(u64, BigInt, BigInt)> {
        self.numer
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let q = Rational::new(c.clone(), self.denom.clone());
                (k as u64, q.numer().clone(), q.denom().clone())
            })
            .collect()
    }

    /// Re-reduces the stored coefficients. Canonical values are fixed points.
    pub fn canonicalize(&self) -> Self {
        let terms = self
            .numer
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64, Rational::new(c.clone(), self.denom.clone())));
        Self::from_terms(self.order, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.numer.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.numer[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.numer[0].clone(), self.denom.clone()))
        } else {
            None
        }
    }

    /// Embeds into `Q(ζ_M)`; `M` must be a multiple of the current order.
    pub fn embed(&self, order: u64) -> Self {
        assert!(
            order.is_multiple_of(self.order),
            "cannot embed Q(ζ_{}) into Q(ζ_{order})",
            self.order
        );
        if order == self.order {
            return self.clone();
        }
        let step = (order / self.order) as usize;
        let modulus = cyclotomic_polynomial(order);
        let mut buf = vec![BigInt::zero(); (order as usize).max(modulus.len())];
        for (k, c) in self.numer.iter().enumerate() {
            if !c.is_zero() {
                buf[k * step] = c.clone();
            }
        }
        Cyclotomic {
            order,
            numer: reduce_mod(buf, &modulus),
            denom: self.denom.clone(),
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm_u64(a.order, b.order);
        (a.embed(m), b.embed(m))
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let modulus = cyclotomic_polynomial(self.order);
        let mut buf = vec![BigInt::zero(); n.max(modulus.len())];
        for (k, c) in self.numer.iter().enumerate() {
            buf[(n - k) % n] += c;
        }
        Cyclotomic {
            order: self.order,
            numer: reduce_mod(buf, &modulus),
            denom: self.denom.clone(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let numer = self.numer.iter().map(|c| c * q.numer()).collect();
        Self::normalized(self.order, numer, &self.denom * q.denom())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Φ_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = cyclotomic_polynomial(self.order);
        let phi: Vec<Rational> = modulus.iter().map(|&c| Rational::from_integer(c.into())).collect();
        let a: Vec<Rational> = self.numer.iter().map(|c| Rational::from_integer(c.clone())).collect();

        let mut r0 = phi;
        let mut r1 = poly_trim(a);
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_N is irreducible, so a nonzero residue is coprime to it.
        assert_eq!(r0.len(), 1, "Φ_{} has a nontrivial common factor", self.order);
        let c = r0[0].clone();
        let denom_q = Rational::from_integer(self.denom.clone());
        let terms = s0.into_iter().enumerate().map(|(k, s)| (k as i64, s * &denom_q / &c));
        Ok(Self::from_terms(self.order, terms))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Cyclotomic::one().embed(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn to_complex(&self) -> Complex64 {
        let d = self.denom.to_f64().unwrap_or(f64::NAN);
        let n = self.order as f64;
        self.numer
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = std::f64::consts::TAU * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / d, angle)
            })
            .sum()
    }
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), poly_trim(rem));
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let f = &rem[i] / lead;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[i - db + j] -= &f * bj;
            }
        }
        quot[i - db] = f;
    }
    rem.truncate(db);
    (poly_trim(quot), poly_trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.denom == other.denom && self.numer == other.numer
        } else {
            let (a, b) = Cyclotomic::aligned(self, other);
            a.denom == b.denom && a.numer == b.numer
        }
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.order != rhs.order {
            let (a, b) = Cyclotomic::aligned(self, rhs);
            return &a + &b;
        }
        if self.denom == rhs.denom {
            let numer = self.numer.iter().zip(&rhs.numer).map(|(x, y)| x + y).collect();
            return Cyclotomic::normalized(self.order, numer, self.denom.clone());
        }
        let numer = self
            .numer
            .iter()
            .zip(&rhs.numer)
            .map(|(x, y)| x * &rhs.denom + y * &self.denom)
            .collect();
        Cyclotomic::normalized(self.order, numer, &self.denom * &rhs.denom)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            numer: self.numer.iter().map(|c| -c).collect(),
            denom: self.denom.clone(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero(1);
        }
        if self.order != rhs.order {
            let (a, b) = Cyclotomic::aligned(self, rhs);
            return &a * &b;
        }
        let n = self.order as usize;
        let modulus = cyclotomic_polynomial(self.order);
        let mut buf = vec![BigInt::zero(); n.max(modulus.len())];
        for (i, x) in self.numer.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.numer.iter().enumerate() {
                if !y.is_zero() {
                    buf[(i + j) % n] += x * y;
                }
            }
        }
        Cyclotomic::normalized(self.order, reduce_mod(buf, &modulus), &self.denom * &rhs.denom)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::from_integer(0), |acc, x| &acc + &x)
    }
}

impl<'a> Sum<&'a Cyclotomic> for Cyclotomic {
    fn sum<I: Iterator<Item = &'a Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::from_integer(0), |acc, x| &acc + x)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, n, d)) in terms.iter().enumerate() {
            let negative = n.is_negative();
            let abs = n.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let coeff = if d.is_one() {
                abs.to_string()
            } else {
                format!("{abs}/{d}")
            };
            match k {
                0 => write!(f, "{coeff}")?,
                _ if abs.is_one() && d.is_one() => write!(f, "z{}^{k}", self.order)?,
                _ => write!(f, "{coeff}*z{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first order with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
        assert_eq!(euler_phi(105), 48);
    }

    #[test]
    fn roots_of_unity() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(4, 2), Cyclotomic::from_integer(-1));
        assert_eq!(z(12, 4) + z(12, 8), Cyclotomic::from_integer(-1));
        assert_eq!(z(8, 1) * z(8, 1), z(4, 1));
        assert_eq!(z(5, -1), z(5, 4));
        assert_eq!(z(7, 3) * z(7, 4), Cyclotomic::one());
    }

    #[test]
    fn mixed_orders_compare_by_embedding() {
        assert_eq!(z(4, 1), z(8, 2));
        assert_eq!(z(3, 1).embed(12), z(12, 4));
        assert_ne!(z(3, 1), z(6, 1));
        assert_eq!(z(6, 1), -z(3, 2));
    }

    #[test]
    fn inverse_of_one_minus_zeta3() {
        let a = Cyclotomic::one() - z(3, 1);
        let expected = (Cyclotomic::from_integer(2) + z(3, 1)).scale(&rat(1, 3));
        assert_eq!(a.inv().unwrap(), expected);
        assert!((&a * &expected).is_one());
    }

    #[test]
    fn inverse_errors_on_zero() {
        assert_eq!(Cyclotomic::zero(7).inv(), Err(Error::DivisionByZero));
        assert_eq!((z(6, 3) + Cyclotomic::one()).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation_inverts_roots() {
        assert_eq!(z(9, 2).conj(), z(9, 7));
        let a = Cyclotomic::from_terms(5, [(1, int(2)), (3, rat(-1, 3))]);
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn complex_rendering() {
        let v = (z(12, 1) + z(12, 11)).to_complex();
        assert!((v.re - 3f64.sqrt()).abs() < 1e-12);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::zero(3).to_string(), "0");
        let a = Cyclotomic::from_terms(5, [(0, int(2)), (1, int(1)), (2, rat(-1, 2))]);
        assert_eq!(a.to_string(), "2 + z5^1 - 1/2*z5^2");
    }
}
