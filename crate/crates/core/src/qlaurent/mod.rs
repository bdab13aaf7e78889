//! Exact arithmetic in Z[q, q^-1] and Q(q), plus quantum integers and factorials.

mod dense;
mod rational;

pub use rational::RationalFunction;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

/// An element of Z[q, q^-1], stored sparsely as exponent -> coefficient.
///
/// Zero coefficients are never stored, so structural equality is ring equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The bar involution q -> q^-1.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation at a rational point (q must be nonzero if negative exponents occur).
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let base = if *e >= 0 {
                num_traits::pow(q.clone(), *e as usize)
            } else {
                num_traits::pow(q.recip(), (-*e) as usize)
            };
            acc += base * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Evaluation at an integer point when all exponents are nonnegative.
    pub fn eval_int(&self, q: &BigInt) -> Option<BigInt> {
        if self.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let mut acc = BigInt::zero();
        for (e, c) in &self.coeffs {
            acc += c * num_traits::pow(q.clone(), *e as usize);
        }
        Some(acc)
    }

    /// Evaluation modulo a prime `p` at `q = x` (x must be invertible mod p).
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let inv = crate::linalg::mod_inv(x % p, p);
        let mut acc: u128 = 0;
        for (e, c) in &self.coeffs {
            let base = if *e >= 0 {
                crate::linalg::mod_pow(x % p, *e as u64, p)
            } else {
                crate::linalg::mod_pow(inv, (-*e) as u64, p)
            };
            let cm = bigint_mod(c, p);
            acc = (acc + (base as u128) * (cm as u128)) % p as u128;
        }
        acc as u64
    }

    /// Split as `q^shift * dense` with `dense` an ordinary polynomial in q.
    pub(crate) fn to_dense(&self) -> (i64, dense::Dense) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.coeffs {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub(crate) fn from_dense(shift: i64, d: &[BigInt]) -> Self {
        let mut p = Self::zero();
        for (i, c) in d.iter().enumerate() {
            p.add_term(shift + i as i64, c.clone());
        }
        p
    }

    /// Exact division by `other` in Z[q, q^-1], if it exists.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sa, da) = self.to_dense();
        let (sb, db) = other.to_dense();
        let quo = dense::exact_div(&da, &db)?;
        Some(Self::from_dense(sa - sb, &quo))
    }

    /// Render in the variable `var` (used for Poincare polynomials in `t`).
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}{mono}"));
            }
        }
        out
    }

    /// Substitute q -> q^k (k may be negative).
    pub fn substitute_power(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }
}

pub(crate) fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("q"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            let key = e.to_string();
            match c.to_i64() {
                Some(small) => map.serialize_entry(&key, &small)?,
                None => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct LaurentVisitor;

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Small(i64),
            Big(String),
        }

        impl<'de> Visitor<'de> for LaurentVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from exponent to integer coefficient")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((k, v)) = access.next_entry::<String, Coeff>()? {
                    let e: i64 = k.parse().map_err(de::Error::custom)?;
                    let c = match v {
                        Coeff::Small(x) => BigInt::from(x),
                        Coeff::Big(s) => s.parse::<BigInt>().map_err(de::Error::custom)?,
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }

        deserializer.deserialize_map(LaurentVisitor)
    }
}

/// The balanced quantum integer `[m] = sum_{l=1}^m q^(m+1-2l)`.
pub fn qint(m: u32) -> LaurentPoly {
    let m = m as i64;
    LaurentPoly::from_terms((1..=m).map(|l| (m + 1 - 2 * l, 1)))
}

/// `[m]! = [1][2]...[m]`, with `[0]! = 1`.
pub fn qfact(m: u32) -> LaurentPoly {
    (1..=m).fold(LaurentPoly::one(), |acc, l| &acc * &qint(l))
}

/// `[a]! = prod_l [a_l]!`.
pub fn multifact(a: &[u32]) -> LaurentPoly {
    a.iter().fold(LaurentPoly::one(), |acc, &x| &acc * &qfact(x))
}

/// `l_m = m(m-1)/2`.
pub fn lm(m: u32) -> i64 {
    let m = m as i64;
    m * (m - 1) / 2
}

/// `l_a = sum_l l_{a_l}`.
pub fn lvec(a: &[u32]) -> i64 {
    a.iter().map(|&x| lm(x)).sum()
}

/// Gaussian binomial `[n choose k]_q` in the non-balanced convention, as a polynomial in q
/// (counts k-dimensional subspaces of F_q^n).
pub fn gaussian_binomial(n: u32, k: u32) -> LaurentPoly {
    if k > n {
        return LaurentPoly::zero();
    }
    // Pascal recursion: [n,k] = [n-1,k-1] + q^k [n-1,k]
    let n = n as usize;
    let k = k as usize;
    let mut row: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    for i in 1..=n {
        let mut next = vec![LaurentPoly::zero(); i + 1];
        for j in 0..=i {
            let mut v = LaurentPoly::zero();
            if j >= 1 {
                v += &row[j - 1];
            }
            if j < i {
                v += &row[j].shift(j as i64);
            }
            next[j] = v;
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Evaluate a polynomial with nonnegative exponents at an integer prime power.
pub fn eval_at(p: &LaurentPoly, q: u64) -> BigInt {
    p.eval_int(&BigInt::from(q))
        .expect("eval_at requires nonnegative exponents")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(2), lp(&[(1, 1), (-1, 1)]));
        assert!(qint(0).is_zero());
        assert_eq!(qint(3), lp(&[(2, 1), (0, 1), (-2, 1)]));
    }

    #[test]
    fn factorials_and_l() {
        assert!(qfact(0).is_one());
        assert_eq!(lm(3), 3);
        assert_eq!(qfact(3), lp(&[(3, 1), (1, 2), (-1, 2), (-3, 1)]));
        assert_eq!(multifact(&[2, 1, 2]), &qfact(2) * &qfact(2));
        assert_eq!(lvec(&[3, 2, 1]), 4);
    }

    #[test]
    fn closed_form_of_quantum_integer() {
        let qmq = lp(&[(1, 1), (-1, -1)]);
        for m in 0..=12u32 {
            let lhs = &qint(m) * &qmq;
            let rhs = lp(&[(m as i64, 1), (-(m as i64), -1)]);
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    #[test]
    fn bar_examples() {
        assert_eq!(lp(&[(2, 1), (1, 3)]).bar(), lp(&[(-2, 1), (-1, 3)]));
        for m in 0..=10 {
            assert!(qint(m).is_bar_invariant());
        }
    }

    #[test]
    fn gaussian_binomials_count_subspaces() {
        assert_eq!(gaussian_binomial(2, 1), lp(&[(0, 1), (1, 1)]));
        assert_eq!(eval_at(&gaussian_binomial(4, 2), 2), BigInt::from(35));
        assert!(gaussian_binomial(3, 0).is_one());
        assert!(gaussian_binomial(2, 3).is_zero());
    }

    #[test]
    fn serde_map_form() {
        let p = lp(&[(-1, 2), (3, -5)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-1":2,"3":-5}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let big = LaurentPoly::monomial(BigInt::from(10).pow(30), 0);
        let s = serde_json::to_string(&big).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn exact_division() {
        let a = &qint(3) * &qint(2);
        assert_eq!(a.exact_div(&qint(2)), Some(qint(3)));
        assert_eq!(qint(3).exact_div(&qint(2)), None);
    }
}
