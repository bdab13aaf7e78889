//! Integer polynomials in `x_1, ..., x_m`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A polynomial with integer coefficients, keyed by exponent vectors of fixed length `m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MPoly {
    pub(crate) terms: BTreeMap<Vec<u16>, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(m: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; m], c)
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, 1)
    }

    pub fn monomial(exps: Vec<u16>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `x_k` (0-based).
    pub fn var(m: usize, k: usize) -> Self {
        let mut e = vec![0; m];
        e[k] = 1;
        Self::monomial(e, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<u16>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Total degree of each monomial must agree; returns it (None for zero or mixed).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Swap the variables `x_p` and `x_q`.
    pub fn swap_vars(&self, p: usize, q: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(p, q);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// `(f - t_{pq} f) / (x_p - x_q)`, computed monomial by monomial (always exact).
    pub fn divided_difference(&self, p: usize, q: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let (a, b) = (e[p], e[q]);
            if a == b {
                continue;
            }
            // (x^a y^b - x^b y^a) / (x - y) = sign * x^lo y^lo * sum_{t} x^{hi-lo-1-t} y^t
            let (hi, lo, sign) = if a > b { (a, b, c.clone()) } else { (b, a, -c) };
            for t in 0..(hi - lo) {
                let mut f = e.clone();
                f[p] = hi - 1 - t;
                f[q] = lo + t;
                out.add_term(f, sign.clone());
            }
        }
        out
    }

    /// `(x_p - x_q)^n`.
    pub fn linear_power(m: usize, p: usize, q: usize, n: u32) -> Self {
        let mut out = Self::one(m);
        let lin = &Self::var(m, p) - &Self::var(m, q);
        for _ in 0..n {
            out = &out * &lin;
        }
        out
    }

    /// Multiply by the monomial `x^e`.
    pub fn mul_monomial(&self, e: &[u16]) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (f.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at an integer point.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    /// All monomials of total degree at most `d` in `m` variables.
    pub fn monomials_up_to(m: usize, d: u16) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; m];
        fn rec(k: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            if k == cur.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..=left {
                cur[k] = v;
                rec(k + 1, left - v, cur, out);
            }
            cur[k] = 0;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                out.add_term(e.iter().zip(f).map(|(a, b)| a + b).collect(), c * d);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            let abs = c.abs();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divided_difference_is_exact() {
        let m = 3;
        let f = &(&MPoly::monomial(vec![3, 1, 0], 2) + &MPoly::monomial(vec![0, 2, 1], -1))
            + &MPoly::var(m, 2);
        for (p, q) in [(0, 1), (1, 2), (0, 2)] {
            let d = f.divided_difference(p, q);
            let lhs = &d * &(&MPoly::var(m, p) - &MPoly::var(m, q));
            assert_eq!(lhs, &f - &f.swap_vars(p, q));
        }
        assert!(MPoly::one(2).divided_difference(0, 1).is_zero());
        assert_eq!(MPoly::var(2, 0).divided_difference(0, 1), MPoly::one(2));
    }

    #[test]
    fn monomial_count() {
        // C(d + m, m)
        assert_eq!(MPoly::monomials_up_to(3, 2).len(), 10);
        assert_eq!(MPoly::monomials_up_to(2, 3).len(), 10);
    }
}
