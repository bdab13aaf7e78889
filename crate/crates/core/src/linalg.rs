//! Exact linear algebra over the fields used by the crate: Q, prime fields F_p,
//! and small Galois fields F_q.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_int(&self, x: i64) -> Self::Elem;
}

pub type Matrix<E> = Vec<Vec<E>>;

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
}

pub(crate) fn mod_pow(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u128 = 1 % p as u128;
    let mut base = (b % p) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    mod_pow(a, p - 2, p)
}

/// A prime field F_p with p < 2^63, used for modular rank certificates.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

/// A 61-bit Mersenne prime.
pub const LARGE_PRIME: u64 = (1u64 << 61) - 1;

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_inv(*a, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_int(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
}

/// Reduces `m` in place to reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let t = f.mul(&factor, &m[r][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// A basis of the right null space `{v : m v = 0}`.
pub fn nullspace<F: Field>(f: &F, m: &Matrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&a[r][fc]);
            }
            v
        })
        .collect()
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![f.zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if f.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..m {
                let t = f.mul(&a[i][l], &b[l][j]);
                out[i][j] = f.add(&out[i][j], &t);
            }
        }
    }
    out
}

pub fn transpose<E: Clone>(a: &Matrix<E>, rows: usize, cols: usize) -> Matrix<E> {
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j].clone()).collect())
        .collect()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = a.len();
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.len() < n || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Dimension of the column span of `cols` (each a vector of equal length).
pub fn span_dim<F: Field>(f: &F, vectors: &[Vec<F::Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(f, &vectors.to_vec())
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^61`, largest first, starting with [`LARGE_PRIME`].
pub fn large_primes() -> impl Iterator<Item = u64> {
    (0..).scan(LARGE_PRIME + 2, |cur, _| {
        let mut n = *cur - 2;
        while !is_prime_u64(n) {
            n -= 2;
        }
        *cur = n;
        Some(n)
    })
}

/// The rank of a matrix over `Q(q)` with entries in `Z[q, q^-1]`, with the evidence used.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LaurentRank {
    pub rank: usize,
    /// Primes at which the upper bound was checked.
    pub primes: Vec<u64>,
    /// Number of evaluation points per prime.
    pub points: u64,
}

/// Exact rank over `Q(q)`.
///
/// A nonzero minor of `M(t) mod p` gives a lower bound. For the upper bound `r`, every
/// `(r+1)`-minor is (after clearing powers of q row by row) a polynomial of degree at
/// most `D` whose coefficients are bounded by `B`; it vanishes identically once it
/// vanishes at `D + 1` points modulo primes whose product exceeds `2B`.
pub fn laurent_rank(m: &[Vec<crate::qlaurent::LaurentPoly>]) -> LaurentRank {
    use num_bigint::BigUint;
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let full = rows.min(cols);
    let eval = |p: u64, t: u64| -> Matrix<u64> {
        m.iter().map(|row| row.iter().map(|x| x.eval_mod(t, p)).collect()).collect()
    };
    let mut spans = Vec::new();
    let mut norms = Vec::new();
    for row in m {
        let lo = row.iter().filter_map(|x| x.min_exp()).min();
        let hi = row.iter().filter_map(|x| x.max_exp()).max();
        spans.push(match (lo, hi) {
            (Some(a), Some(b)) => (b - a) as u64,
            _ => 0,
        });
        let n: BigUint = row
            .iter()
            .flat_map(|x| x.terms().map(|(_, c)| c.magnitude().clone()).collect::<Vec<_>>())
            .sum();
        norms.push(n.max(BigUint::one()));
    }
    spans.sort_unstable_by(|a, b| b.cmp(a));
    norms.sort_unstable_by(|a, b| b.cmp(a));
    let p0 = LARGE_PRIME;
    let mut r = rank(&PrimeField { p: p0 }, &eval(p0, 1_234_567_891));
    'retry: loop {
        if r >= full {
            return LaurentRank { rank: r, primes: Vec::new(), points: 0 };
        }
        let degree: u64 = spans.iter().take(r + 1).sum();
        let bound: BigUint = norms.iter().take(r + 1).product::<BigUint>() * 2u32;
        let mut primes = Vec::new();
        let mut prod = BigUint::one();
        for p in large_primes() {
            primes.push(p);
            prod *= p;
            for t in 1..=degree + 1 {
                let k = rank(&PrimeField { p }, &eval(p, t));
                if k > r {
                    r = k;
                    continue 'retry;
                }
            }
            if prod > bound {
                break;
            }
        }
        return LaurentRank { rank: r, primes, points: degree + 1 };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn rank_and_nullspace_over_q() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank(&Rationals, &m), 2);
        let ns = nullspace(&Rationals, &m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: BigRational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField { p: 7 };
        let a = vec![vec![1u64, 2], vec![3, 4]];
        let inv = inverse(&f, &a).unwrap();
        let id = mat_mul(&f, &a, &inv);
        assert_eq!(id, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(f.mul(&3, &f.inv(&3)), 1);
        assert_eq!(mod_inv(2, LARGE_PRIME), (LARGE_PRIME + 1) / 2);
    }

    #[test]
    fn primes_and_laurent_rank() {
        assert!(is_prime_u64(LARGE_PRIME));
        assert!(!is_prime_u64(LARGE_PRIME - 2));
        let ps: Vec<u64> = large_primes().take(3).collect();
        assert_eq!(ps[0], LARGE_PRIME);
        assert!(ps[1] < ps[0] && is_prime_u64(ps[1]) && is_prime_u64(ps[2]));
        use crate::qlaurent::LaurentPoly as L;
        // [[1, q], [q^-1, 1]] has rank 1; [[1, q], [q, 1]] has rank 2
        let a = vec![vec![L::one(), L::q_pow(1)], vec![L::q_pow(-1), L::one()]];
        assert_eq!(laurent_rank(&a).rank, 1);
        let b = vec![vec![L::one(), L::q_pow(1)], vec![L::q_pow(1), L::one()]];
        assert_eq!(laurent_rank(&b).rank, 2);
    }
}
