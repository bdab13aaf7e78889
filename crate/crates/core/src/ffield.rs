//! Small Galois fields F_q (q a prime power up to a few hundred), table driven.

use crate::linalg::{rref, Field, Matrix};
use crate::Error;

/// A finite field with `q = p^k` elements.
///
/// Elements are encoded as integers in `0..q` whose base-`p` digits are the
/// coefficients of a polynomial modulo a fixed irreducible of degree `k`.
#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    q: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

pub const MAX_FIELD_SIZE: u32 = 256;

/// Returns `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic of degree k
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate() {
            let idx = d - k + j;
            prod[idx] = (prod[idx] + p * p - (c * m) % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(k as usize);
    let mut x = x;
    for _ in 0..k {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Brute-force search for a monic irreducible polynomial of degree `k` over F_p.
fn irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let total = p.pow(k);
    'cand: for low in 0..total {
        let mut poly = digits(low, p, k);
        poly.push(1);
        if poly[0] == 0 {
            continue;
        }
        // a reducible polynomial has a monic factor of degree <= k/2
        for d in 1..=k / 2 {
            for f in 0..p.pow(d) {
                let mut fac = digits(f, p, d);
                fac.push(1);
                if poly_divides(&fac, &poly, p) {
                    continue 'cand;
                }
            }
        }
        return poly;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_divides(fac: &[u32], poly: &[u32], p: u32) -> bool {
    let mut r: Vec<u32> = poly.to_vec();
    let df = fac.len() - 1;
    while r.len() > df {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        for (j, &m) in fac.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p * p - (c * m) % p) % p;
        }
        r.pop();
    }
    r.iter().all(|&x| x == 0)
}

impl GaloisField {
    pub fn new(q: u32) -> Result<Self, Error> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = irreducible(p, k);
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let elems: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, k)).collect();
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = elems[a]
                    .iter()
                    .zip(&elems[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * n + b] = undigits(&s, p) as u16;
                let m = poly_mulmod(&elems[a], &elems[b], &modulus, p);
                mul[a * n + b] = undigits(&m, p) as u16;
            }
        }
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u16)
            .collect();
        let inv = (0..n)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (0..n).find(|&b| mul[a * n + b] == 1).unwrap() as u16
                }
            })
            .collect();
        Ok(Self {
            p,
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }
}

impl Field for GaloisField {
    type Elem = u16;

    fn zero(&self) -> u16 {
        0
    }
    fn one(&self) -> u16 {
        1
    }
    fn add(&self, a: &u16, b: &u16) -> u16 {
        self.add[*a as usize * self.q as usize + *b as usize]
    }
    fn sub(&self, a: &u16, b: &u16) -> u16 {
        self.add(a, &self.neg[*b as usize])
    }
    fn mul(&self, a: &u16, b: &u16) -> u16 {
        self.mul[*a as usize * self.q as usize + *b as usize]
    }
    fn neg(&self, a: &u16) -> u16 {
        self.neg[*a as usize]
    }
    fn inv(&self, a: &u16) -> u16 {
        assert!(*a != 0, "inverse of zero in F_{}", self.q);
        self.inv[*a as usize]
    }
    fn is_zero(&self, a: &u16) -> bool {
        *a == 0
    }
    fn from_int(&self, x: i64) -> u16 {
        // integers map into the prime subfield, encoded as constant polynomials
        x.rem_euclid(self.p as i64) as u16
    }
}

/// Enumerates all `d`-dimensional subspaces of the row space of `basis`
/// (given as rows, assumed linearly independent), each returned as a list of
/// `d` row vectors in ambient coordinates.
///
/// Subspaces are produced from reduced row echelon coefficient matrices in
/// lexicographic order of pivot sets, then of free entries, so the order is
/// canonical and duplicate-free.
pub fn subspaces(f: &GaloisField, basis: &[Vec<u16>], d: usize) -> Vec<Vec<Vec<u16>>> {
    let n = basis.len();
    let mut out = Vec::new();
    if d > n {
        return out;
    }
    if d == 0 {
        out.push(Vec::new());
        return out;
    }
    let q = f.order() as u16;
    for pivots in combinations(n, d) {
        // free slots: (row r, column c) with c > pivots[r] and c not a pivot
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| {
                let pv = pivots.clone();
                ((pivots[r] + 1)..n)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut vals = vec![0u16; free.len()];
        loop {
            let mut coef = vec![vec![0u16; n]; d];
            for (r, &pc) in pivots.iter().enumerate() {
                coef[r][pc] = 1;
            }
            for (slot, &(r, c)) in free.iter().enumerate() {
                coef[r][c] = vals[slot];
            }
            let rows: Vec<Vec<u16>> = coef
                .iter()
                .map(|cr| combine(f, cr, basis))
                .collect();
            out.push(rows);
            // odometer increment
            let mut i = 0;
            loop {
                if i == vals.len() {
                    break;
                }
                vals[i] += 1;
                if vals[i] < q {
                    break;
                }
                vals[i] = 0;
                i += 1;
            }
            if i == vals.len() {
                break;
            }
        }
    }
    out
}

fn combine(f: &GaloisField, coef: &[u16], basis: &[Vec<u16>]) -> Vec<u16> {
    let dim = basis.first().map_or(0, |b| b.len());
    let mut v = vec![0u16; dim];
    for (c, b) in coef.iter().zip(basis) {
        if *c == 0 {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x = f.add(x, &f.mul(c, y));
        }
    }
    v
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Row-space basis of the given vectors (drops dependent rows).
pub fn row_basis<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m: Matrix<F::Elem> = rows.to_vec();
    let piv = rref(f, &mut m);
    m.truncate(piv.len());
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::{eval_at, gaussian_binomial};
    use num_bigint::BigInt;

    #[test]
    fn field_axioms_small() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = GaloisField::new(q).unwrap();
            for a in f.elements() {
                if a != 0 {
                    assert_eq!(f.mul(&a, &f.inv(&a)), 1, "q={q} a={a}");
                }
                for b in f.elements() {
                    assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                    for c in [0u16, 1, (q - 1) as u16] {
                        let lhs = f.mul(&a, &f.add(&b, &c));
                        let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(GaloisField::new(6).is_err());
        assert!(GaloisField::new(1).is_err());
        assert_eq!(prime_power(49), Some((7, 2)));
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for q in [2u32, 3, 4] {
            let f = GaloisField::new(q).unwrap();
            for n in 0..=4usize {
                let basis: Vec<Vec<u16>> = (0..n)
                    .map(|i| (0..n).map(|j| u16::from(i == j)).collect())
                    .collect();
                for d in 0..=n {
                    let subs = subspaces(&f, &basis, d);
                    let expected = eval_at(&gaussian_binomial(n as u32, d as u32), q as u64);
                    assert_eq!(BigInt::from(subs.len()), expected, "q={q} n={n} d={d}");
                }
            }
        }
    }
}
