//! Dense univariate polynomials over Z, used for gcd and exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients from degree 0 upward; no trailing zeros.
pub(crate) type Dense = Vec<BigInt>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &Dense) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn content(p: &Dense) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub(crate) fn scale_div(p: &Dense, c: &BigInt) -> Dense {
    p.iter().map(|x| x / c).collect()
}

pub(crate) fn primitive_part(p: &Dense) -> Dense {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out = scale_div(p, &c);
    if out.last().is_some_and(|l| l.is_negative()) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

/// Pseudo-remainder of `a` by `b`: lc(b)^(deg a - deg b + 1) * a mod b.
fn pseudo_rem(a: &Dense, b: &Dense) -> Dense {
    let db = degree(b).expect("pseudo_rem by zero");
    let lb = b[db].clone();
    let mut r = a.clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        let shift = dr - db;
        for (j, y) in b.iter().enumerate() {
            r[j + shift] -= &lr * y;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor in Z[q], normalized to positive leading coefficient.
pub(crate) fn gcd(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() {
        return primitive_part(b)
            .into_iter()
            .map(|x| x * content(b))
            .collect();
    }
    if b.is_empty() {
        return primitive_part(a)
            .into_iter()
            .map(|x| x * content(a))
            .collect();
    }
    let cont = content(a).gcd(&content(b));
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    let x = primitive_part(&x);
    x.into_iter().map(|c| c * &cont).collect()
}

/// Exact division `a / b`; returns `None` if `b` does not divide `a` in Z[q].
pub(crate) fn exact_div(a: &Dense, b: &Dense) -> Option<Dense> {
    let db = degree(b)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    let da = degree(a).unwrap();
    if da < db {
        return None;
    }
    let lb = &b[db];
    let mut r = a.clone();
    let mut quo = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &r[k + db];
        if c.is_zero() {
            continue;
        }
        let (qk, rem) = c.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &qk * y;
        }
        quo[k] = qk;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quo);
    Some(quo)
}

pub(crate) fn is_one(p: &Dense) -> bool {
    p.len() == 1 && p[0].is_one()
}
