use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dense;
use super::LaurentPoly;

/// An element of Q(q), kept in a canonical reduced form.
///
/// Canonical form: numerator and denominator share no common factor in Z[q],
/// the denominator has lowest exponent 0 and a positive leading coefficient.
/// Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// Builds `num / den`, panicking on a zero denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in RationalFunction");
        let mut r = Self { num, den };
        r.canonicalize();
        r
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Returns the Laurent polynomial if the denominator is a unit.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn recip(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar())
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        let (sn, dn) = self.num.to_dense();
        let (sd, dd) = self.den.to_dense();
        let g = dense::gcd(&dn, &dd);
        let (dn, mut dd) = if dense::is_one(&g) {
            (dn, dd)
        } else {
            (
                dense::exact_div(&dn, &g).expect("gcd divides numerator"),
                dense::exact_div(&dd, &g).expect("gcd divides denominator"),
            )
        };
        let mut dn = dn;
        if dd.last().is_some_and(|c| c.is_negative()) {
            for c in dd.iter_mut() {
                *c = -&*c;
            }
            for c in dn.iter_mut() {
                *c = -&*c;
            }
        }
        // denominator shifted to lowest exponent 0; the unit moves to the numerator
        self.num = LaurentPoly::from_dense(sn - sd, &dn);
        self.den = LaurentPoly::from_dense(0, &dd);
    }

    /// Exact evaluation at a rational point; `None` if the denominator vanishes there.
    pub fn eval(&self, q: &num_rational::BigRational) -> Option<num_rational::BigRational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(q) / d)
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_laurent(&self.num * &rhs.num);
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &LaurentPoly) -> RationalFunction {
        RationalFunction::new(&self.num * rhs, self.den.clone())
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero RationalFunction");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::{qfact, qint};

    #[test]
    fn canonical_forms_agree() {
        let a = RationalFunction::new(qint(2), qfact(2));
        assert!(a.is_one());
        let b = RationalFunction::new(qint(3).shift(4), (&qint(3) * &qint(2)).shift(-2));
        let c = RationalFunction::new(LaurentPoly::q_pow(6), qint(2));
        assert_eq!(b, c);
        let neg = RationalFunction::new(-qint(3), -qint(2));
        assert_eq!(neg, RationalFunction::new(qint(3), qint(2)));
        assert_eq!(neg.denominator().min_exp(), Some(0));
    }

    #[test]
    fn field_arithmetic() {
        let x = RationalFunction::new(LaurentPoly::one(), qint(2));
        let y = RationalFunction::new(LaurentPoly::q_pow(1), qint(3));
        let s = &(&x + &y) - &y;
        assert_eq!(s, x);
        let p = &(&x * &y) / &y;
        assert_eq!(p, x);
        assert!((&x - &x).is_zero());
        assert_eq!(x.bar(), x);
    }
}
