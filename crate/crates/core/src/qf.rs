//! The algebra `f` modeled on words.
//!
//! A word `(i_1, ..., i_m)` stands for the monomial `theta_{i_1} ... theta_{i_m}` of the
//! free algebra; `f` is its quotient by the radical of the bilinear form, so equality in
//! `f` is decided by pairing against all words of the same weight.
//!
//! The form is normalised by `(theta_i, theta_i) = 1/(1 - q^2)` and
//! `(x, y z) = (r(x), y (x) z)`. Every pairing of weight `nu` is `(1 - q^2)^{-|nu|}`
//! times a Laurent polynomial; [`Qf::gram`] returns those Laurent polynomials.
//!
//! The coproduct twist uses the symmetric form on weights:
//! `(x_1 (x) x_2)(y_1 (x) y_2) = q^{-|x_2| . |y_1|} x_1 y_1 (x) x_2 y_2`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::Serialize;

use crate::linalg::{laurent_rank, LaurentRank};
use crate::qlaurent::{multifact, qfact, LaurentPoly, RationalFunction};
use crate::quiver::{sequences, DimVector, FlagType, QuiverData};
use crate::{Error, Result};

type Word = Vec<usize>;

fn q_pow(e: i64) -> RationalFunction {
    RationalFunction::from_laurent(LaurentPoly::q_pow(e))
}

fn add_coeff<K: Ord>(map: &mut BTreeMap<K, RationalFunction>, k: K, c: RationalFunction) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(k);
    use std::collections::btree_map::Entry;
    match entry {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// A homogeneous element of the free algebra on the `theta_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordVector {
    pub weight: DimVector,
    coeffs: BTreeMap<Word, RationalFunction>,
}

impl WordVector {
    pub fn zero(weight: DimVector) -> Self {
        Self { weight, coeffs: BTreeMap::new() }
    }

    /// The empty word, i.e. `1`.
    pub fn unit(n: usize) -> Self {
        Self::word(vec![], n)
    }

    pub fn word(w: Word, n: usize) -> Self {
        let mut weight = DimVector::zero(n);
        for &i in &w {
            weight.0[i] += 1;
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w, RationalFunction::one());
        Self { weight, coeffs }
    }

    pub fn theta(i: usize, n: usize) -> Self {
        Self::word(vec![i], n)
    }

    /// `theta_i^(a) = theta_i^a / [a]!`.
    pub fn theta_divided(i: usize, a: u32, n: usize) -> Self {
        Self::word(vec![i; a as usize], n).scale(&RationalFunction::from_laurent(qfact(a)).recip())
    }

    /// `theta_y = prod_l theta_{i_l}^(a_l)`.
    pub fn theta_monomial(y: &FlagType, n: usize) -> Self {
        Self::word(y.expansion(), n).scale(&RationalFunction::from_laurent(multifact(&y.sizes())).recip())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: &[usize]) -> RationalFunction {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RationalFunction)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero(self.weight.clone());
        for (w, x) in &self.coeffs {
            add_coeff(&mut out.coeffs, w.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch(format!("{} vs {}", self.weight, other.weight)));
        }
        let mut out = self.clone();
        for (w, x) in &other.coeffs {
            add_coeff(&mut out.coeffs, w.clone(), x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&RationalFunction::from_laurent(LaurentPoly::constant(-1))))
    }

    /// The concatenation product.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.weight.add(&other.weight));
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                let mut w = u.clone();
                w.extend_from_slice(v);
                add_coeff(&mut out.coeffs, w, a.clone() * b.clone());
            }
        }
        out
    }
}

/// An element of `f (x) f`, a sum over pairs of words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorWordVector {
    coeffs: BTreeMap<(Word, Word), RationalFunction>,
}

impl TensorWordVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(a: &WordVector, b: &WordVector) -> Self {
        let mut out = Self::zero();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                add_coeff(&mut out.coeffs, (u.clone(), v.clone()), x.clone() * y.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, u: &[usize], v: &[usize]) -> RationalFunction {
        self.coeffs.get(&(u.to_vec(), v.to_vec())).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &RationalFunction)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: RationalFunction) {
        add_coeff(&mut self.coeffs, (u, v), c);
    }

    pub fn add_assign(&mut self, other: &Self) {
        for ((u, v), c) in &other.coeffs {
            add_coeff(&mut self.coeffs, (u.clone(), v.clone()), c.clone());
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.coeffs {
            add_coeff(&mut out.coeffs, k.clone(), x.clone() * c.clone());
        }
        out
    }
}

/// An element of `f (x) f (x) f`.
pub type TripleWordVector = BTreeMap<(Word, Word, Word), RationalFunction>;

/// Serre check outcome for one ordered pair of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerrePair {
    pub i: String,
    pub j: String,
    pub weight: Vec<u32>,
    pub in_radical: bool,
}

/// `f` for a fixed quiver, with the pairing cache.
pub struct Qf {
    quiver: QuiverData,
    pairing: Mutex<HashMap<(Word, Word), LaurentPoly>>,
}

impl Qf {
    pub fn new(quiver: &QuiverData) -> Self {
        Self { quiver: quiver.clone(), pairing: Mutex::new(HashMap::new()) }
    }

    pub fn quiver(&self) -> &QuiverData {
        &self.quiver
    }

    fn n(&self) -> usize {
        self.quiver.num_vertices()
    }

    fn word_weight(&self, w: &[usize]) -> DimVector {
        let mut d = DimVector::zero(self.n());
        for &i in w {
            d.0[i] += 1;
        }
        d
    }

    /// `r` on words: deshuffles, with the right factor's letters passing left ones.
    pub fn coproduct(&self, u: &WordVector) -> TensorWordVector {
        let mut out = TensorWordVector::zero();
        for (w, c) in u.terms() {
            let m = w.len();
            for mask in 0u32..(1 << m) {
                // bit set: letter goes to the left factor
                let mut left = Vec::new();
                let mut right = Vec::new();
                let mut e = 0i64;
                for a in 0..m {
                    if mask >> a & 1 == 1 {
                        left.push(w[a]);
                    } else {
                        right.push(w[a]);
                        for b in a + 1..m {
                            if mask >> b & 1 == 1 {
                                e -= self.quiver.symform(w[a], w[b]);
                            }
                        }
                    }
                }
                out.add_term(left, right, c.clone() * q_pow(e));
            }
        }
        out
    }

    /// Product in the twisted tensor algebra.
    pub fn tensor_product(&self, a: &TensorWordVector, b: &TensorWordVector) -> TensorWordVector {
        let mut out = TensorWordVector::zero();
        for ((x1, x2), c) in a.terms() {
            let w2 = self.word_weight(x2);
            for ((y1, y2), d) in b.terms() {
                let e = -self.quiver.symform_dv(&w2, &self.word_weight(y1));
                let mut l = x1.clone();
                l.extend_from_slice(y1);
                let mut r = x2.clone();
                r.extend_from_slice(y2);
                out.add_term(l, r, c.clone() * d.clone() * q_pow(e));
            }
        }
        out
    }

    /// `(r (x) id) r`.
    pub fn coproduct_left(&self, t: &TensorWordVector) -> TripleWordVector {
        let mut out = TripleWordVector::new();
        for ((x, y), c) in t.terms() {
            for ((a, b), d) in self.coproduct(&WordVector::word(x.clone(), self.n())).terms() {
                add_coeff(&mut out, (a.clone(), b.clone(), y.clone()), c.clone() * d.clone());
            }
        }
        out
    }

    /// `(id (x) r) r`.
    pub fn coproduct_right(&self, t: &TensorWordVector) -> TripleWordVector {
        let mut out = TripleWordVector::new();
        for ((x, y), c) in t.terms() {
            for ((a, b), d) in self.coproduct(&WordVector::word(y.clone(), self.n())).terms() {
                add_coeff(&mut out, (x.clone(), a.clone(), b.clone()), c.clone() * d.clone());
            }
        }
        out
    }

    /// `(1 - q^2)^{|w|} (w, u)` for words `w`, `u`.
    pub fn pairing_numerator(&self, w: &[usize], u: &[usize]) -> LaurentPoly {
        if w.len() != u.len() {
            return LaurentPoly::zero();
        }
        if w.is_empty() {
            return LaurentPoly::one();
        }
        let key = (w.to_vec(), u.to_vec());
        if let Some(v) = self.pairing.lock().unwrap().get(&key) {
            return v.clone();
        }
        // (w, u' j) = sum over positions p of j in w: twist * (w minus p, u') (j, j)
        let (j, rest) = (u[u.len() - 1], &u[..u.len() - 1]);
        let mut acc = LaurentPoly::zero();
        for p in 0..w.len() {
            if w[p] != j {
                continue;
            }
            let e: i64 = -(p + 1..w.len()).map(|b| self.quiver.symform(w[p], w[b])).sum::<i64>();
            let mut shorter = w.to_vec();
            shorter.remove(p);
            acc = &acc + &self.pairing_numerator(&shorter, rest).shift(e);
        }
        self.pairing.lock().unwrap().insert(key, acc.clone());
        acc
    }

    /// The form on `f`.
    pub fn form(&self, u: &WordVector, v: &WordVector) -> RationalFunction {
        if u.weight != v.weight {
            return RationalFunction::zero();
        }
        let mut acc = RationalFunction::zero();
        for (w, a) in u.terms() {
            for (x, b) in v.terms() {
                let g = self.pairing_numerator(w, x);
                if !g.is_zero() {
                    acc = acc + a.clone() * b.clone() * RationalFunction::from_laurent(g);
                }
            }
        }
        let norm = LaurentPoly::from_terms([(0, 1), (2, -1)]).pow(u.weight.total());
        acc * RationalFunction::from_laurent(norm).recip()
    }

    /// Words of weight `nu` and the matrix of `(1 - q^2)^{|nu|} (w, u)`.
    pub fn gram(&self, nu: &DimVector) -> (Vec<Word>, Vec<Vec<LaurentPoly>>) {
        let words = sequences(nu);
        let g = words
            .iter()
            .map(|w| words.iter().map(|u| self.pairing_numerator(w, u)).collect())
            .collect();
        (words, g)
    }

    /// `dim f_nu`, the rank of the Gram matrix over `Q(q)`, with its certificate.
    pub fn dim_f(&self, nu: &DimVector) -> LaurentRank {
        laurent_rank(&self.gram(nu).1)
    }

    /// Rank over `Q(q)` of the span of `elems` in `f`, from their Gram matrix.
    pub fn rank_in_f(&self, elems: &[WordVector]) -> LaurentRank {
        let cleared: Vec<Vec<(&Word, LaurentPoly)>> = elems.iter().map(clear_denominators).collect();
        let gram: Vec<Vec<LaurentPoly>> = cleared
            .iter()
            .map(|a| {
                cleared
                    .iter()
                    .map(|b| {
                        let mut acc = LaurentPoly::zero();
                        for (w, ca) in a {
                            for (u, cb) in b {
                                let g = self.pairing_numerator(w, u);
                                if !g.is_zero() {
                                    acc += &(&(ca * cb) * &g);
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        laurent_rank(&gram)
    }

    /// Whether `u` lies in the radical of the form.
    pub fn is_zero_in_f(&self, u: &WordVector) -> bool {
        sequences(&u.weight).iter().all(|w| {
            let mut acc = RationalFunction::zero();
            for (x, c) in u.terms() {
                let g = self.pairing_numerator(w, x);
                if !g.is_zero() {
                    acc = acc + c.clone() * RationalFunction::from_laurent(g);
                }
            }
            acc.is_zero()
        })
    }

    /// Whether `t` vanishes in `f (x) f`, by pairing against all pairs of words.
    pub fn is_zero_in_f2(&self, t: &TensorWordVector) -> bool {
        let mut weights: BTreeMap<(DimVector, DimVector), Vec<(&Word, &Word, &RationalFunction)>> = BTreeMap::new();
        for ((a, b), c) in t.terms() {
            weights
                .entry((self.word_weight(a), self.word_weight(b)))
                .or_default()
                .push((a, b, c));
        }
        weights.iter().all(|((n1, n2), entries)| {
            let (s1, s2) = (sequences(n1), sequences(n2));
            s1.iter().all(|w1| {
                s2.iter().all(|w2| {
                    let mut acc = RationalFunction::zero();
                    for (a, b, c) in entries {
                        let g = &self.pairing_numerator(w1, a) * &self.pairing_numerator(w2, b);
                        if !g.is_zero() {
                            acc = acc + (*c).clone() * RationalFunction::from_laurent(g);
                        }
                    }
                    acc.is_zero()
                })
            })
        })
    }

    /// `sum_{a+b = 1 - i.j} (-1)^a theta_i^(a) theta_j theta_i^(b)`.
    pub fn serre_element(&self, i: usize, j: usize) -> Result<WordVector> {
        if i == j || i >= self.n() || j >= self.n() {
            return Err(Error::UnknownVertex(format!("Serre element needs distinct vertices, got {i}, {j}")));
        }
        let top = (1 - self.quiver.symform(i, j)) as u32;
        let n = self.n();
        let mut out: Option<WordVector> = None;
        for a in 0..=top {
            let term = WordVector::theta_divided(i, a, n)
                .product(&WordVector::theta(j, n))
                .product(&WordVector::theta_divided(i, top - a, n));
            let term = if a % 2 == 1 {
                term.scale(&RationalFunction::from_laurent(LaurentPoly::constant(-1)))
            } else {
                term
            };
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term)?,
            });
        }
        Ok(out.expect("at least one term"))
    }

    /// Checks that every Serre element lies in the radical.
    pub fn serre_check(&self) -> Result<Vec<SerrePair>> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if i == j {
                    continue;
                }
                let s = self.serre_element(i, j)?;
                out.push(SerrePair {
                    i: self.quiver.label(i).to_string(),
                    j: self.quiver.label(j).to_string(),
                    weight: s.weight.0.clone(),
                    in_radical: self.is_zero_in_f(&s),
                });
            }
        }
        Ok(out)
    }

    /// `θ[i]^{(a)}...` for a flag type; exponents 1 are omitted.
    pub fn monomial_string(&self, y: &FlagType) -> String {
        y.steps
            .iter()
            .map(|&(i, a)| {
                if a == 1 {
                    format!("θ[{}]", self.quiver.label(i))
                } else {
                    format!("θ[{}]^{{({a})}}", self.quiver.label(i))
                }
            })
            .collect()
    }

    /// Parses [`Self::monomial_string`] output.
    pub fn parse_monomial(&self, s: &str) -> Result<FlagType> {
        let mut steps = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix("θ[")
                .ok_or_else(|| Error::Parse(format!("expected `θ[` in `{rest}`")))?;
            let close = body.find(']').ok_or_else(|| Error::Parse("unclosed `[`".into()))?;
            let i = self.quiver.index(&body[..close])?;
            rest = &body[close + 1..];
            let mut a = 1;
            if let Some(exp) = rest.strip_prefix("^{(") {
                let end = exp.find(")}").ok_or_else(|| Error::Parse("unclosed exponent".into()))?;
                a = exp[..end].parse().map_err(|_| Error::Parse(format!("bad exponent `{}`", &exp[..end])))?;
                rest = &exp[end + 2..];
            }
            steps.push((i, a));
        }
        Ok(FlagType { steps })
    }
}

/// An integer as a coefficient.
/// The coefficients of `u` times the product of their distinct denominators.
fn clear_denominators(u: &WordVector) -> Vec<(&Word, LaurentPoly)> {
    let mut dens: Vec<&LaurentPoly> = Vec::new();
    for (_, c) in u.terms() {
        if !dens.contains(&c.denominator()) {
            dens.push(c.denominator());
        }
    }
    let total = dens.iter().fold(LaurentPoly::one(), |acc, d| &acc * d);
    u.terms()
        .map(|(w, c)| {
            let k = total.exact_div(c.denominator()).expect("denominator divides the product");
            (w, c.numerator() * &k)
        })
        .collect()
}

pub fn int_coeff(c: i64) -> RationalFunction {
    RationalFunction::from_laurent(LaurentPoly::constant(BigInt::from(c)))
}
