//! The KLR algebra `R_nu` over `Z`.
//!
//! Elements are stored in the basis `x^a tau_w 1_i`, where `w` is written with its
//! lexicographically smallest reduced word. Products are straightened by pushing
//! polynomials to the left and rewriting words with commutation and braid moves,
//! collecting the correction terms. The polynomial representation on `Pol_nu` is
//! implemented independently and serves as the second oracle in [`check_relations`].
//!
//! Indices are 0-based throughout the Rust API: `x(i, k)` is `x_i(k + 1)` and
//! `tau(i, l)` is `tau_i(l + 1)`. The text format uses 1-based letters.

mod checks;
pub mod perm;
mod poly;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use checks::{
    check_relations, divided_idempotent, projective_class, projective_grdim_check, FamilyResult, GradedDimCheck, ProjectiveClass,
    RelationFamily, RelationReport,
};
pub use poly::MPoly;

use crate::qlaurent::LaurentPoly;
use crate::quiver::{sequences, DimVector, FlagType, QuiverData};
use crate::{Error, Result};
use perm::{apply_move, canonical_word, plan, word_target, Move, Plan};

/// A basis element `x^exps tau_word 1_idem`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub idem: Vec<usize>,
    pub word: Vec<u8>,
    pub exps: Vec<u16>,
}

impl Term {
    pub fn target(&self) -> Vec<usize> {
        word_target(&self.word, &self.idem)
    }
}

/// An element of `R_nu` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KlrElement {
    terms: BTreeMap<Term, BigInt>,
}

impl KlrElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(t: Term, c: impl Into<BigInt>) -> Self {
        let mut e = Self::zero();
        e.add_term(t, c.into());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &Term) -> BigInt {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, t: Term, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (t, x) in &self.terms {
            out.add_term(t.clone(), x * c);
        }
        out
    }
}

impl Add for &KlrElement {
    type Output = KlrElement;
    fn add(self, rhs: &KlrElement) -> KlrElement {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &KlrElement {
    type Output = KlrElement;
    fn sub(self, rhs: &KlrElement) -> KlrElement {
        let mut out = self.clone();
        out.add_assign(&-rhs);
        out
    }
}

impl Neg for &KlrElement {
    type Output = KlrElement;
    fn neg(self) -> KlrElement {
        self.scale(&BigInt::from(-1))
    }
}

/// An element of `Pol_nu = (+)_i Z[x_i(1), ..., x_i(m)]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolElement {
    comps: BTreeMap<Vec<usize>, MPoly>,
}

impl PolElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(i: Vec<usize>, f: MPoly) -> Self {
        let mut p = Self::zero();
        p.add_at(i, &f);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn component(&self, i: &[usize]) -> MPoly {
        self.comps.get(i).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &MPoly)> {
        self.comps.iter()
    }

    pub fn add_at(&mut self, i: Vec<usize>, f: &MPoly) {
        if f.is_zero() {
            return;
        }
        let entry = self.comps.entry(i.clone()).or_default();
        *entry = &*entry + f;
        if entry.is_zero() {
            self.comps.remove(&i);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (i, f) in &other.comps {
            self.add_at(i.clone(), f);
        }
    }
}

/// A generator of `R_nu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Idem(Vec<usize>),
    X(Vec<usize>, usize),
    Tau(Vec<usize>, usize),
}

/// `R_nu` for a fixed quiver and weight, with a cache of straightened words.
pub struct KlrAlgebra {
    quiver: QuiverData,
    nu: DimVector,
    m: usize,
    seqs: Vec<Vec<usize>>,
    words: Mutex<HashMap<(Vec<usize>, Vec<u8>), KlrElement>>,
}

impl std::fmt::Debug for KlrAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KlrAlgebra({}, {})", self.quiver.type_name(), self.nu)
    }
}

impl KlrAlgebra {
    pub fn new(quiver: &QuiverData, nu: &DimVector) -> Result<Self> {
        if nu.0.len() != quiver.num_vertices() {
            return Err(Error::WeightMismatch(format!(
                "weight {nu} has {} entries for {} vertices",
                nu.0.len(),
                quiver.num_vertices()
            )));
        }
        Ok(Self {
            quiver: quiver.clone(),
            nu: nu.clone(),
            m: nu.total() as usize,
            seqs: sequences(nu),
            words: Mutex::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &QuiverData {
        &self.quiver
    }

    pub fn nu(&self) -> &DimVector {
        &self.nu
    }

    /// `m = |nu|`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// The sequences `I^nu`.
    pub fn sequences(&self) -> &[Vec<usize>] {
        &self.seqs
    }

    fn check_seq(&self, i: &[usize]) -> Result<()> {
        if self.seqs.binary_search_by(|s| s.as_slice().cmp(i)).is_ok() {
            Ok(())
        } else {
            Err(Error::WeightMismatch(format!("sequence {i:?} is not in I^{}", self.nu)))
        }
    }

    pub fn generator(&self, g: &Generator) -> Result<KlrElement> {
        match g {
            Generator::Idem(i) => self.idem(i),
            Generator::X(i, k) => self.x(i, *k),
            Generator::Tau(i, l) => self.tau(i, *l),
        }
    }

    pub fn idem(&self, i: &[usize]) -> Result<KlrElement> {
        self.check_seq(i)?;
        Ok(self.basis(i, &[], vec![0; self.m]))
    }

    pub fn x(&self, i: &[usize], k: usize) -> Result<KlrElement> {
        self.check_seq(i)?;
        if k >= self.m {
            return Err(Error::Parse(format!("x index {k} out of range")));
        }
        let mut e = vec![0; self.m];
        e[k] = 1;
        Ok(self.basis(i, &[], e))
    }

    pub fn tau(&self, i: &[usize], l: usize) -> Result<KlrElement> {
        self.check_seq(i)?;
        if l + 1 >= self.m {
            return Err(Error::Parse(format!("tau index {l} out of range")));
        }
        Ok(self.basis(i, &[l as u8], vec![0; self.m]))
    }

    fn basis(&self, i: &[usize], word: &[u8], exps: Vec<u16>) -> KlrElement {
        KlrElement::from_term(Term { idem: i.to_vec(), word: word.to_vec(), exps }, 1)
    }

    /// `sum_i 1_i`.
    pub fn identity(&self) -> KlrElement {
        let mut out = KlrElement::zero();
        for i in &self.seqs {
            out.add_term(Term { idem: i.clone(), word: vec![], exps: vec![0; self.m] }, BigInt::one());
        }
        out
    }

    /// `f 1_i` for a polynomial `f`.
    pub fn poly_idem(&self, i: &[usize], f: &MPoly) -> KlrElement {
        let mut out = KlrElement::zero();
        for (e, c) in f.terms() {
            out.add_term(Term { idem: i.to_vec(), word: vec![], exps: e.clone() }, c.clone());
        }
        out
    }

    /// `Q_{k,l}(x_u, x_v)`.
    pub fn q_poly(&self, k: &[usize], l: usize, u: usize, v: usize) -> MPoly {
        let (a, b) = (k[l], k[l + 1]);
        if a == b {
            return MPoly::zero();
        }
        let p = MPoly::linear_power(self.m, u, v, (-self.quiver.symform(a, b)) as u32);
        if self.quiver.h(a, b) % 2 == 1 {
            -&p
        } else {
            p
        }
    }

    /// `deg tau_k(l) = -k_l . k_{l+1}`.
    pub fn tau_degree(&self, k: &[usize], l: usize) -> i64 {
        -self.quiver.symform(k[l], k[l + 1])
    }

    pub fn term_degree(&self, t: &Term) -> i64 {
        let mut deg = 2 * t.exps.iter().map(|&x| x as i64).sum::<i64>();
        let mut seq = t.idem.clone();
        for &l in t.word.iter().rev() {
            deg += self.tau_degree(&seq, l as usize);
            seq.swap(l as usize, l as usize + 1);
        }
        deg
    }

    /// The common degree of all terms, if the element is homogeneous and nonzero.
    pub fn degree(&self, u: &KlrElement) -> Option<i64> {
        let mut degs = u.terms().map(|(t, _)| self.term_degree(t));
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Rewrites `tau_word g 1_source` as `sum g' tau_{word'} 1_source` with `word'` a subword.
    fn push_left(&self, g: &MPoly, word: &[u8], source: &[usize]) -> BTreeMap<Vec<u8>, MPoly> {
        // (poly, kept letters right to left, current sequence)
        let mut items: BTreeMap<Vec<u8>, (MPoly, Vec<usize>)> = BTreeMap::new();
        items.insert(Vec::new(), (g.clone(), source.to_vec()));
        for &l in word.iter().rev() {
            let lu = l as usize;
            let mut next: BTreeMap<Vec<u8>, (MPoly, Vec<usize>)> = BTreeMap::new();
            let mut put = |kept: Vec<u8>, f: MPoly, seq: Vec<usize>| {
                if f.is_zero() {
                    return;
                }
                let slot = next.entry(kept).or_insert_with(|| (MPoly::zero(), seq));
                slot.0 = &slot.0 + &f;
            };
            for (kept, (h, seq)) in items {
                let sh = h.swap_vars(lu, lu + 1);
                let mut k2 = kept.clone();
                k2.push(l);
                if seq[lu] == seq[lu + 1] {
                    // tau g = (s g) tau - d g
                    put(kept, -&h.divided_difference(lu, lu + 1), seq.clone());
                    put(k2, sh, seq);
                } else {
                    let mut s2 = seq;
                    s2.swap(lu, lu + 1);
                    put(k2, sh, s2);
                }
            }
            items = next.into_iter().filter(|(_, (f, _))| !f.is_zero()).collect();
        }
        items
            .into_iter()
            .map(|(mut kept, (f, _))| {
                kept.reverse();
                (kept, f)
            })
            .collect()
    }

    /// `f * u` for a polynomial placed on the left.
    fn poly_times(&self, f: &MPoly, u: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero();
        for (e, c) in f.terms() {
            for (t, d) in u.terms() {
                let mut t2 = t.clone();
                for (x, y) in t2.exps.iter_mut().zip(e) {
                    *x += y;
                }
                out.add_term(t2, c * d);
            }
        }
        out
    }

    /// `prefix c suffix 1_j` with `c` a polynomial sitting at sequence `k`.
    fn splice(&self, j: &[usize], prefix: &[u8], c: &MPoly, k: &[usize], suffix: &[u8], depth: usize) -> Result<KlrElement> {
        let mut out = KlrElement::zero();
        for (w, g) in self.push_left(c, prefix, k) {
            let mut word = w;
            word.extend_from_slice(suffix);
            let r = self.reduce_word(j, &word, depth + 1)?;
            out.add_assign(&self.poly_times(&g, &r));
        }
        Ok(out)
    }

    /// Normal form of `tau_word 1_j`.
    fn reduce_word(&self, j: &[usize], word: &[u8], depth: usize) -> Result<KlrElement> {
        if depth > 4 * self.m * self.m + 8 {
            return Err(Error::Defect(format!("straightening depth exceeded on word {word:?}")));
        }
        let key = (j.to_vec(), word.to_vec());
        if let Some(hit) = self.words.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let (moves, square) = match plan(word, self.m) {
            Plan::ToCanonical(mv) => (mv, None),
            Plan::ToSquare(mv, p) => (mv, Some(p)),
        };
        let mut cur = word.to_vec();
        let mut out = KlrElement::zero();
        for mv in moves {
            if let Move::Braid(p) = mv {
                let a = cur[p] as usize;
                let l = a.min(cur[p + 1] as usize);
                let k = word_target(&cur[p + 3..], j);
                if k[l] == k[l + 2] {
                    let f = self.q_poly(&k, l, l + 2, l + 1);
                    let c = f.divided_difference(l + 2, l);
                    if !c.is_zero() {
                        // tau_{l+1} tau_l tau_{l+1} - tau_l tau_{l+1} tau_l = c
                        let corr = self.splice(j, &cur[..p], &c, &k, &cur[p + 3..], depth)?;
                        if a == l + 1 {
                            out.add_assign(&corr);
                        } else {
                            out.add_assign(&-&corr);
                        }
                    }
                }
            }
            apply_move(&mut cur, mv);
        }
        match square {
            None => out.add_term(Term { idem: j.to_vec(), word: cur, exps: vec![0; self.m] }, BigInt::one()),
            Some(p) => {
                let l = cur[p] as usize;
                let k = word_target(&cur[p + 2..], j);
                let q = self.q_poly(&k, l, l, l + 1);
                if !q.is_zero() {
                    out.add_assign(&self.splice(j, &cur[..p], &q, &k, &cur[p + 2..], depth)?);
                }
            }
        }
        self.words.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// The straightened product `u v`.
    pub fn multiply(&self, u: &KlrElement, v: &KlrElement) -> Result<KlrElement> {
        let mut out = KlrElement::zero();
        for (t2, c2) in v.terms() {
            let tgt = t2.target();
            for (t1, c1) in u.terms() {
                if t1.idem != tgt {
                    continue;
                }
                let xb = MPoly::monomial(t2.exps.clone(), 1);
                for (w, g) in self.push_left(&xb, &t1.word, &t1.idem) {
                    let mut word = w;
                    word.extend_from_slice(&t2.word);
                    let r = self.reduce_word(&t2.idem, &word, 0)?;
                    let left = g.mul_monomial(&t1.exps).scale(&(c1 * c2));
                    out.add_assign(&self.poly_times(&left, &r));
                }
            }
        }
        if let (Some(du), Some(dv)) = (self.degree(u), self.degree(v)) {
            if !out.is_zero() && self.degree(&out) != Some(du + dv) {
                return Err(Error::Defect("straightened product is not homogeneous".into()));
            }
        }
        Ok(out)
    }

    /// [`Self::multiply`], panicking on a straightening defect.
    pub fn mul(&self, u: &KlrElement, v: &KlrElement) -> KlrElement {
        self.multiply(u, v).expect("straightening defect")
    }

    /// Product of a list of factors, left to right.
    pub fn product(&self, factors: &[KlrElement]) -> Result<KlrElement> {
        let mut it = factors.iter();
        let Some(first) = it.next() else {
            return Ok(self.identity());
        };
        let mut acc = first.clone();
        for f in it {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    fn apply_tau(&self, l: usize, seq: &[usize], g: &MPoly) -> (Vec<usize>, MPoly) {
        if seq[l] == seq[l + 1] {
            (seq.to_vec(), -&g.divided_difference(l, l + 1))
        } else {
            let h = self.quiver.h(seq[l], seq[l + 1]) as u32;
            let mut s2 = seq.to_vec();
            s2.swap(l, l + 1);
            (s2, &MPoly::linear_power(self.m, l, l + 1, h) * &g.swap_vars(l, l + 1))
        }
    }

    /// The action of `u` on `Pol_nu`.
    pub fn act(&self, u: &KlrElement, f: &PolElement) -> PolElement {
        let mut out = PolElement::zero();
        for (t, c) in u.terms() {
            let mut g = f.component(&t.idem);
            if g.is_zero() {
                continue;
            }
            let mut seq = t.idem.clone();
            for &l in t.word.iter().rev() {
                let (s2, g2) = self.apply_tau(l as usize, &seq, &g);
                seq = s2;
                g = g2;
                if g.is_zero() {
                    break;
                }
            }
            out.add_at(seq, &g.mul_monomial(&t.exps).scale(c));
        }
        out
    }

    /// The image of `u1 (x) u2` under `R_nu1 (x) R_nu2 -> R_nu` (`self` is `R_{nu1+nu2}`).
    pub fn induction_embed(&self, a1: &KlrAlgebra, u1: &KlrElement, a2: &KlrAlgebra, u2: &KlrElement) -> Result<KlrElement> {
        if a1.quiver.labels() != self.quiver.labels() || a2.quiver.labels() != self.quiver.labels() || a1.nu.add(&a2.nu) != self.nu {
            return Err(Error::WeightMismatch(format!("{} + {} != {}", a1.nu, a2.nu, self.nu)));
        }
        Ok(tensor(a1.m, u1, u2))
    }

    /// `1_{nu1, nu2} = sum 1_{i j}` over `i in I^nu1, j in I^nu2`.
    pub fn idempotent_1nu1nu2(&self, nu1: &DimVector) -> Result<KlrElement> {
        let nu2 = self
            .nu
            .checked_sub(nu1)
            .ok_or_else(|| Error::WeightMismatch(format!("{nu1} is not below {}", self.nu)))?;
        let mut out = KlrElement::zero();
        for i in sequences(nu1) {
            for j in sequences(&nu2) {
                let mut s = i.clone();
                s.extend(j);
                out.add_term(Term { idem: s, word: vec![], exps: vec![0; self.m] }, BigInt::one());
            }
        }
        Ok(out)
    }

    /// `sum_{w : w.i = j} q^{deg tau_w 1_i}`.
    pub fn graded_rank(&self, j: &[usize], i: &[usize]) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for w in perm::all_perms(self.m) {
            if perm::act_on_seq(&w, i) == j {
                let t = Term { idem: i.to_vec(), word: canonical_word(&w), exps: vec![0; self.m] };
                out.add_term(self.term_degree(&t), BigInt::one());
            }
        }
        out
    }

    /// The idempotent `1_y`: induction of the divided idempotents of the blocks of `y`.
    pub fn flag_idempotent(&self, y: &FlagType) -> Result<KlrElement> {
        if y.weight(self.quiver.num_vertices()) != self.nu {
            return Err(Error::WeightMismatch(format!("flag type does not have weight {}", self.nu)));
        }
        let mut acc = KlrElement::from_term(Term { idem: vec![], word: vec![], exps: vec![] }, 1);
        let mut m1 = 0;
        for &(i, a) in &y.steps {
            let e = nil_hecke_idempotent(i, a as usize);
            acc = tensor(m1, &acc, &e);
            m1 += a as usize;
        }
        Ok(acc)
    }

    /// Rank over `Q` of a family of elements, by coefficient vectors.
    pub fn span_rank(&self, elems: &[KlrElement]) -> usize {
        let mut index: HashMap<&Term, usize> = HashMap::new();
        for u in elems {
            for (t, _) in u.terms() {
                let n = index.len();
                index.entry(t).or_insert(n);
            }
        }
        if index.is_empty() {
            return 0;
        }
        let q = crate::linalg::Rationals;
        let rows: Vec<Vec<_>> = elems
            .iter()
            .map(|u| {
                let mut row = vec![num_rational::BigRational::zero(); index.len()];
                for (t, c) in u.terms() {
                    row[index[t]] = num_rational::BigRational::from_integer(c.clone());
                }
                row
            })
            .collect();
        crate::linalg::rank(&q, &rows)
    }

    /// All basis elements `x^a tau_w 1_j` of degree `d` whose source is `j`.
    pub fn basis_in_degree(&self, j: &[usize], d: i64) -> Vec<Term> {
        let mut out = Vec::new();
        for w in perm::all_perms(self.m) {
            let word = canonical_word(&w);
            let t0 = Term { idem: j.to_vec(), word, exps: vec![0; self.m] };
            let rest = d - self.term_degree(&t0);
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            let k = (rest / 2) as u16;
            for e in MPoly::monomials_up_to(self.m, k) {
                if e.iter().sum::<u16>() == k {
                    out.push(Term { exps: e, ..t0.clone() });
                }
            }
        }
        out
    }
}

/// `(-1)^{l_m} x^delta tau_{w_0} 1_{(i,...,i)}` with `delta = (m-1, ..., 0)`.
fn nil_hecke_idempotent(i: usize, m: usize) -> KlrElement {
    let w0: Vec<u8> = (0..m as u8).rev().collect();
    let exps: Vec<u16> = (0..m as u16).rev().collect();
    let lm = m * (m - 1) / 2;
    let sign = if lm % 2 == 0 { 1 } else { -1 };
    KlrElement::from_term(Term { idem: vec![i; m], word: canonical_word(&w0), exps }, sign)
}

/// Concatenation of normal forms; `u1` lives on the first `m1` strands.
fn tensor(m1: usize, u1: &KlrElement, u2: &KlrElement) -> KlrElement {
    let mut out = KlrElement::zero();
    for (t1, c1) in u1.terms() {
        for (t2, c2) in u2.terms() {
            let mut idem = t1.idem.clone();
            idem.extend_from_slice(&t2.idem);
            let mut word = t1.word.clone();
            word.extend(t2.word.iter().map(|&l| l + m1 as u8));
            let mut exps = t1.exps.clone();
            exps.extend_from_slice(&t2.exps);
            out.add_term(Term { idem, word, exps }, c1 * c2);
        }
    }
    out
}

#[cfg(test)]
mod tests;
