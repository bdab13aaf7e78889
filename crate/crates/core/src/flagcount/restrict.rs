//! Restriction of Lusztig sheaves: `U(y)`, `M_{V1,V2}` and the bundle ranks `m_{y1,y2}`.
//!
//! `V_2 ⊂ V` is a fixed graded subspace of dimension `nu2` and `V_1 = V / V_2`.
//! For a flag `V^r` the sub-flag `V^r cap V_2` has type `y2` and the quotient
//! flag has type `y1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{count_flagvar, dim_flagvar, dim_ftilde};
use crate::ffield::{subspaces, GaloisField};
use crate::linalg::{nullspace, rank, rref, Field};
use crate::qf::{Qf, TensorWordVector, WordVector};
use crate::qlaurent::{LaurentPoly, RationalFunction};
use crate::quiver::{DimVector, FlagType, QuiverData};
use crate::{Error, Result};

/// Sample fields used to extract `m_{y1,y2}`.
pub const RESTRICTION_PRIMES: [u32; 3] = [2, 3, 4];

/// Every splitting `a = a' + a''` of the step sizes of `y`, with `a'` listed first.
pub fn u_set(y: &FlagType) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for &(_, a) in &y.steps {
        out = out
            .into_iter()
            .flat_map(|(p, s)| {
                (0..=a).map(move |k| {
                    let mut p = p.clone();
                    let mut s = s.clone();
                    p.push(k);
                    s.push(a - k);
                    (p, s)
                })
            })
            .collect();
    }
    out
}

/// The flag type with step sizes `sizes` at the vertices of `y`, zero steps dropped.
pub fn with_sizes(y: &FlagType, sizes: &[u32]) -> FlagType {
    FlagType {
        steps: y.steps.iter().zip(sizes).filter(|(_, &a)| a > 0).map(|(&(i, _), &a)| (i, a)).collect(),
    }
}

/// `M_{V1,V2} = sum_h dim (V1)_{h'} dim (V2)_{h''} - sum_i dim (V1)_i dim (V2)_i`.
pub fn big_m(q: &QuiverData, nu1: &DimVector, nu2: &DimVector) -> i64 {
    let arrows: i64 = q.arrows().iter().map(|&(s, t)| nu1.0[s] as i64 * nu2.0[t] as i64).sum();
    let diag: i64 = nu1.0.iter().zip(&nu2.0).map(|(&a, &b)| a as i64 * b as i64).sum();
    arrows - diag
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionPair {
    pub y1: FlagType,
    pub y2: FlagType,
    pub a1: Vec<u32>,
    pub a2: Vec<u32>,
    pub m: i64,
    /// `(q, #F~(y1,y2)(F_q))`.
    #[serde(with = "crate::bigstr::samples")]
    pub counts: Vec<(u32, BigInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionDatum {
    pub nu1: DimVector,
    pub nu2: DimVector,
    pub y: FlagType,
    pub pairs: Vec<RestrictionPair>,
    pub big_m: i64,
}

/// One term `q^shift [^delta L_{y1}] ⊗ [^delta L_{y2}]` of the class of `Res(^delta L_y)`.
///
/// Under `lambda_A ⊗ lambda_A` it maps to `q^shift theta_{y2} ⊗ theta_{y1}`: the sub-flag
/// type lands in the left factor of `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResTerm {
    pub y1: FlagType,
    pub y2: FlagType,
    pub shift: i64,
}

/// Graded subspaces: one row basis per vertex.
type Graded = Vec<Vec<Vec<u16>>>;

/// Sum over flags of type `y` of `q^{dim of x preserving the flag and V_2}`, grouped by the
/// sizes `a''` of the sub-flag `V^r cap V_2`.
fn bundle_counts(q: &QuiverData, y: &FlagType, nu2: &DimVector, f: &GaloisField) -> BTreeMap<Vec<u32>, BigInt> {
    let n = q.num_vertices();
    let nu = y.weight(n);
    let dims: Vec<usize> = nu.0.iter().map(|&d| d as usize).collect();
    // V_2 spanned by the last nu2_i coordinates at each vertex
    let v2: Graded = (0..n)
        .map(|i| {
            (dims[i] - nu2.0[i] as usize..dims[i])
                .map(|c| (0..dims[i]).map(|j| u16::from(j == c)).collect())
                .collect()
        })
        .collect();
    let mut out = BTreeMap::new();
    let mut flag: Vec<Graded> = vec![vec![Vec::new(); n]];
    walk_flags(q, y, f, &dims, &v2, 0, &mut flag, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn walk_flags(
    q: &QuiverData,
    y: &FlagType,
    f: &GaloisField,
    dims: &[usize],
    v2: &Graded,
    r: usize,
    flag: &mut Vec<Graded>,
    out: &mut BTreeMap<Vec<u32>, BigInt>,
) {
    if r == y.steps.len() {
        let sizes: Vec<u32> = (1..flag.len())
            .map(|s| {
                let (i, _) = y.steps[s - 1];
                (meet_dim(f, &flag[s][i], &v2[i]) - meet_dim(f, &flag[s - 1][i], &v2[i])) as u32
            })
            .collect();
        let e = x_space_dim(q, f, dims, flag, v2);
        *out.entry(sizes).or_insert_with(BigInt::zero) += num_traits::pow(BigInt::from(f.order()), e);
        return;
    }
    let (i, a) = y.steps[r];
    let cur = flag[r][i].clone();
    let complement = complement_basis(f, &cur, dims[i]);
    for s in subspaces(f, &complement, a as usize) {
        let mut next = flag[r].clone();
        next[i].extend(s);
        flag.push(next);
        walk_flags(q, y, f, dims, v2, r + 1, flag, out);
        flag.pop();
    }
}

/// Standard basis vectors at the non-pivot columns of `basis`.
fn complement_basis(f: &GaloisField, basis: &[Vec<u16>], dim: usize) -> Vec<Vec<u16>> {
    let mut m = basis.to_vec();
    let piv = rref(f, &mut m);
    (0..dim)
        .filter(|c| !piv.contains(c))
        .map(|c| (0..dim).map(|j| u16::from(j == c)).collect())
        .collect()
}

fn meet_dim(f: &GaloisField, a: &[Vec<u16>], b: &[Vec<u16>]) -> usize {
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    let sum = if both.is_empty() { 0 } else { rank(f, &both) };
    a.len() + b.len() - sum
}

/// `dim {x in E_V : x(V^r) ⊂ V^r for all r, x(V_2) ⊂ V_2}`.
fn x_space_dim(q: &QuiverData, f: &GaloisField, dims: &[usize], flag: &[Graded], v2: &Graded) -> usize {
    let mut total = 0;
    for &(s, t) in q.arrows() {
        let (cols, rows) = (dims[s], dims[t]);
        let mut eqs: Vec<Vec<u16>> = Vec::new();
        let pairs = flag.iter().map(|g| (&g[s], &g[t])).chain(std::iter::once((&v2[s], &v2[t])));
        for (src, tgt) in pairs {
            let ann = nullspace(f, tgt, rows);
            for vec in src {
                for alpha in &ann {
                    // alpha^T X vec = sum_{p,c} alpha_p X_{pc} vec_c
                    let mut eq = vec![0u16; rows * cols];
                    for p in 0..rows {
                        for c in 0..cols {
                            eq[p * cols + c] = f.mul(&alpha[p], &vec[c]);
                        }
                    }
                    eqs.push(eq);
                }
            }
        }
        let r = if eqs.is_empty() { 0 } else { rank(f, &eqs) };
        total += rows * cols - r;
    }
    total
}

fn exact_log(ratio: &BigInt, q: u32) -> Option<i64> {
    let q = BigInt::from(q);
    let mut r = ratio.clone();
    let mut e = 0;
    while r > BigInt::one() {
        let (d, rem) = r.div_rem(&q);
        if !rem.is_zero() {
            return None;
        }
        r = d;
        e += 1;
    }
    r.is_one().then_some(e)
}

/// `U(y)` restricted to weight `nu1 ⊗ nu2`, with `m_{y1,y2}` read off from
/// `#F~(y1,y2) = q^m #F~_{y1} #F~_{y2}` at each sample field.
pub fn restriction_constants(q: &QuiverData, nu1: &DimVector, nu2: &DimVector, y: &FlagType) -> Result<RestrictionDatum> {
    let n = q.num_vertices();
    if nu1.add(nu2) != y.weight(n) {
        return Err(Error::WeightMismatch(format!("{nu1} + {nu2} is not the weight of the flag")));
    }
    let mut tables = Vec::new();
    for &pq in &RESTRICTION_PRIMES {
        let f = GaloisField::new(pq)?;
        tables.push((pq, bundle_counts(q, y, nu2, &f)));
    }
    let mut pairs = Vec::new();
    for (a1, a2) in u_set(y) {
        let y1 = with_sizes(y, &a1);
        let y2 = with_sizes(y, &a2);
        if y1.weight(n) != *nu1 {
            continue;
        }
        let mut m = None;
        let mut counts = Vec::new();
        for (pq, table) in &tables {
            let c = table.get(&a2).cloned().unwrap_or_else(BigInt::zero);
            let base = ftilde_count(q, &y1, *pq) * ftilde_count(q, &y2, *pq);
            let (quot, rem) = c.div_rem(&base);
            let e = if rem.is_zero() { exact_log(&quot, *pq) } else { None };
            let Some(e) = e else {
                return Err(Error::Defect(format!(
                    "#F~({y1:?},{y2:?})(F_{pq}) = {c} is not a power of q times {base}"
                )));
            };
            if m.is_some_and(|m0| m0 != e) {
                return Err(Error::Defect(format!("bundle rank for ({y1:?},{y2:?}) depends on q")));
            }
            m = Some(e);
            counts.push((*pq, c));
        }
        pairs.push(RestrictionPair {
            y1,
            y2,
            a1,
            a2,
            m: m.unwrap_or(0),
            counts,
        });
    }
    Ok(RestrictionDatum {
        nu1: nu1.clone(),
        nu2: nu2.clone(),
        y: y.clone(),
        pairs,
        big_m: big_m(q, nu1, nu2),
    })
}

/// `#F~_y(F_q) = #F_y(F_q) q^{dim F~_y - dim F_y}`.
fn ftilde_count(q: &QuiverData, y: &FlagType, pq: u32) -> BigInt {
    let n = q.num_vertices();
    let fib = dim_ftilde(q, y) - dim_flagvar(y, n);
    count_flagvar(y, n, pq as u64) * num_traits::pow(BigInt::from(pq), fib as usize)
}

/// The class of `Res_{V1,V2}(^delta L_y)` where `^delta L_y = L_y[dim F~_y]`:
/// `sum q^{dim F~_y - dim F~_{y1} - dim F~_{y2} - 2m + M} [^delta L_{y1}] ⊗ [^delta L_{y2}]`.
pub fn res_class(q: &QuiverData, nu1: &DimVector, nu2: &DimVector, y: &FlagType) -> Result<Vec<ResTerm>> {
    let datum = restriction_constants(q, nu1, nu2, y)?;
    let d = dim_ftilde(q, y);
    Ok(datum
        .pairs
        .iter()
        .map(|p| ResTerm {
            y1: p.y1.clone(),
            y2: p.y2.clone(),
            shift: d - dim_ftilde(q, &p.y1) - dim_ftilde(q, &p.y2) - 2 * p.m + datum.big_m,
        })
        .collect())
}

/// Outcome of comparing `res_class` with `r(theta_y)` in one weight component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResCheck {
    pub y: FlagType,
    pub nu1: DimVector,
    pub nu2: DimVector,
    pub terms: Vec<ResTerm>,
    pub matches: bool,
}

/// Compares `lambda_A ⊗ lambda_A` of `res_class(y)` with `r(theta_y)` for every split of the weight.
pub fn res_check(qf: &Qf, y: &FlagType) -> Result<Vec<ResCheck>> {
    let q = qf.quiver();
    let n = q.num_vertices();
    let nu = y.weight(n);
    let r = qf.coproduct(&WordVector::theta_monomial(y, n));
    let mut out = Vec::new();
    for nu1 in splits(&nu) {
        let nu2 = nu.checked_sub(&nu1).expect("split");
        let terms = res_class(q, &nu1, &nu2, y)?;
        let mut diff = TensorWordVector::zero();
        for t in &terms {
            let c = RationalFunction::from_laurent(LaurentPoly::q_pow(t.shift));
            let pure = TensorWordVector::pure(&WordVector::theta_monomial(&t.y2, n), &WordVector::theta_monomial(&t.y1, n));
            diff.add_assign(&pure.scale(&c));
        }
        for ((u, v), c) in r.terms() {
            if FlagType::from_seq(u).weight(n) == nu2 {
                diff.add_term(u.clone(), v.clone(), -c.clone());
            }
        }
        out.push(ResCheck {
            y: y.clone(),
            matches: qf.is_zero_in_f2(&diff),
            nu1,
            nu2,
            terms,
        });
    }
    Ok(out)
}

/// All `nu1 <= nu`, including `0` and `nu`.
fn splits(nu: &DimVector) -> Vec<DimVector> {
    let mut out = vec![DimVector(Vec::new())];
    for &d in &nu.0 {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=d).map(move |k| {
                    let mut v = v.clone();
                    v.0.push(k);
                    v
                })
            })
            .collect();
    }
    out
}
