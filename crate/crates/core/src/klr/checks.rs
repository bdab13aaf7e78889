//! Relation checks, divided idempotents and graded ranks of projectives.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{nil_hecke_idempotent, KlrAlgebra, KlrElement, MPoly, PolElement};
use crate::qlaurent::{lvec, multifact, LaurentPoly};
use crate::quiver::{DimVector, FlagType, QuiverData};
use crate::{Error, Result};

/// The defining relation families of `R_nu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationFamily {
    IdempotentOrthogonality,
    TauIdempotents,
    XIdempotents,
    XCommute,
    Quadratic,
    FarCommute,
    Braid,
    TauX,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 8] = [
        Self::IdempotentOrthogonality,
        Self::TauIdempotents,
        Self::XIdempotents,
        Self::XCommute,
        Self::Quadratic,
        Self::FarCommute,
        Self::Braid,
        Self::TauX,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyResult {
    pub family: RelationFamily,
    pub instances: usize,
    pub action_failures: usize,
    pub straightening_failures: usize,
}

impl FamilyResult {
    pub fn passed(&self) -> bool {
        self.action_failures == 0 && self.straightening_failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub quiver: String,
    pub nu: Vec<u32>,
    pub degree_bound: u16,
    pub test_vectors: usize,
    pub families: Vec<FamilyResult>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyResult::passed)
    }

    pub fn instances(&self) -> usize {
        self.families.iter().map(|f| f.instances).sum()
    }
}

/// A relation as a signed sum of products that must vanish.
struct Instance {
    family: RelationFamily,
    products: Vec<(i64, Vec<KlrElement>)>,
}

fn instances(alg: &KlrAlgebra) -> Result<Vec<Instance>> {
    use RelationFamily::*;
    let m = alg.m();
    let mut out = Vec::new();
    let swapped = |i: &[usize], l: usize| {
        let mut s = i.to_vec();
        s.swap(l, l + 1);
        s
    };
    for i in alg.sequences() {
        for j in alg.sequences() {
            let mut products = vec![(1, vec![alg.idem(i)?, alg.idem(j)?])];
            if i == j {
                products.push((-1, vec![alg.idem(i)?]));
            }
            out.push(Instance { family: IdempotentOrthogonality, products });
        }
        for k in 0..m {
            out.push(Instance {
                family: XIdempotents,
                products: vec![(1, vec![alg.x(i, k)?]), (-1, vec![alg.idem(i)?, alg.x(i, k)?, alg.idem(i)?])],
            });
            for k2 in k + 1..m {
                out.push(Instance {
                    family: XCommute,
                    products: vec![(1, vec![alg.x(i, k)?, alg.x(i, k2)?]), (-1, vec![alg.x(i, k2)?, alg.x(i, k)?])],
                });
            }
        }
        for l in 0..m.saturating_sub(1) {
            let si = swapped(i, l);
            out.push(Instance {
                family: TauIdempotents,
                products: vec![(1, vec![alg.tau(i, l)?]), (-1, vec![alg.idem(&si)?, alg.tau(i, l)?, alg.idem(i)?])],
            });
            let q = alg.q_poly(i, l, l, l + 1);
            let mut products = vec![(1, vec![alg.tau(&si, l)?, alg.tau(i, l)?])];
            if !q.is_zero() {
                products.push((-1, vec![alg.poly_idem(i, &q)]));
            }
            out.push(Instance { family: Quadratic, products });
            for l2 in l + 2..m.saturating_sub(1) {
                out.push(Instance {
                    family: FarCommute,
                    products: vec![
                        (1, vec![alg.tau(&si, l2)?, alg.tau(i, l)?]),
                        (-1, vec![alg.tau(&swapped(i, l2), l)?, alg.tau(i, l2)?]),
                    ],
                });
            }
            if l + 2 < m {
                let a = swapped(i, l + 1);
                let b = swapped(&a, l);
                let c = swapped(i, l);
                let d = swapped(&c, l + 1);
                let mut products = vec![
                    (1, vec![alg.tau(&b, l + 1)?, alg.tau(&a, l)?, alg.tau(i, l + 1)?]),
                    (-1, vec![alg.tau(&d, l)?, alg.tau(&c, l + 1)?, alg.tau(i, l)?]),
                ];
                if i[l] == i[l + 2] {
                    let f = alg.q_poly(i, l, l + 2, l + 1);
                    let g = &f - &alg.q_poly(i, l, l, l + 1);
                    // exact division by x_{l+2} - x_l
                    let corr = f.divided_difference(l + 2, l);
                    let check = &corr * &(&MPoly::var(m, l + 2) - &MPoly::var(m, l));
                    if check != g {
                        return Err(Error::Defect("braid correction is not a polynomial".into()));
                    }
                    if !corr.is_zero() {
                        products.push((-1, vec![alg.poly_idem(i, &corr)]));
                    }
                }
                out.push(Instance { family: Braid, products });
            }
            for k in 0..m {
                let sk = if k == l { l + 1 } else if k == l + 1 { l } else { k };
                let mut products = vec![
                    (1, vec![alg.tau(i, l)?, alg.x(i, k)?]),
                    (-1, vec![alg.x(&si, sk)?, alg.tau(i, l)?]),
                ];
                if i[l] == i[l + 1] && k == l {
                    products.push((1, vec![alg.idem(i)?]));
                } else if i[l] == i[l + 1] && k == l + 1 {
                    products.push((-1, vec![alg.idem(i)?]));
                }
                out.push(Instance { family: TauX, products });
            }
        }
    }
    Ok(out)
}

fn act_product(alg: &KlrAlgebra, factors: &[KlrElement], f: &PolElement) -> PolElement {
    let mut v = f.clone();
    for u in factors.iter().rev() {
        v = alg.act(u, &v);
        if v.is_zero() {
            break;
        }
    }
    v
}

/// All monomials of degree at most `bound` in every component of `Pol_nu`.
pub(crate) fn test_vectors(alg: &KlrAlgebra, bound: u16) -> Vec<PolElement> {
    let monos = MPoly::monomials_up_to(alg.m(), bound);
    alg.sequences()
        .iter()
        .flat_map(|i| monos.iter().map(move |e| PolElement::single(i.clone(), MPoly::monomial(e.clone(), 1))))
        .collect()
}

/// Checks every instance of every defining relation with the polynomial action
/// (on all monomials up to `degree_bound`) and by straightening to zero.
pub fn check_relations(q: &QuiverData, nu: &DimVector, degree_bound: u16) -> Result<RelationReport> {
    let alg = KlrAlgebra::new(q, nu)?;
    let insts = instances(&alg)?;
    let vectors = test_vectors(&alg, degree_bound);
    let outcomes: Vec<(RelationFamily, bool, bool)> = insts
        .par_iter()
        .map(|inst| {
            let by_action = vectors.iter().all(|f| {
                let mut acc = PolElement::zero();
                for (s, factors) in &inst.products {
                    let v = act_product(&alg, factors, f);
                    for (i, g) in v.components() {
                        acc.add_at(i.clone(), &g.scale(&BigInt::from(*s)));
                    }
                }
                acc.is_zero()
            });
            let by_straightening = (|| -> Result<bool> {
                let mut acc = KlrElement::zero();
                for (s, factors) in &inst.products {
                    acc.add_assign(&alg.product(factors)?.scale(&BigInt::from(*s)));
                }
                Ok(acc.is_zero())
            })()
            .unwrap_or(false);
            (inst.family, by_action, by_straightening)
        })
        .collect();
    let families = RelationFamily::ALL
        .iter()
        .map(|&family| {
            let rel: Vec<_> = outcomes.iter().filter(|o| o.0 == family).collect();
            FamilyResult {
                family,
                instances: rel.len(),
                action_failures: rel.iter().filter(|o| !o.1).count(),
                straightening_failures: rel.iter().filter(|o| !o.2).count(),
            }
        })
        .collect();
    Ok(RelationReport {
        quiver: q.type_name(),
        nu: nu.0.clone(),
        degree_bound,
        test_vectors: vectors.len(),
        families,
    })
}

/// The idempotent `1_{i,m}` of the nilHecke algebra `R_{m i}`, verified idempotent.
///
/// With `tau` acting as `-d`, `x^delta tau_{w_0}` squares to `(-1)^{l_m}` times itself,
/// so the sign `(-1)^{l_m}` is included.
pub fn divided_idempotent(q: &QuiverData, i: usize, m: usize) -> Result<KlrElement> {
    if m == 0 || i >= q.num_vertices() {
        return Err(Error::WeightMismatch(format!("divided idempotent ({i}, {m})")));
    }
    let nu = DimVector::simple(q.num_vertices(), i).scaled(m as u32);
    let alg = KlrAlgebra::new(q, &nu)?;
    let e = nil_hecke_idempotent(i, m);
    if alg.multiply(&e, &e)? != e || alg.degree(&e) != Some(0) {
        return Err(Error::Defect(format!("1_(i,{m}) is not a degree 0 idempotent")));
    }
    Ok(e)
}

/// Graded rank data of `P_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveClass {
    pub y: FlagType,
    /// The expanded sequence `ui`.
    pub seq: Vec<usize>,
    /// `[a]!`.
    pub a_factorial: LaurentPoly,
    /// `l_a`.
    pub shift: i64,
    /// Free `Pol`-rank of `P_ui = R 1_ui`: `sum_j graded_rank(j, ui)`.
    pub rank_ui: LaurentPoly,
    /// Free `Pol`-rank of `P_y`, i.e. `rank_ui / [a]!`.
    pub rank: LaurentPoly,
}

pub fn projective_class(alg: &KlrAlgebra, y: &FlagType) -> Result<ProjectiveClass> {
    if y.weight(alg.quiver().num_vertices()) != *alg.nu() {
        return Err(Error::WeightMismatch(format!("flag type does not have weight {}", alg.nu())));
    }
    let seq = y.expansion();
    let rank_ui = alg.graded_rank_total(&seq);
    let sizes = y.sizes();
    let a_factorial = multifact(&sizes);
    let rank = rank_ui
        .exact_div(&a_factorial)
        .ok_or_else(|| Error::Defect("graded rank of P_ui is not divisible by [a]!".into()))?;
    Ok(ProjectiveClass { y: y.clone(), seq, a_factorial, shift: lvec(&sizes), rank_ui, rank })
}

/// Graded dimensions of `R 1_ui` and of `[a]! q^{l_a} grdim(R 1_y)` on a degree window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimCheck {
    pub lo: i64,
    pub hi: i64,
    /// `dim (R 1_ui)_d`, counted from the basis.
    pub direct: Vec<BigInt>,
    /// `[a]! q^{l_a} dim (R 1_y)_d`, with `R 1_y` spanned by straightened products.
    pub via_flag: Vec<BigInt>,
}

impl GradedDimCheck {
    pub fn holds(&self) -> bool {
        self.direct == self.via_flag
    }
}

/// Compares `[P_ui]` with `[a]! [P_y]` through graded dimensions in degrees `lo..=lo+width`.
///
/// With `grdim M[k] = q^k grdim M` this is `grdim R 1_ui = [a]! q^{l_a} grdim R 1_y`.
pub fn projective_grdim_check(alg: &KlrAlgebra, y: &FlagType, width: i64) -> Result<GradedDimCheck> {
    let seq = y.expansion();
    let e = alg.flag_idempotent(y)?;
    let lo = alg
        .graded_rank_total(&seq)
        .min_exp()
        .ok_or_else(|| Error::Defect("empty graded rank".into()))?;
    let hi = lo + width;
    let direct: Vec<BigInt> = (lo..=hi).map(|d| BigInt::from(alg.basis_in_degree(&seq, d).len())).collect();
    let mut of_y = Vec::new();
    for d in lo..=hi {
        let prods: Vec<KlrElement> = alg
            .basis_in_degree(&seq, d)
            .into_iter()
            .map(|t| alg.multiply(&KlrElement::from_term(t, 1), &e))
            .collect::<Result<_>>()?;
        of_y.push(alg.span_rank(&prods));
    }
    let factor = multifact(&y.sizes()).shift(lvec(&y.sizes()));
    let via_flag = (lo..=hi)
        .map(|d| {
            let mut c = BigInt::zero();
            for (e, k) in factor.terms() {
                let src = d - e;
                if src >= lo {
                    c += k * BigInt::from(of_y[(src - lo) as usize]);
                }
            }
            c
        })
        .collect();
    Ok(GradedDimCheck { lo, hi, direct, via_flag })
}

impl KlrAlgebra {
    /// `sum_j graded_rank(j, i)`.
    pub fn graded_rank_total(&self, i: &[usize]) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for j in self.sequences() {
            out = &out + &self.graded_rank(j, i);
        }
        out
    }
}
