//! Stalk tables of Lusztig pushforwards, peeling into parity sheaves, and the
//! transition between the monomial basis `theta_y` and the parity basis of `f`.
//!
//! A stalk table records, for each orbit, the Poincare polynomial of the fiber of
//! `pi_y` over it: by base change this is the stalk cohomology of `pi_{y*} k` there.
//! Tables are recorded unshifted. K-theory classes use `[F[1]] = q [F]`, so
//! `[^dL_y] = q^{dim F~_y} [L_y]` and a stalk in degree `2k` contributes `q^{-2k}`.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::flagcount::{dim_flagvar, dim_ftilde, poincare_fiber, prime_powers, EvennessAlert, FiberPoincare, PoincarePoly, DEFAULT_BUDGET};
use crate::linalg::LaurentRank;
use crate::qf::{Qf, WordVector};
use crate::qlaurent::{LaurentPoly, RationalFunction};
use crate::quiver::{enumerate_flag_types, DimVector, FlagType, KostantPartition, OrbitData, QuiverCatalog};
use crate::{Error, Result};

/// Cap on `#Y_nu` for exhaustive searches.
pub const DEFAULT_FLAG_CAP: usize = 200_000;

/// What a stalk table belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableLabel {
    Flag(FlagType),
    Parity(KostantPartition),
}

/// Stalk Poincare polynomials indexed like [`ParityContext::orbits`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StalkTable {
    pub label: TableLabel,
    pub entries: Vec<PoincarePoly>,
}

impl StalkTable {
    /// The entries as integer vectors, ones for orbits where the table is 1.
    pub fn pattern(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|p| p.coeffs.iter().map(|c| i64::try_from(c).unwrap_or(i64::MAX)).collect())
            .collect()
    }
}

/// A matrix of Laurent polynomials with labelled rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl TransitionMatrix {
    /// Lower triangular with diagonal entries `q^k`.
    pub fn is_unitriangular(&self) -> bool {
        self.entries.len() == self.cols.len()
            && self.entries.iter().enumerate().all(|(r, row)| {
                row.iter().enumerate().all(|(c, x)| match c.cmp(&r) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => x.num_terms() == 1 && x.terms().all(|(_, a)| a.is_one()),
                    std::cmp::Ordering::Greater => x.is_zero(),
                })
            })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().flatten().all(LaurentPoly::is_nonnegative)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.len() == self.cols.len()
            && self.entries.iter().enumerate().all(|(r, row)| {
                row.iter().enumerate().all(|(c, x)| if r == c { x.is_one() } else { x.is_zero() })
            })
    }
}

/// A peeling step that no parity decomposition explains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityAlert {
    pub quiver: serde_json::Value,
    pub nu: DimVector,
    pub label: TableLabel,
    pub orbit: KostantPartition,
    /// Residual at `orbit` when the step failed; coefficients may be negative.
    pub residual: PoincarePoly,
    pub reason: String,
}

/// Output of [`ParityContext::peel`].
#[derive(Clone, Debug, Serialize)]
pub struct Peel {
    /// Processing order, as indices into the orbit list.
    pub order: Vec<usize>,
    pub resolutions: Vec<FlagType>,
    /// `parity[i]` is the stalk table of `E(lambda_i)` with its top stalk normalised to 1.
    pub parity: Vec<StalkTable>,
    pub inputs: Vec<FlagType>,
    /// `multiplicities[r][i] = c_{y,lambda_i}(t)`: `L_y` contains `t^k c_k` copies of `E(lambda_i)`
    /// shifted so that its top stalk sits in degree `2k`.
    pub multiplicities: Vec<Vec<PoincarePoly>>,
    /// `[^dL_y]` in the basis `[E(lambda)]`, one row per input.
    pub decomposition: TransitionMatrix,
    /// The same restricted to the rows `y_lambda`, in orbit order.
    pub resolution_matrix: TransitionMatrix,
}

/// The parity basis of `f_nu` written in monomials.
#[derive(Clone, Debug, Serialize)]
pub struct ParityBasis {
    pub quiver: serde_json::Value,
    pub nu: DimVector,
    pub orbit_order: Vec<String>,
    pub resolutions: Vec<String>,
    pub primes: Vec<u32>,
    /// Row `lambda`: `[E(lambda)]` as a combination of the `theta_{y_mu}`.
    pub basis: TransitionMatrix,
    pub decomposition: TransitionMatrix,
    pub rank: LaurentRank,
    pub dim_f: usize,
    #[serde(skip)]
    pub elements: Vec<WordVector>,
}

impl ParityBasis {
    pub fn is_basis(&self) -> bool {
        self.rank.rank == self.elements.len() && self.rank.rank == self.dim_f
    }
}

/// One alternative resolution of an orbit, compared with the chosen one.
#[derive(Clone, Debug, Serialize)]
pub struct AlternativeCheck {
    pub resolution: String,
    /// Peeling with this resolution gives the same parity tables.
    pub tables_equal: bool,
    /// `theta_y' - sum_{mu != lambda} c_mu [E(mu)]` equals `[E(lambda)]` in `f`.
    pub class_equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceEntry {
    pub orbit: String,
    pub resolution: String,
    pub parity_table: StalkTable,
    /// Top summand of `L_{y_lambda}`, read off before normalisation.
    pub top_summand_table: StalkTable,
    pub alternatives: Vec<AlternativeCheck>,
    pub coincide: bool,
}

/// Evenness precondition: every fiber of every `pi_y` over `nu`.
#[derive(Clone, Debug, Serialize)]
pub struct EvennessCertificate {
    pub flag_types: usize,
    pub fibers: usize,
    pub verified: usize,
    pub alerts: Vec<EvennessAlert>,
}

impl EvennessCertificate {
    pub fn passed(&self) -> bool {
        self.alerts.is_empty() && self.verified == self.fibers
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceReport {
    pub quiver: serde_json::Value,
    pub nu: DimVector,
    pub orbit_order: Vec<String>,
    pub evenness: EvennessCertificate,
    pub entries: Vec<CoincidenceEntry>,
    pub parity_alerts: Vec<ParityAlert>,
    /// `"coincide"`, `"differ"`, or `"evenness-unverified"`.
    pub verdict: String,
}

/// Shared state for one weight `nu`: the orbit list and a cache of certified fibers.
pub struct ParityContext<'a> {
    catalog: &'a QuiverCatalog,
    nu: DimVector,
    orbits: Vec<OrbitData>,
    budget: u64,
    flag_cap: usize,
    fibers: Mutex<BTreeMap<(FlagType, usize), FiberPoincare>>,
}

impl<'a> ParityContext<'a> {
    pub fn new(catalog: &'a QuiverCatalog, nu: &DimVector) -> Result<Self> {
        Self::with_limits(catalog, nu, DEFAULT_BUDGET, DEFAULT_FLAG_CAP)
    }

    pub fn with_limits(catalog: &'a QuiverCatalog, nu: &DimVector, budget: u64, flag_cap: usize) -> Result<Self> {
        if nu.0.len() != catalog.quiver().num_vertices() {
            return Err(Error::WeightMismatch(format!("{nu} for a quiver with {} vertices", catalog.quiver().num_vertices())));
        }
        Ok(ParityContext {
            catalog,
            nu: nu.clone(),
            orbits: catalog.orbits(nu, flag_cap)?,
            budget,
            flag_cap,
            fibers: Mutex::new(BTreeMap::new()),
        })
    }

    /// Orbits sorted by dimension; all tables are indexed this way.
    pub fn orbits(&self) -> &[OrbitData] {
        &self.orbits
    }

    pub fn nu(&self) -> &DimVector {
        &self.nu
    }

    pub fn orbit_names(&self) -> Vec<String> {
        self.orbits.iter().map(|o| o.partition.name(self.catalog.quiver())).collect()
    }

    pub fn orbit_index(&self, lambda: &KostantPartition) -> Result<usize> {
        self.orbits
            .iter()
            .position(|o| &o.partition == lambda)
            .ok_or_else(|| Error::WeightMismatch(format!("{lambda} is not an orbit of weight {}", self.nu)))
    }

    pub fn flag_types(&self) -> Result<Vec<FlagType>> {
        enumerate_flag_types(&self.nu, self.flag_cap)
    }

    fn primes_for(&self, y: &FlagType) -> Vec<u32> {
        prime_powers((dim_flagvar(y, self.nu.0.len()) as usize + 3).max(5))
    }

    /// Sample prime powers used for the largest flag variety of weight `nu`.
    pub fn primes(&self) -> Vec<u32> {
        let top: u32 = self.nu.0.iter().sum();
        prime_powers(((top * top.saturating_sub(1) / 2) as usize + 3).max(5))
    }

    /// The certified fiber of `pi_y` over orbit `i`, cached.
    pub fn fiber(&self, y: &FlagType, i: usize) -> Result<FiberPoincare> {
        let key = (y.clone(), i);
        if let Some(f) = self.fibers.lock().expect("fiber cache").get(&key) {
            return Ok(f.clone());
        }
        if y.weight(self.nu.0.len()) != self.nu {
            return Err(Error::WeightMismatch(format!("flag of weight {} for nu = {}", y.weight(self.nu.0.len()), self.nu)));
        }
        let f = poincare_fiber(self.catalog, &self.orbits[i].partition, y, &self.primes_for(y), self.budget)?;
        self.fibers.lock().expect("fiber cache").insert(key, f.clone());
        Ok(f)
    }

    fn certified(&self, y: &FlagType, i: usize) -> Result<PoincarePoly> {
        let f = self.fiber(y, i)?;
        match (&f.poly, &f.alert) {
            (Some(p), None) => Ok(p.clone()),
            (_, Some(a)) => Err(Error::EvennessAlert(serde_json::to_string(a)?)),
            (None, None) => Err(Error::Defect(format!("fiber of {y:?} over orbit {i} has no polynomial"))),
        }
    }

    /// All certified fibers computed so far.
    pub fn certificate(&self) -> Vec<FiberPoincare> {
        self.fibers.lock().expect("fiber cache").values().cloned().collect()
    }

    pub fn stalk_table(&self, y: &FlagType) -> Result<StalkTable> {
        Ok(self.stalk_tables(std::slice::from_ref(y))?.remove(0))
    }

    /// Stalk tables of several flag types, computed in parallel over `(y, orbit)`.
    pub fn stalk_tables(&self, ys: &[FlagType]) -> Result<Vec<StalkTable>> {
        let n = self.orbits.len();
        let polys: Vec<PoincarePoly> = (0..ys.len() * n)
            .into_par_iter()
            .map(|t| self.certified(&ys[t / n], t % n))
            .collect::<Result<_>>()?;
        Ok(ys
            .iter()
            .zip(polys.chunks(n.max(1)))
            .map(|(y, c)| StalkTable { label: TableLabel::Flag(y.clone()), entries: c.to_vec() })
            .collect())
    }

    fn is_resolution(&self, y: &FlagType, i: usize) -> Result<bool> {
        let d = self.orbits[i].dim;
        if dim_ftilde(self.catalog.quiver(), y) != d || !self.certified(y, i)?.coeffs.iter().eq([BigInt::one()].iter()) {
            return Ok(false);
        }
        for (j, o) in self.orbits.iter().enumerate() {
            if j != i && o.dim >= d && !self.certified(y, j)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Up to `limit` flag types resolving the closure of orbit `i`, in canonical order.
    pub fn resolutions(&self, i: usize, limit: usize) -> Result<Vec<FlagType>> {
        let mut out = Vec::new();
        for y in self.flag_types()? {
            if out.len() >= limit {
                break;
            }
            if self.is_resolution(&y, i)? {
                out.push(y);
            }
        }
        Ok(out)
    }

    /// A flag type `y` with a stalk 1 over orbit `i`, no stalks over the other orbits of
    /// dimension at least `dim O_i`, and `dim F~_y = dim O_i`.
    pub fn find_resolution(&self, i: usize) -> Result<FlagType> {
        self.resolutions(i, 1)?.pop().ok_or_else(|| {
            Error::Defect(format!(
                "no resolution of {} among {} flag types",
                self.orbits[i].partition.name(self.catalog.quiver()),
                self.flag_types().map_or(0, |v| v.len())
            ))
        })
    }

    /// One resolution per orbit, searched in parallel.
    pub fn find_resolutions(&self) -> Result<Vec<FlagType>> {
        (0..self.orbits.len()).into_par_iter().map(|i| self.find_resolution(i)).collect()
    }

    /// The order by dimension used unless another is given.
    pub fn default_order(&self) -> Vec<usize> {
        (0..self.orbits.len()).collect()
    }

    fn alert(&self, label: &TableLabel, i: usize, residual: &[BigInt], reason: &str) -> Error {
        let a = ParityAlert {
            quiver: self.catalog.quiver().to_json(),
            nu: self.nu.clone(),
            label: label.clone(),
            orbit: self.orbits[i].partition.clone(),
            residual: PoincarePoly { coeffs: trimmed(residual.to_vec()) },
            reason: reason.to_string(),
        };
        Error::ParityAlert(serde_json::to_string(&a).unwrap_or_else(|_| reason.to_string()))
    }

    /// Peel `inputs` into parity sheaves.
    ///
    /// `res[i]` is the stalk table of a resolution of orbit `i`. Orbits are processed in
    /// `order`, which must list every orbit once with dimensions nondecreasing. The
    /// parity table of `lambda` is obtained from `L_{y_lambda}` by walking down the lower
    /// orbits `mu` and splitting the residual at `mu`: with `h = d_lambda - d_mu`, the
    /// stalks of `E(lambda)` at `mu` lie in degrees `< h`, and a shifted summand `E(mu)`
    /// of the self-dual `L_{y_lambda}[d_lambda]` contributes symmetrically about `h`.
    pub fn peel(&self, res: &[StalkTable], inputs: &[StalkTable], order: &[usize]) -> Result<Peel> {
        let n = self.orbits.len();
        let mut seen = vec![false; n];
        for &i in order {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Config(format!("{order:?} is not an ordering of {n} orbits")));
            }
        }
        if order.len() != n || order.windows(2).any(|w| self.orbits[w[0]].dim > self.orbits[w[1]].dim) {
            return Err(Error::Config(format!("{order:?} does not refine the dimension order")));
        }
        if res.len() != n {
            return Err(Error::Config(format!("{} resolution tables for {n} orbits", res.len())));
        }
        let mut parity: Vec<Option<Vec<Vec<BigInt>>>> = vec![None; n];
        for (pos, &l) in order.iter().enumerate() {
            let label = &res[l].label;
            let mut r: Vec<Vec<BigInt>> = res[l].entries.iter().map(|p| p.coeffs.clone()).collect();
            if trimmed(r[l].clone()) != [BigInt::one()] {
                return Err(self.alert(label, l, &r[l], "stalk at the resolved orbit is not 1"));
            }
            let dl = self.orbits[l].dim;
            for (j, o) in self.orbits.iter().enumerate() {
                if j != l && o.dim >= dl && !is_zero(&r[j]) {
                    return Err(self.alert(label, j, &r[j], "resolution has stalks outside the orbit closure"));
                }
            }
            for &m in order[..pos].iter().rev() {
                let h = dl - self.orbits[m].dim;
                if h <= 0 || is_zero(&r[m]) {
                    continue;
                }
                if r[m].iter().any(Signed::is_negative) {
                    return Err(self.alert(label, m, &r[m], "negative residual"));
                }
                let c = palindromic_part(&r[m], h as usize);
                let e = sub(&r[m], &c);
                if e.iter().any(Signed::is_negative) {
                    return Err(self.alert(label, m, &r[m], "residual is not a parity stalk plus a symmetric multiplicity"));
                }
                if !is_zero(&c) {
                    let pm = parity[m].as_ref().expect("lower orbits are peeled first");
                    for (rj, pj) in r.iter_mut().zip(pm) {
                        *rj = sub(rj, &mul(&c, pj));
                    }
                }
            }
            for (j, o) in self.orbits.iter().enumerate() {
                if r[j].iter().any(Signed::is_negative) {
                    return Err(self.alert(label, j, &r[j], "negative stalk in parity table"));
                }
                if j != l && o.dim >= dl && !is_zero(&r[j]) {
                    return Err(self.alert(label, j, &r[j], "parity table outside its support"));
                }
            }
            parity[l] = Some(r);
        }
        let parity: Vec<Vec<Vec<BigInt>>> = parity.into_iter().map(|p| p.expect("every orbit peeled")).collect();

        let decompose = |t: &StalkTable| -> Result<Vec<Vec<BigInt>>> {
            let mut r: Vec<Vec<BigInt>> = t.entries.iter().map(|p| p.coeffs.clone()).collect();
            let mut c = vec![Vec::new(); n];
            for &m in order.iter().rev() {
                if is_zero(&r[m]) {
                    continue;
                }
                if r[m].iter().any(Signed::is_negative) {
                    return Err(self.alert(&t.label, m, &r[m], "negative multiplicity"));
                }
                c[m] = trimmed(r[m].clone());
                for (rj, pj) in r.iter_mut().zip(&parity[m]) {
                    *rj = sub(rj, &mul(&c[m], pj));
                }
            }
            if let Some(j) = (0..n).find(|&j| !is_zero(&r[j])) {
                return Err(self.alert(&t.label, j, &r[j], "nonzero terminal residual"));
            }
            Ok(c)
        };
        let flag_of = |t: &StalkTable| match &t.label {
            TableLabel::Flag(y) => Ok(y.clone()),
            TableLabel::Parity(_) => Err(Error::Config("peel expects Lusztig tables".into())),
        };
        let to_class = |y: &FlagType, c: &[Vec<BigInt>]| -> Vec<LaurentPoly> {
            let d = dim_ftilde(self.catalog.quiver(), y);
            c.iter()
                .zip(&self.orbits)
                .map(|(ck, o)| {
                    LaurentPoly::from_terms(ck.iter().enumerate().map(|(k, a)| (d - o.dim - 2 * k as i64, a.clone())))
                })
                .collect()
        };
        let q = self.catalog.quiver();
        let cols = self.orbit_names();
        let mut mults = Vec::new();
        let mut rows = Vec::new();
        let mut ys = Vec::new();
        for t in inputs {
            let y = flag_of(t)?;
            let c = decompose(t)?;
            rows.push(to_class(&y, &c));
            mults.push(c.into_iter().map(|v| PoincarePoly { coeffs: trimmed(v) }).collect());
            ys.push(y);
        }
        let resolutions: Vec<FlagType> = res.iter().map(flag_of).collect::<Result<_>>()?;
        let mut res_rows = Vec::new();
        for (t, y) in res.iter().zip(&resolutions) {
            res_rows.push(to_class(y, &decompose(t)?));
        }
        Ok(Peel {
            order: order.to_vec(),
            parity: parity
                .into_iter()
                .zip(&self.orbits)
                .map(|(p, o)| StalkTable {
                    label: TableLabel::Parity(o.partition.clone()),
                    entries: p.into_iter().map(|v| PoincarePoly { coeffs: trimmed(v) }).collect(),
                })
                .collect(),
            inputs: ys.clone(),
            multiplicities: mults,
            decomposition: TransitionMatrix {
                rows: ys.iter().map(|y| q.flag_name(y)).collect(),
                cols: cols.clone(),
                entries: rows,
            },
            resolution_matrix: TransitionMatrix {
                rows: resolutions.iter().map(|y| q.flag_name(y)).collect(),
                cols,
                entries: res_rows,
            },
            resolutions,
        })
    }

    /// Resolutions, their tables, and the peel in the default order with the resolutions
    /// themselves as inputs.
    pub fn peel_resolutions(&self) -> Result<Peel> {
        let ys = self.find_resolutions()?;
        let tables = self.stalk_tables(&ys)?;
        self.peel(&tables, &tables, &self.default_order())
    }

    /// `[E(lambda)]` in the monomials `theta_{y_mu}`, checked to be a basis of `f_nu`.
    pub fn parity_basis(&self, qf: &Qf) -> Result<ParityBasis> {
        let peel = self.peel_resolutions()?;
        let m = &peel.resolution_matrix;
        if !m.is_unitriangular() {
            return Err(Error::Defect(format!("decomposition over resolutions is not unitriangular: {:?}", m.entries)));
        }
        let inv = invert_unitriangular(&m.entries);
        let n = self.nu.0.len();
        let thetas: Vec<WordVector> = peel.resolutions.iter().map(|y| WordVector::theta_monomial(y, n)).collect();
        let elements: Vec<WordVector> = inv
            .iter()
            .map(|row| {
                let mut acc = WordVector::zero(self.nu.clone());
                for (c, t) in row.iter().zip(&thetas) {
                    if !c.is_zero() {
                        acc = acc.add(&t.scale(&RationalFunction::from_laurent(c.clone())))?;
                    }
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        let rank = qf.rank_in_f(&elements);
        let dim_f = qf.dim_f(&self.nu).rank;
        let q = self.catalog.quiver();
        let out = ParityBasis {
            quiver: q.to_json(),
            nu: self.nu.clone(),
            orbit_order: self.orbit_names(),
            resolutions: peel.resolutions.iter().map(|y| q.flag_name(y)).collect(),
            primes: self.primes(),
            basis: TransitionMatrix {
                rows: self.orbit_names().iter().map(|s| format!("E{s}")).collect(),
                cols: peel.resolutions.iter().map(|y| qf.monomial_string(y)).collect(),
                entries: inv,
            },
            decomposition: peel.resolution_matrix.clone(),
            rank,
            dim_f,
            elements,
        };
        if !out.is_basis() {
            return Err(Error::Defect(format!(
                "parity classes span rank {} in f_nu of dimension {} ({} orbits)",
                out.rank.rank,
                dim_f,
                out.elements.len()
            )));
        }
        Ok(out)
    }

    /// Certifies the evenness precondition on all of `Y_nu` and compares, for every orbit,
    /// the peeled parity table with the top summand of `L_{y_lambda}`; up to `alternatives`
    /// further resolutions per orbit are peeled as well and compared in tables and in `f`.
    pub fn conjecture14_check(&self, qf: &Qf, alternatives: usize) -> Result<CoincidenceReport> {
        let q = self.catalog.quiver();
        let ys = self.flag_types()?;
        let n = self.orbits.len();
        let fibers: Vec<FiberPoincare> = (0..ys.len() * n)
            .into_par_iter()
            .map(|t| self.fiber(&ys[t / n], t % n))
            .collect::<Result<_>>()?;
        let evenness = EvennessCertificate {
            flag_types: ys.len(),
            fibers: fibers.len(),
            verified: fibers.iter().filter(|f| f.verified()).count(),
            alerts: fibers.iter().filter_map(|f| f.alert.clone()).collect(),
        };
        let mut report = CoincidenceReport {
            quiver: q.to_json(),
            nu: self.nu.clone(),
            orbit_order: self.orbit_names(),
            evenness,
            entries: Vec::new(),
            parity_alerts: Vec::new(),
            verdict: "evenness-unverified".into(),
        };
        if !report.evenness.passed() {
            return Ok(report);
        }
        let basis = match self.parity_basis(qf) {
            Ok(b) => b,
            Err(Error::ParityAlert(s)) => {
                report.parity_alerts.push(serde_json::from_str(&s)?);
                report.verdict = "differ".into();
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        let res = self.find_resolutions()?;
        let res_tables = self.stalk_tables(&res)?;
        let base = self.peel(&res_tables, &res_tables, &self.default_order())?;
        let all = self.stalk_tables(&ys)?;
        let full = self.peel(&res_tables, &all, &self.default_order())?;
        let n_var = self.nu.0.len();
        for i in 0..n {
            let y = &res[i];
            let row = &base.multiplicities[i];
            let top = StalkTable {
                label: TableLabel::Flag(y.clone()),
                entries: sub_tables(&res_tables[i], row, &base.parity, i),
            };
            let mut alts = Vec::new();
            for alt in self.resolutions(i, alternatives + 1)?.into_iter().filter(|a| a != y).take(alternatives) {
                let mut tables = res_tables.clone();
                tables[i] = self.stalk_table(&alt)?;
                let tables_equal = match self.peel(&tables, &[], &self.default_order()) {
                    Ok(p) => p.parity == base.parity,
                    Err(Error::ParityAlert(s)) => {
                        report.parity_alerts.push(serde_json::from_str(&s)?);
                        false
                    }
                    Err(e) => return Err(e),
                };
                let r = full.inputs.iter().position(|x| x == &alt).expect("alternative lies in Y_nu");
                let coeffs = &full.decomposition.entries[r];
                let mut class = WordVector::theta_monomial(&alt, n_var);
                for (j, c) in coeffs.iter().enumerate() {
                    if j != i && !c.is_zero() {
                        class = class.sub(&basis.elements[j].scale(&RationalFunction::from_laurent(c.clone())))?;
                    }
                }
                let class_equal = coeffs[i].is_one() && qf.is_zero_in_f(&class.sub(&basis.elements[i])?);
                alts.push(AlternativeCheck { resolution: q.flag_name(&alt), tables_equal, class_equal });
            }
            let coincide = top == StalkTable { label: top.label.clone(), entries: base.parity[i].entries.clone() }
                && alts.iter().all(|a| a.tables_equal && a.class_equal);
            report.entries.push(CoincidenceEntry {
                orbit: self.orbit_names()[i].clone(),
                resolution: q.flag_name(y),
                parity_table: base.parity[i].clone(),
                top_summand_table: top,
                alternatives: alts,
                coincide,
            });
        }
        report.verdict = if report.parity_alerts.is_empty() && report.entries.iter().all(|e| e.coincide) {
            "coincide".into()
        } else {
            "differ".into()
        };
        Ok(report)
    }
}

/// [`ParityContext::parity_basis`] with default limits.
pub fn parity_basis(catalog: &QuiverCatalog, nu: &DimVector) -> Result<ParityBasis> {
    ParityContext::new(catalog, nu)?.parity_basis(&Qf::new(catalog.quiver()))
}

/// [`ParityContext::conjecture14_check`] with default limits and one alternative per orbit.
pub fn conjecture14_check(catalog: &QuiverCatalog, nu: &DimVector) -> Result<CoincidenceReport> {
    ParityContext::new(catalog, nu)?.conjecture14_check(&Qf::new(catalog.quiver()), 1)
}

/// Stalks of `L_y` minus every summand except the one supported on orbit `keep`.
fn sub_tables(t: &StalkTable, mult: &[PoincarePoly], parity: &[StalkTable], keep: usize) -> Vec<PoincarePoly> {
    let mut r: Vec<Vec<BigInt>> = t.entries.iter().map(|p| p.coeffs.clone()).collect();
    for (m, c) in mult.iter().enumerate() {
        if m != keep && !c.is_zero() {
            for (rj, pj) in r.iter_mut().zip(&parity[m].entries) {
                *rj = sub(rj, &mul(&c.coeffs, &pj.coeffs));
            }
        }
    }
    r.into_iter().map(|v| PoincarePoly { coeffs: trimmed(v) }).collect()
}

/// The part of `r` symmetric under `k -> h - k` that agrees with `r` in degrees `2k >= h`.
fn palindromic_part(r: &[BigInt], h: usize) -> Vec<BigInt> {
    let get = |k: usize| r.get(k).cloned().unwrap_or_default();
    let len = r.len().max(h + 1);
    (0..len)
        .map(|k| if 2 * k >= h { get(k) } else { get(h - k) })
        .collect()
}

fn invert_unitriangular(m: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let n = m.len();
    let mut inv = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        let (e, _) = m[i][i].terms().next().expect("unit diagonal");
        for j in (0..=i).rev() {
            let mut acc = if i == j { LaurentPoly::one() } else { LaurentPoly::zero() };
            for k in j..i {
                if !m[i][k].is_zero() && !inv[k][j].is_zero() {
                    acc -= &(&m[i][k] * &inv[k][j]);
                }
            }
            inv[i][j] = acc.shift(-e);
        }
    }
    inv
}

fn trimmed(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = a.to_vec();
    if b.len() > out.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, x) in out.iter_mut().zip(b) {
        *o -= x;
    }
    trimmed(out)
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

#[cfg(test)]
mod tests;
