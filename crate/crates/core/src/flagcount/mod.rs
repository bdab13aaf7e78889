//! Lusztig flag varieties `F_y`, `F~_y` and the fibers of `pi_y` over finite fields.
//!
//! Fibers are counted by enumerating x-stable flags step by step; Poincare
//! polynomials are read off from the counts by interpolation. Type A fibers can
//! also be computed symbolically by the cell recursion in [`typea`].

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ffield::{prime_power, subspaces, GaloisField, MAX_FIELD_SIZE};
use crate::linalg::{nullspace, rref, Field};
use crate::qlaurent::{eval_at, gaussian_binomial, LaurentPoly};
use crate::quiver::{
    dim_vectors_up_to, enumerate_flag_types, DimVector, FlagType, KostantPartition, QuiverCatalog, QuiverData, Rep,
};
use crate::{Error, Result};

pub mod restrict;
pub mod typea;

pub use restrict::{
    big_m, res_check, res_class, restriction_constants, u_set, ResCheck, ResTerm, RestrictionDatum, RestrictionPair,
};
pub use typea::{typea_cell_recursion, typea_strata_count, typea_strata_poly};

/// Prime powers tried first, in this order.
pub const DEFAULT_PRIME_POWERS: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

/// Default cap on the number of subspaces enumerated by one fiber count.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// The default sample set, continued by further prime powers when `k` exceeds nine.
pub fn prime_powers(k: usize) -> Vec<u32> {
    let mut out: Vec<u32> = DEFAULT_PRIME_POWERS.iter().copied().take(k).collect();
    let mut n = 14;
    while out.len() < k && n <= MAX_FIELD_SIZE {
        if prime_power(n).is_some() {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// One exact point count of `pi_y^{-1}(x)` for `x` in the orbit `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCountRecord {
    pub quiver: String,
    pub nu: DimVector,
    pub y: FlagType,
    pub lambda: KostantPartition,
    pub q: u32,
    #[serde(with = "crate::bigstr")]
    pub count: BigInt,
}

/// A polynomial in `t`; the coefficient of `t^k` is `dim H^{2k}` of a fiber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PoincarePoly {
    #[serde(with = "crate::bigstr::vec")]
    pub coeffs: Vec<BigInt>,
}

impl PoincarePoly {
    pub fn zero() -> Self {
        PoincarePoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trimmed(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PoincarePoly { coeffs }
    }

    /// Reads a polynomial in `q` with nonnegative exponents and coefficients.
    pub fn from_laurent(p: &LaurentPoly) -> Option<Self> {
        if p.is_zero() {
            return Some(Self::zero());
        }
        if p.min_exp()? < 0 || !p.is_nonnegative() {
            return None;
        }
        let deg = p.max_exp()? as usize;
        Some(Self::trimmed((0..=deg).map(|k| p.coeff(k as i64)).collect()))
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c.clone())))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: u64) -> BigInt {
        let q = BigInt::from(q);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &q + c)
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match (k, c.is_one()) {
                (0, _) => c.to_string(),
                (1, true) => "t".into(),
                (1, false) => format!("{c}t"),
                (_, true) => format!("t^{k}"),
                (_, false) => format!("{c}t^{k}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Candidate counterexample data: point counts that are not those of an even fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvennessAlert {
    pub quiver: serde_json::Value,
    pub nu: DimVector,
    pub y: FlagType,
    pub lambda: KostantPartition,
    /// Matrices of the integral orbit representative, one per arrow.
    pub representative: Vec<Vec<Vec<i64>>>,
    #[serde(with = "crate::bigstr::samples")]
    pub samples: Vec<(u32, BigInt)>,
    pub reason: String,
}

/// Poincare polynomial of one fiber, with the data used to certify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberPoincare {
    pub nu: DimVector,
    pub y: FlagType,
    pub lambda: KostantPartition,
    pub degree_bound: usize,
    #[serde(with = "crate::bigstr::samples")]
    pub samples: Vec<(u32, BigInt)>,
    pub held_out: Vec<u32>,
    pub poly: Option<PoincarePoly>,
    pub alert: Option<EvennessAlert>,
}

impl FiberPoincare {
    pub fn verified(&self) -> bool {
        self.poly.is_some() && self.alert.is_none()
    }
}

/// `#F_y(F_q)` for the flag type `steps` in a graded space of dimension `dims`:
/// a product of q-multinomials, one per vertex.
pub fn flag_count(dims: &[u32], steps: &[(usize, u32)], q: u64) -> BigInt {
    let mut rest = dims.to_vec();
    let mut out = BigInt::one();
    for &(i, a) in steps {
        out *= eval_at(&gaussian_binomial(rest[i], a), q);
        rest[i] -= a;
    }
    out
}

pub fn count_flagvar(y: &FlagType, n: usize, q: u64) -> BigInt {
    flag_count(&y.weight(n).0, &y.steps, q)
}

/// `dim F_y`.
pub fn dim_flagvar(y: &FlagType, n: usize) -> i64 {
    let mut seen = vec![0i64; n];
    let mut d = 0;
    for &(i, a) in &y.steps {
        d += seen[i] * a as i64;
        seen[i] += a as i64;
    }
    d
}

/// `dim F~_y = dim F_y + sum_h sum_r (v^r_{h'} - v^{r-1}_{h'}) v^r_{h''}`.
pub fn dim_ftilde(q: &QuiverData, y: &FlagType) -> i64 {
    let n = q.num_vertices();
    let v = y.partial_dims(n);
    let mut d = dim_flagvar(y, n);
    for &(s, t) in q.arrows() {
        for r in 1..v.len() {
            d += (v[r][s] as i64 - v[r - 1][s] as i64) * v[r][t] as i64;
        }
    }
    d
}

/// Counts x-stable flags over `F_q`, caching by orbit when a catalog is supplied.
pub struct FiberCounter<'a> {
    field: &'a GaloisField,
    arrows: &'a [(usize, usize)],
    catalog: Option<&'a QuiverCatalog>,
    budget: u64,
    used: u64,
    cache: HashMap<(Vec<u32>, Vec<(usize, u32)>), BigInt>,
}

impl<'a> FiberCounter<'a> {
    pub fn new(field: &'a GaloisField, arrows: &'a [(usize, usize)], budget: u64) -> Self {
        FiberCounter {
            field,
            arrows,
            catalog: None,
            budget,
            used: 0,
            cache: HashMap::new(),
        }
    }

    pub fn with_catalog(field: &'a GaloisField, catalog: &'a QuiverCatalog, budget: u64) -> Self {
        FiberCounter {
            catalog: Some(catalog),
            ..Self::new(field, catalog.quiver().arrows(), budget)
        }
    }

    /// Subspaces enumerated by the last call to [`FiberCounter::count`].
    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn count(&mut self, x: &Rep<u16>, y: &FlagType) -> Result<BigInt> {
        if y.weight(x.dims.len()) != x.dimvector() {
            return Err(Error::WeightMismatch(format!(
                "flag weight {} differs from {}",
                y.weight(x.dims.len()),
                x.dimvector()
            )));
        }
        if !x.is_consistent(self.arrows) {
            return Err(Error::InvalidQuiver("representation does not match the arrows".into()));
        }
        self.used = 0;
        self.count_steps(x, &y.steps)
    }

    fn count_steps(&mut self, x: &Rep<u16>, steps: &[(usize, u32)]) -> Result<BigInt> {
        let Some(&(i, a)) = steps.first() else {
            return Ok(BigInt::one());
        };
        if x.maps.iter().flatten().flatten().all(|&e| e == 0) {
            let dims: Vec<u32> = x.dims.iter().map(|&d| d as u32).collect();
            return Ok(flag_count(&dims, steps, self.field.order() as u64));
        }
        let key = match self.catalog {
            Some(c) => {
                let key = (c.identify(self.field, x)?, steps.to_vec());
                if let Some(v) = self.cache.get(&key) {
                    return Ok(v.clone());
                }
                Some(key)
            }
            None => None,
        };
        // a new bottom piece at vertex i must be killed by every arrow leaving i
        let rows: Vec<Vec<u16>> = self
            .arrows
            .iter()
            .zip(&x.maps)
            .filter(|((s, _), _)| *s == i)
            .flat_map(|(_, m)| m.iter().cloned())
            .collect();
        let kernel = nullspace(self.field, &rows, x.dims[i]);
        let mut total = BigInt::zero();
        for s in subspaces(self.field, &kernel, a as usize) {
            self.used += 1;
            if self.used > self.budget {
                return Err(Error::BudgetExceeded(format!("more than {} subspaces", self.budget)));
            }
            let xq = quotient(self.field, self.arrows, x, i, &s);
            total += self.count_steps(&xq, &steps[1..])?;
        }
        if let Some(key) = key {
            self.cache.insert(key, total.clone());
        }
        Ok(total)
    }
}

/// The representation induced on `V / S`, where `S` sits at vertex `i` and is killed by `x`.
pub(crate) fn quotient<F: Field>(
    f: &F,
    arrows: &[(usize, usize)],
    x: &Rep<F::Elem>,
    i: usize,
    s: &[Vec<F::Elem>],
) -> Rep<F::Elem> {
    let mut basis = s.to_vec();
    let piv = rref(f, &mut basis);
    let keep: Vec<usize> = (0..x.dims[i]).filter(|c| !piv.contains(c)).collect();
    let mut dims = x.dims.clone();
    dims[i] = keep.len();
    let reduce = |v: &[F::Elem]| -> Vec<F::Elem> {
        let mut v = v.to_vec();
        for (r, &p) in piv.iter().enumerate() {
            let c = v[p].clone();
            if !f.is_zero(&c) {
                for (j, b) in basis[r].iter().enumerate() {
                    v[j] = f.sub(&v[j], &f.mul(&c, b));
                }
            }
        }
        keep.iter().map(|&k| v[k].clone()).collect()
    };
    let maps = arrows
        .iter()
        .zip(&x.maps)
        .map(|(&(src, tgt), m)| {
            if src == i {
                m.iter().map(|row| keep.iter().map(|&k| row[k].clone()).collect()).collect()
            } else if tgt == i {
                let cols = x.dims[src];
                let reduced: Vec<Vec<F::Elem>> =
                    (0..cols).map(|c| reduce(&m.iter().map(|row| row[c].clone()).collect::<Vec<_>>())).collect();
                (0..keep.len()).map(|r| (0..cols).map(|c| reduced[c][r].clone()).collect()).collect()
            } else {
                m.clone()
            }
        })
        .collect();
    Rep { dims, maps }
}

/// Exact number of x-stable flags of type `y` over the field of `x`.
pub fn count_fiber(f: &GaloisField, arrows: &[(usize, usize)], x: &Rep<u16>, y: &FlagType, budget: u64) -> Result<BigInt> {
    FiberCounter::new(f, arrows, budget).count(x, y)
}

/// Interpolation degree bound for fibers of `pi_y`: a fiber is a closed subvariety of `F_y`.
pub fn degree_bound(y: &FlagType, n: usize) -> usize {
    dim_flagvar(y, n) as usize
}

/// Fits a polynomial of degree at most `bound` through all but the last two samples and
/// checks it on those two. Returns the reason on failure.
pub fn interpolate_counts(samples: &[(u32, BigInt)], bound: usize) -> std::result::Result<PoincarePoly, String> {
    if samples.len() < bound + 3 {
        return Err(format!("need {} samples, have {}", bound + 3, samples.len()));
    }
    let fit = &samples[..bound + 1];
    // Newton divided differences over Q
    let xs: Vec<BigRational> = fit.iter().map(|(q, _)| BigRational::from_integer((*q).into())).collect();
    let mut dd: Vec<BigRational> = fit.iter().map(|(_, c)| BigRational::from_integer(c.clone())).collect();
    for level in 1..dd.len() {
        for k in (level..dd.len()).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / (&xs[k] - &xs[k - level]);
        }
    }
    // expand the Newton form into monomial coefficients
    let mut coeffs = vec![BigRational::zero(); dd.len()];
    for k in (0..dd.len()).rev() {
        let mut next = vec![BigRational::zero(); dd.len()];
        for (j, c) in coeffs.iter().enumerate() {
            if j + 1 < next.len() {
                next[j + 1] += c;
            }
            next[j] -= c * &xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    if coeffs.iter().any(|c| !c.is_integer()) {
        return Err("interpolant has non-integral coefficients".into());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.to_integer()).collect();
    let poly = PoincarePoly::trimmed(ints);
    for (q, c) in &samples[bound + 1..] {
        if poly.eval(*q as u64) != *c {
            return Err(format!("count {c} at q = {q} does not fit the interpolant"));
        }
    }
    if poly.coeffs.iter().any(|c| c.is_negative()) {
        return Err(format!("interpolant {} has a negative coefficient", poly.to_laurent()));
    }
    let zeros = samples.iter().filter(|(_, c)| c.is_zero()).count();
    if zeros != 0 && zeros != samples.len() {
        return Err("emptiness depends on q".into());
    }
    Ok(poly)
}

/// Poincare polynomial of `pi_y^{-1}(x_lambda)` from counts at `primes` (the last two held out).
pub fn poincare_fiber(
    catalog: &QuiverCatalog,
    lambda: &KostantPartition,
    y: &FlagType,
    primes: &[u32],
    budget: u64,
) -> Result<FiberPoincare> {
    let q = catalog.quiver();
    let n = q.num_vertices();
    let mult = catalog.mult_of(lambda)?;
    let rep = catalog.orbit_rep(&mult);
    let nu = y.weight(n);
    if rep.dimvector() != nu {
        return Err(Error::WeightMismatch(format!("orbit of weight {} for flag of weight {nu}", rep.dimvector())));
    }
    let bound = degree_bound(y, n);
    if primes.len() < bound + 3 {
        return Err(Error::Config(format!("{} sample prime powers given, {} needed", primes.len(), bound + 3)));
    }
    let mut samples = Vec::with_capacity(primes.len());
    for &pq in primes {
        let f = GaloisField::new(pq)?;
        let x = rep.reduce(&f);
        samples.push((pq, FiberCounter::with_catalog(&f, catalog, budget).count(&x, y)?));
    }
    Ok(fiber_from_samples(q, &nu, y, lambda, &rep.maps, samples, bound))
}

fn fiber_from_samples(
    q: &QuiverData,
    nu: &DimVector,
    y: &FlagType,
    lambda: &KostantPartition,
    rep: &[Vec<Vec<i64>>],
    samples: Vec<(u32, BigInt)>,
    bound: usize,
) -> FiberPoincare {
    let held_out = samples.iter().rev().take(2).map(|s| s.0).collect();
    let (poly, alert) = match interpolate_counts(&samples, bound) {
        Ok(p) => (Some(p), None),
        Err(reason) => (
            None,
            Some(EvennessAlert {
                quiver: q.to_json(),
                nu: nu.clone(),
                y: y.clone(),
                lambda: lambda.clone(),
                representative: rep.to_vec(),
                samples: samples.clone(),
                reason,
            }),
        ),
    };
    FiberPoincare {
        nu: nu.clone(),
        y: y.clone(),
        lambda: lambda.clone(),
        degree_bound: bound,
        samples,
        held_out,
        poly,
        alert,
    }
}

/// Which flag types an evenness scan visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlagSelection {
    All,
    /// Only `i^(a)`-free types, i.e. sequences in `I^nu`.
    Sequences,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanConfig {
    pub nu_cap: u32,
    /// At least this many prime powers per fiber (more when the degree bound needs them).
    pub min_primes: usize,
    pub budget: u64,
    pub flags: FlagSelection,
    pub flag_cap: usize,
    pub orbit_cap: usize,
    /// Compare with the cell recursion on type A quivers.
    pub cell_check: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            nu_cap: 3,
            min_primes: 5,
            budget: DEFAULT_BUDGET,
            flags: FlagSelection::All,
            flag_cap: 100_000,
            orbit_cap: 100_000,
            cell_check: true,
        }
    }
}

/// One fiber of a scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanCell {
    pub fiber: FiberPoincare,
    pub orbit_dim: i64,
    pub dim_ftilde: i64,
    /// Cell recursion polynomial (type A only).
    pub cells: Option<PoincarePoly>,
    /// Set when the fiber could not be counted within budget.
    pub budget_exhausted: bool,
}

impl ScanCell {
    pub fn cells_agree(&self) -> Option<bool> {
        self.cells.as_ref().map(|c| Some(c) == self.fiber.poly.as_ref())
    }

    /// `deg P <= dim F~_y - dim O_lambda` for nonempty fibers.
    pub fn dimension_ok(&self) -> bool {
        match self.fiber.poly.as_ref().and_then(|p| p.degree()) {
            Some(d) => d as i64 <= self.dim_ftilde - self.orbit_dim,
            None => true,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvennessReport {
    pub quiver: String,
    pub nu_cap: u32,
    pub cells: Vec<ScanCell>,
    pub alerts: Vec<EvennessAlert>,
    pub cell_mismatches: usize,
    pub dimension_defects: usize,
    pub budget_exhausted: usize,
    pub verdict: String,
    pub note: String,
}

impl EvennessReport {
    pub fn even_consistent(&self) -> bool {
        self.alerts.is_empty() && self.cell_mismatches == 0 && self.dimension_defects == 0 && self.budget_exhausted == 0
    }
}

/// Counts every fiber of every `pi_y` over every orbit with `|nu| <= cap` and interpolates.
pub fn evenness_scan(catalog: &QuiverCatalog, cfg: &ScanConfig) -> Result<EvennessReport> {
    let q = catalog.quiver();
    let n = q.num_vertices();
    let mut tasks = Vec::new();
    for nu in dim_vectors_up_to(n, cfg.nu_cap) {
        let flags: Vec<FlagType> = enumerate_flag_types(&nu, cfg.flag_cap)?
            .into_iter()
            .filter(|y| cfg.flags == FlagSelection::All || y.is_sequence())
            .collect();
        for orbit in catalog.orbits(&nu, cfg.orbit_cap)? {
            tasks.push((nu.clone(), orbit, flags.clone()));
        }
    }
    let results: Vec<Result<Vec<ScanCell>>> = tasks
        .par_iter()
        .map(|(nu, orbit, flags)| scan_orbit(catalog, cfg, nu, orbit, flags))
        .collect();
    let mut cells = Vec::new();
    for r in results {
        cells.extend(r?);
    }
    let alerts: Vec<EvennessAlert> = cells.iter().filter_map(|c| c.fiber.alert.clone()).collect();
    let cell_mismatches = cells.iter().filter(|c| c.cells_agree() == Some(false)).count();
    let dimension_defects = cells.iter().filter(|c| !c.dimension_ok()).count();
    let budget_exhausted = cells.iter().filter(|c| c.budget_exhausted).count();
    let mut report = EvennessReport {
        quiver: q.type_name(),
        nu_cap: cfg.nu_cap,
        cells,
        alerts,
        cell_mismatches,
        dimension_defects,
        budget_exhausted,
        verdict: String::new(),
        note: "polynomial point counts are evidence of evenness; they imply it only when the fibers have \
               torsion-free cohomology (e.g. affine pavings, as in type A)"
            .into(),
    };
    report.verdict = if report.even_consistent() {
        "even-consistent".into()
    } else if !report.alerts.is_empty() {
        "EVENNESS-ALERT".into()
    } else {
        "incomplete".into()
    };
    Ok(report)
}

fn scan_orbit(
    catalog: &QuiverCatalog,
    cfg: &ScanConfig,
    nu: &DimVector,
    orbit: &crate::quiver::OrbitData,
    flags: &[FlagType],
) -> Result<Vec<ScanCell>> {
    let q = catalog.quiver();
    let n = q.num_vertices();
    let rep = catalog.orbit_rep(&orbit.mult);
    let need = flags.iter().map(|y| degree_bound(y, n) + 3).max().unwrap_or(0).max(cfg.min_primes);
    let primes = prime_powers(need);
    if primes.len() < need {
        return Err(Error::Config(format!("not enough prime powers below {MAX_FIELD_SIZE}")));
    }
    let fields: Vec<GaloisField> = primes.iter().map(|&p| GaloisField::new(p)).collect::<Result<_>>()?;
    let reps: Vec<Rep<u16>> = fields.iter().map(|f| rep.reduce(f)).collect();
    let mut counters: Vec<FiberCounter> = fields.iter().map(|f| FiberCounter::with_catalog(f, catalog, cfg.budget)).collect();
    let typea = cfg.cell_check && q.is_type_a();
    let mut out = Vec::with_capacity(flags.len());
    for y in flags {
        let k = (degree_bound(y, n) + 3).max(cfg.min_primes);
        let mut samples = Vec::with_capacity(k);
        let mut exhausted = false;
        for j in 0..k {
            match counters[j].count(&reps[j], y) {
                Ok(c) => samples.push((primes[j], c)),
                Err(Error::BudgetExceeded(_)) => {
                    exhausted = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let fiber = if exhausted {
            FiberPoincare {
                nu: nu.clone(),
                y: y.clone(),
                lambda: orbit.partition.clone(),
                degree_bound: degree_bound(y, n),
                samples,
                held_out: Vec::new(),
                poly: None,
                alert: None,
            }
        } else {
            fiber_from_samples(q, nu, y, &orbit.partition, &rep.maps, samples, degree_bound(y, n))
        };
        let cells = if typea { Some(typea_cell_recursion(q, &rep, y)?) } else { None };
        out.push(ScanCell {
            fiber,
            orbit_dim: orbit.dim,
            dim_ftilde: dim_ftilde(q, y),
            cells,
            budget_exhausted: exhausted,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
