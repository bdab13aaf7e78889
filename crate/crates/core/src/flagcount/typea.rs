//! Fibers of `pi_y` for type A quivers via affine pavings.
//!
//! The fiber over `x` is cut into strata `F_D` by the intersection dimensions of
//! the flag with a flag `W` in the last vertex space. Deleting that vertex maps
//! `F_D` onto strata `F'_{D'}` of a smaller quiver, and each fiber of this map is
//! a space `Y` of partial flags containing a fixed flag, in fixed relative
//! position to `W`. Points of `Y` are counted by peeling off one step at a time,
//! each step being a Schubert-type stratum `X_{v,d,k}` of a Grassmannian.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::PoincarePoly;
use crate::linalg::{mat_mul, nullspace, transpose, Field, Rationals};
use crate::qlaurent::{eval_at, gaussian_binomial, LaurentPoly};
use crate::quiver::{FlagType, QuiverData, Rep, Representation};
use crate::{Error, Result};

type QMat = Vec<Vec<BigRational>>;
type Strata = BTreeMap<Vec<Vec<u32>>, LaurentPoly>;

/// `#X_{v,d,k}` as a polynomial in `q`: `k`-subspaces `U` with `dim U cap W_a = d_a`, where the
/// flag `W` has steps `v`. Zero when the data is inconsistent.
pub fn typea_strata_poly(v: &[u32], d: &[u32], k: u32) -> LaurentPoly {
    if v.len() != d.len() || d.last().copied().unwrap_or(0) != k {
        return LaurentPoly::zero();
    }
    let mut out = LaurentPoly::one();
    let (mut c, mut dprev) = (0u32, 0u32);
    for (&va, &da) in v.iter().zip(d) {
        if da < dprev || da - dprev > va {
            return LaurentPoly::zero();
        }
        let e = da - dprev;
        out = &out * &gaussian_binomial(va, e).shift((e * (c - dprev)) as i64);
        c += va;
        dprev = da;
    }
    out
}

pub fn typea_strata_count(v: &[u32], d: &[u32], k: u32, q: u64) -> BigInt {
    eval_at(&typea_strata_poly(v, d, k), q)
}

/// Points of `Y`: flags `U_1 ⊂ ... ⊂ U_s = W` with steps `v`, `phi_a ⊂ U_a` and
/// `dim U_a cap psi_b = dd[a][b]`, where `rel[a][b] = dim phi_a cap psi_b`.
fn y_poly(phi: &[u32], psi: &[u32], rel: &[Vec<u32>], v: &[u32], dd: &[Vec<u32>]) -> LaurentPoly {
    let s = phi.len();
    let t = psi.len();
    let total = psi[t - 1];
    let u: Vec<u32> = v.iter().scan(0, |acc, &x| {
        *acc += x;
        Some(*acc)
    }).collect();
    if u[s - 1] != total || (0..s).any(|a| phi[a] > u[a] || dd[a][t - 1] != u[a]) || dd[s - 1] != psi {
        return LaurentPoly::zero();
    }
    if s == 1 {
        return LaurentPoly::one();
    }
    // U_1 inside U_2 / phi_1, against the flag (psi_b cap U_2 + phi_1) / phi_1
    let mut g = Vec::with_capacity(t);
    let mut target = Vec::with_capacity(t);
    for b in 0..t {
        if rel[0][b] > dd[1][b] || rel[0][b] > dd[0][b] {
            return LaurentPoly::zero();
        }
        g.push(dd[1][b] - rel[0][b]);
        target.push(dd[0][b] - rel[0][b]);
    }
    let mut steps = Vec::with_capacity(t);
    let mut prev = 0;
    for &gb in &g {
        if gb < prev {
            return LaurentPoly::zero();
        }
        steps.push(gb - prev);
        prev = gb;
    }
    let x = typea_strata_poly(&steps, &target, u[0] - phi[0]);
    if x.is_zero() {
        return x;
    }
    let mut v2 = vec![v[0] + v[1]];
    v2.extend_from_slice(&v[2..]);
    &x * &y_poly(&phi[1..], psi, &rel[1..], &v2, &dd[1..])
}

/// All `m x k` matrices `D` of intersection dimensions that a flag with cumulative dimensions
/// `u` can have against a flag with dimensions `w`, given the lower bounds `rel`.
fn candidate_matrices(u: &[u32], w: &[u32], rel: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let m = u.len();
    let k = w.len();
    let mut out = Vec::new();
    let mut cur = vec![vec![0u32; k]; m];
    fn rec(
        pos: usize,
        u: &[u32],
        w: &[u32],
        rel: &[Vec<u32>],
        cur: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        let (m, k) = (u.len(), w.len());
        if pos == m * k {
            out.push(cur.clone());
            return;
        }
        let (r, s) = (pos / k, pos % k);
        let mut lo = rel[r][s].max((u[r] + w[s]).saturating_sub(w[k - 1]));
        let mut hi = u[r].min(w[s]);
        if r > 0 {
            lo = lo.max(cur[r - 1][s]);
            hi = hi.min(cur[r - 1][s] + u[r] - u[r - 1]);
        }
        if s > 0 {
            lo = lo.max(cur[r][s - 1]);
            hi = hi.min(cur[r][s - 1] + w[s] - w[s - 1]);
        }
        if s == k - 1 {
            lo = lo.max(u[r]);
            hi = hi.min(u[r]);
        }
        if r == m - 1 {
            lo = lo.max(w[s]);
            hi = hi.min(w[s]);
        }
        for d in lo..=hi {
            cur[r][s] = d;
            rec(pos + 1, u, w, rel, cur, out);
        }
        cur[r][s] = 0;
    }
    rec(0, u, w, rel, &mut cur, &mut out);
    out
}

/// Orders the vertices of each type A component along its path, components one after another.
fn path_order(q: &QuiverData) -> Result<Vec<usize>> {
    let n = q.num_vertices();
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in q.arrows() {
        adj[s].push(t);
        adj[t].push(s);
    }
    if adj.iter().any(|a| a.len() > 2) {
        return Err(Error::InvalidQuiver(format!("{} is not of type A", q.type_name())));
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] || adj[start].len() == 2 {
            continue;
        }
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            seen[cur] = true;
            order.push(cur);
            match adj[cur].iter().find(|&&v| v != prev) {
                Some(&next) if !seen[next] => {
                    prev = cur;
                    cur = next;
                }
                _ => break,
            }
        }
    }
    if order.len() != n {
        return Err(Error::InvalidQuiver(format!("{} contains a cycle", q.type_name())));
    }
    Ok(order)
}

fn full(dim: usize) -> QMat {
    let f = Rationals;
    (0..dim).map(|i| (0..dim).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
}

/// Annihilator of a subspace of `F^dim` in the dual space (dual basis coordinates).
fn annihilator(basis: &QMat, dim: usize) -> QMat {
    nullspace(&Rationals, basis, dim)
}

/// `x^{-1}(w)` for `x: F^cols -> F^rows`.
fn preimage(x: &QMat, w: &QMat, rows: usize, cols: usize) -> QMat {
    let ann = annihilator(w, rows);
    if ann.is_empty() {
        return full(cols);
    }
    nullspace(&Rationals, &mat_mul(&Rationals, &ann, x), cols)
}

struct Problem {
    arrows: Vec<(usize, usize)>,
    x: Rep<BigRational>,
    order: Vec<usize>,
}

impl Problem {
    fn dual(&self) -> Problem {
        Problem {
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
            x: Rep {
                dims: self.x.dims.clone(),
                maps: self
                    .x
                    .maps
                    .iter()
                    .zip(&self.arrows)
                    .map(|(m, &(s, t))| transpose(m, self.x.dims[t], self.x.dims[s]))
                    .collect(),
            },
            order: self.order.clone(),
        }
    }

    /// Strata `F_D` of the fiber for the first `n` vertices of the path, relative to the flag `w`
    /// (the last entry is all of `V_{order[n-1]}`). Steps at later vertices have size zero.
    fn strata(&self, n: usize, steps: &[(usize, u32)], w: &[QMat]) -> Result<Strata> {
        let last = self.order[n - 1];
        let big_n = self.x.dims[last];
        let k = w.len();
        let m = steps.len();
        let wd: Vec<u32> = w.iter().map(|b| b.len() as u32).collect();
        let v: Vec<u32> = steps.iter().map(|&(i, a)| if i == last { a } else { 0 }).collect();
        let u: Vec<u32> = v.iter().scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        }).collect();

        let mut out = Strata::new();
        if n == 1 {
            let mut phi = vec![0u32; m];
            phi[m - 1] = big_n as u32;
            let mut rel = vec![vec![0u32; k]; m];
            rel[m - 1] = wd.clone();
            for dd in candidate_matrices(&u, &wd, &rel) {
                let p = y_poly(&phi, &wd, &rel, &v, &dd);
                if !p.is_zero() {
                    *out.entry(dd).or_insert_with(LaurentPoly::zero) += &p;
                }
            }
            return Ok(out);
        }

        let prev = self.order[n - 2];
        let arrow = self
            .arrows
            .iter()
            .position(|&(s, t)| (s, t) == (prev, last) || (s, t) == (last, prev));
        if let Some(h) = arrow {
            if self.arrows[h] == (last, prev) {
                return self.strata_by_duality(n, steps, w);
            }
        }
        let mdim = self.x.dims[prev];
        let xh: QMat = match arrow {
            Some(h) => self.x.maps[h].clone(),
            None => vec![vec![Rationals.zero(); mdim]; big_n],
        };
        // W'_1 = ker x, W'_{r+1} = x^{-1}(W_r), W'_{k+1} = V_prev
        let mut w2 = Vec::with_capacity(k + 1);
        w2.push(preimage(&xh, &Vec::new(), big_n, mdim));
        for wr in &w[..k - 1] {
            w2.push(preimage(&xh, wr, big_n, mdim));
        }
        w2.push(full(mdim));
        let steps2: Vec<(usize, u32)> = steps.iter().map(|&(i, a)| (i, if i == last { 0 } else { a })).collect();
        let sub = self.strata(n - 1, &steps2, &w2)?;

        for (d2, p2) in &sub {
            // relative position of phi_a = x(V'^a cap V_prev) and W_b, from D' alone
            let mut phi = vec![0u32; m];
            let mut rel = vec![vec![0u32; k]; m];
            for a in 0..m - 1 {
                phi[a] = d2[a][k] - d2[a][0];
                for b in 0..k {
                    rel[a][b] = d2[a][b + 1] - d2[a][0];
                    if rel[a][b] > phi[a] || rel[a][b] > wd[b] {
                        return Err(Error::Defect(format!("inconsistent relative position from {d2:?}")));
                    }
                }
            }
            phi[m - 1] = big_n as u32;
            rel[m - 1] = wd.clone();
            for dd in candidate_matrices(&u, &wd, &rel) {
                let p = y_poly(&phi, &wd, &rel, &v, &dd);
                if !p.is_zero() {
                    *out.entry(dd).or_insert_with(LaurentPoly::zero) += &(p2 * &p);
                }
            }
        }
        Ok(out)
    }

    /// Arrow `last -> prev`: pass to the dual representation and the reversed flag type.
    fn strata_by_duality(&self, n: usize, steps: &[(usize, u32)], w: &[QMat]) -> Result<Strata> {
        let last = self.order[n - 1];
        let big_n = self.x.dims[last] as u32;
        let k = w.len();
        let m = steps.len();
        let wd: Vec<u32> = w.iter().map(|b| b.len() as u32).collect();
        // W*_s = ann(W_{k-s}), with W_0 = 0
        let wstar: Vec<QMat> = (1..=k)
            .map(|s| if s == k { full(big_n as usize) } else { annihilator(&w[k - s - 1], big_n as usize) })
            .collect();
        let rev: Vec<(usize, u32)> = steps.iter().rev().copied().collect();
        let dual = self.dual().strata(n, &rev, &wstar)?;
        let mut out = Strata::new();
        for (ds, p) in dual {
            // d*_{r*,s*} = N - d_{m-r*,k} - w_{k-s*} + d_{m-r*,k-s*}  (1-based)
            let mut dd = vec![vec![0u32; k]; m];
            dd[m - 1] = wd.clone();
            for r in 1..m {
                dd[r - 1][k - 1] = big_n - ds[m - r - 1][k - 1];
                for s in 1..k {
                    dd[r - 1][s - 1] = ds[m - r - 1][k - s - 1] + dd[r - 1][k - 1] + wd[s - 1] - big_n;
                }
            }
            *out.entry(dd).or_insert_with(LaurentPoly::zero) += &p;
        }
        Ok(out)
    }
}

/// Poincare polynomial of `pi_y^{-1}(x)` for a type A quiver, summed over the cells.
pub fn typea_cell_recursion(q: &QuiverData, x: &Representation, y: &FlagType) -> Result<PoincarePoly> {
    if y.weight(q.num_vertices()) != x.dimvector() {
        return Err(Error::WeightMismatch(format!("flag weight differs from {}", x.dimvector())));
    }
    if y.is_empty() {
        return Ok(PoincarePoly { coeffs: vec![1.into()] });
    }
    let prob = Problem {
        arrows: q.arrows().to_vec(),
        x: x.reduce(&Rationals),
        order: path_order(q)?,
    };
    let n = prob.order.len();
    let last = prob.order[n - 1];
    let strata = prob.strata(n, &y.steps, &[full(x.dims[last])])?;
    let total = strata.values().fold(LaurentPoly::zero(), |acc, p| &acc + p);
    PoincarePoly::from_laurent(&total)
        .ok_or_else(|| Error::Defect(format!("cell recursion produced {total}, not a Poincare polynomial")))
}
