use num_traits::ToPrimitive;

use super::DimVector;
use crate::ffield::combinations;
use crate::linalg::{inverse, rank, Field, Matrix, Rationals};
use crate::{Error, Result};

/// A quiver representation with matrices over some coefficient type.
///
/// `maps[h]` is the matrix of arrow `h` acting on column vectors, with
/// `dims[target]` rows and `dims[source]` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep<E> {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix<E>>,
}

/// An integral representation; reduced to any field on demand.
pub type Representation = Rep<i64>;

impl<E: Clone> Rep<E> {
    pub fn dimvector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as u32).collect())
    }

    pub fn is_consistent(&self, arrows: &[(usize, usize)]) -> bool {
        self.maps.len() == arrows.len()
            && arrows.iter().zip(&self.maps).all(|(&(s, t), m)| {
                m.len() == self.dims[t] && m.iter().all(|row| row.len() == self.dims[s])
            })
    }
}

impl Representation {
    pub fn zero(dims: Vec<usize>, arrows: &[(usize, usize)]) -> Self {
        let maps = arrows
            .iter()
            .map(|&(s, t)| vec![vec![0; dims[s]]; dims[t]])
            .collect();
        Rep { dims, maps }
    }

    pub fn simple(n: usize, i: usize, arrows: &[(usize, usize)]) -> Self {
        let mut dims = vec![0; n];
        dims[i] = 1;
        Self::zero(dims, arrows)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self, arrows: &[(usize, usize)]) -> Self {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = arrows
            .iter()
            .enumerate()
            .map(|(h, &(s, t))| {
                let mut m = vec![vec![0; dims[s]]; dims[t]];
                for (r, row) in self.maps[h].iter().enumerate() {
                    m[r][..self.dims[s]].copy_from_slice(row);
                }
                for (r, row) in other.maps[h].iter().enumerate() {
                    m[self.dims[t] + r][self.dims[s]..].copy_from_slice(row);
                }
                m
            })
            .collect();
        Rep { dims, maps }
    }

    /// Reduction of the integral matrices into a field.
    pub fn reduce<F: Field>(&self, f: &F) -> Rep<F::Elem> {
        Rep {
            dims: self.dims.clone(),
            maps: self
                .maps
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(|&x| f.from_int(x)).collect()).collect())
                .collect(),
        }
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.maps
            .iter()
            .flatten()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or(0)
    }
}

/// `dim Hom(M, N)`, as the solution space of `f_{h''} M_h = N_h f_{h'}` for all arrows.
pub fn hom_dim<F: Field>(f: &F, arrows: &[(usize, usize)], m: &Rep<F::Elem>, n: &Rep<F::Elem>) -> usize {
    let nv = m.dims.len();
    let mut offset = vec![0usize; nv + 1];
    for i in 0..nv {
        offset[i + 1] = offset[i] + n.dims[i] * m.dims[i];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return 0;
    }
    // f_i[r][c] lives at offset[i] + r * m.dims[i] + c
    let var = |i: usize, r: usize, c: usize| offset[i] + r * m.dims[i] + c;
    let mut eqs: Matrix<F::Elem> = Vec::new();
    for (h, &(s, t)) in arrows.iter().enumerate() {
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..m.dims[t] {
                    let coef = &m.maps[h][k][c];
                    if !f.is_zero(coef) {
                        let v = var(t, r, k);
                        row[v] = f.add(&row[v], coef);
                    }
                }
                for k in 0..n.dims[s] {
                    let coef = &n.maps[h][r][k];
                    if !f.is_zero(coef) {
                        let v = var(s, k, c);
                        row[v] = f.sub(&row[v], coef);
                    }
                }
                eqs.push(row);
            }
        }
    }
    unknowns - if eqs.is_empty() { 0 } else { rank(f, &eqs) }
}

fn det_i128(m: &[Vec<i64>]) -> i128 {
    // fraction-free Bareiss elimination
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// The reflection functor at a source `k`, over Z.
///
/// The stacked map `A: V_k -> (+)_h V_{h''}` must have a `d x d` minor equal to
/// +-1 (true for the Dynkin indecomposables produced by [`super::QuiverCatalog`]),
/// so the cokernel is computed integrally and stays valid after reduction mod any p.
/// Returns the reflected arrow list together with the new representation.
pub(crate) fn reflect_at_source(
    arrows: &[(usize, usize)],
    rep: &Representation,
    k: usize,
) -> Result<(Vec<(usize, usize)>, Representation)> {
    let at_k: Vec<usize> = (0..arrows.len()).filter(|&h| arrows[h].0 == k).collect();
    if arrows.iter().any(|&(_, t)| t == k) {
        return Err(Error::Defect(format!("vertex {k} is not a source")));
    }
    let d = rep.dims[k];
    let mut stacked: Matrix<i64> = Vec::new();
    let mut block_start = Vec::new();
    for &h in &at_k {
        block_start.push(stacked.len());
        stacked.extend(rep.maps[h].iter().cloned());
    }
    let big_n = stacked.len();
    if big_n < d {
        return Err(Error::Defect("reflection of a non-injective map".into()));
    }
    let chosen = if d == 0 {
        Vec::new()
    } else {
        combinations(big_n, d)
            .into_iter()
            .find(|rows| {
                let sub: Vec<Vec<i64>> = rows.iter().map(|&r| stacked[r].clone()).collect();
                det_i128(&sub).abs() == 1
            })
            .ok_or_else(|| Error::Defect("no unimodular minor for an integral cokernel".into()))?
    };
    let complement: Vec<usize> = (0..big_n).filter(|r| !chosen.contains(r)).collect();
    // P = [I on complement columns, -A_C A_R^{-1} on chosen columns]
    let q = Rationals;
    let a_r: Matrix<_> = chosen
        .iter()
        .map(|&r| stacked[r].iter().map(|&x| q.from_int(x)).collect())
        .collect();
    let a_r_inv = if d == 0 { Vec::new() } else { inverse(&q, &a_r).expect("unimodular") };
    let mut p = vec![vec![0i64; big_n]; complement.len()];
    for (row, &c) in complement.iter().enumerate() {
        p[row][c] = 1;
        for (j, &r) in chosen.iter().enumerate() {
            let mut acc = num_rational::BigRational::from_integer(0.into());
            for l in 0..d {
                acc += q.from_int(stacked[c][l]) * &a_r_inv[l][j];
            }
            p[row][r] = -acc.to_integer().to_i64().expect("small integral cokernel entries");
        }
    }
    let mut new_arrows = arrows.to_vec();
    let mut new_rep = rep.clone();
    new_rep.dims[k] = complement.len();
    for (b, &h) in at_k.iter().enumerate() {
        let t = arrows[h].1;
        new_arrows[h] = (t, k);
        new_rep.maps[h] = p
            .iter()
            .map(|row| row[block_start[b]..block_start[b] + rep.dims[t]].to_vec())
            .collect();
    }
    Ok((new_arrows, new_rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    #[test]
    fn hom_dims_on_a2() {
        let arrows = vec![(0usize, 1usize)];
        let s1 = Representation::simple(2, 0, &arrows);
        let s2 = Representation::simple(2, 1, &arrows);
        let p = Rep { dims: vec![1, 1], maps: vec![vec![vec![1]]] };
        let q = Rationals;
        let hd = |a: &Representation, b: &Representation| hom_dim(&q, &arrows, &a.reduce(&q), &b.reduce(&q));
        assert_eq!(hd(&s1, &s1), 1);
        assert_eq!(hd(&s1, &s2), 0);
        assert_eq!(hd(&p, &s2), 0);
        assert_eq!(hd(&p, &s1), 1);
        assert_eq!(hd(&s2, &p), 1);
        assert_eq!(hd(&p, &p), 1);
        let zero_sum = s1.direct_sum(&s2, &arrows);
        assert_eq!(hd(&zero_sum, &zero_sum), 2);
    }

    #[test]
    fn source_reflection_of_simple() {
        // A2: 1 -> 2 with 1 a source; reflecting S_2 at 1 gives the interval module
        let arrows = vec![(0usize, 1usize)];
        let s2 = Representation::simple(2, 1, &arrows);
        let (new_arrows, m) = reflect_at_source(&arrows, &s2, 0).unwrap();
        assert_eq!(new_arrows, vec![(1, 0)]);
        assert_eq!(m.dims, vec![1, 1]);
        assert_eq!(m.maps[0][0][0].abs(), 1);
        let f = PrimeField { p: 5 };
        let r = m.reduce(&f);
        assert_eq!(hom_dim(&f, &new_arrows, &r, &r), 1);
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(det_i128(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(det_i128(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i128(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
    }
}
