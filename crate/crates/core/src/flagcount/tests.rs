use num_bigint::BigInt;

use super::*;
use crate::quiver::Representation;

fn zero_rep(q: &QuiverData, dims: Vec<usize>) -> Representation {
    Representation::zero(dims, q.arrows())
}

#[test]
fn small_fiber_counts() {
    let a2 = QuiverData::a(2);
    let y = FlagType::from_seq(&[0, 1]);
    for pq in [2u32, 3, 4, 5] {
        let f = GaloisField::new(pq).unwrap();
        let x0 = zero_rep(&a2, vec![1, 1]).reduce(&f);
        assert_eq!(count_fiber(&f, a2.arrows(), &x0, &y, 1000).unwrap(), BigInt::from(1));
        let mut xg = zero_rep(&a2, vec![1, 1]);
        xg.maps[0][0][0] = 1;
        assert_eq!(count_fiber(&f, a2.arrows(), &xg.reduce(&f), &y, 1000).unwrap(), BigInt::from(0));
        // the other order always works
        let y2 = FlagType::from_seq(&[1, 0]);
        assert_eq!(count_fiber(&f, a2.arrows(), &xg.reduce(&f), &y2, 1000).unwrap(), BigInt::from(1));
    }
    let a1 = QuiverData::a(1);
    let f = GaloisField::new(7).unwrap();
    let x = zero_rep(&a1, vec![2]).reduce(&f);
    assert_eq!(count_fiber(&f, a1.arrows(), &x, &FlagType::from_seq(&[0, 0]), 1000).unwrap(), BigInt::from(8));
}

#[test]
fn budget_is_enforced() {
    // a nonzero map forces enumeration instead of the closed formula
    let a2 = QuiverData::a(2);
    let mut x = zero_rep(&a2, vec![3, 1]);
    x.maps[0][0][0] = 1;
    let f = GaloisField::new(3).unwrap();
    let y = FlagType::from_seq(&[0, 0, 0, 1]);
    assert!(matches!(count_fiber(&f, a2.arrows(), &x.reduce(&f), &y, 3), Err(Error::BudgetExceeded(_))));
    assert!(count_fiber(&f, a2.arrows(), &x.reduce(&f), &y, 1000).is_ok());
}

#[test]
fn dimensions() {
    let a1 = QuiverData::a(1);
    let y = FlagType::from_seq(&[0, 0]);
    assert_eq!(count_flagvar(&y, 1, 5), BigInt::from(6));
    assert_eq!(dim_ftilde(&a1, &y), 1);
    let a2 = QuiverData::a(2);
    assert_eq!(dim_ftilde(&a2, &FlagType::from_seq(&[0, 1])), 0);
    assert_eq!(dim_ftilde(&a2, &FlagType::from_seq(&[1, 0])), 1);
    // one step: F_y is a point and F~_y = E_V
    let d4 = QuiverData::d(4);
    let nu = DimVector(vec![1, 2, 1, 1]);
    let y = FlagType { steps: vec![(1, 2)] };
    assert_eq!(dim_flagvar(&y, 4), 0);
    let one_step = |i: usize| FlagType { steps: vec![(i, nu.0[i])] };
    // with a single vertex weight the flag is a point and x = 0 is forced
    assert_eq!(dim_ftilde(&d4, &one_step(1)), 0);
}

#[test]
fn interpolation() {
    let samples: Vec<(u32, BigInt)> = [2u32, 3, 4, 5, 7].iter().map(|&q| (q, BigInt::from(q + 1))).collect();
    let p = interpolate_counts(&samples, 1).unwrap();
    assert_eq!(p.to_string(), "1 + t");
    let p = interpolate_counts(&samples, 2).unwrap();
    assert_eq!(p.to_string(), "1 + t");
    let zeros: Vec<(u32, BigInt)> = [2u32, 3, 4].iter().map(|&q| (q, BigInt::from(0))).collect();
    assert!(interpolate_counts(&zeros, 0).unwrap().is_zero());
    // 2^q is not polynomial
    let bad: Vec<(u32, BigInt)> = [2u32, 3, 4, 5, 7].iter().map(|&q| (q, BigInt::from(1u64 << q))).collect();
    assert!(interpolate_counts(&bad, 2).is_err());
    // q - 1 has a coefficient of the wrong sign
    let neg: Vec<(u32, BigInt)> = [2u32, 3, 4, 5].iter().map(|&q| (q, BigInt::from(q - 1))).collect();
    assert!(interpolate_counts(&neg, 1).is_err());
}

#[test]
fn poincare_examples() {
    let a1 = QuiverCatalog::new(&QuiverData::a(1)).unwrap();
    let lam = a1.orbits(&DimVector(vec![2]), 10).unwrap()[0].partition.clone();
    let p = poincare_fiber(&a1, &lam, &FlagType::from_seq(&[0, 0]), &prime_powers(5), DEFAULT_BUDGET).unwrap();
    assert_eq!(p.poly.unwrap().to_string(), "1 + t");

    let a2 = QuiverCatalog::new(&QuiverData::a(2)).unwrap();
    let orbits = a2.orbits(&DimVector(vec![1, 1]), 10).unwrap();
    let y = FlagType::from_seq(&[0, 1]);
    // the zero orbit {a1, a2} and the open orbit {a1 + a2}
    let zero = orbits.iter().find(|o| o.partition.num_summands() == 2).unwrap();
    let open = orbits.iter().find(|o| o.partition.num_summands() == 1).unwrap();
    let p = poincare_fiber(&a2, &zero.partition, &y, &prime_powers(5), DEFAULT_BUDGET).unwrap();
    assert_eq!(p.poly.unwrap().to_string(), "1");
    let p = poincare_fiber(&a2, &open.partition, &y, &prime_powers(5), DEFAULT_BUDGET).unwrap();
    assert!(p.poly.unwrap().is_zero());
}

#[test]
fn strata_counts_match_enumeration() {
    use crate::ffield::subspaces;
    use crate::linalg::rank;
    // Gr_1(F_q^2)
    assert_eq!(typea_strata_count(&[2], &[1], 1, 3), BigInt::from(4));
    // d forces U = W_1
    assert_eq!(typea_strata_count(&[2, 1], &[2, 2], 2, 5), BigInt::from(1));
    for pq in [2u32, 3] {
        let f = GaloisField::new(pq).unwrap();
        for v in [vec![1u32, 2, 1], vec![2, 2], vec![1, 1, 1, 1]] {
            let n: u32 = v.iter().sum();
            let ident: Vec<Vec<u16>> = (0..n as usize).map(|i| (0..n as usize).map(|j| u16::from(i == j)).collect()).collect();
            for k in 0..=n {
                let mut hist: std::collections::BTreeMap<Vec<u32>, u64> = Default::default();
                for u in subspaces(&f, &ident, k as usize) {
                    let mut d = Vec::new();
                    let mut c = 0usize;
                    for &va in &v {
                        c += va as usize;
                        let mut both = u.clone();
                        both.extend(ident[..c].iter().cloned());
                        let sum = if both.is_empty() { 0 } else { rank(&f, &both) };
                        d.push((u.len() + c - sum) as u32);
                    }
                    *hist.entry(d).or_default() += 1;
                }
                for (d, cnt) in hist {
                    assert_eq!(typea_strata_count(&v, &d, k, pq as u64), BigInt::from(cnt), "v={v:?} d={d:?}");
                }
            }
        }
    }
}

#[test]
fn cell_recursion_small() {
    let a2 = QuiverData::a(2);
    let x0 = zero_rep(&a2, vec![1, 1]);
    let y = FlagType::from_seq(&[0, 1]);
    assert_eq!(typea_cell_recursion(&a2, &x0, &y).unwrap().to_string(), "1");
    let mut xg = x0.clone();
    xg.maps[0][0][0] = 1;
    assert!(typea_cell_recursion(&a2, &xg, &y).unwrap().is_zero());
    assert_eq!(typea_cell_recursion(&a2, &xg, &FlagType::from_seq(&[1, 0])).unwrap().to_string(), "1");
    let a1 = QuiverData::a(1);
    let p = typea_cell_recursion(&a1, &zero_rep(&a1, vec![3]), &FlagType::from_seq(&[0, 0, 0])).unwrap();
    assert_eq!(p.to_string(), "1 + 2t + 2t^2 + t^3");
}

#[test]
fn cell_recursion_matches_counts_a3() {
    for q in QuiverData::a(3).all_orientations() {
        let cat = QuiverCatalog::new(&q).unwrap();
        for nu in [DimVector(vec![1, 1, 1]), DimVector(vec![1, 2, 1]), DimVector(vec![2, 1, 0])] {
            for orbit in cat.orbits(&nu, 100).unwrap() {
                let rep = cat.orbit_rep(&orbit.mult);
                for y in enumerate_flag_types(&nu, 1000).unwrap() {
                    let cells = typea_cell_recursion(&q, &rep, &y).unwrap();
                    let pts = poincare_fiber(&cat, &orbit.partition, &y, &prime_powers(degree_bound(&y, 3) + 3), DEFAULT_BUDGET)
                        .unwrap();
                    assert_eq!(Some(&cells), pts.poly.as_ref(), "{} {nu} {y:?} {}", q.type_name(), orbit.partition);
                }
            }
        }
    }
}

#[test]
fn restriction_examples() {
    let a2 = QuiverData::a(2);
    assert_eq!(big_m(&a2, &DimVector(vec![1, 0]), &DimVector(vec![0, 1])), 1);
    let y = FlagType { steps: vec![(0, 3)] };
    assert_eq!(u_set(&y).len(), 4);
    let y = FlagType { steps: vec![(0, 2), (1, 1)] };
    assert_eq!(u_set(&y).len(), 6);
    // nu2 = 0: a single term (y, empty) with shift 0
    let nu = y.weight(2);
    let terms = res_class(&a2, &nu, &DimVector(vec![0, 0]), &y).unwrap();
    assert_eq!(terms, vec![ResTerm { y1: y.clone(), y2: FlagType { steps: vec![] }, shift: 0 }]);
    let a1 = QuiverData::a(1);
    let d = restriction_constants(&a1, &DimVector(vec![1]), &DimVector(vec![1]), &FlagType::from_seq(&[0, 0])).unwrap();
    let ms: Vec<i64> = d.pairs.iter().map(|p| p.m).collect();
    assert_eq!(ms, vec![0, 1]);
}

#[test]
fn res_matches_coproduct() {
    for q in [QuiverData::a(2), QuiverData::d(4)] {
        let qf = crate::qf::Qf::new(&q);
        let n = q.num_vertices();
        for nu in dim_vectors_up_to(n, 2) {
            for y in enumerate_flag_types(&nu, 1000).unwrap() {
                for chk in res_check(&qf, &y).unwrap() {
                    assert!(chk.matches, "{} {y:?} {} {}", q.type_name(), chk.nu1, chk.nu2);
                }
            }
        }
    }
}
