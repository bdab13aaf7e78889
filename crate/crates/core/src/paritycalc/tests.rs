use super::*;
use crate::qf::Qf;
use crate::qlaurent::qint;
use crate::quiver::QuiverData;

fn poly(c: &[i64]) -> PoincarePoly {
    PoincarePoly { coeffs: c.iter().map(|&x| BigInt::from(x)).collect() }
}

fn seq(s: &[usize]) -> FlagType {
    FlagType::from_seq(s)
}

#[test]
fn a2_two_orbits() {
    let cat = QuiverCatalog::new(&QuiverData::a(2)).unwrap();
    let ctx = ParityContext::new(&cat, &DimVector(vec![1, 1])).unwrap();
    assert_eq!(ctx.orbits().iter().map(|o| o.dim).collect::<Vec<_>>(), [0, 1]);
    let ij = ctx.stalk_table(&seq(&[0, 1])).unwrap();
    let ji = ctx.stalk_table(&seq(&[1, 0])).unwrap();
    assert_eq!(ij.entries, [poly(&[1]), poly(&[])]);
    assert_eq!(ji.entries, [poly(&[1]), poly(&[1])]);
    assert_eq!(ctx.find_resolution(0).unwrap(), seq(&[0, 1]));
    assert_eq!(ctx.find_resolution(1).unwrap(), seq(&[1, 0]));

    let peel = ctx.peel(&[ij.clone(), ji.clone()], &[ij, ji], &[0, 1]).unwrap();
    assert_eq!(peel.parity[0].entries, [poly(&[1]), poly(&[])]);
    assert_eq!(peel.parity[1].entries, [poly(&[1]), poly(&[1])]);
    assert!(peel.decomposition.is_identity());

    let basis = ctx.parity_basis(&Qf::new(cat.quiver())).unwrap();
    assert_eq!(basis.rank.rank, 2);
    assert!(basis.basis.is_identity());
}

#[test]
fn a1_divided_power() {
    let a1 = QuiverData::a(1);
    let cat = QuiverCatalog::new(&a1).unwrap();
    let ctx = ParityContext::new(&cat, &DimVector(vec![2])).unwrap();
    assert_eq!(ctx.orbits().len(), 1);
    let ii = ctx.stalk_table(&seq(&[0, 0])).unwrap();
    assert_eq!(ii.entries, [poly(&[1, 1])]);
    let div = FlagType { steps: vec![(0, 2)] };
    assert_eq!(ctx.find_resolution(0).unwrap(), div);
    let res = ctx.stalk_table(&div).unwrap();
    let peel = ctx.peel(&[res], &[ii], &[0]).unwrap();
    // [^dL_(i,i)] = [2] [E], and theta_i theta_i = [2] theta_i^(2) in f
    assert_eq!(peel.decomposition.entries[0][0], qint(2));
    let qf = Qf::new(&a1);
    let lhs = WordVector::theta_monomial(&seq(&[0, 0]), 1);
    let rhs = WordVector::theta_monomial(&div, 1).scale(&RationalFunction::from_laurent(qint(2)));
    assert!(qf.is_zero_in_f(&lhs.sub(&rhs).unwrap()));
}

#[test]
fn simple_root() {
    let cat = QuiverCatalog::new(&QuiverData::a(3)).unwrap();
    let ctx = ParityContext::new(&cat, &DimVector(vec![0, 1, 0])).unwrap();
    assert_eq!(ctx.find_resolution(0).unwrap(), seq(&[1]));
    let b = ctx.parity_basis(&Qf::new(cat.quiver())).unwrap();
    assert!(b.basis.is_identity() && b.decomposition.is_identity());
}

#[test]
fn palindromic_split() {
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    // h = 3: degrees 2k >= 3 are kept and mirrored
    assert_eq!(palindromic_part(&big(&[1, 0, 1, 1]), 3), big(&[1, 1, 1, 1]));
    assert_eq!(palindromic_part(&big(&[1]), 2), big(&[0, 0, 0]));
    assert_eq!(palindromic_part(&big(&[0, 2]), 2), big(&[0, 2, 0]));
}

#[test]
fn order_independence_and_triangularity() {
    for q in [QuiverData::a(3), QuiverData::a_oriented(3, &[true, false]), QuiverData::d(4)] {
        let cat = QuiverCatalog::new(&q).unwrap();
        for nu in [vec![1, 1, 1], vec![1, 2, 1], vec![2, 1, 1]].into_iter().chain(if q.num_vertices() == 4 {
            vec![vec![1, 1, 1, 1], vec![2, 1, 1, 1]]
        } else {
            vec![]
        }) {
            if nu.len() != q.num_vertices() {
                continue;
            }
            let ctx = ParityContext::new(&cat, &DimVector(nu.clone())).unwrap();
            let res = ctx.find_resolutions().unwrap();
            let tables = ctx.stalk_tables(&res).unwrap();
            let all = ctx.stalk_tables(&ctx.flag_types().unwrap()).unwrap();
            let base = ctx.peel(&tables, &all, &ctx.default_order()).unwrap();
            assert!(base.resolution_matrix.is_unitriangular(), "{nu:?}");
            assert!(base.decomposition.is_nonnegative());
            // reverse every block of equal dimension
            let mut order = ctx.default_order();
            order.sort_by_key(|&i| (ctx.orbits()[i].dim, std::cmp::Reverse(i)));
            let other = ctx.peel(&tables, &all, &order).unwrap();
            assert_eq!(base.parity, other.parity);
            assert_eq!(base.decomposition, other.decomposition);
        }
    }
}

#[test]
fn bad_order_is_rejected() {
    let cat = QuiverCatalog::new(&QuiverData::a(2)).unwrap();
    let ctx = ParityContext::new(&cat, &DimVector(vec![1, 1])).unwrap();
    let t = ctx.stalk_tables(&ctx.find_resolutions().unwrap()).unwrap();
    assert!(matches!(ctx.peel(&t, &[], &[1, 0]), Err(Error::Config(_))));
    assert!(matches!(ctx.peel(&t, &[], &[0, 0]), Err(Error::Config(_))));
}

#[test]
fn conjecture_small() {
    for (q, nu) in [(QuiverData::a(2), vec![1, 1]), (QuiverData::a(2), vec![2, 1]), (QuiverData::a(3), vec![1, 1, 1])] {
        let cat = QuiverCatalog::new(&q).unwrap();
        let r = conjecture14_check(&cat, &DimVector(nu.clone())).unwrap();
        assert!(r.evenness.passed());
        assert_eq!(r.verdict, "coincide", "{nu:?}");
    }
}
