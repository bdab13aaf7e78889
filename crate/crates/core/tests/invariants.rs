use num_bigint::BigInt;
use proptest::prelude::*;

use quiver_parity::flagcount::{count_flagvar, interpolate_counts, prime_powers, PoincarePoly};
use quiver_parity::paritycalc::ParityContext;
use quiver_parity::qf::{Qf, WordVector};
use quiver_parity::qlaurent::LaurentPoly;
use quiver_parity::quiver::{DimVector, FlagType, QuiverCatalog, QuiverData};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..5).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        let q = num_rational::BigRational::from_integer(BigInt::from(3));
        prop_assert_eq!((&a * &b).eval(&q), a.eval(&q) * b.eval(&q));
    }

    #[test]
    fn interpolation_recovers_polynomials(mut coeffs in prop::collection::vec(0u32..20, 0..5), top in 1u32..20) {
        coeffs.push(top);
        let p = PoincarePoly { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() };
        let bound = coeffs.len() - 1;
        let samples: Vec<(u32, BigInt)> = prime_powers(bound + 3).into_iter().map(|q| (q, p.eval(q as u64))).collect();
        prop_assert_eq!(interpolate_counts(&samples, bound).unwrap(), p);
    }

    #[test]
    fn complete_flags_count_like_factorials(nu in prop::collection::vec(0u32..3, 3), seed in any::<u64>()) {
        let mut seq: Vec<usize> = nu.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat(i).take(a as usize)).collect();
        let len = seq.len();
        for k in (1..len).rev() {
            seq.swap(k, (seed as usize).wrapping_mul(k + 7) % (k + 1));
        }
        for q in [2u64, 3, 5] {
            let mut expect = BigInt::from(1);
            for &a in &nu {
                for k in 1..=a {
                    expect *= (BigInt::from(q).pow(k) - 1) / (q - 1);
                }
            }
            prop_assert_eq!(count_flagvar(&FlagType::from_seq(&seq), 3, q), expect);
        }
    }

    #[test]
    fn coproduct_is_multiplicative(u in prop::collection::vec(0usize..2, 1..3), v in prop::collection::vec(0usize..2, 1..3)) {
        let qf = Qf::new(&QuiverData::a(2));
        let (wu, wv) = (WordVector::word(u, 2), WordVector::word(v, 2));
        let lhs = qf.coproduct(&wu.product(&wv));
        let rhs = qf.tensor_product(&qf.coproduct(&wu), &qf.coproduct(&wv));
        let mut diff = lhs;
        diff.add_assign(&rhs.scale(&quiver_parity::qf::int_coeff(-1)));
        prop_assert!(diff.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn peel_ignores_order_among_equal_dimensions(nu in prop::collection::vec(0u32..3, 3), keys in prop::collection::vec(any::<u32>(), 16)) {
        prop_assume!(nu.iter().sum::<u32>() > 0);
        let cat = QuiverCatalog::new(&QuiverData::a_oriented(3, &[true, false])).unwrap();
        let ctx = ParityContext::new(&cat, &DimVector(nu)).unwrap();
        let res = ctx.stalk_tables(&ctx.find_resolutions().unwrap()).unwrap();
        let all = ctx.stalk_tables(&ctx.flag_types().unwrap()).unwrap();
        let base = ctx.peel(&res, &all, &ctx.default_order()).unwrap();
        let mut order = ctx.default_order();
        order.sort_by_key(|&i| (ctx.orbits()[i].dim, keys[i % keys.len()]));
        let other = ctx.peel(&res, &all, &order).unwrap();
        prop_assert_eq!(base.parity, other.parity);
        prop_assert_eq!(base.decomposition, other.decomposition);
        prop_assert!(base.resolution_matrix.is_unitriangular());
    }
}
