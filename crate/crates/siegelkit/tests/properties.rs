//! Property tests for the invariants of the core crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use siegelkit::diophantine::{self, ScanOrder, ThueInstance};
use siegelkit::expform::ExpForm;
use siegelkit::field::NumberField;
use siegelkit::measure;
use siegelkit::poly::{self, IntPoly};
use siegelkit::rat::q;
use siegelkit::{linalg, roots, zero, RInterval};

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| q(n, d))
}

fn poly(max_deg: usize, span: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-span..=span, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64(&c))
}

proptest! {
    #[test]
    fn interval_ops_contain_exact_results(x in rational(), y in rational(), bits in 16u32..200) {
        let (ix, iy) = (RInterval::point(x.clone(), bits), RInterval::point(y.clone(), bits));
        prop_assert!(ix.add(&iy).contains(&(&x + &y)));
        prop_assert!(ix.sub(&iy).contains(&(&x - &y)));
        prop_assert!(ix.mul(&iy).contains(&(&x * &y)));
        if !y.is_zero() {
            prop_assert!(ix.div(&iy).unwrap().contains(&(&x / &y)));
        }
    }

    #[test]
    fn sqrt_and_log2_bracket(x in (1i64..1_000_000, 1i64..1000).prop_map(|(n, d)| q(n, d)), bits in 32u32..256) {
        let s = RInterval::point(x.clone(), bits).sqrt().unwrap();
        prop_assert!(s.lo() * s.lo() <= x && x <= s.hi() * s.hi());
        // 2^lo <= x <= 2^hi, checked through exp2 of the endpoints
        let l = RInterval::point(x.clone(), bits).log2().unwrap();
        let back = l.exp2();
        prop_assert!(back.lo() <= &x && &x <= back.hi());
    }

    #[test]
    fn product_size_inequality(p1 in poly(6, 30), p2 in poly(6, 30)) {
        prop_assume!(!p1.is_zero() && !p2.is_zero());
        prop_assert!(poly::check_gelfond(&p1, &p2).holds);
    }

    #[test]
    fn parse_display_round_trip(p in poly(8, 50)) {
        prop_assert_eq!(IntPoly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn wronskian_vanishes_iff_dependent(
        ps in prop::collection::vec(poly(6, 3), 3),
        combine in any::<bool>(),
        k in -3i64..=3,
    ) {
        let mut ps = ps;
        if combine {
            ps[2] = ps[0].scale(&BigInt::from(k)).add(&ps[1]);
        }
        let rows: Vec<Vec<BigInt>> = ps.iter().map(|p| (0..=6).map(|i| p.coeff(i)).collect()).collect();
        prop_assert_eq!(linalg::rank(&rows) == 3, !zero::wronskian(&ps).is_zero());
    }

    #[test]
    fn field_division_inverts_multiplication(a in prop::collection::vec(-9i64..=9, 3), b in prop::collection::vec(-9i64..=9, 3)) {
        let k = NumberField::new(&IntPoly::from_i64(&[1, 0, -5, 1])).unwrap();
        let lift = |c: &[i64]| k.reduce(c.iter().map(|&x| q(x, 1)).collect());
        let (x, y) = (lift(&a), lift(&b));
        prop_assume!(!y.is_zero());
        let back = k.div(&k.mul(&x, &y), &y).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn refinement_keeps_the_sign_change(c in 2i64..200, width_bits in 8i64..400) {
        // the positive root of t^3 - c
        let g = IntPoly::from_i64(&[-c, 0, 0, 1]);
        let (lo, hi) = roots::refine_real(&g, &q(0, 1), &q(c, 1), &siegelkit::rat::pow2(-width_bits));
        prop_assert!(&hi - &lo <= siegelkit::rat::pow2(-width_bits));
        let (sl, sh) = (g.sign_at(&lo), g.sign_at(&hi));
        prop_assert!(sl <= 0 && sh >= 0);
        prop_assert!(lo <= hi);
    }

    #[test]
    fn shards_partition_the_range(bound in 0u64..5000, n in 1usize..64) {
        let r = diophantine::shard_ranges(bound, n);
        prop_assert_eq!(r[0].0, -(bound as i64));
        prop_assert_eq!(r.last().unwrap().1, bound as i64);
        for w in r.windows(2) {
            prop_assert_eq!(w[0].1 + 1, w[1].0);
        }
    }

    #[test]
    fn exponent_comparison_matches_evaluation(
        c1 in -40i64..40, y1 in 0i64..6, c2 in -40i64..40, y2 in 0i64..6, l0 in 1i64..30, extra in 0i64..20,
    ) {
        let (f, g) = (ExpForm::new(q(c1, 1), q(y1, 1), 64), ExpForm::new(q(c2, 1), q(y2, 1), 64));
        if f.le_given_a_at_least(&g, &q(l0, 1)) {
            // then it holds at every a = 2^l with l >= l0
            let l = l0 + extra;
            prop_assert!(c1 + y1 * l <= c2 + y2 * l);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kappa_hat_decreases_towards_its_limit(u in 23i64..5000, step in 1i64..5000) {
        let bits = 128;
        let k1 = measure::kappa_hat(&RInterval::from_int(u, bits), 0).unwrap();
        let k2 = measure::kappa_hat(&RInterval::from_int(u + step, bits), 0).unwrap();
        prop_assert!(k2.lo() <= k1.hi());
        prop_assert!(measure::kappa_hat_limit(bits).lo() <= k2.hi());
    }

    #[test]
    fn dual_scans_agree(d in prop::sample::select(vec![3u64, 5, 7]), a in -8i64..=8, m in -5i64..=5) {
        let inst = ThueInstance::bombieri(d, BigInt::from(a), BigInt::from(m));
        let lex = diophantine::exhaustive_search(&inst, 12, ScanOrder::Lex, 100).unwrap();
        let anti = diophantine::exhaustive_search(&inst, 12, ScanOrder::AntiLex, 100).unwrap();
        prop_assert_eq!(&lex, &anti);
        for (x, y) in &lex {
            prop_assert!(inst.is_solution(x, y));
        }
    }

    #[test]
    fn gap_chain_dominates_its_closed_form(
        d in prop::sample::select(vec![25u64, 27, 31, 41]),
        la in 4usize..60,
        y1 in 4i64..10_000,
        n in 1usize..=5,
    ) {
        let a = BigInt::one() << la;
        let g = diophantine::gap_chain(d, &a, &BigInt::from(y1), n, 128).unwrap();
        prop_assert!(g.dominates);
        prop_assert_eq!(g.chain.len(), n);
    }

    #[test]
    fn count_ledger_holds_across_the_grid(d in (12u64..60).prop_map(|k| 2 * k + 1), extra in 0usize..64) {
        let a = -(BigInt::one() << (164 * d as usize + extra));
        let l = diophantine::count_bound(d, &a, 128);
        prop_assert!(l.hypothesis_ok && l.all_hold());
        prop_assert_eq!(l.bound, 11);
    }
}
