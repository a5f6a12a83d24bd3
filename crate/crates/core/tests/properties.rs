use augdes_core::bounds::bound_quantities;
use augdes_core::criteria::{a_ct_weighted, a_tt_pairwise, control_information};
use augdes_core::matrix::Square;
use augdes_core::oracle::verify_design;
use augdes_core::{
    a_bounds, a_criteria, criteria, efficiencies, exchange_search, intrablock, mv_criteria,
    AugmentationSpec, BlockDesign, MatrixError, SearchConfig, SymMatrix,
};
use proptest::prelude::*;

fn any_design() -> impl Strategy<Value = BlockDesign> {
    (2usize..=6, 2usize..=4, 2usize..=7).prop_flat_map(|(v, k, b)| {
        prop::collection::vec(prop::collection::vec(1..=v, k), b)
            .prop_map(move |blocks| BlockDesign::from_blocks(v, blocks).unwrap())
    })
}

fn connected_design() -> impl Strategy<Value = BlockDesign> {
    any_design().prop_filter("connected with bk > v", |d| {
        d.is_connected() && d.b() * d.block_size().unwrap() > d.v()
    })
}

fn with_counts() -> impl Strategy<Value = (BlockDesign, Vec<usize>)> {
    connected_design().prop_flat_map(|d| {
        let b = d.b();
        (Just(d), prop::collection::vec(1usize..=4, b))
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn centered_inverse_satisfies_penrose(d in connected_design()) {
        for m in [control_information::<f64>(&d).unwrap(), intrablock::<f64>(&d).unwrap().c_tilde] {
            let n = m.order();
            let p = m.mp_inverse_centered(n).unwrap();
            let mpm = m.mul(&p).unwrap().mul(&m).unwrap();
            prop_assert!(mpm.max_abs_diff_sym(&m) < 1e-9);
            let pmp = p.mul(&m).unwrap().mul(&p).unwrap();
            prop_assert!(pmp.max_abs_diff_sym(&p) < 1e-9);
            let mp = m.mul(&p).unwrap();
            prop_assert!(mp.max_abs_diff(&mp.transpose()) < 1e-9);
            prop_assert!(p.row_sums().iter().all(|x| x.abs() < 1e-9));
        }
    }

    #[test]
    fn inverse_is_an_involution(d in connected_design()) {
        let c = control_information::<f64>(&d).unwrap();
        let shifted = c.add(&SymMatrix::ones(d.v())).unwrap();
        let back = shifted.invert().unwrap().invert().unwrap();
        prop_assert!(Square::from(back).max_abs_diff_sym(&shifted) < 1e-8);
    }

    #[test]
    fn dual_is_an_involution(d in connected_design()) {
        let dd = d.dual().unwrap().dual().unwrap();
        prop_assert_eq!(&dd, &d);
        prop_assert_eq!(d.dual().unwrap().b(), d.v());
    }

    #[test]
    fn connected_iff_full_rank(d in any_design()) {
        let c = control_information::<f64>(&d).unwrap();
        match c.mp_inverse_centered(d.v()) {
            Ok(_) => prop_assert!(d.is_connected()),
            Err(MatrixError::Disconnected) => prop_assert!(!d.is_connected()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn maxima_dominate_averages(d in connected_design(), s in 1usize..=5) {
        let ib = intrablock::<f64>(&d).unwrap();
        let c = criteria(&ib, &d, &AugmentationSpec::Common(s)).unwrap();
        prop_assert!(c.mv_cc >= c.a_cc - 1e-12);
        prop_assert!(c.mv_tt >= c.a_tt - 1e-12);
        prop_assert!(c.mv_ct >= c.a_ct - 1e-12);
    }

    #[test]
    fn dual_variance_floor(d in connected_design()) {
        let ib = intrablock::<f64>(&d).unwrap();
        let floor = 2.0 / ib.k as f64;
        for j in 0..d.b() {
            for js in (j + 1)..d.b() {
                prop_assert!(ib.v_tt(j, js).unwrap() >= floor - 1e-12);
            }
        }
    }

    #[test]
    fn trace_bounds_hold(d in connected_design()) {
        let ib = intrablock::<f64>(&d).unwrap();
        let q = bound_quantities::<f64>(d.b(), d.v(), ib.k).unwrap();
        prop_assert!(ib.c_plus.trace() >= q.l - 1e-9);
        prop_assert!(ib.c_tilde_plus.trace() >= q.l_tilde - 1e-9);
        prop_assert!(ib.sum_inverse_replication() >= q.h_sum - 1e-12);
    }

    #[test]
    fn criteria_dominate_bounds((d, counts) in with_counts()) {
        let k = d.block_size().unwrap();
        let s = AugmentationSpec::PerBlock(counts);
        let ib = intrablock::<f64>(&d).unwrap();
        let a = a_criteria(&ib, &d, &s).unwrap();
        let bd = a_bounds::<f64>(d.b(), d.v(), k, &s).unwrap();
        prop_assert!(a.cc >= bd.acc - 1e-9);
        prop_assert!(a.tt >= bd.att - 1e-9);
        prop_assert!(a.ct >= bd.act - 1e-9);
        let mv = mv_criteria(&ib, &d).unwrap();
        let unit = a_bounds::<f64>(d.b(), d.v(), k, &AugmentationSpec::Common(1)).unwrap();
        prop_assert!(mv.cc >= unit.acc - 1e-9);
        prop_assert!(mv.tt >= unit.att - 1e-9);
        prop_assert!(mv.ct >= unit.act - 1e-9);
    }

    #[test]
    fn conservative_tt_efficiency(d in connected_design()) {
        let e1 = efficiencies::<f64>(&d, &AugmentationSpec::Common(1)).unwrap();
        for s in [2, 3, 5, 19] {
            let e = efficiencies::<f64>(&d, &AugmentationSpec::Common(s)).unwrap();
            prop_assert!(e.tt_s >= e1.tt_s - 1e-12);
            prop_assert!((e.tt_conservative - e1.tt_s).abs() < 1e-12);
        }
    }

    #[test]
    fn equal_counts_match_common(d in connected_design(), s in 1usize..=6) {
        let k = d.block_size().unwrap();
        let ib = intrablock::<f64>(&d).unwrap();
        let common = AugmentationSpec::Common(s);
        let per = AugmentationSpec::PerBlock(vec![s; d.b()]);
        let a = a_criteria(&ib, &d, &common).unwrap();
        let ap = a_criteria(&ib, &d, &per).unwrap();
        prop_assert!(close(a.tt, ap.tt, 1e-10));
        prop_assert!(close(a.ct, ap.ct, 1e-10));
        prop_assert!(close(a_tt_pairwise(&ib, &common).unwrap(), a.tt, 1e-10));
        prop_assert!(close(a_ct_weighted(&ib, &d, &common).unwrap(), a.ct, 1e-10));
        let bc = a_bounds::<f64>(d.b(), d.v(), k, &common).unwrap();
        let bp = a_bounds::<f64>(d.b(), d.v(), k, &per).unwrap();
        prop_assert!(close(bc.att, bp.att, 1e-12) && close(bc.act, bp.act, 1e-12));
    }

    #[test]
    fn single_precision_tracks_double(d in connected_design()) {
        let s = AugmentationSpec::Common(1);
        let c64 = criteria(&intrablock::<f64>(&d).unwrap(), &d, &s).unwrap();
        let c32 = criteria(&intrablock::<f32>(&d).unwrap(), &d, &s).unwrap();
        prop_assert!(close(c64.a_cc, c32.a_cc as f64, 1e-3));
        prop_assert!(close(c64.a_ct, c32.a_ct as f64, 1e-3));
        prop_assert!(close(c64.mv_tt, c32.mv_tt as f64, 1e-3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_forms_match_oracle((d, counts) in with_counts()) {
        let rep = verify_design(&d, &AugmentationSpec::PerBlock(counts)).unwrap();
        prop_assert!(rep.max_deviation() <= 1e-8, "{rep:?}");
    }

    #[test]
    fn search_is_deterministic(seed in 0u64..1000) {
        let cfg = SearchConfig { restarts: 2, seed, ..SearchConfig::default() };
        let a = exchange_search(5, 4, 2, &cfg).unwrap();
        let b = exchange_search(5, 4, 2, &cfg).unwrap();
        prop_assert_eq!(a.design.to_text(), b.design.to_text());
        for (x, y) in a.restarts.iter().zip(&b.restarts) {
            prop_assert_eq!(&x.trace, &y.trace);
            prop_assert!(x.trace.windows(2).all(|w| w[1] <= w[0]));
        }
    }
}
