use std::f64::consts::PI;

use proptest::prelude::*;
use quenchkit::entanglement_scaling::{check_constraint, quench_entropy, quench_entropy_for, ScalingLaw};
use quenchkit::exact_baselines::block_entropy_ed;
use quenchkit::kzm_defects::{defect_density, DEFAULT_TOLERANCE};
use quenchkit::lmg::{decomposition_residual, LmgSpec, PairSet};
use quenchkit::models::{berry_phase_factor, Dispersion, QuenchSchedule};
use quenchkit::QuenchModel;

fn model() -> impl Strategy<Value = QuenchModel> {
    prop::sample::select(QuenchModel::ALL.to_vec())
}

fn chain_model() -> impl Strategy<Value = QuenchModel> {
    prop::sample::select(vec![QuenchModel::Ising, QuenchModel::Xx, QuenchModel::Xxx])
}

proptest! {
    #[test]
    fn dispersion_is_quadratic_to_fourth_order(m in chain_model(), k in -0.5f64..0.5) {
        let d = Dispersion::for_model(m).unwrap();
        let quad = d.curvature * k * k;
        // 1 - cos k = k²/2 - k⁴/24 + ..., so the error is at most scale·k⁴/24
        prop_assert!((d.energy(k) - quad).abs() <= d.curvature * k.powi(4) / 12.0 + 1e-15);
        prop_assert!(d.energy(k) <= quad + 1e-15);
    }

    #[test]
    fn berry_factor_is_monotone(a in 0.0f64..=PI, b in 0.0f64..=PI) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (flo, fhi) = (berry_phase_factor(lo).unwrap(), berry_phase_factor(hi).unwrap());
        prop_assert!(flo <= fhi);
        prop_assert!((0.0..=1.0).contains(&flo) && (0.0..=1.0).contains(&fhi));
    }

    #[test]
    fn schedule_is_linear(m in model(), tau in 0.1f64..1e4, t1 in -100.0f64..0.0, t2 in -100.0f64..0.0) {
        let s = QuenchSchedule::new(m, tau).unwrap();
        let mid = s.field_at(0.5 * (t1 + t2)).unwrap();
        let avg = 0.5 * (s.field_at(t1).unwrap() + s.field_at(t2).unwrap());
        prop_assert!((mid - avg).abs() <= 1e-12 * (1.0 + avg.abs()));
        prop_assert_eq!(s.field_at(0.0).unwrap(), 0.0);
    }

    #[test]
    fn density_halves_when_quench_time_quadruples(m in model(), tau in 1.0f64..1e6) {
        let a = defect_density(m, tau, DEFAULT_TOLERANCE).unwrap().closed_form;
        let b = defect_density(m, 4.0 * tau, DEFAULT_TOLERANCE).unwrap().closed_form;
        prop_assert!((b / a - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn quench_entropy_grows_with_l_and_falls_with_tau(l in 2u64..10_000, tau in 1.5f64..1e5) {
        let s = quench_entropy(l, tau).unwrap().value;
        prop_assert!(quench_entropy(l + 1, tau).unwrap().value > s);
        prop_assert!(quench_entropy(l, tau * 1.5).unwrap().value < s);
    }

    #[test]
    fn quench_entropy_is_model_independent(m in model(), l in 2u64..10_000, tau in 1.5f64..1e5) {
        let s = quench_entropy(l, tau).unwrap().value;
        prop_assert_eq!(quench_entropy_for(m, l, tau).unwrap().entropy.value, s);
    }

    #[test]
    fn constraint_matches_log_bound(m in model(), l in 2u64..100_000, tau in 2.0f64..1e5) {
        let law = ScalingLaw::for_model(m);
        let lt = tau.ln();
        let margin = (law.smax_slope / 3.7) * lt * lt + 0.5 * lt - (l as f64).ln();
        prop_assume!(margin.abs() > 1e-9);
        prop_assert_eq!(check_constraint(l, tau, m).unwrap().ok, margin > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lmg_decomposition_holds(n in 2usize..=6, field in -2.0f64..2.0, open in any::<bool>()) {
        let spec = LmgSpec::isotropic(n, field).unwrap();
        let pairs = if open { PairSet::Open } else { PairSet::Ring };
        prop_assert!(decomposition_residual(&spec, pairs).unwrap() <= 1e-12);
    }

    #[test]
    fn entropy_of_block_equals_complement(
        n in 2usize..=7,
        amps in prop::collection::vec(-1.0f64..1.0, 128),
        mask in 1u32..127,
    ) {
        let dim = 1 << n;
        let mut state: Vec<f64> = amps[..dim].to_vec();
        let norm = state.iter().map(|a| a * a).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        state.iter_mut().for_each(|a| *a /= norm);
        let block: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let rest: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        prop_assume!(!block.is_empty() && !rest.is_empty());
        let sa = block_entropy_ed(&state, n, &block).unwrap().value;
        let sb = block_entropy_ed(&state, n, &rest).unwrap().value;
        prop_assert!((sa - sb).abs() <= 1e-9, "{} vs {}", sa, sb);
    }
}
