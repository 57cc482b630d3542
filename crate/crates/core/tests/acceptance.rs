//! Acceptance criteria. Each criterion prints a line per individual check
//! and a final `PASS`/`FAIL` line; the process fails if any criterion does.

use std::time::Instant;

use quenchkit::cli::commands::{self, Artifact};
use quenchkit::cli::{Cell, RawConfig, RunConfig};
use quenchkit::entanglement_scaling::{
    check_constraint, max_block_size, max_entropy, quench_entropy, quench_entropy_for, ScalingLaw,
};
use quenchkit::exact_baselines::free_fermion::{log_slope, ring_ground_filling};
use quenchkit::exact_baselines::{
    block_entropy_ed, entropy_from_correlations, ground_state, nn_concurrence, ring_correlation_matrix,
    xx_block_entropy, ChainSpec,
};
use quenchkit::kzm_defects::{defect_density, kink_density_closed_form, KinkModelSpec, DEFAULT_TOLERANCE};
use quenchkit::lmg::{decomposition_residual, pairwise_collective_residual, LmgSpec, PairSet};
use quenchkit::stochastic_phase::{excitation_probability_mc_omega, lag_correlation, OUParams};
use quenchkit::{QuenchModel, SpinModel};

struct Criterion {
    name: &'static str,
    started: Instant,
    failures: usize,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion {
            name,
            started: Instant::now(),
            failures: 0,
        }
    }

    fn check(&mut self, ok: bool, detail: impl AsRef<str>) {
        println!("  [{}] {}", if ok { "ok" } else { "FAIL" }, detail.as_ref());
        if !ok {
            self.failures += 1;
        }
    }

    fn finish(self) -> bool {
        let verdict = if self.failures == 0 { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {} ({} failed checks, {:.2?})",
            self.name,
            self.failures,
            self.started.elapsed()
        );
        self.failures == 0
    }
}

fn num(c: &Cell) -> f64 {
    match c {
        Cell::Num(x) => *x,
        Cell::Int(n) => *n as f64,
        other => panic!("not numeric: {other:?}"),
    }
}

fn text(c: &Cell) -> &str {
    match c {
        Cell::Text(s) => s,
        other => panic!("not text: {other:?}"),
    }
}

fn kink_densities() -> bool {
    let mut c = Criterion::new("kink_densities");
    let quoted = [
        (KinkModelSpec::ising(), "n1", 0.0112539),
        (KinkModelSpec::xx(), "n2", 0.0056270),
        (KinkModelSpec::xxx(), "n3", 0.0039789),
    ];
    for (spec, label, expected) in quoted {
        let n = kink_density_closed_form(&spec, 100.0).unwrap();
        c.check(
            (n - expected).abs() <= 1e-6,
            format!("{label}(100) = {n:.10} vs {expected}"),
        );
    }
    let n4 = defect_density(QuenchModel::Lmg, 100.0, DEFAULT_TOLERANCE)
        .unwrap()
        .closed_form;
    c.check(
        (n4 - 0.0152328).abs() <= 1e-6,
        format!("n4(100) = {n4:.10} vs 0.0152328"),
    );

    // high-precision references
    let frozen = [
        (QuenchModel::Ising, 0.0112539539519638),
        (QuenchModel::Xx, 0.00562697697598191),
        (QuenchModel::Xxx, 0.00397887357729738),
        (QuenchModel::Lmg, 0.0152328275292612),
    ];
    for (model, value) in frozen {
        let n = defect_density(model, 100.0, DEFAULT_TOLERANCE)
            .unwrap()
            .closed_form;
        c.check(
            (n - value).abs() <= 1e-15,
            format!("{model}(100) reference, diff {:.1e}", n - value),
        );
    }

    let mut worst: f64 = 0.0;
    for model in QuenchModel::ALL {
        for tau in [1.0, 2.0, 5.0, 10.0, 100.0, 1000.0, 1e4, 1e5] {
            let r = defect_density(model, tau, DEFAULT_TOLERANCE).unwrap();
            worst = worst.max(r.abs_diff);
        }
    }
    c.check(
        worst <= 1e-10,
        format!("quadrature vs closed form, worst |diff| = {worst:.2e}"),
    );
    c.finish()
}

fn kz_scaling() -> bool {
    let mut c = Criterion::new("kz_scaling");
    for model in QuenchModel::ALL {
        for tau in [1.0, 10.0, 100.0, 1000.0] {
            let a = defect_density(model, tau, DEFAULT_TOLERANCE).unwrap().closed_form;
            let b = defect_density(model, 4.0 * tau, DEFAULT_TOLERANCE)
                .unwrap()
                .closed_form;
            c.check(b / a == 0.5, format!("{model} tau_q={tau}: ratio {}", b / a));
        }
    }
    c.finish()
}

fn ou_correlation() -> bool {
    let mut c = Criterion::new("ou_correlation");
    for (i, omega) in [0.5, 1.0, 2.0].into_iter().enumerate() {
        let params = OUParams::new(omega, 0.05, 4.0, 100_000, 1000 + i as u64);
        for lag in [0.0, 0.5, 1.0, 2.0] {
            let est = lag_correlation(&params, lag).unwrap();
            let target = 0.5 * (-omega * lag).exp();
            let z = est.z_score(target);
            c.check(
                z.abs() <= 4.0,
                format!(
                    "omega={omega} lag={lag}: {:.5} ± {:.5} vs {target:.5} (z = {z:+.2})",
                    est.mean_product, est.std_error
                ),
            );
        }
    }
    let base = OUParams::new(1.0, 0.05, 41.0, 100_000, 77);
    for wt in [0.25, 0.5, 1.0, 2.0, 3.0] {
        let r = excitation_probability_mc_omega(wt, 1.0, 2.0, &base).unwrap();
        let target = (-wt).exp();
        let rel = (r.p_hat - target).abs() / target;
        c.check(
            rel <= 0.05,
            format!(
                "omega*tau_q={wt}: p = {:.5} vs {target:.5} (rel {rel:.2e})",
                r.p_hat
            ),
        );
    }
    c.finish()
}

fn scaling_formulas() -> bool {
    let mut c = Criterion::new("scaling_formulas");
    let s = quench_entropy(16, 200.0).unwrap().value;
    c.check((s - 1.9361).abs() <= 0.0005, format!("S(16, 200) = {s:.6}"));
    let smax = max_entropy(QuenchModel::Xx, 200.0).unwrap().value;
    c.check(
        (smax - 3.1746).abs() <= 0.0005,
        format!("S_max(xx, 200) = {smax:.6}"),
    );
    for (model, tau, expected) in [
        (QuenchModel::Ising, 200.0, 32),
        (QuenchModel::Xx, 200.0, 100),
        (QuenchModel::Lmg, 400.0, 651),
    ] {
        let l = max_block_size(model, tau).unwrap().value;
        c.check(
            l == expected,
            format!("L_max({model}, {tau}) = {l}, expected {expected}"),
        );
    }
    for model in QuenchModel::ALL {
        let law = ScalingLaw::for_model(model);
        let delta = law.smax_slope / 3.7 - law.lmax_coeff;
        c.check(
            delta.abs() <= 0.003,
            format!("{model}: beta/3.7 - q = {delta:+.5}"),
        );
    }
    c.finish()
}

fn universality() -> bool {
    let mut c = Criterion::new("universality");
    let mut mismatches = 0;
    let mut points = 0;
    for tau in [1.5, 2.0, 10.0, 100.0, 200.0, 400.0, 800.0, 1e4] {
        for l in 2..=128u64 {
            let values: Vec<f64> = QuenchModel::ALL
                .iter()
                .map(|&m| quench_entropy_for(m, l, tau).unwrap().entropy.value)
                .collect();
            points += 1;
            if values.iter().any(|v| *v != values[0]) {
                mismatches += 1;
            }
        }
    }
    c.check(
        mismatches == 0,
        format!("{points} (L, tau_q) points, {mismatches} differ across models"),
    );
    c.finish()
}

fn exact_xx_baseline() -> bool {
    let mut c = Criterion::new("exact_xx_baseline");
    let s1 = xx_block_entropy(1, 0.0).unwrap().value;
    c.check(s1 == 1.0, format!("S(L=1) = {s1}"));
    let s2 = xx_block_entropy(2, 0.0).unwrap().value;
    c.check((s2 - 1.3675).abs() <= 0.0005, format!("S(L=2) = {s2:.6}"));

    let points: Vec<(usize, f64)> = (16..=64)
        .map(|l| (l, xx_block_entropy(l, 0.0).unwrap().value))
        .collect();
    let slope = log_slope(&points).unwrap();
    c.check(
        (slope - 1.0 / 3.0).abs() <= 0.02,
        format!("slope over L in [16, 64] = {slope:.5}"),
    );

    let mut worst: f64 = 0.0;
    let mut compared = 0;
    for n in [4, 6, 8, 10, 12] {
        for field in [0.0, 0.5] {
            ring_ground_filling(n, field).unwrap();
            let gs = ground_state(&ChainSpec::ring(SpinModel::xx(field), n).unwrap()).unwrap();
            for l in 1..n {
                let block: Vec<usize> = (0..l).collect();
                let ed = block_entropy_ed(&gs.vector, n, &block).unwrap().value;
                let ff = entropy_from_correlations(&ring_correlation_matrix(n, field, l).unwrap())
                    .unwrap()
                    .value;
                worst = worst.max((ed - ff).abs());
                compared += 1;
            }
        }
    }
    c.check(
        worst <= 1e-8,
        format!("ring fermions vs ED, {compared} blocks, worst |diff| = {worst:.2e}"),
    );
    c.finish()
}

fn ed_constants() -> bool {
    let mut c = Criterion::new("ed_constants");
    let ising: Vec<f64> = [8, 10, 12]
        .iter()
        .map(|&n| {
            nn_concurrence(&ChainSpec::ring(SpinModel::transverse_ising(1.0), n).unwrap())
                .unwrap()
                .value
        })
        .collect();
    c.check(
        (0.16..=0.21).contains(&ising[2]),
        format!("critical Ising N=12: C = {:.5} (0.18 quoted)", ising[2]),
    );
    c.check(
        ising[0] > ising[1] && ising[1] > ising[2],
        format!(
            "Ising trend N=8,10,12: {:.5} > {:.5} > {:.5}",
            ising[0], ising[1], ising[2]
        ),
    );
    let xxx = nn_concurrence(&ChainSpec::ring(SpinModel::xxx(0.0), 12).unwrap())
        .unwrap()
        .value;
    c.check(
        (0.36..=0.41).contains(&xxx),
        format!("XXX N=12: C = {xxx:.5} (0.386 quoted)"),
    );
    c.finish()
}

fn lmg_identities() -> bool {
    let mut c = Criterion::new("lmg_identities");
    let mut worst_pc: f64 = 0.0;
    let mut worst_dec: f64 = 0.0;
    for n in 2..=8 {
        for field in [0.0, 0.25, 0.5, 1.0] {
            let spec = LmgSpec::isotropic(n, field).unwrap();
            worst_pc = worst_pc.max(pairwise_collective_residual(&spec).unwrap());
            for pairs in [PairSet::Ring, PairSet::Open] {
                worst_dec = worst_dec.max(decomposition_residual(&spec, pairs).unwrap());
            }
        }
    }
    c.check(
        worst_pc <= 1e-12,
        format!("pairwise vs collective, worst residual {worst_pc:.2e}"),
    );
    c.check(
        worst_dec <= 1e-12,
        format!("H_reg vs H1 + H2 - I, worst residual {worst_dec:.2e}"),
    );
    c.finish()
}

fn default_config() -> RunConfig {
    RunConfig::from_raw(&RawConfig::with_defaults()).unwrap()
}

fn find<'a>(artifacts: &'a [Artifact], name: &str) -> &'a Artifact {
    artifacts.iter().find(|a| a.name == name).unwrap()
}

fn figure_reproduction() -> bool {
    let mut c = Criterion::new("figure_reproduction");
    let cfg = default_config();
    let first = commands::figures(&cfg).unwrap();
    let second = commands::figures(&cfg).unwrap();
    c.check(first.len() == 7, format!("{} panels", first.len()));
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    commands::write_figures(dir_a.path(), &first, false).unwrap();
    commands::write_figures(dir_b.path(), &second, false).unwrap();
    let manifest_a = std::fs::read_to_string(dir_a.path().join(commands::MANIFEST_NAME)).unwrap();
    let manifest_b = std::fs::read_to_string(dir_b.path().join(commands::MANIFEST_NAME)).unwrap();
    c.check(
        manifest_a == manifest_b && manifest_a.lines().count() == 7,
        "manifest checksums identical across two runs",
    );

    // XX entropy decreases with quench time at every L
    let fig1 = &find(&first, "fig1_left.csv").table;
    let mut by_l = std::collections::BTreeMap::<u64, Vec<(f64, f64)>>::new();
    for r in &fig1.rows {
        by_l.entry(num(&r[1]) as u64)
            .or_default()
            .push((num(&r[0]), num(&r[2])));
    }
    let ordered = by_l.values().all(|v| {
        let s = |tau: f64| v.iter().find(|p| p.0 == tau).unwrap().1;
        s(200.0) > s(400.0) && s(400.0) > s(800.0)
    });
    c.check(
        ordered,
        format!("S(L,200) > S(L,400) > S(L,800) for {} block sizes", by_l.len()),
    );

    // defect ordering on the panel and on a dense grid
    let fig4 = &find(&first, "fig4_left.csv").table;
    let density = |model: &str, tau: f64| {
        fig4.rows
            .iter()
            .find(|r| text(&r[0]) == model && num(&r[1]) == tau)
            .map(|r| num(&r[2]))
            .unwrap()
    };
    let panel_ok = cfg.figures.kinks_tau.iter().all(|&t| {
        density("lmg", t) > density("ising", t)
            && density("ising", t) > density("xx", t)
            && density("xx", t) > density("xxx", t)
    });
    let grid_ok = (0..200).map(|i| 10f64.powf(i as f64 * 0.03)).all(|t| {
        let n = |m| defect_density(m, t, DEFAULT_TOLERANCE).unwrap().closed_form;
        n(QuenchModel::Lmg) > n(QuenchModel::Ising)
            && n(QuenchModel::Ising) > n(QuenchModel::Xx)
            && n(QuenchModel::Xx) > n(QuenchModel::Xxx)
    });
    c.check(panel_ok && grid_ok, "n4 > n1 > n2 > n3 for tau_q in [1, 1e6]");
    let kinks_cfg = default_config();
    let kinks = commands::kinks(&kinks_cfg).unwrap();
    let row100 = kinks[0]
        .table
        .rows
        .iter()
        .filter(|r| num(&r[1]) == 100.0)
        .all(|r| fig4.rows.contains(r));
    c.check(row100, "fig4_left rows at tau_q = 100 equal the kinks command");

    let grid_ok = [1.0 + 1e-9, 1.001, 1.5, 2.0, 10.0, 100.0, 1e3, 1e6]
        .iter()
        .all(|&t| {
            let s = |m| max_entropy(m, t).unwrap().value;
            s(QuenchModel::Lmg) > s(QuenchModel::Xx) && s(QuenchModel::Xx) > s(QuenchModel::Ising)
        });
    let fig4r = &find(&first, "fig4_right.csv").table;
    let smax = |model: &str, tau: f64| {
        fig4r
            .rows
            .iter()
            .find(|r| text(&r[0]) == model && num(&r[1]) == tau)
            .map(|r| num(&r[2]))
            .unwrap()
    };
    let panel_ok = cfg
        .figures
        .smax_tau
        .iter()
        .all(|&t| smax("lmg", t) > smax("xx", t) && smax("xx", t) > smax("ising", t));
    c.check(
        grid_ok && panel_ok,
        "S_max(lmg) > S_max(xx) > S_max(ising) for tau_q > 1",
    );

    // the ratio column never exceeds 1 where L is within the quench-limited bound
    let fig1r = &find(&first, "fig1_right.csv").table;
    let bounded = fig1r.rows.iter().all(|r| {
        let (tau, l) = (num(&r[0]), num(&r[1]) as u64);
        let chk = check_constraint(l, tau, QuenchModel::Xx).unwrap();
        !chk.ok || num(&r[3]) <= 1.0
    });
    c.check(bounded, "S/S_max <= 1 wherever the ratio constraint holds");
    c.finish()
}

fn main() {
    let criteria: [fn() -> bool; 9] = [
        kink_densities,
        kz_scaling,
        ou_correlation,
        scaling_formulas,
        universality,
        exact_xx_baseline,
        ed_constants,
        lmg_identities,
        figure_reproduction,
    ];
    let passed = criteria.iter().filter(|run| run()).count();
    println!("\n{passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
