use std::path::Path;
use std::process::{Command, Output};

fn quenchkit(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quenchkit"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("QUENCHKIT_OUT")
        .output()
        .expect("spawn quenchkit")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn kinks_writes_csv_and_keeps_stdout_empty() {
    let dir = tempfile::tempdir().unwrap();
    let o = quenchkit(&["kinks", "--tau", "100"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(dir.path().join("kinks.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("model,tau_q,n_closed,n_quadrature"));
    let ising = lines.find(|l| l.starts_with("ising,")).unwrap();
    assert!(ising.starts_with("ising,100,0.011253954,"), "{ising}");
}

#[test]
fn entropy_respects_model_and_block_flags() {
    let dir = tempfile::tempdir().unwrap();
    let o = quenchkit(
        &["entropy", "--model", "xx", "--tau", "200", "--L", "16,32"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("entropy.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.lines().nth(1).unwrap().starts_with("xx,200,16,1.93619551,"));
}

#[test]
fn figures_manifest_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let o = quenchkit(&["figures"], dir.path());
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
    let ma = std::fs::read_to_string(a.path().join("manifest.csv")).unwrap();
    let mb = std::fs::read_to_string(b.path().join("manifest.csv")).unwrap();
    assert_eq!(ma, mb);
    for line in ma.lines() {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3, "{line}");
        assert_eq!(fields[1].len(), 64);
        assert!(a.path().join(fields[0]).is_file());
    }
}

#[test]
fn small_ou_run_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = quenchkit(
        &[
            "ou",
            "--seed",
            "5",
            "--set",
            "ou.n_paths=5000",
            "--set",
            "ou.ensemble_paths=200",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("ou_correlation.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("dt,mean_product,std_error,analytic"));
    assert_eq!(csv.lines().count(), 6);
    assert!(dir.path().join("ou_ensemble.csv").is_file());
}

#[test]
fn biased_scheme_fails_statistical_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = quenchkit(
        &[
            "ou",
            "--set",
            "ou.scheme=euler",
            "--set",
            "ou.dt=0.1",
            "--set",
            "ou.n_paths=20000",
            "--set",
            "ou.ensemble_paths=100",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    // the tables are still written
    assert!(dir.path().join("ou_correlation.csv").is_file());
}

#[test]
fn configuration_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["kinks", "--model", "heisenberg"][..],
        &["kinks", "--tau", "-1"],
        &["kinks", "--set", "run.nope=1"],
        &["exact", "--set", "exact.N=20"],
        &["lmg-check", "--set", "lmg.N=9"],
        &["frobnicate"],
    ] {
        let o = quenchkit(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn config_file_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# comment\nrun.seed = 3\n\nou.omega = fast\n").unwrap();
    let o = quenchkit(&["ou", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("run.cfg:4"), "{}", stderr(&o));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "run.model = lmg\nrun.tau = 1,2\n").unwrap();
    let o = quenchkit(
        &["kinks", "--config", cfg.to_str().unwrap(), "--tau", "100"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("kinks.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.contains("lmg,100,0.0152328275,"));
}

#[test]
fn quadrature_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = quenchkit(&["kinks", "--tol", "1e-300"], dir.path());
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn unwritable_output_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let o = quenchkit(&["kinks"], &blocker.join("sub"));
    assert_eq!(o.status.code(), Some(5), "{}", stderr(&o));
}

#[test]
fn lmg_check_prints_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = quenchkit(&["lmg-check", "--set", "lmg.N=2,3"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.lines().count() >= 7, "{stdout}");
}

#[test]
fn exact_writes_baselines() {
    let dir = tempfile::tempdir().unwrap();
    let o = quenchkit(
        &["exact", "--set", "exact.N=8", "--set", "exact.L=1,2"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let curve = std::fs::read_to_string(dir.path().join("exact_entropy.csv")).unwrap();
    assert!(curve.contains("\n1,0,1\n"), "{curve}");
    assert!(curve.contains("\n2,0,1.36752092\n"), "{curve}");
    for name in ["concurrence_ising.csv", "concurrence_xxx.csv"] {
        assert!(dir.path().join(name).is_file());
    }
}
