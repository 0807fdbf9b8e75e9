use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use enthalpy_uq::config::RunConfig;
use enthalpy_uq::output::{Manifest, Summary, Table};

const SIM1D: &str = r#"
mode = "simulate1d"

[physical]
preset = "icing_1d"

[injection]
beta_hat = 0.35
eta_hat = 1.25

[grid]
dz = 0.05
dtau = 1e-3
tau_end = 0.5

[snapshots]
snapshot_times = [0.0, 0.25, 0.5]
fields = true
"#;

const UQ1D: &str = r#"
mode = "uq1d"
seed = 5

[physical]
preset = "icing_1d"

[grid]
dz = 0.05
dtau = 1e-3
tau_end = 0.5

[uq]
degree = 2
times = [0.25, 0.5]

[[uq.parameter]]
name = "b"
kind = "uniform"
low = 0.2
high = 0.7

[uq.bind]
beta_hat = "b"
"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stefan-uq"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(config: &Path, out: &Path, extra: &[&str]) -> Output {
    bin().arg("run").arg(config).arg("--out").arg(out).args(extra).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn simulate_writes_a_complete_run_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "sim.toml", SIM1D);
    let out = tmp.path().join("run");
    let o = run(&cfg, &out, &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let m = Manifest::read(&out).unwrap();
    assert_eq!(m.status, "ok");
    assert_eq!(m.mode, "simulate1d");
    for f in ["interface.csv", "mush.csv", "field.csv", "final_field.csv", "audit.csv", "summary.json", "config.resolved.toml"] {
        assert!(m.files.contains_key(f), "{f} missing from manifest");
        assert!(out.join(f).exists());
    }
    assert!(m.verify(&out).unwrap().is_empty());
    let s = Summary::read(&out).unwrap();
    assert!(s.metrics["front.final"] > 0.0);

    // the resolved echo runs to the same artifacts
    let again = tmp.path().join("again");
    let o = run(&out.join("config.resolved.toml"), &again, &[]);
    assert_eq!(code(&o), 0);
    let m2 = Manifest::read(&again).unwrap();
    assert_eq!(m.files["interface.csv"], m2.files["interface.csv"]);
    assert_eq!(m.files["config.resolved.toml"], m2.files["config.resolved.toml"]);
}

#[test]
fn validate_echo_round_trips() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "uq.toml", UQ1D);
    let o = bin().arg("validate").arg(&cfg).output().unwrap();
    assert_eq!(code(&o), 0);
    let echo = String::from_utf8(o.stdout).unwrap();
    assert!(echo.contains("[derived]"));
    let parsed = RunConfig::from_toml(&echo).unwrap();
    let again = parsed.resolved_echo(&parsed.resolve().unwrap()).unwrap();
    assert_eq!(echo, again);
}

#[test]
fn config_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        ("unknown.toml", SIM1D.replace("tau_end = 0.5", "tau_end = 0.5\nsteps = 3")),
        ("nomode.toml", SIM1D.replace("mode = \"simulate1d\"", "")),
        ("influx.toml", SIM1D.replace("eta_hat = 1.25", "eta_hat = 0.9")),
        ("expr.toml", SIM1D.replace("eta_hat = 1.25", "eta_hat = \"2 + cos(\"")),
        ("syntax.toml", "mode = ".to_string()),
    ];
    for (name, text) in cases {
        let p = write(tmp.path(), name, &text);
        let o = bin().arg("validate").arg(&p).output().unwrap();
        assert_eq!(code(&o), 2, "validate {name}");
        let o = run(&p, &tmp.path().join(name).with_extension("out"), &[]);
        assert_eq!(code(&o), 2, "run {name}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = bin().arg("validate").arg(tmp.path().join("absent.toml")).output().unwrap();
    assert_ne!(code(&o), 0);
}

#[test]
fn ill_conditioned_campaign_exits_3_with_failed_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let text = UQ1D.replace("degree = 2", "degree = 20\nsamples = 21");
    let cfg = write(tmp.path(), "ill.toml", &text);
    let out = tmp.path().join("ill");
    let o = run(&cfg, &out, &[]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    let m = Manifest::read(&out).unwrap();
    assert_eq!(m.status, "failed");
    assert_eq!(m.error.unwrap().code, "ill_conditioned");
}

#[test]
fn tolerance_checks_set_exit_code() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "sim.toml", SIM1D);
    let pass = write(tmp.path(), "pass.tol", "[[check]]\nkey = \"front.final\"\nmin = 0.0\n");
    let miss = write(tmp.path(), "miss.tol", "[[check]]\nkey = \"front.final\"\nexpected = 50.0\ntolerance = 0.1\n");
    let o = run(&cfg, &tmp.path().join("a"), &["--check", pass.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS front.final"));
    let o = run(&cfg, &tmp.path().join("b"), &["--check", miss.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL front.final"));
    let bad = write(tmp.path(), "bad.tol", "[[check]]\nkey = \"front.final\"\n");
    let o = run(&cfg, &tmp.path().join("c"), &["--check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn seed_and_threads() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "uq.toml", UQ1D);
    let hashes = |dir: &str, extra: &[&str]| {
        let out = tmp.path().join(dir);
        let o = run(&cfg, &out, extra);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        Manifest::read(&out).unwrap()
    };
    let a = hashes("a", &["--threads", "1"]);
    let b = hashes("b", &["--threads", "4"]);
    let c = hashes("c", &["--seed", "6"]);
    assert_eq!(a.files, b.files);
    assert_eq!(a.seed, 5);
    assert_eq!(c.seed, 6);
    assert_ne!(a.files["samples.csv"], c.files["samples.csv"]);
    let camp = a.campaign.unwrap();
    assert_eq!(camp.basis_size, 3);
    assert_eq!(camp.samples, 18);
    assert!(camp.sample_status.iter().all(|s| s == "ok"));
}

#[test]
fn plotdata_for_uq_and_simulation() {
    let tmp = tempfile::tempdir().unwrap();
    let uq = tmp.path().join("uq");
    assert_eq!(code(&run(&write(tmp.path(), "uq.toml", UQ1D), &uq, &[])), 0);
    let o = bin().arg("plotdata").arg(&uq).output().unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let index = Table::read(&uq.join("plot/histograms.csv")).unwrap();
    assert_eq!(index.rows.len(), 2);
    for k in 0..2 {
        let h = Table::read(&uq.join(format!("plot/hist_{k}.csv"))).unwrap();
        assert_eq!(h.rows.len(), 30);
        let count: f64 = h.column("count").unwrap().iter().sum();
        assert_eq!(count, 18.0);
        let (d, w) = (h.column("density").unwrap(), h.column("width").unwrap());
        let mass: f64 = d.iter().zip(&w).map(|(d, w)| d * w).sum();
        assert!((mass - 1.0).abs() < 1e-12);
    }
    assert!(uq.join("plot/band.csv").exists());

    let sim = tmp.path().join("sim");
    assert_eq!(code(&run(&write(tmp.path(), "sim.toml", SIM1D), &sim, &[])), 0);
    assert_eq!(code(&bin().arg("plotdata").arg(&sim).output().unwrap()), 0);
    let prof = Table::read(&sim.join("plot/profiles.csv")).unwrap();
    assert_eq!(prof.header, ["z", "tau=0", "tau=0.25", "tau=0.5"]);
    assert!(sim.join("plot/band.csv").exists());
}

#[test]
fn plotdata_rejects_missing_or_modified_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let sim = tmp.path().join("sim");
    assert_eq!(code(&run(&write(tmp.path(), "sim.toml", SIM1D), &sim, &[])), 0);
    fs::write(sim.join("mush.csv"), "tau\n").unwrap();
    let o = bin().arg("plotdata").arg(&sim).output().unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("mush.csv"));
    fs::remove_file(sim.join("manifest.json")).unwrap();
    assert_eq!(code(&bin().arg("plotdata").arg(&sim).output().unwrap()), 2);
    assert_eq!(code(&bin().arg("plotdata").arg(tmp.path().join("nowhere")).output().unwrap()), 2);
}
