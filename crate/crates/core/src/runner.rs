//! Executes a configuration and writes its run directory.
//!
//! Every mode writes `config.resolved.toml`, its CSV tables,
//! `summary.json` and finally `manifest.json`. A failed run still leaves a
//! manifest with `status = "failed"` and the error code.

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::audit::{energy_audit, max_relative_residual, observed_order, AuditEntry};
use crate::config::{AuditSection, Mode, OracleSection, Resolved, RunConfig};
use crate::error::{Error, Result};
use crate::interface::Regime;
use crate::model::DimlessConfig;
use crate::oracle::neumann_oracle;
use crate::output::{
    ensure_dir, key_num, num, sha256_bytes, write_csv, CampaignRecord, ErrorRecord, Manifest, Metrics, Summary,
    RESOLVED_CONFIG_FILE, SUMMARY_FILE,
};
use crate::solver1d::{FarCondition, Grid1D, SnapshotPlan, Solver1D, Solver1DOptions, WallCondition};
use crate::solver2d::{cosine_modes, Grid2D, Run2D, Solver2D};
use crate::uq::campaign::{run_uq_1d, run_uq_2d, Campaign};

/// Highest cosine mode reported for 2D fronts.
pub const MODE_COUNT: usize = 8;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Overrides the configuration's seed.
    pub seed: Option<u64>,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub summary: Summary,
    pub manifest: Manifest,
}

struct Artifacts {
    dir: PathBuf,
    files: Vec<String>,
    metrics: Metrics,
    resolved_sha256: Option<String>,
    campaign: Option<CampaignRecord>,
}

impl Artifacts {
    fn path(&mut self, name: &str) -> PathBuf {
        if !self.files.iter().any(|f| f == name) {
            self.files.push(name.to_string());
        }
        self.dir.join(name)
    }

    fn metric(&mut self, key: impl Into<String>, v: f64) {
        self.metrics.insert(key.into(), v);
    }
}

/// Runs `cfg` into `opts.out_dir`. `config_text` is the file as given and is
/// only hashed.
pub fn run(cfg: &RunConfig, config_text: &str, opts: &RunOptions) -> Result<RunOutcome> {
    let dir = ensure_dir(&opts.out_dir)?;
    let mut cfg = cfg.clone();
    if let Some(s) = opts.seed {
        cfg.seed = s;
    }
    let start = Instant::now();
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = opts.threads {
            b = b.num_threads(t.max(1));
        }
        b.build().map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?
    };
    let threads = pool.current_num_threads();
    let mut art = Artifacts { dir: dir.clone(), files: Vec::new(), metrics: Metrics::new(), resolved_sha256: None, campaign: None };
    let result = pool.install(|| execute(&cfg, &mut art));

    let (status, error) = match &result {
        Ok(()) => ("ok", None),
        Err(e) => ("failed", Some(ErrorRecord { code: e.code().to_string(), message: e.to_string() })),
    };
    if let (Err(Error::Sample { failed, .. }), Some(c)) = (&result, art.campaign.as_mut()) {
        for &i in failed {
            c.sample_status[i] = "failed".into();
        }
    }
    let summary = Summary { mode: cfg.mode.as_str().to_string(), metrics: art.metrics.clone() };
    if result.is_ok() {
        summary.write(&dir)?;
        art.path(SUMMARY_FILE);
    }
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        mode: cfg.mode.as_str().to_string(),
        status: status.to_string(),
        error,
        seed: cfg.seed,
        threads,
        wall_time_s: start.elapsed().as_secs_f64(),
        config_sha256: sha256_bytes(config_text.as_bytes()),
        resolved_config_sha256: art.resolved_sha256.clone(),
        files: Manifest::hash_files(&dir, &art.files)?,
        campaign: art.campaign.clone(),
    };
    manifest.write(&dir)?;
    result?;
    Ok(RunOutcome { dir, summary, manifest })
}

fn execute(cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let resolved = cfg.resolve()?;
    let echo = cfg.resolved_echo(&resolved)?;
    art.resolved_sha256 = Some(sha256_bytes(echo.as_bytes()));
    std::fs::write(art.path(RESOLVED_CONFIG_FILE), echo)?;
    match cfg.mode {
        Mode::Simulate1d => simulate_1d(&resolved, art),
        Mode::Simulate2d => simulate_2d(&resolved, art),
        Mode::Uq1d | Mode::Uq2d => uq(&resolved, art),
        Mode::Oracle => oracle(&resolved, cfg.oracle.clone().unwrap_or_default(), art),
        Mode::Audit => audit(&resolved, cfg.audit.clone().unwrap_or_default(), art),
    }
}

fn grid1d(r: &Resolved) -> Result<Grid1D> {
    r.grid1d.ok_or_else(|| Error::Config("missing 1D grid".into()))
}

fn grid2d(r: &Resolved) -> Result<Grid2D> {
    r.grid2d.ok_or_else(|| Error::Config("missing 2D grid".into()))
}

fn write_audit(art: &mut Artifacts, entries: &[AuditEntry]) -> Result<()> {
    let p = art.path("audit.csv");
    write_csv(
        &p,
        &["tau_start", "tau_end", "delta_energy", "inflow", "residual", "relative"],
        entries.iter().map(|e| {
            [e.tau_start, e.tau_end, e.delta_energy, e.inflow, e.residual, e.relative].map(num)
        }),
    )
}

fn simulate_1d(r: &Resolved, art: &mut Artifacts) -> Result<()> {
    let grid = grid1d(r)?;
    let run = Solver1D::new(r.physics.clone(), grid, r.solver1d.clone())?.run()?;
    let tr = &run.trace;
    let v = tr.v_est();
    let p = art.path("interface.csv");
    write_csv(
        &p,
        &["tau", "s_star", "s_phys", "L", "v_est", "regime"],
        (0..tr.len()).map(|k| {
            vec![num(tr.taus[k]), num(tr.s_star[k]), num(tr.s_phys[k]), num(tr.length[k]), num(v[k]), run.regimes[k].as_str().to_string()]
        }),
    )?;
    let p = art.path("mush.csv");
    write_csv(
        &p,
        &["tau", "solid_edge", "mid", "liquid_edge", "width", "L"],
        (0..tr.len()).map(|k| {
            let m = tr.mush[k];
            [tr.taus[k], m.solid_edge, m.mid, m.liquid_edge, m.width(), tr.length[k]].map(num)
        }),
    )?;
    if r.solver1d.keep_fields {
        let p = art.path("field.csv");
        write_csv(
            &p,
            &["step", "tau", "z", "x", "phi", "theta"],
            run.snapshots.iter().flat_map(|s| {
                s.phi.iter().enumerate().map(move |(i, &phi)| {
                    let z = grid.z(i);
                    vec![s.step.to_string(), num(s.tau), num(z), num(z * s.length), num(phi), num(crate::model::temperature_from_enthalpy(phi))]
                })
            }),
        )?;
    }
    let f = &run.final_field;
    let length = r.physics.domain_length(f.tau);
    let theta = f.temperature();
    let p = art.path("final_field.csv");
    write_csv(
        &p,
        &["z", "x", "phi", "theta"],
        f.phi.iter().enumerate().map(|(i, &phi)| [grid.z(i), grid.z(i) * length, phi, theta[i]].map(num)),
    )?;
    let entries = energy_audit(&run.snapshots)?;
    write_audit(art, &entries)?;

    let last = tr.len() - 1;
    art.metric("front.final", tr.s_phys[last]);
    art.metric("front.star_final", tr.s_star[last]);
    art.metric("length.final", tr.length[last]);
    art.metric("mush.width_final", tr.mush[last].width() * tr.length[last]);
    art.metric("energy.max_relative_residual", max_relative_residual(&entries));
    art.metric("lag.max_iterations", run.max_lag_iterations as f64);
    art.metric("steps", grid.steps as f64);
    art.metric(
        "regime.injection_final",
        if run.regimes[last] == Regime::InjectionDominated { 1.0 } else { 0.0 },
    );
    if let Some(SnapshotPlan::AtTimes(times)) = &r.solver1d.snapshots {
        for &t in times {
            if let Some(s) = tr.s_phys_at(t) {
                art.metric(format!("front.tau_{}", key_num(t)), s);
            }
        }
    }
    Ok(())
}

fn write_curve(art: &mut Artifacts, run: &Run2D) -> Result<()> {
    let c = &run.curve;
    let p = art.path("interface2d.csv");
    write_csv(
        &p,
        &["tau", "y", "s_star", "s_phys"],
        (0..c.taus.len()).flat_map(|k| {
            c.ys.iter()
                .zip(&c.s_star[k])
                .map(move |(&y, &s)| [c.taus[k], y, s, s * c.lengths[k]].map(num))
        }),
    )?;
    let mut header = vec!["tau".to_string()];
    header.extend((0..=MODE_COUNT).map(|m| format!("a{m}")));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let p = art.path("modes.csv");
    write_csv(
        &p,
        &header,
        (0..c.taus.len()).map(|k| {
            let mut row = vec![num(c.taus[k])];
            row.extend(cosine_modes(&c.s_phys(k), MODE_COUNT).into_iter().map(num));
            row
        }),
    )
}

fn simulate_2d(r: &Resolved, art: &mut Artifacts) -> Result<()> {
    let grid = grid2d(r)?;
    let run = Solver2D::new(r.physics.clone(), grid, r.solver2d.clone())?.run()?;
    write_curve(art, &run)?;
    if r.solver2d.keep_fields {
        let p = art.path("field2d.csv");
        write_csv(
            &p,
            &["step", "tau", "y", "z", "phi"],
            run.snapshots.iter().flat_map(|s| {
                s.phi.chunks(grid.nz).enumerate().flat_map(move |(j, row)| {
                    row.iter().enumerate().map(move |(i, &phi)| {
                        vec![s.step.to_string(), num(s.tau), num(grid.y(j)), num(grid.z(i)), num(phi)]
                    })
                })
            }),
        )?;
    }
    let f = &run.final_field;
    let p = art.path("final_field2d.csv");
    write_csv(
        &p,
        &["y", "z", "phi"],
        (0..f.ny).flat_map(|j| (0..f.nz).map(move |i| [grid.y(j), grid.z(i), f.at(j, i)].map(num))),
    )?;
    let entries = energy_audit(&run.snapshots)?;
    write_audit(art, &entries)?;

    let c = &run.curve;
    let last = c.taus.len() - 1;
    let s = c.s_phys(last);
    art.metric("front.mean_final", cosine_modes(&s, 0)[0]);
    art.metric("front.min_final", s.iter().copied().fold(f64::INFINITY, f64::min));
    art.metric("front.max_final", s.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    art.metric("length.final", c.lengths[last]);
    art.metric("stability.margin", run.stability.margin);
    art.metric("stability.max_dtau", run.stability.max_dtau);
    art.metric("dtau", grid.dtau);
    art.metric("steps", grid.steps as f64);
    art.metric("energy.max_relative_residual", max_relative_residual(&entries));

    // snapshot with the strongest non-uniform mode
    let mut peak = (0usize, 0usize, 0.0f64);
    for k in 0..c.taus.len() {
        let a = cosine_modes(&c.s_phys(k), MODE_COUNT);
        for (m, v) in a.iter().enumerate().skip(1) {
            if v.abs() > peak.2.abs() {
                peak = (k, m, *v);
            }
        }
    }
    art.metric("mode.peak_dominant", peak.1 as f64);
    art.metric("mode.peak_amplitude", peak.2);
    art.metric("mode.peak_tau", c.taus[peak.0]);
    // the peak mode tracked through the last third of the run
    let m = peak.1;
    let amp: Vec<f64> = (0..c.taus.len()).map(|k| cosine_modes(&c.s_phys(k), m)[m].abs()).collect();
    let tau_end = c.taus[last];
    let late: Vec<usize> = (0..c.taus.len()).filter(|&k| c.taus[k] >= 2.0 * tau_end / 3.0 - 1e-12).collect();
    if let (Some(&first), true) = (late.first(), late.len() >= 2) {
        art.metric("mode.late_change", amp[last] - amp[first]);
        let rise = late.windows(2).map(|w| amp[w[1]] - amp[w[0]]).fold(f64::NEG_INFINITY, f64::max);
        art.metric("mode.late_max_increase", rise);
    }
    if let Some(SnapshotPlan::AtTimes(times)) = &r.solver2d.snapshots {
        for &t in times {
            if let Some(k) = c.nearest(t) {
                let (dm, a) = crate::solver2d::dominant_mode(&c.s_phys(k), MODE_COUNT);
                art.metric(format!("mode.dominant.tau_{}", key_num(t)), dm as f64);
                art.metric(format!("mode.amplitude.tau_{}", key_num(t)), a);
            }
        }
    }
    let a = cosine_modes(&s, MODE_COUNT);
    for (m, v) in a.iter().enumerate().skip(1) {
        art.metric(format!("mode.a{m}_final"), *v);
    }
    Ok(())
}

fn channel_key(tau: f64, y: Option<f64>) -> String {
    match y {
        Some(y) => format!("tau_{}.y_{}", key_num(tau), key_num(y)),
        None => format!("tau_{}", key_num(tau)),
    }
}

fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn write_campaign(art: &mut Artifacts, c: &Campaign, names: &[&str]) -> Result<()> {
    let s = &c.surrogate;
    let p = art.path("coefficients.csv");
    write_csv(
        &p,
        &["tau", "y", "n", "index", "coefficient"],
        s.channels.iter().enumerate().flat_map(|(k, ch)| {
            s.basis.indices.iter().enumerate().map(move |(n, idx)| {
                let index = idx.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("-");
                vec![num(ch.tau), opt_num(ch.y), n.to_string(), index, num(s.coeffs[k][n])]
            })
        }),
    )?;
    let p = art.path("statistics.csv");
    write_csv(
        &p,
        &["tau", "y", "mean", "std", "sample_mean", "sample_std", "skewness", "kurtosis"],
        c.statistics.iter().map(|st| {
            vec![
                num(st.tau),
                opt_num(st.y),
                num(st.mean),
                num(st.std),
                num(st.sample_mean),
                num(st.sample_std),
                num(st.skewness),
                num(st.kurtosis),
            ]
        }),
    )?;
    let p = art.path("histogram.csv");
    write_csv(
        &p,
        &["tau", "y", "bin", "lo", "hi", "count"],
        c.histograms.iter().zip(&s.channels).flat_map(|(h, ch)| {
            h.counts.iter().enumerate().map(move |(b, &n)| {
                vec![num(ch.tau), opt_num(ch.y), b.to_string(), num(h.edges[b]), num(h.edges[b + 1]), n.to_string()]
            })
        }),
    )?;
    let mut header = vec!["sample".to_string()];
    header.extend(names.iter().map(|n| n.to_string()));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let p = art.path("samples.csv");
    write_csv(
        &p,
        &header,
        s.archive.points.iter().enumerate().map(|(i, x)| {
            let mut row = vec![i.to_string()];
            row.extend(x.iter().copied().map(num));
            row
        }),
    )?;
    let p = art.path("archive.csv");
    write_csv(
        &p,
        &["sample", "tau", "y", "response"],
        s.archive.responses.iter().enumerate().flat_map(|(i, resp)| {
            resp.iter()
                .zip(&s.channels)
                .map(move |(v, ch)| vec![i.to_string(), num(ch.tau), opt_num(ch.y), num(*v)])
        }),
    )
}

fn uq(r: &Resolved, art: &mut Artifacts) -> Result<()> {
    let (spec, opts, times) = r.uq.clone().ok_or_else(|| Error::Config("missing [uq] section".into()))?;
    let n = crate::uq::legendre::basis_size(spec.dims(), opts.degree);
    let m = opts.sample_count(n);
    art.campaign = Some(CampaignRecord {
        parameters: spec.parameters.clone(),
        bindings: spec.bindings.iter().map(|b| (b.target.name().to_string(), b.expr.source().to_string())).collect(),
        samples: m,
        degree: opts.degree,
        basis_size: n,
        truncated_mass: spec.truncated_mass(),
        sample_status: vec!["ok".to_string(); m],
    });
    let campaign = match r.mode {
        Mode::Uq2d => run_uq_2d(&spec, &r.physics, grid2d(r)?, &r.solver2d, &times, &opts)?,
        _ => run_uq_1d(&spec, &r.physics, grid1d(r)?, &r.solver1d, &times, &opts)?,
    };
    write_campaign(art, &campaign, &spec.names())?;

    art.metric("samples", campaign.samples as f64);
    art.metric("basis_size", n as f64);
    art.metric("condition", campaign.surrogate.condition);
    art.metric("truncated_mass", campaign.truncated_mass);
    for st in &campaign.statistics {
        let k = channel_key(st.tau, st.y);
        art.metric(format!("mean.{k}"), st.mean);
        art.metric(format!("std.{k}"), st.std);
        art.metric(format!("sample_mean.{k}"), st.sample_mean);
        art.metric(format!("sample_std.{k}"), st.sample_std);
        art.metric(format!("skewness.{k}"), st.skewness);
        art.metric(format!("kurtosis.{k}"), st.kurtosis);
    }
    if r.mode == Mode::Uq2d {
        for &t in &times {
            let rows: Vec<_> = campaign.statistics.iter().filter(|s| s.tau == t).collect();
            let k = channel_key(t, None);
            let count = rows.len() as f64;
            let mean: Vec<f64> = rows.iter().map(|s| s.mean).collect();
            let std: Vec<f64> = rows.iter().map(|s| s.std).collect();
            art.metric(format!("mean_avg.{k}"), mean.iter().sum::<f64>() / count);
            art.metric(format!("mean_min.{k}"), mean.iter().copied().fold(f64::INFINITY, f64::min));
            art.metric(format!("mean_max.{k}"), mean.iter().copied().fold(f64::NEG_INFINITY, f64::max));
            art.metric(format!("std_avg.{k}"), std.iter().sum::<f64>() / count);
            art.metric(format!("std_max.{k}"), std.iter().copied().fold(f64::NEG_INFINITY, f64::max));
            art.metric(format!("std_min.{k}"), std.iter().copied().fold(f64::INFINITY, f64::min));
            let absmax = |f: &dyn Fn(&&crate::uq::campaign::ChannelStats) -> f64| {
                rows.iter().map(f).filter(|v| v.is_finite()).fold(0.0, f64::max)
            };
            art.metric(format!("skewness_absmax.{k}"), absmax(&|s| s.skewness.abs()));
            art.metric(format!("kurtosis_excess_absmax.{k}"), absmax(&|s| (s.kurtosis - 3.0).abs()));
        }
    }
    Ok(())
}

fn oracle(r: &Resolved, section: OracleSection, art: &mut Artifacts) -> Result<()> {
    let grid = grid1d(r)?;
    let exact = neumann_oracle(&r.physics)?;
    let mut times = section.times.clone();
    times.retain(|t| *t > 0.0 && *t <= grid.tau_end() + 1e-12);
    if times.is_empty() {
        return Err(Error::validation("oracle.times", "need at least one time in (0, tau_end]"));
    }
    let opts = Solver1DOptions { snapshots: Some(SnapshotPlan::AtTimes(times.clone())), keep_fields: false, ..r.solver1d.clone() };
    let run = Solver1D::new(r.physics.clone(), grid, opts)?.run()?;

    let p = art.path("oracle.csv");
    let tau_end = grid.tau_end();
    write_csv(
        &p,
        &["tau", "S_analytic"],
        (0..=200).map(|k| {
            let t = tau_end * k as f64 / 200.0;
            [t, exact.position(t)].map(num)
        }),
    )?;
    let tr = &run.trace;
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for (&t, &s) in tr.taus.iter().zip(&tr.s_phys) {
        let e = exact.position(t);
        let rel = if e > 0.0 { (s - e).abs() / e } else { (s - e).abs() };
        rows.push([t, s, e, (s - e).abs(), rel].map(num));
        if t > 0.0 {
            worst = worst.max(rel);
            art.metric(format!("oracle.rel_error.tau_{}", key_num(t)), rel);
        }
    }
    let p = art.path("comparison.csv");
    write_csv(&p, &["tau", "S_numeric", "S_analytic", "abs_error", "rel_error"], rows)?;
    art.metric("oracle.lambda", exact.lambda);
    art.metric("oracle.max_rel_error", worst);
    Ok(())
}

/// A three-layer profile: solid, mush and superheated liquid.
pub fn layered_profile(n: usize) -> Vec<f64> {
    (0..n).map(|i| if i < n / 3 { -0.2 } else if i < n / 2 { 0.4 } else { 1.05 }).collect()
}

/// Per-step relative energy change of the fully insulated, static system.
pub fn closed_system_drift(cfg: &DimlessConfig, grid: Grid1D) -> Result<Vec<(usize, f64, f64, f64)>> {
    let opts = Solver1DOptions { wall: WallCondition::Insulated, far: FarCondition::Insulated, ..Default::default() };
    let cfg = DimlessConfig { beta_hat: 0.0, ..cfg.clone() };
    let mut solver = Solver1D::new(cfg, grid, opts)?;
    let mut field = solver.initialize_with(layered_profile(grid.n))?;
    let e0 = solver.energy(&field);
    let mut prev = e0;
    let mut out = vec![(0, 0.0, e0, 0.0)];
    for _ in 0..grid.steps {
        solver.step(&mut field)?;
        let e = solver.energy(&field);
        out.push((field.step, field.tau, e, (e - prev).abs() / e0.abs()));
        prev = e;
    }
    Ok(out)
}

/// Cumulative relative energy residual of the open problem on one grid.
pub fn open_system_residual(cfg: &DimlessConfig, grid: Grid1D, opts: &Solver1DOptions) -> Result<(f64, f64)> {
    let opts = Solver1DOptions { keep_fields: false, ..opts.clone() };
    let run = Solver1D::new(cfg.clone(), grid, opts)?.run()?;
    let audit = energy_audit(&run.snapshots)?;
    let total = audit.iter().map(|e| e.residual).sum::<f64>().abs();
    let scale = run.snapshots.last().map_or(1.0, |s| s.energy.abs());
    Ok((max_relative_residual(&audit), total / scale))
}

fn audit(r: &Resolved, section: AuditSection, art: &mut Artifacts) -> Result<()> {
    let grid = grid1d(r)?;
    if section.refinements.len() < 2 || section.refinements.iter().any(|h| !(*h > 0.0 && *h < 1.0)) {
        return Err(Error::validation("audit.refinements", "need at least two spacings in (0, 1)"));
    }
    if !(section.dtau_ratio > 0.0) {
        return Err(Error::validation("audit.dtau_ratio", "must be positive"));
    }
    let drift = closed_system_drift(&r.physics, grid)?;
    let p = art.path("closed.csv");
    let stride = (drift.len() / 1000).max(1);
    write_csv(
        &p,
        &["step", "tau", "energy", "relative_change"],
        drift
            .iter()
            .enumerate()
            .filter(|(k, _)| k % stride == 0 || *k == drift.len() - 1)
            .map(|(_, &(s, t, e, c))| vec![s.to_string(), num(t), num(e), num(c)]),
    )?;
    let worst = drift.iter().map(|d| d.3).fold(0.0, f64::max);

    let mut rows = Vec::new();
    let mut errs = Vec::new();
    for &h in &section.refinements {
        let g = Grid1D::from_spacing(h, section.dtau_ratio * h, grid.tau_end())?;
        let (interval, cumulative) = open_system_residual(&r.physics, g, &r.solver1d)?;
        rows.push([h, g.dtau, interval, cumulative].map(num));
        art.metric(format!("audit.cumulative.dz_{}", key_num(h)), cumulative);
        errs.push(cumulative);
    }
    let p = art.path("refinement.csv");
    write_csv(&p, &["dz", "dtau", "max_interval_residual", "cumulative_residual"], rows)?;
    art.metric("audit.closed_max_change", worst);
    art.metric("audit.order", observed_order(&section.refinements, &errs));
    Ok(())
}

/// Loads a configuration file and runs it.
pub fn run_file(path: &Path, opts: &RunOptions) -> Result<RunOutcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse { path: path.to_path_buf(), message: e.to_string() })?;
    let cfg = toml::from_str::<RunConfig>(&text).map_err(|e| Error::Parse { path: path.to_path_buf(), message: e.to_string() })?;
    run(&cfg, &text, opts)
}
