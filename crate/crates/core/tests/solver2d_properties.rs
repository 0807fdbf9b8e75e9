use enthalpy_uq::audit::{energy_audit, max_relative_residual};
use enthalpy_uq::influx::Influx;
use enthalpy_uq::model::{nondimensionalize, DimlessConfig, PhysicalParams};
use enthalpy_uq::solver1d::SnapshotPlan;
use enthalpy_uq::solver2d::{cosine_modes, stability_margin, Grid2D, Run2D, Solver2D, Solver2DOptions, YBoundary};

fn icing(eta: &str, beta: f64, l0: f64) -> DimlessConfig {
    let mut cfg = nondimensionalize(&PhysicalParams::icing_2d(), 0.0, 200.0).unwrap();
    cfg.beta_hat = beta;
    cfg.eta_hat = Influx::parse(eta).unwrap();
    cfg.l0_star = l0;
    cfg
}

fn run(cfg: &DimlessConfig, dy: f64, dz: f64, tau_end: f64, opts: Solver2DOptions) -> Run2D {
    let probe = Grid2D::from_spacing(dy, dz, 1.0, tau_end).unwrap();
    let dtau = 0.9 * stability_margin(&probe, cfg, opts.lateral_diffusion).max_dtau;
    let grid = Grid2D::from_spacing(dy, dz, dtau, tau_end).unwrap();
    Solver2D::new(cfg.clone(), grid, opts).unwrap().run().unwrap()
}

/// Spread over `y` of the row-averaged enthalpy.
fn lateral_spread(run: &Run2D) -> f64 {
    let f = &run.final_field;
    let means: Vec<f64> = (0..f.ny).map(|j| f.row(j).iter().sum::<f64>() / f.nz as f64).collect();
    let hi = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = means.iter().copied().fold(f64::INFINITY, f64::min);
    hi - lo
}

#[test]
fn half_period_shift_shifts_the_solution() {
    let a = icing("2 + sin(2*pi*y)", 0.1, 0.5);
    let b = icing("2 + sin(2*pi*(y + 0.5))", 0.1, 0.5);
    let ra = run(&a, 0.05, 0.05, 0.05, Solver2DOptions::default());
    let rb = run(&b, 0.05, 0.05, 0.05, Solver2DOptions::default());
    let (fa, fb) = (&ra.final_field, &rb.final_field);
    let n = fa.ny - 1;
    let mut worst = 0.0f64;
    for j in 0..fa.ny {
        let k = (j + n / 2) % n;
        for i in 0..fa.nz {
            worst = worst.max((fa.at(j, i) - fb.at(k, i)).abs());
        }
    }
    assert!(worst < 1e-10, "max mismatch {worst:e}");
}

#[test]
fn stronger_lateral_conduction_smooths() {
    let cfg = icing("2 + cos(2*pi*y)", 0.1, 0.5);
    let spread = |k: f64| {
        let opts = Solver2DOptions { lateral_diffusion: k, ..Default::default() };
        lateral_spread(&run(&cfg, 0.05, 0.05, 0.05, opts))
    };
    let (weak, strong) = (spread(0.2), spread(2.0));
    assert!(weak > 0.0);
    assert!(strong < weak, "k=2: {strong:e}, k=0.2: {weak:e}");
}

#[test]
fn weaker_forcing_gives_smaller_lateral_variation() {
    let opts = || Solver2DOptions { y_boundary: YBoundary::Mirror, ..Default::default() };
    let strong = run(&icing("2 + cos(pi*y)", 0.1, 0.5), 0.05, 0.05, 0.05, opts());
    let weak = run(&icing("1.3 + 0.3*cos(pi*y)", 0.1, 0.5), 0.05, 0.05, 0.05, opts());
    let (s, w) = (lateral_spread(&strong), lateral_spread(&weak));
    assert!(w < s, "weak forcing {w:e} vs strong {s:e}");
}

#[test]
fn cosine_forcing_excites_its_own_mode() {
    let cfg = icing("2 + cos(3*pi*y)", 0.1, 0.2);
    let opts = Solver2DOptions {
        y_boundary: YBoundary::Mirror,
        snapshots: Some(SnapshotPlan::AtTimes(vec![0.2])),
        ..Default::default()
    };
    let r = run(&cfg, 0.02, 0.02, 0.2, opts);
    let f = &r.final_field;
    let z_mid = f.nz / 4;
    let column: Vec<f64> = (0..f.ny).map(|j| f.at(j, z_mid)).collect();
    let a = cosine_modes(&column, 6);
    let (m, _) = a.iter().enumerate().skip(1).fold((0, 0.0f64), |best, (m, v)| if v.abs() > best.1 { (m, v.abs()) } else { best });
    assert_eq!(m, 3, "modes {a:?}");
}

#[test]
fn energy_residual_shrinks_under_refinement() {
    let cfg = icing("2 + cos(pi*y)", 0.1, 0.5);
    let residual = |h: f64| {
        let opts = Solver2DOptions {
            y_boundary: YBoundary::Mirror,
            snapshots: Some(SnapshotPlan::Every(1)),
            ..Default::default()
        };
        let r = run(&cfg, 0.1, h, 0.02, opts);
        max_relative_residual(&energy_audit(&r.snapshots).unwrap())
    };
    let (coarse, fine) = (residual(0.05), residual(0.025));
    assert!(fine < coarse, "dz=0.025: {fine:e}, dz=0.05: {coarse:e}");
}

#[test]
fn thread_partitioning_is_bitwise_neutral() {
    let cfg = icing("2 + cos(3*pi*y)", 0.1, 0.2);
    let a = run(&cfg, 0.02, 0.05, 0.02, Solver2DOptions { rows_per_task: 0, ..Default::default() });
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let b = pool.install(|| run(&cfg, 0.02, 0.05, 0.02, Solver2DOptions { rows_per_task: 5, ..Default::default() }));
    assert_eq!(a.final_field.phi, b.final_field.phi);
}
