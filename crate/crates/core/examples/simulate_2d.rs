//! 2D injection problem with a `y`-dependent influx. Prints the interface
//! curve's leading cosine modes at every snapshot.
//!
//! ```text
//! cargo run --release --example simulate_2d -- [L0] [tau_end] [h] [eta]
//! ```

use std::time::Instant;

use enthalpy_uq::influx::Influx;
use enthalpy_uq::interface::solid_fraction_front;
use enthalpy_uq::model::{nondimensionalize, PhysicalParams};
use enthalpy_uq::solver1d::SnapshotPlan;
use enthalpy_uq::solver2d::{cosine_modes, stability_margin, Grid2D, Solver2D, Solver2DOptions, YBoundary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let l0: f64 = args.first().map_or(Ok(0.2), |a| a.parse())?;
    let tau_end: f64 = args.get(1).map_or(Ok(2.0), |a| a.parse())?;
    let h: f64 = args.get(2).map_or(Ok(0.01), |a| a.parse())?;
    let eta = args.get(3).map_or("2+cos(3*pi*y)", |s| s.as_str());

    let mut cfg = nondimensionalize(&PhysicalParams::icing_2d(), 0.0, 200.0)?;
    cfg.beta_hat = 0.1;
    cfg.l0_star = l0;
    cfg.eta_hat = Influx::parse(eta)?;

    // 90% of the explicit limit
    let probe = Grid2D::from_spacing(h, h, 1.0, tau_end)?;
    let dtau = 0.9 * stability_margin(&probe, &cfg, 1.0).max_dtau;
    let grid = Grid2D::from_spacing(h, h, dtau, tau_end)?;
    println!("dtau = {dtau:.4e}, {} steps on {}x{}", grid.steps, grid.ny, grid.nz);

    let times: Vec<f64> = (1..=10).map(|k| tau_end * k as f64 / 10.0).collect();
    // cos(mπy) forcing is not 1-periodic; mirror walls keep it a single mode
    let opts = Solver2DOptions {
        snapshots: Some(SnapshotPlan::AtTimes(times)),
        y_boundary: YBoundary::Mirror,
        keep_fields: true,
        ..Default::default()
    };
    let start = Instant::now();
    let run = Solver2D::new(cfg, grid, opts)?.run()?;
    println!("wall time {:.2?}", start.elapsed());

    println!("{:>6} {:>9} {:>9} {:>9} {:>9} {:>9}", "tau", "mean S", "a1", "a2", "a3", "a4");
    for k in 0..run.curve.taus.len() {
        let a = cosine_modes(&run.curve.s_phys(k), 4);
        println!(
            "{:>6.3} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            run.curve.taus[k], a[0], a[1], a[2], a[3], a[4]
        );
        let snap = &run.snapshots[k];
        let sf: Vec<f64> = snap.phi.chunks(grid.nz).map(|r| snap.length * solid_fraction_front(r, grid.dz)).collect();
        let a = cosine_modes(&sf, 4);
        println!("   sf  {:>9.5} {:>9.2e} {:>9.2e} {:>9.2e} {:>9.2e}", a[0], a[1], a[2], a[3], a[4]);
    }
    Ok(())
}
