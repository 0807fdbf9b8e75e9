//! Energy budget of the implicit 1D scheme: exact conservation with both
//! ends insulated, and a first-order residual for the open injection problem.
//!
//! ```text
//! cargo run --release --example energy_audit
//! ```

use enthalpy_uq::audit::{energy_audit, max_relative_residual, observed_order};
use enthalpy_uq::influx::Influx;
use enthalpy_uq::model::{nondimensionalize, PhysicalParams};
use enthalpy_uq::solver1d::{FarCondition, Grid1D, Solver1D, Solver1DOptions, WallCondition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = nondimensionalize(&PhysicalParams::icing_1d(), 0.0, 125.0)?;

    // closed system: both ends insulated
    let grid = Grid1D::from_spacing(0.01, 1e-4, 1.0)?;
    let opts = Solver1DOptions { wall: WallCondition::Insulated, far: FarCondition::Insulated, ..Default::default() };
    let mut solver = Solver1D::new(base.clone(), grid, opts)?;
    let n = grid.n;
    let phi = (0..n).map(|i| if i < n / 3 { -0.2 } else if i < n / 2 { 0.4 } else { 1.05 }).collect();
    let mut field = solver.initialize_with(phi)?;
    let e0 = solver.energy(&field);
    let mut worst: f64 = 0.0;
    let mut prev = e0;
    for _ in 0..grid.steps {
        solver.step(&mut field)?;
        let e = solver.energy(&field);
        worst = worst.max((e - prev).abs() / e0.abs());
        prev = e;
    }
    println!("closed system: max per-step relative change {worst:.3e}");

    // open system under grid refinement
    let mut cfg = base;
    cfg.beta_hat = 0.35;
    cfg.eta_hat = Influx::Constant(1.25);
    let hs = [0.02, 0.01, 0.005];
    let mut errs = Vec::new();
    for &dz in &hs {
        let grid = Grid1D::from_spacing(dz, dz / 100.0, 1.0)?;
        let run = Solver1D::new(cfg.clone(), grid, Solver1DOptions::default())?.run()?;
        let audit = energy_audit(&run.snapshots)?;
        let total: f64 = audit.iter().map(|e| e.residual).sum::<f64>().abs();
        let err = total / run.snapshots.last().unwrap().energy.abs();
        println!("dz = {dz:<6} max interval residual {:.3e}  cumulative {:.3e}", max_relative_residual(&audit), err);
        errs.push(err);
    }
    println!("observed order {:.3}", observed_order(&hs, &errs));
    Ok(())
}
