//! Static-boundary run checked against the two-phase similarity solution.
//!
//! ```text
//! cargo run --release --example neumann_oracle -- [L0] [dz] [dtau]
//! ```

use enthalpy_uq::model::{nondimensionalize, PhysicalParams};
use enthalpy_uq::oracle::neumann_oracle;
use enthalpy_uq::solver1d::{Grid1D, Solver1D, Solver1DOptions, SnapshotPlan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let l0 = args.first().copied().unwrap_or(4.0);
    let dz = args.get(1).copied().unwrap_or(0.0025);
    let dtau = args.get(2).copied().unwrap_or(1e-4);
    let level = args.get(3).copied().unwrap_or(0.5);

    let mut cfg = nondimensionalize(&PhysicalParams::icing_1d(), 0.0, 125.0)?;
    cfg.l0_star = l0;
    let exact = neumann_oracle(&cfg)?;
    println!("lambda = {:.10}", exact.lambda);

    let grid = Grid1D::from_spacing(dz / l0, dtau, 4.0)?;
    let opts = Solver1DOptions {
        snapshots: Some(SnapshotPlan::AtTimes(vec![0.5, 1.0, 2.0, 3.0, 4.0])),
        keep_fields: false,
        interface_level: level,
        ..Default::default()
    };
    let run = Solver1D::new(cfg, grid, opts)?.run()?;
    println!("{:>6} {:>12} {:>12} {:>10}", "tau", "numeric", "exact", "rel.err");
    for (tau, s) in run.trace.taus.iter().zip(&run.trace.s_phys).skip(1) {
        let e = exact.position(*tau);
        println!("{tau:>6.2} {s:>12.6} {e:>12.6} {:>10.2e}", (s - e).abs() / e);
    }
    Ok(())
}
