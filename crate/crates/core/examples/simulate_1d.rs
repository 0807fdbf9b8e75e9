//! The four deterministic icing runs: front position at τ = 4 and the
//! growth regime for each (η̂, β̂) pair.
//!
//! ```text
//! cargo run --release --example simulate_1d
//! ```

use std::time::Instant;

use enthalpy_uq::influx::Influx;
use enthalpy_uq::interface::SOLID_EDGE_LEVEL;
use enthalpy_uq::model::{nondimensionalize, PhysicalParams};
use enthalpy_uq::solver1d::{Grid1D, Solver1D, Solver1DOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = nondimensionalize(&PhysicalParams::icing_1d(), 0.0, 125.0)?;
    println!("gamma = {}, theta_0 = {}, theta_i = {}", base.gamma, base.theta_wall, base.theta_initial);
    let grid = Grid1D::from_spacing(0.01, 1e-4, 4.0)?;
    let opts = Solver1DOptions { interface_level: SOLID_EDGE_LEVEL, keep_fields: false, ..Default::default() };

    println!("{:>5} {:>5} {:>8} {:>8} {:>8} {:>10}  time", "eta", "beta", "S(4)", "S*(4)", "L(4)", "regime");
    for (eta, beta) in [(1.25, 0.35), (1.25, 1.0), (1.0, 0.35), (1.0, 1.0)] {
        let mut cfg = base.clone();
        cfg.eta_hat = Influx::Constant(eta);
        cfg.beta_hat = beta;
        let start = Instant::now();
        let run = Solver1D::new(cfg, grid, opts.clone())?.run()?;
        let k = run.trace.len() - 1;
        println!(
            "{eta:>5} {beta:>5} {:>8.4} {:>8.4} {:>8.3} {:>10}  {:.1?}",
            run.trace.s_phys[k],
            run.trace.s_star[k],
            run.trace.length[k],
            run.regimes[k].as_str(),
            start.elapsed()
        );
    }
    Ok(())
}
