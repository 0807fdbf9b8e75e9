//! Surface-temperature sweep of the 1D UQ campaign: β̂ ~ U(0.2, 0.7),
//! η̂ ~ U(1, 1.25), front statistics at τ = 4.
//!
//! ```text
//! cargo run --release --example uq_1d -- [samples]
//! ```

use std::time::Instant;

use enthalpy_uq::interface::SOLID_EDGE_LEVEL;
use enthalpy_uq::model::{nondimensionalize, PhysicalParams};
use enthalpy_uq::solver1d::{Grid1D, Solver1DOptions};
use enthalpy_uq::uq::{run_uq_1d, CampaignOptions, Distribution, RandomInputSpec, RandomParameter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples: Option<usize> = std::env::args().nth(1).map(|a| a.parse()).transpose()?;
    let spec = RandomInputSpec::new(
        vec![
            RandomParameter { name: "b".into(), distribution: Distribution::Uniform { low: 0.2, high: 0.7 } },
            RandomParameter { name: "h".into(), distribution: Distribution::Uniform { low: 1.0, high: 1.25 } },
        ],
        vec![("beta_hat".into(), "b".into()), ("eta_hat".into(), "h".into())],
    )?;
    let grid = Grid1D::from_spacing(0.01, 1e-4, 4.0)?;
    let solver = Solver1DOptions { interface_level: SOLID_EDGE_LEVEL, ..Default::default() };
    let opts = CampaignOptions { samples, seed: 2024, ..Default::default() };

    println!("{:>6} {:>9} {:>9} {:>9} {:>9}", "T0", "mean", "std", "skew", "kurt");
    for t0 in [-26.0, -18.0, -10.0, -2.0] {
        let physical = PhysicalParams { t_wall: t0, ..PhysicalParams::icing_1d() };
        let base = nondimensionalize(&physical, 0.0, 125.0)?;
        let start = Instant::now();
        let c = run_uq_1d(&spec, &base, grid, &solver, &[4.0], &opts)?;
        let s = &c.statistics[0];
        println!(
            "{t0:>6} {:>9.4} {:>9.4} {:>9.3} {:>9.3}   ({} samples, {:.1?})",
            s.mean, s.std, s.skewness, s.kurtosis, c.samples, start.elapsed()
        );
    }
    Ok(())
}
