//! 2D campaign with a cosine influx of uncertain strength: front statistics
//! at y = 0.5 and y = 1 for two times, on a coarse grid.
//!
//! ```text
//! cargo run --release --example uq_2d -- [samples]
//! ```

use std::time::Instant;

use enthalpy_uq::model::{nondimensionalize, DimlessConfig, PhysicalParams};
use enthalpy_uq::solver2d::{stability_margin, Grid2D, Solver2DOptions, YBoundary};
use enthalpy_uq::uq::{run_uq_2d, CampaignOptions, Distribution, RandomInputSpec, RandomParameter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(32);
    let spec = RandomInputSpec::new(
        vec![
            RandomParameter { name: "b".into(), distribution: Distribution::Uniform { low: 0.1, high: 0.3 } },
            RandomParameter { name: "zeta".into(), distribution: Distribution::Uniform { low: 1.0, high: 1.2 } },
        ],
        vec![("beta_hat".into(), "b".into()), ("eta_hat".into(), "1 + zeta*(1 + cos(3*pi*y))".into())],
    )?;
    let mut base = nondimensionalize(&PhysicalParams::icing_2d(), 0.0, 200.0)?;
    base.l0_star = 0.2;

    // the fastest boundary sets the step
    let probe = Grid2D::from_spacing(0.025, 0.025, 1.0, 0.7)?;
    let fastest = DimlessConfig { beta_hat: 0.3, ..base.clone() };
    let dtau = 0.9 * stability_margin(&probe, &fastest, 1.0).max_dtau;
    let grid = Grid2D::from_spacing(0.025, 0.025, dtau, 0.7)?;
    let solver = Solver2DOptions { y_boundary: YBoundary::Mirror, ..Default::default() };
    let opts = CampaignOptions { samples: Some(samples), seed: 2024, ..Default::default() };

    let start = Instant::now();
    let c = run_uq_2d(&spec, &base, grid, &solver, &[0.3, 0.7], &opts)?;
    println!("{} samples, {} steps each, {:.1?}", c.samples, grid.steps, start.elapsed());
    println!("{:>5} {:>5} {:>9} {:>9} {:>9} {:>9}", "tau", "y", "mean", "std", "skew", "kurt");
    for tau in [0.3, 0.7] {
        for y in [0.5, 1.0] {
            let s = c.stats_at(tau, Some(y))?;
            println!(
                "{tau:>5} {y:>5} {:>9.4} {:>9.4} {:>9.3} {:>9.3}",
                s.mean, s.sample_std, s.skewness, s.kurtosis
            );
        }
    }
    Ok(())
}
