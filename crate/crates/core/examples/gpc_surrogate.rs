//! Fits a degree-4 Legendre surrogate to a closed-form response of two
//! uniform inputs and compares its moments with the sample moments and with
//! a dense tensor-grid estimate.
//!
//! ```text
//! cargo run --example gpc_surrogate -- [seed]
//! ```

use enthalpy_uq::uq::{
    basis_size, fit_surrogate, sample_inputs, Archive, Channel, Distribution, FitMethod, LegendreBasis, Moments,
    RandomInputSpec, RandomParameter,
};

fn response(b: f64, h: f64) -> f64 {
    (0.8 * b * h).sqrt() + 0.1 * (4.0 * b).sin()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(7);
    let supports = vec![(0.2, 0.7), (1.0, 1.25)];
    let spec = RandomInputSpec::new(
        vec![
            RandomParameter { name: "b".into(), distribution: Distribution::Uniform { low: 0.2, high: 0.7 } },
            RandomParameter { name: "h".into(), distribution: Distribution::Uniform { low: 1.0, high: 1.25 } },
        ],
        vec![("beta_hat".into(), "b".into()), ("eta_hat".into(), "h".into())],
    )?;
    let n = basis_size(2, 4);
    let m = 2 * n * n;
    let points = sample_inputs(&spec, m, n, seed)?;
    let values: Vec<f64> = points.iter().map(|p| response(p[0], p[1])).collect();
    let sur = fit_surrogate(
        Archive { points: points.clone(), responses: values.iter().map(|&v| vec![v]).collect() },
        vec![Channel { tau: 0.0, y: None }],
        LegendreBasis::new(4, supports)?,
        FitMethod::Cholesky,
    )?;

    // midpoint rule on a 400 x 400 grid
    let k = 400;
    let mut grid = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let b = 0.2 + 0.5 * (i as f64 + 0.5) / k as f64;
            let h = 1.0 + 0.25 * (j as f64 + 0.5) / k as f64;
            grid.push(response(b, h));
        }
    }
    let dense = Moments::from_samples(&grid);
    let sample = Moments::from_samples(&values);

    println!("basis size {n}, {m} samples, Gram condition {:.2}", sur.condition);
    println!("{:>10} {:>12} {:>12}", "", "mean", "std");
    println!("{:>10} {:>12.6} {:>12.6}", "surrogate", sur.mean(0), sur.std(0));
    println!("{:>10} {:>12.6} {:>12.6}", "samples", sample.mean, sample.std);
    println!("{:>10} {:>12.6} {:>12.6}", "grid", dense.mean, dense.std);
    let worst = points
        .iter()
        .zip(&values)
        .map(|(p, v)| sur.evaluate(p, 0).map(|s| (s - v).abs()))
        .try_fold(0.0f64, |a, e| e.map(|e| a.max(e)))?;
    println!("largest residual at the sample points {worst:.2e}");
    Ok(())
}
