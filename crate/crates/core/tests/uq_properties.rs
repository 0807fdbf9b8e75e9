use enthalpy_uq::model::{nondimensionalize, PhysicalParams};
use enthalpy_uq::solver1d::{Grid1D, Solver1DOptions};
use enthalpy_uq::solver2d::{stability_margin, Grid2D, Solver2DOptions};
use enthalpy_uq::uq::campaign::{run_uq_1d, run_uq_2d, CampaignOptions};
use enthalpy_uq::uq::{
    fit_surrogate, sample_inputs, Archive, Channel, Distribution, FitMethod, LegendreBasis, Moments, RandomInputSpec,
    RandomParameter,
};
use proptest::prelude::*;

fn spec(params: &[(&str, f64, f64)], bind: &[(&str, &str)]) -> RandomInputSpec {
    RandomInputSpec::new(
        params
            .iter()
            .map(|&(name, low, high)| RandomParameter { name: name.into(), distribution: Distribution::Uniform { low, high } })
            .collect(),
        bind.iter().map(|&(k, v)| (k.to_string(), v.to_string())).collect(),
    )
    .unwrap()
}

#[test]
fn campaign_is_idempotent() {
    let base = nondimensionalize(&PhysicalParams::icing_1d(), 0.35, 125.0).unwrap();
    let s = spec(&[("b", 0.2, 0.7)], &[("beta_hat", "b")]);
    let grid = Grid1D::from_spacing(0.05, 1e-3, 0.5).unwrap();
    let opts = CampaignOptions { degree: 2, seed: 9, ..Default::default() };
    let a = run_uq_1d(&s, &base, grid, &Solver1DOptions::default(), &[0.25, 0.5], &opts).unwrap();
    let b = run_uq_1d(&s, &base, grid, &Solver1DOptions { ..Default::default() }, &[0.25, 0.5], &CampaignOptions {
        threads: Some(3),
        ..opts.clone()
    })
    .unwrap();
    assert_eq!(a.surrogate.coeffs, b.surrogate.coeffs);
    assert_eq!(a.surrogate.archive.points, b.surrogate.archive.points);
    let c = run_uq_1d(&s, &base, grid, &Solver1DOptions::default(), &[0.25, 0.5], &CampaignOptions { seed: 10, ..opts })
        .unwrap();
    assert_ne!(a.surrogate.archive.points, c.surrogate.archive.points);
}

#[test]
fn y_independent_campaign_has_identical_rows() {
    let mut base = nondimensionalize(&PhysicalParams::icing_2d(), 0.1, 200.0).unwrap();
    base.l0_star = 0.5;
    let s = spec(&[("b", 0.1, 0.3), ("zeta", 1.0, 1.2)], &[("beta_hat", "b"), ("eta_hat", "1 + zeta")]);
    let probe = Grid2D::from_spacing(0.1, 0.05, 1.0, 0.05).unwrap();
    let mut dtau = f64::INFINITY;
    for b in [0.1, 0.3] {
        let mut c = base.clone();
        c.beta_hat = b;
        dtau = dtau.min(0.9 * stability_margin(&probe, &c, 1.0).max_dtau);
    }
    let grid = Grid2D::from_spacing(0.1, 0.05, dtau, 0.05).unwrap();
    let opts = CampaignOptions { degree: 2, seed: 3, samples: Some(24), ..Default::default() };
    let camp = run_uq_2d(&s, &base, grid, &Solver2DOptions::default(), &[0.05], &opts).unwrap();
    let rows = &camp.surrogate.coeffs;
    assert_eq!(rows.len(), grid.ny);
    for row in rows {
        for (a, b) in row.iter().zip(&rows[0]) {
            assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
        }
    }
}

fn fit_1d(values: impl Fn(f64) -> f64, m: usize, seed: u64) -> (enthalpy_uq::uq::GpcSurrogate, Vec<f64>) {
    let s = spec(&[("x", -1.0, 1.0)], &[("eta_hat", "2 + x")]);
    let points = sample_inputs(&s, m, 5, seed).unwrap();
    let resp: Vec<f64> = points.iter().map(|p| values(p[0])).collect();
    let sur = fit_surrogate(
        Archive { points, responses: resp.iter().map(|&v| vec![v]).collect() },
        vec![Channel { tau: 0.0, y: None }],
        LegendreBasis::unit(1, 4).unwrap(),
        FitMethod::Cholesky,
    )
    .unwrap();
    (sur, resp)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fit_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, seed in 0u64..1000) {
        let f = |x: f64| (2.0 * x).sin();
        let g = |x: f64| x.exp();
        let (sf, _) = fit_1d(f, 50, seed);
        let (sg, _) = fit_1d(g, 50, seed);
        let (sh, _) = fit_1d(|x| a * f(x) + b * g(x), 50, seed);
        for k in 0..sh.coeffs[0].len() {
            let lin = a * sf.coeffs[0][k] + b * sg.coeffs[0][k];
            prop_assert!((sh.coeffs[0][k] - lin).abs() <= 1e-9 * (1.0 + lin.abs()));
        }
    }

    #[test]
    fn polynomials_are_reproduced(c in proptest::collection::vec(-2.0f64..2.0, 5), seed in 0u64..1000) {
        let p = |x: f64| c[0] + c[1] * x + c[2] * x * x + c[3] * x.powi(3) + c[4] * x.powi(4);
        let (sur, resp) = fit_1d(p, 50, seed);
        for (pt, v) in sur.archive.points.iter().zip(&resp) {
            prop_assert!((sur.evaluate(pt, 0).unwrap() - v).abs() <= 1e-9);
        }
        // exact moments of the polynomial under U(-1, 1)
        let mean = c[0] + c[2] / 3.0 + c[4] / 5.0;
        prop_assert!((sur.mean(0) - mean).abs() <= 1e-9);
    }

    #[test]
    fn moments_shift_and_scale(v in proptest::collection::vec(-5.0f64..5.0, 3..40), a in 0.1f64..4.0, b in -3.0f64..3.0) {
        let m = Moments::from_samples(&v);
        prop_assume!(m.std > 1e-6);
        let w: Vec<f64> = v.iter().map(|x| a * x + b).collect();
        let n = Moments::from_samples(&w);
        prop_assert!((n.mean - (a * m.mean + b)).abs() <= 1e-9);
        prop_assert!((n.std - a * m.std).abs() <= 1e-9 * (1.0 + a * m.std));
        prop_assert!((n.skewness - m.skewness).abs() <= 1e-7);
        prop_assert!((n.kurtosis - m.kurtosis).abs() <= 1e-7);
        prop_assert!(m.kurtosis >= 1.0 - 1e-9);
    }
}
