//! Random inputs: per-parameter distributions, the binding of parameter
//! values into a solver configuration, and seeded i.i.d. sampling.
//!
//! Samples come from `ChaCha8Rng::seed_from_u64(seed)`, drawn point by point
//! and, within a point, in parameter order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::influx::{Formula, Influx};
use crate::model::DimlessConfig;

/// Normal inputs are truncated to `μ ± NORMAL_TRUNCATION σ`.
pub const NORMAL_TRUNCATION: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Distribution {
    Uniform { low: f64, high: f64 },
    /// Truncated at `mean ± 4 std`.
    Normal { mean: f64, std: f64 },
}

impl Distribution {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Distribution::Uniform { low, high } => {
                if !(low.is_finite() && high.is_finite() && low < high) {
                    return Err(Error::validation("distribution", format!("uniform needs low < high, got ({low}, {high})")));
                }
            }
            Distribution::Normal { mean, std } => {
                if !(mean.is_finite() && std.is_finite() && std > 0.0) {
                    return Err(Error::validation("distribution", format!("normal needs std > 0, got {std}")));
                }
            }
        }
        Ok(())
    }

    /// Interval mapped onto `[-1, 1]` for the Legendre basis.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Distribution::Uniform { low, high } => (low, high),
            Distribution::Normal { mean, std } => (mean - NORMAL_TRUNCATION * std, mean + NORMAL_TRUNCATION * std),
        }
    }

    /// Probability mass discarded by truncation.
    pub fn truncated_mass(&self) -> f64 {
        match self {
            Distribution::Uniform { .. } => 0.0,
            Distribution::Normal { .. } => libm::erfc(NORMAL_TRUNCATION / std::f64::consts::SQRT_2),
        }
    }

    pub fn to_unit(&self, x: f64) -> f64 {
        let (a, b) = self.support();
        (2.0 * x - a - b) / (b - a)
    }

    pub fn from_unit(&self, u: f64) -> f64 {
        let (a, b) = self.support();
        0.5 * (a + b) + 0.5 * (b - a) * u
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomParameter {
    pub name: String,
    pub distribution: Distribution,
}

/// Configuration fields a binding expression may set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BindTarget {
    BetaHat,
    EtaHat,
    ThetaWall,
    ThetaInitial,
    L0Star,
}

impl BindTarget {
    pub fn name(&self) -> &'static str {
        match self {
            BindTarget::BetaHat => "beta_hat",
            BindTarget::EtaHat => "eta_hat",
            BindTarget::ThetaWall => "theta_wall",
            BindTarget::ThetaInitial => "theta_initial",
            BindTarget::L0Star => "l0_star",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "beta_hat" => BindTarget::BetaHat,
            "eta_hat" => BindTarget::EtaHat,
            "theta_wall" => BindTarget::ThetaWall,
            "theta_initial" => BindTarget::ThetaInitial,
            "l0_star" => BindTarget::L0Star,
            other => {
                return Err(Error::validation(
                    "bind",
                    format!("unknown target `{other}` (beta_hat, eta_hat, theta_wall, theta_initial, l0_star)"),
                ))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Binding {
    pub target: BindTarget,
    pub expr: Formula,
}

/// Named random parameters and the rules that turn a draw into a configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomInputSpec {
    pub parameters: Vec<RandomParameter>,
    pub bindings: Vec<Binding>,
}

impl RandomInputSpec {
    /// Builds and validates a spec. Binding expressions may reference the
    /// parameter names; only `eta_hat` may also use `y` and `tau`.
    pub fn new(parameters: Vec<RandomParameter>, bindings: Vec<(String, String)>) -> Result<Self> {
        if parameters.is_empty() {
            return Err(Error::validation("parameters", "at least one random parameter is required"));
        }
        for (i, p) in parameters.iter().enumerate() {
            p.distribution.validate().map_err(|e| match e {
                Error::Validation { reason, .. } => Error::validation(format!("parameters.{}", p.name), reason),
                other => other,
            })?;
            if parameters[..i].iter().any(|q| q.name == p.name) {
                return Err(Error::validation("parameters", format!("duplicate parameter `{}`", p.name)));
            }
            if ["y", "tau", "pi", "e"].contains(&p.name.as_str()) {
                return Err(Error::validation("parameters", format!("`{}` is reserved", p.name)));
            }
        }
        let mut out = Vec::with_capacity(bindings.len());
        for (target, source) in bindings {
            let target = BindTarget::from_name(&target)?;
            if out.iter().any(|b: &Binding| b.target == target) {
                return Err(Error::validation("bind", format!("`{}` bound twice", target.name())));
            }
            let expr = Formula::parse(&source)?;
            if target != BindTarget::EtaHat && (expr.uses_y() || expr.uses_tau()) {
                return Err(Error::validation(
                    format!("bind.{}", target.name()),
                    "only eta_hat may depend on y or tau",
                ));
            }
            for name in expr.free_parameters() {
                if !parameters.iter().any(|p| p.name == name) {
                    return Err(Error::Expression { expr: source.clone(), message: format!("unknown parameter `{name}`") });
                }
            }
            out.push(Binding { target, expr });
        }
        if out.is_empty() {
            return Err(Error::validation("bind", "no binding uses the random parameters"));
        }
        Ok(RandomInputSpec { parameters, bindings: out })
    }

    pub fn dims(&self) -> usize {
        self.parameters.len()
    }

    pub fn names(&self) -> Vec<&str> {
        self.parameters.iter().map(|p| p.name.as_str()).collect()
    }

    /// Point mapped onto `[-1, 1]^d`.
    pub fn to_unit(&self, point: &[f64]) -> Vec<f64> {
        self.parameters.iter().zip(point).map(|(p, &x)| p.distribution.to_unit(x)).collect()
    }

    /// Largest truncated probability mass over the parameters.
    pub fn truncated_mass(&self) -> f64 {
        self.parameters.iter().map(|p| p.distribution.truncated_mass()).fold(0.0, f64::max)
    }

    /// Applies the bindings at `point` to a copy of `base` and validates it.
    pub fn bind(&self, base: &DimlessConfig, point: &[f64]) -> Result<DimlessConfig> {
        if point.len() != self.dims() {
            return Err(Error::LengthMismatch { left: point.len(), right: self.dims() });
        }
        let values: Vec<(String, f64)> = self.parameters.iter().zip(point).map(|(p, &x)| (p.name.clone(), x)).collect();
        let mut cfg = base.clone();
        for b in &self.bindings {
            let expr = b.expr.bind(&values);
            expr.check_bound()?;
            match b.target {
                BindTarget::EtaHat => cfg.eta_hat = Influx::Field(expr).bind(&[]),
                target => {
                    let v = expr.try_eval(0.0, 0.0)?;
                    match target {
                        BindTarget::BetaHat => cfg.beta_hat = v,
                        BindTarget::ThetaWall => cfg.theta_wall = v,
                        BindTarget::ThetaInitial => cfg.theta_initial = v,
                        BindTarget::L0Star => cfg.l0_star = v,
                        BindTarget::EtaHat => unreachable!(),
                    }
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

type Draw = Box<dyn FnMut(&mut ChaCha8Rng) -> f64>;

/// `m` i.i.d. points from the product distribution, deterministic in `seed`.
/// Fails when `m` is below `basis_size`.
pub fn sample_inputs(spec: &RandomInputSpec, m: usize, basis_size: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if m < basis_size {
        return Err(Error::TooFewSamples { samples: m, basis: basis_size });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws: Vec<Draw> = Vec::with_capacity(spec.dims());
    for p in &spec.parameters {
        match p.distribution {
            Distribution::Uniform { low, high } => {
                let u = Uniform::new(low, high).map_err(|e| Error::validation(p.name.clone(), e.to_string()))?;
                draws.push(Box::new(move |r| u.sample(r)));
            }
            Distribution::Normal { mean, std } => {
                let n = Normal::new(mean, std).map_err(|e| Error::validation(p.name.clone(), e.to_string()))?;
                let (lo, hi) = p.distribution.support();
                draws.push(Box::new(move |r| loop {
                    let x = n.sample(r);
                    if (lo..=hi).contains(&x) {
                        break x;
                    }
                }));
            }
        }
    }
    Ok((0..m).map(|_| draws.iter_mut().map(|d| d(&mut rng)).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_spec(low: f64, high: f64) -> RandomInputSpec {
        RandomInputSpec::new(
            vec![RandomParameter { name: "b".into(), distribution: Distribution::Uniform { low, high } }],
            vec![("beta_hat".into(), "b".into())],
        )
        .unwrap()
    }

    #[test]
    fn deterministic_in_seed() {
        let spec = uniform_spec(0.0, 1.0);
        let a = sample_inputs(&spec, 4, 1, 7).unwrap();
        assert_eq!(a, sample_inputs(&spec, 4, 1, 7).unwrap());
        assert_ne!(a, sample_inputs(&spec, 4, 1, 8).unwrap());
    }

    #[test]
    fn uniform_mean() {
        let spec = uniform_spec(0.2, 0.7);
        let xs = sample_inputs(&spec, 100_000, 1, 1).unwrap();
        let mean = xs.iter().map(|p| p[0]).sum::<f64>() / xs.len() as f64;
        assert!((mean - 0.45).abs() < 0.005, "{mean}");
        assert!(xs.iter().all(|p| (0.2..0.7).contains(&p[0])));
    }

    #[test]
    fn normal_variance() {
        let spec = RandomInputSpec::new(
            vec![RandomParameter { name: "z".into(), distribution: Distribution::Normal { mean: 2.0, std: 1.0 } }],
            vec![("eta_hat".into(), "2 + sin(3*pi*y*z)".into())],
        )
        .unwrap();
        let xs: Vec<f64> = sample_inputs(&spec, 100_000, 1, 3).unwrap().into_iter().map(|p| p[0]).collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((var - 1.0).abs() < 0.02, "{var}");
        assert!(xs.iter().all(|x| (-2.0..=6.0).contains(x)));
    }

    #[test]
    fn too_few_samples() {
        let spec = uniform_spec(0.0, 1.0);
        assert!(matches!(sample_inputs(&spec, 4, 5, 0), Err(Error::TooFewSamples { samples: 4, basis: 5 })));
    }

    #[test]
    fn rejects_degenerate_and_unknown() {
        let p = |d| vec![RandomParameter { name: "b".into(), distribution: d }];
        assert!(RandomInputSpec::new(p(Distribution::Uniform { low: 0.3, high: 0.3 }), vec![("beta_hat".into(), "b".into())]).is_err());
        assert!(RandomInputSpec::new(p(Distribution::Normal { mean: 0.0, std: 0.0 }), vec![("beta_hat".into(), "b".into())]).is_err());
        let ok = Distribution::Uniform { low: 0.0, high: 1.0 };
        assert!(RandomInputSpec::new(p(ok), vec![("beta_hat".into(), "c".into())]).is_err());
        assert!(RandomInputSpec::new(p(ok), vec![("beta_hat".into(), "b*y".into())]).is_err());
        assert!(RandomInputSpec::new(p(ok), vec![("gamma".into(), "b".into())]).is_err());
    }

    #[test]
    fn unit_map() {
        let d = Distribution::Normal { mean: 2.0, std: 1.0 };
        assert_eq!(d.to_unit(2.0), 0.0);
        assert_eq!(d.to_unit(6.0), 1.0);
        assert!((d.from_unit(d.to_unit(3.3)) - 3.3).abs() < 1e-15);
        assert!(d.truncated_mass() < 1e-4);
    }
}
