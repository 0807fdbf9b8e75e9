//! Two-phase Neumann similarity solution for the static-boundary case `β̂ = 0`.
//!
//! In the nondimensional variables both phases have unit diffusivity and
//! the latent heat is 1, so a half-space of liquid at `θ_i > 0` cooled at
//! `x = 0` to `θ_0 < 0` freezes with front `S(τ) = 2λ√τ`, where `λ` solves
//!
//! ```text
//! λ √π = e^{-λ²} ( -θ_0 / erf λ  -  θ_i / erfc λ ).
//! ```

use crate::error::{Error, Result};
use crate::model::DimlessConfig;

/// Residual tolerance on the transcendental equation.
pub const ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeumannSolution {
    pub theta_wall: f64,
    pub theta_initial: f64,
    pub lambda: f64,
}

/// Left-hand side minus right-hand side of the Neumann equation.
pub fn neumann_residual(lambda: f64, theta_wall: f64, theta_initial: f64) -> f64 {
    let s = (-lambda * lambda).exp();
    lambda * std::f64::consts::PI.sqrt() - s * (-theta_wall / libm::erf(lambda) - theta_initial / libm::erfc(lambda))
}

impl NeumannSolution {
    pub fn new(theta_wall: f64, theta_initial: f64) -> Result<Self> {
        if !(theta_wall <= 0.0) || !(theta_initial >= 0.0) {
            return Err(Error::Precondition(format!(
                "Neumann solution needs theta_wall <= 0 <= theta_initial, got {theta_wall}, {theta_initial}"
            )));
        }
        if theta_wall == 0.0 {
            return Ok(NeumannSolution { theta_wall, theta_initial, lambda: 0.0 });
        }
        let f = |l: f64| neumann_residual(l, theta_wall, theta_initial);
        // f -> -inf as λ -> 0+ and f > 0 once the liquid term dominates
        let mut lo = 1e-12;
        let mut hi = 1.0;
        while f(hi) < 0.0 {
            hi *= 2.0;
            if hi > 1e3 {
                return Err(Error::Precondition("Neumann root not bracketed".into()));
            }
        }
        let mut mid = 0.5 * (lo + hi);
        for _ in 0..200 {
            mid = 0.5 * (lo + hi);
            let v = f(mid);
            if v.abs() <= ROOT_TOL || hi - lo < f64::EPSILON * mid {
                break;
            }
            if v < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(NeumannSolution { theta_wall, theta_initial, lambda: mid })
    }

    /// `S(τ) = 2 λ √τ`
    pub fn position(&self, tau: f64) -> f64 {
        2.0 * self.lambda * tau.max(0.0).sqrt()
    }

    /// Temperature of the similarity solution at physical position `x`.
    pub fn temperature(&self, x: f64, tau: f64) -> f64 {
        if self.lambda == 0.0 || tau <= 0.0 {
            return if x <= 0.0 { self.theta_wall } else { self.theta_initial };
        }
        let eta = x / (2.0 * tau.sqrt());
        if eta < self.lambda {
            self.theta_wall * (1.0 - libm::erf(eta) / libm::erf(self.lambda))
        } else {
            self.theta_initial * (1.0 - libm::erfc(eta) / libm::erfc(self.lambda))
        }
    }
}

/// Analytic front for a configuration with a static boundary.
pub fn neumann_oracle(cfg: &DimlessConfig) -> Result<NeumannSolution> {
    if cfg.beta_hat != 0.0 {
        return Err(Error::Precondition(format!(
            "the similarity solution needs beta_hat = 0, got {}",
            cfg.beta_hat
        )));
    }
    NeumannSolution::new(cfg.theta_wall, cfg.theta_initial)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One-phase limit `λ e^{λ²} erf λ = -θ_0/√π`, bisected independently.
    fn one_phase_lambda(theta_wall: f64) -> f64 {
        let g = |l: f64| l * (l * l).exp() * libm::erf(l) + theta_wall / std::f64::consts::PI.sqrt();
        let (mut lo, mut hi) = (0.0, 2.0);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if g(m) < 0.0 {
                lo = m
            } else {
                hi = m
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn one_phase_limit() {
        let sol = NeumannSolution::new(-0.25, 0.0).unwrap();
        let expected = one_phase_lambda(-0.25);
        assert!((sol.lambda - expected).abs() < 1e-10, "{} vs {expected}", sol.lambda);
        assert!((sol.position(4.0) - 4.0 * expected).abs() < 4e-10);
    }

    #[test]
    fn no_cooling_no_freezing() {
        let sol = NeumannSolution::new(0.0, 0.05).unwrap();
        assert_eq!(sol.lambda, 0.0);
        assert_eq!(sol.position(3.0), 0.0);
    }

    #[test]
    fn similarity_structure() {
        let sol = NeumannSolution::new(-0.25, 0.05).unwrap();
        assert!(neumann_residual(sol.lambda, -0.25, 0.05).abs() <= ROOT_TOL);
        let r: Vec<f64> = [1.0f64, 2.0, 4.0].iter().map(|&t| sol.position(t) / t.sqrt()).collect();
        assert!((r[0] - r[1]).abs() < 1e-10 && (r[1] - r[2]).abs() < 1e-10);
        // liquid superheat slows the front
        assert!(sol.lambda < one_phase_lambda(-0.25));
    }

    #[test]
    fn temperature_continuity_at_front() {
        let sol = NeumannSolution::new(-0.25, 0.05).unwrap();
        let s = sol.position(2.0);
        assert!(sol.temperature(s - 1e-9, 2.0).abs() < 1e-7);
        assert!(sol.temperature(s + 1e-9, 2.0).abs() < 1e-7);
        assert!((sol.temperature(0.0, 2.0) + 0.25).abs() < 1e-15);
    }
}
