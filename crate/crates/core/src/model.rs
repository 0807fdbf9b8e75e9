//! Physical and nondimensional parameters, the enthalpy–temperature
//! relation, and the injection-boundary growth law.
//!
//! Nondimensional variables:
//!
//! ```text
//! φ = H/(ρ L_h)     θ = C U / L_h     τ = k t /(ρ C L_ref²)
//! γ = k L_h /(C L_ref²)   β̂ = ρ C L_ref² β / k   η̂ = (k η /(ρ C L_ref²)) / γ
//! ```
//!
//! The domain length is carried in units of `L_ref`, so `L(τ) = L_0/L_ref + β̂ τ`
//! and every `L_ref²/L²` factor of the transformed equations reduces to `1/L²`.

use crate::error::{Error, Result};
use crate::influx::Influx;

/// Dimensional material and boundary constants (SI-ish units as in the
/// icing literature: MJ for heat).
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalParams {
    /// Density [kg/m³]
    pub rho: f64,
    /// Specific heat [MJ/(kg·°C)]
    pub c: f64,
    /// Conductivity [W/(m·°C)]
    pub k: f64,
    /// Latent heat [MJ/kg]
    pub latent_heat: f64,
    /// Cold-wall temperature [°C]
    pub t_wall: f64,
    /// Initial liquid temperature [°C]
    pub t_initial: f64,
    /// Melt temperature [°C]; the model is built around `T_m = 0`.
    pub t_melt: f64,
    /// Initial domain length [m]
    pub l0: f64,
    /// Reference length [m]
    pub l_ref: f64,
}

impl PhysicalParams {
    /// Material constants of the one-dimensional icing experiments
    /// (T_0 = -10 °C, T_initial = 2 °C, L_0 = L_ref = 1 m).
    pub fn icing_1d() -> Self {
        PhysicalParams {
            rho: 1.0,
            c: 2.5,
            k: 2.0,
            latent_heat: 100.0,
            t_wall: -10.0,
            t_initial: 2.0,
            t_melt: 0.0,
            l0: 1.0,
            l_ref: 1.0,
        }
    }

    /// Two-dimensional icing experiments (T_0 = -4 °C, T_initial = 4 °C, L_0 = 0.2 m).
    pub fn icing_2d() -> Self {
        PhysicalParams {
            t_wall: -4.0,
            t_initial: 4.0,
            l0: 0.2,
            ..Self::icing_1d()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("rho", self.rho),
            ("c", self.c),
            ("k", self.k),
            ("latent_heat", self.latent_heat),
            ("l0", self.l0),
            ("l_ref", self.l_ref),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::validation(name, format!("must be positive and finite, got {v}")));
            }
        }
        if self.t_melt != 0.0 {
            return Err(Error::validation("t_melt", "the melt temperature must be 0"));
        }
        if !(self.t_wall < self.t_melt) {
            return Err(Error::validation(
                "t_wall",
                format!("wall temperature {} must be below the melt temperature", self.t_wall),
            ));
        }
        if !(self.t_initial > self.t_melt) {
            return Err(Error::validation(
                "t_initial",
                format!("initial temperature {} must be above the melt temperature", self.t_initial),
            ));
        }
        Ok(())
    }

    /// `θ = C·T / L_h`
    pub fn theta(&self, temperature: f64) -> f64 {
        self.c * temperature / self.latent_heat
    }

    /// `γ = k L_h / (C L_ref²)`
    pub fn gamma(&self) -> f64 {
        self.k * self.latent_heat / (self.c * self.l_ref * self.l_ref)
    }

    /// Ratio `ρ C L_ref² / k` converting dimensional time rates to `τ` rates.
    pub fn time_scale(&self) -> f64 {
        self.rho * self.c * self.l_ref * self.l_ref / self.k
    }
}

/// Nondimensional problem state consumed by both solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct DimlessConfig {
    pub theta_wall: f64,
    pub theta_initial: f64,
    pub theta_melt: f64,
    /// Injection boundary velocity `β̂ = dL/dτ`.
    pub beta_hat: f64,
    /// Incoming heat influx `η̂`.
    pub eta_hat: Influx,
    pub gamma: f64,
    /// Initial length `L_0 / L_ref`.
    pub l0_star: f64,
}

impl DimlessConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("theta_wall", self.theta_wall),
            ("theta_initial", self.theta_initial),
            ("beta_hat", self.beta_hat),
            ("gamma", self.gamma),
            ("l0_star", self.l0_star),
        ] {
            if !v.is_finite() {
                return Err(Error::validation(name, format!("must be finite, got {v}")));
            }
        }
        if self.theta_melt != 0.0 {
            return Err(Error::validation("theta_melt", "must be 0"));
        }
        if self.beta_hat < 0.0 {
            return Err(Error::validation("beta_hat", format!("must be >= 0, got {}", self.beta_hat)));
        }
        if !(self.l0_star > 0.0) {
            return Err(Error::validation("l0_star", format!("must be positive, got {}", self.l0_star)));
        }
        if let Influx::Constant(v) = self.eta_hat {
            if !(v >= 1.0) {
                return Err(Error::validation(
                    "eta_hat",
                    format!("influx {v} must be greater than 1 (incoming mass carries at least the equilibrium enthalpy)"),
                ));
            }
        }
        Ok(())
    }

    /// `L(τ) = L_0/L_ref + β̂ τ`
    pub fn domain_length(&self, tau: f64) -> f64 {
        domain_length(tau, self)
    }
}

/// Builds the nondimensional configuration from dimensional constants, a
/// dimensional boundary speed `beta` [m/s] and a dimensional influx
/// parameter `eta`.
pub fn nondimensionalize(p: &PhysicalParams, beta: f64, eta: f64) -> Result<DimlessConfig> {
    p.validate()?;
    if !(beta >= 0.0) {
        return Err(Error::validation("beta", format!("must be >= 0, got {beta}")));
    }
    let gamma = p.gamma();
    let eta_tilde = eta / p.time_scale();
    let cfg = DimlessConfig {
        theta_wall: p.theta(p.t_wall),
        theta_initial: p.theta(p.t_initial),
        theta_melt: p.theta(p.t_melt),
        beta_hat: p.time_scale() * beta,
        eta_hat: Influx::Constant(eta_tilde / gamma),
        gamma,
        l0_star: p.l0 / p.l_ref,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Dimensional quantities recovered from a [`DimlessConfig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Redimensionalized {
    pub t_wall: f64,
    pub t_initial: f64,
    pub t_melt: f64,
    pub beta: f64,
    pub eta: f64,
    pub l0: f64,
}

/// Inverse of [`nondimensionalize`] given the same material scales.
/// Only defined for a constant influx.
pub fn redimensionalize(cfg: &DimlessConfig, scales: &PhysicalParams) -> Result<Redimensionalized> {
    let Influx::Constant(eta_hat) = cfg.eta_hat else {
        return Err(Error::Precondition("redimensionalization needs a constant influx".into()));
    };
    let temp = |theta: f64| theta * scales.latent_heat / scales.c;
    Ok(Redimensionalized {
        t_wall: temp(cfg.theta_wall),
        t_initial: temp(cfg.theta_initial),
        t_melt: temp(cfg.theta_melt),
        beta: cfg.beta_hat / scales.time_scale(),
        eta: eta_hat * cfg.gamma * scales.time_scale(),
        l0: cfg.l0_star * scales.l_ref,
    })
}

/// Correction `φ̃ = 0.5(|1-φ| - |φ| - 1)`: 0 in solid, `-φ` in the mushy
/// band, `-1` in liquid.
#[inline]
pub fn phi_tilde(phi: f64) -> f64 {
    // same as the absolute-value form, exact in each phase
    -phi.clamp(0.0, 1.0)
}

/// `θ = φ + φ̃(φ)`.
#[inline]
pub fn temperature_from_enthalpy(phi: f64) -> f64 {
    phi - phi.clamp(0.0, 1.0)
}

/// Inverse relation on the pure phases: solid for `θ <= 0`, liquid for `θ > 0`.
#[inline]
pub fn enthalpy_from_temperature(theta: f64) -> f64 {
    if theta > 0.0 {
        theta + 1.0
    } else {
        theta
    }
}

/// `L(τ) = L_0/L_ref + β̂ τ`
#[inline]
pub fn domain_length(tau: f64, cfg: &DimlessConfig) -> f64 {
    cfg.l0_star + cfg.beta_hat * tau
}
