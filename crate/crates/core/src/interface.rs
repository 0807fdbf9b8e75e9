//! Free-boundary extraction from enthalpy profiles and interface time series.

use serde::{Deserialize, Serialize};

/// Enthalpy level that defines the freezing front: the middle of the mushy
/// band. Use 0 to track the solid edge instead.
pub const DEFAULT_INTERFACE_LEVEL: f64 = 0.5;

/// Solid edge of the mushy band.
pub const SOLID_EDGE_LEVEL: f64 = 0.0;

/// Position in `[0, 1]` where `phi` (sampled on a uniform grid with spacing
/// `dz` starting at `z = 0`) first rises through `level`, linearly
/// interpolated. Returns 0 when the wall node is already at or above the
/// level (no solid) and 1 when the whole profile is below it.
pub fn level_crossing(phi: &[f64], dz: f64, level: f64) -> f64 {
    if phi.is_empty() || phi[0] >= level {
        return 0.0;
    }
    for i in 1..phi.len() {
        if phi[i] >= level {
            let (a, b) = (phi[i - 1], phi[i]);
            let frac = (level - a) / (b - a);
            return ((i - 1) as f64 + frac) * dz;
        }
    }
    1.0
}

/// Frozen thickness `∫₀¹ (1 - clamp(φ, 0, 1)) dz` (trapezoid rule): the
/// front position of a sharp-interface profile, continuous in `φ` for a
/// smeared one.
pub fn solid_fraction_front(phi: &[f64], dz: f64) -> f64 {
    let n = phi.len();
    if n < 2 {
        return 0.0;
    }
    let f = |p: f64| 1.0 - p.clamp(0.0, 1.0);
    dz * (0.5 * f(phi[0]) + phi[1..n - 1].iter().map(|&p| f(p)).sum::<f64>() + 0.5 * f(phi[n - 1]))
}

/// Front position together with the edges of the mushy band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MushBand {
    /// `φ = 0` crossing
    pub solid_edge: f64,
    /// `φ = 0.5` crossing
    pub mid: f64,
    /// `φ = 1` crossing
    pub liquid_edge: f64,
}

impl MushBand {
    pub fn from_profile(phi: &[f64], dz: f64) -> Self {
        MushBand {
            solid_edge: level_crossing(phi, dz, 0.0),
            mid: level_crossing(phi, dz, 0.5),
            liquid_edge: level_crossing(phi, dz, 1.0),
        }
    }

    pub fn width(&self) -> f64 {
        self.liquid_edge - self.solid_edge
    }
}

/// Growth regime at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Freezing front outruns the injection boundary (rime-like).
    InterfaceDominated,
    /// Injection boundary outruns the freezing front (glaze-like).
    InjectionDominated,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::InterfaceDominated => "interface",
            Regime::InjectionDominated => "injection",
        }
    }
}

/// Time series of the free boundary in reference and physical coordinates.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InterfaceTrace {
    pub taus: Vec<f64>,
    pub s_star: Vec<f64>,
    pub s_phys: Vec<f64>,
    pub length: Vec<f64>,
    pub mush: Vec<MushBand>,
}

impl InterfaceTrace {
    pub fn push(&mut self, tau: f64, s_star: f64, length: f64, mush: MushBand) {
        self.taus.push(tau);
        self.s_star.push(s_star);
        self.s_phys.push(s_star * length);
        self.length.push(length);
        self.mush.push(mush);
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }

    /// Finite-difference estimate of `dS*/dτ` at each stamp.
    pub fn v_est(&self) -> Vec<f64> {
        derivative(&self.taus, &self.s_star)
    }

    /// Finite-difference estimate of `dS/dτ` (physical coordinate).
    pub fn physical_speed(&self) -> Vec<f64> {
        derivative(&self.taus, &self.s_phys)
    }

    pub fn last_s_phys(&self) -> Option<f64> {
        self.s_phys.last().copied()
    }

    /// Linear interpolation of the physical front position at `tau`.
    pub fn s_phys_at(&self, tau: f64) -> Option<f64> {
        interpolate(&self.taus, &self.s_phys, tau)
    }
}

/// Compares the physical front speed with the boundary speed `β̂` at every stamp.
pub fn classify_regime(trace: &InterfaceTrace, beta_hat: f64) -> Vec<Regime> {
    trace
        .physical_speed()
        .into_iter()
        .map(|v| {
            if v > beta_hat {
                Regime::InterfaceDominated
            } else {
                Regime::InjectionDominated
            }
        })
        .collect()
}

/// Central differences in the interior, one-sided at the ends.
pub(crate) fn derivative(t: &[f64], f: &[f64]) -> Vec<f64> {
    let n = t.len();
    match n {
        0 => vec![],
        1 => vec![0.0],
        _ => (0..n)
            .map(|i| {
                let (a, b) = if i == 0 {
                    (0, 1)
                } else if i == n - 1 {
                    (n - 2, n - 1)
                } else {
                    (i - 1, i + 1)
                };
                (f[b] - f[a]) / (t[b] - t[a])
            })
            .collect(),
    }
}

pub(crate) fn interpolate(t: &[f64], f: &[f64], at: f64) -> Option<f64> {
    if t.is_empty() || at < t[0] || at > t[t.len() - 1] {
        return None;
    }
    let i = t.partition_point(|&x| x < at);
    if i == 0 {
        return Some(f[0]);
    }
    let (t0, t1) = (t[i - 1], t[i]);
    let w = (at - t0) / (t1 - t0);
    Some(f[i - 1] + w * (f[i] - f[i - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_nodal_crossing() {
        let phi = [-1.0, -0.5, 0.5, 1.5];
        let s = level_crossing(&phi, 1.0 / 3.0, 0.5);
        assert!((s - 2.0 / 3.0).abs() < 1e-15);
        // zero level between nodes 2 and 3
        assert!((level_crossing(&phi, 1.0 / 3.0, 0.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn all_liquid_is_zero() {
        assert_eq!(level_crossing(&[1.1, 1.2, 1.3], 0.5, 0.0), 0.0);
        assert_eq!(level_crossing(&[-0.3, -0.2, -0.1], 0.5, 0.0), 1.0);
    }

    #[test]
    fn regime_static_boundary() {
        let mut tr = InterfaceTrace::default();
        for k in 0..5 {
            let tau = k as f64;
            tr.push(tau, 0.1 * (tau + 1.0).sqrt(), 1.0, MushBand::from_profile(&[0.0], 1.0));
        }
        assert!(classify_regime(&tr, 0.0).iter().all(|r| *r == Regime::InterfaceDominated));
    }

    #[test]
    fn regime_static_interface() {
        let mut tr = InterfaceTrace::default();
        for k in 0..5 {
            let tau = k as f64;
            let length = 1.0 + 0.5 * tau;
            tr.push(tau, 0.3 / length, length, MushBand::from_profile(&[0.0], 1.0));
        }
        assert!(classify_regime(&tr, 0.5).iter().all(|r| *r == Regime::InjectionDominated));
        for v in tr.physical_speed() {
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn interpolation() {
        let t = [0.0, 1.0, 2.0];
        let f = [0.0, 2.0, 3.0];
        assert_eq!(interpolate(&t, &f, 0.5), Some(1.0));
        assert_eq!(interpolate(&t, &f, 2.0), Some(3.0));
        assert_eq!(interpolate(&t, &f, 2.5), None);
    }
}
