//! Discrete energy budget.
//!
//! Integrating the transformed enthalpy equation over the physical domain
//! and using the injection condition gives, in units of `ρ L_h L_ref` per
//! unit width and with `τ` as time,
//!
//! ```text
//! d/dτ ( L ∫₀¹ φ dz ) = η̂ β̂ − (1/L) ∂θ/∂z (0, τ)
//! ```
//!
//! The influx term carries the energy of the injected mass; the second term
//! is conduction into the cold wall. Solvers accumulate the right-hand side
//! every step and store the running total next to the trapezoidal total
//! enthalpy at each snapshot; the audit compares the two between snapshots.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::solver1d::Snapshot1D;
use crate::solver2d::Snapshot2D;

/// Anything that carries a total-energy reading and a cumulative inflow.
pub trait EnergyRecord {
    fn tau(&self) -> f64;
    fn energy(&self) -> f64;
    fn net_inflow(&self) -> f64;
}

impl EnergyRecord for Snapshot1D {
    fn tau(&self) -> f64 {
        self.tau
    }
    fn energy(&self) -> f64 {
        self.energy
    }
    fn net_inflow(&self) -> f64 {
        self.net_inflow
    }
}

impl EnergyRecord for Snapshot2D {
    fn tau(&self) -> f64 {
        self.tau
    }
    fn energy(&self) -> f64 {
        self.energy
    }
    fn net_inflow(&self) -> f64 {
        self.net_inflow
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditEntry {
    pub tau_start: f64,
    pub tau_end: f64,
    pub delta_energy: f64,
    pub inflow: f64,
    /// `delta_energy - inflow`
    pub residual: f64,
    /// `|residual| / |energy at tau_end|`
    pub relative: f64,
}

/// Residual of the energy budget over each interval between consecutive records.
pub fn energy_audit<R: EnergyRecord>(history: &[R]) -> Result<Vec<AuditEntry>> {
    if history.len() < 2 {
        return Err(Error::Precondition(format!(
            "energy audit needs at least 2 snapshots, got {}",
            history.len()
        )));
    }
    Ok(history
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            let delta_energy = b.energy() - a.energy();
            let inflow = b.net_inflow() - a.net_inflow();
            let residual = delta_energy - inflow;
            let scale = b.energy().abs();
            AuditEntry {
                tau_start: a.tau(),
                tau_end: b.tau(),
                delta_energy,
                inflow,
                residual,
                relative: if scale > 0.0 { residual.abs() / scale } else { residual.abs() },
            }
        })
        .collect())
}

/// Largest relative residual of an audit.
pub fn max_relative_residual(entries: &[AuditEntry]) -> f64 {
    entries.iter().map(|e| e.relative).fold(0.0, f64::max)
}

/// Least-squares slope of `log(err)` against `log(h)`.
pub fn observed_order(h: &[f64], err: &[f64]) -> f64 {
    let n = h.len() as f64;
    let xs: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = err.iter().map(|v| v.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Rec(f64, f64, f64);
    impl EnergyRecord for Rec {
        fn tau(&self) -> f64 {
            self.0
        }
        fn energy(&self) -> f64 {
            self.1
        }
        fn net_inflow(&self) -> f64 {
            self.2
        }
    }

    #[test]
    fn needs_two_records() {
        assert!(energy_audit(&[Rec(0.0, 1.0, 0.0)]).is_err());
    }

    #[test]
    fn balanced_budget() {
        let recs = [Rec(0.0, 1.0, 0.0), Rec(0.1, 1.5, 0.5), Rec(0.2, 1.25, 0.25)];
        let audit = energy_audit(&recs).unwrap();
        assert_eq!(audit.len(), 2);
        assert!(audit.iter().all(|e| e.residual.abs() < 1e-15));
    }

    #[test]
    fn order_of_power_law() {
        let h = [0.02, 0.01, 0.005];
        let e: Vec<f64> = h.iter().map(|x| 3.0 * x).collect();
        assert!((observed_order(&h, &e) - 1.0).abs() < 1e-12);
    }
}
