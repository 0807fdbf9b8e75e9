//! Two-dimensional explicit enthalpy solver on `(y, z) ∈ [0,1] × [0,1]`.
//!
//! ```text
//! ∂φ/∂τ = (1/L²) ∂²θ/∂z² + ∂²θ/∂y² + (β̂ z / L) ∂φ/∂z
//! ```
//!
//! Periodic in `y` by default (rows `j = 0` and `j = N_y - 1` are the same
//! line; the influx there is taken at `y = 0`), or mirrored at `y = 0, 1`,
//! `θ = θ_0` on the wall column and the injection condition at `z = 1`
//! imposed through a ghost value beyond the last node. Each step reads the
//! old field and writes a second buffer, so the per-row update is free to
//! run in parallel.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interface::{level_crossing, DEFAULT_INTERFACE_LEVEL};
use crate::model::{domain_length, enthalpy_from_temperature, temperature_from_enthalpy, DimlessConfig};
use crate::solver1d::{trapezoid, SnapshotPlan};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub ny: usize,
    pub nz: usize,
    pub dy: f64,
    pub dz: f64,
    pub dtau: f64,
    pub steps: usize,
}

impl Grid2D {
    pub fn new(ny: usize, nz: usize, dtau: f64, tau_end: f64) -> Result<Self> {
        if ny < 3 {
            return Err(Error::validation("ny", format!("need at least 3 nodes, got {ny}")));
        }
        if nz < 3 {
            return Err(Error::validation("nz", format!("need at least 3 nodes, got {nz}")));
        }
        if !(dtau > 0.0) {
            return Err(Error::validation("dtau", format!("must be positive, got {dtau}")));
        }
        if !(tau_end >= 0.0) {
            return Err(Error::validation("tau_end", format!("must be >= 0, got {tau_end}")));
        }
        Ok(Grid2D {
            ny,
            nz,
            dy: 1.0 / (ny - 1) as f64,
            dz: 1.0 / (nz - 1) as f64,
            dtau,
            steps: (tau_end / dtau).round() as usize,
        })
    }

    pub fn from_spacing(dy: f64, dz: f64, dtau: f64, tau_end: f64) -> Result<Self> {
        for (name, h) in [("dy", dy), ("dz", dz)] {
            if !(h > 0.0 && h <= 0.5) {
                return Err(Error::validation(name, format!("must be in (0, 0.5], got {h}")));
            }
        }
        Self::new((1.0 / dy).round() as usize + 1, (1.0 / dz).round() as usize + 1, dtau, tau_end)
    }

    pub fn y(&self, j: usize) -> f64 {
        j as f64 / (self.ny - 1) as f64
    }

    pub fn z(&self, i: usize) -> f64 {
        i as f64 * self.dz
    }

    pub fn ys(&self) -> Vec<f64> {
        (0..self.ny).map(|j| self.y(j)).collect()
    }

    pub fn tau_at(&self, step: usize) -> f64 {
        step as f64 * self.dtau
    }

    pub fn tau_end(&self) -> f64 {
        self.tau_at(self.steps)
    }
}

/// Worst-case explicit step bound, evaluated at the initial (shortest) length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    /// `Δτ · (2/(L₀²Δz²) + 2a/Δy² + β̂/(L₀Δz))`, with `a` the lateral diffusion factor.
    pub margin: f64,
    pub max_dtau: f64,
}

/// Evaluates the explicit-step bound; fails when the margin exceeds 1.
pub fn stability_check(grid: &Grid2D, cfg: &DimlessConfig, lateral_diffusion: f64) -> Result<StabilityReport> {
    let report = stability_margin(grid, cfg, lateral_diffusion);
    if report.margin > 1.0 {
        Err(Error::Stability { margin: report.margin, max_dtau: report.max_dtau })
    } else {
        Ok(report)
    }
}

/// The bound of [`stability_check`] without the pass/fail decision.
pub fn stability_margin(grid: &Grid2D, cfg: &DimlessConfig, lateral_diffusion: f64) -> StabilityReport {
    let l_min = cfg.l0_star;
    let rate = 2.0 / (l_min * l_min * grid.dz * grid.dz)
        + 2.0 * lateral_diffusion / (grid.dy * grid.dy)
        + cfg.beta_hat / (l_min * grid.dz);
    StabilityReport { margin: grid.dtau * rate, max_dtau: 1.0 / rate }
}

/// Ghost temperature beyond `z = 1` that enforces the injection condition
/// for a liquid boundary node:
/// `θ_{N+1} = (1 - L Δz β̂) θ_N + β̂ (η̂ - 1) L Δz`.
#[inline]
pub fn ghost_boundary(theta_n: f64, eta_hat: f64, beta_hat: f64, length: f64, dz: f64) -> f64 {
    (1.0 - length * dz * beta_hat) * theta_n + beta_hat * (eta_hat - 1.0) * length * dz
}

/// Treatment of the lines `y = 0` and `y = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YBoundary {
    /// `y = 0` and `y = 1` identified.
    #[default]
    Periodic,
    /// Zero flux through `y = 0` and `y = 1`; equivalently periodic with
    /// period 2 for fields even about both lines. `cos(mπy)` are its modes.
    Mirror,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solver2DOptions {
    pub interface_level: f64,
    pub snapshots: Option<SnapshotPlan>,
    pub keep_fields: bool,
    /// Multiplier on the `∂²θ/∂y²` term (1 for isotropic conduction).
    pub lateral_diffusion: f64,
    pub y_boundary: YBoundary,
    /// Rows per parallel task; 0 runs the update sequentially.
    pub rows_per_task: usize,
}

impl Default for Solver2DOptions {
    fn default() -> Self {
        Solver2DOptions {
            interface_level: DEFAULT_INTERFACE_LEVEL,
            snapshots: None,
            keep_fields: false,
            lateral_diffusion: 1.0,
            y_boundary: YBoundary::Periodic,
            rows_per_task: 8,
        }
    }
}

/// Enthalpy on the `N_y × N` node set, row-major by `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    pub phi: Vec<f64>,
    pub ny: usize,
    pub nz: usize,
    pub tau: f64,
    pub step: usize,
}

impl Field2D {
    pub fn row(&self, j: usize) -> &[f64] {
        &self.phi[j * self.nz..(j + 1) * self.nz]
    }

    pub fn at(&self, j: usize, i: usize) -> f64 {
        self.phi[j * self.nz + i]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot2D {
    pub step: usize,
    pub tau: f64,
    pub length: f64,
    /// `L ∫∫ φ dy dz` over one period in `y`.
    pub energy: f64,
    pub net_inflow: f64,
    /// Front position per `y` row in reference coordinates.
    pub s_star: Vec<f64>,
    pub phi: Vec<f64>,
}

/// Interface curves `S*(y, τ)` at the snapshot times.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InterfaceCurve {
    pub ys: Vec<f64>,
    pub taus: Vec<f64>,
    pub lengths: Vec<f64>,
    pub s_star: Vec<Vec<f64>>,
}

impl InterfaceCurve {
    pub fn s_phys(&self, k: usize) -> Vec<f64> {
        self.s_star[k].iter().map(|s| s * self.lengths[k]).collect()
    }

    /// Index of the stored time closest to `tau`.
    pub fn nearest(&self, tau: f64) -> Option<usize> {
        (0..self.taus.len()).min_by(|&a, &b| {
            (self.taus[a] - tau).abs().total_cmp(&(self.taus[b] - tau).abs())
        })
    }
}

#[derive(Debug, Clone)]
pub struct Run2D {
    pub curve: InterfaceCurve,
    pub snapshots: Vec<Snapshot2D>,
    pub final_field: Field2D,
    pub stability: StabilityReport,
}

#[derive(Debug, Clone, Copy)]
struct Coefficients {
    diff_z: f64,
    diff_y: f64,
    adv: f64,
    dz: f64,
    dtau: f64,
    beta: f64,
    length: f64,
    wall_phi: f64,
}

/// Forward-Euler update of one row. `up`/`down` are the neighbouring
/// temperature rows; passing the row itself makes the lateral term vanish
/// exactly.
fn update_row(out: &mut [f64], phi: &[f64], theta: &[f64], up: &[f64], down: &[f64], eta: f64, c: &Coefficients) {
    let nz = phi.len();
    out[0] = c.wall_phi;
    let ghost_theta = ghost_boundary(theta[nz - 1], eta, c.beta, c.length, c.dz);
    // ghost node shares the phase of the boundary node
    let ghost_phi = ghost_theta + (phi[nz - 1] - theta[nz - 1]);
    for i in 1..nz {
        let (t_next, p_next) = if i + 1 < nz { (theta[i + 1], phi[i + 1]) } else { (ghost_theta, ghost_phi) };
        let z = i as f64 * c.dz;
        let rate = c.diff_z * (theta[i - 1] - 2.0 * theta[i] + t_next)
            + c.adv * z * (p_next - phi[i])
            + c.diff_y * (down[i] - 2.0 * theta[i] + up[i]);
        out[i] = phi[i] + c.dtau * rate;
    }
}

#[derive(Debug, Clone)]
pub struct Solver2D {
    cfg: DimlessConfig,
    grid: Grid2D,
    opts: Solver2DOptions,
    stability: StabilityReport,
    theta: Vec<f64>,
    next: Vec<f64>,
    eta_rows: Vec<f64>,
    eta_tau: Option<f64>,
}

impl Solver2D {
    pub fn new(cfg: DimlessConfig, grid: Grid2D, opts: Solver2DOptions) -> Result<Self> {
        cfg.validate()?;
        if !(opts.lateral_diffusion >= 0.0) {
            return Err(Error::validation("lateral_diffusion", "must be >= 0"));
        }
        let stability = stability_check(&grid, &cfg, opts.lateral_diffusion)?;
        let size = grid.ny * grid.nz;
        Ok(Solver2D {
            cfg,
            grid,
            opts,
            stability,
            theta: vec![0.0; size],
            next: vec![0.0; size],
            eta_rows: Vec::with_capacity(grid.ny),
            eta_tau: None,
        })
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn config(&self) -> &DimlessConfig {
        &self.cfg
    }

    pub fn stability(&self) -> StabilityReport {
        self.stability
    }

    pub fn initialize(&self) -> Result<Field2D> {
        if !(self.cfg.theta_initial > 0.0) {
            return Err(Error::Config(format!(
                "theta_initial = {} must be positive: the initial state is liquid",
                self.cfg.theta_initial
            )));
        }
        let (ny, nz) = (self.grid.ny, self.grid.nz);
        let mut phi = vec![self.cfg.theta_initial + 1.0; ny * nz];
        let wall = enthalpy_from_temperature(self.cfg.theta_wall);
        for j in 0..ny {
            phi[j * nz] = wall;
        }
        Ok(Field2D { phi, ny, nz, tau: 0.0, step: 0 })
    }

    fn refresh_influx(&mut self, tau: f64) -> Result<()> {
        let stale = match self.eta_tau {
            None => true,
            Some(t) => self.cfg.eta_hat.depends_on_tau() && t != tau,
        };
        if stale {
            let ys = self.grid.ys();
            self.cfg.eta_hat.sample_column(&ys, tau, &mut self.eta_rows)?;
            self.eta_tau = Some(tau);
        }
        Ok(())
    }

    /// Influx per row at time `tau`.
    pub fn influx_rows(&mut self, tau: f64) -> Result<Vec<f64>> {
        self.refresh_influx(tau)?;
        Ok(self.eta_rows.clone())
    }

    /// Quadrature weights in `y`: the periodic rule counts the seam once,
    /// the mirrored one is the trapezoid rule.
    fn y_weights(&self) -> Vec<f64> {
        let (ny, dy) = (self.grid.ny, self.grid.dy);
        let mut w = vec![dy; ny];
        match self.opts.y_boundary {
            YBoundary::Periodic => w[ny - 1] = 0.0,
            YBoundary::Mirror => {
                w[0] = 0.5 * dy;
                w[ny - 1] = 0.5 * dy;
            }
        }
        w
    }

    /// `L ∫∫ φ dy dz`, trapezoid in `z`.
    pub fn energy(&self, field: &Field2D) -> f64 {
        let length = domain_length(field.tau, &self.cfg);
        let per_row: f64 = self
            .y_weights()
            .iter()
            .enumerate()
            .map(|(j, w)| w * trapezoid(field.row(j), self.grid.dz))
            .sum();
        length * per_row
    }

    fn coefficients(&self, length: f64) -> Coefficients {
        let g = &self.grid;
        Coefficients {
            diff_z: 1.0 / (length * length * g.dz * g.dz),
            diff_y: self.opts.lateral_diffusion / (g.dy * g.dy),
            adv: self.cfg.beta_hat / (length * g.dz),
            dz: g.dz,
            dtau: g.dtau,
            beta: self.cfg.beta_hat,
            length,
            wall_phi: enthalpy_from_temperature(self.cfg.theta_wall),
        }
    }

    /// One forward-Euler step. Returns the energy that entered during the step.
    pub fn step(&mut self, field: &mut Field2D) -> Result<f64> {
        let (ny, nz) = (self.grid.ny, self.grid.nz);
        let tau = field.tau;
        self.refresh_influx(tau)?;
        let length = domain_length(tau, &self.cfg);
        let coef = self.coefficients(length);

        for (t, &p) in self.theta.iter_mut().zip(&field.phi) {
            *t = temperature_from_enthalpy(p);
        }

        // energy entering during this step, per unit width summed over one period
        let mut inflow = 0.0;
        for (j, w) in self.y_weights().into_iter().enumerate() {
            let t = &self.theta[j * nz..];
            inflow += w * (self.eta_rows[j] * coef.beta - (t[1] - t[0]) / (length * self.grid.dz));
        }
        inflow *= self.grid.dtau;

        let theta = &self.theta;
        let phi = &field.phi;
        let eta_rows = &self.eta_rows;
        let mirror = self.opts.y_boundary == YBoundary::Mirror;
        let row = |j: usize, out: &mut [f64]| {
            let (jm, jp) = match (j, mirror) {
                (0, true) => (1, 1),
                (0, false) => (ny - 2, 1),
                (j, true) if j == ny - 1 => (ny - 2, ny - 2),
                (j, _) => (j - 1, j + 1),
            };
            update_row(
                out,
                &phi[j * nz..(j + 1) * nz],
                &theta[j * nz..(j + 1) * nz],
                &theta[jp * nz..(jp + 1) * nz],
                &theta[jm * nz..(jm + 1) * nz],
                eta_rows[j],
                &coef,
            );
        };
        let computed = if mirror { ny } else { ny - 1 };
        let (distinct, seam) = self.next.split_at_mut(computed * nz);
        if self.opts.rows_per_task == 0 {
            distinct.chunks_mut(nz).enumerate().for_each(|(j, out)| row(j, out));
        } else {
            distinct
                .par_chunks_mut(nz)
                .with_min_len(self.opts.rows_per_task)
                .enumerate()
                .for_each(|(j, out)| row(j, out));
        }
        if !mirror {
            // y = 1 is the line y = 0
            seam.copy_from_slice(&distinct[..nz]);
        }

        if let Some(k) = self.next.iter().position(|v| !v.is_finite()) {
            return Err(Error::BlowUp { step: field.step + 1, row: k / nz, node: k % nz });
        }
        std::mem::swap(&mut field.phi, &mut self.next);
        field.step += 1;
        field.tau = self.grid.tau_at(field.step);
        Ok(inflow)
    }

    /// Front position `S*` per row.
    pub fn extract_interface_curve(&self, field: &Field2D) -> Vec<f64> {
        (0..field.ny)
            .map(|j| level_crossing(field.row(j), self.grid.dz, self.opts.interface_level))
            .collect()
    }

    pub fn run(&mut self) -> Result<Run2D> {
        let field = self.initialize()?;
        self.run_from(field)
    }

    pub fn run_from(&mut self, mut field: Field2D) -> Result<Run2D> {
        let plan = self
            .opts
            .snapshots
            .clone()
            .unwrap_or_else(|| SnapshotPlan::default_for(self.grid.steps));
        let record = plan.steps(self.grid.steps, self.grid.dtau);
        let mut next = record.iter().peekable();

        let mut curve = InterfaceCurve { ys: self.grid.ys(), ..Default::default() };
        let mut snapshots = Vec::with_capacity(record.len());
        let mut net_inflow = 0.0;
        loop {
            if next.peek().is_some_and(|&&s| s == field.step) {
                next.next();
                let s_star = self.extract_interface_curve(&field);
                let length = domain_length(field.tau, &self.cfg);
                curve.taus.push(field.tau);
                curve.lengths.push(length);
                curve.s_star.push(s_star.clone());
                snapshots.push(Snapshot2D {
                    step: field.step,
                    tau: field.tau,
                    length,
                    energy: self.energy(&field),
                    net_inflow,
                    s_star,
                    phi: if self.opts.keep_fields { field.phi.clone() } else { Vec::new() },
                });
            }
            if field.step >= self.grid.steps {
                break;
            }
            net_inflow += self.step(&mut field)?;
        }
        Ok(Run2D { curve, snapshots, final_field: field, stability: self.stability })
    }
}

/// Coefficients `a_m = 2 ∫₀¹ f(y) cos(mπy) dy`, `m = 0..=m_max`, of samples
/// on the uniform grid `y_j = j/(n-1)` (trapezoid rule). `a_0` is halved so
/// it is the mean.
pub fn cosine_modes(values: &[f64], m_max: usize) -> Vec<f64> {
    let n = values.len();
    let dy = 1.0 / (n - 1) as f64;
    (0..=m_max)
        .map(|m| {
            let w: Vec<f64> = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * (m as f64 * std::f64::consts::PI * j as f64 * dy).cos())
                .collect();
            let a = 2.0 * trapezoid(&w, dy);
            if m == 0 { 0.5 * a } else { a }
        })
        .collect()
}

/// Index `m >= 1` of the largest-magnitude cosine coefficient.
pub fn dominant_mode(values: &[f64], m_max: usize) -> (usize, f64) {
    let modes = cosine_modes(values, m_max);
    let (m, a) = modes
        .iter()
        .enumerate()
        .skip(1)
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(m, a)| (m, *a))
        .unwrap_or((0, modes[0]));
    (m, a)
}

/// Explicit 1D solve built from the same row stencil with the lateral term
/// switched off; a `y`-independent 2D run must agree with it node for node.
pub fn explicit_column_reference(cfg: &DimlessConfig, grid: &Grid2D) -> Result<Vec<f64>> {
    cfg.validate()?;
    let nz = grid.nz;
    let eta = cfg.eta_hat.eval(0.0, 0.0)?;
    let mut phi = vec![cfg.theta_initial + 1.0; nz];
    phi[0] = enthalpy_from_temperature(cfg.theta_wall);
    let mut theta = vec![0.0; nz];
    let mut out = vec![0.0; nz];
    for step in 0..grid.steps {
        let tau = grid.tau_at(step);
        let length = domain_length(tau, cfg);
        let eta = if cfg.eta_hat.depends_on_tau() { cfg.eta_hat.eval(0.0, tau)? } else { eta };
        let coef = Coefficients {
            diff_z: 1.0 / (length * length * grid.dz * grid.dz),
            diff_y: 1.0 / (grid.dy * grid.dy),
            adv: cfg.beta_hat / (length * grid.dz),
            dz: grid.dz,
            dtau: grid.dtau,
            beta: cfg.beta_hat,
            length,
            wall_phi: enthalpy_from_temperature(cfg.theta_wall),
        };
        for (t, &p) in theta.iter_mut().zip(&phi) {
            *t = temperature_from_enthalpy(p);
        }
        update_row(&mut out, &phi, &theta, &theta, &theta, eta, &coef);
        std::mem::swap(&mut phi, &mut out);
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::influx::Influx;
    use crate::model::{nondimensionalize, PhysicalParams};

    fn icing2d(eta: &str) -> DimlessConfig {
        let mut cfg = nondimensionalize(&PhysicalParams::icing_2d(), 0.0, 200.0).unwrap();
        cfg.beta_hat = 0.1;
        cfg.eta_hat = Influx::parse(eta).unwrap();
        cfg
    }

    #[test]
    fn ghost_examples() {
        assert_eq!(ghost_boundary(0.3, 2.0, 0.0, 1.0, 0.01), 0.3);
        assert_eq!(ghost_boundary(0.0, 1.0, 0.2, 1.3, 0.01), 0.0);
        assert!((ghost_boundary(0.0, 3.0, 0.1, 1.0, 0.005) - 0.001).abs() < 1e-15);
    }

    #[test]
    fn cosine_modes_recover_planted_series() {
        let ys: Vec<f64> = (0..201).map(|j| j as f64 / 200.0).collect();
        let f: Vec<f64> = ys
            .iter()
            .map(|y| 0.4 + 0.1 * (3.0 * std::f64::consts::PI * y).cos() - 0.02 * (std::f64::consts::PI * y).cos())
            .collect();
        let a = cosine_modes(&f, 6);
        assert!((a[0] - 0.4).abs() < 1e-12);
        assert!((a[1] + 0.02).abs() < 1e-4);
        assert!((a[3] - 0.1).abs() < 1e-4);
        assert!(a[2].abs() < 1e-4 && a[5].abs() < 1e-4);
        assert_eq!(dominant_mode(&f, 6).0, 3);
    }

    #[test]
    fn stability_bound() {
        let mut cfg = icing2d("2+cos(3*pi*y)");
        let grid = Grid2D::from_spacing(0.005, 0.005, 1e-5, 0.1).unwrap();
        // L(0) = 0.2: 2/(0.04·2.5e-5) + 2/2.5e-5 + 0.1/(0.2·0.005) = 2.0801e6
        let r = stability_margin(&grid, &cfg, 1.0);
        assert!((r.margin - 20.801).abs() < 1e-9, "{}", r.margin);
        assert!(stability_check(&grid, &cfg, 1.0).is_err());
        // L(0) = 1: 8e4 + 8e4 + 20 = 160020
        cfg.l0_star = 1.0;
        let r = stability_margin(&grid, &cfg, 1.0);
        assert!((r.margin - 1.6002).abs() < 1e-9, "{}", r.margin);
        // tiny step always passes
        let tiny = Grid2D { dtau: 1e-9, ..grid };
        assert!(stability_check(&tiny, &cfg, 1.0).is_ok());
        // no lateral conduction -> 1D bound
        let r = stability_margin(&grid, &cfg, 0.0);
        assert!((r.max_dtau - 1.0 / (8e4 + 20.0)).abs() < 1e-18);
    }

    #[test]
    fn steady_state_without_injection() {
        let mut cfg = icing2d("2");
        cfg.beta_hat = 0.0;
        cfg.theta_initial = 0.05;
        cfg.theta_wall = -0.05;
        cfg.l0_star = 1.0;
        let grid = Grid2D::new(9, 9, 1e-3, 0.1).unwrap();
        let mut s = Solver2D::new(cfg.clone(), grid, Solver2DOptions::default()).unwrap();
        // uniform solid at the wall temperature is steady
        let mut f = s.initialize().unwrap();
        f.phi.iter_mut().for_each(|p| *p = -0.05);
        for _ in 0..100 {
            s.step(&mut f).unwrap();
        }
        assert!(f.phi.iter().all(|&p| (p + 0.05).abs() < 1e-14));
    }

    #[test]
    fn y_independent_matches_column() {
        let mut cfg = icing2d("1.5");
        cfg.l0_star = 1.0;
        let grid = Grid2D::from_spacing(0.1, 0.05, 2e-4, 0.2).unwrap();
        let mut s = Solver2D::new(cfg.clone(), grid, Solver2DOptions::default()).unwrap();
        let run = s.run().unwrap();
        let reference = explicit_column_reference(&cfg, &grid).unwrap();
        for j in 0..grid.ny {
            for i in 0..grid.nz {
                assert_eq!(run.final_field.at(j, i), reference[i]);
            }
        }
    }

    #[test]
    fn partitioning_does_not_change_result() {
        let mut cfg = icing2d("2+cos(3*pi*y)");
        cfg.l0_star = 1.0;
        let grid = Grid2D::from_spacing(0.05, 0.05, 2e-4, 0.1).unwrap();
        let mut a = Solver2D::new(cfg.clone(), grid, Solver2DOptions { rows_per_task: 0, ..Default::default() }).unwrap();
        let mut b = Solver2D::new(cfg, grid, Solver2DOptions { rows_per_task: 1, ..Default::default() }).unwrap();
        assert_eq!(a.run().unwrap().final_field.phi, b.run().unwrap().final_field.phi);
    }

    #[test]
    fn mirror_keeps_cosine_symmetry() {
        let mut cfg = icing2d("2+cos(2*pi*y)");
        cfg.l0_star = 1.0;
        let grid = Grid2D::from_spacing(0.05, 0.05, 2e-4, 0.1).unwrap();
        let opts = Solver2DOptions { y_boundary: YBoundary::Mirror, ..Default::default() };
        let f = Solver2D::new(cfg, grid, opts).unwrap().run().unwrap().final_field;
        // cos(2πy) is even about y = 1/2
        for j in 0..grid.ny {
            for i in 0..grid.nz {
                assert!((f.at(j, i) - f.at(grid.ny - 1 - j, i)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn periodic_rows_coincide() {
        let mut cfg = icing2d("2+cos(3*pi*y)");
        cfg.l0_star = 1.0;
        let grid = Grid2D::from_spacing(0.05, 0.05, 2e-4, 0.1).unwrap();
        let mut s = Solver2D::new(cfg, grid, Solver2DOptions::default()).unwrap();
        let f = s.run().unwrap().final_field;
        assert_eq!(f.row(0), f.row(grid.ny - 1));
    }
}
