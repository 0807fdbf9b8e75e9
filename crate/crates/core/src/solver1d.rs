//! One-dimensional enthalpy solver on the fixed reference domain `z = x/L(τ) ∈ [0, 1]`.
//!
//! Solves
//!
//! ```text
//! ∂φ/∂τ = (1/L²) ∂²θ/∂z² + (β̂ z / L) ∂φ/∂z,      θ = φ + φ̃(φ)
//! θ(0, τ) = θ_0
//! (1/L) ∂θ/∂z(1, τ) + β̂ φ(1, τ) = η̂ β̂
//! ```
//!
//! with implicit diffusion, forward-difference upwinding for the stretching
//! term, and the correction `φ̃` lagged from the previous iterate so that each
//! step is one tridiagonal solve.

use crate::error::{Error, Result};
use crate::interface::{classify_regime, level_crossing, InterfaceTrace, MushBand, Regime, DEFAULT_INTERFACE_LEVEL};
use crate::model::{domain_length, enthalpy_from_temperature, phi_tilde, temperature_from_enthalpy, DimlessConfig};
use crate::tdma::Tdma;

/// Uniform space-time grid on `[0, 1] × [0, τ_end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    /// Node count `N`.
    pub n: usize,
    pub dz: f64,
    pub dtau: f64,
    /// Number of time steps.
    pub steps: usize,
}

impl Grid1D {
    pub fn new(n: usize, dtau: f64, tau_end: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::validation("n", format!("need at least 3 nodes, got {n}")));
        }
        if !(dtau > 0.0) {
            return Err(Error::validation("dtau", format!("must be positive, got {dtau}")));
        }
        if !(tau_end >= 0.0) {
            return Err(Error::validation("tau_end", format!("must be >= 0, got {tau_end}")));
        }
        Ok(Grid1D {
            n,
            dz: 1.0 / (n - 1) as f64,
            dtau,
            steps: (tau_end / dtau).round() as usize,
        })
    }

    /// Grid with spacing as close as possible to `dz` (`N = round(1/dz) + 1`).
    pub fn from_spacing(dz: f64, dtau: f64, tau_end: f64) -> Result<Self> {
        if !(dz > 0.0 && dz <= 0.5) {
            return Err(Error::validation("dz", format!("must be in (0, 0.5], got {dz}")));
        }
        Self::new((1.0 / dz).round() as usize + 1, dtau, tau_end)
    }

    pub fn z(&self, i: usize) -> f64 {
        i as f64 * self.dz
    }

    /// `Λ = Δτ/Δz`
    pub fn lambda(&self) -> f64 {
        self.dtau / self.dz
    }

    /// `D = Δτ/Δz²`
    pub fn d_num(&self) -> f64 {
        self.dtau / (self.dz * self.dz)
    }

    pub fn tau_end(&self) -> f64 {
        self.steps as f64 * self.dtau
    }

    pub fn tau_at(&self, step: usize) -> f64 {
        step as f64 * self.dtau
    }
}

/// Condition at the cold wall `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WallCondition {
    /// `θ = θ_0` from the configuration.
    Cold,
    /// `θ` fixed to the given value.
    Fixed(f64),
    /// Zero flux (mirror node); used for closed-system checks.
    Insulated,
}

/// Condition at the injection boundary `z = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FarCondition {
    /// `(1/L) θ_z + β̂ φ = η̂ β̂`, first-order one-sided.
    Injection,
    /// Zero flux (mirror node); requires `β̂ = 0`.
    Insulated,
}

/// Treatment of the lagged correction `φ̃^(k+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LagPolicy {
    /// `φ̃` evaluated once from `φ^(k)`.
    Single,
    /// Re-solve with `φ̃` from the latest iterate until the sup-norm change
    /// drops below `tol` or `max_iter` solves have been made.
    FixedPoint { max_iter: usize, tol: f64 },
}

impl LagPolicy {
    pub fn fixed_point() -> Self {
        LagPolicy::FixedPoint { max_iter: 50, tol: 1e-10 }
    }
}

/// When to record snapshots.
#[derive(Debug, Clone, PartialEq)]
pub enum SnapshotPlan {
    /// Every `n` steps (plus the first and last step).
    Every(usize),
    /// At the steps nearest the given times (plus the first and last step).
    AtTimes(Vec<f64>),
}

impl SnapshotPlan {
    /// `ceil(K/400)` steps between snapshots.
    pub fn default_for(steps: usize) -> Self {
        SnapshotPlan::Every(steps.div_ceil(400).max(1))
    }

    /// Sorted, deduplicated step indices at which to record.
    pub fn steps(&self, total: usize, dtau: f64) -> Vec<usize> {
        let mut out: Vec<usize> = match self {
            SnapshotPlan::Every(n) => {
                let n = (*n).max(1);
                (0..=total).step_by(n).collect()
            }
            SnapshotPlan::AtTimes(ts) => ts
                .iter()
                .map(|t| ((t / dtau).round().max(0.0) as usize).min(total))
                .collect(),
        };
        out.push(0);
        out.push(total);
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solver1DOptions {
    pub wall: WallCondition,
    pub far: FarCondition,
    pub lag: LagPolicy,
    pub interface_level: f64,
    /// `None` selects [`SnapshotPlan::default_for`].
    pub snapshots: Option<SnapshotPlan>,
    /// Keep the full enthalpy profile in each snapshot.
    pub keep_fields: bool,
}

impl Default for Solver1DOptions {
    fn default() -> Self {
        Solver1DOptions {
            wall: WallCondition::Cold,
            far: FarCondition::Injection,
            lag: LagPolicy::Single,
            interface_level: DEFAULT_INTERFACE_LEVEL,
            snapshots: None,
            keep_fields: true,
        }
    }
}

/// Nondimensional enthalpy on the reference grid at time `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field1D {
    pub phi: Vec<f64>,
    pub tau: f64,
    pub step: usize,
}

impl Field1D {
    pub fn temperature(&self) -> Vec<f64> {
        self.phi.iter().map(|&p| temperature_from_enthalpy(p)).collect()
    }
}

/// State recorded at one snapshot time.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot1D {
    pub step: usize,
    pub tau: f64,
    pub length: f64,
    /// Total enthalpy `L ∫ φ dz` (trapezoidal), in units of `ρ L_h L_ref`.
    pub energy: f64,
    /// Cumulative energy that has entered through both boundaries since `τ = 0`.
    pub net_inflow: f64,
    /// Empty unless [`Solver1DOptions::keep_fields`] is set.
    pub phi: Vec<f64>,
}

/// Outcome of [`Solver1D::run`].
#[derive(Debug, Clone)]
pub struct Run1D {
    pub trace: InterfaceTrace,
    pub regimes: Vec<Regime>,
    pub snapshots: Vec<Snapshot1D>,
    pub final_field: Field1D,
    /// Largest number of lag iterations used by any step.
    pub max_lag_iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    pub lag_iterations: usize,
    /// Energy entering the domain during the step.
    pub inflow: f64,
}

/// Implicit enthalpy solver for the 1D injection problem.
#[derive(Debug, Clone)]
pub struct Solver1D {
    cfg: DimlessConfig,
    grid: Grid1D,
    opts: Solver1DOptions,
    tdma: Tdma,
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    rhs: Vec<f64>,
    lagged: Vec<f64>,
}

impl Solver1D {
    pub fn new(cfg: DimlessConfig, grid: Grid1D, opts: Solver1DOptions) -> Result<Self> {
        cfg.validate()?;
        if opts.far == FarCondition::Insulated && cfg.beta_hat != 0.0 {
            return Err(Error::Precondition(
                "an insulated far boundary requires beta_hat = 0".into(),
            ));
        }
        if let LagPolicy::FixedPoint { max_iter, tol } = opts.lag {
            if max_iter == 0 || !(tol > 0.0) {
                return Err(Error::validation("lag", "fixed-point lag needs max_iter >= 1 and tol > 0"));
            }
        }
        let n = grid.n;
        Ok(Solver1D {
            cfg,
            grid,
            opts,
            tdma: Tdma::new(),
            lower: vec![0.0; n],
            diag: vec![0.0; n],
            upper: vec![0.0; n],
            rhs: vec![0.0; n],
            lagged: vec![0.0; n],
        })
    }

    pub fn config(&self) -> &DimlessConfig {
        &self.cfg
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn options(&self) -> &Solver1DOptions {
        &self.opts
    }

    fn wall_phi(&self) -> Option<f64> {
        match self.opts.wall {
            WallCondition::Cold => Some(enthalpy_from_temperature(self.cfg.theta_wall)),
            WallCondition::Fixed(theta) => Some(enthalpy_from_temperature(theta)),
            WallCondition::Insulated => None,
        }
    }

    /// Uniform liquid at `θ_initial` with the wall node at its boundary value.
    pub fn initialize(&self) -> Result<Field1D> {
        if !(self.cfg.theta_initial > 0.0) {
            return Err(Error::Config(format!(
                "theta_initial = {} must be positive: the initial state is liquid",
                self.cfg.theta_initial
            )));
        }
        let mut phi = vec![self.cfg.theta_initial + 1.0; self.grid.n];
        if let Some(w) = self.wall_phi() {
            phi[0] = w;
        }
        Ok(Field1D { phi, tau: 0.0, step: 0 })
    }

    /// Starts from an arbitrary profile; the wall node is overwritten when
    /// the wall condition is a fixed temperature.
    pub fn initialize_with(&self, mut phi: Vec<f64>) -> Result<Field1D> {
        if phi.len() != self.grid.n {
            return Err(Error::LengthMismatch { left: phi.len(), right: self.grid.n });
        }
        if phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("phi", "initial profile must be finite"));
        }
        if let Some(w) = self.wall_phi() {
            phi[0] = w;
        }
        Ok(Field1D { phi, tau: 0.0, step: 0 })
    }

    fn influx_at(&self, tau: f64) -> Result<f64> {
        let v = self.cfg.eta_hat.eval(0.0, tau)?;
        if !(v >= 1.0) {
            return Err(Error::validation(
                "eta_hat",
                format!("influx {v} at tau={tau} must be >= 1"),
            ));
        }
        Ok(v)
    }

    /// Trapezoidal total enthalpy `L ∫ φ dz`.
    pub fn energy(&self, field: &Field1D) -> f64 {
        domain_length(field.tau, &self.cfg) * trapezoid(&field.phi, self.grid.dz)
    }

    /// Advances `field` by one time step.
    pub fn step(&mut self, field: &mut Field1D) -> Result<StepReport> {
        let n = self.grid.n;
        let dz = self.grid.dz;
        let tau_new = self.grid.tau_at(field.step + 1);
        let length = domain_length(tau_new, &self.cfg);
        let beta = self.cfg.beta_hat;
        let dc = self.grid.d_num() / (length * length);
        let lam = self.grid.lambda();
        let eta = match self.opts.far {
            FarCondition::Injection => self.influx_at(tau_new)?,
            FarCondition::Insulated => 0.0,
        };
        let wall = self.wall_phi();

        let (max_iter, tol) = match self.opts.lag {
            LagPolicy::Single => (1, 0.0),
            LagPolicy::FixedPoint { max_iter, tol } => (max_iter, tol),
        };

        // lagged holds φ̃ of the latest iterate, starting from φ^(k)
        for (l, &p) in self.lagged.iter_mut().zip(&field.phi) {
            *l = phi_tilde(p);
        }
        let mut iterations = 0;
        let mut used;
        loop {
            iterations += 1;
            let pt = &self.lagged;
            match wall {
                Some(w) => {
                    self.diag[0] = 1.0;
                    self.upper[0] = 0.0;
                    self.rhs[0] = w;
                }
                None => {
                    self.diag[0] = 1.0 + 2.0 * dc;
                    self.upper[0] = -2.0 * dc;
                    self.rhs[0] = 2.0 * dc * (pt[1] - pt[0]) + field.phi[0];
                }
            }
            let adv_dz = beta * dz / length * lam;
            let interior = self.lower[1..n - 1]
                .iter_mut()
                .zip(&mut self.diag[1..n - 1])
                .zip(&mut self.upper[1..n - 1])
                .zip(&mut self.rhs[1..n - 1])
                .zip(pt.windows(3).zip(&field.phi[1..n - 1]));
            for (i, ((((lo, di), up), r), (w, &p))) in interior.enumerate() {
                let adv = adv_dz * (i + 1) as f64;
                *lo = -dc;
                *di = 1.0 + 2.0 * dc + adv;
                *up = -(dc + adv);
                *r = dc * (w[0] - 2.0 * w[1] + w[2]) + p;
            }
            match self.opts.far {
                FarCondition::Injection => {
                    let c = 1.0 / (length * dz);
                    self.lower[n - 1] = -c;
                    self.diag[n - 1] = c + beta;
                    self.rhs[n - 1] = c * (pt[n - 2] - pt[n - 1]) + eta * beta;
                }
                FarCondition::Insulated => {
                    self.lower[n - 1] = -2.0 * dc;
                    self.diag[n - 1] = 1.0 + 2.0 * dc;
                    self.rhs[n - 1] = 2.0 * dc * (pt[n - 2] - pt[n - 1]) + field.phi[n - 1];
                }
            }
            self.tdma.solve(&self.lower, &self.diag, &self.upper, &mut self.rhs)?;

            used = [self.lagged[0], self.lagged[1]];
            if iterations >= max_iter {
                break;
            }
            let mut change = 0.0f64;
            for (l, &p) in self.lagged.iter_mut().zip(&self.rhs) {
                let t = phi_tilde(p);
                change = change.max((t - *l).abs());
                *l = t;
            }
            if change < tol {
                break;
            }
        }

        if let Some(i) = self.rhs.iter().position(|v| !v.is_finite()) {
            return Err(Error::BlowUp { step: field.step + 1, row: 0, node: i });
        }
        field.phi.copy_from_slice(&self.rhs);
        field.step += 1;
        field.tau = tau_new;

        let inflow_far = eta * beta;
        let inflow_wall = match wall {
            // the flux the scheme actually applied: new φ with the φ̃ it was solved with
            Some(_) => {
                let t0 = field.phi[0] + used[0];
                let t1 = field.phi[1] + used[1];
                -(t1 - t0) / (length * dz)
            }
            None => 0.0,
        };
        Ok(StepReport {
            lag_iterations: iterations,
            inflow: self.grid.dtau * (inflow_far + inflow_wall),
        })
    }

    /// Reference-coordinate front `S*` and physical front `S = S* L(τ)`.
    pub fn extract_interface(&self, field: &Field1D) -> (f64, f64) {
        let s = level_crossing(&field.phi, self.grid.dz, self.opts.interface_level);
        (s, s * domain_length(field.tau, &self.cfg))
    }

    fn snapshot(&self, field: &Field1D, net_inflow: f64) -> Snapshot1D {
        Snapshot1D {
            step: field.step,
            tau: field.tau,
            length: domain_length(field.tau, &self.cfg),
            energy: self.energy(field),
            net_inflow,
            phi: if self.opts.keep_fields { field.phi.clone() } else { Vec::new() },
        }
    }

    /// Runs from the uniform initial state to `τ_end`.
    pub fn run(&mut self) -> Result<Run1D> {
        let field = self.initialize()?;
        self.run_from(field)
    }

    pub fn run_from(&mut self, mut field: Field1D) -> Result<Run1D> {
        let plan = self
            .opts
            .snapshots
            .clone()
            .unwrap_or_else(|| SnapshotPlan::default_for(self.grid.steps));
        let record = plan.steps(self.grid.steps, self.grid.dtau);
        let mut next = record.iter().peekable();

        let mut trace = InterfaceTrace::default();
        let mut snapshots = Vec::with_capacity(record.len());
        let mut net_inflow = 0.0;
        let mut max_lag = 0;
        loop {
            if next.peek().is_some_and(|&&s| s == field.step) {
                next.next();
                let (s_star, _) = self.extract_interface(&field);
                let length = domain_length(field.tau, &self.cfg);
                trace.push(field.tau, s_star, length, MushBand::from_profile(&field.phi, self.grid.dz));
                snapshots.push(self.snapshot(&field, net_inflow));
            }
            if field.step >= self.grid.steps {
                break;
            }
            let report = self.step(&mut field)?;
            net_inflow += report.inflow;
            max_lag = max_lag.max(report.lag_iterations);
        }
        let regimes = classify_regime(&trace, self.cfg.beta_hat);
        Ok(Run1D {
            trace,
            regimes,
            snapshots,
            final_field: field,
            max_lag_iterations: max_lag,
        })
    }
}

pub(crate) fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => 0.0,
        n => h * (0.5 * values[0] + values[1..n - 1].iter().sum::<f64>() + 0.5 * values[n - 1]),
    }
}
