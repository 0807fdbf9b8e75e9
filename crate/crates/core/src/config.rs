//! TOML run configurations.
//!
//! A file names a `mode` and supplies the physics either as dimensional
//! constants (`[physical]`, optionally starting from a preset) or directly in
//! nondimensional form (`[dimensionless]`), plus the injection parameters,
//! grid, solver switches and, for the UQ modes, the random inputs.
//!
//! ```toml
//! mode = "simulate1d"
//!
//! [physical]
//! preset = "icing_1d"
//!
//! [injection]
//! beta_hat = 0.35
//! eta_hat = "1.25"
//!
//! [grid]
//! dz = 0.01
//! dtau = 1e-4
//! tau_end = 4.0
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::influx::Influx;
use crate::interface::DEFAULT_INTERFACE_LEVEL;
use crate::model::{DimlessConfig, PhysicalParams};
use crate::solver1d::{FarCondition, Grid1D, LagPolicy, SnapshotPlan, Solver1DOptions, WallCondition};
use crate::solver2d::{stability_margin, Grid2D, Solver2DOptions, YBoundary};
use crate::uq::campaign::{CampaignOptions, ResponseKind};
use crate::uq::sampling::{Distribution, RandomInputSpec, RandomParameter};
use crate::uq::stats::DEFAULT_BINS;
use crate::uq::surrogate::FitMethod;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Simulate1d,
    Simulate2d,
    Uq1d,
    Uq2d,
    Oracle,
    Audit,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Simulate1d => "simulate1d",
            Mode::Simulate2d => "simulate2d",
            Mode::Uq1d => "uq1d",
            Mode::Uq2d => "uq2d",
            Mode::Oracle => "oracle",
            Mode::Audit => "audit",
        }
    }

    pub fn is_2d(&self) -> bool {
        matches!(self, Mode::Simulate2d | Mode::Uq2d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    #[serde(rename = "icing_1d")]
    Icing1d,
    #[serde(rename = "icing_2d")]
    Icing2d,
}

/// Dimensional constants; unset fields come from the preset.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latent_heat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_wall: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_initial: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_melt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_ref: Option<f64>,
}

impl PhysicalSection {
    pub fn params(&self, mode: Mode) -> Result<PhysicalParams> {
        let preset = self.preset.unwrap_or(if mode.is_2d() { Preset::Icing2d } else { Preset::Icing1d });
        let base = match preset {
            Preset::Icing1d => PhysicalParams::icing_1d(),
            Preset::Icing2d => PhysicalParams::icing_2d(),
        };
        let p = PhysicalParams {
            rho: self.rho.unwrap_or(base.rho),
            c: self.c.unwrap_or(base.c),
            k: self.k.unwrap_or(base.k),
            latent_heat: self.latent_heat.unwrap_or(base.latent_heat),
            t_wall: self.t_wall.unwrap_or(base.t_wall),
            t_initial: self.t_initial.unwrap_or(base.t_initial),
            t_melt: self.t_melt.unwrap_or(base.t_melt),
            l0: self.l0.unwrap_or(base.l0),
            l_ref: self.l_ref.unwrap_or(base.l_ref),
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionlessSection {
    pub theta_wall: f64,
    pub theta_initial: f64,
    #[serde(default = "one")]
    pub l0_star: f64,
    /// Only reported; the solvers do not use it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

/// A number or an expression in `y`, `tau` (and UQ parameters).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberOrExpr {
    Number(f64),
    Expr(String),
}

impl NumberOrExpr {
    pub fn source(&self) -> String {
        match self {
            NumberOrExpr::Number(v) => format!("{v:?}"),
            NumberOrExpr::Expr(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InjectionSection {
    #[serde(default)]
    pub beta_hat: f64,
    #[serde(default = "default_eta")]
    pub eta_hat: NumberOrExpr,
}

impl Default for InjectionSection {
    fn default() -> Self {
        InjectionSection { beta_hat: 0.0, eta_hat: default_eta() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(default = "default_dz")]
    pub dz: f64,
    /// 2D only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dy: Option<f64>,
    /// Required in 1D; in 2D defaults to `dtau_safety` times the explicit limit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dtau: Option<f64>,
    #[serde(default = "default_safety")]
    pub dtau_safety: f64,
    pub tau_end: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LagKind {
    Single,
    FixedPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WallKind {
    Cold,
    Insulated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FarKind {
    Injection,
    Insulated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    #[serde(default = "default_level")]
    pub interface_level: f64,
    #[serde(default = "default_lag")]
    pub lag: LagKind,
    #[serde(default = "default_wall")]
    pub wall: WallKind,
    #[serde(default = "default_far")]
    pub far: FarKind,
    #[serde(default)]
    pub y_boundary: YBoundary,
    #[serde(default = "one")]
    pub lateral_diffusion: f64,
    /// Rows per parallel task in 2D; 0 for a sequential update.
    #[serde(default = "default_rows")]
    pub rows_per_task: usize,
}

impl Default for SolverSection {
    fn default() -> Self {
        SolverSection {
            interface_level: default_level(),
            lag: default_lag(),
            wall: default_wall(),
            far: default_far(),
            y_boundary: YBoundary::default(),
            lateral_diffusion: 1.0,
            rows_per_task: default_rows(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    /// Snapshot every n steps (default: about 400 snapshots per run).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot_every: Option<usize>,
    /// Snapshot at these times instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot_times: Option<Vec<f64>>,
    /// Write full enthalpy fields at every snapshot.
    #[serde(default)]
    pub fields: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParameter", into = "RawParameter")]
pub struct ParameterSection {
    pub name: String,
    pub distribution: Distribution,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParameter {
    name: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    low: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    high: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mean: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    std: Option<f64>,
}

impl TryFrom<RawParameter> for ParameterSection {
    type Error = String;

    fn try_from(r: RawParameter) -> std::result::Result<Self, String> {
        let distribution = match (r.kind.as_str(), r.low, r.high, r.mean, r.std) {
            ("uniform", Some(low), Some(high), None, None) => Distribution::Uniform { low, high },
            ("normal", None, None, Some(mean), Some(std)) => Distribution::Normal { mean, std },
            ("uniform", ..) => return Err(format!("parameter {}: uniform takes exactly low and high", r.name)),
            ("normal", ..) => return Err(format!("parameter {}: normal takes exactly mean and std", r.name)),
            (k, ..) => return Err(format!("parameter {}: unknown kind {k:?}, expected uniform or normal", r.name)),
        };
        Ok(ParameterSection { name: r.name, distribution })
    }
}

impl From<ParameterSection> for RawParameter {
    fn from(p: ParameterSection) -> Self {
        let mut r = RawParameter { name: p.name, kind: String::new(), low: None, high: None, mean: None, std: None };
        match p.distribution {
            Distribution::Uniform { low, high } => {
                r.kind = "uniform".into();
                r.low = Some(low);
                r.high = Some(high);
            }
            Distribution::Normal { mean, std } => {
                r.kind = "normal".into();
                r.mean = Some(mean);
                r.std = Some(std);
            }
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UqSection {
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default = "default_factor")]
    pub sample_factor: f64,
    pub times: Vec<f64>,
    #[serde(default = "default_bins")]
    pub bins: usize,
    #[serde(default)]
    pub response: ResponseKind,
    #[serde(default)]
    pub pseudo_inverse: bool,
    #[serde(rename = "parameter")]
    pub parameters: Vec<ParameterSection>,
    /// Target field name to expression, e.g. `beta_hat = "b"`.
    pub bind: toml::Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    /// Comparison times; the error is reported over all of them.
    #[serde(default = "default_oracle_times")]
    pub times: Vec<f64>,
}

impl Default for OracleSection {
    fn default() -> Self {
        OracleSection { times: default_oracle_times() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditSection {
    /// Grid spacings of the refinement study.
    #[serde(default = "default_refinements")]
    pub refinements: Vec<f64>,
    /// `dtau = dtau_ratio · dz` on every grid.
    #[serde(default = "default_ratio")]
    pub dtau_ratio: f64,
}

impl Default for AuditSection {
    fn default() -> Self {
        AuditSection { refinements: default_refinements(), dtau_ratio: default_ratio() }
    }
}

/// A run configuration as written in the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical: Option<PhysicalSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimensionless: Option<DimensionlessSection>,
    #[serde(default)]
    pub injection: InjectionSection,
    pub grid: GridSection,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub snapshots: OutputSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uq: Option<UqSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditSection>,
    /// Written by the resolved echo; ignored on input.
    #[serde(default, skip_serializing)]
    pub derived: Option<toml::Table>,
}

fn one() -> f64 {
    1.0
}
fn default_eta() -> NumberOrExpr {
    NumberOrExpr::Number(1.0)
}
fn default_dz() -> f64 {
    0.01
}
fn default_safety() -> f64 {
    0.9
}
fn default_level() -> f64 {
    DEFAULT_INTERFACE_LEVEL
}
fn default_lag() -> LagKind {
    LagKind::Single
}
fn default_wall() -> WallKind {
    WallKind::Cold
}
fn default_far() -> FarKind {
    FarKind::Injection
}
fn default_rows() -> usize {
    8
}
fn default_degree() -> usize {
    4
}
fn default_factor() -> f64 {
    2.0
}
fn default_bins() -> usize {
    DEFAULT_BINS
}
fn default_oracle_times() -> Vec<f64> {
    vec![1.0, 2.0, 3.0, 4.0]
}
fn default_refinements() -> Vec<f64> {
    vec![0.02, 0.01, 0.005]
}
fn default_ratio() -> f64 {
    0.01
}

/// Everything a run needs, validated.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub mode: Mode,
    pub seed: u64,
    pub physics: DimlessConfig,
    /// Present when the physics came from dimensional constants.
    pub physical: Option<PhysicalParams>,
    pub grid1d: Option<Grid1D>,
    pub grid2d: Option<Grid2D>,
    pub solver1d: Solver1DOptions,
    pub solver2d: Solver2DOptions,
    pub uq: Option<(RandomInputSpec, CampaignOptions, Vec<f64>)>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse { path: PathBuf::from("<string>"), message: e.to_string() })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse { path: path.to_path_buf(), message: e.to_string() })?;
        toml::from_str(&text).map_err(|e| Error::Parse { path: path.to_path_buf(), message: e.to_string() })
    }

    fn physics(&self) -> Result<(DimlessConfig, Option<PhysicalParams>)> {
        let eta = Influx::parse(&self.injection.eta_hat.source())?;
        let beta_hat = self.injection.beta_hat;
        let (cfg, phys) = match (&self.physical, &self.dimensionless) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("give either [physical] or [dimensionless], not both".into()));
            }
            (None, Some(d)) => (
                DimlessConfig {
                    theta_wall: d.theta_wall,
                    theta_initial: d.theta_initial,
                    theta_melt: 0.0,
                    beta_hat,
                    eta_hat: eta,
                    gamma: d.gamma.unwrap_or(f64::NAN),
                    l0_star: d.l0_star,
                },
                None,
            ),
            (p, None) => {
                let p = p.clone().unwrap_or_default().params(self.mode)?;
                let cfg = DimlessConfig {
                    theta_wall: p.theta(p.t_wall),
                    theta_initial: p.theta(p.t_initial),
                    theta_melt: p.theta(p.t_melt),
                    beta_hat,
                    eta_hat: eta,
                    gamma: p.gamma(),
                    l0_star: p.l0 / p.l_ref,
                };
                (cfg, Some(p))
            }
        };
        if let (None, Some(d)) = (&self.physical, &self.dimensionless) {
            if d.gamma.is_some_and(|g| !(g > 0.0)) {
                return Err(Error::validation("dimensionless.gamma", "must be positive"));
            }
        }
        // NaN gamma is allowed when not given: nothing downstream reads it
        let check = DimlessConfig { gamma: if cfg.gamma.is_nan() { 1.0 } else { cfg.gamma }, ..cfg.clone() };
        check.validate()?;
        if self.uq.is_none() {
            // a bare influx expression must be fully bound and admissible
            if let Influx::Field(f) = &cfg.eta_hat {
                f.check_bound()?;
            }
        }
        Ok((cfg, phys))
    }

    fn snapshot_plan(&self) -> Result<Option<SnapshotPlan>> {
        match (&self.snapshots.snapshot_every, &self.snapshots.snapshot_times) {
            (Some(_), Some(_)) => Err(Error::Config("give snapshot_every or snapshot_times, not both".into())),
            (Some(0), None) => Err(Error::validation("snapshots.snapshot_every", "must be positive")),
            (Some(n), None) => Ok(Some(SnapshotPlan::Every(*n))),
            (None, Some(t)) => Ok(Some(SnapshotPlan::AtTimes(t.clone()))),
            (None, None) => Ok(None),
        }
    }

    fn random_inputs(&self) -> Result<(RandomInputSpec, CampaignOptions, Vec<f64>)> {
        let uq = self
            .uq
            .as_ref()
            .ok_or_else(|| Error::Config(format!("mode {} needs a [uq] section", self.mode.as_str())))?;
        let params = uq
            .parameters
            .iter()
            .map(|p| RandomParameter { name: p.name.clone(), distribution: p.distribution })
            .collect();
        let mut bindings = Vec::new();
        for (target, value) in &uq.bind {
            let source = match value {
                toml::Value::String(s) => s.clone(),
                toml::Value::Float(v) => format!("{v:?}"),
                toml::Value::Integer(v) => v.to_string(),
                other => return Err(Error::validation(format!("uq.bind.{target}"), format!("expected an expression, got {other}"))),
            };
            bindings.push((target.clone(), source));
        }
        let spec = RandomInputSpec::new(params, bindings)?;
        if uq.times.is_empty() || uq.times.iter().any(|t| !(*t >= 0.0 && *t <= self.grid.tau_end)) {
            return Err(Error::validation("uq.times", "need at least one time in [0, tau_end]"));
        }
        if uq.samples == Some(0) || !(uq.sample_factor > 0.0) {
            return Err(Error::validation("uq.samples", "sample count must be positive"));
        }
        let opts = CampaignOptions {
            samples: uq.samples,
            sample_factor: uq.sample_factor,
            degree: uq.degree,
            seed: self.seed,
            threads: None,
            method: if uq.pseudo_inverse { FitMethod::PseudoInverse } else { FitMethod::Cholesky },
            bins: uq.bins.max(1),
            response: uq.response,
        };
        Ok((spec, opts, uq.times.clone()))
    }

    /// Validates the configuration and builds the solver inputs.
    pub fn resolve(&self) -> Result<Resolved> {
        let (physics, physical) = self.physics()?;
        let g = &self.grid;
        if !(g.tau_end > 0.0) {
            return Err(Error::validation("grid.tau_end", "must be positive"));
        }
        if !(g.dtau_safety > 0.0 && g.dtau_safety <= 1.0) {
            return Err(Error::validation("grid.dtau_safety", "must be in (0, 1]"));
        }
        let snapshots = self.snapshot_plan()?;
        let s = &self.solver;
        if !(0.0..=1.0).contains(&s.interface_level) {
            return Err(Error::validation("solver.interface_level", "must be in [0, 1]"));
        }

        let solver1d = Solver1DOptions {
            wall: match s.wall {
                WallKind::Cold => WallCondition::Cold,
                WallKind::Insulated => WallCondition::Insulated,
            },
            far: match s.far {
                FarKind::Injection => FarCondition::Injection,
                FarKind::Insulated => FarCondition::Insulated,
            },
            lag: match s.lag {
                LagKind::Single => LagPolicy::Single,
                LagKind::FixedPoint => LagPolicy::fixed_point(),
            },
            interface_level: s.interface_level,
            snapshots: snapshots.clone(),
            keep_fields: self.snapshots.fields,
        };
        let solver2d = Solver2DOptions {
            interface_level: s.interface_level,
            snapshots,
            keep_fields: self.snapshots.fields,
            lateral_diffusion: s.lateral_diffusion,
            y_boundary: s.y_boundary,
            rows_per_task: s.rows_per_task,
        };

        let uq = match self.mode {
            Mode::Uq1d | Mode::Uq2d => Some(self.random_inputs()?),
            _ => None,
        };

        let (grid1d, grid2d) = if self.mode.is_2d() {
            let dy = g.dy.ok_or_else(|| Error::Config("2D modes need grid.dy".into()))?;
            let dtau = match g.dtau {
                Some(d) => d,
                None => {
                    // worst case over the campaign inputs, or the single run
                    let probe = Grid2D::from_spacing(dy, g.dz, 1.0, g.tau_end)?;
                    let configs: Vec<DimlessConfig> = match &uq {
                        Some((spec, opts, _)) => crate::uq::campaign::campaign_points(spec, opts)?
                            .iter()
                            .map(|p| spec.bind(&physics, p))
                            .collect::<Result<_>>()?,
                        None => vec![physics.clone()],
                    };
                    let limit = configs
                        .iter()
                        .map(|c| stability_margin(&probe, c, s.lateral_diffusion).max_dtau)
                        .fold(f64::INFINITY, f64::min);
                    g.dtau_safety * limit
                }
            };
            (None, Some(Grid2D::from_spacing(dy, g.dz, dtau, g.tau_end)?))
        } else {
            let dtau = g.dtau.ok_or_else(|| Error::Config("1D modes need grid.dtau".into()))?;
            (Some(Grid1D::from_spacing(g.dz, dtau, g.tau_end)?), None)
        };

        if self.mode == Mode::Oracle && physics.beta_hat != 0.0 {
            return Err(Error::validation("injection.beta_hat", "oracle mode needs a static boundary (beta_hat = 0)"));
        }

        Ok(Resolved { mode: self.mode, seed: self.seed, physics, physical, grid1d, grid2d, solver1d, solver2d, uq })
    }

    /// The configuration with every default written out, followed by a
    /// `[derived]` table of resolved quantities. Parsing the echo yields an
    /// equivalent configuration.
    pub fn resolved_echo(&self, resolved: &Resolved) -> Result<String> {
        let mut explicit = self.clone();
        if explicit.physical.is_none() && explicit.dimensionless.is_none() {
            explicit.physical = Some(PhysicalSection::default());
        }
        if let Some(p) = &resolved.physical {
            explicit.physical = Some(PhysicalSection {
                preset: None,
                rho: Some(p.rho),
                c: Some(p.c),
                k: Some(p.k),
                latent_heat: Some(p.latent_heat),
                t_wall: Some(p.t_wall),
                t_initial: Some(p.t_initial),
                t_melt: Some(p.t_melt),
                l0: Some(p.l0),
                l_ref: Some(p.l_ref),
            });
        }
        if let Some(g) = &resolved.grid2d {
            explicit.grid.dtau = Some(g.dtau);
        }
        if explicit.mode == Mode::Oracle && explicit.oracle.is_none() {
            explicit.oracle = Some(OracleSection::default());
        }
        if explicit.mode == Mode::Audit && explicit.audit.is_none() {
            explicit.audit = Some(AuditSection::default());
        }
        let mut text = toml::to_string(&explicit).map_err(|e| Error::Config(format!("cannot serialize config: {e}")))?;

        let c = &resolved.physics;
        let mut derived = toml::Table::new();
        derived.insert("theta_wall".into(), c.theta_wall.into());
        derived.insert("theta_initial".into(), c.theta_initial.into());
        derived.insert("theta_melt".into(), c.theta_melt.into());
        if c.gamma.is_finite() {
            derived.insert("gamma".into(), c.gamma.into());
        }
        derived.insert("beta_hat".into(), c.beta_hat.into());
        derived.insert("eta_hat".into(), c.eta_hat.source().into());
        derived.insert("l0_star".into(), c.l0_star.into());
        derived.insert("length_final".into(), c.domain_length(self.grid.tau_end).into());
        if let Some(p) = &resolved.physical {
            derived.insert("time_scale".into(), p.time_scale().into());
        }
        if let Some(g) = &resolved.grid1d {
            derived.insert("nodes".into(), (g.n as i64).into());
            derived.insert("steps".into(), (g.steps as i64).into());
        }
        if let Some(g) = &resolved.grid2d {
            derived.insert("ny".into(), (g.ny as i64).into());
            derived.insert("nz".into(), (g.nz as i64).into());
            derived.insert("steps".into(), (g.steps as i64).into());
            if resolved.uq.is_none() {
                let m = stability_margin(g, c, resolved.solver2d.lateral_diffusion);
                derived.insert("stability_margin".into(), m.margin.into());
                derived.insert("max_dtau".into(), m.max_dtau.into());
            }
        }
        if let Some((spec, opts, _)) = &resolved.uq {
            let n = crate::uq::legendre::basis_size(spec.dims(), opts.degree);
            derived.insert("basis_size".into(), (n as i64).into());
            derived.insert("samples".into(), (opts.sample_count(n) as i64).into());
            derived.insert("truncated_mass".into(), spec.truncated_mass().into());
        }
        let mut wrapper = toml::Table::new();
        wrapper.insert("derived".into(), toml::Value::Table(derived));
        text.push('\n');
        text.push_str(&toml::to_string(&wrapper).map_err(|e| Error::Config(e.to_string()))?);
        Ok(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
mode = "simulate1d"

[physical]
preset = "icing_1d"

[injection]
beta_hat = 0.35
eta_hat = 1.25

[grid]
dz = 0.01
dtau = 1e-4
tau_end = 4.0
"#;

    #[test]
    fn minimal_resolves() {
        let cfg = RunConfig::from_toml(MINIMAL).unwrap();
        let r = cfg.resolve().unwrap();
        assert_eq!(r.physics.gamma, 80.0);
        assert_eq!(r.physics.theta_wall, -0.25);
        assert_eq!(r.physics.theta_initial, 0.05);
        assert_eq!(r.grid1d.unwrap().n, 101);
        assert_eq!(r.grid1d.unwrap().steps, 40_000);
    }

    #[test]
    fn echo_round_trips() {
        let cfg = RunConfig::from_toml(MINIMAL).unwrap();
        let r = cfg.resolve().unwrap();
        let echo = cfg.resolved_echo(&r).unwrap();
        assert!(echo.contains("[derived]"));
        let again = RunConfig::from_toml(&echo).unwrap();
        let r2 = again.resolve().unwrap();
        assert_eq!(r.physics, r2.physics);
        assert_eq!(r.grid1d, r2.grid1d);
        assert_eq!(again.resolved_echo(&r2).unwrap(), echo);
    }

    #[test]
    fn missing_mode_is_parse_error() {
        let text = MINIMAL.replace("mode = \"simulate1d\"", "");
        assert!(matches!(RunConfig::from_toml(&text), Err(Error::Parse { .. })));
    }

    #[test]
    fn sub_equilibrium_influx_rejected() {
        let text = MINIMAL.replace("eta_hat = 1.25", "eta_hat = 0.9");
        let err = RunConfig::from_toml(&text).unwrap().resolve().unwrap_err();
        assert!(err.is_config_error());
        assert!(err.to_string().contains("eta_hat"));
    }

    #[test]
    fn unknown_key_rejected() {
        let text = MINIMAL.replace("dz = 0.01", "dz = 0.01\nnodes = 5");
        assert!(RunConfig::from_toml(&text).is_err());
    }

    #[test]
    fn two_dimensional_auto_step() {
        let text = r#"
mode = "simulate2d"
[injection]
beta_hat = 0.1
eta_hat = "2 + cos(3*pi*y)"
[grid]
dy = 0.01
dz = 0.01
tau_end = 0.1
"#;
        let r = RunConfig::from_toml(text).unwrap().resolve().unwrap();
        let g = r.grid2d.unwrap();
        let m = stability_margin(&g, &r.physics, 1.0);
        assert!((m.margin - 0.9).abs() < 1e-12);
        assert_eq!(r.physics.l0_star, 0.2);
    }

    #[test]
    fn uq_section() {
        let text = r#"
mode = "uq1d"
seed = 7
[physical]
t_wall = -2.0
[grid]
dtau = 1e-4
tau_end = 4.0
[uq]
times = [4.0]
[[uq.parameter]]
name = "b"
kind = "uniform"
low = 0.2
high = 0.7
[[uq.parameter]]
name = "h"
kind = "uniform"
low = 1.0
high = 1.25
[uq.bind]
beta_hat = "b"
eta_hat = "h"
"#;
        let cfg = RunConfig::from_toml(text).unwrap();
        let r = cfg.resolve().unwrap();
        let (spec, opts, times) = r.uq.clone().unwrap();
        assert_eq!(spec.dims(), 2);
        assert_eq!(opts.sample_count(15), 450);
        assert_eq!(times, vec![4.0]);
        assert_eq!(r.physics.theta_wall, -0.05);
        let echo = cfg.resolved_echo(&r).unwrap();
        assert_eq!(RunConfig::from_toml(&echo).unwrap().resolve().unwrap().physics, r.physics);
    }
}
