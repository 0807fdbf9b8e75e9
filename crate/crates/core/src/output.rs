//! Run directories: CSV tables, `summary.json`, `manifest.json` and
//! tolerance files.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::uq::sampling::RandomParameter;

pub const SUMMARY_FILE: &str = "summary.json";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const RESOLVED_CONFIG_FILE: &str = "config.resolved.toml";

/// Flat metric table; keys look like `front.final` or `mean.tau_4`.
pub type Metrics = BTreeMap<String, f64>;

/// Formats a coordinate for use inside a metric key.
pub fn key_num(v: f64) -> String {
    format!("{v}")
}

/// Shortest representation that parses back to the same value.
pub fn num(v: f64) -> String {
    format!("{v}")
}

/// Writes one CSV table.
pub fn write_csv<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// A CSV table read back with its header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn read(path: &Path) -> Result<Self> {
        let mut r = csv::Reader::from_path(path)?;
        let header = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|r| r.iter().map(str::to_string).collect()))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Table { header, rows })
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Config(format!("table has no column `{name}`")))
    }

    /// Parses a numeric column.
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let i = self.column_index(name)?;
        self.rows
            .iter()
            .map(|r| {
                r[i].parse::<f64>()
                    .map_err(|e| Error::Config(format!("column `{name}`: bad number {:?}: {e}", r[i])))
            })
            .collect()
    }
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let mut f = File::open(path)?;
    let mut h = Sha256::new();
    let mut buf = [0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf)?;
        if n == 0 {
            break;
        }
        h.update(&buf[..n]);
    }
    Ok(hex::encode(h.finalize()))
}

pub fn sha256_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mode: String,
    pub metrics: Metrics,
}

impl Summary {
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::write(dir.join(SUMMARY_FILE), serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn read(dir: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(dir.join(SUMMARY_FILE))?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub code: String,
    pub message: String,
}

/// Campaign record written into the manifest of UQ runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignRecord {
    pub parameters: Vec<RandomParameter>,
    /// Target to expression.
    pub bindings: BTreeMap<String, String>,
    pub samples: usize,
    pub degree: usize,
    pub basis_size: usize,
    pub truncated_mass: f64,
    /// `ok` or `failed`, one entry per sample in sample order.
    pub sample_status: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub mode: String,
    /// `ok` or `failed`.
    pub status: String,
    pub error: Option<ErrorRecord>,
    pub seed: u64,
    pub threads: usize,
    pub wall_time_s: f64,
    /// SHA-256 of the configuration file as given.
    pub config_sha256: String,
    /// SHA-256 of the resolved configuration echo.
    pub resolved_config_sha256: Option<String>,
    /// File name to SHA-256 of every artifact in the run directory.
    pub files: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub campaign: Option<CampaignRecord>,
}

impl Manifest {
    /// Hashes the listed files in `dir`.
    pub fn hash_files(dir: &Path, names: &[String]) -> Result<BTreeMap<String, String>> {
        names.iter().map(|n| Ok((n.clone(), sha256_file(&dir.join(n))?))).collect()
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::write(dir.join(MANIFEST_FILE), serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn read(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST_FILE);
        if !path.exists() {
            return Err(Error::MissingArtifacts { dir: dir.to_path_buf(), missing: vec![MANIFEST_FILE.into()] });
        }
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Files listed in the manifest that are absent or whose hash changed.
    pub fn verify(&self, dir: &Path) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for (name, hash) in &self.files {
            let p = dir.join(name);
            if !p.exists() || &sha256_file(&p)? != hash {
                bad.push(name.clone());
            }
        }
        Ok(bad)
    }
}

/// One entry of a tolerance file. Either `expected` with `tolerance`
/// (absolute unless `relative = true`), bounds `min` / `max`, or a strict
/// comparison with another metric via `above` / `below`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub key: String,
    #[serde(default)]
    pub expected: Option<f64>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub relative: bool,
    #[serde(default)]
    pub min: Option<f64>,
    #[serde(default)]
    pub max: Option<f64>,
    /// Key of a metric this one must strictly exceed.
    #[serde(default)]
    pub above: Option<String>,
    /// Key of a metric this one must stay strictly below.
    #[serde(default)]
    pub below: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceFile {
    #[serde(rename = "check")]
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub key: String,
    pub value: Option<f64>,
    pub pass: bool,
    pub detail: String,
}

impl ToleranceFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse { path: path.to_path_buf(), message: e.to_string() })?;
        let tol: ToleranceFile =
            toml::from_str(&text).map_err(|e| Error::Parse { path: path.to_path_buf(), message: e.to_string() })?;
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for c in &self.checks {
            let target = c.expected.is_some() || c.tolerance.is_some();
            let bounds = c.min.is_some() || c.max.is_some();
            let relation = c.above.is_some() || c.below.is_some();
            if [target, bounds, relation].iter().filter(|b| **b).count() != 1 {
                return Err(Error::Config(format!(
                    "check `{}`: give exactly one of expected/tolerance, min/max or above/below",
                    c.key
                )));
            }
            if target && !(c.expected.is_some() && c.tolerance.is_some_and(|t| t >= 0.0)) {
                return Err(Error::Config(format!("check `{}`: expected needs a non-negative tolerance", c.key)));
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, metrics: &Metrics) -> Vec<CheckOutcome> {
        self.checks
            .iter()
            .map(|c| {
                let Some(&v) = metrics.get(&c.key) else {
                    return CheckOutcome { key: c.key.clone(), value: None, pass: false, detail: "missing metric".into() };
                };
                if c.above.is_some() || c.below.is_some() {
                    let other = c.above.as_ref().or(c.below.as_ref()).unwrap();
                    let Some(&w) = metrics.get(other) else {
                        return CheckOutcome {
                            key: c.key.clone(),
                            value: Some(v),
                            pass: false,
                            detail: format!("missing metric {other}"),
                        };
                    };
                    let (pass, rel) = if c.above.is_some() { (v > w, ">") } else { (v < w, "<") };
                    return CheckOutcome {
                        key: c.key.clone(),
                        value: Some(v),
                        pass: pass && v.is_finite() && w.is_finite(),
                        detail: format!("{v} {rel} {w} ({other})"),
                    };
                }
                let (pass, detail) = match (c.expected, c.tolerance) {
                    (Some(e), Some(t)) => {
                        let err = if c.relative { (v - e).abs() / e.abs() } else { (v - e).abs() };
                        let kind = if c.relative { "rel" } else { "abs" };
                        (err <= t, format!("{v:.6} vs {e}, {kind} err {err:.3e} (tol {t:e})"))
                    }
                    _ => {
                        let lo = c.min.unwrap_or(f64::NEG_INFINITY);
                        let hi = c.max.unwrap_or(f64::INFINITY);
                        (v >= lo && v <= hi, format!("{v:e} in [{lo:e}, {hi:e}]"))
                    }
                };
                CheckOutcome { key: c.key.clone(), value: Some(v), pass: pass && v.is_finite(), detail }
            })
            .collect()
    }
}

/// Creates `dir` (and parents) if needed.
pub fn ensure_dir(dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    Ok(dir.to_path_buf())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-17, 4.0, 1e300] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn tolerance_checks() {
        let tol: ToleranceFile = toml::from_str(
            r#"
[[check]]
key = "a"
expected = 1.0
tolerance = 0.01
[[check]]
key = "b"
expected = 2.0
tolerance = 0.01
relative = true
[[check]]
key = "c"
min = 0.0
max = 1.0
[[check]]
key = "d"
max = 1.0
[[check]]
key = "a"
below = "b"
[[check]]
key = "c"
above = "a"
"#,
        )
        .unwrap();
        tol.validate().unwrap();
        let m: Metrics = [("a", 1.005), ("b", 2.03), ("c", 0.5)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let out = tol.evaluate(&m);
        assert_eq!(out.iter().map(|o| o.pass).collect::<Vec<_>>(), vec![true, false, true, false, true, false]);
        assert_eq!(out[3].detail, "missing metric");
    }

    #[test]
    fn malformed_check_rejected() {
        let tol: ToleranceFile = toml::from_str("[[check]]\nkey = \"a\"\nexpected = 1.0\n").unwrap();
        assert!(tol.validate().is_err());
        let tol: ToleranceFile = toml::from_str("[[check]]\nkey = \"a\"\n").unwrap();
        assert!(tol.validate().is_err());
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        write_csv(&p, &["x", "y"], (0..3).map(|i| vec![num(i as f64 * 0.1), num(-(i as f64))])).unwrap();
        let t = Table::read(&p).unwrap();
        assert_eq!(t.column("x").unwrap(), vec![0.0, 0.1, 0.2]);
        assert_eq!(t.column("y").unwrap(), vec![0.0, -1.0, -2.0]);
        assert!(t.column("z").is_err());
    }
}
