//! Plot-ready tables derived from a finished run directory.
//!
//! Output goes to `<run-dir>/plot/`:
//!
//! - 1D runs: `band.csv` (front and mush band in physical coordinates next
//!   to the boundary `L`); `profiles.csv` and `enthalpy.csv` with one column
//!   per snapshot time when fields were kept, else the final profile.
//! - 2D runs: `front2d.csv` (a `τ × y` matrix of the physical front) and one
//!   `field2d_step<k>.csv` matrix (`y` rows, `z` columns) per stored snapshot.
//! - UQ runs: one `hist_<k>.csv` per response channel with bin centres and
//!   densities, indexed by `histograms.csv`, and `band.csv` with mean ± σ,
//!   skewness and kurtosis per channel.
//! - Audits: `refinement_log.csv` with base-10 logarithms.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::output::{num, write_csv, Manifest, Table};

pub const PLOT_DIR: &str = "plot";

fn require(dir: &Path, manifest: &Manifest, names: &[&str]) -> Result<()> {
    let missing: Vec<String> = names
        .iter()
        .filter(|n| !manifest.files.contains_key(**n) || !dir.join(n).exists())
        .map(|n| n.to_string())
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::MissingArtifacts { dir: dir.to_path_buf(), missing })
    }
}

/// Writes the plot tables for the run in `dir` and returns their paths.
pub fn plotdata(dir: &Path) -> Result<Vec<PathBuf>> {
    let manifest = Manifest::read(dir)?;
    if manifest.status != "ok" {
        return Err(Error::Precondition(format!("run in {} did not finish (status {})", dir.display(), manifest.status)));
    }
    let changed = manifest.verify(dir)?;
    if !changed.is_empty() {
        return Err(Error::MissingArtifacts { dir: dir.to_path_buf(), missing: changed });
    }
    let out = dir.join(PLOT_DIR);
    std::fs::create_dir_all(&out)?;
    match manifest.mode.as_str() {
        "simulate1d" | "oracle" => one_dimensional(dir, &manifest, &out),
        "simulate2d" => two_dimensional(dir, &manifest, &out),
        "uq1d" | "uq2d" => histograms(dir, &manifest, &out),
        "audit" => refinement(dir, &manifest, &out),
        m => Err(Error::Config(format!("unknown mode `{m}` in manifest"))),
    }
}

fn one_dimensional(dir: &Path, manifest: &Manifest, out: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if manifest.files.contains_key("mush.csv") {
        let t = Table::read(&dir.join("mush.csv"))?;
        let (tau, l) = (t.column("tau")?, t.column("L")?);
        let (a, b, c) = (t.column("solid_edge")?, t.column("mid")?, t.column("liquid_edge")?);
        let p = out.join("band.csv");
        write_csv(
            &p,
            &["tau", "L", "solid_edge", "mid", "liquid_edge"],
            (0..tau.len()).map(|k| [tau[k], l[k], a[k] * l[k], b[k] * l[k], c[k] * l[k]].map(num)),
        )?;
        written.push(p);
    }
    if manifest.files.contains_key("field.csv") {
        let t = Table::read(&dir.join("field.csv"))?;
        written.extend(wide_profiles(&t, out)?);
    } else if manifest.files.contains_key("final_field.csv") {
        let t = Table::read(&dir.join("final_field.csv"))?;
        let (z, x, phi, theta) = (t.column("z")?, t.column("x")?, t.column("phi")?, t.column("theta")?);
        let p = out.join("profiles.csv");
        write_csv(&p, &["z", "x", "theta", "phi"], (0..z.len()).map(|k| [z[k], x[k], theta[k], phi[k]].map(num)))?;
        written.push(p);
    } else if written.is_empty() {
        require(dir, manifest, &["mush.csv"])?;
    }
    Ok(written)
}

/// `profiles.csv` (temperature) and `enthalpy.csv`: one row per reference
/// node `z`, one column per snapshot time.
fn wide_profiles(t: &Table, out: &Path) -> Result<Vec<PathBuf>> {
    let groups = group_by(t, "step")?;
    let (tau, z) = (t.column("tau")?, t.column("z")?);
    let Some((_, first)) = groups.first() else {
        return Ok(Vec::new());
    };
    let mut header = vec!["z".to_string()];
    header.extend(groups.iter().map(|(_, rows)| format!("tau={}", num(tau[rows[0]]))));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut written = Vec::new();
    for (name, column) in [("profiles.csv", "theta"), ("enthalpy.csv", "phi")] {
        let v = t.column(column)?;
        let p = out.join(name);
        write_csv(
            &p,
            &header,
            first.iter().enumerate().map(|(i, &r0)| {
                let mut row = vec![num(z[r0])];
                row.extend(groups.iter().map(|(_, rows)| num(v[rows[i]])));
                row
            }),
        )?;
        written.push(p);
    }
    Ok(written)
}

/// Groups rows by the exact text of `key`, keeping first-seen order.
fn group_by(t: &Table, key: &str) -> Result<Vec<(String, Vec<usize>)>> {
    let i = t.column_index(key)?;
    let mut order: Vec<(String, Vec<usize>)> = Vec::new();
    let mut pos: BTreeMap<String, usize> = BTreeMap::new();
    for (r, row) in t.rows.iter().enumerate() {
        let k = row[i].clone();
        let slot = *pos.entry(k.clone()).or_insert_with(|| {
            order.push((k, Vec::new()));
            order.len() - 1
        });
        order[slot].1.push(r);
    }
    Ok(order)
}

fn two_dimensional(dir: &Path, manifest: &Manifest, out: &Path) -> Result<Vec<PathBuf>> {
    require(dir, manifest, &["interface2d.csv"])?;
    let mut written = Vec::new();
    let t = Table::read(&dir.join("interface2d.csv"))?;
    let groups = group_by(&t, "tau")?;
    let ys = t.column("y")?;
    let s = t.column("s_phys")?;
    let mut header = vec!["tau".to_string()];
    if let Some((_, rows)) = groups.first() {
        header.extend(rows.iter().map(|&r| format!("y={}", num(ys[r]))));
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let p = out.join("front2d.csv");
    write_csv(
        &p,
        &header,
        groups.iter().map(|(tau, rows)| {
            let mut row = vec![tau.clone()];
            row.extend(rows.iter().map(|&r| num(s[r])));
            row
        }),
    )?;
    written.push(p);

    if manifest.files.contains_key("field2d.csv") {
        let f = Table::read(&dir.join("field2d.csv"))?;
        let (yi, zi, pi) = (f.column_index("y")?, f.column_index("z")?, f.column_index("phi")?);
        for (step, rows) in group_by(&f, "step")? {
            let mut matrix: Vec<(String, Vec<String>)> = Vec::new();
            let mut zs: Vec<String> = Vec::new();
            for &r in &rows {
                let row = &f.rows[r];
                if matrix.last().is_none_or(|(y, _)| *y != row[yi]) {
                    matrix.push((row[yi].clone(), Vec::new()));
                }
                if matrix.len() == 1 {
                    zs.push(format!("z={}", row[zi]));
                }
                matrix.last_mut().unwrap().1.push(row[pi].clone());
            }
            let mut header = vec!["y".to_string()];
            header.extend(zs);
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let p = out.join(format!("field2d_step{step}.csv"));
            write_csv(
                &p,
                &header,
                matrix.into_iter().map(|(y, vals)| std::iter::once(y).chain(vals).collect::<Vec<_>>()),
            )?;
            written.push(p);
        }
    }
    Ok(written)
}

fn histograms(dir: &Path, manifest: &Manifest, out: &Path) -> Result<Vec<PathBuf>> {
    require(dir, manifest, &["histogram.csv"])?;
    let t = Table::read(&dir.join("histogram.csv"))?;
    let (ti, yi) = (t.column_index("tau")?, t.column_index("y")?);
    let (lo, hi, count) = (t.column("lo")?, t.column("hi")?, t.column("count")?);
    let mut keys: Vec<(String, String)> = Vec::new();
    let mut rows_of: Vec<Vec<usize>> = Vec::new();
    for (r, row) in t.rows.iter().enumerate() {
        let key = (row[ti].clone(), row[yi].clone());
        if keys.last() != Some(&key) {
            keys.push(key);
            rows_of.push(Vec::new());
        }
        rows_of.last_mut().unwrap().push(r);
    }
    let mut written = Vec::new();
    for (k, rows) in rows_of.iter().enumerate() {
        let total: f64 = rows.iter().map(|&r| count[r]).sum();
        let p = out.join(format!("hist_{k}.csv"));
        write_csv(
            &p,
            &["center", "width", "count", "density"],
            rows.iter().map(|&r| {
                let w = hi[r] - lo[r];
                let density = if w > 0.0 && total > 0.0 { count[r] / (total * w) } else { 0.0 };
                [0.5 * (lo[r] + hi[r]), w, count[r], density].map(num)
            }),
        )?;
        written.push(p);
    }
    let p = out.join("histograms.csv");
    write_csv(
        &p,
        &["file", "tau", "y"],
        keys.iter().enumerate().map(|(k, (tau, y))| vec![format!("hist_{k}.csv"), tau.clone(), y.clone()]),
    )?;
    written.push(p);

    if manifest.files.contains_key("statistics.csv") {
        let st = Table::read(&dir.join("statistics.csv"))?;
        let (ti, yi) = (st.column_index("tau")?, st.column_index("y")?);
        let (mean, std) = (st.column("mean")?, st.column("std")?);
        let (skew, kurt) = (st.column("skewness")?, st.column("kurtosis")?);
        let p = out.join("band.csv");
        write_csv(
            &p,
            &["tau", "y", "mean", "mean_minus_std", "mean_plus_std", "skewness", "kurtosis"],
            st.rows.iter().enumerate().map(|(k, row)| {
                vec![
                    row[ti].clone(),
                    row[yi].clone(),
                    num(mean[k]),
                    num(mean[k] - std[k]),
                    num(mean[k] + std[k]),
                    num(skew[k]),
                    num(kurt[k]),
                ]
            }),
        )?;
        written.push(p);
    }
    Ok(written)
}

fn refinement(dir: &Path, manifest: &Manifest, out: &Path) -> Result<Vec<PathBuf>> {
    require(dir, manifest, &["refinement.csv"])?;
    let t = Table::read(&dir.join("refinement.csv"))?;
    let (h, e) = (t.column("dz")?, t.column("cumulative_residual")?);
    let p = out.join("refinement_log.csv");
    write_csv(&p, &["log10_dz", "log10_residual"], h.iter().zip(&e).map(|(h, e)| [h.log10(), e.log10()].map(num)))?;
    Ok(vec![p])
}
