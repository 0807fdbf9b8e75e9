//! Discrete least-squares projection onto the Legendre basis.
//!
//! With `M` sample points `ξ_m` and responses `S_k(ξ_m)` on a set of
//! channels `k` (snapshot times, or time and `y` pairs), the coefficients
//! solve `Â c_k = Ŝ_k` with `Â_ij = ⟨φ_i, φ_j⟩_M` and `Ŝ_kj = ⟨S_k, φ_j⟩_M`.
//! `Â` is assembled and factored once for all channels.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::uq::legendre::{eval_basis, LegendreBasis};

/// Gram matrices with a larger condition number are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// `⟨u, v⟩_M = (1/M) Σ u_m v_m`
pub fn discrete_inner_product(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { left: u.len(), right: v.len() });
    }
    if u.is_empty() {
        return Err(Error::Precondition("inner product of empty vectors".into()));
    }
    Ok(u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() / u.len() as f64)
}

/// Where a response was recorded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Channel {
    pub tau: f64,
    pub y: Option<f64>,
}

/// Sample points with their responses, one row per sample.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Archive {
    pub points: Vec<Vec<f64>>,
    pub responses: Vec<Vec<f64>>,
}

impl Archive {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// All sample responses on channel `k`.
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.responses.iter().map(|r| r[k]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    /// Cholesky factorization; ill-conditioned Gram matrices are an error.
    #[default]
    Cholesky,
    /// SVD pseudo-inverse, accepted at any conditioning.
    PseudoInverse,
}

#[derive(Debug, Clone)]
pub struct GpcSurrogate {
    pub basis: LegendreBasis,
    pub channels: Vec<Channel>,
    /// `coeffs[k][n]`: coefficient of basis function `n` on channel `k`.
    pub coeffs: Vec<Vec<f64>>,
    /// Ratio of extreme eigenvalues of the Gram matrix.
    pub condition: f64,
    pub method: FitMethod,
    pub archive: Archive,
}

/// Basis values at every sample point, one row per sample.
pub fn design_matrix(basis: &LegendreBasis, points: &[Vec<f64>]) -> DMatrix<f64> {
    let n = basis.len();
    let mut phi = DMatrix::zeros(points.len(), n);
    for (m, xi) in points.iter().enumerate() {
        for (j, v) in eval_basis(basis, xi).into_iter().enumerate() {
            phi[(m, j)] = v;
        }
    }
    phi
}

/// Largest over smallest eigenvalue of a symmetric matrix.
pub fn condition_number(gram: &DMatrix<f64>) -> f64 {
    let eig = SymmetricEigen::new(gram.clone()).eigenvalues;
    let max = eig.iter().cloned().fold(f64::MIN, f64::max);
    let min = eig.iter().cloned().fold(f64::MAX, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

pub fn fit_surrogate(archive: Archive, channels: Vec<Channel>, basis: LegendreBasis, method: FitMethod) -> Result<GpcSurrogate> {
    let m = archive.len();
    let n = basis.len();
    if m < n {
        return Err(Error::TooFewSamples { samples: m, basis: n });
    }
    let r = channels.len();
    for (i, (p, s)) in archive.points.iter().zip(&archive.responses).enumerate() {
        if p.len() != basis.dims {
            return Err(Error::LengthMismatch { left: p.len(), right: basis.dims });
        }
        if s.len() != r {
            return Err(Error::LengthMismatch { left: s.len(), right: r });
        }
        if let Some(k) = s.iter().position(|v| !v.is_finite()) {
            return Err(Error::Precondition(format!("response of sample {i} on channel {k} is not finite")));
        }
    }

    let phi = design_matrix(&basis, &archive.points);
    let scale = 1.0 / m as f64;
    let gram = phi.tr_mul(&phi) * scale;
    let responses = DMatrix::from_fn(m, r, |i, k| archive.responses[i][k]);
    let rhs = phi.tr_mul(&responses) * scale;
    let condition = condition_number(&gram);

    let solution = match method {
        FitMethod::Cholesky => {
            if !(condition <= MAX_CONDITION) {
                return Err(Error::IllConditioned { condition });
            }
            let chol = gram.cholesky().ok_or(Error::IllConditioned { condition })?;
            chol.solve(&rhs)
        }
        FitMethod::PseudoInverse => {
            let pinv = gram
                .pseudo_inverse(1e-14)
                .map_err(|e| Error::Precondition(format!("pseudo-inverse failed: {e}")))?;
            pinv * rhs
        }
    };
    let coeffs = (0..r).map(|k| solution.column(k).iter().copied().collect()).collect();
    Ok(GpcSurrogate { basis, channels, coeffs, condition, method, archive })
}

impl GpcSurrogate {
    /// `S_N(ξ) = Σ c_n φ_n(ξ)` on channel `k`.
    pub fn evaluate(&self, xi: &[f64], k: usize) -> Result<f64> {
        let c = self.coeffs.get(k).ok_or_else(|| {
            Error::OutOfRange(format!("channel {k} not in the fitted table of {}", self.coeffs.len()))
        })?;
        if xi.len() != self.basis.dims {
            return Err(Error::LengthMismatch { left: xi.len(), right: self.basis.dims });
        }
        Ok(eval_basis(&self.basis, xi).iter().zip(c).map(|(p, c)| p * c).sum())
    }

    /// Channel recorded at `tau` (and `y`), matched to within 1e-9.
    pub fn channel_index(&self, tau: f64, y: Option<f64>) -> Result<usize> {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9;
        self.channels
            .iter()
            .position(|c| {
                close(c.tau, tau)
                    && match (c.y, y) {
                        (None, None) => true,
                        (Some(a), Some(b)) => close(a, b),
                        _ => false,
                    }
            })
            .ok_or_else(|| Error::OutOfRange(format!("no fitted channel at tau={tau}, y={y:?}")))
    }

    pub fn evaluate_at(&self, xi: &[f64], tau: f64, y: Option<f64>) -> Result<f64> {
        self.evaluate(xi, self.channel_index(tau, y)?)
    }

    /// `c_0`
    pub fn mean(&self, k: usize) -> f64 {
        self.coeffs[k][0]
    }

    /// `Σ_{n≥1} c_n²`
    pub fn variance(&self, k: usize) -> f64 {
        self.coeffs[k][1..].iter().map(|c| c * c).sum()
    }

    pub fn std(&self, k: usize) -> f64 {
        self.variance(k).sqrt()
    }
}
