//! Total-degree multivariate Legendre polynomials, orthonormal under the
//! uniform probability measure on `[-1, 1]^d`.

use crate::error::{Error, Result};

/// `√(2n+1) P_n(x)` for `n = 0..=n_max`, by the three-term recurrence.
pub fn legendre_orthonormal(n_max: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n_max + 1);
    p.push(1.0);
    if n_max >= 1 {
        p.push(x);
    }
    for k in 1..n_max {
        let next = ((2 * k + 1) as f64 * x * p[k] - k as f64 * p[k - 1]) / (k + 1) as f64;
        p.push(next);
    }
    for (n, v) in p.iter_mut().enumerate() {
        *v *= ((2 * n + 1) as f64).sqrt();
    }
    p
}

/// Multi-indices of total degree `<= degree`, graded by degree and, within a
/// degree, with earlier dimensions carrying the larger exponents first.
pub fn total_degree_indices(dims: usize, degree: usize) -> Vec<Vec<usize>> {
    fn fill(dims: usize, remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == dims - 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=remaining).rev() {
            prefix.push(k);
            fill(dims, remaining - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=degree {
        fill(dims, total, &mut Vec::with_capacity(dims), &mut out);
    }
    out
}

/// `C(n + k, k)`
pub fn basis_size(dims: usize, degree: usize) -> usize {
    (1..=dims).fold(1usize, |acc, i| acc * (degree + i) / i)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LegendreBasis {
    pub dims: usize,
    pub degree: usize,
    pub indices: Vec<Vec<usize>>,
    /// Support `(a, b)` of each input, mapped affinely onto `[-1, 1]`.
    pub supports: Vec<(f64, f64)>,
}

impl LegendreBasis {
    pub fn new(degree: usize, supports: Vec<(f64, f64)>) -> Result<Self> {
        let dims = supports.len();
        if dims == 0 {
            return Err(Error::validation("basis", "needs at least one input dimension"));
        }
        if let Some((a, b)) = supports.iter().find(|(a, b)| !(a < b)) {
            return Err(Error::validation("basis", format!("empty support ({a}, {b})")));
        }
        Ok(LegendreBasis { dims, degree, indices: total_degree_indices(dims, degree), supports })
    }

    /// Basis on `[-1, 1]^dims`.
    pub fn unit(dims: usize, degree: usize) -> Result<Self> {
        Self::new(degree, vec![(-1.0, 1.0); dims])
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn to_unit(&self, xi: &[f64]) -> Vec<f64> {
        xi.iter().zip(&self.supports).map(|(&x, &(a, b))| (2.0 * x - a - b) / (b - a)).collect()
    }

    /// All basis values at a point given in `[-1, 1]^dims` coordinates.
    pub fn eval_unit(&self, u: &[f64]) -> Vec<f64> {
        let tables: Vec<Vec<f64>> = u.iter().map(|&x| legendre_orthonormal(self.degree, x)).collect();
        self.indices
            .iter()
            .map(|idx| idx.iter().zip(&tables).map(|(&n, t)| t[n]).product())
            .collect()
    }
}

/// All basis values at a point in the original input coordinates.
pub fn eval_basis(basis: &LegendreBasis, xi: &[f64]) -> Vec<f64> {
    basis.eval_unit(&basis.to_unit(xi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(basis_size(1, 4), 5);
        assert_eq!(basis_size(2, 4), 15);
        assert_eq!(basis_size(3, 2), 10);
        for (d, n) in [(1, 4), (2, 4), (3, 3)] {
            assert_eq!(total_degree_indices(d, n).len(), basis_size(d, n));
        }
        assert_eq!(total_degree_indices(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn closed_forms() {
        let x: f64 = 0.3;
        let p = legendre_orthonormal(4, x);
        assert!((p[2] - 5f64.sqrt() * (3.0 * x * x - 1.0) / 2.0).abs() < 1e-15);
        assert!((p[3] - 7f64.sqrt() * (5.0 * x.powi(3) - 3.0 * x) / 2.0).abs() < 1e-15);
        assert!((p[4] - 3.0 * (35.0 * x.powi(4) - 30.0 * x * x + 3.0) / 8.0).abs() < 1e-14);
        assert!((legendre_orthonormal(2, 1.0)[2] - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn gauss_orthonormality() {
        // 5-point Gauss-Legendre is exact to degree 9
        let nodes = [0.0, 0.538_469_310_105_683_1, -0.538_469_310_105_683_1, 0.906_179_845_938_664, -0.906_179_845_938_664];
        let weights = [0.568_888_888_888_888_9, 0.478_628_670_499_366_5, 0.478_628_670_499_366_5, 0.236_926_885_056_189_1, 0.236_926_885_056_189_1];
        for i in 0..=4 {
            for j in 0..=4 {
                let s: f64 = nodes
                    .iter()
                    .zip(&weights)
                    .map(|(&x, &w)| 0.5 * w * legendre_orthonormal(4, x)[i] * legendre_orthonormal(4, x)[j])
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((s - expect).abs() < 1e-13, "{i} {j} {s}");
            }
        }
    }

    #[test]
    fn mapping_and_symmetry() {
        let basis = LegendreBasis::new(4, vec![(0.2, 0.7), (1.0, 1.25)]).unwrap();
        let centre = eval_basis(&basis, &[0.45, 1.125]);
        assert_eq!(centre[0], 1.0);
        for (idx, v) in basis.indices.iter().zip(&centre) {
            if idx.iter().any(|n| n % 2 == 1) {
                assert!(v.abs() < 1e-15);
            }
        }
        assert!(LegendreBasis::new(2, vec![(1.0, 1.0)]).is_err());
    }
}
