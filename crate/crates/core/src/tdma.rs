//! Thomas algorithm for tridiagonal systems.

use crate::error::{Error, Result};

/// Smallest pivot magnitude accepted during elimination.
pub const MIN_PIVOT: f64 = 1e-14;

/// Reusable scratch space so repeated solves of the same size do not allocate.
#[derive(Debug, Clone, Default)]
pub struct Tdma {
    c_prime: Vec<f64>,
}

impl Tdma {
    pub fn new() -> Self {
        Self::default()
    }

    /// Solves `A x = rhs` in place, where row `i` of `A` is
    /// `lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1]`.
    /// `lower[0]` and `upper[n-1]` are ignored.
    pub fn solve(&mut self, lower: &[f64], diag: &[f64], upper: &[f64], rhs: &mut [f64]) -> Result<()> {
        let n = diag.len();
        assert!(lower.len() == n && upper.len() == n && rhs.len() == n, "tdma: band length mismatch");
        if n == 0 {
            return Ok(());
        }
        self.c_prime.resize(n, 0.0);
        let cp = &mut self.c_prime;

        let mut pivot = diag[0];
        check(pivot, 0)?;
        let mut inv = 1.0 / pivot;
        cp[0] = upper[0] * inv;
        rhs[0] *= inv;
        for i in 1..n {
            pivot = diag[i] - lower[i] * cp[i - 1];
            check(pivot, i)?;
            inv = 1.0 / pivot;
            cp[i] = upper[i] * inv;
            rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) * inv;
        }
        for i in (0..n - 1).rev() {
            rhs[i] -= cp[i] * rhs[i + 1];
        }
        Ok(())
    }
}

#[inline]
fn check(pivot: f64, row: usize) -> Result<()> {
    if pivot.abs() < MIN_PIVOT || !pivot.is_finite() {
        Err(Error::SingularSystem { row, pivot })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn multiply(lower: &[f64], diag: &[f64], upper: &[f64], x: &[f64]) -> Vec<f64> {
        let n = x.len();
        (0..n)
            .map(|i| {
                let mut v = diag[i] * x[i];
                if i > 0 {
                    v += lower[i] * x[i - 1];
                }
                if i + 1 < n {
                    v += upper[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    #[test]
    fn small_system() {
        // [2 1 0; 1 3 1; 0 1 2] x = [3 5 3] -> x = [1 1 1]
        let mut rhs = vec![3.0, 5.0, 3.0];
        Tdma::new()
            .solve(&[0.0, 1.0, 1.0], &[2.0, 3.0, 2.0], &[1.0, 1.0, 0.0], &mut rhs)
            .unwrap();
        for v in rhs {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn singular_pivot_is_reported() {
        let mut rhs = vec![1.0, 1.0];
        let err = Tdma::new()
            .solve(&[0.0, 1.0], &[1.0, 1.0], &[1.0, 0.0], &mut rhs)
            .unwrap_err();
        assert!(matches!(err, Error::SingularSystem { row: 1, .. }));
    }

    proptest! {
        #[test]
        fn diagonally_dominant_residual(
            n in 1usize..40,
            seed in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0), 40),
        ) {
            let lower: Vec<f64> = (0..n).map(|i| seed[i].0).collect();
            let upper: Vec<f64> = (0..n).map(|i| seed[i].1).collect();
            let diag: Vec<f64> = (0..n).map(|i| 2.5 + seed[i].2).collect();
            let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
            let mut rhs = multiply(&lower, &diag, &upper, &x);
            Tdma::new().solve(&lower, &diag, &upper, &mut rhs).unwrap();
            for (a, b) in rhs.iter().zip(&x) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
