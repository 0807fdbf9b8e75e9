//! Sample moments and histograms of archived responses.

use serde::Serialize;

/// Population moments of a sample. Kurtosis is the plain fourth
/// standardized moment (3 for a normal distribution).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub std: f64,
    /// NaN when the sample has no spread.
    pub skewness: f64,
    /// NaN when the sample has no spread.
    pub kurtosis: f64,
}

impl Moments {
    pub fn from_samples(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let central = |p: i32| values.iter().map(|v| (v - mean).powi(p)).sum::<f64>() / n;
        let m2 = central(2);
        let (skewness, kurtosis) = if m2 > 0.0 {
            (central(3) / m2.powf(1.5), central(4) / (m2 * m2))
        } else {
            (f64::NAN, f64::NAN)
        };
        Moments { mean, std: m2.sqrt(), skewness, kurtosis }
    }
}

pub const DEFAULT_BINS: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    /// `counts.len() + 1` edges.
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    /// Equal-width bins over `[min, max]`, the last bin closed. A sample
    /// without spread lands in a single bin.
    pub fn new(values: &[f64], bins: usize) -> Self {
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if values.is_empty() {
            return Histogram { edges: vec![], counts: vec![] };
        }
        if !(hi > lo) || bins <= 1 {
            return Histogram { edges: vec![lo, hi], counts: vec![values.len()] };
        }
        let width = (hi - lo) / bins as f64;
        let edges = (0..=bins).map(|i| if i == bins { hi } else { lo + width * i as f64 }).collect();
        let mut counts = vec![0; bins];
        for &v in values {
            let b = (((v - lo) / width) as usize).min(bins - 1);
            counts[b] += 1;
        }
        Histogram { edges, counts }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sample() {
        let m = Moments::from_samples(&[2.0; 10]);
        assert_eq!(m.std, 0.0);
        assert!(m.skewness.is_nan());
        let h = Histogram::new(&[2.0; 10], 30);
        assert_eq!(h.counts, vec![10]);
    }

    #[test]
    fn known_moments() {
        let m = Moments::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.mean, 2.5);
        assert!((m.std - 1.25f64.sqrt()).abs() < 1e-15);
        assert!(m.skewness.abs() < 1e-15);
        // (2·1.5⁴ + 2·0.5⁴)/4 / 1.25² = 2.5625/1.5625
        assert!((m.kurtosis - 1.64).abs() < 1e-12);
        let m = Moments::from_samples(&[0.0, 0.0, 0.0, 1.0]);
        assert!(m.skewness > 1.0);
    }

    #[test]
    fn histogram_counts_everything() {
        let v: Vec<f64> = (0..100).map(|i| (i as f64).sqrt()).collect();
        let h = Histogram::new(&v, 7);
        assert_eq!(h.total(), 100);
        assert_eq!(h.edges.len(), 8);
        assert_eq!(*h.edges.last().unwrap(), 99f64.sqrt());
    }
}
