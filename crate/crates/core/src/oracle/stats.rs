use std::collections::HashMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::{EnumerationResult, OracleError};

/// Significance level of every uniformity test.
pub const SIGNIFICANCE: f64 = 0.001;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquareReport {
    pub statistic: f64,
    pub degrees: usize,
    /// The `1 - SIGNIFICANCE` quantile of chi-square with `degrees` degrees.
    pub critical: f64,
    pub pass: bool,
}

/// Upper quantile of the chi-square law, by numerical inversion of its CDF.
pub fn chi_square_critical(degrees: usize, significance: f64) -> f64 {
    if degrees == 0 {
        return 0.0;
    }
    ChiSquared::new(degrees as f64)
        .expect("positive degrees")
        .inverse_cdf(1.0 - significance)
}

/// Pearson test of `counts` against equal expected frequencies.
pub fn chi_square_equal(counts: &[u64]) -> ChiSquareReport {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let statistic: f64 = counts
        .iter()
        .map(|&o| (o as f64 - expected).powi(2) / expected)
        .sum();
    let degrees = counts.len().saturating_sub(1);
    let critical = chi_square_critical(degrees, SIGNIFICANCE);
    let pass = if degrees == 0 {
        statistic == 0.0
    } else {
        statistic < critical
    };
    ChiSquareReport {
        statistic,
        degrees,
        critical,
        pass,
    }
}

/// Tests observed encodings against the uniform law on an enumerated class.
/// Classes never observed count as zero.
pub fn chi_square_uniformity(
    observed: &HashMap<Vec<u8>, u64>,
    universe: &EnumerationResult,
) -> Result<ChiSquareReport, OracleError> {
    let index: HashMap<&[u8], usize> = universe
        .items
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();
    let mut counts = vec![0u64; universe.cardinality()];
    for (encoding, &c) in observed {
        match index.get(encoding.as_slice()) {
            Some(&i) => counts[i] += c,
            None => return Err(OracleError::ForeignEncoding(encoding.clone())),
        }
    }
    let total: u64 = counts.iter().sum();
    let needed = 20 * counts.len() as u64;
    if total < needed {
        return Err(OracleError::TooFewSamples { total, needed });
    }
    Ok(chi_square_equal(&counts))
}

/// Mean and spread of one sample series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub count: usize,
    pub mean: f64,
    /// Unbiased (n - 1) sample variance; zero for a single value.
    pub variance: f64,
    /// Standard error of the mean.
    pub std_error: f64,
}

impl Moments {
    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        // Welford
        let mut count = 0usize;
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for x in values {
            count += 1;
            let delta = x - mean;
            mean += delta / count as f64;
            m2 += delta * (x - mean);
        }
        if count == 0 {
            return None;
        }
        let variance = if count > 1 {
            m2 / (count - 1) as f64
        } else {
            0.0
        };
        Some(Moments {
            count,
            mean,
            variance,
            std_error: (variance / count as f64).sqrt(),
        })
    }

    /// Whether `target` lies within `sigmas` standard errors of the mean.
    pub fn within(&self, target: f64, sigmas: f64) -> bool {
        (self.mean - target).abs() <= sigmas * self.std_error
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleMoments {
    pub size: Moments,
    pub black: Moments,
    pub free: Moments,
}

/// Moments of `(n, k, f)` triples.
pub fn empirical_moments(samples: &[(usize, usize, usize)]) -> Option<SampleMoments> {
    Some(SampleMoments {
        size: Moments::from_values(samples.iter().map(|s| s.0 as f64))?,
        black: Moments::from_values(samples.iter().map(|s| s.1 as f64))?,
        free: Moments::from_values(samples.iter().map(|s| s.2 as f64))?,
    })
}
