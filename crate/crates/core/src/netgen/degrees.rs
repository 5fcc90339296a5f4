use rand::Rng;
use serde::{Deserialize, Serialize};

use super::NetgenError;
use crate::seed::rng_from_seed;

/// Truncated power-law pmf `P(D = k) = k^-gamma / Z` on `[d_min, d_max]`.
#[derive(Debug, Clone)]
pub struct PowerLawPmf {
    d_min: u32,
    weights: Vec<f64>,
    cdf: Vec<f64>,
    normalizer: f64,
}

impl PowerLawPmf {
    pub fn new(gamma: f64, d_min: u32, d_max: u32) -> Result<Self, NetgenError> {
        if !(gamma > 2.0) || !gamma.is_finite() {
            return Err(NetgenError::InvalidParameter(format!("gamma must exceed 2, got {gamma}")));
        }
        if d_min == 0 || d_min > d_max {
            return Err(NetgenError::InvalidParameter(format!(
                "need 1 <= d_min <= d_max, got d_min = {d_min}, d_max = {d_max}"
            )));
        }
        let weights: Vec<f64> = (d_min..=d_max).map(|k| f64::from(k).powf(-gamma)).collect();
        let normalizer: f64 = weights.iter().sum();
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = weights
            .iter()
            .map(|w| {
                acc += w / normalizer;
                acc
            })
            .collect();
        // guard against round-off leaving the last bucket short of 1
        *cdf.last_mut().expect("support is non-empty") = 1.0;
        Ok(Self { d_min, weights, cdf, normalizer })
    }

    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn support(&self) -> std::ops::RangeInclusive<u32> {
        self.d_min..=self.d_min + self.weights.len() as u32 - 1
    }

    pub fn prob(&self, k: u32) -> f64 {
        if !self.support().contains(&k) {
            return 0.0;
        }
        self.weights[(k - self.d_min) as usize] / self.normalizer
    }

    /// Inverse-CDF draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.random();
        let idx = self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1);
        self.d_min + idx as u32
    }
}

/// Record of the single-vertex adjustment made to even out the degree sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityFix {
    pub vertex: usize,
    pub from: u32,
    pub to: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeSequence {
    pub degrees: Vec<u32>,
    pub gamma: f64,
    pub d_min: u32,
    pub d_max: u32,
    pub parity_fix: Option<ParityFix>,
}

impl DegreeSequence {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.degrees.iter().map(|&d| u64::from(d)).sum()
    }
}

/// Draws `n` i.i.d. degrees from the truncated power law.
///
/// When the sum comes out odd, one uniformly chosen vertex with degree below
/// `d_max` is incremented. If every vertex already sits at `d_max`, one
/// vertex above `d_min` is decremented instead; if neither move exists the
/// parameters admit no even sequence and an error is returned.
pub fn sample_power_law_degrees(
    n: usize,
    gamma: f64,
    d_min: u32,
    d_max: u32,
    seed: u64,
) -> Result<DegreeSequence, NetgenError> {
    let pmf = PowerLawPmf::new(gamma, d_min, d_max)?;
    let mut rng = rng_from_seed(seed);
    let mut degrees: Vec<u32> = (0..n).map(|_| pmf.sample(&mut rng)).collect();
    let sum: u64 = degrees.iter().map(|&d| u64::from(d)).sum();
    let mut parity_fix = None;
    if sum % 2 == 1 {
        let up: Vec<usize> = (0..n).filter(|&v| degrees[v] < d_max).collect();
        let (vertex, to) = if !up.is_empty() {
            let v = up[rng.random_range(0..up.len())];
            (v, degrees[v] + 1)
        } else {
            let down: Vec<usize> = (0..n).filter(|&v| degrees[v] > d_min).collect();
            if down.is_empty() {
                return Err(NetgenError::InvalidParameter(format!(
                    "{n} vertices of fixed odd degree {d_min} cannot have an even degree sum"
                )));
            }
            let v = down[rng.random_range(0..down.len())];
            (v, degrees[v] - 1)
        };
        parity_fix = Some(ParityFix { vertex, from: degrees[vertex], to });
        degrees[vertex] = to;
    }
    Ok(DegreeSequence { degrees, gamma, d_min, d_max, parity_fix })
}
