//! Classification of median extinction time against system size.
//!
//! Two least-squares fits are compared on `log τ`: the linear law
//! `τ ≈ a n` (a line through the origin) and the exponential law
//! `log τ ≈ a n + b`. A model wins if its residual sum of squares is at
//! most half the other's. Censored runs enter the median at their cap, so
//! if at least half the runs at the largest size are censored the result
//! is forced to exponential-ish.

use serde::{Deserialize, Serialize};

use super::{median, ObservablesError};
use crate::dynamics::Outcome;

pub const MIN_SIZES: usize = 3;
pub const MIN_SAMPLES: usize = 20;
pub const RESIDUAL_RATIO: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "linear-ish")]
    LinearIsh,
    #[serde(rename = "exponential-ish")]
    ExponentialIsh,
    #[serde(rename = "indeterminate")]
    Indeterminate,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::LinearIsh => "linear-ish",
            Self::ExponentialIsh => "exponential-ish",
            Self::Indeterminate => "indeterminate",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcomes of all replicates at one size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeSamples {
    pub n: usize,
    pub outcomes: Vec<Outcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub samples: usize,
    pub censored: usize,
    pub censored_frac: f64,
    pub median_tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub a: f64,
    pub rss_log: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentialFit {
    pub a: f64,
    pub b: f64,
    pub rss_log: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub classification: Classification,
    pub sizes: Vec<SizeSummary>,
    pub linear: LinearFit,
    pub exponential: ExponentialFit,
    /// At least half the runs at the largest size were censored.
    pub censoring_forced: bool,
}

fn summarize(s: &SizeSamples) -> Result<SizeSummary, ObservablesError> {
    let times: Vec<f64> = s.outcomes.iter().map(Outcome::time).collect();
    let median_tau = median(&times).ok_or_else(|| ObservablesError::InsufficientData(format!("no samples at n = {}", s.n)))?;
    if !(median_tau > 0.0 && median_tau.is_finite()) {
        return Err(ObservablesError::InvalidParameter(format!("median time at n = {} is {median_tau}", s.n)));
    }
    let censored = s.outcomes.iter().filter(|o| o.is_censored()).count();
    Ok(SizeSummary {
        n: s.n,
        samples: s.outcomes.len(),
        censored,
        censored_frac: censored as f64 / s.outcomes.len() as f64,
        median_tau,
    })
}

pub fn fit_scaling(table: &[SizeSamples]) -> Result<ScalingReport, ObservablesError> {
    let mut table: Vec<&SizeSamples> = table.iter().collect();
    table.sort_by_key(|s| s.n);
    if table.windows(2).any(|w| w[0].n == w[1].n) {
        return Err(ObservablesError::InvalidParameter("sizes must be distinct".into()));
    }
    if table.len() < MIN_SIZES {
        return Err(ObservablesError::InsufficientData(format!("{} sizes, need {MIN_SIZES}", table.len())));
    }
    if let Some(s) = table.iter().find(|s| s.outcomes.len() < MIN_SAMPLES || s.n == 0) {
        return Err(ObservablesError::InsufficientData(format!(
            "{} samples at n = {}, need {MIN_SAMPLES} at a positive size",
            s.outcomes.len(),
            s.n
        )));
    }
    let sizes = table.iter().map(|s| summarize(s)).collect::<Result<Vec<_>, _>>()?;
    let x: Vec<f64> = sizes.iter().map(|s| s.n as f64).collect();
    let tau: Vec<f64> = sizes.iter().map(|s| s.median_tau).collect();
    let y: Vec<f64> = tau.iter().map(|t| t.ln()).collect();

    let a_lin = x.iter().zip(&tau).map(|(x, t)| x * t).sum::<f64>() / x.iter().map(|x| x * x).sum::<f64>();
    let rss_lin: f64 = x.iter().zip(&y).map(|(x, y)| (y - (a_lin * x).ln()).powi(2)).sum();

    let k = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / k, y.iter().sum::<f64>() / k);
    let sxx: f64 = x.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(&y).map(|(x, y)| (x - mx) * (y - my)).sum();
    let a_exp = sxy / sxx;
    let b_exp = my - a_exp * mx;
    let rss_exp: f64 = x.iter().zip(&y).map(|(x, y)| (y - (a_exp * x + b_exp)).powi(2)).sum();

    let top = sizes.last().expect("at least three sizes");
    let censoring_forced = 2 * top.censored >= top.samples;
    let classification = if censoring_forced || RESIDUAL_RATIO * rss_exp < rss_lin {
        Classification::ExponentialIsh
    } else if RESIDUAL_RATIO * rss_lin < rss_exp {
        Classification::LinearIsh
    } else {
        Classification::Indeterminate
    };
    Ok(ScalingReport {
        classification,
        sizes,
        linear: LinearFit { a: a_lin, rss_log: rss_lin },
        exponential: ExponentialFit { a: a_exp, b: b_exp, rss_log: rss_exp },
        censoring_forced,
    })
}
