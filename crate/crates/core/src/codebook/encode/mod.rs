//! Interval-data to FOU encoders.
//!
//! Both encoders share the same data part: bad-data removal, box-and-whisker
//! outlier removal, tolerance-limit screening and reasonable-interval
//! screening. They differ in how the surviving intervals become an FOU.

mod hma;
mod ia;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal, StudentsT};
use statrs::statistics::{Data, OrderStatistics, Statistics};

use super::DataInterval;
use crate::error::{Error, Result};
use crate::fou::{DomainScale, Grid, It2Fou};

/// Fewest intervals an encoder accepts after preprocessing.
pub const MIN_SURVIVORS: usize = 10;

// Tolerance limits cover 95% of the population with 95% confidence.
const COVERAGE: f64 = 0.95;
const CONFIDENCE: f64 = 0.95;
// One-sided significance used by the shape tests.
const SIGNIFICANCE: f64 = 0.05;
const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncoderMethod {
    /// Interval Approach.
    Ia,
    /// Hao-Mendel Approach.
    Hma,
}

impl EncoderMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            EncoderMethod::Ia => "ia",
            EncoderMethod::Hma => "hma",
        }
    }
}

impl std::str::FromStr for EncoderMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ia" => Ok(EncoderMethod::Ia),
            "hma" => Ok(EncoderMethod::Hma),
            other => Err(format!("unknown encoder `{other}` (expected ia or hma)")),
        }
    }
}

/// Encodes one word's interval data into an FOU.
pub fn encode_word(intervals: &[DataInterval], method: EncoderMethod, scale: &DomainScale) -> Result<It2Fou> {
    let kept = preprocess_intervals(intervals, scale)?;
    if kept.len() < MIN_SURVIVORS {
        return Err(Error::TooFewIntervals {
            survived: kept.len(),
            required: MIN_SURVIVORS,
        });
    }
    let fou = match method {
        EncoderMethod::Ia => ia::encode(&kept, scale)?,
        EncoderMethod::Hma => hma::encode(&kept, scale)?,
    };
    fou.validate(&Grid::standard(*scale))
        .map_err(|e| Error::invalid_fou(format!("{} encoder output", method.as_str()), e))?;
    Ok(fou)
}

/// The shared data part. Returns the surviving intervals in input order.
pub fn preprocess_intervals(intervals: &[DataInterval], scale: &DomainScale) -> Result<Vec<DataInterval>> {
    let mut kept: Vec<DataInterval> = intervals
        .iter()
        .copied()
        .filter(|d| d.l.is_finite() && d.r.is_finite() && scale.contains(d.l) && scale.contains(d.r) && d.l <= d.r)
        .collect();
    if kept.is_empty() {
        return Err(Error::AllRejected("bad-data screening"));
    }

    // outliers: ends first, then lengths of the survivors
    kept = retain_by(kept, |s, d| within_whiskers(&s.lefts, d.l) && within_whiskers(&s.rights, d.r));
    kept = retain_by(kept, |s, d| within_whiskers(&s.lengths, d.r - d.l));
    if kept.is_empty() {
        return Err(Error::AllRejected("outlier screening"));
    }

    if kept.len() >= 2 {
        let k = tolerance_factor(kept.len());
        kept = retain_by(kept, |s, d| {
            within_tolerance(&s.lefts, d.l, k) && within_tolerance(&s.rights, d.r, k)
        });
        if kept.len() >= 2 {
            let k = tolerance_factor(kept.len());
            kept = retain_by(kept, |s, d| within_tolerance(&s.lengths, d.r - d.l, k));
        }
        if kept.is_empty() {
            return Err(Error::AllRejected("tolerance-limit screening"));
        }
    }

    let cols = Columns::of(&kept);
    let (m_l, s_l) = (mean(&cols.lefts), sd(&cols.lefts));
    let (m_r, s_r) = (mean(&cols.rights), sd(&cols.rights));
    let xi = gaussian_crossing(m_l, s_l, m_r, s_r);
    kept.retain(|d| 2.0 * m_l - xi <= d.l + SLACK && d.l < xi && xi < d.r && d.r <= 2.0 * m_r - xi + SLACK);
    if kept.is_empty() {
        return Err(Error::AllRejected("reasonable-interval screening"));
    }
    Ok(kept)
}

struct Columns {
    lefts: Vec<f64>,
    rights: Vec<f64>,
    lengths: Vec<f64>,
}

impl Columns {
    fn of(data: &[DataInterval]) -> Self {
        Self {
            lefts: data.iter().map(|d| d.l).collect(),
            rights: data.iter().map(|d| d.r).collect(),
            lengths: data.iter().map(|d| d.r - d.l).collect(),
        }
    }
}

fn retain_by(data: Vec<DataInterval>, keep: impl Fn(&Columns, &DataInterval) -> bool) -> Vec<DataInterval> {
    let cols = Columns::of(&data);
    data.into_iter().filter(|d| keep(&cols, d)).collect()
}

fn within_whiskers(sample: &[f64], v: f64) -> bool {
    let mut data = Data::new(sample.to_vec());
    let (q1, q3) = (data.lower_quartile(), data.upper_quartile());
    let iqr = q3 - q1;
    v >= q1 - 1.5 * iqr - SLACK && v <= q3 + 1.5 * iqr + SLACK
}

fn within_tolerance(sample: &[f64], v: f64, k: f64) -> bool {
    (v - mean(sample)).abs() <= k * sd(sample) + SLACK
}

pub(super) fn mean(sample: &[f64]) -> f64 {
    sample.iter().mean()
}

/// Sample standard deviation; zero for fewer than two values.
pub(super) fn sd(sample: &[f64]) -> f64 {
    if sample.len() < 2 {
        0.0
    } else {
        sample.iter().std_dev()
    }
}

/// Two-sided normal tolerance factor (Howe's approximation).
fn tolerance_factor(n: usize) -> f64 {
    let dof = (n - 1) as f64;
    let z = Normal::new(0.0, 1.0).expect("standard normal").inverse_cdf(0.5 * (1.0 + COVERAGE));
    let chi = ChiSquared::new(dof).expect("positive dof").inverse_cdf(1.0 - CONFIDENCE);
    z * (dof * (1.0 + 1.0 / n as f64) / chi).sqrt()
}

/// One-sided Student t quantile used by the shape tests.
pub(super) fn t_quantile(n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    StudentsT::new(0.0, 1.0, (n - 1) as f64)
        .expect("positive dof")
        .inverse_cdf(1.0 - SIGNIFICANCE)
}

/// Point between the two end-point means where their fitted normal
/// densities cross. Degenerate spreads fall back to the midpoint.
fn gaussian_crossing(m_l: f64, s_l: f64, m_r: f64, s_r: f64) -> f64 {
    let mid = 0.5 * (m_l + m_r);
    if s_l <= SLACK || s_r <= SLACK || (s_l - s_r).abs() <= SLACK {
        return mid;
    }
    let (v_l, v_r) = (s_l * s_l, s_r * s_r);
    let disc = (m_l - m_r).powi(2) + 2.0 * (v_l - v_r) * (s_l / s_r).ln();
    if disc < 0.0 {
        return mid;
    }
    let root = s_l * s_r * disc.sqrt();
    let base = m_r * v_l - m_l * v_r;
    [(base + root) / (v_l - v_r), (base - root) / (v_l - v_r)]
        .into_iter()
        .find(|x| (m_l..=m_r).contains(x))
        .unwrap_or(mid)
}
