//! Interval Approach: each surviving interval becomes a uniformly
//! distributed type-1 MF of the classified shape, and the FOU bounds the
//! admissible MFs.

use std::f64::consts::SQRT_2;

use super::{mean, sd, t_quantile, SLACK};
use crate::codebook::DataInterval;
use crate::error::{Error, Result};
use crate::fou::{DomainScale, FouShape, It2Fou, Trapezoid};

const SQRT_6: f64 = 2.449_489_742_783_178;

pub(super) fn encode(data: &[DataInterval], scale: &DomainScale) -> Result<It2Fou> {
    let shape = classify(data, scale)?;
    let mfs: Vec<(f64, f64, f64)> = data
        .iter()
        .map(|d| map_interval(d, shape))
        .filter(|&(a, _, b)| a >= scale.min - SLACK && b <= scale.max + SLACK)
        .map(|(a, p, b)| (scale.clamp(a), p, scale.clamp(b)))
        .collect();
    if mfs.is_empty() {
        return Err(Error::AllRejected("admissible-region screening"));
    }
    match shape {
        FouShape::Interior => interior_fou(&mfs),
        FouShape::LeftShoulder => Ok(left_shoulder_fou(&mfs, scale)),
        FouShape::RightShoulder => Ok(right_shoulder_fou(&mfs, scale)),
    }
}

fn classify(data: &[DataInterval], scale: &DomainScale) -> Result<FouShape> {
    if data.iter().all(|d| d.l <= scale.min + SLACK) {
        return Ok(FouShape::LeftShoulder);
    }
    if data.iter().all(|d| d.r >= scale.max - SLACK) {
        return Ok(FouShape::RightShoulder);
    }
    let w = scale.width();
    let k1 = (1.0 + SQRT_2).powi(2);
    let k2 = (SQRT_2 - 1.0).powi(2);
    let d1: Vec<f64> = data
        .iter()
        .map(|d| k1 * (d.l - scale.min) - (d.r - scale.min))
        .collect();
    let d2: Vec<f64> = data
        .iter()
        .map(|d| 2.0 * (SQRT_2 - 1.0) * w + k2 * (d.l - scale.min) - (d.r - scale.min))
        .collect();
    let t = t_quantile(data.len());
    let root_m = (data.len() as f64).sqrt();
    let c1 = mean(&d1) - t * sd(&d1) / root_m;
    let c2 = mean(&d2) - t * sd(&d2) / root_m;
    match (c1 >= 0.0, c2 >= 0.0) {
        (true, true) => Ok(FouShape::Interior),
        (false, true) => Ok(FouShape::LeftShoulder),
        (true, false) => Ok(FouShape::RightShoulder),
        (false, false) => Err(Error::Degenerate(
            "intervals fit neither an interior nor a shoulder shape".into(),
        )),
    }
}

/// Left foot, apex (or shoulder break) and right foot of the MF whose mean
/// and spread match the interval.
fn map_interval(d: &DataInterval, shape: FouShape) -> (f64, f64, f64) {
    let m = 0.5 * (d.l + d.r);
    let len = d.r - d.l;
    match shape {
        FouShape::Interior => (m - SQRT_2 * len / 2.0, m, m + SQRT_2 * len / 2.0),
        FouShape::LeftShoulder => (m - len / SQRT_6, m, m + SQRT_6 * len / 3.0),
        FouShape::RightShoulder => (m - SQRT_6 * len / 3.0, m, m + len / SQRT_6),
    }
}

fn interior_fou(mfs: &[(f64, f64, f64)]) -> Result<It2Fou> {
    let min = |f: fn(&(f64, f64, f64)) -> f64| mfs.iter().map(f).fold(f64::INFINITY, f64::min);
    let max = |f: fn(&(f64, f64, f64)) -> f64| mfs.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
    let umf = Trapezoid::normal(min(|t| t.0), min(|t| t.1), max(|t| t.1), max(|t| t.2));

    let a_star = max(|t| t.0);
    let b_star = min(|t| t.2);
    if a_star >= b_star {
        return Err(Error::Degenerate("embedded MFs have no common support".into()));
    }
    // shallowest rising edge starting at a*, shallowest falling edge ending at b*
    let s1 = mfs
        .iter()
        .filter(|t| t.0 == a_star)
        .map(|t| t.1 - t.0)
        .fold(0.0, f64::max);
    let s2 = mfs
        .iter()
        .filter(|t| t.2 == b_star)
        .map(|t| t.2 - t.1)
        .fold(0.0, f64::max);
    let (x, y) = if s1 + s2 <= 0.0 {
        (0.5 * (a_star + b_star), 1.0)
    } else {
        let x = (b_star * s1 + a_star * s2) / (s1 + s2);
        let y = if s1 > 0.0 { (x - a_star) / s1 } else { 1.0 };
        (x, y.min(1.0))
    };
    Ok(It2Fou::new(umf, Trapezoid::new(a_star, x, x, b_star, y)))
}

fn left_shoulder_fou(mfs: &[(f64, f64, f64)], scale: &DomainScale) -> It2Fou {
    let (mut lo_a, mut hi_a, mut lo_b, mut hi_b) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(a, _, b) in mfs {
        lo_a = lo_a.min(a);
        hi_a = hi_a.max(a);
        lo_b = lo_b.min(b);
        hi_b = hi_b.max(b);
    }
    It2Fou::new(
        Trapezoid::normal(scale.min, scale.min, hi_a, hi_b),
        Trapezoid::normal(scale.min, scale.min, lo_a, lo_b),
    )
}

fn right_shoulder_fou(mfs: &[(f64, f64, f64)], scale: &DomainScale) -> It2Fou {
    let (mut lo_a, mut hi_a, mut lo_b, mut hi_b) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(a, _, b) in mfs {
        lo_a = lo_a.min(a);
        hi_a = hi_a.max(a);
        lo_b = lo_b.min(b);
        hi_b = hi_b.max(b);
    }
    It2Fou::new(
        Trapezoid::normal(lo_a, lo_b, scale.max, scale.max),
        Trapezoid::normal(hi_a, hi_b, scale.max, scale.max),
    )
}
