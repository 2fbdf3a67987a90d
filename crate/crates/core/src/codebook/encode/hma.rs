//! Hao-Mendel Approach: the common overlap of all intervals is the core,
//! the parts sticking out on each side become the legs. A leg that would
//! reach past the domain end turns the word into a shoulder.

use super::{mean, sd, t_quantile};
use crate::codebook::DataInterval;
use crate::error::{Error, Result};
use crate::fou::{DomainScale, It2Fou, Trapezoid, SHAPE_TOLERANCE};

// A right triangle over [0, x] has mean x / 3.
const LEG_SCALE: f64 = 3.0;

pub(super) fn encode(data: &[DataInterval], scale: &DomainScale) -> Result<It2Fou> {
    let core_l = data.iter().map(|d| d.l).fold(f64::NEG_INFINITY, f64::max);
    let core_r = data.iter().map(|d| d.r).fold(f64::INFINITY, f64::min);
    if core_l > core_r {
        return Err(Error::Degenerate("intervals have no common overlap".into()));
    }
    let left_lens: Vec<f64> = data.iter().map(|d| core_l - d.l).collect();
    let right_lens: Vec<f64> = data.iter().map(|d| d.r - core_r).collect();
    let (left_out, left_in) = leg_bounds(&left_lens);
    let (right_out, right_in) = leg_bounds(&right_lens);
    // a leg whose outer foot would leave the domain becomes a shoulder
    let left_shoulder = core_l - left_out <= scale.min + SHAPE_TOLERANCE;
    let right_shoulder = core_r + right_out >= scale.max - SHAPE_TOLERANCE;

    let (ua, la) = if left_shoulder {
        (scale.min, scale.min)
    } else {
        (scale.clamp(core_l - left_out), scale.clamp(core_l - left_in))
    };
    let (ud, ld) = if right_shoulder {
        (scale.max, scale.max)
    } else {
        (scale.clamp(core_r + right_out), scale.clamp(core_r + right_in))
    };
    let (b, c) = (if left_shoulder { scale.min } else { core_l }, if right_shoulder { scale.max } else { core_r });
    Ok(It2Fou::new(Trapezoid::normal(ua, b, c, ud), Trapezoid::normal(la, b, c, ld)))
}

/// Outer and inner leg widths from the confidence interval on the mean
/// sub-interval length.
fn leg_bounds(lengths: &[f64]) -> (f64, f64) {
    let m = mean(lengths);
    let delta = t_quantile(lengths.len()) * sd(lengths) / (lengths.len() as f64).sqrt();
    (LEG_SCALE * (m + delta), LEG_SCALE * (m - delta).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fou::{FouShape, Grid};

    #[test]
    fn interior_word_has_overlap_core() {
        let data: Vec<DataInterval> = (0..20)
            .map(|i| DataInterval {
                l: 2.0 + 0.05 * i as f64,
                r: 7.0 + 0.05 * i as f64,
            })
            .collect();
        let scale = DomainScale::default();
        let fou = encode(&data, &scale).unwrap();
        assert!((fou.umf.b - 2.95).abs() < 1e-12 && (fou.umf.c - 7.0).abs() < 1e-12);
        assert!(fou.umf.a <= fou.lmf.a && fou.lmf.d <= fou.umf.d);
        assert_eq!(fou.classify_shape(&scale), FouShape::Interior);
        fou.validate(&Grid::standard(scale)).unwrap();
    }

    #[test]
    fn pinned_right_end_is_right_shoulder() {
        let data: Vec<DataInterval> = (0..20)
            .map(|i| DataInterval {
                l: 7.0 + 0.05 * i as f64,
                r: 10.0,
            })
            .collect();
        let scale = DomainScale::default();
        let fou = encode(&data, &scale).unwrap();
        assert_eq!(fou.classify_shape(&scale), FouShape::RightShoulder);
    }

    #[test]
    fn leg_reaching_the_end_makes_a_shoulder() {
        let data: Vec<DataInterval> = (0..20)
            .map(|i| DataInterval {
                l: 0.025 * i as f64,
                r: 4.6 + 0.05 * i as f64,
            })
            .collect();
        let scale = DomainScale::default();
        let fou = encode(&data, &scale).unwrap();
        assert_eq!(fou.classify_shape(&scale), FouShape::LeftShoulder);
        assert!((fou.umf.c - 4.6).abs() < 1e-12);
    }

    #[test]
    fn constant_lengths_collapse_the_leg_band() {
        assert_eq!(leg_bounds(&[0.5; 10]), (1.5, 1.5));
    }
}
