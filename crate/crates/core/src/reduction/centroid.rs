use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fou::{Grid, It2Fou};

/// End points of the centroid of an IT2 FS.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentroidInterval {
    pub c_l: f64,
    pub c_r: f64,
}

impl CentroidInterval {
    /// Midpoint of the interval, used as the crisp output.
    pub fn mean(&self) -> f64 {
        0.5 * (self.c_l + self.c_r)
    }
}

/// Centroid of `fou` on `grid` via the Enhanced Karnik-Mendel iterations.
pub fn centroid_ekm(fou: &It2Fou, grid: &Grid) -> Result<CentroidInterval> {
    let s = fou.sample(grid);
    let (c_l, c_r) = ekm_bounds(grid.points(), &s.lower, &s.upper)?;
    Ok(CentroidInterval { c_l, c_r })
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// Minimum and maximum of `sum(x * w) / sum(w)` over all `w[i]` in
/// `[lower[i], upper[i]]`, for ascending `x`.
pub fn ekm_bounds(x: &[f64], lower: &[f64], upper: &[f64]) -> Result<(f64, f64)> {
    if x.len() != lower.len() || x.len() != upper.len() {
        return Err(Error::LengthMismatch {
            what: "centroid samples",
            left: x.len(),
            right: lower.len().min(upper.len()),
        });
    }
    if upper.iter().sum::<f64>() <= 0.0 {
        return Err(Error::Degenerate("FOU has zero area under its UMF".into()));
    }
    Ok((ekm(x, lower, upper, Side::Left), ekm(x, lower, upper, Side::Right)))
}

// `split` counts the leading samples that take the first weight of the
// configuration: upper for the left end point, lower for the right one.
fn ekm(x: &[f64], lower: &[f64], upper: &[f64], side: Side) -> f64 {
    let n = x.len();
    let (lead, tail) = match side {
        Side::Left => (upper, lower),
        Side::Right => (lower, upper),
    };
    let sums = |split: usize| -> (f64, f64) {
        let mut a = 0.0;
        let mut b = 0.0;
        for i in 0..n {
            let w = if i < split { lead[i] } else { tail[i] };
            a += x[i] * w;
            b += w;
        }
        (a, b)
    };

    let start = match side {
        Side::Left => (n as f64 / 2.4).round() as usize,
        Side::Right => (n as f64 / 1.7).round() as usize,
    };
    let mut split = start.min(n);
    let (mut a, mut b) = sums(split);
    if b <= 0.0 {
        // all-upper configuration always has positive mass
        split = match side {
            Side::Left => n,
            Side::Right => 0,
        };
        (a, b) = sums(split);
    }

    for _ in 0..=n {
        let y = a / b;
        let next = x.partition_point(|&xi| xi <= y);
        if next == split {
            break;
        }
        let (lo, hi) = (split.min(next), split.max(next));
        let mut da = 0.0;
        let mut db = 0.0;
        for i in lo..hi {
            let diff = lead[i] - tail[i];
            da += x[i] * diff;
            db += diff;
        }
        if next > split {
            a += da;
            b += db;
        } else {
            a -= da;
            b -= db;
        }
        split = next;
        if b <= 0.0 {
            (a, b) = sums(split);
        }
    }
    // recompute at the converged switch point to shed incremental drift
    let (a, b) = sums(split);
    a / b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fou::{DomainScale, Trapezoid};

    fn grid() -> Grid {
        Grid::standard(DomainScale::default())
    }

    #[test]
    fn symmetric_type1_centroid_is_midpoint() {
        let fou = It2Fou::from_type1(Trapezoid::normal(2.0, 3.0, 7.0, 8.0));
        let c = centroid_ekm(&fou, &grid()).unwrap();
        assert!((c.c_l - 5.0).abs() < 1e-9);
        assert!((c.c_r - 5.0).abs() < 1e-9);
        assert!((c.mean() - 5.0).abs() < 1e-9);
    }

    #[test]
    fn beginner_hma_centroid() {
        let fou = It2Fou::new(
            Trapezoid::normal(0.0, 0.0, 2.0, 3.54),
            Trapezoid::normal(0.0, 0.0, 2.0, 3.26),
        );
        let c = centroid_ekm(&fou, &grid()).unwrap();
        assert!((c.c_l - 1.35).abs() <= 0.02, "{c:?}");
        assert!((c.c_r - 1.43).abs() <= 0.02, "{c:?}");
        assert!((c.mean() - 1.39).abs() <= 0.03);
    }

    #[test]
    fn right_shoulder_with_empty_start_configuration() {
        // upper weights vanish left of the EKM starting split
        let fou = It2Fou::new(
            Trapezoid::normal(6.0, 9.0, 10.0, 10.0),
            Trapezoid::new(9.5, 9.9, 10.0, 10.0, 0.5),
        );
        let c = centroid_ekm(&fou, &grid()).unwrap();
        assert!(c.c_l >= 6.0 && c.c_l <= c.c_r && c.c_r <= 10.0, "{c:?}");
    }

    #[test]
    fn zero_area_is_degenerate() {
        let x = [0.0, 1.0, 2.0];
        assert!(matches!(
            ekm_bounds(&x, &[0.0; 3], &[0.0; 3]),
            Err(Error::Degenerate(_))
        ));
    }
}
