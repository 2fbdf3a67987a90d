//! Trapezoidal type-1 membership functions and interval type-2 footprints
//! of uncertainty (FOUs) on a bounded numeric domain.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};

/// Absolute tolerance on corner equality when classifying shoulders.
pub const SHAPE_TOLERANCE: f64 = 1e-9;

/// Default spacing of the evaluation grid.
pub const DEFAULT_GRID_STEP: f64 = 0.01;

const CONTAINMENT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainScale {
    pub min: f64,
    pub max: f64,
}

impl DomainScale {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidScale { min, max });
        }
        Ok(Self { min, max })
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.min && x <= self.max
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.min, self.max)
    }

    pub fn width(&self) -> f64 {
        self.max - self.min
    }
}

impl Default for DomainScale {
    fn default() -> Self {
        Self {
            min: 0.0,
            max: 10.0,
        }
    }
}

/// Uniform sampling of a [`DomainScale`]; every similarity and centroid
/// computation runs on one of these.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    scale: DomainScale,
    step: f64,
    points: Vec<f64>,
}

impl Grid {
    pub fn new(scale: DomainScale, step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0 && step <= scale.width()) {
            return Err(Error::InvalidGridStep(step));
        }
        let intervals = (scale.width() / step - 1e-9).ceil() as usize;
        let mut points: Vec<f64> = (0..=intervals)
            .map(|i| (scale.min + i as f64 * step).min(scale.max))
            .collect();
        // the last sample always sits exactly on the right end
        if let Some(last) = points.last_mut() {
            *last = scale.max;
        }
        Ok(Self {
            scale,
            step,
            points,
        })
    }

    /// Step 0.01 over the scale (1001 points on [0, 10]).
    pub fn standard(scale: DomainScale) -> Self {
        Self::new(scale, DEFAULT_GRID_STEP).expect("default step fits any valid scale")
    }

    pub fn scale(&self) -> DomainScale {
        self.scale
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Trapezoid `(a, b, c, d)` with plateau height `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trapezoid {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub h: f64,
}

impl Trapezoid {
    pub const fn new(a: f64, b: f64, c: f64, d: f64, h: f64) -> Self {
        Self { a, b, c, d, h }
    }

    pub const fn normal(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a, b, c, d, 1.0)
    }

    pub fn corners(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Membership grade at `x`; zero off the support, `h` on the plateau and
    /// linear on the flanks.
    pub fn membership_at(&self, x: f64) -> f64 {
        if x < self.a || x > self.d {
            0.0
        } else if x < self.b {
            self.h * (x - self.a) / (self.b - self.a)
        } else if x <= self.c {
            self.h
        } else {
            self.h * (self.d - x) / (self.d - self.c)
        }
    }

    /// Interval of points whose membership is at least `alpha`.
    pub fn alpha_cut(&self, alpha: f64) -> Result<AlphaCut> {
        if !(0.0..=self.h).contains(&alpha) {
            return Err(Error::AlphaOutOfRange {
                alpha,
                height: self.h,
            });
        }
        let t = alpha / self.h;
        Ok(AlphaCut {
            alpha,
            left: self.a + (self.b - self.a) * t,
            right: self.d - (self.d - self.c) * t,
        })
    }

    pub(crate) fn check(&self, name: &'static str, scale: &DomainScale) -> std::result::Result<(), FouError> {
        for (field, v) in [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d), ("h", self.h)] {
            if !v.is_finite() {
                return Err(FouError::NonFinite { mf: name, field });
            }
        }
        for (lo, hi, which) in [
            (self.a, self.b, "a > b"),
            (self.b, self.c, "b > c"),
            (self.c, self.d, "c > d"),
        ] {
            if lo > hi {
                return Err(FouError::Ordering { mf: name, which });
            }
        }
        for (field, v) in [("a", self.a), ("d", self.d)] {
            if !scale.contains(v) {
                return Err(FouError::OutOfDomain {
                    mf: name,
                    field,
                    value: v,
                });
            }
        }
        if !(self.h > 0.0 && self.h <= 1.0) {
            return Err(FouError::Height {
                mf: name,
                value: self.h,
            });
        }
        Ok(())
    }
}

/// Free-function form of [`Trapezoid::membership_at`].
pub fn membership_at(mf: &Trapezoid, x: f64) -> f64 {
    mf.membership_at(x)
}

/// Free-function form of [`Trapezoid::alpha_cut`].
pub fn alpha_cut(mf: &Trapezoid, alpha: f64) -> Result<AlphaCut> {
    mf.alpha_cut(alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaCut {
    pub alpha: f64,
    pub left: f64,
    pub right: f64,
}

impl AlphaCut {
    pub fn contains(&self, other: &AlphaCut) -> bool {
        self.left <= other.left && other.right <= self.right
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FouShape {
    LeftShoulder,
    Interior,
    RightShoulder,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FouError {
    #[error("{mf}.{field} is not finite")]
    NonFinite { mf: &'static str, field: &'static str },
    #[error("{mf} corners out of order ({which})")]
    Ordering { mf: &'static str, which: &'static str },
    #[error("{mf}.{field} = {value} lies outside the domain")]
    OutOfDomain {
        mf: &'static str,
        field: &'static str,
        value: f64,
    },
    #[error("{mf}.h = {value} not in (0, 1]")]
    Height { mf: &'static str, value: f64 },
    #[error("umf.h = {0} but the upper membership function must be normal")]
    UmfNotNormal(f64),
    #[error("lmf exceeds umf at x = {x} ({lower} > {upper})")]
    Containment { x: f64, lower: f64, upper: f64 },
}

/// Interval type-2 fuzzy set bounded by an upper and a lower trapezoid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct It2Fou {
    pub umf: Trapezoid,
    pub lmf: Trapezoid,
}

impl It2Fou {
    pub const fn new(umf: Trapezoid, lmf: Trapezoid) -> Self {
        Self { umf, lmf }
    }

    /// FOU without uncertainty: both bounds equal `mf`.
    pub const fn from_type1(mf: Trapezoid) -> Self {
        Self { umf: mf, lmf: mf }
    }

    /// Checks trapezoid invariants, normality of the UMF and pointwise
    /// containment of the LMF on `grid`.
    pub fn validate(&self, grid: &Grid) -> std::result::Result<(), FouError> {
        let scale = grid.scale();
        self.umf.check("umf", &scale)?;
        self.lmf.check("lmf", &scale)?;
        if self.umf.h != 1.0 {
            return Err(FouError::UmfNotNormal(self.umf.h));
        }
        for &x in grid.points() {
            let lower = self.lmf.membership_at(x);
            let upper = self.umf.membership_at(x);
            if lower > upper + CONTAINMENT_SLACK {
                return Err(FouError::Containment { x, lower, upper });
            }
        }
        Ok(())
    }

    pub fn classify_shape(&self, scale: &DomainScale) -> FouShape {
        let at = |v: f64, end: f64| (v - end).abs() <= SHAPE_TOLERANCE;
        let (u, l) = (&self.umf, &self.lmf);
        if [u.a, u.b, l.a, l.b].iter().all(|&v| at(v, scale.min)) {
            FouShape::LeftShoulder
        } else if [u.c, u.d, l.c, l.d].iter().all(|&v| at(v, scale.max)) {
            FouShape::RightShoulder
        } else {
            FouShape::Interior
        }
    }

    pub fn sample(&self, grid: &Grid) -> SampledFou {
        let upper = grid.points().iter().map(|&x| self.umf.membership_at(x)).collect();
        let lower = grid.points().iter().map(|&x| self.lmf.membership_at(x)).collect();
        SampledFou { upper, lower }
    }

    /// Shifts every corner by `delta`.
    pub fn translate(&self, delta: f64) -> Self {
        let shift = |t: &Trapezoid| Trapezoid::new(t.a + delta, t.b + delta, t.c + delta, t.d + delta, t.h);
        Self::new(shift(&self.umf), shift(&self.lmf))
    }
}

/// Free-function form of [`It2Fou::validate`] on the standard grid of `scale`.
pub fn validate_fou(fou: &It2Fou, scale: &DomainScale) -> std::result::Result<(), FouError> {
    fou.validate(&Grid::standard(*scale))
}

pub fn classify_shape(fou: &It2Fou, scale: &DomainScale) -> FouShape {
    fou.classify_shape(scale)
}

/// Upper and lower membership grades of an FOU at each grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFou {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}
