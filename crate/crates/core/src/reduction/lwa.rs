use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fou::{AlphaCut, DomainScale, It2Fou, Trapezoid};

/// How the lower membership height of a crisp-weighted average is formed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeightMode {
    /// Weight-normalized mean of the consequent LMF heights.
    #[default]
    WeightedBlend,
    /// Smallest LMF height among positively weighted consequents.
    Min,
}

/// Weight of one source in an aggregation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Crisp(f64),
    Interval([f64; 2]),
}

impl WeightSpec {
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            WeightSpec::Crisp(w) => (w, w),
            WeightSpec::Interval([lo, hi]) => (lo, hi),
        }
    }

    pub fn is_crisp(&self) -> bool {
        let (lo, hi) = self.bounds();
        lo == hi
    }

    fn check(&self) -> Result<(f64, f64)> {
        let (lo, hi) = self.bounds();
        if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo <= hi) {
            return Err(Error::InvalidWeight(format!("[{lo}, {hi}]")));
        }
        Ok((lo, hi))
    }
}

impl From<f64> for WeightSpec {
    fn from(w: f64) -> Self {
        WeightSpec::Crisp(w)
    }
}

fn check_lengths(consequents: usize, weights: usize) -> Result<()> {
    if consequents != weights {
        return Err(Error::LengthMismatch {
            what: "consequents and weights",
            left: consequents,
            right: weights,
        });
    }
    if consequents == 0 {
        return Err(Error::NoFiredRule("an empty aggregation".into()));
    }
    Ok(())
}

/// Linguistic weighted average with crisp weights: corners of the upper
/// and lower trapezoids are averaged parameter-wise. In `Min` mode the
/// lower plateau is the average of the LMF cuts at the common height; a
/// blended height is lowered where needed to stay under the UMF.
pub fn lwa_crisp(
    consequents: &[It2Fou],
    weights: &[f64],
    height_mode: HeightMode,
    scale: &DomainScale,
) -> Result<It2Fou> {
    check_lengths(consequents.len(), weights.len())?;
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::InvalidWeight(w.to_string()));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::NoFiredRule("all weights are zero".into()));
    }

    let normalized: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let average = |corner: fn(&It2Fou) -> f64| -> f64 {
        let s: f64 = consequents.iter().zip(&normalized).map(|(g, w)| corner(g) * w).sum();
        scale.clamp(s)
    };
    let height = match height_mode {
        HeightMode::WeightedBlend => average(|g| g.lmf.h).clamp(f64::MIN_POSITIVE, 1.0),
        HeightMode::Min => consequents
            .iter()
            .zip(weights)
            .filter(|(_, w)| **w > 0.0)
            .map(|(g, _)| g.lmf.h)
            .fold(1.0, f64::min),
    };
    let umf = Trapezoid::normal(
        average(|g| g.umf.a),
        average(|g| g.umf.b),
        average(|g| g.umf.c),
        average(|g| g.umf.d),
    );
    let (lmf_b, lmf_c) = match height_mode {
        HeightMode::WeightedBlend => (average(|g| g.lmf.b), average(|g| g.lmf.c)),
        // plateau of the exact average: every LMF cut at the common height
        HeightMode::Min => {
            let (mut b, mut c) = (0.0, 0.0);
            for (g, w) in consequents.iter().zip(&normalized) {
                if *w > 0.0 {
                    let cut = g.lmf.alpha_cut(height)?;
                    b += w * cut.left;
                    c += w * cut.right;
                }
            }
            (scale.clamp(b), scale.clamp(c))
        }
    };
    // a blended height can poke through the averaged UMF; cap it at the kinks
    let height = match height_mode {
        HeightMode::WeightedBlend => height
            .min(umf.membership_at(lmf_b))
            .min(umf.membership_at(lmf_c))
            .max(f64::MIN_POSITIVE),
        HeightMode::Min => height,
    };
    let lmf = Trapezoid::new(average(|g| g.lmf.a), lmf_b, lmf_c, average(|g| g.lmf.d), height);
    Ok(It2Fou::new(umf, lmf))
}

/// Result of the alpha-cut LWA: the trapezoid read off the cut envelope
/// plus the envelope itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LwaAlphaOutput {
    /// Corners taken at alpha = 0 and at the top of each membership function.
    pub fou: It2Fou,
    /// UMF cuts for alpha in [0, 1], ascending.
    pub upper_cuts: Vec<AlphaCut>,
    /// LMF cuts for alpha in [0, h], ascending.
    pub lower_cuts: Vec<AlphaCut>,
}

/// Minimum and maximum of `sum(v * f) / sum(f)` over `f[i]` in
/// `[lo[i], hi[i]]`. The extremes sit at a switch point in the
/// `v`-sorted order, so every switch point is enumerated.
pub fn weighted_average_bounds(values: &[f64], lo: &[f64], hi: &[f64]) -> Option<(f64, f64)> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    // prefix sums over the sorted order
    let mut pre = vec![(0.0, 0.0, 0.0, 0.0); n + 1];
    for (k, &i) in order.iter().enumerate() {
        let (a_lo, w_lo, a_hi, w_hi) = pre[k];
        pre[k + 1] = (
            a_lo + values[i] * lo[i],
            w_lo + lo[i],
            a_hi + values[i] * hi[i],
            w_hi + hi[i],
        );
    }
    let (all_lo_a, all_lo_w, all_hi_a, all_hi_w) = pre[n];

    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for s in 0..=n {
        let (a_lo, w_lo, a_hi, w_hi) = pre[s];
        // smallest values heavy, the rest light
        let (num, den) = (a_hi + (all_lo_a - a_lo), w_hi + (all_lo_w - w_lo));
        if den > 0.0 {
            min = min.min(num / den);
        }
        // smallest values light, the rest heavy
        let (num, den) = (a_lo + (all_hi_a - a_hi), w_lo + (all_hi_w - w_hi));
        if den > 0.0 {
            max = max.max(num / den);
        }
    }
    (min.is_finite() && max.is_finite()).then_some((min, max))
}

/// Linguistic weighted average evaluated cut by cut, allowing interval
/// weights. The upper output follows the consequents' UMF cuts on
/// `[0, 1]`, the lower output their LMF cuts on `[0, h_min]`.
pub fn lwa_alpha(
    consequents: &[It2Fou],
    weights: &[WeightSpec],
    alpha_levels: usize,
    scale: &DomainScale,
) -> Result<LwaAlphaOutput> {
    check_lengths(consequents.len(), weights.len())?;
    if alpha_levels < 2 {
        return Err(Error::Schema(format!("alpha_levels must be at least 2, got {alpha_levels}")));
    }
    let mut active = Vec::with_capacity(consequents.len());
    for (g, w) in consequents.iter().zip(weights) {
        let (lo, hi) = w.check()?;
        if hi > 0.0 {
            active.push((g, lo, hi));
        }
    }
    if active.is_empty() {
        return Err(Error::NoFiredRule("all weights are zero".into()));
    }
    let lo: Vec<f64> = active.iter().map(|t| t.1).collect();
    let hi: Vec<f64> = active.iter().map(|t| t.2).collect();
    let h_min = active.iter().map(|t| t.0.lmf.h).fold(1.0, f64::min);

    let sweep = |top: f64, pick: fn(&It2Fou) -> &Trapezoid| -> Result<Vec<AlphaCut>> {
        let mut cuts = Vec::with_capacity(alpha_levels);
        for j in 0..alpha_levels {
            let alpha = if j + 1 == alpha_levels {
                top
            } else {
                top * j as f64 / (alpha_levels - 1) as f64
            };
            let mut lefts = Vec::with_capacity(active.len());
            let mut rights = Vec::with_capacity(active.len());
            for (g, _, _) in &active {
                let cut = pick(g).alpha_cut(alpha)?;
                lefts.push(cut.left);
                rights.push(cut.right);
            }
            let (left, _) = weighted_average_bounds(&lefts, &lo, &hi)
                .ok_or_else(|| Error::NoFiredRule("all weight configurations vanish".into()))?;
            let (_, right) = weighted_average_bounds(&rights, &lo, &hi)
                .ok_or_else(|| Error::NoFiredRule("all weight configurations vanish".into()))?;
            cuts.push(AlphaCut {
                alpha,
                left: scale.clamp(left),
                right: scale.clamp(right),
            });
        }
        Ok(cuts)
    };
    let upper_cuts = sweep(1.0, |g| &g.umf)?;
    let lower_cuts = sweep(h_min, |g| &g.lmf)?;

    let (u0, u1) = (upper_cuts[0], upper_cuts[alpha_levels - 1]);
    let (l0, l1) = (lower_cuts[0], lower_cuts[alpha_levels - 1]);
    let fou = It2Fou::new(
        Trapezoid::normal(u0.left, u1.left, u1.right, u0.right),
        Trapezoid::new(l0.left, l1.left, l1.right, l0.right, h_min),
    );
    Ok(LwaAlphaOutput {
        fou,
        upper_cuts,
        lower_cuts,
    })
}
