#![allow(dead_code)]

use std::path::PathBuf;

use cww_core::fou::{DomainScale, Grid, It2Fou, Trapezoid};
use cww_core::{Codebook, RuleBase, Scenario};
use rand::Rng;
use serde::Deserialize;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn codebook(method: &str) -> Codebook {
    Codebook::load(&data_path(&format!("codebook_{method}.json"))).unwrap()
}

pub fn rules() -> RuleBase {
    RuleBase::load(&data_path("rules.json")).unwrap()
}

pub fn scenario(name: &str) -> Scenario {
    Scenario::load(&data_path(name)).unwrap()
}

/// Published per-welder and overall PR outputs.
#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedPr {
    pub scope: String,
    pub objective: String,
    pub umf_a: f64,
    pub umf_b: f64,
    pub umf_c: f64,
    pub umf_d: f64,
    pub lmf_a: f64,
    pub lmf_b: f64,
    pub lmf_c: f64,
    pub lmf_d: f64,
    pub lmf_h: f64,
    pub centroid_l: f64,
    pub centroid_r: f64,
    pub centroid_mean: f64,
    pub label: String,
}

impl ExpectedPr {
    pub fn umf(&self) -> [f64; 4] {
        [self.umf_a, self.umf_b, self.umf_c, self.umf_d]
    }

    pub fn lmf(&self) -> [f64; 4] {
        [self.lmf_a, self.lmf_b, self.lmf_c, self.lmf_d]
    }
}

pub fn expected_pr(method: &str) -> Vec<ExpectedPr> {
    let mut rdr = csv::Reader::from_path(data_path(&format!("expected_pr_{method}.csv"))).unwrap();
    rdr.deserialize().map(|r| r.unwrap()).collect()
}

fn sorted<const N: usize>(rng: &mut impl Rng, lo: f64, hi: f64) -> [f64; N] {
    let mut v = [0.0; N];
    for x in v.iter_mut() {
        *x = rng.random_range(lo..=hi);
    }
    v.sort_by(f64::total_cmp);
    v
}

/// Random valid FOU on [0, 10]; about a quarter are shoulders.
pub fn random_fou(rng: &mut impl Rng) -> It2Fou {
    let [mut ua, mut ub, mut uc, mut ud] = sorted::<4>(rng, 0.0, 10.0);
    if ud - ua < 0.2 {
        ua = (ua - 0.1).max(0.0);
        ud = (ud + 0.1).min(10.0);
    }
    match rng.random_range(0..8) {
        0 => (ua, ub) = (0.0, 0.0),
        1 => (uc, ud) = (10.0, 10.0),
        _ => {}
    }
    let h = if rng.random_bool(0.3) { 1.0 } else { rng.random_range(0.05..=1.0) };
    // the LMF stays under the UMF if its cut at h lies inside the UMF cut at h
    let lo_b = ua + (ub - ua) * h;
    let hi_c = ud - (ud - uc) * h;
    let [lb, lc] = sorted::<2>(rng, lo_b, hi_c);
    let la = if lb > ua { rng.random_range(ua..=lb) } else { ua };
    let ld = if ud > lc { rng.random_range(lc..=ud) } else { ud };
    It2Fou::new(Trapezoid::normal(ua, ub, uc, ud), Trapezoid::new(la, lb, lc, ld, h))
}

/// Centroid by trying every switch point of the sampled FOU.
pub fn brute_centroid(fou: &It2Fou, grid: &Grid) -> (f64, f64) {
    let s = fou.sample(grid);
    let x = grid.points();
    let n = x.len();
    // prefix sums of x*u, u, x*l, l
    let mut pre = vec![[0.0; 4]; n + 1];
    for i in 0..n {
        let p = pre[i];
        pre[i + 1] = [
            p[0] + x[i] * s.upper[i],
            p[1] + s.upper[i],
            p[2] + x[i] * s.lower[i],
            p[3] + s.lower[i],
        ];
    }
    let total = pre[n];
    let (mut c_l, mut c_r) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in &pre {
        // upper weights left of the switch, lower weights right of it
        let den = p[1] + total[3] - p[3];
        if den > 0.0 {
            c_l = c_l.min((p[0] + total[2] - p[2]) / den);
        }
        let den = p[3] + total[1] - p[1];
        if den > 0.0 {
            c_r = c_r.max((p[2] + total[0] - p[0]) / den);
        }
    }
    (c_l, c_r)
}

/// Extremes of a weighted average over an evenly spaced weight lattice.
pub fn brute_weighted_bounds(values: &[f64], lo: &[f64], hi: &[f64], steps: usize) -> (f64, f64) {
    let n = values.len();
    let mut idx = vec![0usize; n];
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    loop {
        let w: Vec<f64> = (0..n)
            .map(|i| lo[i] + (hi[i] - lo[i]) * idx[i] as f64 / (steps - 1) as f64)
            .collect();
        let den: f64 = w.iter().sum();
        if den > 0.0 {
            let v = values.iter().zip(&w).map(|(v, w)| v * w).sum::<f64>() / den;
            min = min.min(v);
            max = max.max(v);
        }
        let mut i = 0;
        loop {
            if i == n {
                return (min, max);
            }
            idx[i] += 1;
            if idx[i] < steps {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Breaks one invariant of a valid FOU; `kind` picks which.
pub fn mutate_invalid(fou: &It2Fou, kind: usize) -> It2Fou {
    let mut m = *fou;
    match kind % 10 {
        0 => m.umf.h = 0.9,
        1 => m.lmf.h = 1.5,
        2 => m.lmf.h = 0.0,
        3 => m.umf.d = f64::NAN,
        4 => m.umf.a = -1.0,
        5 => m.umf.d = 11.0,
        6 => (m.umf.b, m.umf.c) = (m.umf.c + 1.0, m.umf.c),
        7 => m.lmf.d = m.umf.d + 0.5,
        8 => m.lmf.a = m.umf.a - 0.5,
        _ => {
            m.lmf = m.umf;
            m.lmf.b = m.umf.a;
            m.lmf.c = m.umf.d;
        }
    }
    m
}

pub fn within(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol + 1e-9
}

pub fn default_grid() -> Grid {
    Grid::standard(DomainScale::default())
}
