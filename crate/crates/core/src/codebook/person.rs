use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{encode_word, Codebook, EncoderMethod, LinguisticVariable, Word};
use crate::error::{Error, Result};
use crate::fou::DomainScale;

const MAX_RESAMPLES: usize = 1000;

/// One virtual subject's interval for a word.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DataInterval {
    pub l: f64,
    pub r: f64,
}

/// Ranges an expert gives for the left and right end points of a word.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndpointSpec {
    pub left: [f64; 2],
    pub right: [f64; 2],
}

impl EndpointSpec {
    pub fn new(left: [f64; 2], right: [f64; 2]) -> Result<Self> {
        let spec = Self { left, right };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        for (name, [lo, hi]) in [("left", self.left), ("right", self.right)] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::Schema(format!("{name} end-point range [{lo}, {hi}] is invalid")));
            }
        }
        Ok(())
    }

    /// Whether the left range lies entirely below the right one.
    pub fn is_separated(&self) -> bool {
        self.left[1] <= self.right[0]
    }

    pub fn within(&self, scale: &DomainScale) -> bool {
        [self.left, self.right].iter().flatten().all(|&v| scale.contains(v))
    }
}

/// Draws `n` left ends and `n` right ends uniformly from the spec's ranges
/// and pairs them in draw order. Pairs with `l > r` (possible only when the
/// ranges overlap) are redrawn.
pub fn synthesize_person_intervals(spec: &EndpointSpec, n: usize, seed: u64) -> Result<Vec<DataInterval>> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng, [lo, hi]: [f64; 2]| {
        if lo == hi {
            lo
        } else {
            rng.random_range(lo..=hi)
        }
    };
    let lefts: Vec<f64> = (0..n).map(|_| draw(&mut rng, spec.left)).collect();
    let rights: Vec<f64> = (0..n).map(|_| draw(&mut rng, spec.right)).collect();
    let mut out = Vec::with_capacity(n);
    for (mut l, mut r) in lefts.into_iter().zip(rights) {
        let mut attempts = 0;
        while l > r {
            attempts += 1;
            if attempts > MAX_RESAMPLES {
                return Err(Error::ResampleExhausted(MAX_RESAMPLES));
            }
            l = draw(&mut rng, spec.left);
            r = draw(&mut rng, spec.right);
        }
        out.push(DataInterval { l, r });
    }
    Ok(out)
}

/// End-point ranges for a whole vocabulary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointsDocument {
    pub scale: DomainScale,
    pub variables: Vec<EndpointVariable>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointVariable {
    pub name: String,
    pub words: Vec<EndpointWord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointWord {
    pub label: String,
    pub long_name: String,
    pub left: [f64; 2],
    pub right: [f64; 2],
}

/// Encodes every word of `doc` from synthesized Person-FOU intervals.
/// Word `k` (in document order) is sampled with seed `seed + k`.
pub fn synthesize_codebook(doc: &EndpointsDocument, method: EncoderMethod, n: usize, seed: u64) -> Result<Codebook> {
    let scale = DomainScale::new(doc.scale.min, doc.scale.max)?;
    let mut variables = Vec::with_capacity(doc.variables.len());
    let mut k = 0u64;
    for var in &doc.variables {
        let mut words = Vec::with_capacity(var.words.len());
        for w in &var.words {
            let spec = EndpointSpec::new(w.left, w.right)?;
            let intervals = synthesize_person_intervals(&spec, n, seed.wrapping_add(k))?;
            let fou = encode_word(&intervals, method, &scale).map_err(|e| match e {
                Error::InvalidFou { source, .. } => Error::invalid_fou(format!("{}.{}", var.name, w.label), source),
                other => Error::Schema(format!("{}.{}: {other}", var.name, w.label)),
            })?;
            words.push(Word {
                label: w.label.clone(),
                long_name: w.long_name.clone(),
                fou,
            });
            k += 1;
        }
        variables.push(LinguisticVariable {
            name: var.name.clone(),
            words,
        });
    }
    Codebook::new(scale, format!("synthesized:{}:n={n}:seed={seed}", method.as_str()), variables)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beginner_range_pins_left_end() {
        let spec = EndpointSpec::new([0.0, 0.0], [2.0, 3.0]).unwrap();
        let iv = synthesize_person_intervals(&spec, 50, 7).unwrap();
        assert_eq!(iv.len(), 50);
        assert!(iv.iter().all(|d| d.l == 0.0 && (2.0..=3.0).contains(&d.r)));
    }

    #[test]
    fn same_seed_same_intervals() {
        let spec = EndpointSpec::new([2.0, 3.0], [7.0, 8.0]).unwrap();
        let a = synthesize_person_intervals(&spec, 50, 42).unwrap();
        let b = synthesize_person_intervals(&spec, 50, 42).unwrap();
        let c = synthesize_person_intervals(&spec, 50, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn overlapping_ranges_are_resampled() {
        let spec = EndpointSpec::new([2.0, 6.0], [4.0, 8.0]).unwrap();
        assert!(!spec.is_separated());
        let iv = synthesize_person_intervals(&spec, 200, 1).unwrap();
        assert!(iv.iter().all(|d| d.l <= d.r));
    }

    #[test]
    fn impossible_ranges_exhaust_resampling() {
        let spec = EndpointSpec::new([5.0, 6.0], [1.0, 2.0]).unwrap();
        assert!(matches!(
            synthesize_person_intervals(&spec, 3, 1),
            Err(Error::ResampleExhausted(_))
        ));
    }

    #[test]
    fn inverted_range_is_rejected() {
        assert!(EndpointSpec::new([3.0, 2.0], [5.0, 6.0]).is_err());
    }
}
