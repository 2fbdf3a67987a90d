use crate::error::{Error, Result};
use crate::fou::{Grid, It2Fou, SampledFou};

/// Jaccard similarity of two FOUs on `grid`: summed pointwise minima of the
/// upper and lower memberships over the summed maxima.
pub fn jaccard_similarity(a: &It2Fou, b: &It2Fou, grid: &Grid) -> Result<f64> {
    jaccard_sampled(&a.sample(grid), &b.sample(grid))
}

pub fn jaccard_sampled(a: &SampledFou, b: &SampledFou) -> Result<f64> {
    if a.upper.len() != b.upper.len() || a.lower.len() != b.lower.len() {
        return Err(Error::LengthMismatch {
            what: "sampled FOUs",
            left: a.upper.len(),
            right: b.upper.len(),
        });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in a.upper.iter().zip(&b.upper).chain(a.lower.iter().zip(&b.lower)) {
        num += x.min(*y);
        den += x.max(*y);
    }
    if den <= 0.0 {
        return Err(Error::Degenerate("both FOUs vanish on the grid".into()));
    }
    Ok((num / den).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fou::{DomainScale, Trapezoid};

    fn grid() -> Grid {
        Grid::standard(DomainScale::default())
    }

    fn word(u: [f64; 4], l: [f64; 4], h: f64) -> It2Fou {
        It2Fou::new(
            Trapezoid::normal(u[0], u[1], u[2], u[3]),
            Trapezoid::new(l[0], l[1], l[2], l[3], h),
        )
    }

    #[test]
    fn identity_is_one() {
        let w = word([1.0, 2.96, 7.02, 9.03], [1.81, 2.96, 7.02, 8.27], 1.0);
        assert_eq!(jaccard_similarity(&w, &w, &grid()).unwrap(), 1.0);
    }

    #[test]
    fn disjoint_supports_are_zero() {
        let a = word([0.0, 0.0, 1.0, 2.0], [0.0, 0.0, 1.0, 1.5], 1.0);
        let b = word([6.0, 7.0, 10.0, 10.0], [6.5, 7.0, 10.0, 10.0], 1.0);
        assert_eq!(jaccard_similarity(&a, &b, &grid()).unwrap(), 0.0);
    }

    #[test]
    fn moderate_vs_very_large_experience() {
        let sm = word([1.20, 2.96, 7.02, 8.98], [1.79, 2.96, 7.02, 8.19], 1.0);
        let svl = word([6.08, 7.97, 10.0, 10.0], [6.75, 7.97, 10.0, 10.0], 1.0);
        let s = jaccard_similarity(&sm, &svl, &grid()).unwrap();
        assert!((s - 0.10).abs() <= 0.02, "{s}");
        assert_eq!(s, jaccard_similarity(&svl, &sm, &grid()).unwrap());
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let a = SampledFou { upper: vec![1.0; 3], lower: vec![1.0; 3] };
        let b = SampledFou { upper: vec![1.0; 4], lower: vec![1.0; 4] };
        assert!(jaccard_sampled(&a, &b).is_err());
    }

    #[test]
    fn vanishing_fous_are_degenerate() {
        let z = SampledFou { upper: vec![0.0; 3], lower: vec![0.0; 3] };
        assert!(matches!(jaccard_sampled(&z, &z), Err(Error::Degenerate(_))));
    }
}
