//! Deterministic summary statistics.

/// Pairwise (cascade) summation with a fixed tree shape.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Sample mean and standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
    pub count: usize,
}

impl MeanSe {
    /// Mean and `stddev / sqrt(count)` with the unbiased variance. Empty input gives zeros.
    pub fn of(xs: &[f64]) -> MeanSe {
        let count = xs.len();
        if count == 0 {
            return MeanSe {
                mean: 0.0,
                se: 0.0,
                count,
            };
        }
        let mean = pairwise_sum(xs) / count as f64;
        if count == 1 {
            return MeanSe {
                mean,
                se: 0.0,
                count,
            };
        }
        let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
        let var = pairwise_sum(&dev) / (count - 1) as f64;
        MeanSe {
            mean,
            se: (var / count as f64).sqrt(),
            count,
        }
    }

    /// Fraction of `true` with its binomial standard error.
    pub fn of_bools(flags: impl IntoIterator<Item = bool>) -> MeanSe {
        let xs: Vec<f64> = flags
            .into_iter()
            .map(|b| if b { 1.0 } else { 0.0 })
            .collect();
        MeanSe::of(&xs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_se() {
        let m = MeanSe::of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.mean, 2.5);
        assert!((m.se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(MeanSe::of(&[3.0]).se, 0.0);
        assert_eq!(MeanSe::of(&[]).mean, 0.0);
    }

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let xs: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 499_500.0);
    }
}
