use serde::Serialize;

use super::Series;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyResult {
    /// Entropy normalized to `[0, 1]` (log base = number of bins).
    pub h: f64,
    pub bins: usize,
    pub probabilities: Vec<f64>,
}

/// Normalized Shannon entropy of a frequency table.
pub fn shannon_entropy(counts: &[u64]) -> Result<EntropyResult> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::EmptyCounts);
    }
    let probabilities: Vec<f64> = counts.iter().map(|&c| c as f64 / total as f64).collect();
    let bins = counts.len();
    let h = if bins < 2 {
        0.0
    } else {
        let nats: f64 = probabilities
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln())
            .sum();
        // `+ 0.0` turns -0.0 into 0.0
        (nats / (bins as f64).ln()).clamp(0.0, 1.0) + 0.0
    };
    Ok(EntropyResult {
        h,
        bins,
        probabilities,
    })
}

/// `[zeros, ones]`.
pub fn bit_counts(bits: impl IntoIterator<Item = bool>) -> [u64; 2] {
    bits.into_iter().fold([0, 0], |mut acc, b| {
        acc[b as usize] += 1;
        acc
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutocorrResult {
    /// `r[lag]` for `lag = 0..=max_lag`.
    pub r: Vec<f64>,
}

impl AutocorrResult {
    pub fn max_lag(&self) -> usize {
        self.r.len() - 1
    }

    /// Largest `|r(lag)|` over `lag >= 1`, with the lag where it occurs.
    pub fn max_abs_off_zero(&self) -> (usize, f64) {
        self.r
            .iter()
            .enumerate()
            .skip(1)
            .map(|(lag, r)| (lag, r.abs()))
            .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
    }
}

/// Normalized autocovariance,
/// `r(lag) = sum_{i<N-lag} (x_i - m)(x_{i+lag} - m) / sum_i (x_i - m)^2`.
pub fn autocorrelation(series: &Series, max_lag: usize) -> Result<AutocorrResult> {
    let x = series.samples();
    let n = x.len();
    if max_lag == 0 || max_lag >= n {
        return Err(Error::InvalidParameter(format!(
            "max_lag must be in 1..{n}, got {max_lag}"
        )));
    }
    if x.iter().all(|&v| v == x[0]) {
        return Err(Error::ConstantSeries);
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let denom: f64 = centered.iter().map(|v| v * v).sum();
    if denom == 0.0 {
        return Err(Error::ConstantSeries);
    }
    let r = (0..=max_lag)
        .map(|lag| {
            let num: f64 = centered[..n - lag]
                .iter()
                .zip(&centered[lag..])
                .map(|(a, b)| a * b)
                .sum();
            num / denom
        })
        .collect();
    Ok(AutocorrResult { r })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub counts: Vec<u64>,
    /// Pearson chi-square against equal expected counts.
    pub chi_square: f64,
    pub expected: f64,
}

impl Histogram {
    /// Largest relative departure `|count - expected| / expected` over all bins.
    pub fn max_relative_deviation(&self) -> f64 {
        self.counts
            .iter()
            .map(|&c| (c as f64 - self.expected).abs() / self.expected)
            .fold(0.0, f64::max)
    }
}

/// Equal-width bins over `[0, 1]`; bin `b` holds `[b/bins, (b+1)/bins)`, the last
/// bin is closed.
pub fn histogram(series: &Series, bins: usize) -> Result<Histogram> {
    if bins < 2 {
        return Err(Error::InvalidParameter(format!("bins must be at least 2, got {bins}")));
    }
    let mut counts = vec![0u64; bins];
    for &x in series.samples() {
        let b = ((x * bins as f64) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let expected = series.len() as f64 / bins as f64;
    let chi_square = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    Ok(Histogram {
        counts,
        chi_square,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn entropy_examples() {
        assert_eq!(shannon_entropy(&[500, 500]).unwrap().h, 1.0);
        let r = shannon_entropy(&[1000, 0]).unwrap();
        assert_eq!(r.h, 0.0);
        assert_eq!(r.probabilities, [1.0, 0.0]);
        assert_eq!(shannon_entropy(&[0, 0]), Err(Error::EmptyCounts));
        assert_eq!(shannon_entropy(&[]), Err(Error::EmptyCounts));
        assert_eq!(shannon_entropy(&[7]).unwrap().h, 0.0);
        // 3:1 split, H = 0.811278...
        assert!((shannon_entropy(&[750, 250]).unwrap().h - 0.811_278_124_459_132_8).abs() < 1e-12);
    }

    #[test]
    fn bit_count_helper() {
        assert_eq!(bit_counts([true, false, true, true]), [1, 3]);
    }

    #[test]
    fn autocorr_examples() {
        let alt = Series::new((0..1000).map(|i| (i % 2) as f64).collect()).unwrap();
        let r = autocorrelation(&alt, 3).unwrap();
        assert_eq!(r.r[0], 1.0);
        // closed form: -(N-1)/N
        assert!((r.r[1] + 0.999).abs() < 1e-12);
        assert!((r.r[2] - 0.998).abs() < 1e-12);
        assert_eq!(r.max_abs_off_zero().0, 1);

        let flat = Series::new(vec![0.4; 10]).unwrap();
        assert_eq!(autocorrelation(&flat, 2), Err(Error::ConstantSeries));
        assert!(autocorrelation(&alt, 0).is_err());
        assert!(autocorrelation(&alt, 1000).is_err());
    }

    #[test]
    fn histogram_examples() {
        let s = Series::new(vec![0.0, 0.5, 0.999]).unwrap();
        assert_eq!(histogram(&s, 2).unwrap().counts, [1, 2]);
        let s = Series::new(vec![0.25; 40]).unwrap();
        let h = histogram(&s, 4).unwrap();
        assert_eq!(h.counts, [0, 40, 0, 0]);
        assert_eq!(h.chi_square, 120.0);
        let s = Series::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(histogram(&s, 3).unwrap().counts, [0, 0, 2]);
        assert!(histogram(&s, 1).is_err());
    }

    proptest! {
        #[test]
        fn entropy_is_bounded(counts in prop::collection::vec(0u64..1000, 1..20)) {
            prop_assume!(counts.iter().any(|&c| c > 0));
            let r = shannon_entropy(&counts).unwrap();
            prop_assert!((0.0..=1.0).contains(&r.h));
            prop_assert!((r.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn equal_counts_give_unit_entropy(c in 1u64..10_000, bins in 2usize..50) {
            let r = shannon_entropy(&vec![c; bins]).unwrap();
            prop_assert!((r.h - 1.0).abs() < 1e-9);
        }

        #[test]
        fn unequal_counts_stay_below_one(c in 1u64..10_000, bins in 2usize..50, extra in 1u64..100) {
            let mut counts = vec![c; bins];
            counts[0] += extra;
            prop_assert!(shannon_entropy(&counts).unwrap().h < 1.0);
        }

        #[test]
        fn autocorr_invariant_under_reversal(x in prop::collection::vec(0.0f64..=1.0, 20..200)) {
            let fwd = Series::new(x.clone()).unwrap();
            let rev = Series::new(x.into_iter().rev().collect()).unwrap();
            match (autocorrelation(&fwd, 10), autocorrelation(&rev, 10)) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(a.r[0], 1.0);
                    for (u, v) in a.r.iter().zip(&b.r) {
                        prop_assert!((u - v).abs() < 1e-9);
                        prop_assert!(u.abs() <= 1.0 + 1e-12);
                    }
                }
                (Err(e1), Err(e2)) => prop_assert_eq!(e1, e2),
                _ => prop_assert!(false, "one direction failed"),
            }
        }

        #[test]
        fn histogram_counts_sum_to_len(x in prop::collection::vec(0.0f64..=1.0, 2..300), bins in 2usize..70) {
            let s = Series::new(x).unwrap();
            prop_assert_eq!(histogram(&s, bins).unwrap().counts.iter().sum::<u64>(), s.len() as u64);
        }
    }
}
