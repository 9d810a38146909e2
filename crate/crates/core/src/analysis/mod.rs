//! Dynamical and statistical checks over generated sequences.

mod cycles;
pub mod csv;
mod lyapunov;
mod stats;

pub use cycles::{cycle_census, cycle_detect, cycle_reports, CensusSummary, CycleReport, MAX_CENSUS_BITS};
pub use lyapunov::{lyapunov_direct, lyapunov_rosenstein, LyapunovEstimate, RosensteinParams, MIN_ROSENSTEIN_LEN};
pub use stats::{autocorrelation, bit_counts, histogram, shannon_entropy, AutocorrResult, EntropyResult, Histogram};

use crate::error::{Error, Result};
use crate::map::{BitWidth, StateWord, Tap};

/// Ordered samples in `[0, 1]`, at least two of them.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    samples: Vec<f64>,
}

impl Series {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::SeriesTooShort {
                len: samples.len(),
                min: 2,
            });
        }
        if let Some(&bad) = samples.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::SampleOutOfRange(bad));
        }
        Ok(Self { samples })
    }

    /// Decoded values of `words`.
    pub fn from_words(width: BitWidth, words: &[StateWord]) -> Result<Self> {
        Self::new(words.iter().map(|&w| width.decode(w).get()).collect())
    }

    /// The tapped output bit of each word as 0.0 / 1.0.
    pub fn from_output_bits(width: BitWidth, words: &[StateWord], tap: Tap) -> Result<Self> {
        Self::new(
            words
                .iter()
                .map(|&w| if tap.bit(width, w) { 1.0 } else { 0.0 })
                .collect(),
        )
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Consecutive pairs `(x_n, x_{n+1})`.
pub fn first_return_pairs(series: &Series) -> Vec<(f64, f64)> {
    series.samples.windows(2).map(|p| (p[0], p[1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{tent_exact, MapConfig};

    #[test]
    fn series_validation() {
        assert!(matches!(Series::new(vec![0.5]), Err(Error::SeriesTooShort { len: 1, min: 2 })));
        assert!(matches!(Series::new(vec![0.5, 1.5]), Err(Error::SampleOutOfRange(_))));
        assert!(Series::new(vec![0.0, 1.0]).is_ok());
    }

    #[test]
    fn first_return_examples() {
        let s = Series::new(vec![0.2, 0.4, 0.8]).unwrap();
        assert_eq!(first_return_pairs(&s), [(0.2, 0.4), (0.4, 0.8)]);
        let s = Series::new(vec![0.1, 0.2]).unwrap();
        assert_eq!(first_return_pairs(&s).len(), 1);
    }

    #[test]
    fn first_return_pairs_hug_the_tent() {
        let width = BitWidth::new(8).unwrap();
        let ulp = width.ulp_star();
        for perturbed in [true, false] {
            let c = MapConfig::new(width, perturbed);
            let words = c.iterate(width.word(0x5A).unwrap(), 2000);
            let s = Series::from_words(width, &words).unwrap();
            for (x, y) in first_return_pairs(&s) {
                let gap = (y - tent_exact(x, 2.0)).abs();
                if perturbed {
                    assert!(gap <= ulp + 1e-12, "({x}, {y})");
                } else {
                    assert!(gap <= 1e-12, "({x}, {y})");
                }
            }
        }
    }
}
