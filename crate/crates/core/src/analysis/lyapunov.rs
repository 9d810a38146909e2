//! Largest Lyapunov exponent.
//!
//! [`lyapunov_rosenstein`] follows the nearest-neighbor divergence method: embed
//! the series in delay coordinates, pair every point with its closest neighbor
//! outside a temporal exclusion window, follow each pair forward and average the
//! log distance per step. The slope of that curve over the fit range is the
//! exponent, in natural-log units per iteration.

use serde::Serialize;

use super::Series;
use crate::error::{Error, Result};

pub const MIN_ROSENSTEIN_LEN: usize = 1000;

/// Exponent of the `mu = 2` tent map from its slope: `ln |F'(x)| = ln 2` at every
/// point off the breakpoint, averaged over `series_length` iterations.
pub fn lyapunov_direct(series_length: usize) -> f64 {
    let slope_magnitude = 2.0f64;
    let n = series_length.max(1);
    (0..n).map(|_| slope_magnitude.ln()).sum::<f64>() / n as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RosensteinParams {
    pub embed_dim: usize,
    pub delay: usize,
    /// Neighbors must be more than this many indices apart.
    pub theiler_window: usize,
    /// Divergence is followed for steps `0..=max_steps`.
    pub max_steps: usize,
    /// Inclusive step range of the line fit.
    pub fit_range: (usize, usize),
}

impl Default for RosensteinParams {
    fn default() -> Self {
        Self {
            embed_dim: 2,
            delay: 1,
            theiler_window: 10,
            max_steps: 12,
            fit_range: (1, 8),
        }
    }
}

impl RosensteinParams {
    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if self.embed_dim == 0 {
            return bad("embed_dim must be at least 1");
        }
        if self.delay == 0 {
            return bad("delay must be at least 1");
        }
        let (a, b) = self.fit_range;
        if a >= b || b > self.max_steps {
            return bad("fit_range must satisfy first < last <= max_steps");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub lambda: f64,
    pub fit_range: (usize, usize),
    pub neighbor_count: usize,
    /// Mean log divergence for steps `0..=max_steps`.
    pub divergence: Vec<f64>,
}

struct Embedding<'a> {
    x: &'a [f64],
    dim: usize,
    delay: usize,
}

impl Embedding<'_> {
    #[inline]
    fn coord(&self, i: usize, d: usize) -> f64 {
        self.x[i + d * self.delay]
    }

    #[inline]
    fn dist2(&self, i: usize, j: usize) -> f64 {
        (0..self.dim)
            .map(|d| {
                let diff = self.coord(i, d) - self.coord(j, d);
                diff * diff
            })
            .sum()
    }
}

/// Nearest neighbor of every point in `0..usable`, searched among the same points.
///
/// Neighbors closer in time than the exclusion window, and exact duplicates, are
/// skipped. Ties go to the lower index. Points are swept in order of their first
/// coordinate and a sweep stops once that coordinate alone is farther than the
/// best match.
fn nearest_neighbors(emb: &Embedding<'_>, usable: usize, theiler: usize) -> Vec<Option<usize>> {
    let mut order: Vec<usize> = (0..usable).collect();
    order.sort_by(|&a, &b| emb.coord(a, 0).total_cmp(&emb.coord(b, 0)).then(a.cmp(&b)));

    let mut result = vec![None; usable];
    for (pos, &i) in order.iter().enumerate() {
        let x0 = emb.coord(i, 0);
        let mut best: Option<(f64, usize)> = None;
        let mut consider = |j: usize| -> bool {
            let dx = emb.coord(j, 0) - x0;
            if let Some((bd, _)) = best {
                if dx * dx > bd {
                    return false;
                }
            }
            if i.abs_diff(j) > theiler {
                let d2 = emb.dist2(i, j);
                if d2 > 0.0 {
                    let better = match best {
                        None => true,
                        Some((bd, bj)) => d2 < bd || (d2 == bd && j < bj),
                    };
                    if better {
                        best = Some((d2, j));
                    }
                }
            }
            true
        };
        for &j in &order[pos + 1..] {
            if !consider(j) {
                break;
            }
        }
        for &j in order[..pos].iter().rev() {
            if !consider(j) {
                break;
            }
        }
        result[i] = best.map(|(_, j)| j);
    }
    result
}

pub fn lyapunov_rosenstein(series: &Series, params: &RosensteinParams) -> Result<LyapunovEstimate> {
    params.validate()?;
    let x = series.samples();
    let n = x.len();
    if n < MIN_ROSENSTEIN_LEN {
        return Err(Error::SeriesTooShort {
            len: n,
            min: MIN_ROSENSTEIN_LEN,
        });
    }
    let (lo, hi) = x
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if lo == hi {
        return Err(Error::ConstantSeries);
    }

    let span = (params.embed_dim - 1) * params.delay;
    let usable = n
        .checked_sub(span + params.max_steps)
        .filter(|&u| u > params.theiler_window + 1)
        .ok_or(Error::SeriesTooShort {
            len: n,
            min: span + params.max_steps + params.theiler_window + 2,
        })?;
    let emb = Embedding {
        x,
        dim: params.embed_dim,
        delay: params.delay,
    };

    let pairs: Vec<(usize, usize)> = nearest_neighbors(&emb, usable, params.theiler_window)
        .into_iter()
        .enumerate()
        .filter_map(|(i, j)| j.map(|j| (i, j)))
        .collect();
    if pairs.is_empty() {
        return Err(Error::NoNeighbors);
    }

    let mut divergence = Vec::with_capacity(params.max_steps + 1);
    for step in 0..=params.max_steps {
        let (sum, count) = pairs
            .iter()
            .map(|&(i, j)| emb.dist2(i + step, j + step))
            .filter(|&d2| d2 > 0.0)
            .fold((0.0, 0usize), |(s, c), d2| (s + 0.5 * d2.ln(), c + 1));
        if count == 0 {
            return Err(Error::NoNeighbors);
        }
        divergence.push(sum / count as f64);
    }

    let lambda = fit_slope(&divergence, params.fit_range);
    Ok(LyapunovEstimate {
        lambda,
        fit_range: params.fit_range,
        neighbor_count: pairs.len(),
        divergence,
    })
}

/// Least-squares slope of `curve[a..=b]` against the step index.
fn fit_slope(curve: &[f64], (a, b): (usize, usize)) -> f64 {
    let pts = &curve[a..=b];
    let m = pts.len() as f64;
    let mean_t = (a + b) as f64 / 2.0;
    let mean_y = pts.iter().sum::<f64>() / m;
    let (num, den) = pts.iter().enumerate().fold((0.0, 0.0), |(num, den), (k, &y)| {
        let dt = (a + k) as f64 - mean_t;
        (num + dt * (y - mean_y), den + dt * dt)
    });
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Divergence curve with an all-pairs neighbor search.
    fn brute_force_curve(x: &[f64], p: &RosensteinParams) -> Vec<f64> {
        let m = x.len() - (p.embed_dim - 1) * p.delay;
        let usable = m - p.max_steps;
        let point = |i: usize| -> Vec<f64> { (0..p.embed_dim).map(|d| x[i + d * p.delay]).collect() };
        let dist = |a: &[f64], b: &[f64]| -> f64 {
            a.iter().zip(b).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt()
        };
        let mut pairs = vec![];
        for i in 0..usable {
            let mut best: Option<(f64, usize)> = None;
            for j in 0..usable {
                if i.abs_diff(j) <= p.theiler_window {
                    continue;
                }
                let d = dist(&point(i), &point(j));
                if d > 0.0 && best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, j));
                }
            }
            if let Some((_, j)) = best {
                pairs.push((i, j));
            }
        }
        (0..=p.max_steps)
            .map(|s| {
                let logs: Vec<f64> = pairs
                    .iter()
                    .map(|&(i, j)| dist(&point(i + s), &point(j + s)))
                    .filter(|&d| d > 0.0)
                    .map(f64::ln)
                    .collect();
                logs.iter().sum::<f64>() / logs.len() as f64
            })
            .collect()
    }

    fn square_wave(n: usize) -> Series {
        Series::new((0..n).map(|i| if i % 4 < 2 { 0.0 } else { 1.0 }).collect()).unwrap()
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn direct_value_is_ln2() {
        assert!((lyapunov_direct(1) - 0.6931).abs() < 5e-5);
        assert!((lyapunov_direct(10_000) - std::f64::consts::LN_2).abs() < 1e-12);
        assert!((lyapunov_direct(100) - 0.693).abs() < 5e-4);
    }

    #[test]
    fn periodic_square_wave_has_no_divergence() {
        let s = square_wave(4096);
        let est = lyapunov_rosenstein(&s, &RosensteinParams::default()).unwrap();
        assert!(est.lambda <= 0.05, "lambda = {}", est.lambda);
        let oracle = brute_force_curve(s.samples(), &RosensteinParams::default());
        for (a, b) in est.divergence.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_search_matches_brute_force_on_irregular_data() {
        // a quasi-periodic but non-repeating signal
        let x: Vec<f64> = (0..1200)
            .map(|i| {
                let t = i as f64;
                0.5 + 0.3 * (0.37 * t).sin() + 0.15 * (1.91 * t).sin()
            })
            .collect();
        let s = Series::new(x.clone()).unwrap();
        for p in [
            RosensteinParams::default(),
            RosensteinParams { embed_dim: 3, delay: 2, theiler_window: 5, max_steps: 10, fit_range: (2, 9) },
        ] {
            let est = lyapunov_rosenstein(&s, &p).unwrap();
            let oracle = brute_force_curve(&x, &p);
            for (a, b) in est.divergence.iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn error_paths() {
        let short = Series::new(vec![0.1; 999]).unwrap();
        assert!(matches!(
            lyapunov_rosenstein(&short, &RosensteinParams::default()),
            Err(Error::SeriesTooShort { len: 999, .. })
        ));
        let flat = Series::new(vec![0.3; 2000]).unwrap();
        assert_eq!(
            lyapunov_rosenstein(&flat, &RosensteinParams::default()),
            Err(Error::ConstantSeries)
        );
        let bad = RosensteinParams { fit_range: (3, 20), ..Default::default() };
        assert!(matches!(lyapunov_rosenstein(&square_wave(2000), &bad), Err(Error::InvalidParameter(_))));
        let bad = RosensteinParams { delay: 0, ..Default::default() };
        assert!(matches!(lyapunov_rosenstein(&square_wave(2000), &bad), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn slope_fit() {
        let curve: Vec<f64> = (0..10).map(|t| 0.7 * t as f64 - 3.0).collect();
        assert!((fit_slope(&curve, (1, 8)) - 0.7).abs() < 1e-12);
    }
}
