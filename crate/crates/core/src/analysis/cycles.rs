//! Orbit structure of the finite map.
//!
//! Every orbit of a map on `2^k` states ends in a cycle. [`cycle_detect`] finds
//! the transient and period of one seed in constant memory (Brent's method);
//! [`cycle_reports`] labels every state at once with a linear walk of the
//! functional graph.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{BitWidth, MapConfig, StateWord};

/// Widths above this are rejected by the exhaustive census.
pub const MAX_CENSUS_BITS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub seed: StateWord,
    /// Steps before the orbit first lands on its cycle.
    pub transient: u64,
    /// Minimal cycle length.
    pub period: u64,
    /// The cycle is the fixed point 0.
    pub reaches_zero: bool,
}

pub fn cycle_detect(config: &MapConfig, seed: StateWord) -> CycleReport {
    let f = |w| config.step(w);

    // Brent: find the period with a power-of-two window.
    let mut power = 1u64;
    let mut period = 1u64;
    let mut tortoise = seed;
    let mut hare = f(seed);
    while tortoise != hare {
        if power == period {
            tortoise = hare;
            power *= 2;
            period = 0;
        }
        hare = f(hare);
        period += 1;
    }

    // Walk two pointers `period` apart until they meet at the cycle entry.
    let mut tortoise = seed;
    let mut hare = seed;
    for _ in 0..period {
        hare = f(hare);
    }
    let mut transient = 0u64;
    while tortoise != hare {
        tortoise = f(tortoise);
        hare = f(hare);
        transient += 1;
    }

    CycleReport {
        seed,
        transient,
        period,
        reaches_zero: period == 1 && tortoise.get() == 0,
    }
}

/// Transient, period and zero flag for every seed `0..2^k`, indexed by seed.
pub fn cycle_reports(width: BitWidth, perturbed: bool) -> Result<Vec<CycleReport>> {
    if width.bits() > MAX_CENSUS_BITS {
        return Err(Error::CensusBound {
            width: width.bits(),
            max: MAX_CENSUS_BITS,
        });
    }
    let config = MapConfig::new(width, perturbed);
    let states = 1usize << width.bits();
    let next = |s: usize| config.step(StateWord::from_raw(s as u64)).get() as usize;

    const UNSEEN: u32 = u32::MAX;
    const ON_PATH: u32 = u32::MAX - 1;
    // `mark[s]` is UNSEEN, ON_PATH, or the resolved transient of s.
    let mut mark = vec![UNSEEN; states];
    let mut period = vec![0u32; states];
    let mut zero = vec![false; states];
    let mut path = Vec::new();

    for start in 0..states {
        if mark[start] != UNSEEN {
            continue;
        }
        path.clear();
        let mut s = start;
        while mark[s] == UNSEEN {
            mark[s] = ON_PATH;
            path.push(s);
            s = next(s);
        }
        // `s` is either on the current path (new cycle) or already resolved.
        let mut tail_len = path.len();
        if mark[s] == ON_PATH {
            let entry = path.iter().position(|&p| p == s).expect("on path");
            let len = (path.len() - entry) as u32;
            let is_zero = len == 1 && s == 0;
            for &c in &path[entry..] {
                mark[c] = 0;
                period[c] = len;
                zero[c] = is_zero;
            }
            tail_len = entry;
            s = path[entry];
        }
        let (mut t, p, z) = (mark[s], period[s], zero[s]);
        for &c in path[..tail_len].iter().rev() {
            t += 1;
            mark[c] = t;
            period[c] = p;
            zero[c] = z;
        }
    }

    Ok((0..states)
        .map(|s| CycleReport {
            seed: StateWord::from_raw(s as u64),
            transient: mark[s] as u64,
            period: period[s] as u64,
            reaches_zero: zero[s],
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusSummary {
    pub width: u32,
    pub perturbed: bool,
    pub seeds: u64,
    pub mean_period: f64,
    pub max_period: u64,
    pub max_transient: u64,
    pub zero_reaching: u64,
    /// Number of distinct cycles in the state space.
    pub cycles: u64,
}

pub fn cycle_census(width: BitWidth, perturbed: bool) -> Result<CensusSummary> {
    let reports = cycle_reports(width, perturbed)?;
    Ok(summarize(width, perturbed, &reports))
}

fn summarize(width: BitWidth, perturbed: bool, reports: &[CycleReport]) -> CensusSummary {
    let seeds = reports.len() as u64;
    // each cycle contributes `period` states with transient 0
    let cycles = reports
        .iter()
        .filter(|r| r.transient == 0)
        .map(|r| 1.0 / r.period as f64)
        .sum::<f64>()
        .round() as u64;
    CensusSummary {
        width: width.bits(),
        perturbed,
        seeds,
        mean_period: reports.iter().map(|r| r.period as f64).sum::<f64>() / seeds as f64,
        max_period: reports.iter().map(|r| r.period).max().unwrap_or(0),
        max_transient: reports.iter().map(|r| r.transient).max().unwrap_or(0),
        zero_reaching: reports.iter().filter(|r| r.reaches_zero).count() as u64,
        cycles,
    }
}
