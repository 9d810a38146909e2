//! CSV writers. One header row, dot decimal separator, shortest round-trip floats.

use std::io::{self, Write};

use super::{AutocorrResult, CycleReport, Histogram, LyapunovEstimate};
use crate::map::BitWidth;

pub fn write_histogram<W: Write>(mut out: W, hist: &Histogram) -> io::Result<()> {
    writeln!(out, "bin,count")?;
    for (b, c) in hist.counts.iter().enumerate() {
        writeln!(out, "{b},{c}")?;
    }
    Ok(())
}

pub fn write_autocorrelation<W: Write>(mut out: W, ac: &AutocorrResult) -> io::Result<()> {
    writeln!(out, "lag,r")?;
    for (lag, r) in ac.r.iter().enumerate() {
        writeln!(out, "{lag},{r}")?;
    }
    Ok(())
}

pub fn write_divergence<W: Write>(mut out: W, est: &LyapunovEstimate) -> io::Result<()> {
    writeln!(out, "step,mean_log_divergence")?;
    for (step, d) in est.divergence.iter().enumerate() {
        writeln!(out, "{step},{d}")?;
    }
    Ok(())
}

pub fn write_first_return<W: Write>(mut out: W, pairs: &[(f64, f64)]) -> io::Result<()> {
    writeln!(out, "x_n,x_next")?;
    for (x, y) in pairs {
        writeln!(out, "{x},{y}")?;
    }
    Ok(())
}

pub fn write_cycles<W: Write>(mut out: W, width: BitWidth, reports: &[CycleReport]) -> io::Result<()> {
    let digits = width.bits().div_ceil(4) as usize;
    writeln!(out, "seed,transient,period,reaches_zero")?;
    for r in reports {
        writeln!(
            out,
            "0x{:0digits$X},{},{},{}",
            r.seed, r.transient, r.period, r.reaches_zero
        )?;
    }
    Ok(())
}
