//! `analyze`: runs the selected tests and writes one JSON report.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use tentmap::analysis::{self, csv, RosensteinParams, Series};
use tentmap::{tent_exact, BitWidth, MapConfig, StateWord, Tap};

use super::args::{AnalyzeArgs, TestName};
use super::{create, resolve_seed, seed_hex, trajectory, CmdResult, Failure, EXIT_ALL_FAILED};

#[derive(Debug, Serialize)]
pub struct Report {
    pub width: u32,
    pub seed: String,
    pub variant: &'static str,
    pub backend: &'static str,
    pub tap: Tap,
    pub n: usize,
    pub tests: Vec<TestEntry>,
}

#[derive(Debug, Serialize)]
pub struct TestEntry {
    pub test: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub summary: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub csv: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

struct Outcome {
    value: f64,
    summary: Value,
    csv: Vec<PathBuf>,
}

struct Context<'a> {
    width: BitWidth,
    words: &'a [StateWord],
    tap: Tap,
    out_dir: &'a Path,
}

impl Context<'_> {
    fn decoded(&self) -> Result<Series, String> {
        Series::from_words(self.width, self.words).map_err(|e| e.to_string())
    }

    fn bits(&self) -> Result<Series, String> {
        Series::from_output_bits(self.width, self.words, self.tap).map_err(|e| e.to_string())
    }

    fn write_csv(
        &self,
        name: &str,
        write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
    ) -> Result<PathBuf, String> {
        let path = self.out_dir.join(name);
        let mut out = create(&path).map_err(|f| f.message)?;
        write(&mut out)
            .and_then(|_| out.flush())
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        Ok(path)
    }
}

fn entropy(cx: &Context<'_>) -> Result<Outcome, String> {
    if cx.words.is_empty() {
        return Err("no samples".into());
    }
    let counts = analysis::bit_counts(cx.words.iter().map(|&w| cx.tap.bit(cx.width, w)));
    let bits = analysis::shannon_entropy(&counts).map_err(|e| e.to_string())?;
    let values = cx
        .decoded()
        .and_then(|s| analysis::histogram(&s, 64).map_err(|e| e.to_string()))
        .and_then(|h| analysis::shannon_entropy(&h.counts).map_err(|e| e.to_string()))
        .map(|r| r.h);
    Ok(Outcome {
        value: bits.h,
        summary: json!({
            "zeros": counts[0],
            "ones": counts[1],
            "value_entropy_64_bins": values.ok(),
        }),
        csv: vec![],
    })
}

fn autocorr(cx: &Context<'_>, max_lag: usize) -> Result<Outcome, String> {
    let bits = analysis::autocorrelation(&cx.bits()?, max_lag).map_err(|e| e.to_string())?;
    let (lag, max_abs) = bits.max_abs_off_zero();
    let mut csv = vec![cx.write_csv("autocorr.csv", |w| csv::write_autocorrelation(w, &bits))?];

    // Same statistic over the decoded values, reported alongside.
    let decoded = cx
        .decoded()
        .and_then(|s| analysis::autocorrelation(&s, max_lag).map_err(|e| e.to_string()));
    let decoded_summary = match &decoded {
        Ok(ac) => {
            csv.push(cx.write_csv("autocorr_decoded.csv", |w| csv::write_autocorrelation(w, ac))?);
            let (l, m) = ac.max_abs_off_zero();
            json!({ "max_abs_r": m, "lag_of_max": l })
        }
        Err(e) => json!({ "error": e }),
    };
    Ok(Outcome {
        value: max_abs,
        summary: json!({
            "r0": bits.r[0],
            "lag_of_max": lag,
            "decoded": decoded_summary,
        }),
        csv,
    })
}

fn lyapunov(cx: &Context<'_>, params: &RosensteinParams) -> Result<Outcome, String> {
    let est = analysis::lyapunov_rosenstein(&cx.decoded()?, params).map_err(|e| e.to_string())?;
    let path = cx.write_csv("divergence.csv", |w| csv::write_divergence(w, &est))?;
    Ok(Outcome {
        value: est.lambda,
        summary: json!({
            "neighbor_count": est.neighbor_count,
            "fit_range": est.fit_range,
            "analytic": analysis::lyapunov_direct(cx.words.len()),
        }),
        csv: vec![path],
    })
}

fn histogram(cx: &Context<'_>, bins: usize) -> Result<Outcome, String> {
    let hist = analysis::histogram(&cx.decoded()?, bins).map_err(|e| e.to_string())?;
    let path = cx.write_csv("histogram.csv", |w| csv::write_histogram(w, &hist))?;
    Ok(Outcome {
        value: hist.max_relative_deviation(),
        summary: json!({
            "chi_square": hist.chi_square,
            "expected": hist.expected,
            "min_count": hist.counts.iter().min(),
            "max_count": hist.counts.iter().max(),
        }),
        csv: vec![path],
    })
}

fn return_map(cx: &Context<'_>) -> Result<Outcome, String> {
    let pairs = analysis::first_return_pairs(&cx.decoded()?);
    let path = cx.write_csv("first_return.csv", |w| csv::write_first_return(w, &pairs))?;
    let max_gap = pairs
        .iter()
        .map(|&(x, y)| (y - tent_exact(x, 2.0)).abs())
        .fold(0.0, f64::max);
    Ok(Outcome {
        value: max_gap,
        summary: json!({ "pairs": pairs.len(), "ulp": cx.width.ulp_star() }),
        csv: vec![path],
    })
}

pub fn cmd_analyze(a: AnalyzeArgs) -> CmdResult {
    let width = a.map.width;
    let perturbed = !a.map.unperturbed;
    let config = MapConfig::new(width, perturbed);
    let seed = resolve_seed(width, a.seed)?;
    let words = match a.n {
        0 => vec![],
        n => trajectory(config, a.backend, seed, n - 1),
    };
    std::fs::create_dir_all(&a.out_dir)
        .map_err(|e| Failure::usage(format!("cannot create {}: {e}", a.out_dir.display())))?;

    let cx = Context {
        width,
        words: &words,
        tap: a.tap.into(),
        out_dir: &a.out_dir,
    };
    let lyap = RosensteinParams {
        embed_dim: a.embed_dim,
        delay: a.delay,
        theiler_window: a.theiler_window,
        max_steps: a.max_steps,
        fit_range: (a.fit_first, a.fit_last),
    };

    let mut tests = Vec::new();
    let mut selected: Vec<TestName> = Vec::new();
    for &t in &a.tests {
        if !selected.contains(&t) {
            selected.push(t);
        }
    }
    for t in selected {
        let (parameters, outcome) = match t {
            TestName::Entropy => (
                json!({ "symbols": "output bits", "base": 2 }),
                entropy(&cx),
            ),
            TestName::Autocorr => (
                json!({ "max_lag": a.max_lag, "series": "output bits" }),
                autocorr(&cx, a.max_lag),
            ),
            TestName::Lyapunov => (serde_json::to_value(lyap).expect("plain struct"), lyapunov(&cx, &lyap)),
            TestName::Histogram => (json!({ "bins": a.bins }), histogram(&cx, a.bins)),
            TestName::ReturnMap => (json!({}), return_map(&cx)),
        };
        tests.push(match outcome {
            Ok(o) => TestEntry {
                test: t.name(),
                value: Some(o.value),
                parameters,
                summary: o.summary,
                csv: o.csv.iter().map(|p| p.display().to_string()).collect(),
                error: None,
            },
            Err(e) => TestEntry {
                test: t.name(),
                value: None,
                parameters,
                summary: Value::Null,
                csv: vec![],
                error: Some(e),
            },
        });
    }

    let report = Report {
        width: width.bits(),
        seed: seed_hex(width, seed),
        variant: if perturbed { "perturbed" } else { "unperturbed" },
        backend: a.backend.name(),
        tap: cx.tap,
        n: words.len(),
        tests,
    };
    let text = serde_json::to_string_pretty(&report).expect("serializable report") + "\n";
    match &a.report {
        Some(path) => {
            let mut out = create(path)?;
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        }
        None => print!("{text}"),
    }

    if report.tests.iter().all(|t| t.error.is_some()) {
        return Err(Failure {
            code: EXIT_ALL_FAILED,
            message: "every selected analysis failed".into(),
        });
    }
    Ok(())
}
