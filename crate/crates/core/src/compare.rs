//! Elements-per-bit comparison against published tent map generators.

use serde::Serialize;

use crate::map::BitWidth;
use crate::netlist::build_tent_netlist;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub source: String,
    pub bits: u32,
    pub elements: u64,
    pub ratio: f64,
}

impl ComparisonRow {
    pub fn new(source: impl Into<String>, bits: u32, elements: u64) -> Self {
        Self {
            source: source.into(),
            bits,
            elements,
            ratio: elements as f64 / bits as f64,
        }
    }

    /// Ratio rounded half away from zero to three decimals.
    pub fn ratio_3dp(&self) -> String {
        format!("{:.3}", (self.ratio * 1000.0).round() / 1000.0)
    }
}

/// Published element counts, used as fixed constants.
pub const LITERATURE: [(&str, u32, u64); 3] = [
    ("Khani and Ahmadi (2013)", 10, 55),
    ("Sreenath and Narayanan (2018)", 32, 161),
    ("Sreenath and Narayanan (2018)", 64, 321),
];

/// Row for this circuit at `width`, counted from the built netlist.
pub fn this_work(width: BitWidth) -> ComparisonRow {
    let total = build_tent_netlist(width).element_stats().total;
    ComparisonRow::new("polarized tent map", width.bits(), total as u64)
}

pub fn comparison_table(widths: &[BitWidth]) -> Vec<ComparisonRow> {
    widths
        .iter()
        .map(|&w| this_work(w))
        .chain(LITERATURE.iter().map(|&(s, b, e)| ComparisonRow::new(s, b, e)))
        .collect()
}
