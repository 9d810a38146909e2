use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bit width {0} is outside the supported range {min}..={max}", min = crate::map::BitWidth::MIN, max = crate::map::BitWidth::MAX)]
    WidthOutOfRange(u32),
    #[error("word {word:#x} does not fit in {width} bits")]
    WordOutOfRange { word: u64, width: u32 },
    #[error("sample {0} is outside [0, 1]")]
    SampleOutOfRange(f64),
    #[error("series has {len} samples, at least {min} required")]
    SeriesTooShort { len: usize, min: usize },
    #[error("series is constant, variance is zero")]
    ConstantSeries,
    #[error("no valid nearest-neighbor pairs")]
    NoNeighbors,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("histogram has no nonzero counts")]
    EmptyCounts,
    #[error("exhaustive enumeration is limited to {max} bits, got {width}")]
    CensusBound { width: u32, max: u32 },
    #[error("netlist structure: {0}")]
    Structure(String),
    #[error("netlist parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
