pub mod args;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use tentmap::analysis::{self, csv};
use tentmap::compare::comparison_table;
use tentmap::netlist::{build_tent_netlist_with, Netlist};
use tentmap::{BitWidth, MapConfig, StateWord, Tap};

use args::{Backend, Command, CompareArgs, CyclesArgs, Format, GenArgs, NetlistArgs, SeedArg};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_ALL_FAILED: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

pub type CmdResult = Result<(), Failure>;

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::Gen(a) => cmd_gen(a),
        Command::Analyze(a) => report::cmd_analyze(a),
        Command::Netlist(a) => cmd_netlist(a),
        Command::Cycles(a) => cmd_cycles(a),
        Command::Compare(a) => cmd_compare(a),
    }
}

/// Turns the seed argument into a word, drawing from OS entropy for `random`.
/// Random draws skip the two degenerate words; explicit degenerate seeds are
/// accepted with a warning.
pub fn resolve_seed(width: BitWidth, seed: SeedArg) -> Result<StateWord, Failure> {
    let w = match seed {
        SeedArg::Value(v) => width.word(v).map_err(|e| Failure::usage(e.to_string()))?,
        SeedArg::Random => {
            let w = loop {
                let w = width.word(rand::random::<u64>() & width.mask()).expect("masked");
                if !width.is_degenerate_seed(w) {
                    break w;
                }
            };
            eprintln!("seed {}", seed_hex(width, w));
            w
        }
    };
    if width.is_degenerate_seed(w) {
        eprintln!(
            "warning: degenerate seed {}: the orbit falls into the fixed point 0",
            seed_hex(width, w)
        );
    }
    Ok(w)
}

pub fn seed_hex(width: BitWidth, w: StateWord) -> String {
    format!("0x{:0d$X}", w, d = hex_digits(width))
}

fn hex_digits(width: BitWidth) -> usize {
    width.bits().div_ceil(4) as usize
}

pub fn trajectory(config: MapConfig, backend: Backend, seed: StateWord, steps: usize) -> Vec<StateWord> {
    match backend {
        Backend::Word => config.iterate(seed, steps),
        Backend::Netlist => build_tent_netlist_with(config.width, config.perturbed).run(seed, steps),
    }
}

pub fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

/// File at `path`, or stdout for `None` and `-`.
fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) if p != Path::new("-") => Ok(Box::new(create(p)?)),
        _ => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn io_failure(path: Option<&Path>) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| {
        let target = path.map_or("stdout".to_string(), |p| p.display().to_string());
        Failure::usage(format!("cannot write {target}: {e}"))
    }
}

pub fn write_trajectory<W: Write>(
    mut out: W,
    width: BitWidth,
    words: &[StateWord],
    format: Format,
    tap: Tap,
) -> io::Result<()> {
    match format {
        Format::Bits => {
            for &w in words {
                writeln!(out, "{}", tap.bit(width, w) as u8)?;
            }
        }
        Format::Hex => {
            let d = hex_digits(width);
            for &w in words {
                writeln!(out, "{w:0d$X}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "index,word,value")?;
            for (i, &w) in words.iter().enumerate() {
                writeln!(out, "{i},{},{}", seed_hex(width, w), width.decode(w).get())?;
            }
        }
        Format::Raw => {
            for chunk in words.chunks(8) {
                let byte = chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &w)| acc | ((tap.bit(width, w) as u8) << (7 - i)));
                out.write_all(&[byte])?;
            }
        }
    }
    out.flush()
}

fn emit_trajectory(
    config: MapConfig,
    backend: Backend,
    seed: SeedArg,
    n: usize,
    output: &args::OutputArgs,
) -> CmdResult {
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let seed = resolve_seed(config.width, seed)?;
    let words = trajectory(config, backend, seed, n);
    let path = output.out.as_deref();
    write_trajectory(sink(path)?, config.width, &words, output.format, output.tap.into())
        .map_err(io_failure(path))
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let config = MapConfig::new(a.map.width, !a.map.unperturbed);
    emit_trajectory(config, a.backend, a.seed, a.n, &a.output)
}

fn cmd_netlist(a: NetlistArgs) -> CmdResult {
    let width = a.map.width;
    let netlist: Netlist = build_tent_netlist_with(width, !a.map.unperturbed);
    if a.stats {
        println!("{}", netlist.element_stats());
    }
    if let Some(path) = a.export.as_deref() {
        let path = Some(path);
        let mut out = sink(path)?;
        write!(out, "{netlist}")
            .and_then(|_| out.flush())
            .map_err(io_failure(path))?;
    }
    if a.simulate {
        let (Some(seed), Some(n)) = (a.seed, a.n) else {
            return Err(Failure::usage("--simulate needs --seed and --n"));
        };
        let config = MapConfig::new(width, !a.map.unperturbed);
        emit_trajectory(config, Backend::Netlist, seed, n, &a.output)?;
    }
    Ok(())
}

fn cmd_cycles(a: CyclesArgs) -> CmdResult {
    let width = a.map.width;
    let perturbed = !a.map.unperturbed;
    let variant = if perturbed { "perturbed" } else { "unperturbed" };
    let path = a.out.as_deref();

    let (reports, summary) = if a.exhaustive {
        let reports = analysis::cycle_reports(width, perturbed).map_err(|e| Failure::usage(e.to_string()))?;
        let s = analysis::cycle_census(width, perturbed).map_err(|e| Failure::usage(e.to_string()))?;
        let summary = format!(
            "# width {width}, {variant}\n\
             # seeds {}, zero-reaching {}, cycles {}, max period {}, mean period {:.4}, max transient {}",
            s.seeds, s.zero_reaching, s.cycles, s.max_period, s.mean_period, s.max_transient
        );
        (reports, summary)
    } else {
        let seed = resolve_seed(width, a.seed.expect("clap group"))?;
        let r = analysis::cycle_detect(&MapConfig::new(width, perturbed), seed);
        let summary = format!(
            "# width {width}, {variant}\n# seed {}: transient {}, period {}, reaches_zero {}",
            seed_hex(width, seed),
            r.transient,
            r.period,
            r.reaches_zero
        );
        (vec![r], summary)
    };

    let mut out = sink(path)?;
    csv::write_cycles(&mut out, width, &reports)
        .and_then(|_| out.flush())
        .map_err(io_failure(path))?;
    drop(out);
    println!("{summary}");
    Ok(())
}

fn cmd_compare(a: CompareArgs) -> CmdResult {
    println!("{:<32} {:>5} {:>9} {:>7}", "source", "bits", "elements", "ratio");
    for row in comparison_table(&a.widths) {
        println!(
            "{:<32} {:>5} {:>9} {:>7}",
            row.source,
            row.bits,
            row.elements,
            row.ratio_3dp()
        );
    }
    Ok(())
}
