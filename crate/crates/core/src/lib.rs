//! Polarized fixed-point tent map.
//!
//! The map `x -> 2x` for `x < 1/2` and `x -> 2(1 - x)` otherwise is realized on a
//! `k`-bit register in which the all-ones word stands for exactly one. Under that
//! convention `1 - x` is a bitwise complement and the doubling is a left shift, so
//! one step costs a bank of XOR gates, a shift register and a load multiplexer.
//! An extra XOR of the two least significant bits is fed into the shift register
//! to keep the orbit away from short cycles.
//!
//! * [`map`] holds the word-level model and the real-valued reference map.
//! * [`netlist`] is the gate-level circuit with a two-phase synchronous simulator.
//! * [`analysis`] provides the Lyapunov, entropy, autocorrelation, histogram and
//!   cycle-structure measurements, plus CSV writers.
//! * [`compare`] has the elements-per-bit comparison table.

pub mod analysis;
pub mod compare;
mod error;
pub mod map;
pub mod netlist;

pub use error::{Error, Result};
pub use map::{tent_exact, BitWidth, DecodedSample, MapConfig, StateWord, Tap};
