//! Word-level model of the polarized fixed-point tent map.
//!
//! A state is a `k`-bit word `b_0 b_1 ... b_{k-1}`, `b_0` being the most
//! significant bit. The word `w` stands for the real value `w / (2^k - 1)`, so the
//! all-ones word is exactly one and `1 - x` is the bitwise complement of `x`.
//!
//! One step of the map:
//!
//! ```text
//! t = if b_0 == 1 { !w } else { w }      // conditional complement, MSB of t is 0
//! p = b_{k-1} ^ b_{k-2}                  // perturbation bit (0 when disabled)
//! w' = ((t << 1) | p) & mask
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Register width `k`, the number of bits of a state word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct BitWidth(u32);

impl BitWidth {
    pub const MIN: u32 = 2;
    pub const MAX: u32 = 64;

    pub fn new(k: u32) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&k) {
            Ok(Self(k))
        } else {
            Err(Error::WidthOutOfRange(k))
        }
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    /// The all-ones word `2^k - 1`, which represents 1.
    #[inline]
    pub fn mask(self) -> u64 {
        u64::MAX >> (64 - self.0)
    }

    /// Number of distinct words, `2^k`. Saturates to `u64::MAX + 1` only for k = 64,
    /// hence the `u128`.
    #[inline]
    pub fn word_count(self) -> u128 {
        1u128 << self.0
    }

    /// Spacing between adjacent decoded values, `1 / (2^k - 1)`.
    pub fn ulp_star(self) -> f64 {
        1.0 / self.mask() as f64
    }

    pub fn word(self, w: u64) -> Result<StateWord> {
        StateWord::new(w, self)
    }

    pub fn all_ones(self) -> StateWord {
        StateWord(self.mask())
    }

    /// Decodes `w` as `w / (2^k - 1)`.
    pub fn decode(self, w: StateWord) -> DecodedSample {
        DecodedSample(w.0 as f64 / self.mask() as f64)
    }

    /// Nearest word to `x * (2^k - 1)`, ties rounded up.
    ///
    /// The product is formed exactly from the binary expansion of `x`, so the
    /// rounding is exact for every width.
    pub fn encode(self, x: DecodedSample) -> StateWord {
        let x = x.0;
        if x == 0.0 {
            return StateWord(0);
        }
        let bits = x.to_bits();
        let exp_field = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, exp) = if exp_field == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_field - 1075)
        };
        // x = mantissa * 2^exp with exp <= -52 because x <= 1.
        let shift = (-exp) as u32;
        if shift >= 120 {
            return StateWord(0);
        }
        let product = mantissa as u128 * self.mask() as u128;
        let rounded = (product + (1u128 << (shift - 1))) >> shift;
        StateWord(rounded as u64)
    }

    /// Bitwise complement restricted to `k` bits: `(2^k - 1) - w`.
    #[inline]
    pub fn complement(self, w: StateWord) -> StateWord {
        StateWord(!w.0 & self.mask())
    }

    /// `b_{k-1} ^ b_{k-2}`, the XOR of the two least significant bits.
    ///
    /// Unchanged by [`complement`](Self::complement) since both bits flip.
    #[inline]
    pub fn perturbation_bit(self, w: StateWord) -> bool {
        (w.0 ^ (w.0 >> 1)) & 1 == 1
    }

    /// Bit `b_i`, counted from the most significant end.
    #[inline]
    pub fn bit(self, w: StateWord, i: u32) -> bool {
        debug_assert!(i < self.0);
        (w.0 >> (self.0 - 1 - i)) & 1 == 1
    }

    pub fn is_degenerate_seed(self, w: StateWord) -> bool {
        w.0 == 0 || w.0 == self.mask()
    }
}

impl TryFrom<u32> for BitWidth {
    type Error = Error;

    fn try_from(k: u32) -> Result<Self> {
        Self::new(k)
    }
}

impl From<BitWidth> for u32 {
    fn from(w: BitWidth) -> u32 {
        w.0
    }
}

impl fmt::Display for BitWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Register content. Only meaningful together with the [`BitWidth`] it was
/// validated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StateWord(u64);

impl StateWord {
    pub fn new(w: u64, width: BitWidth) -> Result<Self> {
        if w & !width.mask() == 0 {
            Ok(Self(w))
        } else {
            Err(Error::WordOutOfRange {
                word: w,
                width: width.bits(),
            })
        }
    }

    /// Wraps `w` without checking it against a width. Callers guarantee `w` fits.
    #[inline]
    pub(crate) fn from_raw(w: u64) -> Self {
        Self(w)
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::LowerHex for StateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl fmt::UpperHex for StateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::UpperHex::fmt(&self.0, f)
    }
}

/// A real value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct DecodedSample(f64);

impl DecodedSample {
    pub fn new(x: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&x) {
            Ok(Self(x))
        } else {
            Err(Error::SampleOutOfRange(x))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Which state bit is emitted as the generator output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tap {
    /// `b_0`, the bit that decides the branch of the next step.
    #[default]
    Msb,
    Lsb,
}

impl Tap {
    pub fn bit(self, width: BitWidth, w: StateWord) -> bool {
        match self {
            Tap::Msb => width.bit(w, 0),
            Tap::Lsb => w.0 & 1 == 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MapConfig {
    pub width: BitWidth,
    pub perturbed: bool,
}

impl MapConfig {
    pub fn new(width: BitWidth, perturbed: bool) -> Self {
        Self { width, perturbed }
    }

    /// The control parameter. Doubling is a shift, so only 2 is realizable.
    pub const fn mu(&self) -> f64 {
        2.0
    }

    pub fn step(&self, w: StateWord) -> StateWord {
        let width = self.width;
        let t = if width.bit(w, 0) { width.complement(w) } else { w };
        debug_assert!(!width.bit(t, 0), "shift would drop a set bit");
        let p = self.perturbed && width.perturbation_bit(w);
        StateWord(((t.0 << 1) | p as u64) & width.mask())
    }

    /// `[w0, step(w0), ..., step^n(w0)]`, length `n + 1`.
    pub fn iterate(&self, w0: StateWord, n: usize) -> Vec<StateWord> {
        self.trajectory(w0).take(n + 1).collect()
    }

    /// Endless orbit starting at (and including) `w0`.
    pub fn trajectory(&self, w0: StateWord) -> Trajectory {
        Trajectory {
            config: *self,
            next: w0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    config: MapConfig,
    next: StateWord,
}

impl Iterator for Trajectory {
    type Item = StateWord;

    fn next(&mut self) -> Option<StateWord> {
        let current = self.next;
        self.next = self.config.step(current);
        Some(current)
    }
}

/// Real tent map, `mu * x` below one half and `mu * (1 - x)` from one half on.
pub fn tent_exact(x: f64, mu: f64) -> f64 {
    if x < 0.5 {
        mu * x
    } else {
        mu * (1.0 - x)
    }
}
