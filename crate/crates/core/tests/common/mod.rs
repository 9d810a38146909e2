//! Reference computations that do not go through the library's step or search
//! code paths.

#![allow(dead_code)]

use std::collections::HashMap;

/// Odd prime with 2 a quadratic non-residue, so orbits of `a / Q` under the
/// doubling-and-folding map are very long.
pub const RATIONAL_MODULUS: u128 = 1_152_921_504_606_849_707;

/// Exact tent orbit of `a0 / Q` computed on numerators, returned as floats.
/// The real map is evaluated without rounding, so the orbit never collapses the
/// way a floating-point iteration does after ~55 steps.
pub fn rational_tent_orbit(a0: u128, len: usize) -> Vec<f64> {
    let q = RATIONAL_MODULUS;
    let mut a = a0 % q;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(a as f64 / q as f64);
        a = if 2 * a < q { 2 * a } else { 2 * (q - a) };
    }
    out
}

/// Numerator of `tent(w / M) * M` with `M = 2^k - 1`; exact since M is odd.
pub fn tent_numerator(w: u128, mask: u128) -> u128 {
    if 2 * w < mask {
        2 * w
    } else {
        2 * (mask - w)
    }
}

/// The map written out bit by bit: `b_i` MSB-first, fold, shift, inject.
pub fn bitwise_step(k: u32, w: u64, perturbed: bool) -> u64 {
    let bit = |i: u32| (w >> (k - 1 - i)) & 1;
    let b0 = bit(0);
    let mut next = 0u64;
    for i in 0..k - 1 {
        next = (next << 1) | (bit(i + 1) ^ b0);
    }
    let p = if perturbed { bit(k - 1) ^ bit(k - 2) } else { 0 };
    (next << 1) | p
}

/// Transient, period and cycle entry state by walking with a visited map.
pub fn visited_walk(k: u32, seed: u64, perturbed: bool) -> (u64, u64, u64) {
    let mut seen = HashMap::new();
    let mut w = seed;
    let mut i = 0u64;
    while !seen.contains_key(&w) {
        seen.insert(w, i);
        w = bitwise_step(k, w, perturbed);
        i += 1;
    }
    let first = seen[&w];
    (first, i - first, w)
}
