use serde::Serialize;

use super::{ElementKind, Netlist};
use crate::map::{BitWidth, StateWord};

/// Flip-flop contents plus a clock counter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimState {
    /// Register bits, `b_0` first.
    pub dff_values: Vec<bool>,
    pub cycle: u64,
}

impl SimState {
    /// All flip-flops cleared. The circuit has no reset, so this is simply the
    /// assumed power-on content.
    pub fn cleared(width: BitWidth) -> Self {
        Self {
            dff_values: vec![false; width.bits() as usize],
            cycle: 0,
        }
    }

    pub fn from_word(width: BitWidth, w: StateWord) -> Self {
        Self {
            dff_values: (0..width.bits()).map(|i| width.bit(w, i)).collect(),
            cycle: 0,
        }
    }

    pub fn word(&self) -> StateWord {
        let w = self
            .dff_values
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | b as u64);
        StateWord::from_raw(w)
    }
}

impl Netlist {
    /// One clock: settle the combinational logic from the register outputs and
    /// ports, then load every flip-flop at once.
    pub fn simulate_cycle(&self, state: &SimState, load: bool, seed: StateWord) -> SimState {
        let mut values = vec![false; self.net_names.len()];
        for (&reg, &bit) in self.registers.iter().zip(&state.dff_values) {
            values[self.elements[reg].outputs[0].0] = bit;
        }
        values[self.select.0] = load;
        for (i, n) in self.seed_inputs.iter().enumerate() {
            values[n.0] = self.width.bit(seed, i as u32);
        }
        if let Some(z) = self.tie_low {
            values[z.0] = false;
        }

        for &idx in &self.comb_order {
            let e = &self.elements[idx];
            match e.kind {
                ElementKind::Xor2 => {
                    values[e.outputs[0].0] = values[e.inputs[0].0] ^ values[e.inputs[1].0];
                }
                ElementKind::Mux => {
                    let m = e.outputs.len();
                    let sel = values[e.inputs[0].0];
                    for i in 0..m {
                        let src = if sel { e.inputs[1 + i] } else { e.inputs[1 + m + i] };
                        values[e.outputs[i].0] = values[src.0];
                    }
                }
                ElementKind::Dff => unreachable!("registers are not in the combinational order"),
            }
        }

        SimState {
            dff_values: self
                .registers
                .iter()
                .map(|&reg| values[self.elements[reg].inputs[0].0])
                .collect(),
            cycle: state.cycle + 1,
        }
    }

    /// One load cycle with `seed` followed by `n` run cycles. Returns the register
    /// content after each, `n + 1` words in total.
    pub fn run(&self, seed: StateWord, n: usize) -> Vec<StateWord> {
        let mut state = self.simulate_cycle(&SimState::cleared(self.width), true, seed);
        let mut out = Vec::with_capacity(n + 1);
        out.push(state.word());
        for _ in 0..n {
            state = self.simulate_cycle(&state, false, seed);
            out.push(state.word());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::MapConfig;
    use crate::netlist::{build_tent_netlist, build_tent_netlist_with};

    fn width(k: u32) -> BitWidth {
        BitWidth::new(k).unwrap()
    }

    fn words(v: Vec<StateWord>) -> Vec<u64> {
        v.into_iter().map(StateWord::get).collect()
    }

    #[test]
    fn run_cycle_matches_step_examples() {
        let w8 = width(8);
        let n = build_tent_netlist(w8);
        let s = SimState::from_word(w8, w8.word(64).unwrap());
        let next = n.simulate_cycle(&s, false, w8.word(0).unwrap());
        assert_eq!(next.word().get(), 128);
        assert_eq!(next.cycle, 1);

        let w4 = width(4);
        let n = build_tent_netlist(w4);
        let s = SimState::from_word(w4, w4.word(0b1000).unwrap());
        assert_eq!(n.simulate_cycle(&s, false, w4.word(0).unwrap()).word().get(), 0b1110);
    }

    #[test]
    fn load_overrides_state() {
        for k in [2, 5, 8, 64] {
            let w = width(k);
            let n = build_tent_netlist(w);
            let s = SimState::from_word(w, w.word(1).unwrap());
            let seed = w.word(w.mask() >> 1).unwrap();
            assert_eq!(n.simulate_cycle(&s, true, seed).word(), seed);
        }
    }

    #[test]
    fn run_examples() {
        let w4 = width(4);
        let n = build_tent_netlist(w4);
        assert_eq!(words(n.run(w4.word(8).unwrap(), 7)), [8, 14, 3, 6, 13, 5, 11, 8]);
        assert_eq!(words(n.run(w4.word(0).unwrap(), 2)), [0, 0, 0]);
        let w8 = width(8);
        assert_eq!(words(build_tent_netlist(w8).run(w8.word(192).unwrap(), 1)), [192, 126]);
    }

    #[test]
    fn matches_word_model_for_small_widths() {
        for k in 2..=10 {
            let w = width(k);
            for perturbed in [true, false] {
                let n = build_tent_netlist_with(w, perturbed);
                let c = MapConfig::new(w, perturbed);
                for seed in 0..=w.mask() {
                    let seed = w.word(seed).unwrap();
                    assert_eq!(n.run(seed, 64), c.iterate(seed, 64), "k={k} seed={seed:x}");
                }
            }
        }
    }

    #[test]
    fn wide_register_matches_word_model() {
        let w = width(64);
        let n = build_tent_netlist(w);
        let seed = w.word(0x5A3C_0F1E_9B7D_2468).unwrap();
        assert_eq!(n.run(seed, 500), MapConfig::new(w, true).iterate(seed, 500));
    }

    #[test]
    fn deterministic() {
        let w = width(12);
        let n = build_tent_netlist(w);
        let seed = w.word(0xABC).unwrap();
        assert_eq!(n.run(seed, 300), n.run(seed, 300));
    }
}
