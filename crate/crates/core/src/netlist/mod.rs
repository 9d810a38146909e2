//! Gate-level model of the tent map circuit.
//!
//! For a `k`-bit register the circuit has
//!
//! * `k - 1` XOR gates forming the complement bank, `c_i = q_0 ^ q_i` for
//!   `i = 1..k-1` (`q_0` itself is shifted out and needs no gate),
//! * one perturbation XOR, `p = q_{k-1} ^ q_{k-2}`,
//! * one `k`-bit 2-to-1 multiplexer choosing between the seed inputs (load) and
//!   the shifted word `c_1 .. c_{k-1} p` (run),
//! * `k` D flip-flops holding `q_0 .. q_{k-1}`.
//!
//! That is `2k + 1` elements. The unperturbed variant replaces `p` by a tie-low
//! net and has `2k`.

mod sim;
mod text;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

pub use sim::SimState;

use crate::error::{Error, Result};
use crate::map::BitWidth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NetId(usize);

impl NetId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    /// Two-input XOR.
    Xor2,
    /// D flip-flop, one data input and one output.
    Dff,
    /// Multi-bit 2-to-1 multiplexer. Inputs are `[select, a_0.., b_0..]`, outputs
    /// are `out_i = select ? a_i : b_i`.
    Mux,
}

impl ElementKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ElementKind::Xor2 => "XOR2",
            ElementKind::Dff => "DFF",
            ElementKind::Mux => "MUX",
        }
    }

    fn is_combinational(self) -> bool {
        !matches!(self, ElementKind::Dff)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub id: String,
    pub kind: ElementKind,
    pub inputs: Vec<NetId>,
    pub outputs: Vec<NetId>,
}

/// Per-kind element counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Census {
    pub xor2: usize,
    pub dff: usize,
    pub mux: usize,
    pub total: usize,
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "XOR2 {}, DFF {}, MUX {}, total {}",
            self.xor2, self.dff, self.mux, self.total
        )
    }
}

/// A validated netlist: every net has one driver, arities are right and the
/// combinational part is acyclic.
#[derive(Debug, Clone)]
pub struct Netlist {
    width: BitWidth,
    net_names: Vec<String>,
    elements: Vec<Element>,
    select: NetId,
    seed_inputs: Vec<NetId>,
    tie_low: Option<NetId>,
    /// DFF element indices, most significant bit first.
    registers: Vec<usize>,
    /// Combinational element indices in evaluation order.
    comb_order: Vec<usize>,
}

/// Unvalidated netlist parts, see [`Netlist::from_parts`].
#[derive(Debug, Clone, Default)]
pub struct NetlistParts {
    pub nets: Vec<String>,
    pub elements: Vec<Element>,
    pub select: Option<NetId>,
    pub seed_inputs: Vec<NetId>,
    pub tie_low: Option<NetId>,
}

impl NetlistParts {
    /// Returns the id of `name`, creating the net if needed.
    pub fn net(&mut self, name: &str) -> NetId {
        match self.nets.iter().position(|n| n == name) {
            Some(i) => NetId(i),
            None => {
                self.nets.push(name.to_string());
                NetId(self.nets.len() - 1)
            }
        }
    }
}

/// The perturbed tent map circuit for `width`.
pub fn build_tent_netlist(width: BitWidth) -> Netlist {
    build_tent_netlist_with(width, true)
}

/// The tent map circuit; with `perturbed == false` the shift register's serial
/// input is tied low instead of driven by the perturbation gate.
pub fn build_tent_netlist_with(width: BitWidth, perturbed: bool) -> Netlist {
    let k = width.bits() as usize;
    let mut parts = NetlistParts::default();
    let q: Vec<NetId> = (0..k).map(|i| parts.net(&format!("q{i}"))).collect();
    let select = parts.net("load");
    let seeds: Vec<NetId> = (0..k).map(|i| parts.net(&format!("seed{i}"))).collect();

    let mut shifted = Vec::with_capacity(k);
    for i in 1..k {
        let c = parts.net(&format!("c{i}"));
        parts.elements.push(Element {
            id: format!("xc{i}"),
            kind: ElementKind::Xor2,
            inputs: vec![q[0], q[i]],
            outputs: vec![c],
        });
        shifted.push(c);
    }
    if perturbed {
        let p = parts.net("p");
        parts.elements.push(Element {
            id: "xp".into(),
            kind: ElementKind::Xor2,
            inputs: vec![q[k - 1], q[k - 2]],
            outputs: vec![p],
        });
        shifted.push(p);
    } else {
        let zero = parts.net("zero");
        parts.tie_low = Some(zero);
        shifted.push(zero);
    }

    let d: Vec<NetId> = (0..k).map(|i| parts.net(&format!("d{i}"))).collect();
    let mut mux_inputs = vec![select];
    mux_inputs.extend(&seeds);
    mux_inputs.extend(&shifted);
    parts.elements.push(Element {
        id: "mux".into(),
        kind: ElementKind::Mux,
        inputs: mux_inputs,
        outputs: d.clone(),
    });
    for i in 0..k {
        parts.elements.push(Element {
            id: format!("ff{i}"),
            kind: ElementKind::Dff,
            inputs: vec![d[i]],
            outputs: vec![q[i]],
        });
    }
    parts.select = Some(select);
    parts.seed_inputs = seeds;

    Netlist::from_parts(width, parts).expect("tent netlist is well formed")
}

impl Netlist {
    /// Validates `parts` and computes the combinational evaluation order.
    ///
    /// The DFFs, in element order, form the state register from `b_0` down.
    pub fn from_parts(width: BitWidth, parts: NetlistParts) -> Result<Self> {
        let k = width.bits() as usize;
        let structure = |msg: String| Err(Error::Structure(msg));
        let net_count = parts.nets.len();
        let Some(select) = parts.select else {
            return structure("missing select input".into());
        };
        if parts.seed_inputs.len() != k {
            return structure(format!(
                "expected {k} seed inputs, found {}",
                parts.seed_inputs.len()
            ));
        }

        let mut seen_ids = HashMap::new();
        for e in &parts.elements {
            if seen_ids.insert(e.id.as_str(), ()).is_some() {
                return structure(format!("duplicate element id {}", e.id));
            }
            if let Some(n) = e.inputs.iter().chain(&e.outputs).find(|n| n.0 >= net_count) {
                return structure(format!("element {} references unknown net {}", e.id, n.0));
            }
            let ok = match e.kind {
                ElementKind::Xor2 => e.inputs.len() == 2 && e.outputs.len() == 1,
                ElementKind::Dff => e.inputs.len() == 1 && e.outputs.len() == 1,
                ElementKind::Mux => !e.outputs.is_empty() && e.inputs.len() == 1 + 2 * e.outputs.len(),
            };
            if !ok {
                return structure(format!(
                    "{} {} has {} inputs and {} outputs",
                    e.kind.keyword(),
                    e.id,
                    e.inputs.len(),
                    e.outputs.len()
                ));
            }
        }

        // One driver per net.
        #[derive(Clone, Copy)]
        enum Driver {
            Port,
            Element(usize),
        }
        let mut driver: Vec<Option<Driver>> = vec![None; net_count];
        let ports = std::iter::once(select)
            .chain(parts.seed_inputs.iter().copied())
            .chain(parts.tie_low);
        let drives = ports
            .map(|n| (n, Driver::Port))
            .chain(parts.elements.iter().enumerate().flat_map(|(i, e)| {
                e.outputs.iter().map(move |&n| (n, Driver::Element(i)))
            }));
        for (net, d) in drives {
            if net.0 >= net_count {
                return structure(format!("port references unknown net {}", net.0));
            }
            if driver[net.0].replace(d).is_some() {
                return structure(format!("net {} has more than one driver", parts.nets[net.0]));
            }
        }
        if let Some(i) = driver.iter().position(Option::is_none) {
            return structure(format!("net {} has no driver", parts.nets[i]));
        }

        let registers: Vec<usize> = parts
            .elements
            .iter()
            .enumerate()
            .filter(|(_, e)| e.kind == ElementKind::Dff)
            .map(|(i, _)| i)
            .collect();
        if registers.len() != k {
            return structure(format!("expected {k} flip-flops, found {}", registers.len()));
        }

        // Kahn's algorithm over the combinational elements. DFF outputs and ports
        // are sources, so any leftover element sits on a loop with no register.
        let comb: Vec<usize> = (0..parts.elements.len())
            .filter(|&i| parts.elements[i].kind.is_combinational())
            .collect();
        let comb_driver = |n: NetId| match driver[n.0] {
            Some(Driver::Element(j)) if parts.elements[j].kind.is_combinational() => Some(j),
            _ => None,
        };
        let mut pending: HashMap<usize, usize> = HashMap::new();
        let mut fanout: HashMap<usize, Vec<usize>> = HashMap::new();
        for &i in &comb {
            let mut deps: Vec<usize> = parts.elements[i]
                .inputs
                .iter()
                .filter_map(|&n| comb_driver(n))
                .collect();
            deps.sort_unstable();
            deps.dedup();
            pending.insert(i, deps.len());
            for j in deps {
                fanout.entry(j).or_default().push(i);
            }
        }
        let mut ready: Vec<usize> = comb.iter().copied().filter(|i| pending[i] == 0).collect();
        ready.reverse();
        let mut comb_order = Vec::with_capacity(comb.len());
        while let Some(i) = ready.pop() {
            comb_order.push(i);
            for &j in fanout.get(&i).map(Vec::as_slice).unwrap_or(&[]) {
                let left = pending.get_mut(&j).expect("combinational element");
                *left -= 1;
                if *left == 0 {
                    ready.push(j);
                }
            }
        }
        if comb_order.len() != comb.len() {
            let stuck = comb
                .iter()
                .find(|i| !comb_order.contains(i))
                .map(|&i| parts.elements[i].id.clone())
                .unwrap_or_default();
            return structure(format!("combinational loop through {stuck}"));
        }

        Ok(Self {
            width,
            net_names: parts.nets,
            elements: parts.elements,
            select,
            seed_inputs: parts.seed_inputs,
            tie_low: parts.tie_low,
            registers,
            comb_order,
        })
    }

    pub fn width(&self) -> BitWidth {
        self.width
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn net_names(&self) -> &[String] {
        &self.net_names
    }

    pub fn net_name(&self, n: NetId) -> &str {
        &self.net_names[n.0]
    }

    pub fn select(&self) -> NetId {
        self.select
    }

    pub fn seed_inputs(&self) -> &[NetId] {
        &self.seed_inputs
    }

    pub fn tie_low(&self) -> Option<NetId> {
        self.tie_low
    }

    pub fn element_stats(&self) -> Census {
        let count = |kind| self.elements.iter().filter(|e| e.kind == kind).count();
        let (xor2, dff, mux) = (
            count(ElementKind::Xor2),
            count(ElementKind::Dff),
            count(ElementKind::Mux),
        );
        Census {
            xor2,
            dff,
            mux,
            total: xor2 + dff + mux,
        }
    }
}
