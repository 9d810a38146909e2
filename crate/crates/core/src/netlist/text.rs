//! Line-oriented netlist text.
//!
//! ```text
//! WIDTH 4
//! SELECT load
//! SEED seed0 seed1 seed2 seed3
//! XOR2 xc1 c1 q0 q1
//! MUX mux d0,d1,d2,d3 load seed0 seed1 seed2 seed3 c1 c2 c3 p
//! DFF ff0 q0 d0
//! ```
//!
//! Element lines are `KIND id out_net in_net...`. A multiplexer lists its output
//! nets comma separated. `TIE0 net` declares a constant-low net. DFF lines appear
//! in register order, `b_0` first. Blank lines and `#` comments are ignored.

use std::fmt;
use std::str::FromStr;

use super::{Element, ElementKind, Netlist, NetlistParts};
use crate::error::Error;
use crate::map::BitWidth;

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "WIDTH {}", self.width)?;
        writeln!(f, "SELECT {}", self.net_name(self.select))?;
        write!(f, "SEED")?;
        for &n in &self.seed_inputs {
            write!(f, " {}", self.net_name(n))?;
        }
        writeln!(f)?;
        if let Some(z) = self.tie_low {
            writeln!(f, "TIE0 {}", self.net_name(z))?;
        }
        for e in &self.elements {
            let outs: Vec<&str> = e.outputs.iter().map(|&n| self.net_name(n)).collect();
            write!(f, "{} {} {}", e.kind.keyword(), e.id, outs.join(","))?;
            for &n in &e.inputs {
                write!(f, " {}", self.net_name(n))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Netlist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut width = None;
        let mut parts = NetlistParts::default();
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let keyword = tokens.next().expect("non-empty line");
            let rest: Vec<&str> = tokens.collect();

            if width.is_none() && keyword != "WIDTH" {
                return Err(err("expected WIDTH header first".into()));
            }
            match keyword {
                "WIDTH" => {
                    if width.is_some() {
                        return Err(err("duplicate WIDTH".into()));
                    }
                    let [k] = rest[..] else {
                        return Err(err("WIDTH takes one value".into()));
                    };
                    let k: u32 = k.parse().map_err(|_| err(format!("bad width {k:?}")))?;
                    width = Some(BitWidth::new(k).map_err(|e| err(e.to_string()))?);
                }
                "SELECT" => {
                    let [n] = rest[..] else {
                        return Err(err("SELECT takes one net".into()));
                    };
                    parts.select = Some(parts.net(n));
                }
                "SEED" => {
                    parts.seed_inputs = rest.iter().map(|n| parts.net(n)).collect();
                }
                "TIE0" => {
                    let [n] = rest[..] else {
                        return Err(err("TIE0 takes one net".into()));
                    };
                    parts.tie_low = Some(parts.net(n));
                }
                "XOR2" | "DFF" | "MUX" => {
                    let kind = match keyword {
                        "XOR2" => ElementKind::Xor2,
                        "DFF" => ElementKind::Dff,
                        _ => ElementKind::Mux,
                    };
                    let [id, outs, ins @ ..] = &rest[..] else {
                        return Err(err(format!("{keyword} needs an id and an output net")));
                    };
                    let outputs = outs.split(',').map(|n| parts.net(n)).collect();
                    let inputs = ins.iter().map(|n| parts.net(n)).collect();
                    parts.elements.push(Element {
                        id: id.to_string(),
                        kind,
                        inputs,
                        outputs,
                    });
                }
                other => return Err(err(format!("unknown keyword {other:?}"))),
            }
        }
        let width = width.ok_or(Error::Parse {
            line: 0,
            msg: "empty netlist".into(),
        })?;
        Netlist::from_parts(width, parts)
    }
}
