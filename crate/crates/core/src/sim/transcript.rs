use std::fmt;
use std::str::FromStr;

use super::packet::PacketLabel;
use crate::error::{Error, Result};
use crate::schemes::XorPath;

/// Allowed overshoot of `bits / (symbols * rate)` from float rounding.
const CAPACITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    A,
    B,
    C,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Node::A => "A",
            Node::B => "B",
            Node::C => "C",
        })
    }
}

impl FromStr for Node {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Node::A),
            "B" => Ok(Node::B),
            "C" => Ok(Node::C),
            _ => Err(Error::Protocol(format!("unknown node `{s}`"))),
        }
    }
}

/// One transmission. Transmissions sharing a `step` number happen at the
/// same time (the multiple-access step of the 2-step schemes).
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub step: u32,
    pub sender: Node,
    pub rate: f64,
    pub symbols: u64,
    pub bits: u64,
    pub label: PacketLabel,
}

impl Step {
    pub fn within_capacity(&self) -> bool {
        self.bits as f64 <= self.symbols as f64 * self.rate * (1.0 + CAPACITY_SLACK)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {} {}",
            self.step, self.sender, self.rate, self.symbols, self.bits, self.label
        )
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [step, sender, rate, symbols, bits, label] = fields[..] else {
            return Err(Error::Protocol(format!("expected 6 fields, got `{line}`")));
        };
        let num = |what: &str, s: &str| Error::Protocol(format!("bad {what} `{s}`"));
        Ok(Step {
            step: step.parse().map_err(|_| num("step", step))?,
            sender: sender.parse()?,
            rate: rate.parse().map_err(|_| num("rate", rate))?,
            symbols: symbols.parse().map_err(|_| num("symbol count", symbols))?,
            bits: bits.parse().map_err(|_| num("bit count", bits))?,
            label: label.parse()?,
        })
    }
}

/// Record of one simulated round.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub steps: Vec<Step>,
    /// Bits of `A`'s packet correctly recovered at `C`.
    pub delivered_ac: u64,
    pub delivered_ca: u64,
    pub total_symbols: u64,
    pub realized_rate: f64,
    pub success: bool,
    /// Bits in error summed over both end nodes.
    pub bit_errors: u64,
    pub path: XorPath,
}

impl Transcript {
    pub(crate) fn assemble(steps: Vec<Step>, delivered: (u64, u64), bit_errors: u64, path: XorPath) -> Self {
        let total_symbols = total_symbols(&steps);
        let (delivered_ac, delivered_ca) = delivered;
        Self {
            realized_rate: (delivered_ac + delivered_ca) as f64 / total_symbols as f64,
            steps,
            delivered_ac,
            delivered_ca,
            total_symbols,
            success: bit_errors == 0,
            bit_errors,
            path,
        }
    }

    /// One line per transmission: `step sender rate symbols bits label`, with
    /// the rate in shortest round-trip form.
    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }

    pub fn parse_steps(text: &str) -> Result<Vec<Step>> {
        text.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect()
    }
}

/// Duration of a schedule: concurrent transmissions count once, at their
/// longest.
pub fn total_symbols(steps: &[Step]) -> u64 {
    let mut total = 0;
    let mut i = 0;
    while i < steps.len() {
        let step = steps[i].step;
        let mut longest = 0;
        while i < steps.len() && steps[i].step == step {
            longest = longest.max(steps[i].symbols);
            i += 1;
        }
        total += longest;
    }
    total
}
