use std::fmt;

use rand_chacha::rand_core::RngCore;

use crate::error::{Error, Result};

/// Which flow a packet belongs to: `AC` is `A`'s data for `C`, `BC` the
/// relay's forward to `C`, `B` the relay's XOR broadcast.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flow {
    AC,
    CA,
    BC,
    BA,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    Whole,
    /// Zero-padded to a longer length.
    Padded,
    /// Leading bits after a split.
    Head,
    /// Remaining bits after a split.
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PacketLabel {
    pub flow: Flow,
    pub part: Part,
}

impl PacketLabel {
    pub const fn whole(flow: Flow) -> Self {
        Self {
            flow,
            part: Part::Whole,
        }
    }

    fn with_part(self, part: Part) -> Self {
        Self { part, ..self }
    }
}

impl fmt::Display for PacketLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flow = match self.flow {
            Flow::AC => "AC",
            Flow::CA => "CA",
            Flow::BC => "BC",
            Flow::BA => "BA",
            Flow::B => "B",
        };
        match self.part {
            Part::Whole => write!(f, "D_{flow}"),
            Part::Padded => write!(f, "D^p_{flow}"),
            Part::Head => write!(f, "D_{flow}(1)"),
            Part::Tail => write!(f, "D_{flow}(2)"),
        }
    }
}

impl std::str::FromStr for PacketLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Protocol(format!("unknown packet label `{s}`"));
        let (padded, rest) = match s.strip_prefix("D^p_") {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix("D_").ok_or_else(bad)?),
        };
        let (flow, part) = if let Some(f) = rest.strip_suffix("(1)") {
            (f, Part::Head)
        } else if let Some(f) = rest.strip_suffix("(2)") {
            (f, Part::Tail)
        } else {
            (rest, if padded { Part::Padded } else { Part::Whole })
        };
        if padded && part != Part::Padded {
            return Err(bad());
        }
        let flow = match flow {
            "AC" => Flow::AC,
            "CA" => Flow::CA,
            "BC" => Flow::BC,
            "BA" => Flow::BA,
            "B" => Flow::B,
            _ => return Err(bad()),
        };
        Ok(Self { flow, part })
    }
}

/// A finite sequence of bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packet {
    bits: Vec<bool>,
    pub label: PacketLabel,
}

impl Packet {
    pub fn new(bits: Vec<bool>, label: PacketLabel) -> Self {
        Self { bits, label }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bit_str(s: &str, label: PacketLabel) -> Result<Self> {
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Protocol(format!("invalid bit character `{other}`"))),
            })
            .collect::<Result<_>>()?;
        Ok(Self::new(bits, label))
    }

    pub fn random(len: usize, label: PacketLabel, rng: &mut impl RngCore) -> Self {
        let mut bits = Vec::with_capacity(len);
        while bits.len() < len {
            let word = rng.next_u64();
            let take = (len - bits.len()).min(64);
            bits.extend((0..take).map(|i| (word >> i) & 1 == 1));
        }
        Self::new(bits, label)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn with_label(self, label: PacketLabel) -> Self {
        Self { label, ..self }
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Concatenation `self || tail`, keeping `self`'s label.
    pub fn concat(&self, tail: &Packet) -> Packet {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&tail.bits);
        Packet::new(bits, self.label)
    }

    /// Bits that differ between two packets, counting any length difference.
    pub fn bit_errors(&self, other: &Packet) -> usize {
        let common = self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count();
        common + self.len().abs_diff(other.len())
    }
}

/// Bitwise XOR of two equal-length packets, labelled as the relay broadcast.
pub fn xor_packets(p: &Packet, q: &Packet) -> Result<Packet> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let bits = p.bits.iter().zip(&q.bits).map(|(a, b)| a ^ b).collect();
    Ok(Packet::new(bits, PacketLabel::whole(Flow::B)))
}

/// Appends zeros up to `target_len` bits.
pub fn pad_to(p: &Packet, target_len: usize) -> Result<Packet> {
    if target_len < p.len() {
        return Err(Error::OutOfRange {
            index: target_len,
            len: p.len(),
        });
    }
    let mut bits = p.bits.clone();
    bits.resize(target_len, false);
    Ok(Packet::new(bits, p.label.with_part(Part::Padded)))
}

/// Splits into the leading `first_len` bits and the rest.
pub fn split_at(p: &Packet, first_len: usize) -> Result<(Packet, Packet)> {
    if first_len > p.len() {
        return Err(Error::OutOfRange {
            index: first_len,
            len: p.len(),
        });
    }
    let (head, tail) = p.bits.split_at(first_len);
    Ok((
        Packet::new(head.to_vec(), p.label.with_part(Part::Head)),
        Packet::new(tail.to_vec(), p.label.with_part(Part::Tail)),
    ))
}
