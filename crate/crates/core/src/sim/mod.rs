//! Bit-exact execution of the DF (3-step) and JDF (2-step) packet
//! procedures over ideal bit pipes that run exactly at link capacity.
//!
//! The direct-link side information of DF is modelled deterministically:
//! after overhearing `k` symbols at `C(gamma0)`, a node knows the first
//! `floor(k * C(gamma0))` bits of the other node's packet, and the relay
//! forwards exactly the remaining suffix. A real system would send random
//! bins instead of a suffix; both carry the same amount of missing
//! information under ideal codes, and the suffix keeps decoding checkable
//! bit for bit.
//!
//! Step 1 and 2 durations are whole symbols: `round(N (1 - theta))` and the
//! rest of `N` for DF, `N` for the JDF multiple-access step. Packet sizes are
//! floored to whole bits and relay broadcasts take `ceil(bits / rate)`
//! symbols, so realized rates deviate from the analytic ones by `O(1/N)`.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::{cap, ma_contains, ma_rate_pair, LinkConfig};
use crate::error::{Error, Result};
use crate::schemes::XorPath;

pub mod packet;
pub mod transcript;

pub use packet::{pad_to, split_at, xor_packets, Flow, Packet, PacketLabel, Part};
pub use transcript::{Node, Step, Transcript};

fn whole_bits(symbols: u64, rate: f64) -> u64 {
    (symbols as f64 * rate).floor() as u64
}

fn symbols_for(bits: usize, rate: f64) -> u64 {
    (bits as f64 / rate).ceil() as u64
}

fn nonempty(len: usize, what: &str) -> Result<()> {
    if len == 0 {
        Err(Error::Degenerate(format!("{what} would carry zero bits")))
    } else {
        Ok(())
    }
}

fn step(step: u32, sender: Node, rate: f64, symbols: u64, packet: &Packet) -> Step {
    Step {
        step,
        sender,
        rate,
        symbols,
        bits: packet.len() as u64,
        label: packet.label,
    }
}

/// What the relay puts on the air after decoding both packets.
struct Broadcast {
    /// XOR of the common part, sent to both end nodes at the weak rate.
    xor: Packet,
    /// Unmatched tail of the longer packet, sent to the stronger node only.
    tail: Option<Packet>,
    path: XorPath,
}

/// Combines `to_strong` (headed to the node on the stronger relay link) with
/// `to_weak`. Split when `to_strong` is at least as long, pad otherwise.
fn relay_combine(to_strong: &Packet, to_weak: &Packet) -> Result<Broadcast> {
    if to_strong.len() >= to_weak.len() {
        let (head, tail) = split_at(to_strong, to_weak.len())?;
        Ok(Broadcast {
            xor: xor_packets(&head, to_weak)?,
            tail: Some(tail),
            path: XorPath::SplitAndXor,
        })
    } else {
        let padded = pad_to(to_strong, to_weak.len())?;
        Ok(Broadcast {
            xor: xor_packets(&padded, to_weak)?,
            tail: None,
            path: XorPath::PadAndXor,
        })
    }
}

/// Run at the weak node, which knows `to_strong` and wants `to_weak`.
fn recover_at_weak_node(broadcast: &Broadcast, to_strong: &Packet, to_weak_len: usize) -> Result<Packet> {
    let mask = match broadcast.path {
        XorPath::SplitAndXor => split_at(to_strong, to_weak_len)?.0,
        XorPath::PadAndXor => pad_to(to_strong, to_weak_len)?,
    };
    xor_packets(&broadcast.xor, &mask)
}

/// Run at the strong node, which knows `to_weak` and wants `to_strong`.
fn recover_at_strong_node(broadcast: &Broadcast, to_weak: &Packet, to_strong_len: usize) -> Result<Packet> {
    let combined = xor_packets(&broadcast.xor, to_weak)?;
    match (&broadcast.path, &broadcast.tail) {
        (XorPath::SplitAndXor, Some(tail)) => Ok(combined.concat(tail)),
        (XorPath::PadAndXor, None) => Ok(split_at(&combined, to_strong_len)?.0),
        _ => Err(Error::Protocol("broadcast tail inconsistent with path".into())),
    }
}

/// One round of 3-step DF with `N = n_symbols` source symbols split by `theta`.
pub fn run_df(config: &LinkConfig, n_symbols: u64, theta: f64, seed: u64) -> Result<Transcript> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain {
            name: "theta",
            value: theta,
            expected: "strictly within (0, 1)",
        });
    }
    let [c0, c1, c2] = [config.gamma0(), config.gamma1(), config.gamma2()].map(cap);
    let k_a = (n_symbols as f64 * (1.0 - theta)).round() as u64;
    let k_c = n_symbols.saturating_sub(k_a);
    if k_a == 0 || k_c == 0 {
        return Err(Error::Degenerate(format!(
            "N = {n_symbols} with theta = {theta} leaves a source step without symbols"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d_ac = Packet::random(whole_bits(k_a, c1) as usize, PacketLabel::whole(Flow::AC), &mut rng);
    let d_ca = Packet::random(whole_bits(k_c, c2) as usize, PacketLabel::whole(Flow::CA), &mut rng);
    nonempty(d_ac.len(), "D_AC")?;
    nonempty(d_ca.len(), "D_CA")?;

    // Steps 1-2: the far end overhears a prefix over the direct link.
    let overheard_ac = whole_bits(k_a, c0) as usize;
    let overheard_ca = whole_bits(k_c, c0) as usize;
    let side_info_c = split_at(&d_ac, overheard_ac)?.0;
    let side_info_a = split_at(&d_ca, overheard_ca)?.0;

    // Relay: decoded both packets; only the link parameters tell it how much
    // each far end already has.
    let d_bc = split_at(&d_ac, overheard_ac)?
        .1
        .with_label(PacketLabel::whole(Flow::BC));
    let d_ba = split_at(&d_ca, overheard_ca)?
        .1
        .with_label(PacketLabel::whole(Flow::BA));
    nonempty(d_bc.len(), "D_BC")?;
    nonempty(d_ba.len(), "D_BA")?;
    let broadcast = relay_combine(&d_bc, &d_ba)?;

    let mut steps = vec![
        step(1, Node::A, c1, k_a, &d_ac),
        step(2, Node::C, c2, k_c, &d_ca),
        step(3, Node::B, c1, symbols_for(broadcast.xor.len(), c1), &broadcast.xor),
    ];
    if let Some(tail) = &broadcast.tail {
        // second sub-broadcast follows the XOR packet
        steps.push(step(4, Node::B, c2, symbols_for(tail.len(), c2), tail));
    }

    // A knows D_AC and the public sizing rule, hence D_BC; likewise C and D_BA.
    let known_bc = split_at(&d_ac, overheard_ac)?.1;
    let at_a = recover_at_weak_node(&broadcast, &known_bc, d_ba.len())?;
    let recovered_ca = side_info_a.concat(&at_a).with_label(d_ca.label);
    let known_ba = split_at(&d_ca, overheard_ca)?.1;
    let at_c = recover_at_strong_node(&broadcast, &known_ba, d_bc.len())?;
    let recovered_ac = side_info_c.concat(&at_c).with_label(d_ac.label);

    Ok(finish(
        steps,
        &d_ac,
        &recovered_ac,
        &d_ca,
        &recovered_ca,
        broadcast.path,
    ))
}

fn finish(
    steps: Vec<Step>,
    d_ac: &Packet,
    recovered_ac: &Packet,
    d_ca: &Packet,
    recovered_ca: &Packet,
    path: XorPath,
) -> Transcript {
    let errors_ac = d_ac.bit_errors(recovered_ac) as u64;
    let errors_ca = d_ca.bit_errors(recovered_ca) as u64;
    let delivered = (
        if errors_ac == 0 { d_ac.len() as u64 } else { 0 },
        if errors_ca == 0 { d_ca.len() as u64 } else { 0 },
    );
    Transcript::assemble(steps, delivered, errors_ac + errors_ca, path)
}

/// One round of 2-step JDF with the step-1 rate pair at face point `lambda`.
pub fn run_jdf(config: &LinkConfig, n_symbols: u64, lambda: f64, seed: u64) -> Result<Transcript> {
    let pair = ma_rate_pair(config, lambda)?;
    if !ma_contains(config, pair) {
        return Err(Error::Protocol(format!(
            "rate pair ({}, {}) is not jointly decodable at the relay",
            pair.rate_a, pair.rate_c
        )));
    }
    let (c1, c2) = (cap(config.gamma1()), cap(config.gamma2()));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d_ac = Packet::random(
        whole_bits(n_symbols, pair.rate_a) as usize,
        PacketLabel::whole(Flow::AC),
        &mut rng,
    );
    let d_ca = Packet::random(
        whole_bits(n_symbols, pair.rate_c) as usize,
        PacketLabel::whole(Flow::CA),
        &mut rng,
    );
    nonempty(d_ac.len(), "D_AC")?;
    nonempty(d_ca.len(), "D_CA")?;

    // Relay decodes both jointly (assumed, guarded by the region check).
    // C sits on the stronger link, so D_AC plays the role of the packet
    // whose tail may go to the strong node alone.
    let broadcast = relay_combine(&d_ac, &d_ca)?;

    let mut steps = vec![
        step(1, Node::A, pair.rate_a, n_symbols, &d_ac),
        step(1, Node::C, pair.rate_c, n_symbols, &d_ca),
        step(2, Node::B, c1, symbols_for(broadcast.xor.len(), c1), &broadcast.xor),
    ];
    if let Some(tail) = &broadcast.tail {
        steps.push(step(3, Node::B, c2, symbols_for(tail.len(), c2), tail));
    }

    let recovered_ca = recover_at_weak_node(&broadcast, &d_ac, d_ca.len())?.with_label(d_ca.label);
    let recovered_ac = recover_at_strong_node(&broadcast, &d_ca, d_ac.len())?.with_label(d_ac.label);
    Ok(finish(
        steps,
        &d_ac,
        &recovered_ac,
        &d_ca,
        &recovered_ca,
        broadcast.path,
    ))
}
