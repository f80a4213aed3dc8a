//! Exhaustive construction of denoising maps over small finite alphabets.
//!
//! A deterministic channel maps each symbol pair `(a, c)` to an
//! observation at the relay. The relay forwards a codeword chosen by a
//! denoising map `observation -> codeword`. The map is decodable when an end
//! node that knows its own symbol can always recover the other one: for
//! each fixed `a`, the codewords of `(a, c)` differ across `c`, and vice
//! versa. The preimage set of an observation plays the role of the relay's
//! ambiguity set.
//!
//! Finding the smallest decodable map is graph colouring: observations are
//! vertices, and two observations conflict when they share a row or a
//! column of the channel table.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// Largest alphabet the exhaustive search accepts.
pub const MAX_ALPHABET: usize = 6;

/// Deterministic, total map from symbol pairs to observation labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteChannel {
    alphabet_a: usize,
    alphabet_c: usize,
    // row-major: table[a * alphabet_c + c]
    table: Vec<usize>,
}

impl FiniteChannel {
    pub fn from_fn(alphabet_a: usize, alphabet_c: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..alphabet_a)
            .flat_map(|a| (0..alphabet_c).map(move |c| (a, c)))
            .map(|(a, c)| f(a, c))
            .collect();
        Self {
            alphabet_a,
            alphabet_c,
            table,
        }
    }

    pub fn from_table(alphabet_a: usize, alphabet_c: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != alphabet_a * alphabet_c {
            return Err(Error::LengthMismatch {
                left: table.len(),
                right: alphabet_a * alphabet_c,
            });
        }
        Ok(Self {
            alphabet_a,
            alphabet_c,
            table,
        })
    }

    /// `y = a + c` over the integers, the noiseless analogue of two signals
    /// superposing at the relay.
    pub fn integer_sum(alphabet_a: usize, alphabet_c: usize) -> Self {
        Self::from_fn(alphabet_a, alphabet_c, |a, c| a + c)
    }

    /// Addition in the abelian group `Z_{m_1} x ... x Z_{m_k}`.
    ///
    /// Symbols are the first group elements in mixed-radix order (first
    /// modulus least significant), so both alphabets must fit in the group.
    pub fn group_sum(alphabet_a: usize, alphabet_c: usize, moduli: &[usize]) -> Result<Self> {
        let order: usize = moduli.iter().product();
        if moduli.contains(&0) || order < alphabet_a.max(alphabet_c) {
            return Err(Error::Domain {
                name: "group order",
                value: order as f64,
                expected: "nonzero moduli and order >= both alphabet sizes",
            });
        }
        let digits = |mut x: usize| -> Vec<usize> {
            moduli
                .iter()
                .map(|&m| {
                    let d = x % m;
                    x /= m;
                    d
                })
                .collect()
        };
        Ok(Self::from_fn(alphabet_a, alphabet_c, |a, c| {
            let (da, dc) = (digits(a), digits(c));
            moduli
                .iter()
                .enumerate()
                .rev()
                .fold(0, |acc, (i, &m)| acc * m + (da[i] + dc[i]) % m)
        }))
    }

    pub fn alphabet_a(&self) -> usize {
        self.alphabet_a
    }

    pub fn alphabet_c(&self) -> usize {
        self.alphabet_c
    }

    pub fn observe(&self, a: usize, c: usize) -> usize {
        self.table[a * self.alphabet_c + c]
    }

    pub fn observations(&self) -> BTreeSet<usize> {
        self.table.iter().copied().collect()
    }

    /// Symbol pairs that produce observation `y`.
    pub fn preimage(&self, y: usize) -> Vec<(usize, usize)> {
        self.pairs().filter(|&(a, c)| self.observe(a, c) == y).collect()
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.alphabet_a).flat_map(move |a| (0..self.alphabet_c).map(move |c| (a, c)))
    }

    /// Every channel on the given alphabets, up to relabeling of
    /// observations (one per set partition of the symbol pairs).
    pub fn enumerate_all(alphabet_a: usize, alphabet_c: usize) -> Vec<FiniteChannel> {
        let cells = alphabet_a * alphabet_c;
        let mut out = Vec::new();
        let mut labels = vec![0usize; cells];
        fn extend(pos: usize, max: usize, labels: &mut [usize], out: &mut Vec<Vec<usize>>) {
            if pos == labels.len() {
                out.push(labels.to_vec());
                return;
            }
            for l in 0..=max + 1 {
                labels[pos] = l;
                extend(pos + 1, max.max(l), labels, out);
            }
        }
        if cells == 0 {
            return vec![Self::from_fn(alphabet_a, alphabet_c, |_, _| 0)];
        }
        let mut tables = Vec::new();
        labels[0] = 0;
        extend(1, 0, &mut labels, &mut tables);
        out.extend(tables.into_iter().map(|table| FiniteChannel {
            alphabet_a,
            alphabet_c,
            table,
        }));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenoiserInstance {
    pub alphabet_a: usize,
    pub alphabet_c: usize,
    pub channel: FiniteChannel,
    /// Observation label to codeword index in `0..codebook_size`.
    pub mapping: BTreeMap<usize, usize>,
    pub codebook_size: usize,
    /// Whether the minimum equals `max(alphabet_a, alphabet_c)`.
    pub matches_conjecture: bool,
}

/// True iff no two distinct preimage pairs of any observation share their
/// `A` symbol or their `C` symbol, i.e. the channel is injective in each
/// argument with the other held fixed.
pub fn is_cancellative(channel: &FiniteChannel) -> bool {
    channel.observations().into_iter().all(|y| {
        let pre = channel.preimage(y);
        pre.iter()
            .enumerate()
            .all(|(i, p)| pre[i + 1..].iter().all(|q| p.0 != q.0 && p.1 != q.1))
    })
}

/// Checks decodability of `mapping` directly on the channel table.
pub fn resolves_unambiguously(channel: &FiniteChannel, mapping: &BTreeMap<usize, usize>) -> bool {
    let word = |a, c| mapping.get(&channel.observe(a, c)).copied();
    let rows_ok = (0..channel.alphabet_a).all(|a| {
        let words: Option<BTreeSet<_>> = (0..channel.alphabet_c).map(|c| word(a, c)).collect();
        words.is_some_and(|w| w.len() == channel.alphabet_c)
    });
    let cols_ok = (0..channel.alphabet_c).all(|c| {
        let words: Option<BTreeSet<_>> = (0..channel.alphabet_a).map(|a| word(a, c)).collect();
        words.is_some_and(|w| w.len() == channel.alphabet_a)
    });
    rows_ok && cols_ok
}

fn check_budget(channel: &FiniteChannel) -> Result<()> {
    let (a, c) = (channel.alphabet_a, channel.alphabet_c);
    if a == 0 || c == 0 || a > MAX_ALPHABET || c > MAX_ALPHABET {
        return Err(Error::Budget {
            alphabet_a: a,
            alphabet_c: c,
            limit: MAX_ALPHABET,
        });
    }
    Ok(())
}

struct ConflictGraph {
    labels: Vec<usize>,
    adjacency: Vec<Vec<bool>>,
}

impl ConflictGraph {
    /// `None` when some observation repeats inside a row or column, which no
    /// map can disambiguate.
    fn build(channel: &FiniteChannel) -> Option<Self> {
        let labels: Vec<usize> = channel.observations().into_iter().collect();
        let index: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &y)| (y, i)).collect();
        let n = labels.len();
        let mut adjacency = vec![vec![false; n]; n];
        let mut link = |u: usize, v: usize| -> bool {
            if u == v {
                return false;
            }
            adjacency[u][v] = true;
            adjacency[v][u] = true;
            true
        };
        let id = |a, c| index[&channel.observe(a, c)];
        for a in 0..channel.alphabet_a {
            for c1 in 0..channel.alphabet_c {
                for c2 in c1 + 1..channel.alphabet_c {
                    if !link(id(a, c1), id(a, c2)) {
                        return None;
                    }
                }
            }
        }
        for c in 0..channel.alphabet_c {
            for a1 in 0..channel.alphabet_a {
                for a2 in a1 + 1..channel.alphabet_a {
                    if !link(id(a1, c), id(a2, c)) {
                        return None;
                    }
                }
            }
        }
        Some(Self { labels, adjacency })
    }

    fn color(&self, k: usize) -> Option<Vec<usize>> {
        let n = self.labels.len();
        let mut order: Vec<usize> = (0..n).collect();
        let degree = |v: usize| self.adjacency[v].iter().filter(|&&e| e).count();
        order.sort_by_key(|&v| std::cmp::Reverse(degree(v)));
        let mut colors = vec![usize::MAX; n];
        self.assign(&order, 0, k, 0, &mut colors).then_some(colors)
    }

    fn assign(&self, order: &[usize], pos: usize, k: usize, used: usize, colors: &mut [usize]) -> bool {
        let Some(&v) = order.get(pos) else {
            return true;
        };
        // colours are interchangeable: never open more than one new colour
        for color in 0..k.min(used + 1) {
            let clash = self.adjacency[v]
                .iter()
                .zip(colors.iter())
                .any(|(&edge, &cu)| edge && cu == color);
            if clash {
                continue;
            }
            colors[v] = color;
            if self.assign(order, pos + 1, k, used.max(color + 1), colors) {
                return true;
            }
        }
        colors[v] = usize::MAX;
        false
    }
}

/// A decodable denoising map with exactly `size` codewords available, if
/// one exists.
pub fn denoiser_with_size(channel: &FiniteChannel, size: usize) -> Result<Option<BTreeMap<usize, usize>>> {
    check_budget(channel)?;
    let Some(graph) = ConflictGraph::build(channel) else {
        return Ok(None);
    };
    Ok(graph
        .color(size)
        .map(|colors| graph.labels.iter().copied().zip(colors).collect()))
}

/// Smallest decodable denoising map, searching sizes `1, 2, ...` up to
/// `alphabet_a * alphabet_c`.
pub fn search_min_denoiser(channel: &FiniteChannel) -> Result<DenoiserInstance> {
    check_budget(channel)?;
    let max_size = channel.alphabet_a * channel.alphabet_c;
    for size in 1..=max_size {
        if let Some(mapping) = denoiser_with_size(channel, size)? {
            return Ok(DenoiserInstance {
                alphabet_a: channel.alphabet_a,
                alphabet_c: channel.alphabet_c,
                channel: channel.clone(),
                mapping,
                codebook_size: size,
                matches_conjecture: size == channel.alphabet_a.max(channel.alphabet_c),
            });
        }
    }
    Err(Error::SearchExhausted { max_size })
}

/// Additive channels on the given alphabets: integer addition plus every
/// abelian group whose order equals the larger alphabet.
pub fn additive_channels(alphabet_a: usize, alphabet_c: usize) -> Vec<(String, FiniteChannel)> {
    let order = alphabet_a.max(alphabet_c);
    let mut out = vec![(
        "integer sum".to_string(),
        FiniteChannel::integer_sum(alphabet_a, alphabet_c),
    )];
    for moduli in abelian_groups(order) {
        let name = moduli.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("xZ");
        let ch = FiniteChannel::group_sum(alphabet_a, alphabet_c, &moduli).expect("order fits both alphabets");
        out.push((name, ch));
    }
    out
}

/// Invariant-factor decompositions `[d_1, ..., d_k]` with `d_i | d_{i+1}`
/// and product `order`.
fn abelian_groups(order: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in min.max(2)..=remaining {
            if !remaining.is_multiple_of(d) || prefix.last().is_some_and(|&p| !d.is_multiple_of(p)) {
                continue;
            }
            prefix.push(d);
            rec(remaining / d, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if order == 1 {
        return vec![vec![1]];
    }
    rec(order, 2, &mut Vec::new(), &mut out);
    out
}
