//! Binary hierarchy files.
//!
//! Both formats start with four magic bytes followed by little-endian `u64`
//! counts and then the arrays, and end with a CRC-32 of all preceding bytes.
//!
//! `EHv1`: `n`, `m`, permutation (`n` x u32), edge tails, heads (`m` x u32),
//! weights, ranks (`m` x u64), vias (`m` x u32), forward offsets, backward
//! offsets (`n + 1` x u32 each), backward edge index (`m` x u32).
//!
//! `CHv1`: `n`, `up`, `down`, contraction order (`n` x u32), then for the
//! upward and the downward block in turn: tails, heads (u32), weights (u64),
//! vias (u32); then the upward and downward offsets (`n + 1` x u32 each).

use std::fs;
use std::path::Path;

use crate::ch::{offsets, ChEdge, ContractionHierarchy};
use crate::eh::{EdgeHierarchy, EhEdge};
use crate::error::FormatError;
use crate::graph::{VertexId, INFINITY};

pub const EH_MAGIC: &[u8; 4] = b"EHv1";
pub const CH_MAGIC: &[u8; 4] = b"CHv1";

struct Writer(Vec<u8>);

impl Writer {
    fn new(magic: &[u8; 4]) -> Self {
        Writer(magic.to_vec())
    }

    fn u32s(&mut self, it: impl IntoIterator<Item = u32>) {
        for x in it {
            self.0.extend_from_slice(&x.to_le_bytes());
        }
    }

    fn u64s(&mut self, it: impl IntoIterator<Item = u64>) {
        for x in it {
            self.0.extend_from_slice(&x.to_le_bytes());
        }
    }

    fn finish(mut self) -> Vec<u8> {
        let crc = crc32fast::hash(&self.0);
        self.0.extend_from_slice(&crc.to_le_bytes());
        self.0
    }
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    /// Checks the magic bytes and returns a reader positioned after them.
    fn open(data: &'a [u8], magic: &'static [u8; 4]) -> Result<Self, FormatError> {
        let expected = std::str::from_utf8(magic).expect("ascii magic");
        if data.len() < 4 {
            // a prefix of the magic is a cut-off file, anything else is foreign
            return if magic.starts_with(data) {
                Err(FormatError::Truncated)
            } else {
                Err(FormatError::BadMagic { expected })
            };
        }
        if &data[..4] != magic {
            return Err(FormatError::BadMagic { expected });
        }
        Ok(Reader { data, pos: 4 })
    }

    fn take(&mut self, len: usize) -> Result<&'a [u8], FormatError> {
        let end = self.pos.checked_add(len).ok_or(FormatError::Truncated)?;
        let slice = self.data.get(self.pos..end).ok_or(FormatError::Truncated)?;
        self.pos = end;
        Ok(slice)
    }

    fn u64(&mut self) -> Result<u64, FormatError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn u32s(&mut self, count: usize) -> Result<Vec<u32>, FormatError> {
        let bytes = self.take(count.checked_mul(4).ok_or(FormatError::Truncated)?)?;
        Ok(bytes
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    fn u64s(&mut self, count: usize) -> Result<Vec<u64>, FormatError> {
        let bytes = self.take(count.checked_mul(8).ok_or(FormatError::Truncated)?)?;
        Ok(bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    /// Ensures `payload` more bytes plus the checksum are present before
    /// anything large is allocated, then verifies the checksum.
    fn expect_payload(&self, payload: Option<usize>) -> Result<(), FormatError> {
        let total = payload
            .and_then(|p| p.checked_add(self.pos))
            .and_then(|p| p.checked_add(4))
            .ok_or(FormatError::Truncated)?;
        if self.data.len() < total {
            return Err(FormatError::Truncated);
        }
        if self.data.len() > total {
            return Err(FormatError::Inconsistent(format!(
                "{} trailing bytes",
                self.data.len() - total
            )));
        }
        let body = &self.data[..total - 4];
        let stored = u32::from_le_bytes(self.data[total - 4..].try_into().unwrap());
        let computed = crc32fast::hash(body);
        if stored != computed {
            return Err(FormatError::Checksum { stored, computed });
        }
        Ok(())
    }
}

fn count(x: u64) -> Result<usize, FormatError> {
    usize::try_from(x)
        .ok()
        .filter(|&c| c <= u32::MAX as usize)
        .ok_or_else(|| FormatError::Inconsistent(format!("count {x} exceeds the 32-bit id space")))
}

/// Sum of `count * width` terms, `None` on overflow.
fn payload_size(terms: &[(usize, usize)]) -> Option<usize> {
    terms
        .iter()
        .try_fold(0usize, |acc, &(c, w)| acc.checked_add(c.checked_mul(w)?))
}

pub fn encode_edge_hierarchy(eh: &EdgeHierarchy) -> Vec<u8> {
    let mut w = Writer::new(EH_MAGIC);
    w.u64s([eh.vertex_count() as u64, eh.edge_count() as u64]);
    w.u32s(eh.permutation().iter().copied());
    let edges = eh.edges();
    w.u32s(edges.iter().map(|e| e.tail));
    w.u32s(edges.iter().map(|e| e.head));
    w.u64s(edges.iter().map(|e| e.weight));
    w.u64s(edges.iter().map(|e| e.rank));
    w.u32s(edges.iter().map(|e| e.via));
    w.u32s(eh.first_out().iter().copied());
    w.u32s(eh.first_in().iter().copied());
    w.u32s(eh.in_edge_index().iter().copied());
    w.finish()
}

pub fn decode_edge_hierarchy(data: &[u8]) -> Result<EdgeHierarchy, FormatError> {
    let mut r = Reader::open(data, EH_MAGIC)?;
    let n = count(r.u64()?)?;
    let m = count(r.u64()?)?;
    let n1 = n + 1;
    r.expect_payload(payload_size(&[(n, 4), (m, 4 + 4 + 8 + 8 + 4), (n1, 8), (m, 4)]))?;
    let permutation = r.u32s(n)?;
    let tails = r.u32s(m)?;
    let heads = r.u32s(m)?;
    let weights = r.u64s(m)?;
    let ranks = r.u64s(m)?;
    let vias = r.u32s(m)?;
    let first_out = r.u32s(n1)?;
    let first_in = r.u32s(n1)?;
    let in_edges = r.u32s(m)?;
    check_weights(n, &weights)?;
    let edges = (0..m)
        .map(|i| EhEdge {
            tail: tails[i],
            head: heads[i],
            weight: weights[i],
            rank: ranks[i],
            via: vias[i],
        })
        .collect();
    EdgeHierarchy::from_raw(permutation, edges, first_out, in_edges, first_in).map_err(FormatError::Inconsistent)
}

pub fn write_edge_hierarchy(eh: &EdgeHierarchy, path: impl AsRef<Path>) -> Result<(), FormatError> {
    fs::write(path, encode_edge_hierarchy(eh))?;
    Ok(())
}

pub fn read_edge_hierarchy(path: impl AsRef<Path>) -> Result<EdgeHierarchy, FormatError> {
    decode_edge_hierarchy(&fs::read(path)?)
}

pub fn encode_contraction_hierarchy(ch: &ContractionHierarchy) -> Vec<u8> {
    let mut w = Writer::new(CH_MAGIC);
    w.u64s([ch.vertex_count() as u64, ch.up.len() as u64, ch.down.len() as u64]);
    w.u32s(ch.order.iter().copied());
    for block in [&ch.up, &ch.down] {
        w.u32s(block.iter().map(|e| e.tail));
        w.u32s(block.iter().map(|e| e.head));
        w.u64s(block.iter().map(|e| e.weight));
        w.u32s(block.iter().map(|e| e.via));
    }
    w.u32s(ch.up_first.iter().copied());
    w.u32s(ch.down_first.iter().copied());
    w.finish()
}

pub fn decode_contraction_hierarchy(data: &[u8]) -> Result<ContractionHierarchy, FormatError> {
    let mut r = Reader::open(data, CH_MAGIC)?;
    let n = count(r.u64()?)?;
    let up = count(r.u64()?)?;
    let down = count(r.u64()?)?;
    r.expect_payload(payload_size(&[(n, 4), (up, 20), (down, 20), (n + 1, 8)]))?;
    let order = r.u32s(n)?;
    let mut blocks = Vec::with_capacity(2);
    for len in [up, down] {
        let tails = r.u32s(len)?;
        let heads = r.u32s(len)?;
        let weights = r.u64s(len)?;
        let vias = r.u32s(len)?;
        check_weights(n, &weights)?;
        blocks.push(
            (0..len)
                .map(|i| ChEdge {
                    tail: tails[i],
                    head: heads[i],
                    weight: weights[i],
                    via: vias[i],
                })
                .collect::<Vec<_>>(),
        );
    }
    let up_first = r.u32s(n + 1)?;
    let down_first = r.u32s(n + 1)?;
    let down_edges = blocks.pop().unwrap();
    let up_edges = blocks.pop().unwrap();
    validate_ch(&order, &up_edges, &up_first, &down_edges, &down_first)?;
    Ok(ContractionHierarchy {
        order,
        up_first,
        up: up_edges,
        down_first,
        down: down_edges,
    })
}

/// Search labels add up at most `n` edges per side, so sums must stay
/// below the infinity sentinel.
fn check_weights(n: usize, weights: &[u64]) -> Result<(), FormatError> {
    let max = weights.iter().copied().max().unwrap_or(0);
    match max.checked_mul(2 * n as u64 + 2) {
        Some(x) if x < INFINITY => Ok(()),
        _ => Err(FormatError::Inconsistent(format!(
            "edge weight {max} can overflow distances"
        ))),
    }
}

fn validate_ch(
    order: &[u32],
    up: &[ChEdge],
    up_first: &[u32],
    down: &[ChEdge],
    down_first: &[u32],
) -> Result<(), FormatError> {
    let bad = |m: &str| Err(FormatError::Inconsistent(m.to_string()));
    let n = order.len();
    let mut seen = vec![false; n];
    for &o in order {
        if o as usize >= n || std::mem::replace(&mut seen[o as usize], true) {
            return bad("contraction order is not a permutation");
        }
    }
    for e in up.iter().chain(down) {
        if e.tail as usize >= n || e.head as usize >= n || (e.via != VertexId::MAX && e.via as usize >= n) {
            return bad("edge references a vertex out of range");
        }
    }
    if up.iter().any(|e| order[e.tail as usize] >= order[e.head as usize])
        || down.iter().any(|e| order[e.tail as usize] <= order[e.head as usize])
    {
        return bad("edge stored in the wrong block");
    }
    if offsets(n, up.iter().map(|e| e.tail)) != up_first
        || offsets(n, down.iter().map(|e| e.head)) != down_first
        || up.windows(2).any(|w| w[0].tail > w[1].tail)
        || down.windows(2).any(|w| w[0].head > w[1].head)
    {
        return bad("offset arrays do not match the edge blocks");
    }
    Ok(())
}

pub fn write_contraction_hierarchy(ch: &ContractionHierarchy, path: impl AsRef<Path>) -> Result<(), FormatError> {
    fs::write(path, encode_contraction_hierarchy(ch))?;
    Ok(())
}

pub fn read_contraction_hierarchy(path: impl AsRef<Path>) -> Result<ContractionHierarchy, FormatError> {
    decode_contraction_hierarchy(&fs::read(path)?)
}
