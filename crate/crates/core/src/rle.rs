//! Byte-pair run-length encoding and the ordering fitness built on it.
//!
//! Every run becomes `(symbol, length)` pairs with `length` in `1..=255`;
//! longer runs are split into several pairs. The fitness of an ordering is
//! the encoded size in bytes of the BWT computed under it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{remap_into, Alphabet, Ordering, Text};
use crate::transform::{bwt, suffix_array_into};

pub const MAX_RUN: usize = 255;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RleEncoding {
    pairs: Vec<(u8, u8)>,
}

impl RleEncoding {
    /// Validates that no pair has a zero length.
    pub fn from_pairs(pairs: Vec<(u8, u8)>) -> Result<Self> {
        if let Some(i) = pairs.iter().position(|&(_, len)| len == 0) {
            return Err(Error::MalformedRle(format!("pair {i} has length zero")));
        }
        Ok(RleEncoding { pairs })
    }

    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    /// Encoded size in bytes.
    pub fn byte_size(&self) -> usize {
        2 * self.pairs.len()
    }

    /// The on-disk layout: the literal pair sequence, no header.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.pairs.iter().flat_map(|&(s, l)| [s, l]).collect()
    }

    pub fn from_bytes(raw: &[u8]) -> Result<Self> {
        if !raw.len().is_multiple_of(2) {
            return Err(Error::MalformedRle(format!("odd byte count {}", raw.len())));
        }
        RleEncoding::from_pairs(raw.chunks_exact(2).map(|p| (p[0], p[1])).collect())
    }
}

pub fn rle_encode(b: &[u8]) -> RleEncoding {
    let mut pairs = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let sym = b[i];
        let mut j = i + 1;
        while j < b.len() && b[j] == sym && j - i < MAX_RUN {
            j += 1;
        }
        pairs.push((sym, (j - i) as u8));
        i = j;
    }
    RleEncoding { pairs }
}

pub fn rle_decode(e: &RleEncoding) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(e.pairs.iter().map(|p| p.1 as usize).sum());
    for (i, &(sym, len)) in e.pairs.iter().enumerate() {
        if len == 0 {
            return Err(Error::MalformedRle(format!("pair {i} has length zero")));
        }
        out.extend(std::iter::repeat_n(sym, len as usize));
    }
    Ok(out)
}

/// Size in bytes of an RLE-compressed BWT. Always even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FitnessValue(pub u64);

impl FitnessValue {
    pub fn bytes(self) -> u64 {
        self.0
    }

    pub fn percent_change(self, uncompressed: u64) -> Result<f64> {
        percent_change(self.0, uncompressed)
    }
}

impl fmt::Display for FitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn fitness(t: &Text, o: &Ordering) -> Result<FitnessValue> {
    let b = bwt(t, o)?;
    Ok(FitnessValue(rle_encode(&b.bytes).byte_size() as u64))
}

/// Signed percentage change of `compressed` relative to `uncompressed`;
/// negative means the data shrank.
pub fn percent_change(compressed: u64, uncompressed: u64) -> Result<f64> {
    if uncompressed == 0 {
        return Err(Error::DivisionByZero);
    }
    let (c, u) = (compressed as f64, uncompressed as f64);
    Ok((c - u) / u * 100.0)
}

/// Repeated fitness evaluation of one text with reusable scratch buffers.
///
/// Runs are counted straight off the suffix array; the BWT string itself is
/// never materialised.
#[derive(Debug, Clone)]
pub struct Evaluator<'t> {
    text: &'t Text,
    alphabet: Alphabet,
    remapped: Vec<u8>,
    sa: Vec<u32>,
    evaluations: u64,
}

impl<'t> Evaluator<'t> {
    pub fn new(text: &'t Text) -> Self {
        Evaluator {
            text,
            alphabet: text.alphabet(),
            remapped: Vec::with_capacity(text.len() + 1),
            sa: Vec::with_capacity(text.len() + 1),
            evaluations: 0,
        }
    }

    pub fn text(&self) -> &'t Text {
        self.text
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Total evaluations performed by this evaluator.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn fitness(&mut self, o: &Ordering) -> Result<FitnessValue> {
        o.check_covers(&self.alphabet)?;
        Ok(self.fitness_unchecked(o))
    }

    /// Percentage change for a fitness value against this text's size.
    pub fn percent(&self, f: FitnessValue) -> f64 {
        percent_change(f.0, self.text.len() as u64).expect("texts are non-empty")
    }

    /// Caller guarantees `o` covers the text's alphabet.
    pub(crate) fn fitness_unchecked(&mut self, o: &Ordering) -> FitnessValue {
        self.evaluations += 1;
        remap_into(self.text.bytes(), o, &mut self.remapped);
        suffix_array_into(&self.remapped, o.len(), &mut self.sa);
        // Remapped values stand in for bytes: equal iff the bytes are equal.
        let r = &self.remapped;
        let mut pairs = 0u64;
        let mut prev: Option<u8> = None;
        let mut run = 0usize;
        for &p in &self.sa {
            let c = if p == 0 { 0 } else { r[p as usize - 1] };
            if Some(c) == prev && run < MAX_RUN {
                run += 1;
            } else {
                pairs += 1;
                run = 1;
                prev = Some(c);
            }
        }
        FitnessValue(2 * pairs)
    }
}
