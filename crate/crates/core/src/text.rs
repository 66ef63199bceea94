//! Texts, alphabets and orderings.
//!
//! Files are read bytewise: every distinct byte value is one symbol. An
//! [`Ordering`] is a permutation of the alphabet; the end marker is never part
//! of it and is implicitly the least symbol. [`RemappedText`] rewrites a text
//! so that plain integer comparison of the remapped values agrees with the
//! ordering, which lets any ordinary suffix sorter produce the BWT for that
//! ordering.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// How the end marker byte is chosen when loading a file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndMarkerPolicy {
    Fixed(u8),
    /// Smallest byte value absent from the input.
    #[default]
    Auto,
}

impl std::str::FromStr for EndMarkerPolicy {
    type Err = Error;

    /// Accepts `auto`, a decimal byte value, or a single printable character.
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(EndMarkerPolicy::Auto);
        }
        if let Ok(v) = s.parse::<u8>() {
            return Ok(EndMarkerPolicy::Fixed(v));
        }
        match s.as_bytes() {
            [b] => Ok(EndMarkerPolicy::Fixed(*b)),
            _ => Err(Error::Parse(format!("invalid end marker `{s}`"))),
        }
    }
}

/// Raw input bytes plus an end marker byte that does not occur in them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>,
    end_marker: u8,
}

impl Text {
    pub fn new(bytes: impl Into<Vec<u8>>, end_marker: u8) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::EmptyText);
        }
        if bytes.contains(&end_marker) {
            return Err(Error::EndMarkerPresent(end_marker));
        }
        Ok(Text { bytes, end_marker })
    }

    /// Builds a text choosing the end marker according to `policy`.
    pub fn with_policy(bytes: impl Into<Vec<u8>>, policy: EndMarkerPolicy) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::EmptyText);
        }
        let mut present = [false; 256];
        for &b in &bytes {
            present[b as usize] = true;
        }
        let free = present.iter().position(|p| !p);
        let marker = match (policy, free) {
            (_, None) => return Err(Error::AlphabetFull),
            (EndMarkerPolicy::Auto, Some(m)) => m as u8,
            (EndMarkerPolicy::Fixed(m), Some(_)) => m,
        };
        Text::new(bytes, marker)
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn end_marker(&self) -> u8 {
        self.end_marker
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    pub fn alphabet(&self) -> Alphabet {
        scan_alphabet(self)
    }

    /// Occurrence count of every byte value.
    pub fn byte_counts(&self) -> [u64; 256] {
        let mut counts = [0u64; 256];
        for &b in &self.bytes {
            counts[b as usize] += 1;
        }
        counts
    }
}

/// Reads a file bytewise and picks its end marker.
pub fn load_text(path: impl AsRef<Path>, policy: EndMarkerPolicy) -> Result<Text> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Text::with_policy(bytes, policy)
}

/// Distinct byte values of a text in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<u8>,
}

impl Alphabet {
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut present = [false; 256];
        for &b in bytes {
            present[b as usize] = true;
        }
        let symbols = (0..=255u8).filter(|&b| present[b as usize]).collect();
        Alphabet { symbols }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, b: u8) -> bool {
        self.symbols.binary_search(&b).is_ok()
    }
}

pub fn scan_alphabet(t: &Text) -> Alphabet {
    Alphabet::from_bytes(&t.bytes)
}

const NO_RANK: u16 = u16::MAX;

/// A precedence order over an alphabet: `perm[i]` is the symbol with rank `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    perm: Vec<u8>,
    rank_of: [u16; 256],
}

impl Ordering {
    /// Fails if `perm` repeats a symbol.
    pub fn new(perm: impl Into<Vec<u8>>) -> Result<Self> {
        let perm = perm.into();
        let mut rank_of = [NO_RANK; 256];
        for (i, &b) in perm.iter().enumerate() {
            if rank_of[b as usize] != NO_RANK {
                return Err(Error::OrderingMismatch(format!(
                    "symbol {} appears twice",
                    escape_byte(b)
                )));
            }
            rank_of[b as usize] = i as u16;
        }
        Ok(Ordering { perm, rank_of })
    }

    /// Byte-value (extended ASCII) order of the alphabet.
    pub fn ascii(alphabet: &Alphabet) -> Self {
        Ordering::new(alphabet.symbols().to_vec()).expect("alphabet symbols are distinct")
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn rank_of(&self, b: u8) -> Option<usize> {
        match self.rank_of[b as usize] {
            NO_RANK => None,
            r => Some(r as usize),
        }
    }

    pub fn contains(&self, b: u8) -> bool {
        self.rank_of[b as usize] != NO_RANK
    }

    /// Errors unless the ordering's symbol set equals `alphabet`.
    pub fn check_covers(&self, alphabet: &Alphabet) -> Result<()> {
        if self.perm.len() != alphabet.len() {
            return Err(Error::OrderingMismatch(format!(
                "ordering has {} symbols, alphabet has {}",
                self.perm.len(),
                alphabet.len()
            )));
        }
        if let Some(&b) = alphabet.symbols().iter().find(|&&b| !self.contains(b)) {
            return Err(Error::OrderingMismatch(format!(
                "symbol {} missing from ordering",
                escape_byte(b)
            )));
        }
        Ok(())
    }

    /// Keeps only the symbols of `alphabet`, preserving relative order.
    pub fn restrict_to(&self, alphabet: &Alphabet) -> Result<Ordering> {
        let perm: Vec<u8> = self
            .perm
            .iter()
            .copied()
            .filter(|&b| alphabet.contains(b))
            .collect();
        let restricted = Ordering::new(perm)?;
        restricted.check_covers(alphabet)?;
        Ok(restricted)
    }

    /// The ordering rendered with non-printable bytes escaped.
    pub fn to_escaped(&self) -> String {
        self.perm.iter().map(|&b| escape_byte(b)).collect()
    }

    pub(crate) fn perm_mut_unchecked(&mut self) -> &mut Vec<u8> {
        &mut self.perm
    }

    pub(crate) fn rebuild_ranks(&mut self) {
        self.rank_of = [NO_RANK; 256];
        for (i, &b) in self.perm.iter().enumerate() {
            self.rank_of[b as usize] = i as u16;
        }
    }
}

impl fmt::Debug for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordering(\"{}\")", self.to_escaped())
    }
}

pub(crate) fn escape_byte(b: u8) -> String {
    std::ascii::escape_default(b).to_string()
}

/// A text rewritten as `1 + rank` per byte, followed by a single `0` sentinel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemappedText {
    ranks: Vec<u8>,
    sigma: usize,
}

impl RemappedText {
    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    /// Number of distinct non-sentinel values the ranks may take.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

pub fn apply_ordering(t: &Text, o: &Ordering) -> Result<RemappedText> {
    o.check_covers(&t.alphabet())?;
    let mut ranks = Vec::with_capacity(t.len() + 1);
    remap_into(t.bytes(), o, &mut ranks);
    Ok(RemappedText {
        ranks,
        sigma: o.len(),
    })
}

/// Writes the remapped sequence into `out` without validating coverage.
pub(crate) fn remap_into(bytes: &[u8], o: &Ordering, out: &mut Vec<u8>) {
    let mut table = [0u8; 256];
    for (i, &b) in o.perm().iter().enumerate() {
        table[b as usize] = (i + 1) as u8;
    }
    out.clear();
    out.extend(bytes.iter().map(|&b| table[b as usize]));
    out.push(0);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(s: &str) -> Ordering {
        Ordering::new(s.as_bytes().to_vec()).unwrap()
    }

    #[test]
    fn fixed_marker_text() {
        let t = Text::with_policy(*b"cacatcg", EndMarkerPolicy::Fixed(b'$')).unwrap();
        assert_eq!(t.bytes(), b"cacatcg");
        assert_eq!(t.end_marker(), b'$');
    }

    #[test]
    fn auto_marker_is_smallest_absent_byte() {
        let t = Text::with_policy(*b"aa", EndMarkerPolicy::Auto).unwrap();
        assert_eq!(t.end_marker(), 0);
        let t = Text::with_policy(vec![0u8, 1, 3], EndMarkerPolicy::Auto).unwrap();
        assert_eq!(t.end_marker(), 2);
    }

    #[test]
    fn full_alphabet_is_rejected() {
        let all: Vec<u8> = (0..=255u8).collect();
        assert!(matches!(
            Text::with_policy(all.clone(), EndMarkerPolicy::Auto),
            Err(Error::AlphabetFull)
        ));
        assert!(matches!(
            Text::with_policy(all, EndMarkerPolicy::Fixed(b'$')),
            Err(Error::AlphabetFull)
        ));
    }

    #[test]
    fn marker_inside_text_is_rejected() {
        assert!(matches!(
            Text::new(*b"a$b", b'$'),
            Err(Error::EndMarkerPresent(b'$'))
        ));
        assert!(matches!(Text::new(Vec::new(), b'$'), Err(Error::EmptyText)));
    }

    #[test]
    fn alphabet_scan() {
        let t = Text::new(*b"cacatcg", b'$').unwrap();
        assert_eq!(t.alphabet().symbols(), b"acgt");
        let t = Text::new(*b"aaaa", b'$').unwrap();
        assert_eq!(t.alphabet().symbols(), b"a");
    }

    #[test]
    fn remap_examples() {
        let t = Text::new(*b"cacatcg", b'$').unwrap();
        let r = apply_ordering(&t, &ord("acgt")).unwrap();
        assert_eq!(r.ranks(), &[2, 1, 2, 1, 4, 2, 3, 0]);
        let r = apply_ordering(&t, &ord("agct")).unwrap();
        assert_eq!(r.ranks(), &[3, 1, 3, 1, 4, 3, 2, 0]);
        let t = Text::new(*b"a", b'$').unwrap();
        assert_eq!(apply_ordering(&t, &ord("a")).unwrap().ranks(), &[1, 0]);
    }

    #[test]
    fn remap_rejects_mismatched_ordering() {
        let t = Text::new(*b"cacatcg", b'$').unwrap();
        assert!(matches!(
            apply_ordering(&t, &ord("acg")),
            Err(Error::OrderingMismatch(_))
        ));
        assert!(matches!(
            apply_ordering(&t, &ord("acgx")),
            Err(Error::OrderingMismatch(_))
        ));
    }

    #[test]
    fn duplicate_symbols_rejected() {
        assert!(Ordering::new(b"aba".to_vec()).is_err());
    }

    #[test]
    fn end_marker_policy_parsing() {
        assert_eq!(
            "auto".parse::<EndMarkerPolicy>().unwrap(),
            EndMarkerPolicy::Auto
        );
        assert_eq!(
            "$".parse::<EndMarkerPolicy>().unwrap(),
            EndMarkerPolicy::Fixed(b'$')
        );
        assert_eq!(
            "0".parse::<EndMarkerPolicy>().unwrap(),
            EndMarkerPolicy::Fixed(0)
        );
        assert!("xy".parse::<EndMarkerPolicy>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::seq::SliceRandom;
        use rand::SeedableRng;

        proptest! {
            #[test]
            fn remap_is_monotone_and_invertible(
                bytes in proptest::collection::vec(1u8..=255, 1..200),
                seed in any::<u64>(),
            ) {
                let t = Text::new(bytes, 0).unwrap();
                let mut perm = t.alphabet().symbols().to_vec();
                perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                let o = Ordering::new(perm).unwrap();
                let r = apply_ordering(&t, &o).unwrap();
                prop_assert_eq!(r.len(), t.len() + 1);
                prop_assert_eq!(r.ranks()[t.len()], 0);
                for (i, &x) in t.bytes().iter().enumerate() {
                    for (j, &y) in t.bytes().iter().enumerate().take(20) {
                        let (rx, ry) = (r.ranks()[i], r.ranks()[j]);
                        prop_assert!(rx >= 1 && rx as usize <= o.len());
                        prop_assert_eq!(rx < ry, o.rank_of(x) < o.rank_of(y));
                    }
                }
                let back: Vec<u8> = r.ranks()[..t.len()]
                    .iter()
                    .map(|&v| o.perm()[v as usize - 1])
                    .collect();
                prop_assert_eq!(back.as_slice(), t.bytes());
            }
        }
    }
}
