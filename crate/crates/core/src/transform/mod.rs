//! Burrows-Wheeler transform under an arbitrary alphabet ordering.
//!
//! The sentinel-mode transform is built from a suffix array of the
//! [`RemappedText`]. The sentinel-free variant and the full rotation matrix are
//! computed naively and exist for validation on short strings.

mod naive;
mod sais;

pub use naive::{bwm_naive, bwt_star, DEFAULT_NAIVE_CAP};

use crate::error::{Error, Result};
use crate::text::{apply_ordering, Ordering, RemappedText, Text};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixArray {
    sa: Vec<u32>,
}

impl SuffixArray {
    pub fn as_slice(&self) -> &[u32] {
        &self.sa
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.sa
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }
}

/// Last column of a Burrows-Wheeler matrix.
///
/// `end_marker` is `Some` for the sentinel transform and `None` for the
/// sentinel-free variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BwtString {
    pub bytes: Vec<u8>,
    pub end_marker: Option<u8>,
}

impl BwtString {
    pub fn with_marker(bytes: Vec<u8>, end_marker: u8) -> Self {
        BwtString {
            bytes,
            end_marker: Some(end_marker),
        }
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    pub fn runs(&self) -> usize {
        count_runs(&self.bytes)
    }
}

pub fn suffix_array(rt: &RemappedText) -> SuffixArray {
    let mut sa = vec![0u32; rt.len()];
    sais::sais(rt.ranks(), &mut sa, rt.sigma() + 1);
    SuffixArray { sa }
}

/// Suffix array into a caller-provided buffer, for hot loops.
pub(crate) fn suffix_array_into(ranks: &[u8], sigma: usize, sa: &mut Vec<u32>) {
    sa.clear();
    sa.resize(ranks.len(), 0);
    sais::sais(ranks, sa, sigma + 1);
}

pub fn bwt(t: &Text, o: &Ordering) -> Result<BwtString> {
    let rt = apply_ordering(t, o)?;
    let sa = suffix_array(&rt);
    let bytes = t.bytes();
    let marker = t.end_marker();
    let l = sa
        .as_slice()
        .iter()
        .map(|&p| match p {
            0 => marker,
            p => bytes[p as usize - 1],
        })
        .collect();
    Ok(BwtString::with_marker(l, marker))
}

/// Inverts a sentinel-mode BWT through the last-to-first mapping.
pub fn inverse_bwt(b: &BwtString, o: &Ordering) -> Result<Text> {
    let marker = b
        .end_marker
        .ok_or_else(|| Error::MalformedBwt("transform has no end marker".into()))?;
    let markers = b.bytes.iter().filter(|&&c| c == marker).count();
    if markers != 1 {
        return Err(Error::MalformedBwt(format!(
            "expected exactly one end marker, found {markers}"
        )));
    }
    if o.contains(marker) {
        return Err(Error::MalformedBwt(
            "end marker is part of the ordering".into(),
        ));
    }

    // Key 0 is the end marker; symbols map to 1 + rank.
    let mut key = [u16::MAX; 256];
    key[marker as usize] = 0;
    for (r, &s) in o.perm().iter().enumerate() {
        key[s as usize] = r as u16 + 1;
    }
    let sigma = o.len() + 1;
    let mut counts = vec![0usize; sigma];
    let mut occ = Vec::with_capacity(b.len());
    for &c in &b.bytes {
        let k = key[c as usize];
        if k == u16::MAX {
            return Err(Error::OrderingMismatch(format!(
                "BWT symbol {} is not in the ordering",
                crate::text::escape_byte(c)
            )));
        }
        occ.push(counts[k as usize]);
        counts[k as usize] += 1;
    }
    let mut first = vec![0usize; sigma];
    let mut sum = 0;
    for (f, &c) in first.iter_mut().zip(&counts) {
        *f = sum;
        sum += c;
    }

    // Row 0 starts with the end marker, so its last symbol ends the text.
    let n = b.len() - 1;
    let mut out = vec![0u8; n];
    let mut row = 0usize;
    for slot in out.iter_mut().rev() {
        let c = b.bytes[row];
        *slot = c;
        let k = key[c as usize] as usize;
        row = first[k] + occ[row];
    }
    Text::new(out, marker)
}

/// Number of maximal blocks of equal adjacent bytes.
pub fn count_runs(b: &[u8]) -> usize {
    match b.split_first() {
        None => 0,
        Some((_, rest)) => 1 + b.iter().zip(rest).filter(|(x, y)| x != y).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(s: &str) -> Ordering {
        Ordering::new(s.as_bytes().to_vec()).unwrap()
    }

    fn text(s: &str) -> Text {
        Text::new(s.as_bytes().to_vec(), b'$').unwrap()
    }

    #[test]
    fn suffix_array_examples() {
        let t = text("a");
        let sa = suffix_array(&apply_ordering(&t, &ord("a")).unwrap());
        assert_eq!(sa.as_slice(), &[1, 0]);

        let t = text("cacatcg");
        let sa = suffix_array(&apply_ordering(&t, &ord("acgt")).unwrap());
        assert_eq!(sa.as_slice(), &[7, 1, 3, 0, 2, 5, 6, 4]);

        let t = text("aaa");
        let sa = suffix_array(&apply_ordering(&t, &ord("a")).unwrap());
        assert_eq!(sa.as_slice(), &[3, 2, 1, 0]);
    }

    #[test]
    fn bwt_worked_examples() {
        let t = text("cacatcg");
        assert_eq!(bwt(&t, &ord("acgt")).unwrap().bytes, b"gcc$atca");
        assert_eq!(bwt(&t, &ord("agct")).unwrap().bytes, b"gccc$ata");
        let t = text("mississippi");
        assert_eq!(bwt(&t, &ord("imps")).unwrap().bytes, b"ipssm$pissii");
    }

    #[test]
    fn bwt_rejects_wrong_ordering() {
        assert!(matches!(
            bwt(&text("cacatcg"), &ord("acg")),
            Err(Error::OrderingMismatch(_))
        ));
    }

    #[test]
    fn inverse_examples() {
        let b = BwtString::with_marker(b"gcc$atca".to_vec(), b'$');
        assert_eq!(inverse_bwt(&b, &ord("acgt")).unwrap().bytes(), b"cacatcg");
        let b = BwtString::with_marker(b"ipssm$pissii".to_vec(), b'$');
        assert_eq!(
            inverse_bwt(&b, &ord("imps")).unwrap().bytes(),
            b"mississippi"
        );
        let b = BwtString::with_marker(b"a$".to_vec(), b'$');
        assert_eq!(inverse_bwt(&b, &ord("a")).unwrap().bytes(), b"a");
    }

    #[test]
    fn inverse_rejects_bad_marker_counts() {
        let b = BwtString::with_marker(b"gcc$at$a".to_vec(), b'$');
        assert!(matches!(
            inverse_bwt(&b, &ord("acgt")),
            Err(Error::MalformedBwt(_))
        ));
        let b = BwtString::with_marker(b"gccatca".to_vec(), b'$');
        assert!(matches!(
            inverse_bwt(&b, &ord("acgt")),
            Err(Error::MalformedBwt(_))
        ));
        let b = BwtString {
            bytes: b"gcc$atca".to_vec(),
            end_marker: None,
        };
        assert!(matches!(
            inverse_bwt(&b, &ord("acgt")),
            Err(Error::MalformedBwt(_))
        ));
    }

    #[test]
    fn run_counts() {
        assert_eq!(count_runs(b"bccbccbcaaaaa"), 7);
        assert_eq!(count_runs(b"caabcb"), 5);
        assert_eq!(count_runs(b"aaaa"), 1);
        assert_eq!(count_runs(b""), 0);
    }
}
