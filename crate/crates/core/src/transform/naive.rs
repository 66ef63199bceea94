//! Quadratic rotation-sorting transforms used as oracles on short strings.

use std::cmp::Ordering as CmpOrdering;

use super::BwtString;
use crate::error::{Error, Result};
use crate::text::{Ordering, Text};

pub const DEFAULT_NAIVE_CAP: usize = 64;

/// Sorted cyclic rotations of the text (optionally with the end marker
/// appended) under `o`, the end marker ranking least. The sort is stable, so
/// identical rotations of a non-primitive string keep their original order.
pub fn bwm_naive(t: &Text, o: &Ordering, with_sentinel: bool, cap: usize) -> Result<Vec<Vec<u8>>> {
    if t.len() > cap {
        return Err(Error::TooLong { len: t.len(), cap });
    }
    o.check_covers(&t.alphabet())?;
    let mut s = t.bytes().to_vec();
    if with_sentinel {
        s.push(t.end_marker());
    }
    let marker = t.end_marker();
    let key = |b: u8| {
        if b == marker && with_sentinel {
            0
        } else {
            1 + o.rank_of(b).unwrap()
        }
    };

    let n = s.len();
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by(|&a, &b| {
        for k in 0..n {
            let ord = key(s[(a + k) % n]).cmp(&key(s[(b + k) % n]));
            if ord != CmpOrdering::Equal {
                return ord;
            }
        }
        CmpOrdering::Equal
    });
    Ok(starts
        .into_iter()
        .map(|st| (0..n).map(|k| s[(st + k) % n]).collect())
        .collect())
}

/// Last column of the sentinel-free rotation matrix.
pub fn bwt_star(t: &Text, o: &Ordering, cap: usize) -> Result<BwtString> {
    let rows = bwm_naive(t, o, false, cap)?;
    Ok(BwtString {
        bytes: rows.iter().map(|r| *r.last().unwrap()).collect(),
        end_marker: None,
    })
}
