//! Suffix array construction by induced sorting (SA-IS).
//!
//! The input must end with a unique sentinel that is strictly smaller than
//! every other symbol. Symbols are integers in `0..alphabet_size`.

const EMPTY: u32 = u32::MAX;

pub(crate) trait Symbol: Copy {
    fn idx(self) -> usize;
}

impl Symbol for u8 {
    #[inline]
    fn idx(self) -> usize {
        self as usize
    }
}

impl Symbol for u32 {
    #[inline]
    fn idx(self) -> usize {
        self as usize
    }
}

/// Fills `sa` with the suffix array of `s`. `sa.len()` must equal `s.len()`.
#[allow(clippy::needless_range_loop)]
pub(crate) fn sais<T: Symbol>(s: &[T], sa: &mut [u32], alphabet_size: usize) {
    let n = s.len();
    debug_assert_eq!(sa.len(), n);
    match n {
        0 => return,
        1 => {
            sa[0] = 0;
            return;
        }
        2 => {
            sa[0] = 1;
            sa[1] = 0;
            return;
        }
        _ => {}
    }

    // true = S-type
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        let (a, b) = (s[i].idx(), s[i + 1].idx());
        stype[i] = a < b || (a == b && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];

    let mut counts = vec![0u32; alphabet_size];
    for &c in s {
        counts[c.idx()] += 1;
    }
    let mut bkt = vec![0u32; alphabet_size];

    // Stage 1: sort LMS substrings.
    sa.fill(EMPTY);
    bucket_ends(&counts, &mut bkt);
    for i in 1..n {
        if is_lms(i) {
            let c = s[i].idx();
            bkt[c] -= 1;
            sa[bkt[c] as usize] = i as u32;
        }
    }
    induce(s, sa, &stype, &counts, &mut bkt);

    let mut m = 0;
    for i in 0..n {
        let p = sa[i] as usize;
        if is_lms(p) {
            sa[m] = p as u32;
            m += 1;
        }
    }

    // Name LMS substrings; names land in sa[m..] indexed by position / 2.
    sa[m..].fill(EMPTY);
    let mut name = 0u32;
    let mut prev: Option<usize> = None;
    for i in 0..m {
        let pos = sa[i] as usize;
        let differs = match prev {
            None => true,
            Some(q) => !lms_substrings_equal(s, &stype, pos, q),
        };
        if differs {
            name += 1;
            prev = Some(pos);
        }
        sa[m + pos / 2] = name - 1;
    }

    let mut reduced = Vec::with_capacity(m);
    let mut lms_pos = Vec::with_capacity(m);
    for i in 1..n {
        if is_lms(i) {
            lms_pos.push(i as u32);
            reduced.push(sa[m + i / 2]);
        }
    }
    debug_assert_eq!(reduced.len(), m);

    // Stage 2: sort the reduced problem.
    let mut reduced_sa = vec![0u32; m];
    if (name as usize) < m {
        sais(&reduced, &mut reduced_sa, name as usize);
    } else {
        for (i, &r) in reduced.iter().enumerate() {
            reduced_sa[r as usize] = i as u32;
        }
    }

    // Stage 3: induce the full order from the sorted LMS suffixes.
    sa.fill(EMPTY);
    bucket_ends(&counts, &mut bkt);
    for &r in reduced_sa.iter().rev() {
        let p = lms_pos[r as usize] as usize;
        let c = s[p].idx();
        bkt[c] -= 1;
        sa[bkt[c] as usize] = p as u32;
    }
    induce(s, sa, &stype, &counts, &mut bkt);
}

fn bucket_starts(counts: &[u32], bkt: &mut [u32]) {
    let mut sum = 0;
    for (b, &c) in bkt.iter_mut().zip(counts) {
        *b = sum;
        sum += c;
    }
}

fn bucket_ends(counts: &[u32], bkt: &mut [u32]) {
    let mut sum = 0;
    for (b, &c) in bkt.iter_mut().zip(counts) {
        sum += c;
        *b = sum;
    }
}

fn induce<T: Symbol>(s: &[T], sa: &mut [u32], stype: &[bool], counts: &[u32], bkt: &mut [u32]) {
    let n = s.len();
    bucket_starts(counts, bkt);
    for i in 0..n {
        let j = sa[i];
        if j != EMPTY && j > 0 {
            let j = j as usize - 1;
            if !stype[j] {
                let c = s[j].idx();
                sa[bkt[c] as usize] = j as u32;
                bkt[c] += 1;
            }
        }
    }
    bucket_ends(counts, bkt);
    for i in (0..n).rev() {
        let j = sa[i];
        if j != EMPTY && j > 0 {
            let j = j as usize - 1;
            if stype[j] {
                let c = s[j].idx();
                bkt[c] -= 1;
                sa[bkt[c] as usize] = j as u32;
            }
        }
    }
}

fn lms_substrings_equal<T: Symbol>(s: &[T], stype: &[bool], a: usize, b: usize) -> bool {
    let n = s.len();
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];
    let mut k = 0;
    loop {
        if a + k >= n || b + k >= n {
            return false;
        }
        if s[a + k].idx() != s[b + k].idx() || stype[a + k] != stype[b + k] {
            return false;
        }
        if k > 0 {
            let (la, lb) = (is_lms(a + k), is_lms(b + k));
            if la && lb {
                return true;
            }
            if la != lb {
                return false;
            }
        }
        k += 1;
    }
}
