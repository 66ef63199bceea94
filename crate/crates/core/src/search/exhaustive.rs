use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rle::{Evaluator, FitnessValue};
use crate::stats::SummaryStats;
use crate::text::{Ordering, Text};

pub const DEFAULT_SIGMA_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustiveStats {
    /// Every ordering with its fitness and percentage change, in
    /// lexicographic order of the permutation (ASCII ordering first).
    pub results: Vec<(Ordering, FitnessValue, f64)>,
    pub summary: SummaryStats,
    /// Index into `results` of the first optimum.
    pub best: usize,
    /// Index into `results` of the first pessimum.
    pub worst: usize,
}

impl ExhaustiveStats {
    pub fn best(&self) -> &(Ordering, FitnessValue, f64) {
        &self.results[self.best]
    }

    pub fn worst(&self) -> &(Ordering, FitnessValue, f64) {
        &self.results[self.worst]
    }
}

/// Evaluates all sigma! orderings of the text's alphabet.
pub fn exhaustive_search(t: &Text, sigma_cap: usize) -> Result<ExhaustiveStats> {
    let alphabet = t.alphabet();
    if alphabet.len() > sigma_cap {
        return Err(Error::AlphabetTooLarge {
            sigma: alphabet.len(),
            cap: sigma_cap,
        });
    }
    let mut perm = alphabet.symbols().to_vec();
    let mut orderings = Vec::new();
    loop {
        orderings.push(Ordering::new(perm.clone())?);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let fitness: Vec<FitnessValue> = orderings
        .par_iter()
        .map_init(|| Evaluator::new(t), |ev, o| ev.fitness_unchecked(o))
        .collect();
    let size = t.len() as u64;
    let results: Vec<(Ordering, FitnessValue, f64)> = orderings
        .into_iter()
        .zip(fitness)
        .map(|(o, f)| Ok((o, f, f.percent_change(size)?)))
        .collect::<Result<_>>()?;
    let c: Vec<f64> = results.iter().map(|r| r.2).collect();
    let summary = SummaryStats::from_values(&c)?;
    let best = (0..results.len())
        .min_by_key(|&i| (results[i].1, i))
        .unwrap();
    let worst = (0..results.len())
        .max_by_key(|&i| (results[i].1, std::cmp::Reverse(i)))
        .unwrap();
    Ok(ExhaustiveStats {
        results,
        summary,
        best,
        worst,
    })
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
