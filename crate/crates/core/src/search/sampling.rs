use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::init::random_ordering_with;
use crate::rle::{Evaluator, FitnessValue};
use crate::stats::SummaryStats;
use crate::text::{Ordering, Text};

const CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleStats {
    pub samples: usize,
    /// Fitness of every sample, in draw order.
    pub fitness: Vec<FitnessValue>,
    /// Percentage change of every sample against the text size.
    pub c: Vec<f64>,
    pub summary: SummaryStats,
    /// Number of strict running-minimum updates; the first sample counts.
    pub improvements: usize,
    /// 0-based sample indices at which the running minimum improved.
    pub improvement_indices: Vec<usize>,
    pub best_ordering: Ordering,
    pub best_fitness: FitnessValue,
}

/// Draws `samples` uniform orderings (Fisher-Yates from one seeded stream)
/// and evaluates each. Evaluation runs on the current rayon pool; the result
/// does not depend on the number of threads.
pub fn random_sampling(t: &Text, samples: usize, seed: u64) -> Result<SampleStats> {
    if samples == 0 {
        return Err(Error::Config("sample count must be at least 1".into()));
    }
    let alphabet = t.alphabet();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fitness = Vec::with_capacity(samples);
    let mut best: Option<(FitnessValue, Ordering)> = None;
    let mut improvement_indices = Vec::new();

    let mut drawn = 0;
    while drawn < samples {
        let n = CHUNK.min(samples - drawn);
        let orderings: Vec<Ordering> = (0..n)
            .map(|_| random_ordering_with(&alphabet, &mut rng))
            .collect();
        let values: Vec<FitnessValue> = orderings
            .par_iter()
            .map_init(|| Evaluator::new(t), |ev, o| ev.fitness_unchecked(o))
            .collect();
        for (k, (o, f)) in orderings.into_iter().zip(values).enumerate() {
            if best.as_ref().is_none_or(|(bf, _)| f < *bf) {
                improvement_indices.push(drawn + k);
                best = Some((f, o));
            }
            fitness.push(f);
        }
        drawn += n;
    }

    let size = t.len() as u64;
    let c: Vec<f64> = fitness
        .iter()
        .map(|f| f.percent_change(size))
        .collect::<Result<_>>()?;
    let summary = SummaryStats::from_values(&c)?;
    let (best_fitness, best_ordering) = best.expect("at least one sample");
    Ok(SampleStats {
        samples,
        fitness,
        c,
        summary,
        improvements: improvement_indices.len(),
        improvement_indices,
        best_ordering,
        best_fitness,
    })
}

/// Expected number of running-minimum updates over `samples` draws when all
/// values are distinct: the sum of 1/(i+1) for i in 0..=samples.
pub fn harmonic_bound(samples: u64) -> f64 {
    (0..=samples).rev().map(|i| 1.0 / (i as f64 + 1.0)).sum()
}
