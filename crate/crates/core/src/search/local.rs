use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::neighborhood::{MoveList, NeighborhoodSpec};
use crate::rle::{Evaluator, FitnessValue};
use crate::text::{Ordering, Text};

/// Evaluation cap used when none is given.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// A full pass over the neighborhood found no strict improvement.
    LocalMinimum,
    /// The evaluation budget ran out first.
    Budget,
}

impl Termination {
    pub fn name(self) -> &'static str {
        match self {
            Termination::LocalMinimum => "local_minimum",
            Termination::Budget => "budget",
        }
    }
}

/// Fitness after the evaluation numbered `step` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePoint {
    pub step: u64,
    pub fitness: FitnessValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub best_ordering: Ordering,
    pub best_fitness: FitnessValue,
    pub initial_fitness: FitnessValue,
    /// Every fitness evaluation, the initial one included.
    pub steps: u64,
    /// Evaluation index of the last accepted improvement (1 if none).
    pub hitting_step: u64,
    /// Starts with the initial evaluation, then one point per accepted move.
    pub trace: Vec<TracePoint>,
    pub terminated: Termination,
}

/// First-Improvement local search.
///
/// The neighborhood is scanned in `spec` order and the first strictly better
/// neighbor is accepted, after which the scan restarts at the head of the
/// list (reshuffled for Random order). Stops when a full pass finds nothing
/// or when `budget` evaluations have been made.
pub fn first_improvement_search(
    t: &Text,
    init: &Ordering,
    spec: NeighborhoodSpec,
    budget: u64,
    seed: u64,
) -> Result<SearchResult> {
    let mut ev = Evaluator::new(t);
    init.check_covers(ev.alphabet())?;
    if budget == 0 {
        return Err(Error::Config("search budget must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut current = init.clone();
    let mut current_f = ev.fitness_unchecked(&current);
    let initial_fitness = current_f;
    let mut steps = 1u64;
    let mut trace = vec![TracePoint {
        step: 1,
        fitness: current_f,
    }];

    let mut moves = MoveList::new(spec, current.len(), &mut rng);
    let mut candidate = current.clone();
    let terminated = 'search: loop {
        let mut improved = false;
        for m in moves.iter() {
            if steps >= budget {
                break 'search Termination::Budget;
            }
            candidate
                .perm_mut_unchecked()
                .copy_from_slice(current.perm());
            m.apply_to(candidate.perm_mut_unchecked());
            candidate.rebuild_ranks();
            let f = ev.fitness_unchecked(&candidate);
            steps += 1;
            if f < current_f {
                std::mem::swap(&mut current, &mut candidate);
                current_f = f;
                trace.push(TracePoint {
                    step: steps,
                    fitness: f,
                });
                improved = true;
                break;
            }
        }
        if !improved {
            break Termination::LocalMinimum;
        }
        moves.reshuffle(&mut rng);
    };

    Ok(SearchResult {
        best_ordering: current,
        best_fitness: current_f,
        initial_fitness,
        steps,
        hitting_step: trace.last().map_or(1, |p| p.step),
        trace,
        terminated,
    })
}

/// Returns the first move of `spec`'s neighborhood that strictly improves on
/// `o`, or `None` if `o` is a local minimum for that neighborhood.
pub fn find_improving_move(
    t: &Text,
    o: &Ordering,
    spec: NeighborhoodSpec,
) -> Result<Option<crate::neighborhood::Move>> {
    let mut ev = Evaluator::new(t);
    let base = ev.fitness(o)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let moves = MoveList::new(spec, o.len(), &mut rng);
    for m in moves.iter() {
        let n = crate::neighborhood::apply_move(o, *m)?;
        if ev.fitness_unchecked(&n) < base {
            return Ok(Some(*m));
        }
    }
    Ok(None)
}
