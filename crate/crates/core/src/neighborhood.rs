//! Swap and Insert neighborhoods over orderings.
//!
//! A neighborhood is an ordered list of moves. Combined operators concatenate
//! the first operator's full list with the second's; each list is ordered
//! independently (Lex, RevLex, or a seeded shuffle).

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::text::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Exchange positions `i < j`.
    Swap,
    /// Remove the symbol at `i` and reinsert it so it lands at `j`.
    Insert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub i: usize,
    pub j: usize,
}

impl Move {
    pub fn swap(i: usize, j: usize) -> Self {
        Move {
            kind: MoveKind::Swap,
            i,
            j,
        }
    }

    pub fn insert(i: usize, j: usize) -> Self {
        Move {
            kind: MoveKind::Insert,
            i,
            j,
        }
    }

    pub fn is_valid_for(&self, sigma: usize) -> bool {
        match self.kind {
            MoveKind::Swap => self.i < self.j && self.j < sigma,
            MoveKind::Insert => self.i != self.j && self.i < sigma && self.j < sigma,
        }
    }

    /// Applies the move in place. The move must be valid for `perm.len()`.
    pub fn apply_to(&self, perm: &mut [u8]) {
        let (i, j) = (self.i, self.j);
        match self.kind {
            MoveKind::Swap => perm.swap(i, j),
            MoveKind::Insert if i < j => perm[i..=j].rotate_left(1),
            MoveKind::Insert => perm[j..=i].rotate_right(1),
        }
    }

    /// The move that undoes this one.
    pub fn inverse(&self) -> Move {
        match self.kind {
            MoveKind::Swap => *self,
            MoveKind::Insert => Move::insert(self.j, self.i),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            MoveKind::Swap => "swap",
            MoveKind::Insert => "insert",
        };
        write!(f, "{k}({},{})", self.i, self.j)
    }
}

pub fn apply_move(o: &Ordering, m: Move) -> Result<Ordering> {
    if !m.is_valid_for(o.len()) {
        return Err(Error::IndexOutOfRange(m.to_string(), o.len()));
    }
    let mut out = o.clone();
    m.apply_to(out.perm_mut_unchecked());
    out.rebuild_ranks();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operators {
    Swap,
    Insert,
    SwapThenInsert,
    InsertThenSwap,
}

impl Operators {
    pub const ALL: [Operators; 4] = [
        Operators::Swap,
        Operators::Insert,
        Operators::SwapThenInsert,
        Operators::InsertThenSwap,
    ];

    fn kinds(self) -> &'static [MoveKind] {
        match self {
            Operators::Swap => &[MoveKind::Swap],
            Operators::Insert => &[MoveKind::Insert],
            Operators::SwapThenInsert => &[MoveKind::Swap, MoveKind::Insert],
            Operators::InsertThenSwap => &[MoveKind::Insert, MoveKind::Swap],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operators::Swap => "swap",
            Operators::Insert => "insert",
            Operators::SwapThenInsert => "swap-then-insert",
            Operators::InsertThenSwap => "insert-then-swap",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeighborOrder {
    Lex,
    RevLex,
    /// Shuffled from the search's RNG stream, reshuffled after each accepted move.
    Random,
}

impl NeighborOrder {
    pub const ALL: [NeighborOrder; 3] = [
        NeighborOrder::Lex,
        NeighborOrder::RevLex,
        NeighborOrder::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NeighborOrder::Lex => "lex",
            NeighborOrder::RevLex => "revlex",
            NeighborOrder::Random => "random",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NeighborhoodSpec {
    pub operators: Operators,
    pub order: NeighborOrder,
}

impl NeighborhoodSpec {
    pub fn new(operators: Operators, order: NeighborOrder) -> Self {
        NeighborhoodSpec { operators, order }
    }

    /// The twelve operator/order combinations.
    pub fn all() -> Vec<NeighborhoodSpec> {
        Operators::ALL
            .iter()
            .flat_map(|&op| {
                NeighborOrder::ALL
                    .iter()
                    .map(move |&ord| NeighborhoodSpec::new(op, ord))
            })
            .collect()
    }
}

impl fmt::Display for NeighborhoodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.operators.name(), self.order.name())
    }
}

impl FromStr for NeighborhoodSpec {
    type Err = Error;

    /// `<operators>[:<order>]`, order defaulting to `lex`.
    fn from_str(s: &str) -> Result<Self> {
        let (op, order) = s.split_once(':').unwrap_or((s, "lex"));
        let operators = Operators::ALL
            .into_iter()
            .find(|o| o.name() == op)
            .ok_or_else(|| Error::Parse(format!("unknown operator `{op}`")))?;
        let order = NeighborOrder::ALL
            .into_iter()
            .find(|o| o.name() == order)
            .ok_or_else(|| Error::Parse(format!("unknown neighbor order `{order}`")))?;
        Ok(NeighborhoodSpec { operators, order })
    }
}

fn lex_moves(kind: MoveKind, sigma: usize) -> Vec<Move> {
    let mut out = Vec::new();
    for i in 0..sigma {
        match kind {
            MoveKind::Swap => out.extend((i + 1..sigma).map(|j| Move::swap(i, j))),
            MoveKind::Insert => {
                out.extend((0..sigma).filter(|&j| j != i).map(|j| Move::insert(i, j)))
            }
        }
    }
    out
}

/// The ordered neighborhood of a search; one segment per operator.
#[derive(Debug, Clone)]
pub struct MoveList {
    segments: Vec<Vec<Move>>,
    order: NeighborOrder,
}

impl MoveList {
    pub fn new<R: Rng>(spec: NeighborhoodSpec, sigma: usize, rng: &mut R) -> Self {
        let segments = spec
            .operators
            .kinds()
            .iter()
            .map(|&k| {
                let mut moves = lex_moves(k, sigma);
                if spec.order == NeighborOrder::RevLex {
                    moves.reverse();
                }
                moves
            })
            .collect();
        let mut list = MoveList {
            segments,
            order: spec.order,
        };
        list.reshuffle(rng);
        list
    }

    /// Fresh shuffle of every segment; a no-op for deterministic orders.
    pub fn reshuffle<R: Rng>(&mut self, rng: &mut R) {
        if self.order == NeighborOrder::Random {
            for seg in &mut self.segments {
                seg.shuffle(rng);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Move> + '_ {
        self.segments.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.segments.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, mut idx: usize) -> Option<Move> {
        for seg in &self.segments {
            if idx < seg.len() {
                return Some(seg[idx]);
            }
            idx -= seg.len();
        }
        None
    }
}

/// The neighborhood's moves in scan order; `seed` drives Random order.
pub fn enumerate_moves(spec: NeighborhoodSpec, sigma: usize, seed: u64) -> Vec<Move> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    MoveList::new(spec, sigma, &mut rng)
        .iter()
        .copied()
        .collect()
}
