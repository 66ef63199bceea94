//! Search over alphabet orderings to shrink the run-length encoded
//! Burrows-Wheeler transform of a text.
//!
//! The fitness of an ordering is the byte size of the RLE of the BWT computed
//! under that ordering, with the end marker always ranked least. The crate
//! provides the transform itself (suffix-array based, plus naive oracles),
//! the byte-pair RLE codec, a set of initial orderings, Swap/Insert
//! neighborhoods, First-Improvement local search, a random-sampling baseline,
//! exhaustive enumeration for small alphabets and an experiment harness that
//! writes CSV/JSON results.

pub mod error;
pub mod harness;
pub mod init;
pub mod neighborhood;
pub mod rle;
pub mod search;
pub mod stats;
pub mod text;
pub mod transform;

pub use error::{Error, Result};
pub use init::InitMethod;
pub use neighborhood::{Move, MoveKind, NeighborOrder, NeighborhoodSpec, Operators};
pub use rle::{fitness, percent_change, Evaluator, FitnessValue, RleEncoding};
pub use search::{SearchResult, Termination};
pub use text::{Alphabet, EndMarkerPolicy, Ordering, RemappedText, Text};
pub use transform::{BwtString, SuffixArray};
