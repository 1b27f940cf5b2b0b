//! Finite automata, transducers, padded convolution and the multiplier
//! constructions behind the biautomatic structures.

pub mod chinese;
pub mod fsa;
pub mod hypoplactic;
pub mod sylvester;
pub mod sync;
pub mod transducer;
pub mod verify;

pub use fsa::Fsa;
pub use sync::{delta, synchronize, synchronize_auto, Pad, PairSym, Side};
pub use transducer::{Direction, Transducer};
pub use verify::{verify_biautomatic, BiautomaticReport, Multiplication};

/// Default limit on the number of states built by any single construction.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;
