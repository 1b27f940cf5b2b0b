use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet of rank {rank}")]
    LetterOutOfRank { letter: u32, rank: u8 },

    #[error("invalid rank {0}: must be between 1 and 255")]
    InvalidRank(u32),

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("presentation is not homogeneous: relation {lhs:?} = {rhs:?} changes length")]
    NotHomogeneous { lhs: String, rhs: String },

    #[error("congruence class of {word:?} is incomplete after {fuel} expansions ({found} words found)")]
    IncompleteClass {
        word: String,
        fuel: usize,
        found: usize,
    },

    #[error("reduction of {word:?} ran out of fuel after {fuel} steps")]
    FuelExhausted { word: String, fuel: usize },

    #[error("unsupported rule: {0}")]
    UnsupportedRule(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} is not in the domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("rank {rank} exceeds the cap {cap} for {what}")]
    RankCap {
        what: &'static str,
        rank: u8,
        cap: u8,
    },

    #[error("state cap of {cap} exceeded while building {what}")]
    StateCap { what: String, cap: usize },

    #[error("synchronization buffer exceeded delay {bound} on path {path}")]
    DelayExceeded { bound: usize, path: String },

    #[error("alphabet mismatch: {0}")]
    Alphabet(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
