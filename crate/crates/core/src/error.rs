use crate::words::Symbol;

/// Errors for domain violations: bad parameters, out-of-range symbols or
/// ranks, inputs too short for the requested operation, and graph contract
/// breaches. Property failures are never errors; the checkers report those
/// as data (see [`crate::verify::VerificationReport`]).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("order n must be at least 1")]
    ZeroOrder,
    #[error("alphabet size k must be at least 1")]
    ZeroAlphabet,
    #[error("parameters n={n}, k={k}: k^n does not fit the platform count range")]
    ParamsOverflow { n: usize, k: u64 },
    #[error("symbol {symbol} is outside the alphabet [0, {k})")]
    SymbolOutOfRange { symbol: Symbol, k: u64 },
    #[error("word has length {found}, expected {expected}")]
    WordLength { expected: usize, found: usize },
    #[error("rank {rank} is outside [0, {count})")]
    RankOutOfRange { rank: usize, count: usize },
    #[error("sequence of length {found} is shorter than the required {needed}")]
    TooShort { needed: usize, found: usize },
    #[error("string has length {found}, expected k^n + n - 1 = {expected}")]
    StringLength { expected: usize, found: usize },
    #[error("duplicate window {word:?} at positions {first} and {second}")]
    DuplicateWindow {
        word: Vec<Symbol>,
        first: usize,
        second: usize,
    },
    #[error("alphabet size k must be at least 2 for layer operations, got {k}")]
    AlphabetTooSmallForLayer { k: u64 },
    #[error("vertex {vertex:?} violates in-degree = out-degree")]
    Unbalanced { vertex: Vec<Symbol> },
    #[error("vertex {vertex:?} has no outgoing edges")]
    NoOutgoingEdges { vertex: Vec<Symbol> },
    #[error("edge {word:?} is not present in the graph")]
    NoSuchEdge { word: Vec<Symbol> },
    #[error("{remaining} edges are unreachable from the start vertex")]
    DisconnectedGraph { remaining: usize },
    #[error("requested position overflows the platform count range")]
    CountOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
