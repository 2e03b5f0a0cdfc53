//! Prefer-max De Bruijn strings, onion De Bruijn streams, and exhaustive
//! verification of their defining properties.
//!
//! A (k, n) De Bruijn string is a symbol sequence of length k^n + n - 1
//! whose n-windows enumerate the n-words over [k] = {0, ..., k-1} exactly
//! once. The greedy prefer-max construction ([`prefer_max_string`]) nests
//! across alphabets: each string is a suffix of the next one. Reading that
//! nesting outward yields an infinite stream over the naturals that opens
//! with a De Bruijn string for every alphabet at once
//! ([`infinite_onion_stream`]), and alternative such streams arise from
//! Eulerian circuits of the per-alphabet layer graphs
//! ([`layered_onion_stream`]).
//!
//! The [`verify`] module checks all of this exhaustively and returns
//! reports as data rather than panicking or erroring on failure.
//!
//! ```
//! use onion_debruijn::{is_de_bruijn, prefer_max_string};
//!
//! let s = prefer_max_string(2, 2).unwrap();
//! assert_eq!(s.symbols(), &[0, 1, 1, 0, 0]);
//! assert!(is_de_bruijn(s.symbols(), 2, 2).passed);
//! ```

#![forbid(unsafe_code)]

pub mod error;
pub mod layer_euler;
pub mod prefer_max;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use layer_euler::{
    build_layer_graph, check_balanced, hierholzer_circuit, layered_onion_stream, EdgePolicy,
    EulerCircuit, LayerGraph,
};
pub use prefer_max::{
    infinite_onion_stream, layer_boundary, onion_chunk, prefer_max_string, OnionStream,
    PreferMaxState,
};
pub use verify::{
    check_increasing_order, check_zero_cascade, is_de_bruijn, is_onion_prefix,
    window_position_index, Counterexample, OrderingWitness, VerificationReport, VerifyStats,
    WindowPositionIndex,
};
pub use words::{
    format_word, reverse_string, windows, word_rank, word_unrank, DeBruijnString, Params, Symbol,
};
