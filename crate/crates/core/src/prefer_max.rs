//! The prefer-max greedy construction and the onion De Bruijn stream.
//!
//! The (k, n) prefer-max string starts from the seed window 0^(n-1)(k-1)
//! and repeatedly appends the largest symbol that creates an unseen
//! n-window, stopping once all k^n windows have appeared. Shrinking the
//! alphabet nests these strings: the (k-1, n) string is a literal suffix of
//! the (k, n) string, and the leading k^n - (k-1)^n symbols form the layer
//! chunk that the larger alphabet adds.
//!
//! Reading that nesting outward gives an infinite stream over the naturals:
//! the reversal of the (k, n) prefer-max string extends the reversal of the
//! (k-1, n) one, so the stream whose prefix of length k^n + n - 1 equals
//! that reversal is well defined for every k at once.

use crate::error::{Error, Result};
use crate::words::{DeBruijnString, Params, Symbol};

/// Fixed-size bit table used as the seen-window set.
struct BitSet {
    blocks: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        Self {
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    fn get(&self, index: usize) -> bool {
        self.blocks[index / 64] >> (index % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, index: usize) {
        self.blocks[index / 64] |= 1 << (index % 64);
    }
}

/// Incremental prefer-max generator.
///
/// The state is created with the seed window 0^(n-1)(k-1) already emitted;
/// each [`next_symbol`](Self::next_symbol) call appends one symbol until the
/// string reaches its full length of k^n + n - 1, after which it reports
/// exhaustion by returning `None`.
pub struct PreferMaxState {
    params: Params,
    emitted: Vec<Symbol>,
    seen: BitSet,
    // Rank of the last n-1 emitted symbols.
    context_rank: usize,
    // Out-words of a fixed (n-1)-context are consumed in strictly descending
    // symbol order, so a per-context counter names the maximal unseen
    // extension directly. The seen table stays authoritative; debug builds
    // cross-check every pick against it.
    consumed: Vec<u64>,
}

impl PreferMaxState {
    pub fn new(params: Params) -> Self {
        let n = params.n();
        let k = params.k();
        let mut emitted = vec![0; n];
        emitted[n - 1] = k - 1;
        let seed_rank = (k - 1) as usize;
        let mut seen = BitSet::new(params.word_count());
        seen.set(seed_rank);
        let mut consumed = vec![0; params.context_count()];
        consumed[0] = 1;
        Self {
            params,
            emitted,
            seen,
            context_rank: seed_rank % params.context_count(),
            consumed,
        }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// Symbols emitted so far, seed included.
    pub fn emitted(&self) -> &[Symbol] {
        &self.emitted
    }

    /// The last n emitted symbols.
    pub fn current_window(&self) -> &[Symbol] {
        &self.emitted[self.emitted.len() - self.params.n()..]
    }

    /// Number of windows emitted so far.
    pub fn windows_emitted(&self) -> usize {
        self.emitted.len() - self.params.n() + 1
    }

    /// Whether `word` has already occurred as a window of the emitted
    /// prefix.
    pub fn has_seen(&self, word: &[Symbol]) -> Result<bool> {
        let rank = crate::words::word_rank(word, &self.params)?;
        Ok(self.seen.get(rank))
    }

    pub fn is_exhausted(&self) -> bool {
        self.emitted.len() == self.params.string_len()
    }

    /// Appends and returns the next symbol, or `None` once the string is
    /// complete.
    pub fn next_symbol(&mut self) -> Option<Symbol> {
        if self.is_exhausted() {
            return None;
        }
        let k = self.params.k();
        let used = self.consumed[self.context_rank];
        assert!(
            used < k,
            "every context must keep a fresh out-word until k^n windows exist"
        );
        let symbol = k - 1 - used;
        let rank = self.context_rank * self.params.k_usize() + symbol as usize;
        debug_assert!(!self.seen.get(rank), "prefer-max picked a seen window");
        debug_assert!(
            symbol + 1 >= k || self.seen.get(rank + 1),
            "prefer-max pick must be maximal among unseen extensions"
        );
        self.seen.set(rank);
        self.consumed[self.context_rank] = used + 1;
        self.context_rank = rank % self.params.context_count();
        self.emitted.push(symbol);
        Some(symbol)
    }

    /// Runs the generator to exhaustion and returns the finished string.
    pub fn into_de_bruijn_string(mut self) -> DeBruijnString {
        while self.next_symbol().is_some() {}
        DeBruijnString::new_unchecked(self.params, self.emitted)
    }
}

/// The (k, n) prefer-max De Bruijn string.
pub fn prefer_max_string(k: u64, n: usize) -> Result<DeBruijnString> {
    let params = Params::new(n, k)?;
    Ok(PreferMaxState::new(params).into_de_bruijn_string())
}

/// Number of leading symbols of the (k, n) prefer-max string that the
/// alphabet [k] adds over [k-1]: k^n - (k-1)^n. The window ending at this
/// boundary is (k-1)0^(n-1) and the symbol emitted right after it is k-2.
pub fn layer_boundary(k: u64, n: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::AlphabetTooSmallForLayer { k });
    }
    let full = Params::new(n, k)?;
    let inner = Params::new(n, k - 1)?;
    Ok(full.word_count() - inner.word_count())
}

/// The first k^n - (k-1)^n symbols of the (k, n) prefer-max string. The
/// full string is this chunk followed by the (k-1, n) prefer-max string.
pub fn onion_chunk(k: u64, n: usize) -> Result<Vec<Symbol>> {
    let boundary = layer_boundary(k, n)?;
    let params = Params::new(n, k)?;
    let mut state = PreferMaxState::new(params);
    while state.emitted.len() < boundary {
        state.next_symbol();
    }
    debug_assert!(state.emitted.len() >= boundary);
    let mut chunk = state.emitted;
    chunk.truncate(boundary);
    Ok(chunk)
}

type ChunkSource = Box<dyn FnMut(u64) -> Result<Vec<Symbol>> + Send>;

/// Lazily produced infinite sequence over the naturals whose prefix of
/// length k^n + n - 1 is a (k, n) De Bruijn string for every k >= 1.
///
/// The stream grows one alphabet layer at a time; after layer k completes,
/// the produced prefix has length exactly k^n + n - 1 and ends with n - 1
/// zeros, ready for the next layer to extend.
pub struct OnionStream {
    order: usize,
    produced: Vec<Symbol>,
    completed_layers: u64,
    source: ChunkSource,
}

impl std::fmt::Debug for OnionStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OnionStream")
            .field("order", &self.order)
            .field("completed_layers", &self.completed_layers)
            .field("produced_len", &self.produced.len())
            .finish()
    }
}

impl OnionStream {
    pub(crate) fn new(order: usize, source: ChunkSource) -> Self {
        Self {
            order,
            produced: Vec::new(),
            completed_layers: 0,
            source,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn completed_layers(&self) -> u64 {
        self.completed_layers
    }

    /// The prefix produced so far, without forcing growth.
    pub fn produced(&self) -> &[Symbol] {
        &self.produced
    }

    /// Extends production through alphabet layer `k`.
    pub fn ensure_layers(&mut self, k: u64) -> Result<()> {
        while self.completed_layers < k {
            let next = self.completed_layers + 1;
            let chunk = (self.source)(next)?;
            self.produced.extend_from_slice(&chunk);
            self.completed_layers = next;
            let expected = Params::new(self.order, next)?.string_len();
            assert_eq!(
                self.produced.len(),
                expected,
                "layer {next} must leave the produced prefix at k^n + n - 1 symbols"
            );
        }
        Ok(())
    }

    /// The first `len` symbols, producing further layers as needed.
    pub fn prefix(&mut self, len: usize) -> Result<&[Symbol]> {
        while self.produced.len() < len {
            let next = self
                .completed_layers
                .checked_add(1)
                .ok_or(Error::CountOverflow)?;
            self.ensure_layers(next)?;
        }
        Ok(&self.produced[..len])
    }

    /// The symbol at position `index`.
    pub fn get(&mut self, index: usize) -> Result<Symbol> {
        let len = index.checked_add(1).ok_or(Error::CountOverflow)?;
        Ok(self.prefix(len)?[index])
    }
}

/// The onion De Bruijn stream induced by the prefer-max construction: for
/// every k >= 1, the prefix of length k^n + n - 1 is the reversal of the
/// (k, n) prefer-max string.
pub fn infinite_onion_stream(n: usize) -> Result<OnionStream> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(OnionStream::new(
        n,
        Box::new(move |k| {
            if k == 1 {
                Ok(vec![0; n])
            } else {
                let mut chunk = onion_chunk(k, n)?;
                chunk.reverse();
                Ok(chunk)
            }
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn string(k: u64, n: usize) -> Vec<Symbol> {
        prefer_max_string(k, n).unwrap().into_symbols()
    }

    #[test]
    fn golden_strings() {
        assert_eq!(string(1, 3), vec![0, 0, 0]);
        assert_eq!(string(3, 1), vec![2, 1, 0]);
        assert_eq!(string(2, 2), vec![0, 1, 1, 0, 0]);
        assert_eq!(string(2, 3), vec![0, 0, 1, 1, 1, 0, 1, 0, 0, 0]);
        assert_eq!(string(3, 2), vec![0, 2, 2, 1, 2, 0, 1, 1, 0, 0]);
    }

    #[test]
    fn incremental_emission_follows_the_seeded_state() {
        let params = Params::new(2, 2).unwrap();
        let mut state = PreferMaxState::new(params);
        assert_eq!(state.emitted(), &[0, 1]);
        assert_eq!(state.current_window(), &[0, 1]);
        assert_eq!(state.windows_emitted(), 1);
        assert_eq!(state.next_symbol(), Some(1));
        assert_eq!(state.next_symbol(), Some(0));
        assert_eq!(state.current_window(), &[1, 0]);
        assert_eq!(state.next_symbol(), Some(0));
        assert!(state.is_exhausted());
        assert_eq!(state.next_symbol(), None);
        assert_eq!(state.emitted(), &[0, 1, 1, 0, 0]);
    }

    #[test]
    fn seen_table_matches_emitted_windows() {
        let params = Params::new(3, 2).unwrap();
        let mut state = PreferMaxState::new(params);
        for _ in 0..4 {
            state.next_symbol();
        }
        let emitted = state.emitted().to_vec();
        let occurred: Vec<Vec<Symbol>> = emitted.windows(3).map(|w| w.to_vec()).collect();
        for rank in 0..params.word_count() {
            let word = crate::words::word_unrank(rank, &params).unwrap();
            assert_eq!(state.has_seen(&word).unwrap(), occurred.contains(&word));
        }
    }

    #[test]
    fn degenerate_alphabet_is_all_zeros() {
        let params = Params::new(4, 1).unwrap();
        let mut state = PreferMaxState::new(params);
        assert!(state.is_exhausted());
        assert_eq!(state.next_symbol(), None);
        assert_eq!(state.emitted(), &[0, 0, 0, 0]);
    }

    #[test]
    fn chunks_and_boundaries() {
        assert_eq!(onion_chunk(3, 2).unwrap(), vec![0, 2, 2, 1, 2]);
        assert_eq!(onion_chunk(2, 2).unwrap(), vec![0, 1, 1]);
        assert_eq!(onion_chunk(3, 1).unwrap(), vec![2]);
        assert_eq!(layer_boundary(3, 2).unwrap(), 5);
        assert_eq!(layer_boundary(2, 2).unwrap(), 3);
        assert_eq!(layer_boundary(2, 1).unwrap(), 1);
        assert_eq!(
            layer_boundary(1, 2),
            Err(Error::AlphabetTooSmallForLayer { k: 1 })
        );
        assert_eq!(
            onion_chunk(0, 2),
            Err(Error::AlphabetTooSmallForLayer { k: 0 })
        );
    }

    #[test]
    fn chunk_plus_smaller_string_reassembles_the_larger_string() {
        for n in 1..=4 {
            for k in 2..=5 {
                let mut rebuilt = onion_chunk(k, n).unwrap();
                rebuilt.extend_from_slice(string(k - 1, n).as_slice());
                assert_eq!(rebuilt, string(k, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn stream_prefixes() {
        let mut s = infinite_onion_stream(2).unwrap();
        assert_eq!(s.prefix(10).unwrap(), &[0, 0, 1, 1, 0, 2, 1, 2, 2, 0]);
        assert_eq!(s.prefix(5).unwrap(), &[0, 0, 1, 1, 0]);
        assert_eq!(s.completed_layers(), 3);

        let mut s = infinite_onion_stream(1).unwrap();
        assert_eq!(s.prefix(4).unwrap(), &[0, 1, 2, 3]);
    }

    #[test]
    fn stream_positional_access() {
        let mut s = infinite_onion_stream(2).unwrap();
        assert_eq!(s.get(9).unwrap(), 0);
        assert_eq!(s.get(0).unwrap(), 0);
        assert_eq!(s.get(5).unwrap(), 2);
        assert_eq!(s.produced().len(), 10);
    }

    #[test]
    fn stream_prefix_is_reversed_prefer_max_string() {
        for n in 1..=3 {
            let mut s = infinite_onion_stream(n).unwrap();
            for k in 1..=6u64 {
                let len = Params::new(n, k).unwrap().string_len();
                let mut forward = s.prefix(len).unwrap().to_vec();
                forward.reverse();
                assert_eq!(forward, string(k, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn stream_rejects_zero_order() {
        assert!(matches!(infinite_onion_stream(0), Err(Error::ZeroOrder)));
    }
}
