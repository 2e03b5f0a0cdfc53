//! Alphabet and word primitives: parameters, base-k ranking, window
//! iteration, and string reversal.
//!
//! Symbols are plain unsigned integers. A word is a fixed-length slice of
//! symbols; a (k, n) De Bruijn string is a symbol sequence of length
//! k^n + n - 1 whose n-windows enumerate [k]^n exactly once.

use crate::error::{Error, Result};

/// A single letter of the alphabet [k] = {0, 1, ..., k-1}.
pub type Symbol = u64;

/// Validated (n, k) pair. Construction guarantees that k^n and the string
/// length k^n + n - 1 both fit the platform count range, so downstream
/// rank arithmetic cannot overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    n: usize,
    k: u64,
    word_count: usize,
}

impl Params {
    pub fn new(n: usize, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        if k == 0 {
            return Err(Error::ZeroAlphabet);
        }
        let overflow = Error::ParamsOverflow { n, k };
        let base = usize::try_from(k).map_err(|_| overflow.clone())?;
        let exp = u32::try_from(n).map_err(|_| overflow.clone())?;
        let word_count = base.checked_pow(exp).ok_or_else(|| overflow.clone())?;
        word_count.checked_add(n - 1).ok_or(overflow)?;
        Ok(Self { n, k, word_count })
    }

    /// Window length n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Alphabet size k.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// Number of n-words over [k], that is k^n.
    pub fn word_count(&self) -> usize {
        self.word_count
    }

    /// Length of a (k, n) De Bruijn string: k^n + n - 1.
    pub fn string_len(&self) -> usize {
        self.word_count + self.n - 1
    }

    /// Number of (n-1)-words over [k], that is k^(n-1).
    pub fn context_count(&self) -> usize {
        self.word_count / self.k_usize()
    }

    pub(crate) fn k_usize(&self) -> usize {
        self.k as usize
    }
}

/// Rank of an n-word in base-k positional order, most significant symbol
/// first. The empty-prefix identity rank(w) = rank(w[..n-1]) * k + w[n-1]
/// holds throughout.
pub fn word_rank(word: &[Symbol], params: &Params) -> Result<usize> {
    if word.len() != params.n() {
        return Err(Error::WordLength {
            expected: params.n(),
            found: word.len(),
        });
    }
    let k = params.k();
    let mut rank = 0usize;
    for &symbol in word {
        if symbol >= k {
            return Err(Error::SymbolOutOfRange { symbol, k });
        }
        rank = rank * params.k_usize() + symbol as usize;
    }
    Ok(rank)
}

/// Inverse of [`word_rank`]: the n-word over [k] with the given rank.
pub fn word_unrank(rank: usize, params: &Params) -> Result<Vec<Symbol>> {
    if rank >= params.word_count() {
        return Err(Error::RankOutOfRange {
            rank,
            count: params.word_count(),
        });
    }
    Ok(unrank_digits(rank, params.k_usize(), params.n()))
}

/// Base-k digits of `rank` as a word of the given length, most significant
/// first. The caller guarantees rank < k^len.
pub(crate) fn unrank_digits(rank: usize, k: usize, len: usize) -> Vec<Symbol> {
    let mut word = vec![0; len];
    let mut rest = rank;
    for slot in word.iter_mut().rev() {
        *slot = (rest % k) as Symbol;
        rest /= k;
    }
    debug_assert_eq!(rest, 0);
    word
}

/// Whether the word of the given length with this rank contains `symbol`.
pub(crate) fn rank_contains(rank: usize, k: usize, len: usize, symbol: Symbol) -> bool {
    let mut rest = rank;
    for _ in 0..len {
        if (rest % k) as Symbol == symbol {
            return true;
        }
        rest /= k;
    }
    false
}

/// All length-n windows of `s` in order: s[0..n], s[1..n+1], and so on,
/// yielding s.len() - n + 1 windows.
pub fn windows(s: &[Symbol], n: usize) -> Result<std::slice::Windows<'_, Symbol>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if s.len() < n {
        return Err(Error::TooShort {
            needed: n,
            found: s.len(),
        });
    }
    Ok(s.windows(n))
}

/// The reversal of `s`. Reversal maps each window to its reversed word, so
/// the reversal of a De Bruijn string is again a De Bruijn string.
pub fn reverse_string(s: &[Symbol]) -> Vec<Symbol> {
    s.iter().rev().copied().collect()
}

/// Compact display form of a word: concatenated digits when every symbol is
/// a single digit, otherwise comma separated. The empty word prints as "ε".
pub fn format_word(word: &[Symbol]) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    if word.iter().all(|&s| s <= 9) {
        word.iter().map(|s| s.to_string()).collect()
    } else {
        let parts: Vec<String> = word.iter().map(|s| s.to_string()).collect();
        parts.join(",")
    }
}

/// A symbol string whose n-windows are exactly the n-words over [k], each
/// occurring once. Generators construct these directly; arbitrary sequences
/// go through [`DeBruijnString::from_symbols`], which checks the property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeBruijnString {
    params: Params,
    symbols: Vec<Symbol>,
}

impl DeBruijnString {
    /// Validates length, symbol range, and window distinctness. Distinct
    /// windows at the exact length k^n + n - 1 force full coverage of [k]^n.
    pub fn from_symbols(params: Params, symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.len() != params.string_len() {
            return Err(Error::StringLength {
                expected: params.string_len(),
                found: symbols.len(),
            });
        }
        for &symbol in &symbols {
            if symbol >= params.k() {
                return Err(Error::SymbolOutOfRange {
                    symbol,
                    k: params.k(),
                });
            }
        }
        let mut first_seen = vec![usize::MAX; params.word_count()];
        for (position, window) in symbols.windows(params.n()).enumerate() {
            let rank = word_rank(window, &params).expect("symbols validated above");
            if first_seen[rank] != usize::MAX {
                return Err(Error::DuplicateWindow {
                    word: window.to_vec(),
                    first: first_seen[rank],
                    second: position,
                });
            }
            first_seen[rank] = position;
        }
        Ok(Self { params, symbols })
    }

    pub(crate) fn new_unchecked(params: Params, symbols: Vec<Symbol>) -> Self {
        debug_assert_eq!(symbols.len(), params.string_len());
        Self { params, symbols }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The reversed string, valid by the reversal closure property.
    pub fn reversed(&self) -> DeBruijnString {
        DeBruijnString::new_unchecked(self.params, reverse_string(&self.symbols))
    }
}
