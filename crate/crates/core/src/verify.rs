//! Exhaustive property checkers that report outcomes as data.
//!
//! A failed property is not an error: every checker returns a
//! [`VerificationReport`] whose `passed` flag and optional counterexample
//! describe what was found. Errors are reserved for inputs outside a
//! checker's domain, such as a stream shorter than the range it is asked
//! to cover.
//!
//! The checkers tabulate windows directly from the input symbols and share
//! no code with the generators they judge.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{format_word, word_rank, word_unrank, DeBruijnString, Params, Symbol};

/// Work counters carried by every report.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerifyStats {
    pub windows_checked: u64,
    pub layers_checked: u64,
}

/// Evidence for a failed property. Fields are filled as applicable; the
/// `Display` form concatenates whatever is present.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_index: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<Symbol>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layer: Option<u64>,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if let Some(layer) = self.layer {
            parts.push(format!("layer {layer}"));
        }
        if let Some(index) = self.window_index {
            parts.push(format!("window {index}"));
        }
        if let Some(word) = &self.word {
            parts.push(format!("word {}", format_word(word)));
        }
        if let Some(expected) = &self.expected {
            parts.push(format!("expected {expected}"));
        }
        if let Some(found) = &self.found {
            parts.push(format!("found {found}"));
        }
        write!(f, "{}", parts.join(", "))
    }
}

/// Outcome of one property check. Serializes to a stable JSON object:
/// `{"property", "passed", "counterexample"?, "stats"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub property: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub stats: VerifyStats,
}

impl VerificationReport {
    pub fn pass(property: impl Into<String>, stats: VerifyStats) -> Self {
        Self {
            property: property.into(),
            passed: true,
            counterexample: None,
            stats,
        }
    }

    pub fn fail(
        property: impl Into<String>,
        counterexample: Counterexample,
        stats: VerifyStats,
    ) -> Self {
        Self {
            property: property.into(),
            passed: false,
            counterexample: Some(counterexample),
            stats,
        }
    }
}

const PROP_DEBRUIJN: &str = "debruijn";
const PROP_ONION: &str = "onion";
const PROP_ORDERING: &str = "ordering";
const PROP_CASCADE: &str = "cascade";

/// Whether `s` is a (k, n) De Bruijn string: correct length, symbols in
/// range, and every n-word over [k] occurring exactly once as a window.
pub fn is_de_bruijn(s: &[Symbol], k: u64, n: usize) -> VerificationReport {
    let mut stats = VerifyStats {
        windows_checked: 0,
        layers_checked: 1,
    };
    let params = match Params::new(n, k) {
        Ok(p) => p,
        Err(e) => {
            return VerificationReport::fail(
                PROP_DEBRUIJN,
                Counterexample {
                    expected: Some("usable parameters".into()),
                    found: Some(e.to_string()),
                    ..Counterexample::default()
                },
                stats,
            )
        }
    };
    if s.len() != params.string_len() {
        return VerificationReport::fail(
            PROP_DEBRUIJN,
            Counterexample {
                expected: Some(format!("length {}", params.string_len())),
                found: Some(format!("length {}", s.len())),
                ..Counterexample::default()
            },
            stats,
        );
    }
    for (position, &symbol) in s.iter().enumerate() {
        if symbol >= k {
            return VerificationReport::fail(
                PROP_DEBRUIJN,
                Counterexample {
                    expected: Some(format!("symbols below {k}")),
                    found: Some(format!("symbol {symbol} at position {position}")),
                    ..Counterexample::default()
                },
                stats,
            );
        }
    }
    let mut first_seen = vec![usize::MAX; params.word_count()];
    for (index, window) in s.windows(n).enumerate() {
        stats.windows_checked += 1;
        let rank = word_rank(window, &params).expect("symbols validated above");
        if first_seen[rank] != usize::MAX {
            return VerificationReport::fail(
                PROP_DEBRUIJN,
                Counterexample {
                    window_index: Some(index as u64),
                    word: Some(window.to_vec()),
                    expected: Some("each word exactly once".into()),
                    found: Some(format!("duplicate of window {}", first_seen[rank])),
                    ..Counterexample::default()
                },
                stats,
            );
        }
        first_seen[rank] = index;
    }
    if let Some(rank) = first_seen.iter().position(|&p| p == usize::MAX) {
        let word = word_unrank(rank, &params).expect("rank below k^n");
        return VerificationReport::fail(
            PROP_DEBRUIJN,
            Counterexample {
                word: Some(word),
                expected: Some("every word to occur".into()),
                found: Some("no occurrence".into()),
                ..Counterexample::default()
            },
            stats,
        );
    }
    VerificationReport::pass(PROP_DEBRUIJN, stats)
}

/// Whether a sequence opens an onion De Bruijn stream: for every k up to
/// `k_max`, its prefix of length k^n + n - 1 is a (k, n) De Bruijn string.
pub fn is_onion_prefix(s: &[Symbol], n: usize, k_max: u64) -> Result<VerificationReport> {
    if k_max == 0 {
        return Err(Error::ZeroAlphabet);
    }
    let outer = Params::new(n, k_max)?;
    if s.len() < outer.string_len() {
        return Err(Error::TooShort {
            needed: outer.string_len(),
            found: s.len(),
        });
    }
    let mut stats = VerifyStats::default();
    for k in 1..=k_max {
        let len = Params::new(n, k)?.string_len();
        let layer_report = is_de_bruijn(&s[..len], k, n);
        stats.windows_checked += layer_report.stats.windows_checked;
        stats.layers_checked = k;
        if !layer_report.passed {
            let mut counterexample = layer_report.counterexample.unwrap_or_default();
            counterexample.layer = Some(k);
            return Ok(VerificationReport::fail(PROP_ONION, counterexample, stats));
        }
    }
    Ok(VerificationReport::pass(PROP_ONION, stats))
}

/// Dense window-position table: maps each n-window of a sequence to its
/// unique 0-based position.
#[derive(Debug, Clone)]
pub struct WindowPositionIndex {
    n: usize,
    k: u64,
    positions: Vec<usize>,
}

impl WindowPositionIndex {
    /// Order n of the indexed windows.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Alphabet bound used for ranking: one past the largest symbol seen.
    pub fn alphabet(&self) -> u64 {
        self.k
    }

    /// Position of `word`, or `None` if it never occurs (or falls outside
    /// the indexed alphabet).
    pub fn get(&self, word: &[Symbol]) -> Option<usize> {
        if word.len() != self.n {
            return None;
        }
        let mut rank = 0usize;
        for &symbol in word {
            if symbol >= self.k {
                return None;
            }
            rank = rank * self.k as usize + symbol as usize;
        }
        self.get_rank(rank)
    }

    pub(crate) fn get_rank(&self, rank: usize) -> Option<usize> {
        match self.positions.get(rank) {
            Some(&p) if p != usize::MAX => Some(p),
            _ => None,
        }
    }

    /// Number of indexed windows.
    pub fn len(&self) -> usize {
        self.positions.iter().filter(|&&p| p != usize::MAX).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Builds the window-position table of `s`. The alphabet bound is derived
/// from the largest symbol present. Fails if any window occurs twice.
pub fn window_position_index(s: &[Symbol], n: usize) -> Result<WindowPositionIndex> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if s.len() < n {
        return Err(Error::TooShort {
            needed: n,
            found: s.len(),
        });
    }
    let k = s.iter().copied().max().unwrap_or(0) + 1;
    let params = Params::new(n, k)?;
    let mut positions = vec![usize::MAX; params.word_count()];
    for (position, window) in s.windows(n).enumerate() {
        let rank = word_rank(window, &params).expect("alphabet bound covers every symbol");
        if positions[rank] != usize::MAX {
            return Err(Error::DuplicateWindow {
                word: window.to_vec(),
                first: positions[rank],
                second: position,
            });
        }
        positions[rank] = position;
    }
    Ok(WindowPositionIndex { n, k, positions })
}

/// Occurrence record for one (n-1)-context y: the window positions of the
/// words y·τ for τ from max(y) upward, listed in position order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingWitness {
    pub context: Vec<Symbol>,
    pub threshold: Symbol,
    pub occurrences: Vec<(Symbol, u64)>,
}

/// Checks the increasing-order property of an onion stream prefix: for
/// every context y over [k_max] with threshold μ = max(y), the windows
/// y·μ, y·(μ+1), ..., y·(k_max - 1) occur at strictly increasing positions.
/// Returns the report together with one witness per context.
pub fn check_increasing_order(
    s: &[Symbol],
    n: usize,
    k_max: u64,
) -> Result<(VerificationReport, Vec<OrderingWitness>)> {
    if k_max == 0 {
        return Err(Error::ZeroAlphabet);
    }
    let params = Params::new(n, k_max)?;
    let needed = params.string_len();
    if s.len() < needed {
        return Err(Error::TooShort {
            needed,
            found: s.len(),
        });
    }
    let index = window_position_index(&s[..needed], n)?;
    let mut stats = VerifyStats {
        windows_checked: 0,
        layers_checked: k_max,
    };
    let mut witnesses = Vec::with_capacity(params.context_count());
    let mut failure: Option<Counterexample> = None;
    let mut word = vec![0; n];
    for context_rank in 0..params.context_count() {
        let context = crate::words::unrank_digits(context_rank, params.k_usize(), n - 1);
        let threshold = context.iter().copied().max().unwrap_or(0);
        word[..n - 1].copy_from_slice(&context);
        let mut occurrences: Vec<(Symbol, u64)> = Vec::new();
        let mut previous: Option<(Symbol, usize)> = None;
        for tau in threshold..k_max {
            word[n - 1] = tau;
            stats.windows_checked += 1;
            match index.get(&word) {
                Some(position) => {
                    occurrences.push((tau, position as u64));
                    if let Some((prev_tau, prev_position)) = previous {
                        if position <= prev_position && failure.is_none() {
                            let mut prev_word = context.clone();
                            prev_word.push(prev_tau);
                            failure = Some(Counterexample {
                                window_index: Some(position as u64),
                                word: Some(word.clone()),
                                expected: Some(format!(
                                    "a position after {} (window {})",
                                    prev_position,
                                    format_word(&prev_word)
                                )),
                                found: Some(format!("position {position}")),
                                ..Counterexample::default()
                            });
                        }
                    }
                    previous = Some((tau, position));
                }
                None => {
                    if failure.is_none() {
                        failure = Some(Counterexample {
                            word: Some(word.clone()),
                            expected: Some("every extension to occur".into()),
                            found: Some("no occurrence".into()),
                            ..Counterexample::default()
                        });
                    }
                }
            }
        }
        occurrences.sort_by_key(|&(_, position)| position);
        witnesses.push(OrderingWitness {
            context,
            threshold,
            occurrences,
        });
    }
    let report = match failure {
        None => VerificationReport::pass(PROP_ORDERING, stats),
        Some(counterexample) => VerificationReport::fail(PROP_ORDERING, counterexample, stats),
    };
    Ok((report, witnesses))
}

/// Checks the zero-suffix cascade of a De Bruijn string: for every n-word
/// w, the windows w, w[1..]·0, w[2..]·00, ..., w[n-1..]·0^(n-1) occur at
/// strictly increasing positions. Once the remaining suffix of w is all
/// zeros, every further shift reproduces the word 0^n, so the chain is
/// compared only while consecutive shifts still differ. The prefer-max
/// strings satisfy this.
pub fn check_zero_cascade(s: &DeBruijnString) -> VerificationReport {
    let params = s.params();
    let n = params.n();
    let k = params.k_usize();
    let mut stats = VerifyStats {
        windows_checked: 0,
        layers_checked: 1,
    };
    let index = match window_position_index(s.symbols(), n) {
        Ok(index) => index,
        Err(e) => {
            return VerificationReport::fail(
                PROP_CASCADE,
                Counterexample {
                    expected: Some("distinct windows".into()),
                    found: Some(e.to_string()),
                    ..Counterexample::default()
                },
                stats,
            )
        }
    };
    for rank in 0..params.word_count() {
        stats.windows_checked += 1;
        let mut previous = match index.get_rank(rank) {
            Some(p) => p,
            None => {
                let word = word_unrank(rank, &params).expect("rank below k^n");
                return VerificationReport::fail(
                    PROP_CASCADE,
                    Counterexample {
                        word: Some(word),
                        expected: Some("every word to occur".into()),
                        found: Some("no occurrence".into()),
                        ..Counterexample::default()
                    },
                    stats,
                );
            }
        };
        // rank of w[m-1..]·0^(m-1) = (rank mod k^(n-m+1)) * k^(m-1)
        let mut previous_rank = rank;
        let mut suffix_modulus = params.word_count() / k;
        let mut zero_pad = k;
        for step in 1..n {
            let shifted = (rank % suffix_modulus) * zero_pad;
            if shifted == previous_rank {
                // The suffix has drained to zeros; all later shifts are 0^n.
                break;
            }
            previous_rank = shifted;
            let position = index
                .get_rank(shifted)
                .expect("a valid De Bruijn string contains every word");
            if position <= previous {
                let word = word_unrank(rank, &params).expect("rank below k^n");
                let shifted_word = word_unrank(shifted, &params).expect("rank below k^n");
                return VerificationReport::fail(
                    PROP_CASCADE,
                    Counterexample {
                        window_index: Some(position as u64),
                        word: Some(shifted_word),
                        expected: Some(format!(
                            "a position after {} (word {}, shift {})",
                            previous,
                            format_word(&word),
                            step
                        )),
                        found: Some(format!("position {position}")),
                        ..Counterexample::default()
                    },
                    stats,
                );
            }
            previous = position;
            suffix_modulus /= k;
            zero_pad *= k;
        }
    }
    VerificationReport::pass(PROP_CASCADE, stats)
}
