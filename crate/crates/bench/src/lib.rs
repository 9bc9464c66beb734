//! Inputs shared by the benchmarks.

use kr_core::TangleWord;

/// Closed positive twist words `T^k!` for `k` in `ks`.
pub fn twist_words(ks: impl IntoIterator<Item = i64>) -> Vec<(i64, TangleWord)> {
    ks.into_iter().map(|k| (k, TangleWord::twist(k, true))).collect()
}
