//! Dense indexing of cop placements.
//!
//! A placement of `k` interchangeable cops on `n` vertices is a sorted
//! multiset. Shifting the `i`-th entry by `i` turns it into a strictly
//! increasing combination of `{0, .., n + k - 2}`, which is then ranked in
//! colexicographic order with the combinatorial number system.

use std::sync::OnceLock;

use thiserror::Error;

const TABLE_N: usize = 128;
const TABLE_K: usize = 17;

fn table() -> &'static [[u64; TABLE_K]] {
    static TABLE: OnceLock<Vec<[u64; TABLE_K]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![[0u64; TABLE_K]; TABLE_N];
        for (n, row) in t.iter_mut().enumerate() {
            for (k, cell) in row.iter_mut().enumerate() {
                *cell = binomial_slow(n as u64, k as u64);
            }
        }
        t
    })
}

#[inline]
fn binom_fast(n: usize, k: usize) -> u64 {
    if n < TABLE_N && k < TABLE_K {
        table()[n][k]
    } else {
        binomial_slow(n as u64, k as u64)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultisetError {
    #[error("multiset {0:?} is not sorted ascending")]
    Unsorted(Vec<usize>),
    #[error("element {element} out of range for {n} vertices")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("index {index} out of range: only {count} multisets")]
    IndexOutOfRange { index: u64, count: u64 },
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if n < TABLE_N as u64 && k < TABLE_K as u64 {
        return table()[n as usize][k as usize];
    }
    binomial_slow(n, k)
}

fn binomial_slow(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of sorted `k`-multisets of `n` vertices: `C(n + k - 1, k)`.
pub fn multiset_count(n: usize, k: usize) -> u64 {
    if n == 0 {
        return (k == 0) as u64;
    }
    binomial((n + k - 1) as u64, k as u64)
}

pub fn multiset_rank(cops: &[usize], n: usize) -> Result<u64, MultisetError> {
    if cops.windows(2).any(|w| w[0] > w[1]) {
        return Err(MultisetError::Unsorted(cops.to_vec()));
    }
    if let Some(&element) = cops.iter().find(|&&c| c >= n) {
        return Err(MultisetError::ElementOutOfRange { element, n });
    }
    Ok(rank_sorted(cops))
}

/// Rank of an already validated sorted multiset.
#[inline]
pub(crate) fn rank_sorted(cops: &[usize]) -> u64 {
    cops.iter()
        .enumerate()
        .map(|(i, &c)| binom_fast(c + i, i + 1))
        .sum()
}

pub fn multiset_unrank(index: u64, k: usize, n: usize) -> Result<Vec<usize>, MultisetError> {
    let count = multiset_count(n, k);
    if index >= count {
        return Err(MultisetError::IndexOutOfRange { index, count });
    }
    let mut out = vec![0; k];
    unrank_into(index, n, &mut out);
    Ok(out)
}

/// Unrank into `out` (length `k`), assuming `index` is in range.
pub(crate) fn unrank_into(mut index: u64, n: usize, out: &mut [usize]) {
    let k = out.len();
    let mut hi = (n + k - 1) as u64;
    for i in (0..k).rev() {
        let r = (i + 1) as u64;
        // largest d < hi with C(d, r) <= index
        let mut d = hi - 1;
        while binom_fast(d as usize, r as usize) > index {
            d -= 1;
        }
        index -= binom_fast(d as usize, r as usize);
        out[i] = d as usize - i;
        hi = d;
    }
}
