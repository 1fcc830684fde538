//! Two-edge patterns: the order type of a pair of disjoint r-edges.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest rank whose patterns fit the bit encoding.
pub const MAX_PATTERN_RANK: usize = 32;

/// A word of length `2r` over `{A, B}` with `r` of each, starting with `A`.
/// Bit `i` of `bits` is set when position `i` holds `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    rank: u8,
    bits: u64,
}

impl Pattern {
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub(crate) fn from_bits_unchecked(rank: usize, bits: u64) -> Pattern {
        Pattern {
            rank: rank as u8,
            bits,
        }
    }

    pub fn word(&self) -> String {
        (0..2 * self.rank())
            .map(|i| if self.bits >> i & 1 == 1 { 'B' } else { 'A' })
            .collect()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pattern> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.is_empty() || !chars.len().is_multiple_of(2) || chars.len() > 2 * MAX_PATTERN_RANK
        {
            return Err(Error::InvalidPattern(format!("bad length in {s:?}")));
        }
        let first = chars[0];
        let other = chars.iter().copied().find(|&c| c != first);
        let Some(other) = other else {
            return Err(Error::InvalidPattern(format!("{s:?} uses one symbol")));
        };
        let mut bits = 0u64;
        let mut count_b = 0;
        for (i, &c) in chars.iter().enumerate() {
            if c == other {
                bits |= 1 << i;
                count_b += 1;
            } else if c != first {
                return Err(Error::InvalidPattern(format!("{s:?} uses three symbols")));
            }
        }
        let r = chars.len() / 2;
        if count_b != r {
            return Err(Error::InvalidPattern(format!(
                "{s:?} is not balanced between two symbols"
            )));
        }
        if r < 1 {
            return Err(Error::RankTooSmall(r));
        }
        Ok(Pattern::from_bits_unchecked(r, bits))
    }
}

/// Pattern bits of two disjoint ascending edges of equal rank with
/// `e[0] < f[0]`. No checks.
#[inline]
pub(crate) fn pattern_bits(e: &[u32], f: &[u32]) -> u64 {
    let (mut i, mut j, mut pos, mut bits) = (0, 0, 0, 0u64);
    while i < e.len() && j < f.len() {
        if e[i] < f[j] {
            i += 1;
        } else {
            bits |= 1 << pos;
            j += 1;
        }
        pos += 1;
    }
    while j < f.len() {
        bits |= 1 << pos;
        j += 1;
        pos += 1;
    }
    bits
}

/// Pattern of two disjoint edges; the one with the smaller leftmost vertex
/// plays `A`.
pub fn pattern_of(e: &[u32], f: &[u32]) -> Result<Pattern> {
    if e.len() != f.len() {
        return Err(Error::RankMismatch(e.len(), f.len()));
    }
    if e.is_empty() || e.len() > MAX_PATTERN_RANK {
        return Err(Error::InvalidArgument(format!("edge rank {}", e.len())));
    }
    let disjoint = {
        let (mut i, mut j) = (0, 0);
        let mut ok = true;
        while i < e.len() && j < f.len() {
            match e[i].cmp(&f[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    ok = false;
                    break;
                }
            }
        }
        ok
    };
    if !disjoint {
        return Err(Error::IntersectingEdges);
    }
    let bits = if e[0] < f[0] {
        pattern_bits(e, f)
    } else {
        pattern_bits(f, e)
    };
    Ok(Pattern::from_bits_unchecked(e.len(), bits))
}

/// All r-patterns in lexicographic order (`A < B`); there are `C(2r, r) / 2`.
pub fn enumerate_patterns(r: usize) -> Result<Vec<Pattern>> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    if r > MAX_PATTERN_RANK {
        return Err(Error::InvalidArgument(format!("rank {r} too large")));
    }
    Ok(patterns_of_rank(r))
}

/// Same as [`enumerate_patterns`] but admits `r = 1` (the single pattern `AB`).
pub(crate) fn patterns_of_rank(r: usize) -> Vec<Pattern> {
    fn rec(r: usize, pos: usize, a: usize, b: usize, bits: u64, out: &mut Vec<Pattern>) {
        if pos == 2 * r {
            out.push(Pattern::from_bits_unchecked(r, bits));
            return;
        }
        if a < r {
            rec(r, pos + 1, a + 1, b, bits, out);
        }
        if b < r && (pos > 0) {
            rec(r, pos + 1, a, b + 1, bits | 1 << pos, out);
        }
    }
    let mut out = Vec::new();
    rec(r, 0, 0, 0, 0, &mut out);
    out
}
