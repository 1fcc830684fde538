//! Twins from the block hypergraph of a matching.
//!
//! The ground set `[rn]` is cut into consecutive blocks of `a` vertices. An
//! edge meeting `r` distinct blocks `I = {i_1 < ... < i_r}` once each is an
//! `I`-set; `I` becomes a hyperedge when at least two edges are `I`-sets.
//! Two witnesses of each hyperedge of a matching in this hypergraph give one
//! edge to each side of a pair of twins.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::OrderedMatching;
use crate::twins::{verify_twins, TwinsCertificate};

/// Hyperedge budget for the exact hypergraph matching mode.
pub const EXACT_MATCHING_LIMIT: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockSize {
    Auto,
    Fixed(usize),
}

/// `(20 e r!)^(-1/(r+1))`.
pub fn auto_beta(r: usize) -> f64 {
    let r_fact: f64 = (1..=r).map(|k| k as f64).product();
    (20.0 * std::f64::consts::E * r_fact).powf(-1.0 / (r as f64 + 1.0))
}

/// `round(beta n^((r-1)/(r+1)))` clamped to `[2, rn]`.
pub fn auto_block_size(n: usize, r: usize) -> usize {
    let raw = auto_beta(r) * (n as f64).powf((r as f64 - 1.0) / (r as f64 + 1.0));
    (raw.round() as usize).clamp(2, (r * n).max(2))
}

#[derive(Clone, Debug)]
pub struct BlockHypergraph {
    pub block_size: usize,
    pub blocks: usize,
    /// Block tuple of every edge that is an I-set, with its edge indices.
    isets: BTreeMap<Vec<u32>, Vec<usize>>,
    /// Edges discarded for meeting some block twice.
    pub discarded: usize,
}

/// Summary statistics of a block hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypergraphStats {
    /// Number of hyperedges.
    pub hyperedges: usize,
    /// Hyperedges all of whose vertices have degree 1.
    pub isolated: usize,
    /// Pairs of edges that are I-sets for a common I.
    pub witness_pairs: u64,
    /// `degree_histogram[d]` vertices have degree `d`.
    pub degree_histogram: Vec<usize>,
}

impl BlockHypergraph {
    pub fn build(m: &OrderedMatching, block_size: usize) -> Result<BlockHypergraph> {
        if block_size < 2 {
            return Err(Error::InvalidArgument(format!(
                "block size must be at least 2, got {block_size}"
            )));
        }
        if !m.is_full() {
            return Err(Error::NotFull);
        }
        let blocks = (m.ground_size() / block_size).max(1);
        let block_of = |v: u32| (((v - 1) as usize / block_size).min(blocks - 1)) as u32;
        let mut isets: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
        let mut discarded = 0;
        for (idx, e) in m.edges().iter().enumerate() {
            let tuple: Vec<u32> = e.iter().map(|&v| block_of(v)).collect();
            if tuple.windows(2).any(|w| w[0] == w[1]) {
                discarded += 1;
                continue;
            }
            isets.entry(tuple).or_default().push(idx);
        }
        Ok(BlockHypergraph {
            block_size,
            blocks,
            isets,
            discarded,
        })
    }

    /// Hyperedges in lexicographic order with their witnesses.
    pub fn hyperedges(&self) -> impl Iterator<Item = (&[u32], &[usize])> {
        self.isets
            .iter()
            .filter(|(_, w)| w.len() >= 2)
            .map(|(i, w)| (i.as_slice(), w.as_slice()))
    }

    pub fn stats(&self) -> HypergraphStats {
        let mut degree = vec![0usize; self.blocks];
        let mut witness_pairs = 0u64;
        for w in self.isets.values() {
            let x = w.len() as u64;
            witness_pairs += x * (x.saturating_sub(1)) / 2;
        }
        for (i, _) in self.hyperedges() {
            for &b in i {
                degree[b as usize] += 1;
            }
        }
        let isolated = self
            .hyperedges()
            .filter(|(i, _)| i.iter().all(|&b| degree[b as usize] == 1))
            .count();
        let max_deg = degree.iter().copied().max().unwrap_or(0);
        let mut degree_histogram = vec![0; max_deg + 1];
        for d in degree {
            degree_histogram[d] += 1;
        }
        HypergraphStats {
            hyperedges: self.hyperedges().count(),
            isolated,
            witness_pairs,
            degree_histogram,
        }
    }

    /// Hyperedges chosen greedily in lexicographic order.
    pub fn greedy_matching(&self) -> Vec<&[u32]> {
        let mut used = vec![false; self.blocks];
        let mut chosen = Vec::new();
        for (i, _) in self.hyperedges() {
            if i.iter().all(|&b| !used[b as usize]) {
                for &b in i {
                    used[b as usize] = true;
                }
                chosen.push(i);
            }
        }
        chosen
    }

    /// Maximum matching by exhaustive branching; `None` over `limit`
    /// hyperedges.
    pub fn maximum_matching(&self, limit: usize) -> Option<Vec<&[u32]>> {
        let edges: Vec<&[u32]> = self.hyperedges().map(|(i, _)| i).collect();
        if edges.len() > limit {
            return None;
        }
        fn go<'a>(
            edges: &[&'a [u32]],
            at: usize,
            used: &mut Vec<bool>,
            cur: &mut Vec<&'a [u32]>,
            best: &mut Vec<&'a [u32]>,
        ) {
            if cur.len() + (edges.len() - at) <= best.len() {
                return;
            }
            if at == edges.len() {
                *best = cur.clone();
                return;
            }
            let e = edges[at];
            if e.iter().all(|&b| !used[b as usize]) {
                for &b in e {
                    used[b as usize] = true;
                }
                cur.push(e);
                go(edges, at + 1, used, cur, best);
                cur.pop();
                for &b in e {
                    used[b as usize] = false;
                }
            }
            go(edges, at + 1, used, cur, best);
        }
        let mut best = Vec::new();
        go(
            &edges,
            0,
            &mut vec![false; self.blocks],
            &mut Vec::new(),
            &mut best,
        );
        Some(best)
    }

    /// Twins from a matching of the hypergraph: first two witnesses of each
    /// selected hyperedge.
    pub fn lift(&self, m: &OrderedMatching, selected: &[&[u32]]) -> TwinsCertificate {
        let mut left = Vec::with_capacity(selected.len());
        let mut right = Vec::with_capacity(selected.len());
        for i in selected {
            let w = &self.isets[*i];
            left.push(w[0]);
            right.push(w[1]);
        }
        verify_twins(m, &left, &right).expect("disjoint block sets give twins")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchingMode {
    Greedy,
    /// Exact when the hypergraph has at most this many hyperedges,
    /// greedy otherwise.
    Exact(usize),
}

pub fn block_twin_finder(m: &OrderedMatching, block_size: BlockSize) -> Result<TwinsCertificate> {
    block_twin_finder_with(m, block_size, MatchingMode::Greedy)
}

pub fn block_twin_finder_with(
    m: &OrderedMatching,
    block_size: BlockSize,
    mode: MatchingMode,
) -> Result<TwinsCertificate> {
    let a = match block_size {
        BlockSize::Auto => auto_block_size(m.size(), m.rank()),
        BlockSize::Fixed(a) => a,
    };
    let h = BlockHypergraph::build(m, a)?;
    let selected = match mode {
        MatchingMode::Greedy => h.greedy_matching(),
        MatchingMode::Exact(limit) => h
            .maximum_matching(limit)
            .unwrap_or_else(|| h.greedy_matching()),
    };
    Ok(h.lift(m, &selected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_matching, SeededSource};
    use crate::matching::parse_word;

    #[test]
    fn hand_examples() {
        let m = parse_word("ABAB").unwrap();
        let c = block_twin_finder(&m, BlockSize::Fixed(2)).unwrap();
        assert_eq!(c.size(), 1);
        let h = BlockHypergraph::build(&m, 2).unwrap();
        let hs: Vec<_> = h.hyperedges().collect();
        assert_eq!(hs, vec![(&[0u32, 1][..], &[0usize, 1][..])]);

        let m = parse_word("AABB").unwrap();
        assert_eq!(
            block_twin_finder(&m, BlockSize::Fixed(2)).unwrap().size(),
            0
        );
        assert_eq!(BlockHypergraph::build(&m, 2).unwrap().discarded, 2);
        assert!(block_twin_finder(&m, BlockSize::Fixed(1)).is_err());
    }

    #[test]
    fn auto_sizes() {
        // beta for r = 2 is about 0.2096
        assert!((auto_beta(2) - 0.2096).abs() < 1e-3);
        assert_eq!(auto_block_size(256, 2), 2);
        assert_eq!(auto_block_size(1 << 16, 2), 8);
        assert_eq!(auto_block_size(50, 3), 2);
        assert_eq!(auto_block_size(1, 2), 2);
    }

    #[test]
    fn remainder_goes_to_last_block() {
        // rn = 6, a = 4: one block of 6
        let m = parse_word("ABCABC").unwrap();
        let h = BlockHypergraph::build(&m, 4).unwrap();
        assert_eq!(h.blocks, 1);
        assert_eq!(h.discarded, 3);
    }

    #[test]
    fn exact_mode_at_least_greedy() {
        for seed in 0..30 {
            let m = random_matching(400, 2, SeededSource::new(seed, 0)).unwrap();
            let g = block_twin_finder(&m, BlockSize::Fixed(6)).unwrap();
            let e =
                block_twin_finder_with(&m, BlockSize::Fixed(6), MatchingMode::Exact(40)).unwrap();
            assert!(e.size() >= g.size());
            assert!(g.size() <= m.size() / 2);
        }
    }

    #[test]
    fn stats_are_consistent() {
        let m = random_matching(2000, 2, SeededSource::new(9, 0)).unwrap();
        let h = BlockHypergraph::build(&m, 8).unwrap();
        let s = h.stats();
        assert_eq!(s.degree_histogram.iter().sum::<usize>(), h.blocks);
        assert!(s.isolated <= s.hyperedges);
        assert!(s.witness_pairs >= s.hyperedges as u64);
        assert!(h.greedy_matching().len() >= s.isolated);
        assert!(s.degree_histogram.len() <= 8 / 2 + 1);
    }
}
