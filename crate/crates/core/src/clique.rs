//! Pattern cliques: sub-matchings in which every pair of edges realizes one
//! fixed pattern.
//!
//! Works on raw edge lists sorted by leftmost vertex, so prefix and suffix
//! matchings of any rank (including rank 1) can be searched directly.

use crate::pattern::{pattern_bits, Pattern};

/// Pattern bits for every ordered pair `i < j`, row-major upper triangle.
pub(crate) struct PairTable {
    m: usize,
    bits: Vec<u64>,
}

impl PairTable {
    pub(crate) fn new<E: AsRef<[u32]>>(edges: &[E]) -> PairTable {
        let m = edges.len();
        let mut bits = vec![0u64; m * m];
        for i in 0..m {
            for j in i + 1..m {
                bits[i * m + j] = pattern_bits(edges[i].as_ref(), edges[j].as_ref());
            }
        }
        PairTable { m, bits }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> u64 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.bits[a * self.m + b]
    }

    /// Distinct patterns occurring among pairs, ascending by bits.
    pub(crate) fn occurring(&self) -> Vec<u64> {
        let mut seen: Vec<u64> = (0..self.m)
            .flat_map(|i| (i + 1..self.m).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen
    }
}

#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn empty(n: usize) -> BitSet {
        BitSet(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> BitSet {
        let mut s = BitSet::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not_in_place(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }
}

/// Maximum clique of an undirected graph given by adjacency bitsets, by
/// branch and bound with greedy colouring bounds.
struct MaxClique<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    current: Vec<usize>,
}

impl MaxClique<'_> {
    fn colour_sort(&self, candidates: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = candidates.clone();
        let mut order = Vec::new();
        let mut bounds = Vec::new();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut available = uncoloured.clone();
            loop {
                let Some(v) = available.iter().next() else {
                    break;
                };
                available.remove(v);
                available.and_not_in_place(&self.adj[v]);
                uncoloured.remove(v);
                order.push(v);
                bounds.push(colour);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, mut candidates: BitSet) {
        let (order, bounds) = self.colour_sort(&candidates);
        for idx in (0..order.len()).rev() {
            if self.current.len() + bounds[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let next = candidates.and(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }
}

/// Largest set of indices all of whose pairs realize `pattern`, ascending.
pub(crate) fn max_pattern_clique(table: &PairTable, pattern: u64) -> Vec<usize> {
    let m = table.m;
    if m == 0 {
        return Vec::new();
    }
    let mut adj = vec![BitSet::empty(m); m];
    for i in 0..m {
        for j in i + 1..m {
            if table.get(i, j) == pattern {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let mut search = MaxClique {
        adj: &adj,
        best: vec![0],
        current: Vec::new(),
    };
    search.expand(BitSet::full(m));
    let mut best = search.best;
    best.sort_unstable();
    best
}

/// Greedy P-clique: sweep edges left to right from `start`, adding every
/// edge compatible with all chosen ones.
pub(crate) fn greedy_pattern_clique(table: &PairTable, pattern: u64, start: usize) -> Vec<usize> {
    let mut chosen = vec![start];
    for j in start + 1..table.m {
        if chosen.iter().all(|&i| table.get(i, j) == pattern) {
            chosen.push(j);
        }
    }
    chosen
}

/// Best clique over all patterns of the given rank, exact. Ties go to the
/// lexicographically smallest pattern.
pub(crate) fn max_clique_any(table: &PairTable, rank: usize) -> (Pattern, Vec<usize>) {
    let patterns = crate::pattern::patterns_of_rank(rank);
    let occurring = table.occurring();
    let mut best: Option<(Pattern, Vec<usize>)> = None;
    for p in patterns {
        let members = if occurring.binary_search(&p.bits()).is_ok() {
            max_pattern_clique(table, p.bits())
        } else if table.m > 0 {
            vec![0]
        } else {
            Vec::new()
        };
        if best.as_ref().is_none_or(|(_, b)| members.len() > b.len()) {
            best = Some((p, members));
        }
    }
    best.expect("at least one pattern")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(table: &PairTable, pattern: u64) -> usize {
        let m = table.m;
        let mut best = 0;
        for mask in 0u32..(1 << m) {
            let members: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let ok = members
                .iter()
                .enumerate()
                .all(|(a, &i)| members[a + 1..].iter().all(|&j| table.get(i, j) == pattern));
            if ok {
                best = best.max(members.len());
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_on_random_tables() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let m = crate::gen::random_matching_with(n, 3, &mut rng).unwrap();
            let table = PairTable::new(m.edges());
            for p in crate::pattern::patterns_of_rank(3) {
                assert_eq!(
                    max_pattern_clique(&table, p.bits()).len(),
                    brute(&table, p.bits())
                );
            }
        }
    }
}
