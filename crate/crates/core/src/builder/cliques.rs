use crate::clique::{greedy_pattern_clique, max_clique_any, PairTable};
use crate::matching::OrderedMatching;
use crate::oracle::CliqueCertificate;
use crate::pattern::Pattern;

/// Default size up to which `clique_find` runs the exact search.
pub const CLIQUE_EXACT_LIMIT: usize = 24;

/// Number of greedy sweeps per pattern when the search is not exact.
const GREEDY_STARTS: usize = 16;

/// A large pattern clique among `edges` (sorted by leftmost vertex, all of
/// rank `rank`, possibly 1). Returns the pattern bits and ascending members.
pub(crate) fn find_clique<E: AsRef<[u32]>>(
    edges: &[E],
    rank: usize,
    exact_limit: usize,
) -> (Pattern, Vec<usize>) {
    let m = edges.len();
    if rank == 1 {
        // two single vertices always form AB
        return (Pattern::from_bits_unchecked(1, 0b10), (0..m).collect());
    }
    let table = PairTable::new(edges);
    if m <= exact_limit {
        return max_clique_any(&table, rank);
    }
    let starts: Vec<usize> = (0..GREEDY_STARTS.min(m))
        .map(|i| i * m / GREEDY_STARTS.min(m))
        .collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    for p in table.occurring() {
        for &s in &starts {
            let c = greedy_pattern_clique(&table, p, s);
            if best.as_ref().is_none_or(|(_, b)| c.len() > b.len()) {
                best = Some((p, c));
            }
        }
    }
    let (bits, members) = best.expect("m > exact limit implies pairs exist");
    (Pattern::from_bits_unchecked(rank, bits), members)
}

/// Pattern clique in `m`: exact for `m.size() <= exact_limit`, otherwise the
/// best greedy left-to-right sweep over all occurring patterns.
pub fn clique_find_with(m: &OrderedMatching, exact_limit: usize) -> CliqueCertificate {
    if m.size() == 0 {
        let pattern = crate::pattern::patterns_of_rank(m.rank())[0];
        return CliqueCertificate {
            pattern,
            members: Vec::new(),
        };
    }
    let (pattern, members) = find_clique(m.edges(), m.rank(), exact_limit);
    CliqueCertificate { pattern, members }
}

pub fn clique_find(m: &OrderedMatching) -> CliqueCertificate {
    clique_find_with(m, CLIQUE_EXACT_LIMIT)
}
