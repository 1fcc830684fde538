use crate::error::{Error, Result};
use crate::matching::OrderedMatching;

/// How the edges of a matching meet the first half `{1, ..., floor(rn/2)}` of
/// its vertex set: `counts[p]` edges have exactly `p` vertices there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSplit {
    pub rank: usize,
    /// Largest vertex of the first half.
    pub boundary: u32,
    pub counts: Vec<usize>,
}

impl HalfSplit {
    pub fn n(&self) -> usize {
        self.counts.iter().sum()
    }

    /// The identities `sum n_p = n`, `sum p n_p = floor(rn/2)` and
    /// `sum (r-p) n_p = ceil(rn/2)`.
    pub fn identities_hold(&self) -> bool {
        let n = self.n();
        let r = self.rank;
        let inside: usize = self.counts.iter().enumerate().map(|(p, c)| p * c).sum();
        let outside: usize = self
            .counts
            .iter()
            .enumerate()
            .map(|(p, c)| (r - p) * c)
            .sum();
        inside == r * n / 2 && outside == (r * n).div_ceil(2)
    }
}

/// Largest vertex of the first half of the union of `edges`, or 0 when empty.
pub(crate) fn half_boundary<E: AsRef<[u32]>>(edges: &[E]) -> u32 {
    let mut vertices: Vec<u32> = edges
        .iter()
        .flat_map(|e| e.as_ref().iter().copied())
        .collect();
    let half = vertices.len() / 2;
    if half == 0 {
        return 0;
    }
    let (_, nth, _) = vertices.select_nth_unstable(half - 1);
    *nth
}

/// Number of vertices of each edge lying in the first half.
pub(crate) fn inside_counts<E: AsRef<[u32]>>(edges: &[E], boundary: u32) -> Vec<usize> {
    edges
        .iter()
        .map(|e| e.as_ref().partition_point(|&v| v <= boundary))
        .collect()
}

pub fn split_counts(m: &OrderedMatching) -> Result<HalfSplit> {
    if !m.is_full() {
        return Err(Error::NotFull);
    }
    let boundary = (m.ground_size() / 2) as u32;
    let mut counts = vec![0; m.rank() + 1];
    for p in inside_counts(m.edges(), boundary) {
        counts[p] += 1;
    }
    Ok(HalfSplit {
        rank: m.rank(),
        boundary,
        counts,
    })
}
