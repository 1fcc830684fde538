//! Recursive twins construction driven by how edges straddle the middle of
//! the vertex set.
//!
//! With `n_p` the number of edges having exactly `p` vertices in the first
//! half, the finder tries every applicable branch and keeps the largest
//! twins:
//!
//! * `Concatenate`: twins inside the edges lying wholly in the first half,
//!   joined with twins inside the edges lying wholly in the second half.
//! * `RightEnds`: edges with `r - 1` vertices in the first half. A pattern
//!   clique among their prefixes, then twins in the permutation formed by
//!   the lone second-half vertices.
//! * `LeftEnds`: the mirror image for edges with a single first-half vertex.
//! * `Layered`: edges with `2 <= p <= r - 2` first-half vertices. A clique
//!   on one side, then recursive twins among the other sides of its members.
//! * `CliqueHalves`: a pattern clique of the whole matching cut in two.

use std::fmt;

use crate::builder::cliques::{find_clique, CLIQUE_EXACT_LIMIT};
use crate::builder::perm_twins::{longest_increasing, permutation_twins_with, PERM_EXACT_LIMIT};
use crate::builder::split::{half_boundary, inside_counts};
use crate::matching::{label_sequence, OrderedMatching};
use crate::twins::{verify_twins, TwinsCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    Concatenate,
    RightEnds,
    LeftEnds,
    /// Clique on the `p`-vertex first-half parts, recursion on the rest.
    LayeredPrefix(usize),
    /// Clique on the second-half parts, recursion on the `p`-vertex prefixes.
    LayeredSuffix(usize),
    CliqueHalves,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Concatenate => f.write_str("concatenate"),
            Branch::RightEnds => f.write_str("right-ends"),
            Branch::LeftEnds => f.write_str("left-ends"),
            Branch::LayeredPrefix(p) => write!(f, "layered-prefix-{p}"),
            Branch::LayeredSuffix(p) => write!(f, "layered-suffix-{p}"),
            Branch::CliqueHalves => f.write_str("clique-halves"),
        }
    }
}

/// Twins as matched lists: `left[g]` corresponds to `right[g]`.
#[derive(Clone, Debug, Default)]
struct Pairing {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Pairing {
    fn size(&self) -> usize {
        self.left.len()
    }

    fn map(&self, to_parent: &[usize]) -> Pairing {
        Pairing {
            left: self.left.iter().map(|&i| to_parent[i]).collect(),
            right: self.right.iter().map(|&i| to_parent[i]).collect(),
        }
    }

    /// Sorts both sides by index. Only correct when the matched order agrees
    /// with the index order on both sides simultaneously.
    fn into_sorted(mut self) -> Pairing {
        self.left.sort_unstable();
        self.right.sort_unstable();
        self
    }
}

#[derive(Clone, Debug)]
pub struct RecursiveFinder {
    pub clique_exact_limit: usize,
    pub perm_exact_limit: usize,
}

impl Default for RecursiveFinder {
    fn default() -> Self {
        RecursiveFinder {
            clique_exact_limit: CLIQUE_EXACT_LIMIT,
            perm_exact_limit: PERM_EXACT_LIMIT,
        }
    }
}

fn same_shape(edges: &[Vec<u32>], a: &[usize], b: &[usize]) -> bool {
    let la = label_sequence(a.iter().map(|&i| edges[i].as_slice()));
    let lb = label_sequence(b.iter().map(|&i| edges[i].as_slice()));
    la == lb
}

/// Largest sub-pairing on which `order` ranks the left and right members
/// consistently: `order[l_g] < order[l_h]` iff `order[r_g] < order[r_h]`.
fn consistent_part(pairing: &Pairing, order: &[usize]) -> Pairing {
    let mut gs: Vec<usize> = (0..pairing.size()).collect();
    gs.sort_unstable_by_key(|&g| order[pairing.left[g]]);
    let right_ranks: Vec<u32> = gs.iter().map(|&g| order[pairing.right[g]] as u32).collect();
    let keep = longest_increasing(&right_ranks);
    Pairing {
        left: keep.iter().map(|&i| pairing.left[gs[i]]).collect(),
        right: keep.iter().map(|&i| pairing.right[gs[i]]).collect(),
    }
}

impl RecursiveFinder {
    pub fn find(&self, m: &OrderedMatching) -> TwinsCertificate {
        let best = self.solve(m.edges(), m.rank());
        verify_twins(m, &best.left, &best.right).expect("recursive construction yields twins")
    }

    /// Size obtained by each applicable branch at the top level.
    pub fn branch_sizes(&self, m: &OrderedMatching) -> Vec<(Branch, usize)> {
        self.branches(m.edges(), m.rank())
            .into_iter()
            .map(|(b, p)| (b, p.size()))
            .collect()
    }

    fn solve(&self, edges: &[Vec<u32>], rank: usize) -> Pairing {
        let mut best: Option<Pairing> = None;
        for (_, p) in self.branches(edges, rank) {
            if best.as_ref().is_none_or(|b| p.size() > b.size()) {
                best = Some(p);
            }
        }
        best.unwrap_or_default()
    }

    fn branches(&self, edges: &[Vec<u32>], rank: usize) -> Vec<(Branch, Pairing)> {
        let n = edges.len();
        let mut out = Vec::new();
        if n < 2 {
            return out;
        }
        let boundary = half_boundary(edges);
        let inside = inside_counts(edges, boundary);
        let class = |p: usize| -> Vec<usize> { (0..n).filter(|&i| inside[i] == p).collect() };

        let full = class(rank);
        let empty = class(0);
        if full.len() >= 2 || empty.len() >= 2 {
            out.push((
                Branch::Concatenate,
                self.concatenate(edges, rank, &full, &empty),
            ));
        }

        let right_class = class(rank - 1);
        if right_class.len() >= 2 {
            out.push((
                Branch::RightEnds,
                self.right_ends(edges, rank, &right_class),
            ));
        }
        let left_class = class(1);
        if left_class.len() >= 2 {
            out.push((Branch::LeftEnds, self.left_ends(edges, rank, &left_class)));
        }

        for p in 2..=rank.saturating_sub(2) {
            let members = class(p);
            if members.len() >= 2 {
                out.push((
                    Branch::LayeredPrefix(p),
                    self.layered(edges, p, &members, true),
                ));
                out.push((
                    Branch::LayeredSuffix(p),
                    self.layered(edges, p, &members, false),
                ));
            }
        }

        let (_, clique) = find_clique(edges, rank, self.clique_exact_limit);
        let half = clique.len() / 2;
        out.push((
            Branch::CliqueHalves,
            Pairing {
                left: clique[..half].to_vec(),
                right: clique[clique.len() - half..].to_vec(),
            },
        ));

        out.retain(|(branch, p)| {
            let ok = same_shape(edges, &p.left, &p.right);
            debug_assert!(ok, "branch {branch} produced non-isomorphic halves");
            ok
        });
        out
    }

    fn concatenate(
        &self,
        edges: &[Vec<u32>],
        rank: usize,
        full: &[usize],
        empty: &[usize],
    ) -> Pairing {
        let mut result = Pairing::default();
        for part in [full, empty] {
            if part.len() < 2 {
                continue;
            }
            let sub: Vec<Vec<u32>> = part.iter().map(|&i| edges[i].clone()).collect();
            let twins = self.solve(&sub, rank).map(part);
            result.left.extend(twins.left);
            result.right.extend(twins.right);
        }
        result
    }

    fn right_ends(&self, edges: &[Vec<u32>], rank: usize, class: &[usize]) -> Pairing {
        let prefixes: Vec<&[u32]> = class.iter().map(|&i| &edges[i][..rank - 1]).collect();
        let (_, members) = find_clique(&prefixes, rank - 1, self.clique_exact_limit);
        let ends: Vec<u32> = members.iter().map(|&j| edges[class[j]][rank - 1]).collect();
        let (l, r) = permutation_twins_with(&ends, self.perm_exact_limit);
        let to_parent: Vec<usize> = members.iter().map(|&j| class[j]).collect();
        Pairing { left: l, right: r }.map(&to_parent).into_sorted()
    }

    fn left_ends(&self, edges: &[Vec<u32>], rank: usize, class: &[usize]) -> Pairing {
        let mut by_suffix = class.to_vec();
        by_suffix.sort_unstable_by_key(|&i| edges[i][1]);
        let suffixes: Vec<&[u32]> = by_suffix.iter().map(|&i| &edges[i][1..]).collect();
        let (_, members) = find_clique(&suffixes, rank - 1, self.clique_exact_limit);
        let starts: Vec<u32> = members.iter().map(|&j| edges[by_suffix[j]][0]).collect();
        let (l, r) = permutation_twins_with(&starts, self.perm_exact_limit);
        let to_parent: Vec<usize> = members.iter().map(|&j| by_suffix[j]).collect();
        // the permutation twins keep the order of first vertices consistent
        Pairing { left: l, right: r }.map(&to_parent).into_sorted()
    }

    /// Clique on one side of a `p | r - p` cut of each edge in `class`, then
    /// recursive twins on the other sides of the clique members.
    fn layered(
        &self,
        edges: &[Vec<u32>],
        p: usize,
        class: &[usize],
        clique_on_prefix: bool,
    ) -> Pairing {
        let rank = edges[0].len();
        let part = |i: usize, prefix: bool| -> &[u32] {
            if prefix {
                &edges[i][..p]
            } else {
                &edges[i][p..]
            }
        };
        let (clique_rank, rest_rank) = if clique_on_prefix {
            (p, rank - p)
        } else {
            (rank - p, p)
        };

        let mut clique_side = class.to_vec();
        clique_side.sort_unstable_by_key(|&i| part(i, clique_on_prefix)[0]);
        let parts: Vec<&[u32]> = clique_side
            .iter()
            .map(|&i| part(i, clique_on_prefix))
            .collect();
        let (_, members) = find_clique(&parts, clique_rank, self.clique_exact_limit);
        let chosen: Vec<usize> = members.iter().map(|&j| clique_side[j]).collect();
        if chosen.len() < 2 {
            return Pairing::default();
        }

        // rank of each chosen edge along the clique side
        let mut clique_order = vec![usize::MAX; edges.len()];
        for (pos, &i) in chosen.iter().enumerate() {
            clique_order[i] = pos;
        }

        let mut rest_side = chosen.clone();
        rest_side.sort_unstable_by_key(|&i| part(i, !clique_on_prefix)[0]);
        let rest: Vec<Vec<u32>> = rest_side
            .iter()
            .map(|&i| part(i, !clique_on_prefix).to_vec())
            .collect();
        let inner = self.solve(&rest, rest_rank).map(&rest_side);
        consistent_part(&inner, &clique_order).into_sorted()
    }
}

pub fn find_twins_recursive(m: &OrderedMatching) -> TwinsCertificate {
    RecursiveFinder::default().find(m)
}
