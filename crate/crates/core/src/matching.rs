//! Ordered r-uniform matchings and their word representation.
//!
//! A matching is a list of pairwise disjoint edges, each an ascending
//! r-tuple of positive positions, kept sorted by leftmost vertex. The word
//! of a matching labels each position with the edge that owns it, edges
//! named `A`, `B`, ... in order of their leftmost vertex.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Edge = Vec<u32>;

/// Largest matching size written with letters; larger ones use numeric tokens.
pub const LETTER_LIMIT: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedMatching {
    rank: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct JsonMatching {
    r: usize,
    edges: Vec<Edge>,
}

impl OrderedMatching {
    /// Builds a matching from edges in any order. Each edge must have exactly
    /// `rank` strictly increasing positive entries and edges must be disjoint.
    pub fn new(rank: usize, mut edges: Vec<Edge>) -> Result<Self> {
        if rank < 2 {
            return Err(Error::RankTooSmall(rank));
        }
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if e.len() != rank {
                return Err(Error::InvalidMatching(format!(
                    "edge {:?} has {} vertices, expected {}",
                    e,
                    e.len(),
                    rank
                )));
            }
            if e[0] == 0 {
                return Err(Error::InvalidMatching("positions start at 1".into()));
            }
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidMatching(format!(
                    "edge {:?} is not strictly increasing",
                    e
                )));
            }
            for &v in e {
                if !seen.insert(v) {
                    return Err(Error::InvalidMatching(format!(
                        "vertex {} belongs to two edges",
                        v
                    )));
                }
            }
        }
        edges.sort_unstable_by_key(|e| e[0]);
        Ok(OrderedMatching { rank, edges })
    }

    pub(crate) fn from_sorted_unchecked(rank: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0][0] < w[1][0]));
        OrderedMatching { rank, edges }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        &self.edges[i]
    }

    /// `r * n`, the number of vertices covered.
    pub fn ground_size(&self) -> usize {
        self.rank * self.edges.len()
    }

    /// True when the edges cover exactly `{1, ..., rn}`.
    pub fn is_full(&self) -> bool {
        let total = self.ground_size();
        self.edges.iter().flatten().all(|&v| (v as usize) <= total)
    }

    /// Vertex labels in position order: entry `j` is the index of the edge
    /// owning the `j`-th smallest vertex.
    pub fn labels(&self) -> Vec<u32> {
        label_sequence(self.edges.iter().map(|e| e.as_slice()))
    }

    /// Order-isomorphic copy on `{1, ..., rn}`.
    pub fn compress(&self) -> OrderedMatching {
        let labels = self.labels();
        let mut edges: Vec<Edge> = vec![Vec::with_capacity(self.rank); self.edges.len()];
        for (pos, &l) in labels.iter().enumerate() {
            edges[l as usize].push(pos as u32 + 1);
        }
        OrderedMatching::from_sorted_unchecked(self.rank, edges)
    }

    /// Sub-matching induced by the given edge indices (positions unchanged).
    pub fn sub_matching(&self, indices: &[usize]) -> Result<OrderedMatching> {
        let mut edges = Vec::with_capacity(indices.len());
        for &i in indices {
            let e = self.edges.get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                size: self.size(),
            })?;
            edges.push(e.clone());
        }
        edges.sort_unstable_by_key(|e| e[0]);
        Ok(OrderedMatching::from_sorted_unchecked(self.rank, edges))
    }

    /// Word of the order-isomorphic copy on `{1, ..., rk}`; equal for two
    /// (sub-)matchings exactly when they are isomorphic.
    pub fn canonical_form(&self) -> String {
        render_word(&self.labels(), self.size())
    }

    pub fn to_word(&self) -> String {
        self.canonical_form()
    }

    pub fn parse_word(text: &str) -> Result<OrderedMatching> {
        parse_word(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&JsonMatching {
            r: self.rank,
            edges: self.edges.clone(),
        })
        .expect("matching serializes")
    }

    pub fn from_json(text: &str) -> Result<OrderedMatching> {
        let raw: JsonMatching =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        OrderedMatching::new(raw.r, raw.edges)
    }

    /// Parses either the JSON object form or a word.
    pub fn parse_any(text: &str) -> Result<OrderedMatching> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            parse_word(text)
        }
    }
}

impl fmt::Display for OrderedMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

/// Merges edges (each ascending, listed in leftmost order) into the sequence
/// of owner indices by position.
pub(crate) fn label_sequence<'a>(edges: impl Iterator<Item = &'a [u32]>) -> Vec<u32> {
    let mut tagged: Vec<(u32, u32)> = edges
        .enumerate()
        .flat_map(|(i, e)| e.iter().map(move |&v| (v, i as u32)))
        .collect();
    tagged.sort_unstable();
    // relabel by first occurrence so the input order of edges does not matter
    let mut remap: HashMap<u32, u32> = HashMap::new();
    tagged
        .into_iter()
        .map(|(_, l)| {
            let next = remap.len() as u32;
            *remap.entry(l).or_insert(next)
        })
        .collect()
}

pub(crate) fn render_word(labels: &[u32], n: usize) -> String {
    if n <= LETTER_LIMIT {
        labels.iter().map(|&l| (b'A' + l as u8) as char).collect()
    } else {
        labels
            .iter()
            .map(|l| (l + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Parses a word into a full matching. Text containing whitespace is read as
/// whitespace-separated tokens, otherwise every character is a symbol.
pub fn parse_word(text: &str) -> Result<OrderedMatching> {
    let trimmed = text.trim();
    let symbols: Vec<String> = if trimmed.contains(char::is_whitespace) {
        trimmed.split_whitespace().map(str::to_owned).collect()
    } else {
        trimmed.chars().map(|c| c.to_string()).collect()
    };
    if symbols.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut order: Vec<&str> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    for (pos, s) in symbols.iter().enumerate() {
        let id = *index.entry(s.as_str()).or_insert_with(|| {
            order.push(s.as_str());
            edges.push(Vec::new());
            edges.len() - 1
        });
        edges[id].push(pos as u32 + 1);
    }
    let r = edges[0].len();
    for (id, e) in edges.iter().enumerate() {
        if e.len() != r {
            return Err(Error::UnequalMultiplicity {
                symbol: order[id].to_owned(),
                found: e.len(),
                expected: r,
            });
        }
    }
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    Ok(OrderedMatching::from_sorted_unchecked(r, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_four_edge_example() {
        let m = parse_word("AABCBDBDACCD").unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(
            m.edges(),
            &[
                vec![1, 2, 9],
                vec![3, 5, 7],
                vec![4, 10, 11],
                vec![6, 8, 12]
            ]
        );
        assert!(m.is_full());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_word("AAB"),
            Err(Error::UnequalMultiplicity {
                symbol: "B".into(),
                found: 1,
                expected: 2
            })
        );
        assert_eq!(parse_word(""), Err(Error::EmptyInput));
        assert_eq!(parse_word("AB"), Err(Error::RankTooSmall(1)));
    }

    #[test]
    fn single_edge() {
        let m = parse_word("AA").unwrap();
        assert_eq!(m.edges(), &[vec![1, 2]]);
        assert_eq!(m.to_word(), "AA");
    }

    #[test]
    fn writes_letters_then_tokens() {
        let m = OrderedMatching::new(
            3,
            vec![
                vec![6, 8, 12],
                vec![1, 2, 9],
                vec![4, 10, 11],
                vec![3, 5, 7],
            ],
        )
        .unwrap();
        assert_eq!(m.to_word(), "AABCBDBDACCD");

        let edges: Vec<Edge> = (0..30).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
        let big = OrderedMatching::new(2, edges).unwrap();
        let w = big.to_word();
        assert!(w.starts_with("1 1 2 2 3 3"));
        assert!(w.ends_with("30 30"));
        assert_eq!(parse_word(&w).unwrap(), big);
    }

    #[test]
    fn canonical_forms_of_example_twins() {
        let m = parse_word("AABCBDBDACCD").unwrap();
        let bd = m.sub_matching(&[1, 3]).unwrap();
        let ac = m.sub_matching(&[0, 2]).unwrap();
        assert_eq!(bd.canonical_form(), "AABABB");
        assert_eq!(ac.canonical_form(), "AABABB");
        assert_eq!(m.sub_matching(&[2]).unwrap().canonical_form(), "AAA");
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(OrderedMatching::new(2, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(OrderedMatching::new(2, vec![vec![2, 1]]).is_err());
        assert!(OrderedMatching::new(2, vec![vec![1, 2, 3]]).is_err());
        assert!(OrderedMatching::new(1, vec![vec![1]]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let m = parse_word("ABCABC").unwrap();
        let j = m.to_json();
        assert_eq!(j, r#"{"r":2,"edges":[[1,4],[2,5],[3,6]]}"#);
        assert_eq!(OrderedMatching::from_json(&j).unwrap(), m);
        assert_eq!(OrderedMatching::parse_any(&j).unwrap(), m);
    }

    #[test]
    fn compress_keeps_order_type() {
        let m = OrderedMatching::new(2, vec![vec![10, 40], vec![20, 30]]).unwrap();
        let c = m.compress();
        assert_eq!(c.edges(), &[vec![1, 4], vec![2, 3]]);
        assert_eq!(c.canonical_form(), m.canonical_form());
    }
}
