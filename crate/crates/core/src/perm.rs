use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., m}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Permutation> {
        let m = values.len();
        let mut seen = vec![false; m];
        for &v in &values {
            let idx = v as usize;
            if idx == 0 || idx > m || seen[idx - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a permutation of 1..={m}"
                )));
            }
            seen[idx - 1] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(m: usize) -> Permutation {
        Permutation((1..=m as u32).collect())
    }

    /// Standardization of any sequence of distinct values.
    pub fn standardize(seq: &[u32]) -> Permutation {
        Permutation(standardize(seq))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses whitespace- or comma-separated values.
    pub fn parse(text: &str) -> Result<Permutation> {
        let values = text
            .split(|c: char| c.is_whitespace() || c == ',' || c == '(' || c == ')')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad token {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(values)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Ranks of distinct values, 1-based.
pub fn standardize(seq: &[u32]) -> Vec<u32> {
    let mut idx: Vec<usize> = (0..seq.len()).collect();
    idx.sort_unstable_by_key(|&i| seq[i]);
    let mut out = vec![0; seq.len()];
    for (rank, i) in idx.into_iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates() {
        assert!(Permutation::new(vec![2, 1, 3]).is_ok());
        assert!(Permutation::new(vec![2, 2, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert_eq!(
            Permutation::parse("(3,1,4,2)").unwrap().values(),
            &[3, 1, 4, 2]
        );
    }

    #[test]
    fn standardizes() {
        assert_eq!(standardize(&[30, 10, 40, 20]), vec![3, 1, 4, 2]);
        assert_eq!(standardize(&[]), Vec::<u32>::new());
    }
}
