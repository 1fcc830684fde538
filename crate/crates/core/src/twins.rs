use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::OrderedMatching;

/// Two disjoint, equal-sized sets of edge indices of one host matching whose
/// induced sub-matchings are isomorphic. Only [`verify_twins`] creates one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinsCertificate {
    left: Vec<usize>,
    right: Vec<usize>,
    form: String,
}

impl TwinsCertificate {
    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.left.len()
    }

    /// Shared canonical word of both halves.
    pub fn form(&self) -> &str {
        &self.form
    }

    /// The empty twins of any matching.
    pub fn empty() -> TwinsCertificate {
        TwinsCertificate {
            left: Vec::new(),
            right: Vec::new(),
            form: String::new(),
        }
    }
}

fn sorted_side(host: &OrderedMatching, side: &[usize]) -> Result<Vec<usize>> {
    let mut v = side.to_vec();
    v.sort_unstable();
    for w in v.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateIndex(w[0]));
        }
    }
    if let Some(&last) = v.last() {
        if last >= host.size() {
            return Err(Error::IndexOutOfRange {
                index: last,
                size: host.size(),
            });
        }
    }
    Ok(v)
}

/// Checks that `left` and `right` index twins in `host`.
pub fn verify_twins(
    host: &OrderedMatching,
    left: &[usize],
    right: &[usize],
) -> Result<TwinsCertificate> {
    let left = sorted_side(host, left)?;
    let right = sorted_side(host, right)?;
    if let Some(&shared) = left.iter().find(|i| right.binary_search(i).is_ok()) {
        return Err(Error::NotDisjoint(shared));
    }
    if left.len() != right.len() {
        return Err(Error::SizeMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    let lf = host.sub_matching(&left)?.canonical_form();
    let rf = host.sub_matching(&right)?.canonical_form();
    if lf != rf {
        return Err(Error::NotIsomorphic {
            left: lf,
            right: rf,
        });
    }
    Ok(TwinsCertificate {
        left,
        right,
        form: lf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::parse_word;

    #[test]
    fn example_twins_verify() {
        let m = parse_word("AABECBDEEBDACCD").unwrap();
        // edges by leftmost vertex: A=0, B=1, E=2, C=3, D=4
        let c = verify_twins(&m, &[0, 3], &[1, 4]).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.form(), "AABABB");
    }

    #[test]
    fn single_edges_are_twins() {
        let m = parse_word("ABAB").unwrap();
        assert_eq!(verify_twins(&m, &[0], &[1]).unwrap().size(), 1);
    }

    #[test]
    fn distinct_error_signals() {
        let m = parse_word("AABBCCDD").unwrap();
        assert_eq!(verify_twins(&m, &[0], &[0]), Err(Error::NotDisjoint(0)));
        assert_eq!(
            verify_twins(&m, &[0, 1], &[2]),
            Err(Error::SizeMismatch { left: 2, right: 1 })
        );
        let x = parse_word("AABBCDCD").unwrap();
        assert!(matches!(
            verify_twins(&x, &[0, 1], &[2, 3]),
            Err(Error::NotIsomorphic { .. })
        ));
        assert!(matches!(
            verify_twins(&m, &[9], &[0]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(
            verify_twins(&m, &[1, 1], &[2, 3]),
            Err(Error::DuplicateIndex(1))
        );
    }
}
