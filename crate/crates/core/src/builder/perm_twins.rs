use crate::oracle::{tau_exact_witness, Budget};
use crate::perm::Permutation;

/// Default length up to which permutation twins are found exactly.
pub const PERM_EXACT_LIMIT: usize = 12;

/// Positions (0-based) of a longest strictly increasing subsequence, by
/// patience sorting.
pub fn longest_increasing(values: &[u32]) -> Vec<usize> {
    // tails[k]: index ending the best increasing run of length k + 1
    let mut tails: Vec<usize> = Vec::new();
    let mut prev: Vec<Option<usize>> = vec![None; values.len()];
    for (i, &v) in values.iter().enumerate() {
        let k = tails.partition_point(|&t| values[t] < v);
        if k > 0 {
            prev[i] = Some(tails[k - 1]);
        }
        if k == tails.len() {
            tails.push(i);
        } else {
            tails[k] = i;
        }
    }
    let mut out = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied();
    while let Some(i) = cur {
        out.push(i);
        cur = prev[i];
    }
    out.reverse();
    out
}

/// Positions of a longest monotone (increasing or decreasing) subsequence.
pub fn longest_monotone(values: &[u32]) -> Vec<usize> {
    let inc = longest_increasing(values);
    let flipped: Vec<u32> = values.iter().map(|&v| u32::MAX - v).collect();
    let dec = longest_increasing(&flipped);
    if dec.len() > inc.len() {
        dec
    } else {
        inc
    }
}

/// Twins in a sequence of distinct values: two disjoint ascending position
/// lists whose subsequences are order-isomorphic. Exact up to `exact_limit`,
/// otherwise a longest monotone subsequence split in half.
pub fn permutation_twins_with(values: &[u32], exact_limit: usize) -> (Vec<usize>, Vec<usize>) {
    if values.len() <= exact_limit {
        let pi = Permutation::standardize(values);
        let budget = Budget {
            tau: exact_limit,
            ..Budget::default()
        };
        let (_, left, right) = tau_exact_witness(&pi, &budget).expect("within exact limit");
        return (left, right);
    }
    let run = longest_monotone(values);
    let half = run.len() / 2;
    (run[..half].to_vec(), run[run.len() - half..].to_vec())
}

pub fn permutation_twins(pi: &Permutation) -> (Vec<usize>, Vec<usize>) {
    permutation_twins_with(pi.values(), PERM_EXACT_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::standardize;

    fn check(values: &[u32], left: &[usize], right: &[usize]) {
        assert_eq!(left.len(), right.len());
        assert!(left.iter().all(|i| !right.contains(i)));
        let l: Vec<u32> = left.iter().map(|&i| values[i]).collect();
        let r: Vec<u32> = right.iter().map(|&i| values[i]).collect();
        assert_eq!(standardize(&l), standardize(&r));
    }

    #[test]
    fn lis_examples() {
        assert_eq!(longest_increasing(&[3, 1, 4, 2, 5]).len(), 3);
        assert_eq!(longest_increasing(&[]), Vec::<usize>::new());
        assert_eq!(longest_monotone(&[5, 4, 3, 1, 2]).len(), 4);
    }

    #[test]
    fn identity_and_tiny() {
        for m in [0usize, 1, 2, 7, 13, 40] {
            let pi = Permutation::identity(m);
            let (l, r) = permutation_twins(&pi);
            assert_eq!(l.len(), m / 2);
            check(pi.values(), &l, &r);
        }
    }

    #[test]
    fn exact_branch_matches_oracle() {
        let pi = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        let (l, r) = permutation_twins(&pi);
        assert_eq!(
            l.len(),
            crate::oracle::tau_exact(&pi, &Budget::default()).unwrap()
        );
        check(pi.values(), &l, &r);
    }
}
