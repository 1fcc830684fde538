use proptest::prelude::*;

use twins_core::builder::{
    block_twin_finder, clique_find, find_twins_recursive, permutation_twins, split_counts,
    BlockSize,
};
use twins_core::gen::{enumerate_matchings, random_matching, SeededSource};
use twins_core::{pattern_of, verify_twins, OrderedMatching, Permutation};

fn matching(max_n: usize, max_r: usize) -> impl Strategy<Value = OrderedMatching> {
    (1..=max_n, 2..=max_r, any::<u64>())
        .prop_map(|(n, r, seed)| random_matching(n, r, SeededSource::new(seed, 0)).unwrap())
}

/// Same matching with every vertex moved right by a strictly increasing
/// amount.
fn stretch(m: &OrderedMatching, gaps: &[u32]) -> OrderedMatching {
    let shift = |v: u32| v + gaps[..v as usize].iter().sum::<u32>();
    let edges = m
        .edges()
        .iter()
        .map(|e| e.iter().map(|&v| shift(v)).collect())
        .collect();
    OrderedMatching::new(m.rank(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_and_json_roundtrip(m in matching(40, 5)) {
        let back = twins_core::parse_word(&m.to_word()).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(OrderedMatching::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn patterns_and_forms_survive_stretching(
        m in matching(12, 4),
        gaps in proptest::collection::vec(0u32..4, 64),
    ) {
        let s = stretch(&m, &gaps);
        prop_assert_eq!(s.canonical_form(), m.canonical_form());
        prop_assert_eq!(s.compress(), m.clone());
        for i in 0..m.size() {
            for j in i + 1..m.size() {
                prop_assert_eq!(
                    pattern_of(m.edge(i), m.edge(j)).unwrap(),
                    pattern_of(s.edge(i), s.edge(j)).unwrap()
                );
            }
        }
    }

    #[test]
    fn half_split_identities(m in matching(500, 6)) {
        let split = split_counts(&m).unwrap();
        prop_assert_eq!(split.n(), m.size());
        prop_assert!(split.identities_hold());
    }

    #[test]
    fn constructed_certificates_verify(m in matching(300, 4)) {
        for c in [find_twins_recursive(&m), block_twin_finder(&m, BlockSize::Auto).unwrap()] {
            let again = verify_twins(&m, c.left(), c.right()).unwrap();
            prop_assert_eq!(again.size(), c.size());
            prop_assert!(2 * c.size() <= m.size());
        }
        let q = clique_find(&m);
        prop_assert!(q.verify(&m).is_ok());
    }

    #[test]
    fn permutation_twins_floor(values in Just((1..=60u32).collect::<Vec<_>>()).prop_shuffle()) {
        let pi = Permutation::new(values).unwrap();
        let (a, b) = permutation_twins(&pi);
        let root = (pi.len() as f64).sqrt().ceil() as usize;
        prop_assert_eq!(a.len(), b.len());
        prop_assert!(a.len() >= root / 2);
        let pick = |idx: &[usize]| {
            Permutation::standardize(&idx.iter().map(|&i| pi.values()[i]).collect::<Vec<_>>())
        };
        prop_assert_eq!(pick(&a), pick(&b));
        prop_assert!(a.iter().all(|i| !b.contains(i)));
    }

    #[test]
    fn small_permutation_twins_floor(len in 1usize..=12, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut v: Vec<u32> = (1..=len as u32).collect();
        v.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let pi = Permutation::new(v).unwrap();
        let (a, _) = permutation_twins(&pi);
        prop_assert!(a.len() >= (len as f64).sqrt().ceil() as usize / 2);
    }
}

/// Two sub-matchings are isomorphic when the order-preserving bijection
/// between their vertex sets carries edges to edges.
fn isomorphic_brute(a: &OrderedMatching, b: &OrderedMatching) -> bool {
    let mut va: Vec<u32> = a.edges().iter().flatten().copied().collect();
    let mut vb: Vec<u32> = b.edges().iter().flatten().copied().collect();
    if va.len() != vb.len() {
        return false;
    }
    va.sort_unstable();
    vb.sort_unstable();
    let image = |v: u32| vb[va.binary_search(&v).unwrap()];
    let mut mapped: Vec<Vec<u32>> = a
        .edges()
        .iter()
        .map(|e| e.iter().map(|&v| image(v)).collect())
        .collect();
    mapped.sort();
    let mut target: Vec<Vec<u32>> = b.edges().to_vec();
    target.sort();
    mapped == target
}

#[test]
fn canonical_form_decides_isomorphism() {
    for (n, r) in [(2, 2), (3, 2), (4, 2), (3, 3)] {
        let mut subs = Vec::new();
        for m in enumerate_matchings(n, r, u64::MAX).unwrap() {
            for mask in 1u32..(1 << n) {
                let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                subs.push(m.sub_matching(&idx).unwrap());
            }
        }
        let forms: Vec<String> = subs.iter().map(|s| s.canonical_form()).collect();
        for (i, a) in subs.iter().enumerate().step_by(3) {
            for (j, b) in subs.iter().enumerate().step_by(2) {
                assert_eq!(forms[i] == forms[j], isomorphic_brute(a, b), "{a} vs {b}");
            }
        }
    }
}
