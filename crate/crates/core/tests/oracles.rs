use twins_core::builder::{block_twin_finder, clique_find, ell, find_twins_recursive, BlockSize};
use twins_core::gen::{enumerate_matchings, random_matching, SeededSource};
use twins_core::oracle::{extremal_scan, max_clique_exact, max_twins_exact, Budget, Quantity};

#[test]
fn twin_scan_within_known_bounds() {
    let budget = Budget::default();
    for n in 1..=6 {
        let t = extremal_scan(Quantity::Twins, 2, n, &budget).unwrap().value as f64;
        let nf = n as f64;
        let lower = (nf.powf(0.6) / (16.0 * 2f64.powf(0.2))).ceil() - 1.0;
        let upper = (std::f64::consts::E / 2f64.cbrt() * nf.powf(2.0 / 3.0)).floor();
        assert!(
            lower <= t && t <= upper,
            "n = {n}: {lower} <= {t} <= {upper}"
        );
    }
}

#[test]
fn clique_scan_meets_floor() {
    let budget = Budget::default();
    for (r, max_n) in [(2, 6), (3, 3), (4, 2)] {
        for n in 1..=max_n {
            let rec = extremal_scan(Quantity::Clique, r, n, &budget).unwrap();
            assert!(rec.value as f64 >= ell(r, n as f64), "r = {r}, n = {n}");
        }
    }
}

#[test]
fn scans_are_order_independent() {
    let top = Budget::default();
    let bottom = Budget {
        top_down: false,
        ..Budget::default()
    };
    for n in 1..=5 {
        let a = extremal_scan(Quantity::Twins, 2, n, &top).unwrap();
        let b = extremal_scan(Quantity::Twins, 2, n, &bottom).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn finders_never_beat_the_oracle() {
    let budget = Budget::default();
    for m in enumerate_matchings(5, 2, u64::MAX).unwrap() {
        let (t, c) = max_twins_exact(&m, &budget).unwrap();
        assert_eq!(c.size(), t);
        assert!(find_twins_recursive(&m).size() <= t);
        assert!(block_twin_finder(&m, BlockSize::Fixed(2)).unwrap().size() <= t);
    }
    for seed in 0..100 {
        let m = random_matching(9, 3, SeededSource::new(seed, 1)).unwrap();
        let t = max_twins_exact(&m, &budget).unwrap().0;
        assert!(find_twins_recursive(&m).size() <= t);
    }
}

#[test]
fn clique_heuristic_bounded_by_exact() {
    let budget = Budget::default();
    for seed in 0..100 {
        let m = random_matching(40, 3, SeededSource::new(seed, 2)).unwrap();
        let (l, exact) = max_clique_exact(&m, None, &budget).unwrap();
        assert!(exact.verify(&m).is_ok());
        assert!(clique_find(&m).size() <= l);
    }
}
