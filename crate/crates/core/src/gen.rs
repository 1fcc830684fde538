//! Random generation, exhaustive enumeration and exact counting for ordered
//! r-matchings on `[rn]`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matching::{Edge, OrderedMatching};

/// Default cap on the number of matchings an enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u64 = 20_000_000;

/// Key of an independent random stream: a ChaCha8 generator seeded with
/// `master_seed` and switched to stream `stream_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeededSource {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeededSource {
    pub fn new(master_seed: u64, stream_index: u64) -> SeededSource {
        SeededSource {
            master_seed,
            stream_index,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Uniform random matching via a uniform permutation of `[rn]` chopped into
/// consecutive r-blocks.
pub fn random_matching(n: usize, r: usize, src: SeededSource) -> Result<OrderedMatching> {
    random_matching_with(n, r, &mut src.rng())
}

pub fn random_matching_with<R: rand::Rng + ?Sized>(
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<OrderedMatching> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    if n < 1 {
        return Err(Error::InvalidArgument(
            "matching size must be at least 1".into(),
        ));
    }
    let mut perm: Vec<u32> = (1..=(r * n) as u32).collect();
    perm.shuffle(rng);
    let mut edges: Vec<Edge> = perm
        .chunks_exact(r)
        .map(|c| {
            let mut e = c.to_vec();
            e.sort_unstable();
            e
        })
        .collect();
    edges.sort_unstable_by_key(|e| e[0]);
    Ok(OrderedMatching::from_sorted_unchecked(r, edges))
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// `(rn)! / ((r!)^n n!)`, the number of r-matchings on `[rn]`.
pub fn count_matchings(n: usize, r: usize) -> Result<BigUint> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    Ok(alpha(n, r))
}

fn alpha(n: usize, r: usize) -> BigUint {
    factorial(r * n) / (factorial(r).pow(n as u32) * factorial(n))
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Exact expected number of (unordered) twins of size `k` in a uniform random
/// r-matching of size `n`, in closed form.
pub fn expected_twin_count(n: usize, r: usize, k: usize) -> Result<BigRational> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if 2 * k > n {
        return Ok(BigRational::zero());
    }
    let num = factorial(n) * factorial(r).pow(k as u32);
    let den = BigUint::from(2u32) * factorial(n - 2 * k) * factorial(k) * factorial(r * k);
    Ok(ratio(num, den))
}

/// The same expectation assembled from its counting argument:
/// `1/2 * multinomial(rn; rk, rk, rn - 2rk) * alpha_k * alpha_{n-2k} / alpha_n`.
pub fn expected_twin_count_multinomial(n: usize, r: usize, k: usize) -> Result<BigRational> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if 2 * k > n {
        return Ok(BigRational::zero());
    }
    let multinomial = factorial(r * n) / (factorial(r * k).pow(2) * factorial(r * n - 2 * r * k));
    let num = multinomial * alpha(k, r) * alpha(n - 2 * k, r);
    let den = BigUint::from(2u32) * alpha(n, r);
    Ok(ratio(num, den))
}

/// Exact expectation of the number of edge pairs that are both `I`-sets for a
/// common block set `I`, with `[rn]` cut into `rn / a` consecutive blocks of
/// size `a`.
pub fn expected_pair_count(n: usize, r: usize, a: usize) -> Result<BigRational> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    if a == 0 || !(r * n).is_multiple_of(a) {
        return Err(Error::InvalidArgument(format!(
            "block size {a} does not divide rn = {}",
            r * n
        )));
    }
    if n < 2 {
        return Ok(BigRational::zero());
    }
    let blocks = r * n / a;
    let num = binomial(blocks, r)
        * binomial(a, 2).pow(r as u32)
        * BigUint::from(2u32).pow(r as u32 - 1)
        * alpha(n - 2, r);
    Ok(ratio(num, alpha(n, r)))
}

/// Lazily yields every r-matching on `[rn]` once, in lexicographic order of
/// edge lists: the smallest free vertex is joined with each (r-1)-subset of
/// the remaining free vertices in turn.
pub struct MatchingEnumerator {
    n: usize,
    r: usize,
    // per level: free vertices after removing the leader, and the chosen
    // combination as indices into that list
    free: Vec<Vec<u32>>,
    combo: Vec<Vec<usize>>,
    started: bool,
    done: bool,
}

/// Enumerates all matchings, refusing when their number exceeds `cap`.
pub fn enumerate_matchings(n: usize, r: usize, cap: u64) -> Result<MatchingEnumerator> {
    let total = count_matchings(n, r)?;
    if total > BigUint::from(cap) {
        return Err(Error::BudgetExceeded(format!(
            "{total} matchings for n={n}, r={r} exceed cap {cap}"
        )));
    }
    Ok(MatchingEnumerator {
        n,
        r,
        free: Vec::new(),
        combo: Vec::new(),
        started: false,
        done: false,
    })
}

impl MatchingEnumerator {
    fn fill_from(&mut self, level: usize) {
        self.free.truncate(level);
        self.combo.truncate(level);
        let mut available: Vec<u32> = if level == 0 {
            (1..=(self.r * self.n) as u32).collect()
        } else {
            let prev_free = &self.free[level - 1];
            let chosen = &self.combo[level - 1];
            prev_free
                .iter()
                .enumerate()
                .filter(|(i, _)| chosen.binary_search(i).is_err())
                .map(|(_, &v)| v)
                .collect()
        };
        for _ in level..self.n {
            let rest: Vec<u32> = available[1..].to_vec();
            let combo: Vec<usize> = (0..self.r - 1).collect();
            available = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| *i >= self.r - 1)
                .map(|(_, &v)| v)
                .collect();
            self.free.push(rest);
            self.combo.push(combo);
        }
    }

    fn leader(&self, level: usize) -> u32 {
        if level == 0 {
            1
        } else {
            let prev_free = &self.free[level - 1];
            let chosen = &self.combo[level - 1];
            (0..prev_free.len())
                .find(|i| chosen.binary_search(i).is_err())
                .map(|i| prev_free[i])
                .expect("free vertex remains")
        }
    }

    fn current(&self) -> OrderedMatching {
        let edges = (0..self.n)
            .map(|level| {
                let mut e = Vec::with_capacity(self.r);
                e.push(self.leader(level));
                e.extend(self.combo[level].iter().map(|&i| self.free[level][i]));
                e
            })
            .collect();
        OrderedMatching::from_sorted_unchecked(self.r, edges)
    }
}

fn next_combination(combo: &mut [usize], pool: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < pool - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for MatchingEnumerator {
    type Item = OrderedMatching;

    fn next(&mut self) -> Option<OrderedMatching> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(OrderedMatching::from_sorted_unchecked(self.r, Vec::new()));
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
            return Some(self.current());
        }
        for level in (0..self.n).rev() {
            let pool = self.free[level].len();
            if next_combination(&mut self.combo[level], pool) {
                if level + 1 < self.n {
                    self.fill_from(level + 1);
                }
                return Some(self.current());
            }
        }
        self.done = true;
        None
    }
}
