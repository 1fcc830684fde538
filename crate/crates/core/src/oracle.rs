//! Exact brute-force solvers: maximum twins, t-tuplets, pattern cliques,
//! permutation twins, and extremal minima over all instances.
//!
//! Twins searches enumerate k-subsets as bitmasks, hash them by canonical
//! key and look for disjoint masks inside a class. Every search is guarded
//! by a [`Budget`]; exceeding it is an error, never an approximation.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clique::{max_clique_any, max_pattern_clique, PairTable};
use crate::error::{Error, Result};
use crate::gen::{count_matchings, enumerate_matchings, factorial};
use crate::matching::OrderedMatching;
use crate::pattern::Pattern;
use crate::perm::Permutation;
use crate::twins::{verify_twins, TwinsCertificate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest matching size for twins/tuplets searches at r = 2.
    pub twins_r2: usize,
    /// Same at r = 3; larger ranks use `twins_vertices / r`.
    pub twins_r3: usize,
    pub twins_vertices: usize,
    pub clique: usize,
    pub tau: usize,
    pub enumeration: u64,
    pub top_down: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            twins_r2: 18,
            twins_r3: 12,
            twins_vertices: 36,
            clique: 200,
            tau: 14,
            enumeration: crate::gen::DEFAULT_ENUMERATION_CAP,
            top_down: true,
        }
    }
}

impl Budget {
    pub fn twins_limit(&self, r: usize) -> usize {
        match r {
            2 => self.twins_r2,
            3 => self.twins_r3,
            _ => self.twins_vertices / r,
        }
    }

    fn check_twins(&self, m: &OrderedMatching) -> Result<()> {
        let limit = self.twins_limit(m.rank());
        if m.size() > limit {
            return Err(Error::BudgetExceeded(format!(
                "exact twins search limited to n <= {limit} at r = {}, got n = {}",
                m.rank(),
                m.size()
            )));
        }
        Ok(())
    }
}

/// Iterates all k-subsets of `0..n` as bitmasks (Gosper's hack).
fn subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = next;
        if k == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            next = (((r ^ cur) >> 2) / c) | r;
            if next >= limit {
                done = true;
            }
        }
        Some(cur)
    })
}

fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Canonical keys of sub-matchings selected by edge masks.
struct MatchingKeys {
    labels: Vec<u8>,
}

impl MatchingKeys {
    fn new(m: &OrderedMatching) -> MatchingKeys {
        MatchingKeys {
            labels: m.labels().into_iter().map(|l| l as u8).collect(),
        }
    }

    fn key(&self, mask: u64) -> Vec<u8> {
        let mut remap = [u8::MAX; 64];
        let mut next = 0u8;
        let mut out = Vec::with_capacity(self.labels.len());
        for &l in &self.labels {
            if mask >> l & 1 == 1 {
                let slot = &mut remap[l as usize];
                if *slot == u8::MAX {
                    *slot = next;
                    next += 1;
                }
                out.push(*slot);
            }
        }
        out
    }
}

fn perm_key(values: &[u32], mask: u64) -> Vec<u8> {
    let picked: Vec<u32> = mask_indices(mask).into_iter().map(|i| values[i]).collect();
    crate::perm::standardize(&picked)
        .into_iter()
        .map(|v| v as u8)
        .collect()
}

/// First pair of disjoint k-masks sharing a key, if any.
fn disjoint_pair_of_size<F>(n: usize, k: usize, key: F) -> Option<(u64, u64)>
where
    F: Fn(u64) -> Vec<u8>,
{
    let mut classes: HashMap<Vec<u8>, Vec<u64>> = HashMap::new();
    for mask in subsets(n, k) {
        let class = classes.entry(key(mask)).or_default();
        if let Some(&other) = class.iter().find(|&&o| o & mask == 0) {
            return Some((other, mask));
        }
        class.push(mask);
    }
    None
}

fn largest_disjoint_pair<F>(n: usize, top_down: bool, key: F) -> (usize, u64, u64)
where
    F: Fn(u64) -> Vec<u8>,
{
    let kmax = n / 2;
    if top_down {
        for k in (1..=kmax).rev() {
            if let Some((a, b)) = disjoint_pair_of_size(n, k, &key) {
                return (k, a, b);
            }
        }
        (0, 0, 0)
    } else {
        let mut best = (0, 0, 0);
        for k in 1..=kmax {
            match disjoint_pair_of_size(n, k, &key) {
                Some((a, b)) => best = (k, a, b),
                None => break,
            }
        }
        best
    }
}

/// Exact `t(M)` with a witness.
pub fn max_twins_exact(m: &OrderedMatching, budget: &Budget) -> Result<(usize, TwinsCertificate)> {
    budget.check_twins(m)?;
    let keys = MatchingKeys::new(m);
    let (k, a, b) = largest_disjoint_pair(m.size(), budget.top_down, |mask| keys.key(mask));
    if k == 0 {
        return Ok((0, TwinsCertificate::empty()));
    }
    let cert = verify_twins(m, &mask_indices(a), &mask_indices(b))?;
    Ok((k, cert))
}

/// Number of unordered pairs of disjoint, isomorphic k-edge sub-matchings.
pub fn count_twin_pairs(m: &OrderedMatching, k: usize, budget: &Budget) -> Result<u64> {
    budget.check_twins(m)?;
    if 2 * k > m.size() {
        return Ok(0);
    }
    let keys = MatchingKeys::new(m);
    let mut classes: HashMap<Vec<u8>, Vec<u64>> = HashMap::new();
    for mask in subsets(m.size(), k) {
        classes.entry(keys.key(mask)).or_default().push(mask);
    }
    let mut total = 0u64;
    for members in classes.values() {
        for (i, &a) in members.iter().enumerate() {
            total += members[i + 1..].iter().filter(|&&b| a & b == 0).count() as u64;
        }
    }
    Ok(total)
}

fn find_disjoint_family(
    members: &[u64],
    t: usize,
    start: usize,
    used: u64,
    chosen: &mut usize,
) -> bool {
    if *chosen == t {
        return true;
    }
    for i in start..members.len() {
        if members[i] & used == 0 {
            *chosen += 1;
            if find_disjoint_family(members, t, i + 1, used | members[i], chosen) {
                return true;
            }
            *chosen -= 1;
        }
    }
    false
}

/// Largest k such that `t` pairwise disjoint, pairwise isomorphic k-edge
/// sub-matchings exist.
pub fn max_tuplets_exact(m: &OrderedMatching, t: usize, budget: &Budget) -> Result<usize> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!(
            "t must be at least 2, got {t}"
        )));
    }
    budget.check_twins(m)?;
    let n = m.size();
    let keys = MatchingKeys::new(m);
    for k in (1..=n / t).rev() {
        let mut classes: HashMap<Vec<u8>, Vec<u64>> = HashMap::new();
        for mask in subsets(n, k) {
            classes.entry(keys.key(mask)).or_default().push(mask);
        }
        let found = classes.values().any(|members| {
            members.len() >= t && {
                let mut chosen = 0;
                find_disjoint_family(members, t, 0, 0, &mut chosen)
            }
        });
        if found {
            return Ok(k);
        }
    }
    Ok(0)
}

/// A sub-matching whose pairs all realize `pattern`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCertificate {
    #[serde(with = "pattern_serde")]
    pub pattern: Pattern,
    pub members: Vec<usize>,
}

mod pattern_serde {
    use super::Pattern;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &Pattern, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.word())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Pattern, D::Error> {
        let w = String::deserialize(d)?;
        w.parse().map_err(serde::de::Error::custom)
    }
}

impl CliqueCertificate {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Recomputes every pairwise pattern.
    pub fn verify(&self, host: &OrderedMatching) -> Result<()> {
        for (a, &i) in self.members.iter().enumerate() {
            if i >= host.size() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: host.size(),
                });
            }
            for &j in &self.members[a + 1..] {
                if j <= i {
                    return Err(Error::InvalidArgument(
                        "clique members not ascending".into(),
                    ));
                }
                let p = crate::pattern::pattern_of(host.edge(i), host.edge(j))?;
                if p != self.pattern {
                    return Err(Error::InvalidArgument(format!(
                        "edges {i} and {j} form {p}, not {}",
                        self.pattern
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Exact `L_P(M)` for one pattern, or `L(M)` over all patterns when
/// `pattern` is `None`.
pub fn max_clique_exact(
    m: &OrderedMatching,
    pattern: Option<Pattern>,
    budget: &Budget,
) -> Result<(usize, CliqueCertificate)> {
    if m.size() > budget.clique {
        return Err(Error::BudgetExceeded(format!(
            "exact clique search limited to m <= {}, got {}",
            budget.clique,
            m.size()
        )));
    }
    let table = PairTable::new(m.edges());
    let (pattern, members) = match pattern {
        Some(p) => {
            if p.rank() != m.rank() {
                return Err(Error::RankMismatch(p.rank(), m.rank()));
            }
            (p, max_pattern_clique(&table, p.bits()))
        }
        None => max_clique_any(&table, m.rank()),
    };
    Ok((members.len(), CliqueCertificate { pattern, members }))
}

/// Exact maximum size of twins in a permutation.
pub fn tau_exact(pi: &Permutation, budget: &Budget) -> Result<usize> {
    Ok(tau_exact_witness(pi, budget)?.0)
}

/// `tau_exact` with the two position sets (0-based, ascending).
pub fn tau_exact_witness(
    pi: &Permutation,
    budget: &Budget,
) -> Result<(usize, Vec<usize>, Vec<usize>)> {
    if pi.len() > budget.tau {
        return Err(Error::BudgetExceeded(format!(
            "exact permutation twins limited to length <= {}, got {}",
            budget.tau,
            pi.len()
        )));
    }
    let values = pi.values();
    let (k, a, b) =
        largest_disjoint_pair(values.len(), budget.top_down, |mask| perm_key(values, mask));
    if k == 0 {
        return Ok((0, Vec::new(), Vec::new()));
    }
    Ok((k, mask_indices(a), mask_indices(b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    /// Maximum twins.
    #[serde(rename = "t")]
    Twins,
    /// Largest pattern clique.
    #[serde(rename = "L")]
    Clique,
    /// Maximum permutation twins.
    #[serde(rename = "tau")]
    Tau,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::Twins => "t",
            Quantity::Clique => "L",
            Quantity::Tau => "tau",
        })
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Quantity> {
        match s {
            "t" => Ok(Quantity::Twins),
            "L" => Ok(Quantity::Clique),
            "tau" => Ok(Quantity::Tau),
            _ => Err(Error::InvalidArgument(format!("unknown quantity {s:?}"))),
        }
    }
}

/// Minimum over all instances of an instance-level maximum, with the first
/// minimizing instance in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub quantity: Quantity,
    pub r: usize,
    pub n: usize,
    pub value: usize,
    pub witness: String,
}

const SCAN_CHUNK: usize = 4096;

fn scan_min<T, I, F>(items: I, eval: F) -> Result<Option<(usize, T)>>
where
    T: Send + Sync,
    I: Iterator<Item = T>,
    F: Fn(&T) -> Result<usize> + Sync,
{
    let mut best: Option<(usize, T)> = None;
    let mut items = items.peekable();
    while items.peek().is_some() {
        let chunk: Vec<T> = items.by_ref().take(SCAN_CHUNK).collect();
        let values = chunk
            .par_iter()
            .map(&eval)
            .collect::<Result<Vec<usize>>>()?;
        // earliest minimum wins, matching a sequential scan
        let (pos, &v) = values
            .iter()
            .enumerate()
            .min_by_key(|&(i, v)| (*v, i))
            .expect("nonempty chunk");
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            let item = chunk.into_iter().nth(pos).expect("position in chunk");
            best = Some((v, item));
        }
    }
    Ok(best)
}

/// Lexicographic successor of a sequence; false when it was the last one.
fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n)
        .rev()
        .find(|&j| v[j] > v[i])
        .expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut first = true;
    std::iter::from_fn(move || {
        if first {
            first = false;
        } else if !next_permutation(&mut cur) {
            return None;
        }
        Some(Permutation::new(cur.clone()).expect("valid permutation"))
    })
}

/// Exact extremal value of `quantity` over every instance of size `n`.
pub fn extremal_scan(
    quantity: Quantity,
    r: usize,
    n: usize,
    budget: &Budget,
) -> Result<ExtremalRecord> {
    let found = match quantity {
        Quantity::Tau => {
            if factorial(n) > BigUint::from(budget.enumeration) {
                return Err(Error::BudgetExceeded(format!(
                    "{n}! permutations exceed cap {}",
                    budget.enumeration
                )));
            }
            scan_min(all_permutations(n), |p| tau_exact(p, budget))?
                .map(|(v, p)| (v, p.to_string()))
        }
        Quantity::Twins | Quantity::Clique => {
            if r < 2 {
                return Err(Error::RankTooSmall(r));
            }
            let count = count_matchings(n, r)?;
            if count > BigUint::from(budget.enumeration) {
                return Err(Error::BudgetExceeded(format!(
                    "{count} matchings exceed cap {}",
                    budget.enumeration
                )));
            }
            let all = enumerate_matchings(n, r, budget.enumeration)?;
            let found = if quantity == Quantity::Twins {
                let probe = all_first(n, r);
                budget.check_twins(&probe)?;
                scan_min(all, |m| max_twins_exact(m, budget).map(|(v, _)| v))?
            } else {
                scan_min(all, |m| max_clique_exact(m, None, budget).map(|(v, _)| v))?
            };
            found.map(|(v, m)| (v, m.to_word()))
        }
    };
    let (value, witness) =
        found.ok_or_else(|| Error::InvalidArgument("empty instance space".into()))?;
    Ok(ExtremalRecord {
        quantity,
        r,
        n,
        value,
        witness,
    })
}

fn all_first(n: usize, r: usize) -> OrderedMatching {
    let edges = (0..n)
        .map(|i| ((i * r) as u32 + 1..=((i + 1) * r) as u32).collect())
        .collect();
    OrderedMatching::from_sorted_unchecked(r, edges)
}
