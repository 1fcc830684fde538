//! Deterministic lower bound on twins derived from an assumed permutation
//! twins bound `tau(n) >= beta n^alpha`.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

/// `1 / (2^r - 1)`.
pub fn eta(r: usize) -> Q {
    Q::new(1, (1i64 << r) - 1)
}

/// Guaranteed pattern-clique size: `n^(1/3)` for `r = 2`, else
/// `n^eta(r) / 2`.
pub fn ell(r: usize, n: f64) -> f64 {
    if r == 2 {
        n.cbrt()
    } else {
        0.5 * n.powf(eta(r).to_f64().expect("finite"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundParams {
    pub alpha: Q,
    pub beta: Q,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            alpha: Q::new(3, 5),
            beta: Q::new(1, 8),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentRow {
    pub r: usize,
    /// `3/5 * eta(r-1)`.
    #[serde(serialize_with = "ser_q")]
    pub deterministic: Q,
    /// `eta(r)`, from halving a single clique.
    #[serde(serialize_with = "ser_q")]
    pub clique_only: Q,
    /// `2 / (r + 1)`, the random-matching order.
    #[serde(serialize_with = "ser_q")]
    pub random: Q,
}

fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", q.numer(), q.denom()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub r: usize,
    pub n: u64,
    #[serde(serialize_with = "ser_q")]
    pub alpha: Q,
    #[serde(serialize_with = "ser_q")]
    pub beta: Q,
    pub beta_r: f64,
    pub bound_value: f64,
    /// `floor(bound_value)`; 0 when the bound is below 1.
    pub guaranteed: u64,
    pub exponent_table: Vec<ExponentRow>,
}

impl BoundParams {
    pub fn new(alpha: Q, beta: Q) -> Result<BoundParams> {
        if alpha < Q::new(3, 5) || alpha > Q::new(2, 3) {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in [3/5, 2/3], got {alpha}"
            )));
        }
        if beta <= Q::from_integer(0) {
            return Err(Error::InvalidArgument(format!(
                "beta must be positive, got {beta}"
            )));
        }
        Ok(BoundParams { alpha, beta })
    }

    fn alpha_f(&self) -> f64 {
        self.alpha.to_f64().expect("finite")
    }

    /// Coefficients `beta_2 ..= beta_r`; entry `k` holds `beta_k`.
    pub fn betas(&self, r: usize) -> Vec<f64> {
        let alpha = self.alpha_f();
        let beta = self.beta.to_f64().expect("finite");
        let mut out = vec![f64::NAN; r.max(2) + 1];
        out[2] = beta;
        for k in 3..=r {
            let mut b = beta * 2f64.powf(-alpha);
            for (p, &bp) in out.iter().enumerate().take(k - 1).skip(2) {
                let e = eta(p - 1).to_f64().expect("finite");
                b = b.min(bp * (12.0 * k as f64).powf(-alpha * e));
            }
            out[k] = b;
        }
        out
    }

    pub fn beta_r(&self, r: usize) -> f64 {
        self.betas(r)[r]
    }

    /// `beta (n/4)^alpha` for `r = 2`, else `beta_r (n / 6r)^(alpha eta(r-1))`.
    pub fn bound_value(&self, r: usize, n: u64) -> f64 {
        let alpha = self.alpha_f();
        if r == 2 {
            return self.beta.to_f64().expect("finite") * (n as f64 / 4.0).powf(alpha);
        }
        let e = eta(r - 1).to_f64().expect("finite");
        self.beta_r(r) * (n as f64 / (6.0 * r as f64)).powf(alpha * e)
    }
}

pub fn exponent_row(r: usize) -> ExponentRow {
    ExponentRow {
        r,
        deterministic: Q::new(3, 5) * eta(r - 1),
        clique_only: eta(r),
        random: Q::new(2, r as i64 + 1),
    }
}

pub fn bound_calculator(n: u64, r: usize, params: &BoundParams) -> Result<BoundReport> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    if r > 40 {
        return Err(Error::InvalidArgument(format!("rank {r} too large")));
    }
    let checked = BoundParams::new(params.alpha, params.beta)?;
    let bound_value = checked.bound_value(r, n);
    Ok(BoundReport {
        r,
        n,
        alpha: checked.alpha,
        beta: checked.beta,
        beta_r: checked.beta_r(r),
        bound_value,
        guaranteed: if bound_value >= 1.0 {
            bound_value.floor() as u64
        } else {
            0
        },
        exponent_table: (2..=r.max(5)).map(exponent_row).collect(),
    })
}
