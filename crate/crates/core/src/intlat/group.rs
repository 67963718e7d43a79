use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{smith_normal_form, IntMatrix};
use crate::exact::ser_bigints;

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `1 < d_1 | d_2 | … | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FpAbelianGroup {
    #[serde(rename = "rank")]
    free_rank: usize,
    #[serde(rename = "torsion", serialize_with = "ser_bigints")]
    invariant_factors: Vec<BigInt>,
}

impl FpAbelianGroup {
    /// Builds the canonical form from an arbitrary list of cyclic orders;
    /// units are dropped and the rest re-chained through a Smith form.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        let orders: Vec<BigInt> = torsion.into_iter().map(|d| d.abs()).collect();
        assert!(
            orders.iter().all(|d| !d.is_zero()),
            "torsion orders must be nonzero"
        );
        let already_chained = orders.iter().all(|d| !d.is_one())
            && orders.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        let invariant_factors = if already_chained {
            orders
        } else {
            smith_normal_form(&IntMatrix::diagonal(&orders))
                .invariant_factors()
                .into_iter()
                .filter(|d| !d.is_one())
                .collect()
        };
        FpAbelianGroup { free_rank, invariant_factors }
    }

    pub fn free(rank: usize) -> Self {
        FpAbelianGroup { free_rank: rank, invariant_factors: Vec::new() }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Whether the group has an element of order `n`.
    pub fn has_element_of_order(&self, n: u64) -> bool {
        let n = BigInt::from(n);
        n.is_one() || self.invariant_factors.iter().any(|d| (d % &n).is_zero())
    }

    pub fn direct_sum(&self, other: &FpAbelianGroup) -> FpAbelianGroup {
        let mut t = self.invariant_factors.clone();
        t.extend(other.invariant_factors.iter().cloned());
        FpAbelianGroup::new(self.free_rank + other.free_rank, t)
    }
}

impl fmt::Display for FpAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}
