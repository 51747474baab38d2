//! Exact Bernoulli numbers.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Rational;

static MEMO: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// `B_k` with the `B_1 = -1/2` convention.
///
/// Computed from `Σ_{j=0}^{m} C(m+1, j)·B_j = 0` and memoized; concurrent
/// callers may duplicate work but always see a consistent prefix.
pub fn bernoulli(k: usize) -> Rational {
    if let Some(b) = MEMO.read().unwrap_or_else(|e| e.into_inner()).get(k) {
        return b.clone();
    }
    let mut table = MEMO.read().unwrap_or_else(|e| e.into_inner()).clone();
    if table.is_empty() {
        table.push(Rational::one());
    }
    while table.len() <= k {
        let m = table.len();
        if m >= 3 && m % 2 == 1 {
            table.push(Rational::zero());
            continue;
        }
        // B_m = -1/(m+1) · Σ_{j<m} C(m+1, j)·B_j
        let mut binom = BigInt::one();
        let mut sum = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                sum += b * Rational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        table.push(-sum / Rational::from_integer(BigInt::from(m + 1)));
    }
    let value = table[k].clone();
    let mut slot = MEMO.write().unwrap_or_else(|e| e.into_inner());
    if slot.len() < table.len() {
        *slot = table;
    }
    value
}

/// `|B_{2k}|`.
pub fn bernoulli_even_abs(k: usize) -> Rational {
    num_traits::Signed::abs(&bernoulli(2 * k))
}
