use dstaylor::bernoulli::{bernoulli, bernoulli_even_abs};
use dstaylor::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn binom(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Akiyama–Tanigawa table, which yields B_n with the B_1 = +1/2 convention.
fn akiyama_tanigawa(n: usize) -> Rational {
    let mut row: Vec<Rational> = (0..=n).map(|m| q(1, m as i64 + 1)).collect();
    for j in 1..=n {
        for m in 0..=(n - j) {
            row[m] = (&row[m] - &row[m + 1]) * Rational::from_integer(BigInt::from(m + 1));
        }
    }
    row[0].clone()
}

#[test]
fn known_values() {
    assert_eq!(bernoulli(0), q(1, 1));
    assert_eq!(bernoulli(1), q(-1, 2));
    assert_eq!(bernoulli(4), q(-1, 30));
    assert_eq!(bernoulli(12), q(-691, 2730));
    assert_eq!(bernoulli_even_abs(3), q(1, 42));
}

#[test]
fn matches_independent_table() {
    for m in 2..=40 {
        assert_eq!(bernoulli(m), akiyama_tanigawa(m), "B_{m}");
    }
}

proptest! {
    #[test]
    fn defining_recurrence(m in 1usize..=40) {
        let sum = (0..=m).fold(Rational::zero(), |acc, j| acc + Rational::from_integer(binom(m + 1, j)) * bernoulli(j));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn odd_indices_vanish(k in 1usize..=20) {
        prop_assert!(bernoulli(2 * k + 1).is_zero());
    }

    #[test]
    fn even_signs_alternate(k in 1usize..=20) {
        let b = bernoulli(2 * k);
        prop_assert_eq!(b.is_positive(), k % 2 == 1);
        prop_assert_eq!(b.abs(), bernoulli_even_abs(k));
    }
}
