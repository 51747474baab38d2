//! Concrete analytic functions on `(0, π/2)` with exact coefficient
//! generators, endpoint limits and sin/cos reference evaluators.
//!
//! | name              | function                          | coefficients                |
//! |-------------------|-----------------------------------|-----------------------------|
//! | `tan`             | `tan x`                           | all ≥ 0, no endpoint limit  |
//! | `h{n}`            | `(tan x - T_{2n-1}(x))/(x^{2n} tan x)` | all ≥ 0                |
//! | `steckin-g`       | `cot t - 1/t + 2/π`               | ≤ 0 after the constant      |
//! | `wilker`          | `(x/sin x)^2 + x/tan x`           | all ≥ 0                     |
//! | `cusa`            | `3x/sin x + cos x`                | all ≥ 0                     |
//! | `steckin-product` | `(π² - 4x²) tan x / x`            | ≤ 0 after the constant      |

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bernoulli::bernoulli_even_abs;
use crate::error::{Error, Result};
use crate::exact::ExactReal;
use crate::oracle::{self, Oracle, ORACLE_GUARD_BITS};
use crate::real::BigReal;
use crate::scalar::ToReal;
use crate::series::{series_mul, EndLimit, SeriesFn, SignPattern};
use crate::Rational;

/// Coefficients retained for the product entry.
pub const PRODUCT_TERMS: usize = 128;

/// Indices scanned when confirming declared sign patterns.
pub const SIGN_SCAN_LIMIT: usize = 64;

fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn pow2(n: usize) -> BigInt {
    BigInt::one() << n
}

fn rat(n: BigInt, d: BigInt) -> Rational {
    Rational::new(n, d)
}

fn half_pi() -> ExactReal {
    ExactReal::monomial(Rational::new(BigInt::one(), BigInt::from(2)), 1)
}

/// Coefficient of `x^{2i-1}` in `tan x`: `2^{2i}(2^{2i}-1)|B_{2i}|/(2i)!`.
pub fn tan_odd_coeff(i: usize) -> Rational {
    if i == 0 {
        return Rational::zero();
    }
    let p = pow2(2 * i);
    rat(&p * (&p - 1), factorial(2 * i)) * bernoulli_even_abs(i)
}

/// `2^{2k}|B_{2k}|/(2k)!`, the magnitude of the `t^{2k-1}` coefficient of `cot t - 1/t`.
fn cot_coeff_abs(k: usize) -> Rational {
    rat(pow2(2 * k), factorial(2 * k)) * bernoulli_even_abs(k)
}

pub fn tan_series() -> SeriesFn {
    SeriesFn::new(
        "tan",
        ExactReal::zero(),
        half_pi(),
        |k| {
            if k % 2 == 1 {
                ExactReal::rational(tan_odd_coeff(k.div_ceil(2)))
            } else {
                ExactReal::zero()
            }
        },
        EndLimit::Unavailable,
    )
    .expect("valid interval")
    .with_sign(SignPattern::AllNonneg)
}

/// Coefficient of `x^{2i}` in `h_n`.
pub fn hn_coeff(n: usize, i: usize) -> Rational {
    (1..=n)
        .map(|j| {
            let m = n - j + 1;
            let num = pow2(2 * (n + i + 1)) * (pow2(2 * m) - 1);
            let den = factorial(2 * m) * factorial(2 * (i + j));
            rat(num, den) * bernoulli_even_abs(m) * bernoulli_even_abs(i + j)
        })
        .fold(Rational::zero(), |a, b| a + b)
}

pub fn hn_series(n: usize) -> Result<SeriesFn> {
    if n < 1 {
        return Err(Error::Domain {
            what: "h_n index".into(),
            x: n.to_string(),
            interval: "n >= 1".into(),
        });
    }
    let end = ExactReal::monomial(Rational::from_integer(pow2(2 * n)), -2 * n as i32);
    Ok(SeriesFn::new(
        format!("h{n}"),
        ExactReal::zero(),
        half_pi(),
        move |k| {
            if k % 2 == 0 {
                ExactReal::rational(hn_coeff(n, k / 2))
            } else {
                ExactReal::zero()
            }
        },
        EndLimit::Exact(end),
    )?
    .with_sign(SignPattern::AllNonneg))
}

pub fn steckin_g_series() -> SeriesFn {
    let two_over_pi = ExactReal::monomial(Rational::from_integer(BigInt::from(2)), -1);
    SeriesFn::new(
        "steckin-g",
        ExactReal::zero(),
        half_pi(),
        move |k| match k {
            0 => two_over_pi.clone(),
            k if k % 2 == 1 => ExactReal::rational(-cot_coeff_abs(k.div_ceil(2))),
            _ => ExactReal::zero(),
        },
        EndLimit::Exact(ExactReal::zero()),
    )
    .expect("valid interval")
    .with_sign(SignPattern::AllNonposAfterConst)
}

pub fn wilker_series() -> SeriesFn {
    SeriesFn::new(
        "wilker",
        ExactReal::zero(),
        half_pi(),
        |k| match k {
            0 => ExactReal::integer(2),
            k if k % 2 == 0 && k >= 4 => {
                let h = k / 2;
                ExactReal::rational(
                    rat(BigInt::from(2 * h - 2) * pow2(2 * h), factorial(2 * h))
                        * bernoulli_even_abs(h),
                )
            }
            _ => ExactReal::zero(),
        },
        EndLimit::Exact(ExactReal::monomial(
            Rational::new(BigInt::one(), BigInt::from(4)),
            2,
        )),
    )
    .expect("valid interval")
    .with_sign(SignPattern::AllNonneg)
}

pub fn cusa_series() -> SeriesFn {
    SeriesFn::new(
        "cusa",
        ExactReal::zero(),
        half_pi(),
        |k| match k {
            0 => ExactReal::integer(4),
            k if k % 2 == 0 => {
                let h = k / 2;
                let from_x_over_sin = rat(BigInt::from(3) * (pow2(2 * h) - 2), factorial(2 * h))
                    * bernoulli_even_abs(h);
                let sign = if h % 2 == 0 { 1 } else { -1 };
                let from_cos = rat(BigInt::from(sign), factorial(2 * h));
                ExactReal::rational(from_x_over_sin + from_cos)
            }
            _ => ExactReal::zero(),
        },
        EndLimit::Exact(ExactReal::monomial(
            Rational::new(BigInt::from(3), BigInt::from(2)),
            1,
        )),
    )
    .expect("valid interval")
    .with_sign(SignPattern::AllNonneg)
}

/// `(π² - 4x²) · tan x / x` as a Cauchy product, valid below `terms`.
pub fn steckin_product_series(terms: usize) -> Result<SeriesFn> {
    if terms < 2 {
        return Err(Error::InvalidArgument(
            "product series needs at least 2 terms".into(),
        ));
    }
    let quadratic = SeriesFn::from_coeffs(
        "π²-4x²",
        ExactReal::zero(),
        half_pi(),
        vec![
            ExactReal::pi().pow(2),
            ExactReal::zero(),
            ExactReal::integer(-4),
        ],
        EndLimit::Exact(ExactReal::zero()),
    )?;
    let tan_over_x = SeriesFn::new(
        "tan(x)/x",
        ExactReal::zero(),
        half_pi(),
        |k| {
            if k % 2 == 0 {
                ExactReal::rational(tan_odd_coeff(k / 2 + 1))
            } else {
                ExactReal::zero()
            }
        },
        EndLimit::Unavailable,
    )?;
    // (π - 2x)·tan x → 2 and (π + 2x)/x → 4 as x → π/2-
    Ok(series_mul(&quadratic, &tan_over_x, terms)?
        .with_name("steckin-product")
        .with_end_limit(EndLimit::Exact(ExactReal::integer(8)))
        .with_sign(SignPattern::AllNonposAfterConst))
}

/// Confirm the declared sign pattern on indices `0..limit` by exact sign tests.
pub fn verify_sign_pattern(f: &SeriesFn, limit: usize) -> Result<()> {
    let limit = f.valid_terms().map_or(limit, |v| v.min(limit));
    for k in 0..limit {
        let sign = f.coeff(k)?.signum();
        let ok = match f.sign_pattern() {
            SignPattern::AllNonneg => sign != Ordering::Less,
            SignPattern::AllNonpos => sign != Ordering::Greater,
            SignPattern::AllNonposAfterConst => k == 0 || sign != Ordering::Greater,
            SignPattern::Mixed(neg) => (sign == Ordering::Less) == neg.contains(&k),
            SignPattern::Unknown => true,
        };
        if !ok {
            return Err(Error::Inconsistent {
                name: f.name().to_string(),
                index: k,
                detail: format!("declared {}", f.sign_pattern()),
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// reference evaluators

fn guarded(
    f: impl Fn(&BigReal, u32) -> BigReal + Send + Sync + 'static,
    name: &'static str,
) -> Oracle {
    Arc::new(move |x: &BigReal, prec: u32| {
        let lo = BigReal::zero_with(prec);
        let hi = crate::real::pi(prec + ORACLE_GUARD_BITS).mul_pow2(-1);
        if x <= &lo || x >= &hi {
            return Err(Error::Domain {
                what: format!("`{name}` reference"),
                x: x.to_sci_string(20),
                interval: "(0, π/2)".into(),
            });
        }
        Ok(f(
            &x.round_to(prec + ORACLE_GUARD_BITS),
            prec + ORACLE_GUARD_BITS,
        )
        .round_to(prec))
    })
}

pub fn tan_oracle() -> Oracle {
    guarded(oracle::tan, "tan")
}

pub fn hn_oracle(n: usize) -> Oracle {
    let coeffs: Vec<Rational> = (1..=n).map(tan_odd_coeff).collect();
    guarded(
        move |x, p| {
            let t = oracle::tan(x, p);
            let x2 = x * x;
            // T_{2n-1}(x) = Σ_{i=1}^{n} coeffs[i-1] · x^{2i-1}
            let mut partial = BigReal::zero_with(p);
            for c in coeffs.iter().rev() {
                partial = partial * &x2 + BigReal::from_rational(c, p);
            }
            let partial = partial * x;
            (&t - &partial) / (x2.powi(n as u32) * &t)
        },
        "h_n",
    )
}

pub fn steckin_g_oracle() -> Oracle {
    guarded(
        |t, p| {
            let two_over_pi = BigReal::from_int(2, p) / crate::real::pi(p);
            oracle::cot(t, p) - t.recip() + two_over_pi
        },
        "steckin-g",
    )
}

pub fn wilker_oracle() -> Oracle {
    guarded(
        |x, p| {
            let (s, c) = oracle::sin_cos(x, p);
            let ratio = x / &s;
            &ratio * &ratio + x * &c / &s
        },
        "wilker",
    )
}

pub fn cusa_oracle() -> Oracle {
    guarded(
        |x, p| {
            let (s, c) = oracle::sin_cos(x, p);
            BigReal::from_int(3, p) * x / s + c
        },
        "cusa",
    )
}

pub fn steckin_product_oracle() -> Oracle {
    guarded(
        |x, p| {
            let pi2 = crate::real::pi(p).powi(2);
            let quad = pi2 - BigReal::from_int(4, p) * x * x;
            quad * oracle::tan(x, p) / x
        },
        "steckin-product",
    )
}

// ---------------------------------------------------------------------------

/// A catalog function with its reference evaluator.
#[derive(Clone)]
pub struct CatalogEntry {
    pub series: SeriesFn,
    pub oracle: Oracle,
    /// Closed form of the function.
    pub expression: &'static str,
    /// Closed form of the coefficient generator.
    pub formula: &'static str,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        self.series.name()
    }

    pub fn sign_pattern(&self) -> &SignPattern {
        self.series.sign_pattern()
    }

    /// Evaluate the reference at `x`.
    pub fn eval(&self, x: &BigReal, prec: u32) -> Result<BigReal> {
        (self.oracle)(x, prec)
    }

    /// Partial sum of the first `terms` coefficients at `x`.
    pub fn truncated_sum(&self, x: &BigReal, terms: usize, prec: u32) -> Result<BigReal> {
        let t = x - self.series.anchor().to_real(prec);
        let mut acc = BigReal::zero_with(prec);
        for k in (0..terms).rev() {
            acc = acc * &t + self.series.coeff(k)?.to_real(prec);
        }
        Ok(acc)
    }
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("series", &self.series)
            .field("expression", &self.expression)
            .finish()
    }
}

/// Stable names, in listing order. `h{n}` accepts any `n >= 1`; the listing
/// shows the first three.
pub const NAMES: [&str; 8] = [
    "tan",
    "h1",
    "h2",
    "h3",
    "steckin-g",
    "wilker",
    "cusa",
    "steckin-product",
];

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let entry = match name {
        "tan" => CatalogEntry {
            series: tan_series(),
            oracle: tan_oracle(),
            expression: "tan x",
            formula: "c_{2i-1} = 2^{2i}(2^{2i}-1)|B_{2i}|/(2i)!",
        },
        "steckin-g" => CatalogEntry {
            series: steckin_g_series(),
            oracle: steckin_g_oracle(),
            expression: "cot t - 1/t + 2/π",
            formula: "c_0 = 2/π, c_{2k-1} = -2^{2k}|B_{2k}|/(2k)!",
        },
        "wilker" => CatalogEntry {
            series: wilker_series(),
            oracle: wilker_oracle(),
            expression: "(x/sin x)^2 + x/tan x",
            formula: "c_0 = 2, c_{2k} = (2k-2)4^k|B_{2k}|/(2k)! (k >= 2)",
        },
        "cusa" => CatalogEntry {
            series: cusa_series(),
            oracle: cusa_oracle(),
            expression: "3x/sin x + cos x",
            formula: "c_0 = 4, c_{2k} = 3(2^{2k}-2)|B_{2k}|/(2k)! + (-1)^k/(2k)!",
        },
        "steckin-product" => CatalogEntry {
            series: steckin_product_series(PRODUCT_TERMS)?,
            oracle: steckin_product_oracle(),
            expression: "(π² - 4x²) tan x / x",
            formula: "Cauchy product of [π², 0, -4] with tan(x)/x",
        },
        other => {
            let n = other
                .strip_prefix('h')
                .and_then(|rest| rest.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::UnknownFunction(other.to_string()))?;
            CatalogEntry {
                series: hn_series(n)?,
                oracle: hn_oracle(n),
                expression: "(tan x - T_{2n-1}(x)) / (x^{2n} tan x)",
                formula: "c_{2i} = Σ_j 2^{2(n+i+1)}(2^{2(n-j+1)}-1)|B_{2(n-j+1)}||B_{2(i+j)}|/((2(n-j+1))!(2(i+j))!)",
            }
        }
    };
    Ok(entry)
}
