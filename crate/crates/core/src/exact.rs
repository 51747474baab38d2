//! Exact scalars over `Q[π, 1/π]` and the mixed exact/numeric coefficient type.
//!
//! Bernoulli-number coefficient formulas are rational, while interval
//! endpoints and endpoint limits carry powers of π (`π/2`, `(2/π)^2`,
//! `π²/4`). A finite sum `Σ r_e · π^e` with rational `r_e` is closed under
//! ring operations and under division by monomials `r · π^e`, which covers
//! every coefficient the bound constructions produce. Because π is
//! transcendental, a nonzero element never evaluates to zero, so its sign
//! can always be settled numerically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::real::{pi, BigReal, MIN_PRECISION};
use crate::scalar::ToReal;
use crate::Rational;

/// `Σ r_e · π^e`, exponents in `i32`, no zero entries stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactReal {
    terms: BTreeMap<i32, Rational>,
}

impl ExactReal {
    pub fn rational(r: Rational) -> Self {
        Self::monomial(r, 0)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `r · π^e`.
    pub fn monomial(r: Rational, pi_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(pi_exp, r);
        }
        ExactReal { terms }
    }

    pub fn pi() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `(pi_exp, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(e, r)| (*e, r))
    }

    /// The rational value, if no π power other than `π^0` occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// `Some((r, e))` when the value is a single term `r · π^e` (zero excluded).
    pub fn as_monomial(&self) -> Option<(&Rational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, r)| (r, *e))
        } else {
            None
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by a monomial; `None` if `d` is zero or not a monomial.
    pub fn checked_div(&self, d: &ExactReal) -> Option<Self> {
        let (r, e) = d.as_monomial()?;
        let terms = self.terms.iter().map(|(k, v)| (k - e, v / r)).collect();
        Some(ExactReal { terms })
    }

    /// `-self` when `negative`, else a copy.
    pub fn signed(&self, negative: bool) -> Self {
        if negative {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Exact sign. Structural zero is `Equal`; otherwise the value is
    /// evaluated at increasing precision until the rounding bound is cleared.
    pub fn signum(&self) -> Ordering {
        if self.terms.is_empty() {
            return Ordering::Equal;
        }
        if let Some((r, _)) = self.as_monomial() {
            return if r.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        let mut prec = 128u32;
        loop {
            let v = self.to_real(prec);
            let bound = self
                .terms()
                .map(|(e, r)| (r.clone() * Rational::from_integer(4.into()).pow(e.abs())).abs())
                .fold(Rational::zero(), |a, b| a + b);
            let bound =
                BigReal::from_rational(&bound, 64) * BigReal::pow2(-(prec as i64) + 8, prec);
            if v.abs() > bound {
                return v.signum();
            }
            if prec >= 1 << 16 {
                // unreachable for nonzero elements of Q[π, 1/π] of sane size
                return v.signum();
            }
            prec *= 2;
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }
}

impl ToReal for ExactReal {
    fn to_real(&self, prec: u32) -> BigReal {
        let prec = prec.max(MIN_PRECISION);
        let work = prec + 32;
        let p = pi(work);
        let mut acc = BigReal::zero_with(work);
        for (e, r) in self.terms() {
            let power = if e >= 0 {
                p.powi(e as u32)
            } else {
                p.powi(e.unsigned_abs()).recip()
            };
            acc = acc + BigReal::from_rational(r, work) * power;
        }
        acc.round_to(prec)
    }
}

impl Zero for ExactReal {
    fn zero() -> Self {
        ExactReal::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ExactReal {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl<'a> Add<&'a ExactReal> for &'a ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: &'a ExactReal) -> ExactReal {
        let mut terms = self.terms.clone();
        for (e, r) in &rhs.terms {
            let slot = terms.entry(*e).or_insert_with(Rational::zero);
            *slot += r;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        ExactReal { terms }
    }
}

impl<'a> Mul<&'a ExactReal> for &'a ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: &'a ExactReal) -> ExactReal {
        let mut acc = ExactReal::zero();
        for (ea, ra) in &self.terms {
            for (eb, rb) in &rhs.terms {
                acc = &acc + &ExactReal::monomial(ra * rb, ea + eb);
            }
        }
        acc
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal {
            terms: self.terms.into_iter().map(|(e, r)| (e, -r)).collect(),
        }
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -self.clone()
    }
}

impl<'a> Sub<&'a ExactReal> for &'a ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: &'a ExactReal) -> ExactReal {
        self + &(-rhs)
    }
}

impl Add for ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: ExactReal) -> ExactReal {
        &self + &rhs
    }
}

impl Sub for ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: ExactReal) -> ExactReal {
        &self - &rhs
    }
}

impl Mul for ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: ExactReal) -> ExactReal {
        &self * &rhs
    }
}

impl From<Rational> for ExactReal {
    fn from(r: Rational) -> Self {
        ExactReal::rational(r)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, r)) in self.terms.iter().rev().enumerate() {
            let mag = r.abs();
            let sign = if r.is_negative() { "-" } else { "+" };
            if i == 0 {
                if r.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let pi_part = match *e {
                0 => String::new(),
                1 => "π".to_string(),
                e => format!("π^{e}"),
            };
            match (*e, mag.is_one()) {
                (0, _) => f.write_str(&fmt_rational(&mag))?,
                (_, true) => f.write_str(&pi_part)?,
                _ => write!(f, "{}·{}", fmt_rational(&mag), pi_part)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactReal({self})")
    }
}

// ---------------------------------------------------------------------------

/// A polynomial coefficient: exact when every input was exact, otherwise a
/// rounded [`BigReal`]. Mixed operations realize the exact side at the
/// numeric side's precision.
#[derive(Clone)]
pub enum Coeff {
    Exact(ExactReal),
    Real(BigReal),
}

impl Coeff {
    pub fn exact(&self) -> Option<&ExactReal> {
        match self {
            Coeff::Exact(e) => Some(e),
            Coeff::Real(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coeff::Exact(_))
    }

    /// Division, exact when the divisor is an exact monomial; otherwise
    /// numeric at `prec` (or the operands' precision, if larger).
    pub fn div_or_round(&self, d: &Coeff, prec: u32) -> Coeff {
        if let (Coeff::Exact(n), Coeff::Exact(dd)) = (self, d) {
            if let Some(q) = n.checked_div(dd) {
                return Coeff::Exact(q);
            }
        }
        let p = prec.max(self.precision()).max(d.precision());
        Coeff::Real(self.to_real(p) / d.to_real(p))
    }

    fn precision(&self) -> u32 {
        match self {
            Coeff::Exact(_) => MIN_PRECISION,
            Coeff::Real(r) => r.precision(),
        }
    }

    pub fn signum(&self) -> Ordering {
        match self {
            Coeff::Exact(e) => e.signum(),
            Coeff::Real(r) => r.signum(),
        }
    }

    /// Exact form when available and `decimal` is off, otherwise `digits`
    /// significant digits computed at `prec` bits.
    pub fn render(&self, decimal: bool, digits: usize, prec: u32) -> String {
        match self {
            Coeff::Exact(e) if !decimal => e.to_string(),
            other => other.to_real(prec).to_sci_string(digits),
        }
    }

    fn binop(
        &self,
        rhs: &Coeff,
        exact: impl Fn(&ExactReal, &ExactReal) -> ExactReal,
        real: impl Fn(&BigReal, &BigReal) -> BigReal,
    ) -> Coeff {
        match (self, rhs) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(exact(a, b)),
            _ => {
                let p = self.precision().max(rhs.precision());
                Coeff::Real(real(&self.to_real(p), &rhs.to_real(p)))
            }
        }
    }
}

impl From<ExactReal> for Coeff {
    fn from(e: ExactReal) -> Self {
        Coeff::Exact(e)
    }
}

impl From<BigReal> for Coeff {
    fn from(r: BigReal) -> Self {
        Coeff::Real(r)
    }
}

impl ToReal for Coeff {
    fn to_real(&self, prec: u32) -> BigReal {
        match self {
            Coeff::Exact(e) => e.to_real(prec),
            Coeff::Real(r) => r.round_to(prec),
        }
    }
}

/// Exact coefficients compare structurally; anything numeric compares by value.
impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coeff::Exact(a), Coeff::Exact(b)) => a == b,
            _ => {
                let p = self.precision().max(other.precision());
                self.to_real(p) == other.to_real(p)
            }
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Exact(e) => write!(f, "{e}"),
            Coeff::Real(r) => write!(f, "{r:?}"),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false, 40, crate::real::DEFAULT_PRECISION))
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        self.binop(&rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        self.binop(&rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        self.binop(&rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Exact(e) => Coeff::Exact(-e),
            Coeff::Real(r) => Coeff::Real(-r),
        }
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::Exact(ExactReal::zero())
    }
    fn is_zero(&self) -> bool {
        match self {
            Coeff::Exact(e) => e.is_zero(),
            Coeff::Real(r) => r.is_zero(),
        }
    }
}

impl One for Coeff {
    fn one() -> Self {
        Coeff::Exact(ExactReal::one())
    }
}
