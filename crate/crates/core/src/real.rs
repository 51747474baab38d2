//! Arbitrary-precision binary floating point.
//!
//! A [`BigReal`] is `mantissa · 2^exponent` with a mantissa of at most
//! `precision` bits, rounded to nearest (ties to even) after every operation.
//! Binary operations run at the larger of the two operand precisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Smallest working precision accepted anywhere in the crate.
pub const MIN_PRECISION: u32 = 64;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Clone)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn bits_of(n: &BigInt) -> i64 {
    n.bits() as i64
}

/// Round `|mag| · 2^exp` to `prec` bits, ties to even.
fn round_mag(mag: BigUint, exp: i64, prec: u32) -> (BigUint, i64) {
    let bits = mag.bits() as i64;
    let prec = i64::from(prec);
    if bits <= prec {
        return (mag, exp);
    }
    let shift = (bits - prec) as u64;
    let mut q = &mag >> shift;
    let rem = &mag - (&q << shift);
    let half = BigUint::one() << (shift - 1);
    let round_up = match rem.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Equal => q.is_odd(),
        Ordering::Less => false,
    };
    if round_up {
        q += 1u32;
    }
    (q, exp + shift as i64)
}

impl BigReal {
    fn from_parts(mant: BigInt, exp: i64, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        if mant.is_zero() {
            return BigReal { mant, exp: 0, prec };
        }
        let sign = mant.sign();
        let (mut mag, mut exp) = round_mag(mant.magnitude().clone(), exp, prec);
        let tz = mag.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mag >>= tz;
            exp += tz as i64;
        }
        BigReal {
            mant: BigInt::from_biguint(sign, mag),
            exp,
            prec,
        }
    }

    pub fn zero_with(prec: u32) -> Self {
        BigReal {
            mant: BigInt::zero(),
            exp: 0,
            prec: prec.max(MIN_PRECISION),
        }
    }

    pub fn from_int<I: Into<BigInt>>(n: I, prec: u32) -> Self {
        Self::from_parts(n.into(), 0, prec)
    }

    /// Exact conversion of a finite `f64`, rounded to `prec` if narrower than 53 bits.
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "BigReal::from_f64 on non-finite value");
        if v == 0.0 {
            return Self::zero_with(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::from_parts(BigInt::from(m) * sign, e, prec)
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Self::quotient(r.numer(), r.denom(), 0, prec)
    }

    /// `num / den · 2^exp` rounded to `prec` bits.
    fn quotient(num: &BigInt, den: &BigInt, exp: i64, prec: u32) -> Self {
        assert!(!den.is_zero(), "BigReal division by zero");
        if num.is_zero() {
            return Self::zero_with(prec);
        }
        let negative = num.is_negative() != den.is_negative();
        let n = num.magnitude();
        let d = den.magnitude();
        let shift =
            (i64::from(prec.max(MIN_PRECISION)) + 2 + d.bits() as i64 - n.bits() as i64).max(0);
        let (q, r) = (n << shift as u64).div_rem(d);
        // sticky bit keeps round-to-nearest honest for the discarded remainder
        let (q, extra) = if r.is_zero() {
            (q, 0)
        } else {
            ((q << 1u32) | BigUint::one(), 1)
        };
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Self::from_parts(BigInt::from_biguint(sign, q), exp - shift - extra, prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Same value re-rounded (or widened) to `prec` bits.
    pub fn round_to(&self, prec: u32) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> Ordering {
        match self.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigReal {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    /// `2^k` at the given precision.
    pub fn pow2(k: i64, prec: u32) -> Self {
        Self::from_parts(BigInt::one(), k, prec)
    }

    /// Position of the leading bit: `2^(top-1) <= |self| < 2^top`.
    /// `None` for zero.
    pub fn top_bit(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + bits_of(&self.mant))
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut result = Self::from_int(1, self.prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn recip(&self) -> Self {
        &Self::from_int(1, self.prec) / self
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round_to(MIN_PRECISION).round_to_bits(53);
        let m = r.mant.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(r.exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    fn round_to_bits(&self, bits: u32) -> Self {
        let sign = self.mant.sign();
        let (mag, exp) = round_mag(self.mant.magnitude().clone(), self.exp, bits);
        BigReal {
            mant: BigInt::from_biguint(sign, mag),
            exp,
            prec: self.prec,
        }
    }

    /// Scientific notation with `digits` significant decimal digits,
    /// e.g. `2.467401100272339654708622749969037783828e0`.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format!("0.{}e0", "0".repeat(digits - 1));
        }
        let r = self.to_rational().abs();
        let ten = BigInt::from(10);
        // estimate the decimal exponent k with 10^(k-1) <= r < 10^k, then fix it up
        let top = self.top_bit().unwrap_or(0);
        let mut k = ((top as f64) * std::f64::consts::LOG10_2).floor() as i64;
        let pow10 = |e: i64| -> Rational {
            if e >= 0 {
                Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
            } else {
                Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
            }
        };
        while r >= pow10(k) {
            k += 1;
        }
        while r < pow10(k - 1) {
            k -= 1;
        }
        let scaled = &r * pow10(digits as i64 - k);
        let mut int = scaled.round().to_integer();
        if int == num_traits::pow(ten.clone(), digits) {
            int /= &ten;
            k += 1;
        }
        let s = int.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{}", k - 1)
        } else {
            format!("{sign}{head}.{tail}e{}", k - 1)
        }
    }

    /// Parse a decimal literal (`-1.25`, `3e-4`, `2.5E+10`) at `prec` bits.
    pub fn parse_decimal(s: &str, prec: u32) -> Option<Self> {
        parse_decimal_rational(s).map(|r| Self::from_rational(&r, prec))
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Ordering::Equal {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top_bit().unwrap(), other.top_bit().unwrap());
        if ta != tb {
            let mag = ta.cmp(&tb);
            return if sa == Ordering::Greater {
                mag
            } else {
                mag.reverse()
            };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }

    fn add_impl(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if other.is_zero() {
            return self.round_to(prec);
        }
        if self.is_zero() {
            return other.round_to(prec);
        }
        let (big, small) = if self.top_bit() >= other.top_bit() {
            (self, other)
        } else {
            (other, self)
        };
        let floor = big.top_bit().unwrap() - i64::from(prec) - 4;
        if small.top_bit().unwrap() < floor {
            // `small` sits entirely below the rounding position: keep only its sign as a sticky bit
            let sticky = BigReal {
                mant: small.mant.signum(),
                exp: floor - 1,
                prec,
            };
            return big.add_aligned(&sticky, prec);
        }
        big.add_aligned(small, prec)
    }

    fn add_aligned(&self, other: &Self, prec: u32) -> Self {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Self::from_parts(a + b, e, prec)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        Self::from_parts(&self.mant * &other.mant, self.exp + other.exp, prec)
    }

    fn div_impl(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        Self::quotient(&self.mant, &other.mant, self.exp - other.exp, prec)
    }
}

/// Exact rational value of a decimal literal.
pub fn parse_decimal_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut n: BigInt = if all.is_empty() {
        BigInt::zero()
    } else {
        all.parse().ok()?
    };
    if negative {
        n = -n;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        Rational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({}, {} bits)", self.to_sci_string(40), self.prec)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(40);
        f.write_str(&self.to_sci_string(digits))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl<'a> $trait<&'a BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &'a BigReal) -> BigReal {
                self.$imp(rhs)
            }
        }
        impl $trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$imp(&rhs)
            }
        }
        impl<'a> $trait<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &'a BigReal) -> BigReal {
                self.$imp(rhs)
            }
        }
        impl<'a> $trait<BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$imp(&rhs)
            }
        }
    };
}

impl BigReal {
    fn sub_impl(&self, other: &Self) -> Self {
        self.add_impl(&-other)
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Zero for BigReal {
    fn zero() -> Self {
        Self::zero_with(MIN_PRECISION)
    }
    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
}

impl One for BigReal {
    fn one() -> Self {
        Self::from_int(1, MIN_PRECISION)
    }
}

// ---------------------------------------------------------------------------
// π

static PI_CACHE: RwLock<Option<BigReal>> = RwLock::new(None);

/// `atan(1/m) · 2^bits` in fixed point, truncated.
fn atan_inv_fixed(m: u32, bits: u64) -> BigInt {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut power = (BigInt::one() << bits) / &m;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &m2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn compute_pi(prec: u32) -> BigReal {
    let guard = 32u64;
    let bits = u64::from(prec) + guard;
    // Machin: π = 16·atan(1/5) − 4·atan(1/239)
    let fixed = atan_inv_fixed(5, bits) * 16 - atan_inv_fixed(239, bits) * 4;
    BigReal::from_parts(fixed, -(bits as i64), prec)
}

/// π rounded to `prec` bits (at least [`MIN_PRECISION`]).
///
/// The highest-precision value computed so far is cached; lower precisions
/// are rounded from it.
pub fn pi(prec: u32) -> BigReal {
    let prec = prec.max(MIN_PRECISION);
    if let Some(cached) = PI_CACHE.read().unwrap_or_else(|e| e.into_inner()).as_ref() {
        if cached.prec >= prec + 8 {
            return cached.round_to(prec);
        }
    }
    let fresh = compute_pi(prec + 64);
    let mut slot = PI_CACHE.write().unwrap_or_else(|e| e.into_inner());
    match slot.as_ref() {
        Some(cached) if cached.prec >= fresh.prec => {}
        _ => *slot = Some(fresh.clone()),
    }
    fresh.round_to(prec)
}
