//! Polynomials in powers of `(x - anchor)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::real::BigReal;
use crate::scalar::{Ring, ToReal};

/// `Σ coeffs[k] · (x - anchor)^k`.
///
/// Trailing zero coefficients are trimmed on construction, so the zero
/// polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    anchor: T,
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(anchor: T, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { anchor, coeffs }
    }

    pub fn zero(anchor: T) -> Self {
        Poly {
            anchor,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(anchor: T, c: T) -> Self {
        Self::new(anchor, vec![c])
    }

    /// `c · (x - anchor)^k`.
    pub fn monomial(anchor: T, k: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(anchor, coeffs)
    }

    pub fn anchor(&self) -> &T {
        &self.anchor
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `(x - anchor)^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `len(coeffs) - 1`; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation in the coefficient ring.
    pub fn eval(&self, x: &T) -> T {
        let t = x.clone() - self.anchor.clone();
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(T, T) -> T) -> Result<Self> {
        if self.anchor != other.anchor {
            return Err(Error::AnchorMismatch);
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| op(self.coeff(k), other.coeff(k))).collect();
        Ok(Self::new(self.anchor.clone(), coeffs))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            self.anchor.clone(),
            self.coeffs.iter().map(|k| k.clone() * c.clone()).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.anchor.clone(),
            self.coeffs.iter().map(|k| -k.clone()).collect(),
        )
    }

    /// Substitute `x ↦ lo + hi - x`.
    ///
    /// Powers of `(x - anchor)` become powers of `(x - (lo + hi - anchor))`
    /// with sign `(-1)^k`, so reflecting twice returns the original exactly.
    pub fn reflect(&self, lo: &T, hi: &T) -> Self {
        let anchor = lo.clone() + hi.clone() - self.anchor.clone();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        Self::new(anchor, coeffs)
    }

    /// Coefficient-wise conversion into another scalar type.
    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(f(&self.anchor), self.coeffs.iter().map(f).collect())
    }
}

/// Horner evaluation at a [`BigReal`] point, realizing each coefficient at
/// `prec` bits only when it is used.
pub fn poly_eval<T: ToReal>(p: &Poly<T>, x: &BigReal, prec: u32) -> BigReal {
    let t = x.round_to(prec) - p.anchor.to_real(prec);
    p.coeffs
        .iter()
        .rev()
        .fold(BigReal::zero_with(prec), |acc, c| {
            acc * &t + c.to_real(prec)
        })
}

impl<T: Ring> Poly<T> {
    /// Render as a sum of terms in `x` (or `(x - anchor)`), formatting each
    /// coefficient with `show`. Compound coefficients are parenthesized.
    pub fn render(&self, show: impl Fn(&T) -> String) -> String {
        let anchor = show(&self.anchor);
        let var = if self.anchor.is_zero() {
            "x".to_string()
        } else {
            format!("(x - {})", atom(&anchor))
        };
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = show(c);
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, text),
            };
            let term = match (k, body.as_str()) {
                (0, _) => body.clone(),
                (1, "1") => var.clone(),
                (_, "1") => format!("{var}^{k}"),
                (1, _) => format!("{}·{var}", atom(&body)),
                _ => format!("{}·{var}^{k}", atom(&body)),
            };
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn atom(s: &str) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(T::to_string))
    }
}
