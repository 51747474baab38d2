use crate::error::{Error, Result};
use crate::exact::ExactReal;
use crate::oracle;
use crate::real::{pi, BigReal};
use crate::scalar::ToReal;

/// Points used by the default grid.
pub const DEFAULT_COUNT: usize = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Uniform,
    /// Chebyshev–Lobatto nodes, endpoints included.
    Chebyshev,
}

/// Sample points on the closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleGrid {
    lo: BigReal,
    hi: BigReal,
    count: usize,
    spacing: Spacing,
}

impl SampleGrid {
    pub fn new(lo: BigReal, hi: BigReal, count: usize, spacing: Spacing) -> Result<Self> {
        if count < 3 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 3 points, got {count}"
            )));
        }
        if lo >= hi {
            return Err(Error::InvalidArgument(format!(
                "grid bounds out of order: {} >= {}",
                lo.to_sci_string(12),
                hi.to_sci_string(12)
            )));
        }
        Ok(SampleGrid {
            lo,
            hi,
            count,
            spacing,
        })
    }

    /// `count` Chebyshev points on `[a + (b-a)/200, b - (b-a)/200]`.
    pub fn default_for(a: &ExactReal, b: &ExactReal, count: usize, prec: u32) -> Result<Self> {
        let inset = (b - a) * ExactReal::ratio(1, 200);
        Self::new(
            (a + &inset).to_real(prec),
            (b - &inset).to_real(prec),
            count,
            Spacing::Chebyshev,
        )
    }

    pub fn lo(&self) -> &BigReal {
        &self.lo
    }

    pub fn hi(&self) -> &BigReal {
        &self.hi
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// Check `a < lo < hi < b`.
    pub fn check_within(&self, a: &ExactReal, b: &ExactReal, prec: u32) -> Result<()> {
        if self.lo <= a.to_real(prec) || self.hi >= b.to_real(prec) {
            return Err(Error::Domain {
                what: "sample grid".into(),
                x: format!(
                    "[{}, {}]",
                    self.lo.to_sci_string(12),
                    self.hi.to_sci_string(12)
                ),
                interval: format!("({a}, {b})"),
            });
        }
        Ok(())
    }

    /// Points in ascending order, rounded to `prec` bits.
    pub fn points(&self, prec: u32) -> Vec<BigReal> {
        let lo = self.lo.round_to(prec);
        let hi = self.hi.round_to(prec);
        let last = (self.count - 1) as i64;
        let mut pts: Vec<BigReal> = match self.spacing {
            Spacing::Uniform => {
                let step = (&hi - &lo) / BigReal::from_int(last, prec);
                (0..=last)
                    .map(|j| &lo + &(&step * &BigReal::from_int(j, prec)))
                    .collect()
            }
            Spacing::Chebyshev => {
                let mid = (&lo + &hi).mul_pow2(-1);
                let half = (&hi - &lo).mul_pow2(-1);
                let angle = pi(prec + 16) / BigReal::from_int(last, prec + 16);
                (0..=last)
                    .map(|j| {
                        let c = oracle::cos(&(&angle * &BigReal::from_int(j, prec + 16)), prec);
                        (&mid - &(&half * &c)).round_to(prec)
                    })
                    .collect()
            }
        };
        pts[0] = lo;
        pts[last as usize] = hi;
        pts
    }
}
