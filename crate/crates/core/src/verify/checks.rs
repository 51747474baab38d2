//! Sampled checks: inequality chains, the successive-difference identity,
//! endpoint-limit probes and the cotangent example.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{self, CatalogEntry};
use crate::error::{Error, Result};
use crate::exact::{Coeff, ExactReal};
use crate::oracle::Oracle;
use crate::poly::{poly_eval, Poly};
use crate::real::BigReal;
use crate::scalar::ToReal;
use crate::series::SeriesFn;
use crate::taylor::{first_taylor, nesting_chain, second_taylor, successive_difference};
use crate::Rational;

use super::grid::SampleGrid;
use super::report::{CheckKind, Sample, Verdict, VerifyReport};

/// `2^{-P/2} · (1 + scale)`.
pub fn guard_for(prec: u32, scale: &BigReal) -> BigReal {
    BigReal::pow2(-i64::from(prec / 2), prec) * (BigReal::from_int(1, prec) + scale.abs())
}

/// One member of an inequality chain.
#[derive(Clone)]
pub enum Curve {
    Poly { label: String, poly: Poly<Coeff> },
    Function { label: String, eval: Oracle },
}

impl Curve {
    pub fn poly(label: impl Into<String>, poly: Poly<Coeff>) -> Self {
        Curve::Poly {
            label: label.into(),
            poly,
        }
    }

    pub fn function(label: impl Into<String>, eval: Oracle) -> Self {
        Curve::Function {
            label: label.into(),
            eval,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Curve::Poly { label, .. } | Curve::Function { label, .. } => label,
        }
    }

    pub fn eval(&self, x: &BigReal, prec: u32) -> Result<BigReal> {
        match self {
            Curve::Poly { poly, .. } => Ok(poly_eval(poly, x, prec)),
            Curve::Function { eval, .. } => eval(x, prec),
        }
    }

    fn same_poly(&self, other: &Curve) -> bool {
        match (self, other) {
            (Curve::Poly { poly: p, .. }, Curve::Poly { poly: q, .. }) => {
                p == q && p.coeffs().iter().chain([p.anchor()]).all(Coeff::is_exact)
            }
            _ => false,
        }
    }
}

impl std::fmt::Debug for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Curve::Poly { label, poly } => write!(f, "{label} = {poly}"),
            Curve::Function { label, .. } => write!(f, "{label} (reference)"),
        }
    }
}

/// Evaluate every curve at every point; rows come back in point order and
/// the first failing point (in that order) determines the error.
fn evaluate(curves: &[Curve], points: &[BigReal], prec: u32) -> Result<Vec<Vec<BigReal>>> {
    let rows: Vec<Result<Vec<BigReal>>> = points
        .par_iter()
        .map(|x| curves.iter().map(|c| c.eval(x, prec)).collect())
        .collect();
    rows.into_iter().collect()
}

/// Check that `curves` are pointwise ascending (non-strictly checked as
/// strict with a guard) on `grid`. Identical curves give INCONCLUSIVE.
pub fn check_chain(curves: &[Curve], grid: &SampleGrid, prec: u32) -> Result<VerifyReport> {
    chain_report(curves, grid, prec, false)
}

/// As [`check_chain`], but adjacent curves that are the same exact
/// polynomial are recorded as exact ties and excluded from the margins.
pub fn check_chain_with_ties(
    curves: &[Curve],
    grid: &SampleGrid,
    prec: u32,
) -> Result<VerifyReport> {
    chain_report(curves, grid, prec, true)
}

fn chain_report(
    curves: &[Curve],
    grid: &SampleGrid,
    prec: u32,
    merge_ties: bool,
) -> Result<VerifyReport> {
    if curves.len() < 2 {
        return Err(Error::InvalidArgument(
            "a chain needs at least two curves".into(),
        ));
    }
    let tied: Vec<bool> = curves
        .windows(2)
        .map(|w| merge_ties && w[0].same_poly(&w[1]))
        .collect();
    let exact_ties = curves
        .windows(2)
        .zip(&tied)
        .filter(|(_, &t)| t)
        .map(|(w, _)| format!("{} = {}", w[0].label(), w[1].label()))
        .collect();

    let points = grid.points(prec);
    let rows = evaluate(curves, &points, prec)?;
    let zero = BigReal::zero_with(prec);
    let mut scale = zero.clone();
    let mut samples = Vec::with_capacity(points.len());
    for (x, values) in points.into_iter().zip(rows) {
        for v in &values {
            scale = BigReal::max(&scale, &v.abs());
        }
        let margin = values
            .windows(2)
            .zip(&tied)
            .filter(|(_, &t)| !t)
            .map(|(w, _)| &w[1] - &w[0])
            .reduce(|a, b| BigReal::min(&a, &b))
            .unwrap_or_else(|| zero.clone());
        samples.push(Sample { x, values, margin });
    }
    let min_margin = samples
        .iter()
        .map(|s| s.margin.clone())
        .reduce(|a, b| BigReal::min(&a, &b))
        .unwrap_or(zero);
    let guard = guard_for(prec, &scale);
    let labels: Vec<String> = curves.iter().map(|c| c.label().to_string()).collect();
    Ok(VerifyReport {
        subject: labels.join(" <= "),
        kind: CheckKind::Ordering,
        verdict: Verdict::from_margin(&min_margin, &guard),
        precision_bits: prec,
        guard,
        min_margin,
        max_residual: None,
        curves: labels,
        exact_ties,
        samples,
        notes: Vec::new(),
        empirical: true,
    })
}

fn label_for(label: String, mirrored: Option<&ExactReal>) -> String {
    match mirrored {
        Some(sum) => format!("{label}({sum} - x)"),
        None => label,
    }
}

/// The chain `lowers ++ [f] ++ uppers` for a catalog entry, optionally
/// mirrored into `x ↦ a + b - x`.
pub fn catalog_chain_curves(
    entry: &CatalogEntry,
    degrees: &[usize],
    mirror: bool,
    prec: u32,
) -> Result<Vec<Curve>> {
    let f = &entry.series;
    let mut chain = nesting_chain(f, degrees, prec)?;
    let (a, b) = (f.anchor().clone(), f.right_end().clone());
    let sum = &a + &b;
    if mirror {
        chain = chain.reflected(&a, &b);
    }
    let tag = mirror.then_some(&sum);
    let mut curves: Vec<Curve> = chain
        .lowers
        .iter()
        .map(|bp| Curve::poly(label_for(bp.label(), tag), bp.poly.clone()))
        .collect();
    let oracle = if mirror {
        mirrored(entry.oracle.clone(), sum.clone())
    } else {
        entry.oracle.clone()
    };
    curves.push(Curve::function(
        label_for(entry.name().to_string(), tag),
        oracle,
    ));
    curves.extend(
        chain
            .uppers
            .iter()
            .rev()
            .map(|bp| Curve::poly(label_for(bp.label(), tag), bp.poly.clone())),
    );
    Ok(curves)
}

/// `x ↦ f(s - x)`.
pub fn mirrored(f: Oracle, s: ExactReal) -> Oracle {
    Arc::new(move |x: &BigReal, prec: u32| {
        let work = prec + crate::oracle::ORACLE_GUARD_BITS;
        f(&(s.to_real(work) - x.round_to(work)), prec)
    })
}

/// Run the nesting chain of `entry` for `degrees` with `f` inserted between
/// the lower and upper halves.
pub fn check_catalog_chain(
    entry: &CatalogEntry,
    degrees: &[usize],
    grid: &SampleGrid,
    mirror: bool,
    prec: u32,
) -> Result<VerifyReport> {
    grid.check_within(entry.series.anchor(), entry.series.right_end(), prec)?;
    let curves = catalog_chain_curves(entry, degrees, mirror, prec)?;
    let mut report = check_chain_with_ties(&curves, grid, prec)?;
    let list: Vec<String> = degrees.iter().map(usize::to_string).collect();
    report.subject = format!(
        "chain {}{} [{}]",
        entry.name(),
        if mirror { " (mirrored)" } else { "" },
        list.join(",")
    );
    Ok(report)
}

/// Compare `𝕋_n(x) - 𝕋_{n+1}(x)` computed from the two polynomials against
/// its closed form at `trials` random `(n, x)` with `n <= n_max`.
pub fn check_identity12(
    f: &SeriesFn,
    n_max: usize,
    trials: usize,
    seed: u64,
    prec: u32,
) -> Result<VerifyReport> {
    if !f.has_endpoint() {
        return Err(Error::NoEndpoint(f.name().to_string()));
    }
    let seconds: Vec<Poly<Coeff>> = (0..=n_max + 1)
        .map(|n| second_taylor(f, n, prec))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = f.anchor().to_real(prec);
    let width = f.width().to_real(prec);
    let draws: Vec<(usize, BigReal)> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(0..=n_max);
            // u in (0, 1) with 64 random bits
            let u = BigReal::from_int(rng.gen::<u64>() | 1, prec).mul_pow2(-64);
            (n, &a + &(&width * &u))
        })
        .collect();
    let rows: Vec<Result<(BigReal, BigReal)>> = draws
        .par_iter()
        .map(|(n, x)| {
            let direct = poly_eval(&seconds[*n], x, prec) - poly_eval(&seconds[*n + 1], x, prec);
            Ok((direct, successive_difference(f, *n, x, prec)?))
        })
        .collect();

    let zero = BigReal::zero_with(prec);
    let (mut scale, mut max_residual) = (zero.clone(), zero.clone());
    let mut samples = Vec::with_capacity(trials);
    for ((n, x), row) in draws.into_iter().zip(rows) {
        let (direct, closed) = row?;
        let residual = (&direct - &closed).abs();
        scale = BigReal::max(&scale, &BigReal::max(&direct.abs(), &closed.abs()));
        max_residual = BigReal::max(&max_residual, &residual);
        samples.push(Sample {
            x,
            values: vec![BigReal::from_int(n as i64, prec), direct, closed],
            margin: -residual,
        });
    }
    let guard = guard_for(prec, &scale);
    let verdict = if max_residual < guard {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(VerifyReport {
        subject: format!(
            "identity12 {} (n <= {n_max}, {trials} trials, seed {seed})",
            f.name()
        ),
        kind: CheckKind::Identity,
        verdict,
        precision_bits: prec,
        guard,
        min_margin: -max_residual.clone(),
        max_residual: Some(max_residual),
        curves: vec!["n".into(), "TT_n - TT_{n+1}".into(), "closed form".into()],
        exact_ties: Vec::new(),
        samples,
        notes: Vec::new(),
        empirical: true,
    })
}

/// Probe `f(a + ε) → lower` and `f(b - ε) → upper` for each `ε` in
/// `eps_list`. Each probe must land within `10ε` of its limit and the
/// distances must shrink strictly as `ε` decreases.
pub fn check_best_constants(
    entry: &CatalogEntry,
    lower: &ExactReal,
    upper: &ExactReal,
    eps_list: &[BigReal],
    prec: u32,
) -> Result<VerifyReport> {
    if eps_list.is_empty() {
        return Err(Error::InvalidArgument("no probe distances given".into()));
    }
    let mut eps: Vec<BigReal> = eps_list.iter().map(|e| e.round_to(prec)).collect();
    eps.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
    let f = &entry.series;
    let (a, b) = (f.anchor().to_real(prec), f.right_end().to_real(prec));
    let ten = BigReal::from_int(10, prec);

    let mut samples = Vec::new();
    let mut notes = Vec::new();
    let mut scale = BigReal::zero_with(prec);
    for (end, limit) in [("left", lower), ("right", upper)] {
        let limit = limit.to_real(prec);
        let mut previous: Option<BigReal> = None;
        for e in &eps {
            let x = if end == "left" { &a + e } else { &b - e };
            let value = entry.eval(&x, prec)?;
            let dist = (&value - &limit).abs();
            if let Some(p) = &previous {
                if &dist >= p {
                    notes.push(format!(
                        "{end} end: distance does not shrink at ε = {}",
                        e.to_sci_string(6)
                    ));
                }
            }
            scale = BigReal::max(&scale, &value.abs());
            let margin = &(&ten * e) - &dist;
            previous = Some(dist);
            samples.push(Sample {
                x,
                values: vec![e.clone(), value, limit.clone()],
                margin,
            });
        }
    }
    let min_margin = samples
        .iter()
        .map(|s| s.margin.clone())
        .reduce(|p, q| BigReal::min(&p, &q))
        .expect("non-empty");
    let guard = guard_for(prec, &scale);
    let mut verdict = Verdict::from_margin(&min_margin, &guard);
    if !notes.is_empty() {
        verdict = Verdict::Fail;
    }
    Ok(VerifyReport {
        subject: format!("constants {}: {} .. {}", entry.name(), lower, upper),
        kind: CheckKind::Limit,
        verdict,
        precision_bits: prec,
        guard,
        min_margin,
        max_residual: None,
        curves: vec!["eps".into(), "f".into(), "limit".into()],
        exact_ties: Vec::new(),
        samples,
        notes,
        empirical: true,
    })
}

/// The four lines of the cotangent example in `x`, all anchored at `π/2`.
#[derive(Clone, Debug)]
pub struct SteckinLines {
    /// `2/π - (1/2)(π/2 - x)`.
    pub q1: Poly<Coeff>,
    /// Second approximation of `g` of degree 1 at `t = π/2 - x`.
    pub tt1: Poly<Coeff>,
    /// First approximation of `g` of degree 1 at `t = π/2 - x`.
    pub t1: Poly<Coeff>,
    /// `2/π - (1/3)(π/2 - x)`.
    pub r1: Poly<Coeff>,
}

pub fn steckin_lines(prec: u32) -> Result<SteckinLines> {
    let g = catalog::steckin_g_series();
    let (a, b) = (g.anchor().clone(), g.right_end().clone());
    let chain = nesting_chain(&g, &[1], prec)?.reflected(&a, &b);
    let two_over_pi = ExactReal::monomial(Rational::from_integer(2.into()), -1);
    let line = |slope: ExactReal| {
        Poly::new(
            Coeff::Exact(b.clone()),
            vec![Coeff::Exact(two_over_pi.clone()), Coeff::Exact(slope)],
        )
    };
    Ok(SteckinLines {
        q1: line(ExactReal::ratio(1, 2)),
        tt1: chain.lowers[0].poly.clone(),
        t1: chain.uppers[0].poly.clone(),
        r1: line(ExactReal::ratio(1, 3)),
    })
}

/// `Q_1 < 𝕋_1 <= g(π/2 - x) <= T_1 = R_1` on `grid`.
pub fn check_steckin_example(grid: &SampleGrid, prec: u32) -> Result<VerifyReport> {
    let g = catalog::steckin_g_series();
    grid.check_within(g.anchor(), g.right_end(), prec)?;
    let lines = steckin_lines(prec)?;
    let sum = g.anchor() + g.right_end();
    let curves = vec![
        Curve::poly("Q1", lines.q1),
        Curve::poly("TT1(π/2 - x)", lines.tt1),
        Curve::function("g(π/2 - x)", mirrored(catalog::steckin_g_oracle(), sum)),
        Curve::poly("T1(π/2 - x)", lines.t1),
        Curve::poly("R1", lines.r1),
    ];
    let mut report = check_chain_with_ties(&curves, grid, prec)?;
    report.subject = "steckin example".into();
    Ok(report)
}

/// `T_4 < f < 𝕋_4` for `f = (x/sin x)^2 + x/tan x`, where `T_4 = 2 + (2/45)x^4`.
pub fn check_wilker(grid: &SampleGrid, prec: u32) -> Result<VerifyReport> {
    let entry = catalog::lookup("wilker")?;
    let f = &entry.series;
    grid.check_within(f.anchor(), f.right_end(), prec)?;
    let curves = vec![
        Curve::poly("T4", first_taylor(f, 4)?),
        Curve::function("wilker", entry.oracle.clone()),
        Curve::poly("TT4", second_taylor(f, 4, prec)?),
    ];
    let mut report = check_chain_with_ties(&curves, grid, prec)?;
    report.subject = "wilker".into();
    Ok(report)
}
