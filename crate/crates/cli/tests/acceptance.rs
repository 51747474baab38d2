//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use dstaylor::bernoulli::{bernoulli, bernoulli_even_abs};
use dstaylor::catalog::{self, hn_coeff, lookup, tan_odd_coeff};
use dstaylor::poly_eval;
use dstaylor::real::{pi, BigReal};
use dstaylor::taylor::{first_taylor, second_taylor};
use dstaylor::verify::{
    check_best_constants, check_identity12, check_steckin_example, check_wilker, steckin_lines,
    SampleGrid, Spacing, Verdict, DEFAULT_COUNT,
};
use dstaylor::{Coeff, ExactReal, Rational, ToReal};
use num_traits::Signed;
use serde_json::Value;

const P: u32 = 256;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn half_pi() -> ExactReal {
    ExactReal::monomial(q(1, 2), 1)
}

fn default_grid() -> SampleGrid {
    SampleGrid::default_for(&ExactReal::integer(0), &half_pi(), DEFAULT_COUNT, P).unwrap()
}

fn eps_probes() -> Vec<BigReal> {
    ["1e-2", "1e-3", "1e-4"]
        .iter()
        .map(|s| BigReal::parse_decimal(s, P).unwrap())
        .collect()
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let t = start.elapsed();
    (
        t < limit,
        format!("{:.2}s of {}s", t.as_secs_f64(), limit.as_secs()),
    )
}

/// Akiyama–Tanigawa table, giving B_n with B_1 = +1/2.
fn bernoulli_table(n: usize) -> Rational {
    let mut row: Vec<Rational> = (0..=n).map(|m| q(1, m as i64 + 1)).collect();
    for j in 1..=n {
        for m in 0..=(n - j) {
            row[m] = (&row[m] - &row[m + 1]) * int(m as i64 + 1);
        }
    }
    row[0].clone()
}

fn binom(n: usize, k: usize) -> Rational {
    (0..k).fold(int(1), |acc, i| acc * q((n - i) as i64, (i + 1) as i64))
}

fn bernoulli_exactness() -> Outcome {
    let start = Instant::now();
    let recurrence = (1..=20).all(|k| {
        let m = 2 * k;
        let s = (0..=m).fold(int(0), |acc, j| acc + binom(m + 1, j) * bernoulli(j));
        s == int(0)
    });
    let known = bernoulli(4) == q(-1, 30)
        && bernoulli(12) == q(-691, 2730)
        && bernoulli_table(4) == bernoulli(4)
        && bernoulli_table(12) == bernoulli(12);
    let (fast, t) = within(Duration::from_secs(1), start);
    outcome(
        recurrence && known && fast,
        format!("recurrence k=1..20 {recurrence}, B4/B12 match table {known}, {t}"),
    )
}

fn series_divide(u: &[Rational], v: &[Rational], terms: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = u.get(k).cloned().unwrap_or_else(|| int(0));
        for j in 1..=k.min(v.len() - 1) {
            acc -= &v[j] * &out[k - j];
        }
        out.push(acc / &v[0]);
    }
    out
}

fn tan_by_division(terms: usize) -> Vec<Rational> {
    let mut fact = int(1);
    let (mut s, mut c) = (Vec::new(), Vec::new());
    for k in 0..terms {
        if k > 0 {
            fact *= int(k as i64);
        }
        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
        let v = int(sign) / &fact;
        if k % 2 == 0 {
            c.push(v);
            s.push(int(0));
        } else {
            s.push(v);
            c.push(int(0));
        }
    }
    series_divide(&s, &c, terms)
}

fn tangent_coefficients() -> Outcome {
    let start = Instant::now();
    let brute = tan_by_division(8);
    let expected = [
        int(0),
        int(1),
        int(0),
        q(1, 3),
        int(0),
        q(2, 15),
        int(0),
        q(17, 315),
    ];
    let poly = first_taylor(&catalog::tan_series(), 7).unwrap();
    let got: Vec<Option<Rational>> = (0..8)
        .map(|k| poly.coeff(k).exact().and_then(ExactReal::as_rational))
        .collect();
    let ok =
        brute[..] == expected[..] && got.iter().zip(&brute).all(|(g, b)| g.as_ref() == Some(b));
    let (fast, t) = within(Duration::from_secs(1), start);
    outcome(
        ok && fast,
        format!("x + x^3/3 + 2x^5/15 + 17x^7/315 equals series division {ok}, {t}"),
    )
}

fn hn_by_division(n: usize, terms: usize) -> Vec<Rational> {
    let t = tan_by_division(terms + 2 * n + 2);
    let numer: Vec<Rational> = (0..terms).map(|m| t[m + 2 * n + 1].clone()).collect();
    let denom: Vec<Rational> = (0..terms).map(|m| t[m + 1].clone()).collect();
    series_divide(&numer, &denom, terms)
}

fn hn_nested_sum(n: usize, x: &BigReal, terms: usize) -> BigReal {
    let x2 = x * x;
    let mut total = BigReal::zero_with(P);
    for j in 1..=n {
        let outer = tan_odd_coeff(n - j + 1);
        let mut inner = BigReal::zero_with(P);
        for k in (j..j + terms).rev() {
            let c = pow2(2 * k) * bernoulli_even_abs(k) / factorial(2 * k);
            inner = inner * &x2 + BigReal::from_rational(&c, P);
        }
        total = total + BigReal::from_rational(&outer, P) * inner;
    }
    total
}

fn pow2(k: usize) -> Rational {
    (0..k).fold(int(1), |acc, _| acc * int(2))
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(int(1), |acc, k| acc * int(k as i64))
}

fn hn_consistency() -> Outcome {
    let start = Instant::now();
    let exact = (1..=3).all(|n| {
        let brute = hn_by_division(n, 18);
        (0..=8).all(|i| hn_coeff(n, i) == brute[2 * i])
    });
    let x = BigReal::from_f64(0.5, P);
    let tol = BigReal::pow2(-200, P);
    let nested = (1..=3).all(|n| {
        let e = lookup(&format!("h{n}")).unwrap();
        let nested = hn_nested_sum(n, &x, 48);
        let flat = e.truncated_sum(&x, 96, P).unwrap();
        let reference = e.eval(&x, P).unwrap();
        (&nested - &flat).abs() < tol && (&nested - &reference).abs() < tol
    });
    let (fast, t) = within(Duration::from_secs(10), start);
    outcome(
        exact && nested && fast,
        format!("closed form = series division {exact}, nested sum within 2^-200 {nested}, {t}"),
    )
}

fn endpoint_constants() -> Outcome {
    let h1 = hn_coeff(1, 0) == q(1, 3);
    let upper1 = ExactReal::monomial(int(4), -2);
    let approx = (upper1.to_real(64).to_f64() - 0.405285).abs() < 5e-7;
    let p1 = check_best_constants(
        &lookup("h1").unwrap(),
        &ExactReal::ratio(1, 3),
        &upper1,
        &eps_probes(),
        P,
    )
    .unwrap();

    // 2^6 · 63 · |B_6| / 6!
    let lower2 = int(64) * int(63) * bernoulli(6).abs() / int(720);
    let h2 = lower2 == q(2, 15) && hn_coeff(2, 0) == lower2;
    let upper2 = ExactReal::monomial(int(16), -4);
    let p2 = check_best_constants(
        &lookup("h2").unwrap(),
        &ExactReal::rational(lower2.clone()),
        &upper2,
        &eps_probes(),
        P,
    )
    .unwrap();
    let ok = h1 && approx && h2 && p1.verdict == Verdict::Pass && p2.verdict == Verdict::Pass;
    outcome(
        ok,
        format!(
            "n=1: 1/3 exact {h1}, (2/π)^2 ≈ 0.405285 {approx}, probes {}; n=2: lower = {lower2} {h2}, probes {}",
            p1.verdict, p2.verdict
        ),
    )
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dstaylor"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn nesting_chains() -> Outcome {
    let start = Instant::now();
    let threshold = BigReal::parse_decimal("1e-30", P).unwrap();
    let runs: [&[&str]; 3] = [
        &["chain", "h1", "0,2,4,6,8", "--format", "json"],
        &["chain", "wilker", "0,2,4,6,8,10", "--format", "json"],
        &[
            "chain",
            "steckin-g",
            "1,3,5,7",
            "--mirror",
            "--format",
            "json",
        ],
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for args in runs {
        let (code, stdout) = run_cli(args);
        let v: Value = serde_json::from_str(&stdout).unwrap_or(Value::Null);
        let margin = v["min_margin"]
            .as_str()
            .and_then(|s| BigReal::parse_decimal(s, P));
        let pass =
            code == 0 && v["verdict"] == "PASS" && margin.as_ref().is_some_and(|m| m > &threshold);
        ok &= pass;
        parts.push(format!(
            "{} {} min_margin {}",
            args[1],
            v["verdict"].as_str().unwrap_or("?"),
            v["min_margin"].as_str().unwrap_or("?")
        ));
    }
    let (fast, t) = within(Duration::from_secs(30), start);
    outcome(ok && fast, format!("{}; {t}", parts.join("; ")))
}

fn successive_identity() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["wilker", "h1"] {
        let f = lookup(name).unwrap().series;
        let lo = check_identity12(&f, 8, 200, 2024, P).unwrap();
        let hi = check_identity12(&f, 8, 200, 2024, 2 * P).unwrap();
        let r_lo = lo.max_residual.unwrap();
        let r_hi = hi.max_residual.unwrap().round_to(P);
        let small = r_lo < BigReal::pow2(-220, P);
        let drops = &r_hi * &BigReal::pow2(200, P) <= r_lo;
        ok &= small && drops && lo.verdict == Verdict::Pass && hi.verdict == Verdict::Pass;
        parts.push(format!(
            "{name}: {} at 256 bits, {} at 512 bits",
            r_lo.to_sci_string(4),
            r_hi.to_sci_string(4)
        ));
    }
    outcome(ok, parts.join("; "))
}

fn steckin_example() -> Outcome {
    let lo = BigReal::parse_decimal("0.01", P).unwrap();
    let hi = half_pi().to_real(P) - &lo;
    let grid = SampleGrid::new(lo, hi, DEFAULT_COUNT, Spacing::Chebyshev).unwrap();
    let r = check_steckin_example(&grid, P).unwrap();
    let lines = steckin_lines(P).unwrap();
    let gap = lines.tt1.checked_sub(&lines.q1).unwrap();
    // (1/2 - 4/π²)(π/2 - x) = (4/π² - 1/2)(x - π/2)
    let slope = &ExactReal::ratio(1, 2) - &ExactReal::monomial(int(4), -2);
    let exact_gap = gap.coeff(0) == Coeff::Exact(ExactReal::integer(0))
        && gap.coeff(1) == Coeff::Exact(-slope.clone())
        && gap.degree() == 1;
    let slope_value = slope.to_real(P).to_f64();
    let ok = r.verdict == Verdict::Pass
        && exact_gap
        && (slope_value - 0.0947).abs() < 5e-5
        && slope_value > 0.0;
    outcome(ok, format!("5-curve chain {}, TT1 - Q1 = ({slope})(π/2 - x) exact {exact_gap}, slope ≈ {slope_value:.6}", r.verdict))
}

fn wilker_inequality() -> Outcome {
    let r = check_wilker(&default_grid(), P).unwrap();
    let lower = first_taylor(&catalog::wilker_series(), 4)
        .unwrap()
        .to_string();
    outcome(
        r.verdict == Verdict::Pass && lower == "2 + 2/45·x^4",
        format!(
            "{lower} < f < TT4: {}, min_margin {}",
            r.verdict,
            r.min_margin.to_sci_string(6)
        ),
    )
}

fn interpolation() -> Outcome {
    let mut worst = BigReal::zero_with(P);
    for name in ["wilker", "h1", "cusa"] {
        let f = lookup(name).unwrap().series;
        let b = f.right_end().to_real(P);
        let end = f.end_value(P).unwrap().to_real(P);
        for n in 0..=12 {
            let v = poly_eval(&second_taylor(&f, n, P).unwrap(), &b, P);
            worst = BigReal::max(&worst, &((&v - &end) / &end).abs());
        }
    }
    outcome(
        worst < BigReal::pow2(-240, P),
        format!(
            "max relative error {} over degrees 0..12",
            worst.to_sci_string(4)
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let _ = pi(P + 64);
    let criteria: [Criterion; 9] = [
        ("bernoulli exactness", bernoulli_exactness),
        ("tangent coefficients", tangent_coefficients),
        ("h_n coefficient consistency", hn_consistency),
        ("endpoint constants", endpoint_constants),
        ("nesting chains", nesting_chains),
        ("successive-difference identity", successive_identity),
        ("cotangent example", steckin_example),
        ("wilker inequality", wilker_inequality),
        ("interpolation at the right end", interpolation),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {} {}: {} ({})",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
