use std::cmp::Ordering;

use dstaylor::catalog::{self, lookup};
use dstaylor::real::{pi, BigReal};
use dstaylor::taylor::*;
use dstaylor::{
    poly_eval, Coeff, EndLimit, ExactReal, Poly, Rational, SeriesFn, SignPattern, ToReal,
};
use num_bigint::BigInt;
use proptest::prelude::*;

const P: u32 = 256;

fn pi_pow(num: i64, den: i64, e: i32) -> ExactReal {
    ExactReal::monomial(Rational::new(BigInt::from(num), BigInt::from(den)), e)
}

fn exact(c: &Coeff) -> ExactReal {
    c.exact().expect("exact coefficient").clone()
}

fn at_b(p: &Poly<Coeff>, f: &SeriesFn) -> ExactReal {
    exact(&p.eval(&Coeff::Exact(f.right_end().clone())))
}

#[test]
fn first_approximation_examples() {
    let tan = catalog::tan_series();
    assert!(first_taylor(&tan, 0).unwrap().is_zero());
    let t3 = first_taylor(&tan, 3).unwrap();
    assert_eq!(
        t3.coeffs().iter().map(exact).collect::<Vec<_>>(),
        vec![
            ExactReal::integer(0),
            ExactReal::integer(1),
            ExactReal::integer(0),
            ExactReal::ratio(1, 3)
        ]
    );
    let w4 = first_taylor(&catalog::wilker_series(), 4).unwrap();
    assert_eq!(w4.to_string(), "2 + 2/45·x^4");
}

#[test]
fn remainder_at_the_end() {
    let e = lookup("wilker").unwrap();
    let b = e.series.right_end().to_real(P);
    let r = remainder_eval(&e.series, 4, &b, &e.oracle, P).unwrap();
    let want = pi(P).powi(2).mul_pow2(-2) - BigReal::from_int(2, P);
    assert!((&r - &want).abs() < BigReal::pow2(-240, P));
    assert!((r.to_f64() - 0.4674011).abs() < 1e-7);
    let x = BigReal::from_f64(0.7, P);
    let r1 = remainder_eval(&e.series, 1, &x, &e.oracle, P).unwrap();
    assert_eq!(r1, e.eval(&x, P).unwrap() - BigReal::from_int(2, P));
}

#[test]
fn degree_zero_second_is_end_value() {
    let h1 = catalog::hn_series(1).unwrap();
    let s = second_taylor(&h1, 0, P).unwrap();
    assert_eq!(s.coeffs(), &[Coeff::Exact(pi_pow(4, 1, -2))]);
    assert!((s.coeff(0).to_real(64).to_f64() - 0.405284735).abs() < 1e-9);
}

/// Leading coefficient of `𝕋_{2m}` for the wilker series, from the endpoint
/// limit and the lower even coefficients.
fn wilker_even_lead(m: usize) -> ExactReal {
    let w = catalog::wilker_series();
    let half_pi = pi_pow(1, 2, 1);
    let mut rem = &pi_pow(1, 4, 2) - &ExactReal::integer(2);
    for k in 2..m {
        rem = &rem - &(&w.coeff(2 * k).unwrap() * &half_pi.pow(2 * k as u32));
    }
    &rem * &pi_pow(1, 1, 0)
        .checked_div(&half_pi.pow(2 * m as u32))
        .unwrap()
}

#[test]
fn wilker_even_second_approximations() {
    let w = catalog::wilker_series();
    for m in 2..=5 {
        let s = second_taylor(&w, 2 * m, P).unwrap();
        assert_eq!(exact(&s.coeff(0)), ExactReal::integer(2));
        assert_eq!(exact(&s.coeff(2)), ExactReal::integer(0));
        for k in 2..m {
            assert_eq!(exact(&s.coeff(2 * k)), w.coeff(2 * k).unwrap());
        }
        assert_eq!(exact(&s.coeff(2 * m)), wilker_even_lead(m), "m = {m}");
    }
}

#[test]
fn left_approximations_by_reflection() {
    let g = catalog::steckin_g_series();
    let left = g.mirror();
    let c0 = second_taylor_left(&left, 0, P).unwrap();
    assert!(c0.is_zero());
    let again = second_taylor_left(&left.mirror().mirror(), 3, P).unwrap();
    assert_eq!(second_taylor_left(&left, 3, P).unwrap(), again);
    let t = first_taylor_left(&left, 3).unwrap();
    assert_eq!(exact(t.anchor()), pi_pow(1, 2, 1));
}

/// `𝕋_{2m-1}` of the cotangent function in `t`: its leading coefficient is
/// `-(2/π)^{2m} + Σ_{k<m} a_k (2/π)^{2(m-k)}` with `a_k = 2^{2k}|B_{2k}|/(2k)!`.
#[test]
fn cotangent_odd_second_approximations() {
    let g = catalog::steckin_g_series();
    for m in 1..=4usize {
        let s = second_taylor(&g, 2 * m - 1, P).unwrap();
        let mut want = pi_pow(-(1 << (2 * m)), 1, -2 * m as i32);
        for k in 1..m {
            let a_k = -g.coeff(2 * k - 1).unwrap();
            want = &want + &(&a_k * &pi_pow(1 << (2 * (m - k)), 1, -2 * (m - k) as i32));
        }
        assert_eq!(exact(&s.coeff(2 * m - 1)), want, "m = {m}");
    }
    let tt1 = second_taylor(&g, 1, P).unwrap();
    assert_eq!(
        tt1.coeffs().iter().map(exact).collect::<Vec<_>>(),
        vec![pi_pow(2, 1, -1), pi_pow(-4, 1, -2)]
    );
}

fn exp_like() -> SeriesFn {
    let inv_fact = |k: usize| -> ExactReal {
        ExactReal::rational(Rational::new(
            BigInt::from(1),
            (1..=k).fold(BigInt::from(1), |a, i| a * BigInt::from(i)),
        ))
    };
    let e = EndLimit::numeric(move |p| {
        (0..200).fold(BigReal::zero_with(p), |acc, k| acc + inv_fact(k).to_real(p))
    });
    SeriesFn::new(
        "exp",
        ExactReal::integer(0),
        ExactReal::integer(1),
        move |k| {
            ExactReal::rational(Rational::new(
                BigInt::from(1),
                (1..=k).fold(BigInt::from(1), |a, i| a * BigInt::from(i)),
            ))
        },
        e,
    )
    .unwrap()
    .with_sign(SignPattern::AllNonneg)
}

#[test]
fn successive_difference_examples() {
    let f = exp_like();
    let half = BigReal::from_f64(0.5, P);
    let d = successive_difference(&f, 1, &half, P).unwrap();
    let brute = poly_eval(&second_taylor(&f, 1, P).unwrap(), &half, P)
        - poly_eval(&second_taylor(&f, 2, P).unwrap(), &half, P);
    assert!((&d - &brute).abs() < BigReal::pow2(-240, P));
    assert!((d.to_f64() - 0.179570).abs() < 1e-6);
    assert!(successive_difference(&f, 3, &BigReal::from_int(1, P), P)
        .unwrap()
        .is_zero());
    assert!(successive_difference(&f, 3, &BigReal::zero_with(P), P)
        .unwrap()
        .is_zero());
}

#[test]
fn split_bounds_for_wilker() {
    let w = catalog::wilker_series();
    let s = split_series(&w, 64).unwrap();
    assert!(s.negative_part.is_empty());
    let (lo, hi) = split_bounds(&s, 4, P).unwrap();
    assert_eq!(lo.to_string(), "2 + 2/45·x^4");
    let lead = &(&pi_pow(1, 4, 2) - &ExactReal::integer(2)) * &pi_pow(16, 1, -4);
    assert_eq!(
        hi.coeffs().iter().map(exact).collect::<Vec<_>>(),
        vec![
            ExactReal::integer(2),
            ExactReal::integer(0),
            ExactReal::integer(0),
            ExactReal::integer(0),
            lead
        ]
    );
    assert_eq!(at_b(&hi, &w), pi_pow(1, 4, 2));
    assert_eq!(high_degree_bounds(&s, 4, P).unwrap(), (lo, hi));
}

#[test]
fn high_degree_bounds_for_cotangent() {
    let g = catalog::steckin_g_series();
    let s = split_series(&g, 64).unwrap();
    assert!(s.negated);
    for m in 1..=3 {
        let (lo, hi) = high_degree_bounds(&s, 2 * m - 1, P).unwrap();
        assert_eq!(lo, second_taylor(&g, 2 * m - 1, P).unwrap());
        assert_eq!(hi, first_taylor(&g, 2 * m - 1).unwrap());
    }
}

#[test]
fn consecutive_bounds_examples() {
    let prec = P;
    let one = BigReal::from_int(1, prec);
    let wilker = lookup("wilker").unwrap();
    let q = consecutive_bounds(&wilker.series, 4, prec).unwrap();
    // the x^5 coefficient vanishes, so T4 and T5 coincide exactly
    assert_eq!(q[0].poly, q[1].poly);
    let v: Vec<BigReal> = q.iter().map(|b| poly_eval(&b.poly, &one, prec)).collect();
    let f1 = wilker.eval(&one, prec).unwrap();
    assert!(v[1] < f1 && f1 < v[2] && v[2] < v[3]);

    let h1 = lookup("h1").unwrap();
    let q = consecutive_bounds(&h1.series, 2, prec).unwrap();
    let v: Vec<BigReal> = q.iter().map(|b| poly_eval(&b.poly, &one, prec)).collect();
    assert!(&v[2] - &v[1] < &v[3] - &v[0]);
    assert_eq!(
        q.iter().map(|b| b.label()).collect::<Vec<_>>(),
        ["T2", "T3", "TT3", "TT2"]
    );
}

#[test]
fn chain_uses_sign_metadata() {
    let h1 = catalog::hn_series(1).unwrap();
    let c = nesting_chain(&h1, &[0, 2, 4], P).unwrap();
    assert_eq!(exact(&c.lowers[0].poly.coeff(0)), ExactReal::ratio(1, 3));
    assert_eq!(exact(&c.uppers[0].poly.coeff(0)), pi_pow(4, 1, -2));
    let odd = catalog::tan_series().with_sign(SignPattern::Unknown);
    assert!(matches!(
        nesting_chain(&odd, &[1], P),
        Err(dstaylor::Error::Unsupported { .. })
    ));
}

#[test]
fn second_bounds_interpolate_exactly() {
    for name in ["wilker", "h1", "cusa", "steckin-g", "steckin-product"] {
        let f = lookup(name).unwrap().series;
        let end = match f.end_limit() {
            EndLimit::Exact(e) => e.clone(),
            _ => unreachable!(),
        };
        for n in 0..=10 {
            assert_eq!(
                at_b(&second_taylor(&f, n, P).unwrap(), &f),
                end,
                "{name} n = {n}"
            );
        }
    }
}

#[test]
fn first_bounds_match_coefficients() {
    for name in catalog::NAMES {
        let f = lookup(name).unwrap().series;
        let p = first_taylor(&f, 12).unwrap();
        for k in 0..=12 {
            assert_eq!(exact(&p.coeff(k)), f.coeff(k).unwrap(), "{name} c_{k}");
        }
    }
}

const WITH_ENDPOINT: [&str; 6] = ["h1", "h2", "steckin-g", "wilker", "cusa", "steckin-product"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn successive_difference_identity(idx in 0usize..6, n in 0usize..=10, frac in 1u32..1000) {
        let f = lookup(WITH_ENDPOINT[idx]).unwrap().series;
        let x = &f.anchor().to_real(P) + &(&f.width().to_real(P) * &BigReal::from_int(frac, P)).mul_pow2(-10);
        let direct = poly_eval(&second_taylor(&f, n, P).unwrap(), &x, P) - poly_eval(&second_taylor(&f, n + 1, P).unwrap(), &x, P);
        let closed = successive_difference(&f, n, &x, P).unwrap();
        let scale = BigReal::from_int(1, P) + BigReal::max(&direct.abs(), &closed.abs());
        prop_assert!((&direct - &closed).abs() <= BigReal::pow2(-(P as i64) + 32, P) * scale);
    }

    #[test]
    fn sign_law(idx in 0usize..6, n in 0usize..=10, frac in 1u32..1000) {
        let f = lookup(WITH_ENDPOINT[idx]).unwrap().series;
        let x = &f.anchor().to_real(P) + &(&f.width().to_real(P) * &BigReal::from_int(frac, P)).mul_pow2(-10);
        let gap = endpoint_gap(&f, n, P).unwrap().to_real(P);
        let guard = BigReal::pow2(-(P as i64) / 2, P);
        prop_assume!(gap.abs() > guard);
        let diff = poly_eval(&second_taylor(&f, n, P).unwrap(), &x, P) - poly_eval(&second_taylor(&f, n + 1, P).unwrap(), &x, P);
        prop_assert_eq!(diff.signum(), successive_sign(&f, n, P).unwrap());
        prop_assert_ne!(diff.signum(), Ordering::Equal);
    }
}
