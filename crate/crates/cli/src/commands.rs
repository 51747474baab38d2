use std::io::Write;

use serde_json::{json, Value};

use dstaylor::catalog::{self, lookup, CatalogEntry};
use dstaylor::taylor::{first_taylor, second_taylor};
use dstaylor::verify::{
    check_catalog_chain, run_suite, SampleGrid, Suite, SuiteConfig, SuiteOutcome, Verdict,
    VerifyReport,
};
use dstaylor::{Coeff, EndLimit, Poly, Result, ToReal};

use crate::{BoundKind, Cli, Command, Format, SuiteArg};

const DIGITS: usize = 40;

/// Run the selected command and return the process exit status.
pub fn run(cli: &Cli) -> Result<u8> {
    let (text, verdict) = match &cli.command {
        Command::List => (list(cli)?, None),
        Command::Bound {
            function,
            kind,
            degree,
        } => (bound(cli, function, *kind, *degree)?, None),
        Command::Chain {
            function,
            degrees,
            mirror,
        } => {
            let report = chain(cli, function, degrees, *mirror)?;
            (report.render(cli.format.into()), Some(report.verdict))
        }
        Command::Verify { suite } => {
            let outcomes = verify(cli, *suite)?;
            let verdict = outcomes
                .iter()
                .fold(Verdict::Pass, |v, o| v.worst(o.verdict()));
            (
                render_outcomes(cli.format, &outcomes, verdict),
                Some(verdict),
            )
        }
    };
    emit(cli, &text)?;
    Ok(exit_code(verdict))
}

/// 0 when every check passed (or none ran), 2 on any FAIL, 3 when the worst
/// outcome is INCONCLUSIVE. Usage and domain errors exit with 1 elsewhere.
pub fn exit_code(verdict: Option<Verdict>) -> u8 {
    match verdict {
        None | Some(Verdict::Pass) => 0,
        Some(Verdict::Fail) => 2,
        Some(Verdict::Inconclusive) => 3,
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain JSON values");
    s.push('\n');
    s
}

fn end_limit_fields(e: &CatalogEntry, prec: u32) -> (String, String) {
    match e.series.end_limit() {
        EndLimit::Exact(x) => (x.to_string(), x.to_real(prec).to_sci_string(DIGITS)),
        EndLimit::Numeric(f) => ("numeric".into(), f(prec).to_sci_string(DIGITS)),
        EndLimit::Unavailable => ("none".into(), "no endpoint".into()),
    }
}

fn list(cli: &Cli) -> Result<String> {
    let entries: Vec<CatalogEntry> = catalog::NAMES
        .iter()
        .map(|n| lookup(n))
        .collect::<Result<_>>()?;
    let rows: Vec<[String; 6]> = entries
        .iter()
        .map(|e| {
            let (exact, decimal) = end_limit_fields(e, cli.precision);
            [
                e.name().to_string(),
                format!("({}, {})", e.series.anchor(), e.series.right_end()),
                e.sign_pattern().to_string(),
                exact,
                decimal,
                e.expression.to_string(),
            ]
        })
        .collect();
    Ok(match cli.format {
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "name": r[0], "interval": r[1], "sign_pattern": r[2],
                        "end_limit": r[3], "end_limit_decimal": r[4], "expression": r[5],
                    })
                })
                .collect(),
        )),
        Format::Csv => {
            let mut out =
                String::from("name,interval,sign_pattern,end_limit,end_limit_decimal,expression\n");
            for r in &rows {
                out.push_str(&r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                out.push_str(&format!("{:<16} {}  on {}\n", r[0], r[5], r[1]));
                out.push_str(&format!("{:<16} coefficients: {}\n", "", r[2]));
                if r[3] == "none" {
                    out.push_str(&format!("{:<16} endpoint: no endpoint\n", ""));
                } else {
                    out.push_str(&format!("{:<16} endpoint: {} ≈ {}\n", "", r[3], r[4]));
                }
            }
            out
        }
    })
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn bound(cli: &Cli, function: &str, kind: BoundKind, degree: usize) -> Result<String> {
    let entry = lookup(function)?;
    let prec = cli.precision;
    let poly: Poly<Coeff> = match kind {
        BoundKind::First => first_taylor(&entry.series, degree)?,
        BoundKind::Second => second_taylor(&entry.series, degree, prec)?,
    };
    let show = |c: &Coeff| c.render(cli.decimal, DIGITS, prec);
    let kind_name = match kind {
        BoundKind::First => "first",
        BoundKind::Second => "second",
    };
    let coeffs: Vec<String> = (0..=degree).map(|k| show(&poly.coeff(k))).collect();
    Ok(match cli.format {
        Format::Json => pretty(&json!({
            "function": entry.name(),
            "kind": kind_name,
            "degree": degree,
            "anchor": show(poly.anchor()),
            "exact": poly.coeffs().iter().all(Coeff::is_exact),
            "coefficients": coeffs,
            "polynomial": poly.render(show),
        })),
        Format::Csv => {
            let mut out = String::from("k,coefficient\n");
            for (k, c) in coeffs.iter().enumerate() {
                out.push_str(&format!("{k},{}\n", csv_cell(c)));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "{} {kind_name} {degree}, anchor {}\n{}\n",
                entry.name(),
                show(poly.anchor()),
                poly.render(show)
            );
            for (k, c) in coeffs.iter().enumerate() {
                out.push_str(&format!("  c{k} = {c}\n"));
            }
            out
        }
    })
}

fn chain(cli: &Cli, function: &str, degrees: &[usize], mirror: bool) -> Result<VerifyReport> {
    let entry = lookup(function)?;
    let prec = cli.precision;
    let grid = SampleGrid::default_for(
        entry.series.anchor(),
        entry.series.right_end(),
        cli.grid as usize,
        prec,
    )?;
    check_catalog_chain(&entry, degrees, &grid, mirror, prec)
}

fn verify(cli: &Cli, suite: SuiteArg) -> Result<Vec<SuiteOutcome>> {
    let cfg = SuiteConfig {
        precision: cli.precision,
        grid_count: cli.grid as usize,
        seed: cli.seed,
    };
    let suites: Vec<Suite> = match suite {
        SuiteArg::Steckin => vec![Suite::Steckin],
        SuiteArg::Wilker => vec![Suite::Wilker],
        SuiteArg::Identity12 => vec![Suite::Identity12],
        SuiteArg::Constants => vec![Suite::Constants],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    suites.into_iter().map(|s| run_suite(s, &cfg)).collect()
}

fn render_outcomes(format: Format, outcomes: &[SuiteOutcome], verdict: Verdict) -> String {
    match format {
        Format::Json => pretty(&json!({
            "verdict": verdict.as_str(),
            "suites": outcomes.iter().map(SuiteOutcome::to_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::new();
            for r in outcomes.iter().flat_map(|o| &o.reports) {
                out.push_str(&format!("# {}\n", r.subject));
                out.push_str(&r.to_csv());
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for o in outcomes {
                for r in &o.reports {
                    out.push_str(&r.to_text());
                }
                out.push_str(&format!("suite {}: {}\n", o.suite, o.verdict()));
            }
            out.push_str(&format!("overall: {verdict}\n"));
            out
        }
    }
}
