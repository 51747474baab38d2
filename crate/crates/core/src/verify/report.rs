use std::fmt;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::real::BigReal;

/// Significant digits written for every number in a report.
pub const REPORT_DIGITS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Fail => "FAIL",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "PASS" => Some(Verdict::Pass),
            "INCONCLUSIVE" => Some(Verdict::Inconclusive),
            "FAIL" => Some(Verdict::Fail),
            _ => None,
        }
    }

    /// The worse of the two; `Fail` dominates `Inconclusive` dominates `Pass`.
    pub fn worst(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    /// Ordering rule: PASS iff `min_margin > guard`, FAIL iff `min_margin < -guard`.
    pub fn from_margin(min_margin: &BigReal, guard: &BigReal) -> Verdict {
        if min_margin > guard {
            Verdict::Pass
        } else if min_margin < &-guard {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What the per-sample `margin` measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// Smallest adjacent difference `values[i+1] - values[i]`.
    Ordering,
    /// Negated residual `-|direct - closed form|`; PASS iff every residual is below the guard.
    Identity,
    /// `10ε - |f(x) - limit|` at an endpoint probe.
    Limit,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Ordering => "ordering",
            CheckKind::Identity => "identity",
            CheckKind::Limit => "limit",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "ordering" => Some(CheckKind::Ordering),
            "identity" => Some(CheckKind::Identity),
            "limit" => Some(CheckKind::Limit),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub x: BigReal,
    pub values: Vec<BigReal>,
    pub margin: BigReal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

/// Outcome of a sampled check. Sampling is evidence, not proof, so every
/// report is flagged `empirical`.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub subject: String,
    pub kind: CheckKind,
    pub verdict: Verdict,
    pub precision_bits: u32,
    pub guard: BigReal,
    pub min_margin: BigReal,
    /// Largest residual, for identity checks.
    pub max_residual: Option<BigReal>,
    /// Column labels for `values`, in chain order.
    pub curves: Vec<String>,
    /// Adjacent curves that are identical polynomials, e.g. `"T1 = R1"`.
    pub exact_ties: Vec<String>,
    pub samples: Vec<Sample>,
    /// Findings that affect the verdict beyond the margins.
    pub notes: Vec<String>,
    pub empirical: bool,
}

fn num(x: &BigReal) -> Value {
    Value::String(x.to_sci_string(REPORT_DIGITS))
}

fn parse_num(v: &Value, prec: u32) -> Result<BigReal> {
    v.as_str()
        .and_then(|s| BigReal::parse_decimal(s, prec))
        .ok_or_else(|| Error::InvalidArgument(format!("not a decimal string: {v}")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::InvalidArgument(format!("report is missing `{key}`")))
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject,
            "kind": self.kind.as_str(),
            "verdict": self.verdict.as_str(),
            "empirical": self.empirical,
            "precision_bits": self.precision_bits,
            "guard": num(&self.guard),
            "min_margin": num(&self.min_margin),
            "max_residual": self.max_residual.as_ref().map(num),
            "curves": self.curves,
            "exact_ties": self.exact_ties,
            "notes": self.notes,
            "samples": self.samples.iter().map(|s| json!({
                "x": num(&s.x),
                "values": s.values.iter().map(num).collect::<Vec<_>>(),
                "margin": num(&s.margin),
            })).collect::<Vec<_>>(),
        })
    }

    /// Rebuild a report from its JSON form, parsing numbers at `prec` bits.
    pub fn from_json(v: &Value, prec: u32) -> Result<Self> {
        let text = |key: &str| -> Result<String> {
            field(v, key)?
                .as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::InvalidArgument(format!("`{key}` is not a string")))
        };
        let strings = |key: &str| -> Result<Vec<String>> {
            field(v, key)?
                .as_array()
                .map(|a| {
                    a.iter()
                        .filter_map(|s| s.as_str().map(str::to_string))
                        .collect()
                })
                .ok_or_else(|| Error::InvalidArgument(format!("`{key}` is not an array")))
        };
        let samples = field(v, "samples")?
            .as_array()
            .ok_or_else(|| Error::InvalidArgument("`samples` is not an array".into()))?
            .iter()
            .map(|s| {
                Ok(Sample {
                    x: parse_num(field(s, "x")?, prec)?,
                    values: field(s, "values")?
                        .as_array()
                        .ok_or_else(|| Error::InvalidArgument("`values` is not an array".into()))?
                        .iter()
                        .map(|x| parse_num(x, prec))
                        .collect::<Result<_>>()?,
                    margin: parse_num(field(s, "margin")?, prec)?,
                })
            })
            .collect::<Result<_>>()?;
        let max_residual = match v.get("max_residual") {
            None | Some(Value::Null) => None,
            Some(r) => Some(parse_num(r, prec)?),
        };
        Ok(VerifyReport {
            subject: text("subject")?,
            kind: CheckKind::parse(&text("kind")?)
                .ok_or_else(|| Error::InvalidArgument("unknown kind".into()))?,
            verdict: Verdict::parse(&text("verdict")?)
                .ok_or_else(|| Error::InvalidArgument("unknown verdict".into()))?,
            precision_bits: field(v, "precision_bits")?.as_u64().ok_or_else(|| {
                Error::InvalidArgument("`precision_bits` is not an integer".into())
            })? as u32,
            guard: parse_num(field(v, "guard")?, prec)?,
            min_margin: parse_num(field(v, "min_margin")?, prec)?,
            max_residual,
            curves: strings("curves")?,
            exact_ties: strings("exact_ties")?,
            notes: strings("notes").unwrap_or_default(),
            samples,
            empirical: field(v, "empirical")?.as_bool().unwrap_or(true),
        })
    }

    /// Header `x,<curve>,...` then one row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x");
        for c in &self.curves {
            out.push(',');
            out.push_str(&csv_cell(c));
        }
        out.push('\n');
        for s in &self.samples {
            out.push_str(&s.x.to_sci_string(REPORT_DIGITS));
            for v in &s.values {
                out.push(',');
                out.push_str(&v.to_sci_string(REPORT_DIGITS));
            }
            out.push('\n');
        }
        out
    }

    /// A short human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {} ({} samples, {} bits",
            self.subject,
            self.verdict,
            self.samples.len(),
            self.precision_bits
        );
        out.push_str(&format!(
            ")\n  curves: {}\n  min_margin = {}\n  guard      = {}\n",
            self.curves.join(if self.kind == CheckKind::Ordering {
                " <= "
            } else {
                ", "
            }),
            self.min_margin.to_sci_string(12),
            self.guard.to_sci_string(12)
        ));
        if let Some(r) = &self.max_residual {
            out.push_str(&format!("  max_residual = {}\n", r.to_sci_string(12)));
        }
        if !self.exact_ties.is_empty() {
            out.push_str(&format!("  exact ties: {}\n", self.exact_ties.join(", ")));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("plain JSON values");
                s.push('\n');
                s
            }
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Text => self.to_text(),
        }
    }

    pub fn write_to(&self, format: ReportFormat, w: &mut impl Write) -> Result<()> {
        w.write_all(self.render(format).as_bytes())?;
        Ok(())
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Write `r` to `path` as JSON, CSV or text.
pub fn export_report(r: &VerifyReport, format: ReportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, r.render(format))?;
    Ok(())
}
