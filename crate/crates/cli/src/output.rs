use std::fmt::{Display, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;

use qschroeder::contfrac::CFSpec;
use qschroeder::verifier::IdentityReport;
use qschroeder::{Params, Rational, TruncSeries};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// Text for stdout and the process exit code.
pub struct Out {
    pub text: String,
    pub code: u8,
}

impl Out {
    fn ok(text: String) -> Self {
        Out { text, code: 0 }
    }
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output is serializable");
    s.push('\n');
    s
}

fn joined<T: Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn table<T: Display>(header: &str, items: &[T], first: usize) -> String {
    let mut s = format!("{header}\n");
    for (i, v) in items.iter().enumerate() {
        writeln!(s, "{},{v}", i + first).unwrap();
    }
    s
}

pub fn sequence<T: Display + Serialize>(
    format: Format,
    family: &str,
    mode: &str,
    p: Option<&Params>,
    terms: &[T],
) -> Out {
    Out::ok(match format {
        Format::Plain => format!("{}\n", joined(terms)),
        Format::Csv => table("n,value", terms, 0),
        Format::Json => {
            let mut v = json!({ "family": family, "mode": mode, "nmax": terms.len() - 1 });
            if let Some(p) = p {
                v["q"] = json!(p.q);
                v["x"] = json!(p.x);
                v["y"] = json!(p.y);
            }
            v["terms"] = json!(terms);
            to_json(&v)
        }
    })
}

pub fn series(format: Format, s: &TruncSeries<Rational>) -> Out {
    Out::ok(match format {
        Format::Plain => format!("{s}\n"),
        Format::Csv => table("n,coeff", s.coeffs(), 0),
        Format::Json => to_json(s),
    })
}

pub fn convergent(
    format: Format,
    spec: &CFSpec,
    depth: usize,
    value: &TruncSeries<Rational>,
    exact_through: Option<usize>,
    stabilized: bool,
) -> Out {
    Out::ok(match format {
        Format::Plain => {
            let status = match (stabilized, exact_through) {
                (true, _) => format!("stabilized at depth {depth}"),
                (false, Some(m)) => format!("depth {depth}, agrees with depth {} through z^{m}", depth.saturating_sub(1)),
                (false, None) => format!("depth {depth}"),
            };
            format!("{value}\n{status}\n")
        }
        Format::Csv => table("n,coeff", value.coeffs(), 0),
        Format::Json => to_json(&json!({
            "id": spec.label,
            "params": spec.params,
            "depth": depth,
            "stabilized": stabilized,
            "agrees_through": exact_through,
            "series": value,
        })),
    })
}

pub fn reports(format: Format, reports: &[IdentityReport]) -> Out {
    let code = if reports.iter().all(IdentityReport::passed) { 0 } else { 1 };
    let text = match format {
        Format::Json => to_json(&reports),
        Format::Plain | Format::Csv => {
            let mut s = if format == Format::Csv { "id,verdict,passed,points\n".to_string() } else { String::new() };
            for r in reports {
                let passed = r.points.iter().filter(|p| p.pass).count();
                let verdict = if r.passed() { "pass" } else { "fail" };
                if format == Format::Csv {
                    writeln!(s, "{},{verdict},{passed},{}", r.id, r.points.len()).unwrap();
                } else {
                    write!(s, "{:<12} {verdict} {passed}/{}", r.id, r.points.len()).unwrap();
                    if let Some(p) = r.points.iter().find(|p| !p.pass) {
                        match (&p.error, p.mismatch_order) {
                            (Some(e), _) => write!(s, "  ({e})").unwrap(),
                            (None, Some(m)) => write!(s, "  first mismatch z^{m} at q={}, x={}, y={}", p.q, p.x, p.y).unwrap(),
                            _ => {}
                        }
                    }
                    s.push('\n');
                }
            }
            s
        }
    };
    Out { text, code }
}

pub fn determinants(format: Format, family: &str, offset: usize, dets: &[Rational]) -> Out {
    Out::ok(match format {
        Format::Plain => format!("{}\n", joined(dets)),
        Format::Csv => table("n,det", dets, 1),
        Format::Json => to_json(&json!({ "family": family, "offset": offset, "determinants": dets })),
    })
}
