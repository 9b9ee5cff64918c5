//! Rendering of reports and tables as JSON lines, CSV or DOT.

use std::io::Write;
use std::str::FromStr;

use serde_json::{Map, Number, Value};
use stern_core::{ExactRational, Outcome, Stat, VerificationReport};

use crate::args::Format;
use crate::CliError;

/// One unit of output.
#[derive(Clone, Debug)]
pub enum Line {
    /// A verification result labelled with the check that produced it.
    Report { check: String, report: VerificationReport },
    /// A flat record; becomes one JSON object or one CSV row.
    Row(Map<String, Value>),
    /// Preformatted text (DOT).
    Text(String),
}

impl Line {
    pub fn report(check: impl Into<String>, report: VerificationReport) -> Self {
        Line::Report { check: check.into(), report }
    }

    pub fn failed(&self) -> bool {
        matches!(self, Line::Report { report, .. } if !report.passed())
    }
}

/// Builds a [`Line::Row`] from `key => value` pairs.
#[macro_export]
macro_rules! row {
    ($($key:expr => $value:expr),* $(,)?) => {{
        let mut map = serde_json::Map::new();
        $(map.insert(String::from($key), serde_json::Value::from($value));)*
        $crate::output::Line::Row(map)
    }};
}

pub fn big_number(digits: impl ToString) -> Value {
    Value::Number(Number::from_str(&digits.to_string()).expect("decimal integer"))
}

pub fn rational(q: &ExactRational) -> Value {
    let mut map = Map::new();
    map.insert("num".into(), Value::String(q.numer().to_string()));
    map.insert("den".into(), Value::String(q.denom().to_string()));
    Value::Object(map)
}

fn float(v: f64) -> Value {
    Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn stat(s: &Stat) -> Value {
    match s {
        Stat::Int(v) => big_number(v),
        Stat::Float(v) => float(*v),
        Stat::Rational(q) => rational(q),
        Stat::Bool(b) => Value::Bool(*b),
        Stat::Text(t) => Value::String(t.clone()),
        Stat::List(items) => Value::Array(items.iter().map(stat).collect()),
    }
}

fn named(pairs: &[(String, Stat)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.clone(), stat(v))).collect())
}

pub fn report_json(check: &str, report: &VerificationReport) -> Value {
    let mut map = Map::new();
    map.insert("check".into(), check.into());
    map.insert("outcome".into(), outcome(report.outcome).into());
    map.insert("claim".into(), report.claim.clone().into());
    map.insert("range".into(), report.range.clone().into());
    map.insert("witness".into(), report.witness.as_deref().map_or(Value::Null, named));
    map.insert("statistics".into(), named(&report.statistics));
    Value::Object(map)
}

fn outcome(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Object(m) if m.len() == 2 && m.contains_key("num") && m.contains_key("den") => {
            format!("{}/{}", m["num"].as_str().unwrap_or(""), m["den"].as_str().unwrap_or(""))
        }
        other => other.to_string(),
    }
}

/// Writes `lines` in `format`.
///
/// CSV emits a header row whenever the column set changes; reports become
/// `check,outcome,claim,range` rows. DOT accepts only text lines.
pub fn render(lines: &[Line], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for line in lines {
                let value = match line {
                    Line::Report { check, report } => report_json(check, report),
                    Line::Row(map) => Value::Object(map.clone()),
                    Line::Text(text) => Value::String(text.clone()),
                };
                serde_json::to_writer(&mut *out, &value).map_err(std::io::Error::from)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(&mut *out);
            let mut header: Option<Vec<String>> = None;
            for line in lines {
                let (keys, cells): (Vec<String>, Vec<String>) = match line {
                    Line::Report { check, report } => (
                        ["check", "outcome", "claim", "range"].map(String::from).to_vec(),
                        vec![
                            check.clone(),
                            outcome(report.outcome).into(),
                            report.claim.clone(),
                            report.range.clone(),
                        ],
                    ),
                    Line::Row(map) => (map.keys().cloned().collect(), map.values().map(csv_cell).collect()),
                    Line::Text(_) => {
                        return Err(CliError::Usage("this output has no CSV form".into()));
                    }
                };
                if header.as_ref() != Some(&keys) {
                    writer.write_record(&keys)?;
                    header = Some(keys);
                }
                writer.write_record(&cells)?;
            }
            writer.flush()?;
        }
        Format::Dot => {
            for line in lines {
                match line {
                    Line::Text(text) => out.write_all(text.as_bytes())?,
                    _ => return Err(CliError::Usage("only automaton graphs have a DOT form".into())),
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_strings() {
        let q: ExactRational = "-5/32".parse().unwrap();
        assert_eq!(rational(&q).to_string(), r#"{"num":"-5","den":"32"}"#);
    }

    #[test]
    fn big_integers_stay_exact() {
        let v = big_number("1606938044258990275541962092341162602522202993782792835301376");
        assert_eq!(v.to_string(), "1606938044258990275541962092341162602522202993782792835301376");
    }

    #[test]
    fn csv_headers_follow_columns() {
        let lines = vec![row!("i" => 0, "count" => 1), row!("i" => 1, "count" => 1), row!("k" => 3)];
        let mut buf = Vec::new();
        render(&lines, Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "i,count\n0,1\n1,1\nk\n3\n");
    }
}
