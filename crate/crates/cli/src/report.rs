//! JSON and CSV rendering. Every exact number is written as a decimal string.

use std::fmt::Display;
use std::io::Write;

use braidkl::polyseries::Poly;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

pub fn s(x: impl Display) -> Value {
    Value::String(x.to_string())
}

pub fn coeffs(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(s).collect())
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    text.parse().ok()
}

/// How `actual` is compared with `expected`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    /// Both are rationals and `actual < expected`.
    Lt,
    /// Both are rationals and `actual <= expected`.
    Le,
}

impl Relation {
    fn name(self) -> &'static str {
        match self {
            Relation::Eq => "eq",
            Relation::Lt => "lt",
            Relation::Le => "le",
        }
    }

    pub fn holds(self, actual: &str, expected: &str) -> bool {
        match self {
            Relation::Eq => actual == expected,
            Relation::Lt | Relation::Le => match (parse_rational(actual), parse_rational(expected)) {
                (Some(a), Some(e)) => {
                    if self == Relation::Lt {
                        a < e
                    } else {
                        a <= e
                    }
                }
                _ => false,
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub relation: Relation,
    pub expected: String,
    pub actual: String,
    /// Informational checks are reported but never fail a suite.
    pub required: bool,
}

impl Check {
    pub fn eq(name: impl Into<String>, expected: impl Display, actual: impl Display) -> Check {
        Check {
            name: name.into(),
            relation: Relation::Eq,
            expected: expected.to_string(),
            actual: actual.to_string(),
            required: true,
        }
    }

    pub fn truth(name: impl Into<String>, value: bool) -> Check {
        Check::eq(name, true, value)
    }

    pub fn lt(name: impl Into<String>, actual: &BigRational, bound: &BigRational) -> Check {
        Check { relation: Relation::Lt, ..Check::eq(name, bound, actual) }
    }

    pub fn le(name: impl Into<String>, actual: impl Display, bound: impl Display) -> Check {
        Check { relation: Relation::Le, ..Check::eq(name, bound, actual) }
    }

    pub fn informational(mut self) -> Check {
        self.required = false;
        self
    }

    pub fn passed(&self) -> bool {
        self.relation.holds(&self.actual, &self.expected)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "relation": self.relation.name(),
            "expected": self.expected,
            "actual": self.actual,
            "required": self.required,
            "passed": self.passed(),
        })
    }
}

pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    outputs: Map<String, Value>,
    verdicts: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { command: command.to_string(), inputs: Map::new(), outputs: Map::new(), verdicts: Map::new() }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), v.into());
        self
    }

    pub fn output(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.into(), v.into());
        self
    }

    pub fn verdict(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.verdicts.insert(key.into(), v.into());
        self
    }

    pub fn to_json(&self, timing_ms: Option<u128>) -> Value {
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "verdicts": self.verdicts,
        });
        if let Some(ms) = timing_ms {
            v["timing_ms"] = s(ms);
        }
        v
    }
}

pub fn print_json(v: &Value) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)
}

pub fn print_csv(header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}
