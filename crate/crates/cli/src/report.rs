//! Deterministic JSON reports.
//!
//! Every number is an object `{"value": "p/q", "provenance": tag}`. Objects
//! are `serde_json::Map`, which keeps keys sorted, so equal inputs render to
//! equal bytes.

use moriwaki_core::cone::{FacetId, MoriwakiClassification, Verdict};
use moriwaki_core::divisor::DivisorClass;
use moriwaki_core::Rat;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// A closed formula evaluated at the inputs.
    PaperFormula,
    /// Computed from other quantities.
    Derived,
    Config,
    Input,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::PaperFormula => "paper-formula",
            Provenance::Derived => "derived",
            Provenance::Config => "config",
            Provenance::Input => "input",
        }
    }
}

pub fn num(r: &Rat, p: Provenance) -> Value {
    json!({ "value": r.to_string(), "provenance": p.tag() })
}

pub fn int_num(n: impl ToString, p: Provenance) -> Value {
    json!({ "value": n.to_string(), "provenance": p.tag() })
}

pub fn nums<'a>(rs: impl IntoIterator<Item = &'a Rat>, p: Provenance) -> Value {
    Value::Array(rs.into_iter().map(|r| num(r, p)).collect())
}

pub fn class(d: &DivisorClass, p: Provenance) -> Value {
    json!({
        "genus": d.genus(),
        "a": num(d.a(), p),
        "b": nums(d.b(), p),
        "display": d.to_string(),
    })
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Outside => "Outside",
        Verdict::Boundary => "Boundary",
        Verdict::StrictInterior => "StrictInterior",
    }
}

pub fn facet_names<'a>(fs: impl IntoIterator<Item = &'a FacetId>) -> Value {
    Value::Array(fs.into_iter().map(|f| Value::String(f.to_string())).collect())
}

pub fn classification(c: &MoriwakiClassification) -> Value {
    json!({
        "verdict": verdict_name(c.verdict),
        "violated": facet_names(&c.violated),
        "active": facet_names(&c.active),
        "m_divisor": c.is_m_divisor(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Value,
}

impl Report {
    pub fn new(command: &str, inputs: Map<String, Value>, outputs: Value) -> Self {
        Self { command: command.to_string(), inputs, outputs }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "tool_version": TOOL_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
        })
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("json values always serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use moriwaki_core::rat::{frac, int};

    #[test]
    fn numbers_are_exact_strings() {
        assert_eq!(num(&frac(98, 12), Provenance::Derived), json!({"value": "49/6", "provenance": "derived"}));
        assert_eq!(num(&int(-3), Provenance::Input)["value"], "-3");
    }

    #[test]
    fn keys_are_sorted() {
        let r = Report::new("x", Map::new(), json!({"zeta": 1, "alpha": 2}));
        let s = r.render();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.find("\"command\"").unwrap() < s.find("\"schema_version\"").unwrap());
    }
}
