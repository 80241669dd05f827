//! JSON documents for models, automata, strategies and verdict reports.
//!
//! Writers are deterministic: the same value always serializes to the same bytes.

mod afa;
mod model;
mod report;
mod strategy;

pub use afa::{parse_afa, write_afa};
pub use model::{parse_distribution, parse_model, parse_model_doc, write_model, ModelDoc};
pub use report::{verdict_json, verdict_value, witness_value};
pub use strategy::{parse_strategy, write_strategy};

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::error::{Error, Result};

fn from_text<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let at =
            if e.line() == 0 { "document".to_string() } else { format!("line {}, column {}", e.line(), e.column()) };
        let mut msg = e.to_string();
        if let Some(i) = msg.find(" at line ") {
            msg.truncate(i);
        }
        Error::format(at, msg)
    })
}

fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// A probability as written in a document: `"p/q"`, `"0.25"` or a bare number.
#[derive(Debug, Clone, serde::Deserialize)]
#[serde(untagged)]
enum ProbText {
    Text(String),
    Number(serde_json::Number),
}

impl ProbText {
    fn parse(&self, path: &str) -> Result<crate::model::Prob> {
        let text = match self {
            ProbText::Text(s) => s.clone(),
            ProbText::Number(n) => n.to_string(),
        };
        crate::model::parse_rational(&text).map_err(|m| Error::format(path, m))
    }
}
