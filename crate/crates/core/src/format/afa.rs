use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::{from_text, to_text};
use crate::afa::Afa;
use crate::error::{Error, Result};
use crate::set::StateSet;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    states: Vec<String>,
    accepting: Vec<String>,
    delta: Map<String, Value>,
}

pub fn parse_afa(text: &str) -> Result<Afa> {
    let doc: Doc = from_text(text)?;
    let n = doc.states.len();
    let id = |name: &str, path: &str| {
        doc.states.iter().position(|s| s == name).ok_or_else(|| Error::format(path, format!("unknown state `{name}`")))
    };
    let mut delta = vec![Vec::new(); n];
    for (name, v) in &doc.delta {
        let path = format!("delta.{name}");
        let q = id(name, &path)?;
        let clauses: Vec<Vec<String>> =
            serde_json::from_value(v.clone()).map_err(|e| Error::format(&path, e.to_string()))?;
        for (i, c) in clauses.iter().enumerate() {
            let mut set = StateSet::empty(n);
            for (j, s) in c.iter().enumerate() {
                set.insert(id(s, &format!("{path}[{i}][{j}]"))?);
            }
            delta[q].push(set);
        }
    }
    let mut accepting = StateSet::empty(n);
    for (i, s) in doc.accepting.iter().enumerate() {
        accepting.insert(id(s, &format!("accepting[{i}]"))?);
    }
    Afa::new(doc.states, delta, accepting)
}

pub fn write_afa(a: &Afa) -> String {
    let names = a.state_names();
    let delta: Map<String, Value> = (0..a.num_states())
        .map(|q| {
            let clauses: Vec<Vec<&str>> =
                a.clauses(q).iter().map(|c| c.iter().map(|s| names[s].as_str()).collect()).collect();
            (names[q].clone(), json!(clauses))
        })
        .collect();
    let accepting: Vec<&str> = a.accepting().iter().map(|s| names[s].as_str()).collect();
    to_text(&json!({"states": names, "accepting": accepting, "delta": delta}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip() {
        let a = fixtures::afa_fig5();
        let text = write_afa(&a);
        assert_eq!(parse_afa(&text).unwrap(), a);
        let bad = r#"{"states": ["p"], "accepting": ["p"], "delta": {"p": [["z"]]}}"#;
        assert_eq!(parse_afa(bad).unwrap_err().to_string(), "delta.p[0][0]: unknown state `z`");
        let missing = r#"{"states": ["p", "q"], "accepting": [], "delta": {"p": [["p"]]}}"#;
        assert!(matches!(parse_afa(missing), Err(Error::InvalidModel(_))));
    }
}
