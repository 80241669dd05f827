use serde::Deserialize;
use serde_json::{Map, Value};

use super::{from_text, to_text};
use crate::error::{Error, Result};
use crate::model::Mdp;
use crate::strategy::FiniteStrategy;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    modes: Vec<String>,
    initial: String,
    next: Map<String, Value>,
    #[serde(default)]
    update: Map<String, Value>,
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::format(path, "expected an object"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::format(path, "expected a string"))
}

/// Parses a strategy for `m`. Every mode needs a move for every state; update
/// entries are keyed `"action,state"` and missing ones keep the current mode.
pub fn parse_strategy(text: &str, m: &Mdp) -> Result<FiniteStrategy> {
    let doc: Doc = from_text(text)?;
    let (n, na) = (m.num_states(), m.num_actions());
    let mode = |name: &str, path: &str| {
        doc.modes.iter().position(|x| x == name).ok_or_else(|| Error::format(path, format!("unknown mode `{name}`")))
    };
    let initial = mode(&doc.initial, "initial")?;
    let k = doc.modes.len();
    let mut next = vec![vec![None; n]; k];
    for (name, row) in &doc.next {
        let path = format!("next.{name}");
        let i = mode(name, &path)?;
        for (q, a) in object(row, &path)? {
            let p = format!("{path}.{q}");
            let qi = m.state_id(q).ok_or_else(|| Error::format(&p, "unknown state"))?;
            let a = string(a, &p)?;
            next[i][qi] = Some(m.action_id(a).ok_or_else(|| Error::format(&p, format!("unknown action `{a}`")))?);
        }
    }
    let next = next
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(q, a)| {
                    a.ok_or_else(|| {
                        Error::format(
                            format!("next.{}", doc.modes[i]),
                            format!("no move for state `{}`", m.state_name(q)),
                        )
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut update: Vec<Vec<Vec<usize>>> = (0..k).map(|i| vec![vec![i; n]; na]).collect();
    for (name, row) in &doc.update {
        let path = format!("update.{name}");
        let i = mode(name, &path)?;
        for (key, target) in object(row, &path)? {
            let p = format!("{path}.{key}");
            let (a, q) = key.split_once(',').ok_or_else(|| Error::format(&p, "key must be `action,state`"))?;
            let a = m.action_id(a.trim()).ok_or_else(|| Error::format(&p, "unknown action"))?;
            let q = m.state_id(q.trim()).ok_or_else(|| Error::format(&p, "unknown state"))?;
            update[i][a][q] = mode(string(target, &p)?, &p)?;
        }
    }
    FiniteStrategy::new(doc.modes, initial, n, na, next, update)
}

pub fn write_strategy(s: &FiniteStrategy, m: &Mdp) -> String {
    let names = s.mode_names();
    let mut next = Map::new();
    let mut update = Map::new();
    for (i, mode) in names.iter().enumerate() {
        let row: Map<String, Value> = (0..m.num_states())
            .map(|q| (m.state_name(q).to_string(), Value::String(m.action_name(s.next_move(i, q)).to_string())))
            .collect();
        next.insert(mode.clone(), Value::Object(row));
        let mut moves = Map::new();
        for a in 0..m.num_actions() {
            for q in 0..m.num_states() {
                let j = s.update(i, a, q);
                if j != i {
                    moves.insert(format!("{},{}", m.action_name(a), m.state_name(q)), Value::String(names[j].clone()));
                }
            }
        }
        update.insert(mode.clone(), Value::Object(moves));
    }
    let mut doc = Map::new();
    doc.insert("modes".into(), serde_json::json!(names));
    doc.insert("initial".into(), Value::String(names[s.initial()].clone()));
    doc.insert("next".into(), Value::Object(next));
    doc.insert("update".into(), Value::Object(update));
    to_text(&Value::Object(doc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_and_defaults() {
        let m = fixtures::fig1();
        let s = FiniteStrategy::lasso(2, vec![vec![0, 1, 0, 1]], vec![vec![1; 4], vec![0; 4]]);
        let text = write_strategy(&s, &m);
        assert_eq!(parse_strategy(&text, &m).unwrap(), s);
        let short = r#"{"modes": ["m0"], "initial": "m0",
            "next": {"m0": {"q_init": "a", "q1": "b", "q2": "a", "q3": "a"}}}"#;
        assert_eq!(parse_strategy(short, &m).unwrap(), FiniteStrategy::memoryless(2, vec![0, 1, 0, 0]));
        let gap = r#"{"modes": ["only"], "initial": "only", "next": {"only": {"q_init": "a"}}}"#;
        assert_eq!(parse_strategy(gap, &m).unwrap_err().to_string(), "next.only: no move for state `q1`");
        let bad = r#"{"modes": ["x"], "initial": "x", "next": {"x": {"q_init": "a", "q1": "a", "q2": "a", "q3": "a"}},
            "update": {"x": {"a q1": "x"}}}"#;
        assert!(parse_strategy(bad, &m).unwrap_err().to_string().starts_with("update.x.a q1"));
    }
}
