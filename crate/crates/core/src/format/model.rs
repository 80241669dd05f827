use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::{from_text, to_text, ProbText};
use crate::error::{Error, Result};
use crate::model::{format_rational, Distribution, Mdp, MdpDef, Prob, RowDef};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    states: Vec<String>,
    actions: Vec<String>,
    transitions: Vec<Transition>,
    #[serde(default)]
    initial: Option<Map<String, Value>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Transition {
    from: String,
    action: String,
    to: Vec<Target>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Target {
    state: String,
    #[serde(default)]
    prob: Option<ProbText>,
}

/// A parsed model document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDoc {
    pub mdp: Mdp,
    pub initial: Option<Distribution>,
}

pub fn parse_model_doc(text: &str) -> Result<ModelDoc> {
    let doc: Doc = from_text(text)?;
    let mut rows = Vec::with_capacity(doc.transitions.len());
    for (i, t) in doc.transitions.into_iter().enumerate() {
        let mut to = Vec::with_capacity(t.to.len());
        for (j, target) in t.to.into_iter().enumerate() {
            let p = target.prob.map(|p| p.parse(&format!("transitions[{i}].to[{j}].prob"))).transpose()?;
            to.push((target.state, p));
        }
        rows.push(RowDef { from: t.from, action: t.action, to });
    }
    let mdp = MdpDef { states: doc.states, actions: doc.actions, rows }.build()?;
    let initial = match doc.initial {
        None => None,
        Some(map) => {
            let mut pairs = Vec::with_capacity(map.len());
            for (name, v) in map {
                let path = format!("initial.{name}");
                let q = mdp.state_id(&name).ok_or_else(|| Error::format(&path, "unknown state"))?;
                let p: ProbText = serde_json::from_value(v).map_err(|e| Error::format(&path, e.to_string()))?;
                pairs.push((q, p.parse(&path)?));
            }
            Some(
                Distribution::from_pairs(mdp.num_states(), &pairs)
                    .map_err(|e| Error::format("initial", e.to_string()))?,
            )
        }
    };
    Ok(ModelDoc { mdp, initial })
}

pub fn parse_model(text: &str) -> Result<Mdp> {
    parse_model_doc(text).map(|d| d.mdp)
}

/// Parses `q1:1/2,q2:1/2` or a single state name.
pub fn parse_distribution(m: &Mdp, text: &str) -> Result<Distribution> {
    if !text.contains(':') {
        return Ok(Distribution::dirac(m.num_states(), m.state(text.trim())?));
    }
    let mut pairs = Vec::new();
    for part in text.split(',') {
        let (name, p) =
            part.split_once(':').ok_or_else(|| Error::input(format!("expected `state:prob`, got `{part}`")))?;
        let p: Prob = crate::model::parse_rational(p).map_err(Error::input)?;
        pairs.push((m.state(name.trim())?, p));
    }
    Distribution::from_pairs(m.num_states(), &pairs)
}

pub fn write_model(m: &Mdp, initial: Option<&Distribution>) -> String {
    let transitions: Vec<Value> = (0..m.num_states())
        .flat_map(|q| (0..m.num_actions()).map(move |a| (q, a)))
        .map(|(q, a)| {
            let to: Vec<Value> = m
                .row(q, a)
                .iter()
                .map(|(s, p)| json!({"state": m.state_name(s), "prob": format_rational(p)}))
                .collect();
            json!({"from": m.state_name(q), "action": m.action_name(a), "to": to})
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("states".into(), json!(m.state_names()));
    doc.insert("actions".into(), json!(m.action_names()));
    doc.insert("transitions".into(), Value::Array(transitions));
    if let Some(d) = initial {
        let init: Map<String, Value> = d
            .masses()
            .iter()
            .enumerate()
            .filter(|(_, p)| !num_traits::Zero::is_zero(*p))
            .map(|(q, p)| (m.state_name(q).to_string(), Value::String(format_rational(p))))
            .collect();
        doc.insert("initial".into(), Value::Object(init));
    }
    to_text(&Value::Object(doc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_fig1() {
        let m = fixtures::fig1();
        let d = Distribution::dirac(4, 0);
        let text = write_model(&m, Some(&d));
        let back = parse_model_doc(&text).unwrap();
        assert_eq!(back.mdp, m);
        assert_eq!(back.initial, Some(d));
        assert_eq!(write_model(&back.mdp, back.initial.as_ref()), text);
    }

    #[test]
    fn missing_prob_is_uniform() {
        let text = r#"{"states": ["p", "q"], "actions": ["a"],
            "transitions": [{"from": "p", "action": "a", "to": [{"state": "p"}, {"state": "q"}]},
                            {"from": "q", "action": "a", "to": [{"state": "q", "prob": 1}]}]}"#;
        let m = parse_model(text).unwrap();
        assert_eq!(m.row(0, 0).iter().map(|(_, p)| format_rational(p)).collect::<Vec<_>>(), vec!["1/2", "1/2"]);
    }

    #[test]
    fn errors_name_the_field() {
        let text = r#"{"states": ["p"], "actions": ["a"],
            "transitions": [{"from": "p", "action": "a", "to": [{"state": "p", "prob": "1/0"}]}]}"#;
        let e = parse_model(text).unwrap_err().to_string();
        assert!(e.starts_with("transitions[0].to[0].prob: zero denominator"), "{e}");
        let e = parse_model("{\"states\": [\"p\"],\n \"actions\": 3}").unwrap_err().to_string();
        assert!(e.starts_with("line 2, column"), "{e}");
        let e = parse_model(r#"{"states": ["p"], "actions": ["a"], "transitions": []}"#).unwrap_err();
        assert!(matches!(e, Error::InvalidModel(_)));
        let e = parse_model(r#"{"states": [], "actions": [], "transitions": [], "extra": 1}"#).unwrap_err();
        assert!(e.to_string().contains("extra"));
    }

    #[test]
    fn inline_distributions() {
        let m = fixtures::fig1();
        let d = parse_distribution(&m, "q1:1/2, q2:0.5").unwrap();
        assert_eq!(d.support().to_vec(), vec![1, 2]);
        assert_eq!(parse_distribution(&m, "q_init").unwrap(), Distribution::dirac(4, 0));
        assert!(parse_distribution(&m, "q1:1/2").is_err());
        assert!(parse_distribution(&m, "nope").is_err());
    }
}
