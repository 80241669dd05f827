use serde_json::{json, Map, Value};

use super::to_text;
use crate::model::{format_rational, Mdp};
use crate::set::StateSet;
use crate::verdict::{Verdict, Witness};

fn names(m: &Mdp, s: &StateSet) -> Value {
    json!(m.names_of(s))
}

pub fn witness_value(m: &Mdp, w: &Witness) -> Value {
    match w {
        Witness::Steps { n } => json!({"kind": "steps", "n": n}),
        Witness::Product { prefix, period, shift } => {
            json!({"kind": "product", "prefix": prefix, "period": period, "shift": shift})
        }
        Witness::Support { set, steps, limit } => {
            json!({"kind": "support", "set": names(m, set), "steps": steps, "limit": witness_value(m, limit)})
        }
        Witness::Recurrent { set, reach, period } => {
            json!({"kind": "recurrent", "set": names(m, set), "reach": reach, "period": period})
        }
        Witness::Region { set } => json!({"kind": "region", "set": names(m, set)}),
        Witness::Cycle { cycle } => {
            let states: Vec<&str> = cycle.states.iter().map(|&q| m.state_name(q)).collect();
            let actions: Vec<&str> = cycle.actions.iter().map(|&a| m.action_name(a)).collect();
            json!({"kind": "cycle", "states": states, "actions": actions})
        }
        Witness::Singleton { state, inner } => {
            json!({"kind": "singleton", "state": m.state_name(*state), "inner": witness_value(m, inner)})
        }
    }
}

/// The report as a JSON value; a note is reported inside the witness object.
pub fn verdict_value(m: &Mdp, v: &Verdict) -> Value {
    let q = &v.query;
    let initial: Map<String, Value> = q
        .initial
        .masses()
        .iter()
        .enumerate()
        .filter(|(_, p)| !num_traits::Zero::is_zero(*p))
        .map(|(s, p)| (m.state_name(s).to_string(), Value::String(format_rational(p))))
        .collect();
    let mut witness = match &v.witness {
        Some(w) => witness_value(m, w),
        None => json!({"kind": "none"}),
    };
    if let (Some(note), Value::Object(obj)) = (&v.note, &mut witness) {
        obj.insert("note".into(), Value::String(note.clone()));
    }
    json!({
        "query": {
            "objective": q.sync.to_string(),
            "mode": q.mode.to_string(),
            "function": {"kind": q.function.kind.to_string(), "target": names(m, &q.function.target)},
            "initial": initial,
        },
        "answer": v.answer,
        "witness": witness,
    })
}

pub fn verdict_json(m: &Mdp, v: &Verdict) -> String {
    to_text(&verdict_value(m, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispatch::decide;
    use crate::fixtures;
    use crate::limits::Limits;
    use crate::model::{AnalysisQuery, Distribution, SyncMode, TargetFunction, WinMode};

    #[test]
    fn fig1_report_is_stable() {
        let m = fixtures::fig1();
        let q = AnalysisQuery {
            sync: SyncMode::Eventually,
            mode: WinMode::LimitSure,
            function: TargetFunction::sum(m.set_of(&["q2"]).unwrap()),
            initial: Distribution::dirac(4, 0),
        };
        let v = decide(&m, &q, &Limits::default()).unwrap();
        let text = verdict_json(&m, &v);
        assert_eq!(text, verdict_json(&m, &decide(&m, &q, &Limits::default()).unwrap()));
        let expected = r#"{
  "query": {
    "objective": "eventually",
    "mode": "limit-sure",
    "function": {
      "kind": "sum",
      "target": [
        "q2"
      ]
    },
    "initial": {
      "q_init": "1"
    }
  },
  "answer": true,
  "witness": {
    "kind": "product",
    "prefix": 1,
    "period": 1,
    "shift": 0
  }
}
"#;
        assert_eq!(text, expected);
    }

    #[test]
    fn note_goes_in_witness() {
        let m = fixtures::fig1();
        let q = AnalysisQuery {
            sync: SyncMode::Weakly,
            mode: WinMode::LimitSure,
            function: TargetFunction::sum(m.set_of(&["q2"]).unwrap()),
            initial: Distribution::dirac(4, 0),
        };
        let v = verdict_value(&m, &decide(&m, &q, &Limits::default()).unwrap());
        assert_eq!(v["answer"], json!(false));
        assert_eq!(v["witness"], json!({"kind": "none", "note": "decided via almost-sure equivalence"}));
    }
}
