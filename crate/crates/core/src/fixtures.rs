//! Small example models used throughout the tests, benchmarks and the CLI.

use crate::afa::Afa;
use crate::error::{Error, Result};
use crate::model::{parse_rational, Mdp, MdpDef};

const AB: &[&str] = &["a", "b"];

fn build(d: &MdpDef) -> Mdp {
    d.build().expect("fixture is well formed")
}

/// Four states; mass leaks from `q_init` to `q1` at rate 1/2 per step.
pub fn fig1() -> Mdp {
    let mut d = MdpDef::new(&["q_init", "q1", "q2", "q3"], AB);
    d.uniform("q_init", AB, &["q_init", "q1"])
        .uniform("q1", &["a"], &["q1"])
        .uniform("q1", &["b"], &["q2"])
        .uniform("q2", AB, &["q3"])
        .uniform("q3", AB, &["q3"]);
    build(&d)
}

/// Three states `r, s, q` with a 1/5 vs 4/5 split out of `r`.
pub fn fig2() -> Mdp {
    let mut d = MdpDef::new(&["r", "s", "q"], &["a"]);
    d.weighted("r", "a", &[("s", parse_rational("1/5").unwrap()), ("q", parse_rational("4/5").unwrap())])
        .uniform("s", &["a"], &["s"])
        .uniform("q", &["a"], &["r"]);
    build(&d)
}

/// Like [`fig1`] but `q2` returns to `q_init`, and `b` keeps `q_init` in place.
pub fn fig3() -> Mdp {
    let mut d = MdpDef::new(&["q_init", "q1", "q2"], AB);
    d.uniform("q_init", &["a"], &["q_init", "q1"])
        .uniform("q_init", &["b"], &["q_init"])
        .uniform("q1", &["a"], &["q1"])
        .uniform("q1", &["b"], &["q2"])
        .uniform("q2", AB, &["q_init"]);
    build(&d)
}

/// The first `n` primes.
pub fn primes(n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    let mut c = 2;
    while out.len() < n {
        if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// `q_init` branches uniformly into `n` cycles of prime lengths 2, 3, 5, ...;
/// `b` from the last state of a cycle reaches `q_T`, from any other cycle state `q_bot`.
pub fn fig4(n: usize) -> Mdp {
    assert!(n >= 1, "fig4 needs at least one component");
    let ps = primes(n);
    let cyc: Vec<Vec<String>> =
        ps.iter().enumerate().map(|(i, &p)| (1..=p).map(|j| format!("h{}_{}", i + 1, j)).collect()).collect();
    let mut names = vec!["q_init".to_string()];
    names.extend(cyc.iter().flatten().cloned());
    names.extend(["q_T".to_string(), "q_bot".to_string()]);
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut d = MdpDef::new(&name_refs, AB);
    let firsts: Vec<&str> = cyc.iter().map(|c| c[0].as_str()).collect();
    d.uniform("q_init", AB, &firsts);
    for c in &cyc {
        for (j, s) in c.iter().enumerate() {
            d.uniform(s, &["a"], &[c[(j + 1) % c.len()].as_str()]);
            d.uniform(s, &["b"], &[if j + 1 == c.len() { "q_T" } else { "q_bot" }]);
        }
    }
    d.uniform("q_T", AB, &["q_bot"]).uniform("q_bot", AB, &["q_bot"]);
    build(&d)
}

/// The alternating automaton whose language from `q_init` is the odd lengths above 1.
pub fn afa_fig5() -> Afa {
    Afa::from_names(
        &["q_init", "q1", "q2", "q3", "q4", "q5"],
        &[
            &[&["q1", "q2"]],
            &[&["q_init", "q2"], &["q2", "q3"]],
            &[&["q2"], &["q4"]],
            &[&["q1", "q4"], &["q5"]],
            &[&["q5"]],
            &[&["q5"]],
        ],
        &["q1", "q3", "q4"],
    )
    .expect("fixture is well formed")
}

/// The MDP counterpart of [`afa_fig5`].
pub fn fig5() -> Mdp {
    let mut d = MdpDef::new(&["q_init", "q1", "q2", "q3", "q4", "q5"], AB);
    d.uniform("q_init", AB, &["q1", "q2"])
        .uniform("q1", &["a"], &["q2", "q3"])
        .uniform("q1", &["b"], &["q_init", "q2"])
        .uniform("q2", &["a"], &["q2"])
        .uniform("q2", &["b"], &["q4"])
        .uniform("q3", &["a"], &["q1", "q4"])
        .uniform("q3", &["b"], &["q5"])
        .uniform("q4", AB, &["q5"])
        .uniform("q5", AB, &["q5"]);
    build(&d)
}

/// Limit-sure weakly synchronizing in `q4`.
pub fn fig9() -> Mdp {
    let mut d = MdpDef::new(&["q_init", "q1", "q2", "q3", "q4", "q5", "q6"], AB);
    d.uniform("q_init", AB, &["q1", "q2"])
        .uniform("q1", AB, &["q_init"])
        .uniform("q2", AB, &["q3"])
        .uniform("q3", &["a"], &["q2"])
        .uniform("q3", &["b"], &["q4"])
        .uniform("q4", AB, &["q5"])
        .uniform("q5", AB, &["q3", "q6"])
        .uniform("q6", AB, &["q5"]);
    build(&d)
}

pub fn fig10() -> Mdp {
    let mut d = MdpDef::new(&["q_init", "q1", "q2", "q3"], AB);
    d.uniform("q_init", &["a"], &["q_init", "q1"])
        .uniform("q_init", &["b"], &["q_init", "q2"])
        .uniform("q1", &["a"], &["q1"])
        .uniform("q1", &["b"], &["q3"])
        .uniform("q2", AB, &["q_init"])
        .uniform("q3", AB, &["q1"]);
    build(&d)
}

/// Two deterministic cycles through `q1` (lengths 2 and 3) and a return path of length 5.
pub fn fig11() -> Mdp {
    let mut d = MdpDef::new(&["q_init", "q1", "q2", "q3", "q4", "q5", "q6", "q7", "q8"], AB);
    d.uniform("q_init", AB, &["q1", "q5"])
        .uniform("q1", &["a"], &["q2"])
        .uniform("q1", &["b"], &["q3"])
        .uniform("q2", AB, &["q1"])
        .uniform("q3", AB, &["q4"])
        .uniform("q4", AB, &["q1"])
        .uniform("q5", AB, &["q6"])
        .uniform("q6", AB, &["q7"])
        .uniform("q7", AB, &["q8"])
        .uniform("q8", AB, &["q_init"]);
    build(&d)
}

pub fn fig12() -> Mdp {
    let mut d = MdpDef::new(&["q_init", "q1", "q2", "q3"], AB);
    d.uniform("q_init", AB, &["q1", "q2"])
        .uniform("q1", &["a"], &["q2"])
        .uniform("q1", &["b"], &["q1"])
        .uniform("q2", AB, &["q3"])
        .uniform("q3", AB, &["q2"]);
    build(&d)
}

/// Three-state chain with a single action.
pub fn fig13() -> Mdp {
    let mut d = MdpDef::new(&["q_init", "q1", "q2"], &["a"]);
    d.uniform("q_init", &["a"], &["q_init", "q1"]).uniform("q1", &["a"], &["q2"]).uniform("q2", &["a"], &["q2"]);
    build(&d)
}

/// A catalog entry.
#[derive(Debug, Clone)]
pub enum Fixture {
    Mdp(Mdp),
    Afa(Afa),
}

/// Names accepted by [`fixture`]; `fig4` also accepts `fig4:<n>`.
pub const CATALOG: &[(&str, &str)] = &[
    ("fig1", "limit-sure but not almost-sure eventually synchronizing in q2"),
    ("fig2", "three-state model used to illustrate state duplication"),
    ("fig3", "almost-sure eventually synchronizing with infinite memory"),
    ("fig4", "family M_n (default n=2) needing exponential memory; use fig4:<n>"),
    ("afa_fig5", "alternating automaton accepting the odd lengths above 1"),
    ("fig5", "MDP counterpart of afa_fig5"),
    ("fig9", "limit-sure weakly synchronizing in q4"),
    ("fig10", "limit-sure weakly synchronizing in q3"),
    ("fig11", "almost-sure strongly synchronizing via deterministic cycles"),
    ("fig12", "sure strongly synchronizing in {q2,q3} with max"),
    ("fig13", "almost-sure but not sure strongly synchronizing with sum"),
];

pub fn fixture(name: &str) -> Result<Fixture> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let unknown = || Error::UnknownFixture(name.to_string());
    if arg.is_some() && base != "fig4" {
        return Err(unknown());
    }
    Ok(match base {
        "fig1" => Fixture::Mdp(fig1()),
        "fig2" => Fixture::Mdp(fig2()),
        "fig3" => Fixture::Mdp(fig3()),
        "fig4" => {
            let n = match arg {
                None => 2,
                Some(a) => a.parse::<usize>().ok().filter(|&n| (1..=6).contains(&n)).ok_or_else(unknown)?,
            };
            Fixture::Mdp(fig4(n))
        }
        "afa_fig5" => Fixture::Afa(afa_fig5()),
        "fig5" => Fixture::Mdp(fig5()),
        "fig9" => Fixture::Mdp(fig9()),
        "fig10" => Fixture::Mdp(fig10()),
        "fig11" => Fixture::Mdp(fig11()),
        "fig12" => Fixture::Mdp(fig12()),
        "fig13" => Fixture::Mdp(fig13()),
        _ => return Err(unknown()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_mdp;

    #[test]
    fn catalog_is_valid() {
        for (name, _) in CATALOG {
            match fixture(name).unwrap() {
                Fixture::Mdp(m) => assert!(validate_mdp(&m.to_def()).is_empty(), "{name}"),
                Fixture::Afa(a) => assert!(a.num_states() > 0),
            }
        }
        assert!(matches!(fixture("fig7"), Err(Error::UnknownFixture(_))));
        assert!(fixture("fig1:3").is_err());
    }

    #[test]
    fn shapes() {
        let m = fig1();
        assert_eq!((m.num_states(), m.num_actions()), (4, 2));
        let m4 = fig4(2);
        assert_eq!(m4.num_states(), 1 + 2 + 3 + 2);
        assert_eq!(m4.post(m4.state("h1_2").unwrap(), 1).to_vec(), vec![m4.state("q_T").unwrap()]);
        assert_eq!(m4.post(m4.state("h2_2").unwrap(), 1).to_vec(), vec![m4.state("q_bot").unwrap()]);
        assert_eq!(m4.post(m4.state("h2_3").unwrap(), 0).to_vec(), vec![m4.state("h2_1").unwrap()]);
        assert_eq!(fig9().num_states(), 7);
        assert_eq!(primes(4), vec![2, 3, 5, 7]);
        assert!(matches!(fixture("fig4:3").unwrap(), Fixture::Mdp(m) if m.num_states() == 1 + 10 + 2));
    }
}
