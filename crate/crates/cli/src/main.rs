//! Command-line front end: decide, synthesize, simulate, and inspect fixtures.
//!
//! Exit codes: 0 for a true verdict (or a successful command), 1 for a false
//! verdict, 2 for errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use syncmdp::afa::{emptiness, finiteness, universal_finiteness};
use syncmdp::fixtures::{fixture, Fixture, CATALOG};
use syncmdp::format::{
    parse_afa, parse_distribution, parse_model_doc, parse_strategy, verdict_json, write_afa, write_model,
    write_strategy,
};
use syncmdp::model::{format_rational, parse_rational};
use syncmdp::oracle::oracle_sure;
use syncmdp::random::{random_afa, random_mdp};
use syncmdp::strategy::{
    symbolic_outcome, synth_almost_sure_schedule, synth_always, synth_eventually_epsilon, synth_strongly,
    synth_sure_eventually, synth_sure_weakly, Objective,
};
use syncmdp::{
    decide, eval_target, Afa, AnalysisQuery, Distribution, FiniteStrategy, FnKind, Limits, Mdp, StateSet, SyncMode,
    TargetFunction, WinMode,
};

#[derive(Parser)]
#[command(name = "syncmdp", version, about = "Synchronizing objectives for Markov decision processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a query and print the verdict document.
    Check(QueryArgs),
    /// Build a witness strategy for a winning query.
    Synthesize {
        #[command(flatten)]
        query: QueryArgs,
        /// Almost-sure phases to build (eventually and weakly).
        #[arg(long, default_value_t = 3)]
        phases: usize,
        /// Target slack for limit-sure eventually, e.g. 1/1024.
        #[arg(long, default_value = "1/1024")]
        epsilon: String,
        /// Write the strategy here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a strategy and print one row per step.
    Simulate {
        #[arg(long)]
        model: String,
        /// Strategy file.
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long)]
        from: Option<String>,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        /// Add a column with the value of the target function.
        #[arg(long)]
        target: Option<String>,
        #[arg(long = "fn", value_enum, default_value_t = KindArg::Sum)]
        kind: KindArg,
    },
    /// Sure-mode answer by forward search over supports.
    Oracle {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long = "fn", value_enum, default_value_t = KindArg::Sum)]
        kind: KindArg,
        #[arg(long)]
        target: String,
        /// Initial state.
        #[arg(long)]
        from: String,
    },
    /// Decision problems for one-letter alternating automata.
    Afa {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum)]
        query: AfaQuery,
        /// Needed by emptiness and finiteness.
        #[arg(long)]
        state: Option<String>,
    },
    /// List the built-in models, or print one.
    Examples {
        /// Fixture name, e.g. fig1 or fig4:3.
        name: Option<String>,
    },
    /// Print a seeded random model or automaton.
    Random {
        #[arg(long, value_enum, default_value_t = RandomKind::Mdp)]
        kind: RandomKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        actions: usize,
        #[arg(long, default_value_t = 2)]
        branching: usize,
        /// Clauses per state (automata).
        #[arg(long, default_value_t = 2)]
        clauses: usize,
        /// States per clause (automata).
        #[arg(long, default_value_t = 2)]
        clause_size: usize,
    },
}

#[derive(Args)]
struct QueryArgs {
    /// Fixture name or model file.
    #[arg(long)]
    model: String,
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long = "fn", value_enum, default_value_t = KindArg::Sum)]
    kind: KindArg,
    /// Comma-separated state names; `*` for all states.
    #[arg(long)]
    target: String,
    /// State name or distribution `q1:1/2,q2:1/2`; defaults to the model's initial distribution.
    #[arg(long)]
    from: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Always,
    Eventually,
    Weakly,
    Strongly,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Sure,
    AlmostSure,
    LimitSure,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Sum,
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
enum AfaQuery {
    Emptiness,
    Finiteness,
    UniversalFiniteness,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    Mdp,
    Afa,
}

impl From<ObjectiveArg> for SyncMode {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Always => SyncMode::Always,
            ObjectiveArg::Eventually => SyncMode::Eventually,
            ObjectiveArg::Weakly => SyncMode::Weakly,
            ObjectiveArg::Strongly => SyncMode::Strongly,
        }
    }
}

impl From<ModeArg> for WinMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Sure => WinMode::Sure,
            ModeArg::AlmostSure => WinMode::AlmostSure,
            ModeArg::LimitSure => WinMode::LimitSure,
        }
    }
}

impl From<KindArg> for FnKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Sum => FnKind::Sum,
            KindArg::Max => FnKind::Max,
        }
    }
}

type Outcome = Result<ExitCode, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn truth(b: bool) -> ExitCode {
    if b {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn read(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

/// Reads `--model` as a file once it is known not to be a fixture name.
fn read_model_file(source: &str) -> Result<String, String> {
    fs::read_to_string(source)
        .map_err(|e| format!("`{source}` is neither a built-in example nor a readable file ({e})"))
}

/// A fixture name or a model file, with the file's initial distribution if any.
fn load_model(source: &str) -> Result<(Mdp, Option<Distribution>), String> {
    match fixture(source) {
        Ok(Fixture::Mdp(m)) => Ok((m, None)),
        Ok(Fixture::Afa(_)) => Err(format!("`{source}` is an automaton, not a model")),
        Err(_) => {
            let doc = parse_model_doc(&read_model_file(source)?).map_err(|e| format!("{source}: {e}"))?;
            Ok((doc.mdp, doc.initial))
        }
    }
}

fn load_afa(source: &str) -> Result<Afa, String> {
    match fixture(source) {
        Ok(Fixture::Afa(a)) => Ok(a),
        Ok(Fixture::Mdp(_)) => Err(format!("`{source}` is a model, not an automaton")),
        Err(_) => parse_afa(&read_model_file(source)?).map_err(|e| format!("{source}: {e}")),
    }
}

fn target_set(m: &Mdp, text: &str) -> Result<StateSet, String> {
    if text.trim() == "*" {
        return Ok(m.full_set());
    }
    let names: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    m.set_of(&names).map_err(err)
}

fn initial(m: &Mdp, from: Option<&str>, file_initial: Option<Distribution>) -> Result<Distribution, String> {
    match (from, file_initial) {
        (Some(text), _) => parse_distribution(m, text).map_err(err),
        (None, Some(d)) => Ok(d),
        (None, None) => Err("no initial distribution: pass --from".into()),
    }
}

fn query(q: &QueryArgs) -> Result<(Mdp, AnalysisQuery), String> {
    let (m, file_initial) = load_model(&q.model)?;
    let target = target_set(&m, &q.target)?;
    let initial = initial(&m, q.from.as_deref(), file_initial)?;
    let function = TargetFunction { kind: q.kind.into(), target };
    let aq = AnalysisQuery { sync: q.objective.into(), mode: q.mode.into(), function, initial };
    Ok((m, aq))
}

fn check(q: &QueryArgs, limits: &Limits) -> Outcome {
    let (m, aq) = query(q)?;
    let v = decide(&m, &aq, limits).map_err(err)?;
    print!("{}", verdict_json(&m, &v));
    Ok(truth(v.answer))
}

/// For max targets of eventually and weakly, the first target state that wins on its own.
fn winning_singleton(m: &Mdp, aq: &AnalysisQuery, limits: &Limits) -> Result<StateSet, String> {
    for q in aq.function.target.iter() {
        let single = StateSet::singleton(m.num_states(), q);
        let sub = AnalysisQuery { function: TargetFunction::sum(single.clone()), ..aq.clone() };
        if decide(m, &sub, limits).map_err(err)?.answer {
            return Ok(single);
        }
    }
    Err("no target state wins on its own".into())
}

fn synthesize(
    m: &Mdp,
    aq: &AnalysisQuery,
    phases: usize,
    eps: &str,
    limits: &Limits,
) -> Result<(FiniteStrategy, String), String> {
    let init = aq.initial.support();
    let kind = aq.function.kind;
    let t = match (aq.sync, kind) {
        (SyncMode::Eventually | SyncMode::Weakly, FnKind::Max) => winning_singleton(m, aq, limits)?,
        _ => aq.function.target.clone(),
    };
    let name = |q: &StateSet| m.names_of(q).join(",");
    Ok(match (aq.sync, aq.mode) {
        (SyncMode::Always, _) => (synth_always(m, &init, &t, kind).map_err(err)?, "memoryless".into()),
        (SyncMode::Eventually, WinMode::Sure) => {
            let (s, n) = synth_sure_eventually(m, &init, &t, limits).map_err(err)?;
            (s, format!("all mass in {{{}}} at step {n}", name(&t)))
        }
        (SyncMode::Eventually, WinMode::LimitSure) => {
            let eps = parse_rational(eps).map_err(|e| format!("--epsilon: {e}"))?;
            let (s, n) = synth_eventually_epsilon(m, &aq.initial, &t, &m.full_set(), &eps, limits).map_err(err)?;
            (s, format!("mass at least 1 - {} in {{{}}} at step {n}", format_rational(&eps), name(&t)))
        }
        (SyncMode::Weakly, WinMode::Sure) => {
            let (s, reach, period) = synth_sure_weakly(m, &init, &t, limits).map_err(err)?;
            (s, format!("all mass in {{{}}} at step {reach}, then every {period} steps", name(&t)))
        }
        (SyncMode::Eventually | SyncMode::Weakly, _) => {
            let objective = if aq.sync == SyncMode::Eventually { Objective::Eventually } else { Objective::Weakly };
            let sched = synth_almost_sure_schedule(m, &aq.initial, &t, objective, phases, limits).map_err(err)?;
            let ends: Vec<String> = sched.phase_ends.iter().map(usize::to_string).collect();
            let note = format!("{} phases in {{{}}} ending at steps {}", phases, name(&t), ends.join(", "));
            (sched.strategy, note)
        }
        (SyncMode::Strongly, mode) => {
            (synth_strongly(m, &init, &t, kind, mode, limits).map_err(err)?, "strongly synchronizing".into())
        }
    })
}

fn simulate(
    model: &str,
    strategy: &Path,
    from: Option<&str>,
    horizon: usize,
    target: Option<&str>,
    kind: FnKind,
    limits: &Limits,
) -> Outcome {
    let (m, file_initial) = load_model(model)?;
    let d0 = initial(&m, from, file_initial)?;
    let path = strategy.display().to_string();
    let s = parse_strategy(&read(&path)?, &m).map_err(|e| format!("{path}: {e}"))?;
    let f = target.map(|t| target_set(&m, t).map(|target| TargetFunction { kind, target })).transpose()?;
    let seq = symbolic_outcome(&m, &d0, &s, horizon, limits).map_err(err)?;
    let mut header = vec!["step".to_string()];
    header.extend(m.state_names().iter().cloned());
    if let Some(f) = &f {
        header.push(format!("{}({})", f.kind, m.names_of(&f.target).join(",")));
    }
    println!("{}", header.join("\t"));
    for (i, d) in seq.dists.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(d.masses().iter().map(format_rational));
        if let Some(f) = &f {
            row.push(format_rational(&eval_target(d, f).map_err(err)?));
        }
        println!("{}", row.join("\t"));
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Outcome {
    let limits = Limits::from_env();
    match cli.command {
        Command::Check(q) => check(&q, &limits),
        Command::Synthesize { query: q, phases, epsilon, out } => {
            let (m, aq) = query(&q)?;
            if !decide(&m, &aq, &limits).map_err(err)?.answer {
                eprintln!("not winning: no strategy to synthesize");
                return Ok(ExitCode::from(1));
            }
            let (s, note) = synthesize(&m, &aq, phases, &epsilon, &limits)?;
            let text = write_strategy(&s, &m);
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
                    eprintln!("{} modes; {note}", s.num_modes());
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { model, strategy, from, horizon, target, kind } => {
            simulate(&model, &strategy, from.as_deref(), horizon, target.as_deref(), kind.into(), &limits)
        }
        Command::Oracle { model, objective, kind, target, from } => {
            let (m, _) = load_model(&model)?;
            let t = target_set(&m, &target)?;
            let q0 = m.state(&from).map_err(err)?;
            let answer =
                oracle_sure(&m, q0, &t, objective.into(), kind.into(), limits.support_graph_cap).map_err(err)?;
            println!("{answer}");
            Ok(truth(answer))
        }
        Command::Afa { model, query, state } => {
            let a = load_afa(&model)?;
            let q = || {
                let name = state.as_deref().ok_or("this query needs --state")?;
                a.state(name).map_err(err)
            };
            let answer = match query {
                AfaQuery::Emptiness => {
                    if emptiness(&a, q()?, &limits).map_err(err)? {
                        "empty"
                    } else {
                        "nonempty"
                    }
                }
                AfaQuery::Finiteness => {
                    if finiteness(&a, q()?, &limits).map_err(err)? {
                        "finite"
                    } else {
                        "infinite"
                    }
                }
                AfaQuery::UniversalFiniteness => {
                    if universal_finiteness(&a, &limits).map_err(err)? {
                        "finite from every state"
                    } else {
                        "infinite from some state"
                    }
                }
            };
            println!("{answer}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Examples { name: None } => {
            for (name, about) in CATALOG {
                println!("{name:<10} {about}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Examples { name: Some(name) } => {
            match fixture(&name).map_err(err)? {
                Fixture::Mdp(m) => print!("{}", write_model(&m, None)),
                Fixture::Afa(a) => print!("{}", write_afa(&a)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Random { kind, seed, states, actions, branching, clauses, clause_size } => {
            match kind {
                RandomKind::Mdp => {
                    print!("{}", write_model(&random_mdp(seed, states, actions, branching).map_err(err)?, None))
                }
                RandomKind::Afa => {
                    print!("{}", write_afa(&random_afa(seed, states, clauses, clause_size).map_err(err)?))
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
