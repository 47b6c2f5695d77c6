//! `resolvent`: command-line front end for refinement relations, values,
//! history-determinism and resolver-logic model checking.
//!
//! Exit codes: 0 verdict true or value computed, 1 verdict false, 2 error,
//! 3 unknown (a search budget or an unsupported game mode was hit).

mod render;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use resolvent::apps::{self, AppError, HyperSpec, HyperWitness};
use resolvent::game::{observing_game, simulation_game, GameError};
use resolvent::io::{self, IoError, ParseOptions};
use resolvent::logic::{self, Binding, LogicError, Quantifier, Sort};
use resolvent::omega::OmegaError;
use resolvent::product::{full_product, product, Side};
use resolvent::relations::{check, Mode, Relation, RelationError, RelationQuery};
use resolvent::resolver::{resolver_value, ResolverError};
use resolvent::value::{sup_value, top_value};
use resolvent::{Weight, WeightedAutomaton};

use render::RelationContext;

#[derive(Parser)]
#[command(name = "resolvent", version, about = "Resolver-based refinement relations for quantitative automata")]
struct Cli {
    /// Print a JSON verdict document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Omit timing from the output (for reproducible documents).
    #[arg(long, global = true)]
    no_timing: bool,
    /// Complete partial automata with a sink of constant weight W.
    #[arg(long, global = true, value_name = "W")]
    complete_with_sink: Option<Weight>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check an automaton file (and optionally a resolver for it).
    Validate {
        automaton: PathBuf,
        #[arg(long)]
        resolver: Option<PathBuf>,
    },
    /// Value of the run a resolver builds on a lasso word.
    Value {
        automaton: PathBuf,
        #[arg(long)]
        resolver: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Supremum over all runs on a lasso word.
    Sup {
        automaton: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Largest value over all words.
    Top { automaton: PathBuf },
    /// Least supremum value over all words.
    Bottom { automaton: PathBuf },
    /// Decide a refinement relation between two automata.
    CheckRelation {
        relation: String,
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "auto")]
        mode: String,
    },
    /// History-determinism check.
    Hd {
        automaton: PathBuf,
        #[arg(long, default_value = "auto")]
        mode: String,
    },
    /// Model-check a resolver-logic formula.
    Mc {
        formula: PathBuf,
        /// NAME=file.qaut
        #[arg(long = "bind", value_name = "NAME=FILE", required = true)]
        bind: Vec<String>,
        /// pos|fin:k enumerate resolvers; game uses general resolvers; auto
        /// picks general for alternation-free formulas and pos otherwise.
        #[arg(long, default_value = "auto")]
        mode: String,
    },
    /// Hyperproperty inclusion between the resolver languages of A and B.
    HyperInclude {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "pos")]
        class_a: String,
        #[arg(long, default_value = "pos")]
        class_b: String,
    },
    /// Graphviz output: `aut A`, `product A B`, `game A B` (simulation) or
    /// `observing A B`.
    Dot {
        kind: String,
        files: Vec<PathBuf>,
        /// Keep unreachable product states.
        #[arg(long)]
        full_product: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    /// An incomplete mode: budgets, guards, unsupported games.
    #[error("{0}")]
    Unknown(String),
    #[error("{0}")]
    Failed(String),
}

fn relation_incomplete(e: &RelationError) -> bool {
    match e {
        RelationError::Cap(_) | RelationError::Unsupported(_) => true,
        RelationError::Omega(o) => omega_incomplete(o),
        RelationError::Game(g) => game_incomplete(g),
        RelationError::Resolver(r) => resolver_incomplete(r),
        _ => false,
    }
}

fn omega_incomplete(e: &OmegaError) -> bool {
    matches!(e, OmegaError::GuardExceeded { .. })
}

fn game_incomplete(e: &GameError) -> bool {
    matches!(e, GameError::Unsupported(_))
}

fn resolver_incomplete(e: &ResolverError) -> bool {
    matches!(e, ResolverError::EnumerationCap(_))
}

fn logic_incomplete(e: &LogicError) -> bool {
    match e {
        LogicError::BoundOverflow { .. } | LogicError::Unsupported(_) => true,
        LogicError::Relation(r) => relation_incomplete(r),
        LogicError::Omega(o) => omega_incomplete(o),
        LogicError::Resolver(r) => resolver_incomplete(r),
        _ => false,
    }
}

fn app_incomplete(e: &AppError) -> bool {
    match e {
        AppError::Unsupported(_) => true,
        AppError::Omega(o) => omega_incomplete(o),
        AppError::Relation(r) => relation_incomplete(r),
        AppError::Logic(l) => logic_incomplete(l),
        AppError::Game(g) => game_incomplete(g),
        AppError::Resolver(r) => resolver_incomplete(r),
        _ => false,
    }
}

fn classify<E: std::fmt::Display>(e: E, incomplete: bool) -> CliError {
    if incomplete {
        CliError::Unknown(e.to_string())
    } else {
        CliError::Failed(e.to_string())
    }
}

impl From<RelationError> for CliError {
    fn from(e: RelationError) -> Self {
        let i = relation_incomplete(&e);
        classify(e, i)
    }
}

impl From<LogicError> for CliError {
    fn from(e: LogicError) -> Self {
        let i = logic_incomplete(&e);
        classify(e, i)
    }
}

impl From<AppError> for CliError {
    fn from(e: AppError) -> Self {
        let i = app_incomplete(&e);
        classify(e, i)
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        let i = game_incomplete(&e);
        classify(e, i)
    }
}

impl From<ResolverError> for CliError {
    fn from(e: ResolverError) -> Self {
        let i = resolver_incomplete(&e);
        classify(e, i)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    True,
    False,
    Value,
}

struct Outcome {
    verdict: Verdict,
    value: Option<Weight>,
    semantics: String,
    relation: Option<String>,
    witnesses: Vec<Value>,
    details: Option<Value>,
    /// Raw text printed instead of the summary in text mode (DOT).
    raw: Option<String>,
}

impl Outcome {
    fn verdict(holds: bool, semantics: impl Into<String>) -> Self {
        Outcome {
            verdict: if holds { Verdict::True } else { Verdict::False },
            value: None,
            semantics: semantics.into(),
            relation: None,
            witnesses: Vec::new(),
            details: None,
            raw: None,
        }
    }

    fn value(v: Weight, semantics: impl Into<String>) -> Self {
        Outcome { verdict: Verdict::Value, value: Some(v), ..Outcome::verdict(true, semantics) }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))
}

fn io_err(path: &Path, e: IoError) -> CliError {
    CliError::Failed(format!("{}: {e}", path.display()).replace('\n', &format!("\n{}: ", path.display())))
}

fn load(path: &Path, opts: &ParseOptions) -> Result<WeightedAutomaton, CliError> {
    io::parse_automaton_with(&read(path)?, opts).map_err(|e| io_err(path, e))
}

fn mode(s: &str) -> Result<Mode, CliError> {
    s.parse().map_err(|e: RelationError| CliError::Usage(e.to_string()))
}

fn relation(s: &str) -> Result<Relation, CliError> {
    s.replace('-', "_").parse().map_err(|_| {
        let ids: Vec<&str> = Relation::ALL.iter().map(|r| r.id()).collect();
        CliError::Usage(format!("unknown relation {s:?}; expected one of {}", ids.join(", ")))
    })
}

fn word(text: &str, aut: &WeightedAutomaton) -> Result<resolvent::LassoWord, CliError> {
    io::parse_lasso(text, aut.alphabet()).map_err(|e| CliError::Usage(format!("--word: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let opts = ParseOptions { complete_with_sink: cli.complete_with_sink };
    match &cli.command {
        Command::Validate { automaton, resolver } => {
            let text = read(automaton)?;
            match io::parse_automaton_with(&text, &opts) {
                Err(IoError::Parse(es)) => {
                    let mut o = Outcome::verdict(false, "syntax");
                    o.details = Some(json!({
                        "diagnostics": es.iter().map(|e| json!({"line": e.line, "message": e.message})).collect::<Vec<_>>()
                    }));
                    Ok(o)
                }
                Err(e) => Err(io_err(automaton, e)),
                Ok(a) => {
                    let mut o = Outcome::verdict(true, "syntax");
                    let mut details = json!({
                        "automaton": a.name(),
                        "value_function": a.value_fn().name(),
                        "states": a.num_states(),
                        "transitions": a.transitions().len(),
                        "deterministic": a.is_deterministic(),
                    });
                    if let Some(r) = resolver {
                        let res = io::parse_resolver(&read(r)?, &a).map_err(|e| io_err(r, e))?;
                        o.witnesses.push(render::resolver("resolver", &res, &a));
                        details["resolver_memory"] = json!(res.memory_size());
                    }
                    o.details = Some(details);
                    Ok(o)
                }
            }
        }
        Command::Value { automaton, resolver, word: w } => {
            let a = load(automaton, &opts)?;
            let r = io::parse_resolver(&read(resolver)?, &a).map_err(|e| io_err(resolver, e))?;
            let w = word(w, &a)?;
            let (v, run) = resolver_value(&a, &r, &w)?;
            let mut o = Outcome::value(v, "resolver");
            o.witnesses = vec![render::word("word", &w, &a), render::run("run", &run, &a)];
            Ok(o)
        }
        Command::Sup { automaton, word: w } => {
            let a = load(automaton, &opts)?;
            let w = word(w, &a)?;
            let (v, run) = sup_value(&a, &w).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut o = Outcome::value(v, "sup");
            o.witnesses = vec![render::word("word", &w, &a), render::run("run", &run, &a)];
            Ok(o)
        }
        Command::Top { automaton } => {
            let a = load(automaton, &opts)?;
            let t = top_value(&a);
            let mut o = Outcome::value(t.value, "sup");
            o.witnesses = vec![render::word("word", &t.word, &a), render::run("run", &t.run, &a)];
            Ok(o)
        }
        Command::Bottom { automaton } => {
            let a = load(automaton, &opts)?;
            let b = apps::bottom_value(&a)?;
            let mut o = Outcome::value(b.value, "sup");
            o.witnesses = vec![render::word("word", &b.word, &a)];
            Ok(o)
        }
        Command::CheckRelation { relation: rel, a, b, mode: m } => {
            let rel = relation(rel)?;
            let m = mode(m)?;
            let (a, b) = (load(a, &opts)?, load(b, &opts)?);
            let v = check(&RelationQuery::new(rel, &a, &b, m))?;
            let prod = matches!(
                rel,
                Relation::DominanceProd | Relation::BlindProd | Relation::WeakDominanceProd | Relation::WeakBlindProd
            );
            let ctx = RelationContext {
                a: &a,
                b: &b,
                product: if prod { product(&a, &b, Side::Left).ok() } else { None },
            };
            let mut o = Outcome::verdict(v.holds, v.semantics.clone());
            o.relation = Some(rel.id().into());
            o.witnesses = ctx.witness(&v.witness);
            Ok(o)
        }
        Command::Hd { automaton, mode: m } => {
            let a = load(automaton, &opts)?;
            let v = apps::hd_check(&a, mode(m)?)?;
            let mut o = Outcome::verdict(v.holds, v.semantics);
            if let Some(r) = &v.witness {
                o.witnesses.push(render::resolver("resolver", r, &a));
            }
            Ok(o)
        }
        Command::Mc { formula, bind, mode: m } => mc(formula, bind, &mode(m)?, &opts),
        Command::HyperInclude { a, b, class_a, class_b } => {
            let (a, b) = (load(a, &opts)?, load(b, &opts)?);
            let v = apps::hyper_includes(
                &HyperSpec { automaton: &a, class: mode(class_a)? },
                &HyperSpec { automaton: &b, class: mode(class_b)? },
            )?;
            let mut o = Outcome::verdict(v.holds, v.semantics);
            match &v.witness {
                HyperWitness::Matches(pairs) => {
                    for (i, (f, g)) in pairs.iter().enumerate() {
                        o.witnesses.push(render::resolver(&format!("f[{i}]"), f, &a));
                        o.witnesses.push(render::resolver(&format!("g[{i}]"), g, &b));
                    }
                }
                HyperWitness::Unmatched { f, distinctions } => {
                    o.witnesses.push(render::resolver("f", f, &a));
                    for (i, d) in distinctions.iter().enumerate() {
                        o.witnesses.push(render::resolver(&format!("g[{i}]"), &d.g, &b));
                        o.witnesses.push(render::word(&format!("word[{i}]"), &d.word, &a));
                    }
                }
            }
            Ok(o)
        }
        Command::Dot { kind, files, full_product: full } => {
            let autos = files.iter().map(|f| load(f, &opts)).collect::<Result<Vec<_>, _>>()?;
            let need = |n: usize| {
                if autos.len() == n {
                    Ok(())
                } else {
                    Err(CliError::Usage(format!("dot {kind} takes {n} automaton file(s)")))
                }
            };
            let dot = match kind.as_str() {
                "aut" => {
                    need(1)?;
                    io::automaton_dot(&autos[0])
                }
                "product" => {
                    need(2)?;
                    let build = if *full { full_product } else { product };
                    io::product_dot(&build(&autos[0], &autos[1], Side::Left).map_err(|e| CliError::Failed(e.to_string()))?)
                }
                "game" => {
                    need(2)?;
                    io::game_dot(&simulation_game(&autos[0], &autos[1])?.game)
                }
                "observing" => {
                    need(2)?;
                    io::game_dot(&observing_game(&autos[0], &autos[1])?.game)
                }
                k => return Err(CliError::Usage(format!("unknown dot kind {k:?}; expected aut, product, game or observing"))),
            };
            let mut o = Outcome::verdict(true, "dot");
            o.details = Some(json!({ "dot": dot }));
            o.raw = Some(dot);
            Ok(o)
        }
    }
}

fn mc(formula: &Path, bind: &[String], m: &Mode, opts: &ParseOptions) -> Result<Outcome, CliError> {
    let f = logic::parse(&read(formula)?).map_err(|e| CliError::Failed(format!("{}: {e}", formula.display())))?;
    let mut automata = HashMap::new();
    for b in bind {
        let (name, file) =
            b.split_once('=').ok_or_else(|| CliError::Usage(format!("--bind expects NAME=FILE, got {b:?}")))?;
        automata.insert(name.to_string(), load(Path::new(file), opts)?);
    }
    let uniform = f.prefix.windows(2).all(|w| w[0].quantifier == w[1].quantifier);
    let general = match m {
        Mode::Game => true,
        Mode::Auto => uniform,
        _ => false,
    };
    if general {
        let v = logic::decide_by_tree(&f, &automata)?;
        let mut o = Outcome::verdict(v.holds, v.semantics);
        o.details = Some(json!({
            "backend": "tree",
            "tree_states": v.states,
            "tree_transitions": v.transitions,
            "negated": v.negated,
        }));
        return Ok(o);
    }
    let e = logic::evaluate(&f, &automata, *m)?;
    let mut o = Outcome::verdict(e.holds, e.semantics.clone());
    let any = automata.values().next();
    for (var, binding) in e.decisive_bindings() {
        let binder = f.prefix.iter().find(|b| b.var == var).expect("bound variable");
        match (&binding, &binder.sort) {
            (Binding::Resolver(r), Sort::Resolver(a)) => o.witnesses.push(render::resolver(&var, r, &automata[a])),
            (Binding::Word(w), _) => o.witnesses.push(render::word(&var, w, any.expect("bound automaton"))),
            _ => {}
        }
    }
    let quantifiers: String =
        f.prefix.iter().map(|b| if b.quantifier == Quantifier::Exists { '∃' } else { '∀' }).collect();
    o.details = Some(json!({ "backend": "evaluator", "prefix": quantifiers }));
    Ok(o)
}

fn document(command: &str, result: &Result<Outcome, CliError>, ms: Option<f64>) -> Value {
    let mut doc = json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "timing": ms.map(|ms| json!({ "ms": ms })),
    });
    match result {
        Ok(o) => {
            doc["verdict"] = match o.verdict {
                Verdict::True => json!(true),
                Verdict::False => json!(false),
                Verdict::Value => Value::Null,
            };
            doc["semantics"] = json!(o.semantics);
            doc["witnesses"] = json!(o.witnesses);
            if let Some(v) = o.value {
                doc["value"] = json!(v);
            }
            if let Some(r) = &o.relation {
                doc["relation"] = json!(r);
            }
            if let Some(d) = &o.details {
                doc["details"] = d.clone();
            }
        }
        Err(CliError::Unknown(reason)) => {
            doc["verdict"] = json!("unknown");
            doc["semantics"] = json!("incomplete");
            doc["witnesses"] = json!([]);
            doc["reason"] = json!(reason);
        }
        Err(e) => {
            doc["verdict"] = Value::Null;
            doc["error"] = json!(e.to_string());
        }
    }
    doc
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Value { .. } => "value",
        Command::Sup { .. } => "sup",
        Command::Top { .. } => "top",
        Command::Bottom { .. } => "bottom",
        Command::CheckRelation { .. } => "check-relation",
        Command::Hd { .. } => "hd",
        Command::Mc { .. } => "mc",
        Command::HyperInclude { .. } => "hyper-include",
        Command::Dot { .. } => "dot",
    }
}

fn print_text(result: &Result<Outcome, CliError>) {
    match result {
        Ok(o) => {
            if let Some(raw) = &o.raw {
                print!("{raw}");
                return;
            }
            match o.verdict {
                Verdict::Value => println!("value: {}", o.value.unwrap_or_default()),
                Verdict::True => println!("verdict: true"),
                Verdict::False => println!("verdict: false"),
            }
            if let Some(r) = &o.relation {
                println!("relation: {r}");
            }
            println!("semantics: {}", o.semantics);
            for w in &o.witnesses {
                println!("{}", render::text(w));
            }
            if let Some(Value::Object(d)) = &o.details {
                for (k, v) in d {
                    match v {
                        Value::Array(items) => {
                            for i in items {
                                println!("{k}: {}", i.get("message").and_then(Value::as_str).map_or(i.to_string(), |m| {
                                    format!("line {}: {m}", i["line"])
                                }));
                            }
                        }
                        Value::String(s) => println!("{k}: {s}"),
                        v => println!("{k}: {v}"),
                    }
                }
            }
        }
        Err(CliError::Unknown(reason)) => {
            println!("verdict: unknown");
            println!("reason: {reason}");
        }
        Err(_) => {}
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    let ms = (!cli.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3);
    if cli.json {
        let doc = document(command_name(&cli.command), &result, ms);
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        print_text(&result);
    }
    match &result {
        Ok(o) if o.verdict == Verdict::False => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(CliError::Unknown(_)) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
