//! Decision procedures for the resolver-based refinement relations.
//!
//! Every relation is decided in one of four modes. `pos` and `fin:k`
//! quantify over positional or `k`-memory resolvers by enumeration;
//! `game` uses parity games with general resolvers where those are exact;
//! `auto` runs the strongest semantics available. Each verdict carries the
//! label of the semantics that actually ran.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{ValueFn, WeightedAutomaton};
use crate::game::{blind_game, determinize, letter_game, observing_game, simulation_game, GameError};
use crate::graph::Graph;
use crate::lasso::LassoWord;
use crate::monitor::{compile, Cmp, ParityMonitor};
use crate::omega::{includes_with_guard, OmegaError, DEFAULT_GUARD};
use crate::product::{combine, enumerate_component_positional, product, ComponentResolver, ProductAutomaton, ProductError, Side};
use crate::resolver::{apply, count_positional, enumerate_finite, enumerate_positional, Resolver, ResolverError};
use crate::Weight;

/// Default limit on enumerated resolvers (or resolver pairs) per query.
pub const DEFAULT_CAP: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Inclusion,
    Simulation,
    Dominance,
    Blind,
    WeakDominance,
    WeakBlind,
    DominanceProd,
    BlindProd,
    WeakDominanceProd,
    WeakBlindProd,
}

impl Relation {
    pub const ALL: [Relation; 10] = [
        Relation::Inclusion,
        Relation::Simulation,
        Relation::Dominance,
        Relation::Blind,
        Relation::WeakDominance,
        Relation::WeakBlind,
        Relation::DominanceProd,
        Relation::BlindProd,
        Relation::WeakDominanceProd,
        Relation::WeakBlindProd,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Relation::Inclusion => "inclusion",
            Relation::Simulation => "simulation",
            Relation::Dominance => "dominance",
            Relation::Blind => "blind",
            Relation::WeakDominance => "weak_dominance",
            Relation::WeakBlind => "weak_blind",
            Relation::DominanceProd => "dominance_prod",
            Relation::BlindProd => "blind_prod",
            Relation::WeakDominanceProd => "weak_dominance_prod",
            Relation::WeakBlindProd => "weak_blind_prod",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Inclusion => "⊆",
            Relation::Simulation => "≼",
            Relation::Dominance => "⊑",
            Relation::Blind => "⊴",
            Relation::WeakDominance => "⊑~",
            Relation::WeakBlind => "⊴~",
            Relation::DominanceProd => "⊑×",
            Relation::BlindProd => "⊴×",
            Relation::WeakDominanceProd => "⊑~×",
            Relation::WeakBlindProd => "⊴~×",
        }
    }

    pub fn is_weak(self) -> bool {
        matches!(
            self,
            Relation::WeakDominance | Relation::WeakBlind | Relation::WeakDominanceProd | Relation::WeakBlindProd
        )
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Relation {
    type Err = RelationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Relation::ALL.into_iter().find(|r| r.id() == s).ok_or_else(|| RelationError::UnknownRelation(s.into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Pos,
    Fin(usize),
    Game,
    Auto,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Pos => f.write_str("pos"),
            Mode::Fin(k) => write!(f, "fin:{k}"),
            Mode::Game => f.write_str("game"),
            Mode::Auto => f.write_str("auto"),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Mode {
    type Err = RelationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pos" => Ok(Mode::Pos),
            "game" => Ok(Mode::Game),
            "auto" => Ok(Mode::Auto),
            _ => s
                .strip_prefix("fin:")
                .or_else(|| s.strip_prefix("fin"))
                .and_then(|k| k.parse().ok())
                .filter(|&k| k >= 1)
                .map(Mode::Fin)
                .ok_or_else(|| RelationError::UnknownMode(s.into())),
        }
    }
}

#[derive(Debug, Error)]
pub enum RelationError {
    #[error("unknown relation {0:?}")]
    UnknownRelation(String),
    #[error("unknown mode {0:?}")]
    UnknownMode(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("unsupported mode: {0}")]
    Unsupported(String),
    #[error("enumeration exceeds the cap of {0}")]
    Cap(usize),
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Resolver(#[from] ResolverError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

/// A resolver of one automaton, or of one side of a product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    Plain(Resolver),
    Component(ComponentResolver),
}

/// A resolver pair and a word on which the left value exceeds the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defeat {
    pub f: Option<Strategy>,
    pub g: Option<Strategy>,
    pub word: LassoWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    /// A word with `A_sup(w) > B_sup(w)` (restricted to the mode's resolvers).
    Word(LassoWord),
    /// The right resolver of an existential claim (`⊴`, `⊴×`).
    Dominator(Strategy),
    /// For each left resolver, a right resolver answering it.
    Answers(Vec<(Strategy, Strategy)>),
    /// A left resolver no right resolver answers, with one defeat per
    /// enumerated right resolver (empty for general right resolvers).
    Unanswered { f: Strategy, defeats: Vec<Defeat> },
    /// For every enumerated right resolver, a defeating left resolver.
    NoDominator(Vec<Defeat>),
}

#[derive(Clone, Debug)]
pub struct RelationQuery<'a> {
    pub relation: Relation,
    pub left: &'a WeightedAutomaton,
    pub right: &'a WeightedAutomaton,
    pub mode: Mode,
    pub cap: usize,
    pub guard: usize,
}

impl<'a> RelationQuery<'a> {
    pub fn new(relation: Relation, left: &'a WeightedAutomaton, right: &'a WeightedAutomaton, mode: Mode) -> Self {
        RelationQuery { relation, left, right, mode, cap: DEFAULT_CAP, guard: DEFAULT_GUARD }
    }
}

#[derive(Clone, Debug)]
pub struct RelationVerdict {
    pub relation: Relation,
    pub mode: Mode,
    pub holds: bool,
    /// The semantics actually decided, e.g. `⊑[A:pos, B:general]`.
    pub semantics: String,
    pub witness: Witness,
}

/// Resolver classes that can be enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Pos,
    Fin(usize),
}

impl Class {
    fn of(mode: Mode) -> Option<Class> {
        match mode {
            Mode::Pos | Mode::Fin(1) => Some(Class::Pos),
            Mode::Fin(k) => Some(Class::Fin(k)),
            _ => None,
        }
    }

    fn label(self) -> String {
        match self {
            Class::Pos => "pos".into(),
            Class::Fin(k) => format!("fin:{k}"),
        }
    }
}

/// Resolvers of a class together with the deterministic automata they
/// induce, one resolver per distinct behaviour.
struct Resolved {
    resolvers: Vec<Resolver>,
    automata: Vec<WeightedAutomaton>,
}

/// Resolvers of `aut` in the class of `mode` (`pos` or `fin:k`), one per
/// distinct behaviour, with the automata they induce.
pub(crate) fn class_members(
    aut: &WeightedAutomaton,
    mode: Mode,
    cap: usize,
) -> Result<(Vec<Resolver>, Vec<WeightedAutomaton>), RelationError> {
    let class = Class::of(mode).ok_or_else(|| RelationError::Unsupported(format!("{mode} is not an enumerable class")))?;
    let r = resolve_class(aut, class, cap)?;
    Ok((r.resolvers, r.automata))
}

fn resolve_class(aut: &WeightedAutomaton, class: Class, cap: usize) -> Result<Resolved, RelationError> {
    let resolvers: Vec<Resolver> = match class {
        Class::Pos => {
            if count_positional(aut) > cap as u128 {
                return Err(RelationError::Cap(cap));
            }
            enumerate_positional(aut).map(Resolver::from).collect()
        }
        Class::Fin(k) => enumerate_finite(aut, k, cap)?.into_iter().map(Resolver::from).collect(),
    };
    let mut seen = std::collections::HashSet::new();
    let mut out = Resolved { resolvers: Vec::new(), automata: Vec::new() };
    for r in resolvers {
        let d = apply(aut, &r)?.automaton;
        let key = format!("{:?}", d.minimize_deterministic().expect("resolved automata are deterministic").transitions());
        if seen.insert(key) {
            out.resolvers.push(r);
            out.automata.push(d);
        }
    }
    Ok(out)
}

/// A reachable lasso of a deterministic two-track system on which the
/// monitor condition fails.
fn refute<S: Copy + Eq + std::hash::Hash>(
    start: S,
    n_letters: usize,
    mon: &ParityMonitor,
    step: impl Fn(S, usize) -> (S, Weight, Weight),
) -> Option<LassoWord> {
    let mut ids: HashMap<(S, usize), usize> = HashMap::from([((start, mon.initial()), 0)]);
    let mut keys = vec![(start, mon.initial())];
    let mut g = Graph::new(1);
    let mut i = 0;
    while i < keys.len() {
        let (s, m) = keys[i];
        for a in 0..n_letters {
            let (s2, wl, wr) = step(s, a);
            let (m2, pr) = mon.step(m, wl, wr).expect("monitor covers both weight sets");
            let key = (s2, m2);
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    keys.push(key);
                    ids.insert(key, keys.len() - 1);
                    g.add_node()
                }
            };
            g.add_edge(i, id, a, pr);
        }
        i += 1;
    }
    let l = g.odd_max_cycle(0)?;
    let letters = |es: &[usize]| es.iter().map(|&e| g.edges[e].label).collect::<Vec<_>>();
    Some(LassoWord::new(letters(&l.stem), letters(&l.cycle)).expect("nonempty cycle"))
}

fn le_monitor(a: &WeightedAutomaton, b: &WeightedAutomaton) -> ParityMonitor {
    compile(a.value_fn(), b.value_fn(), Cmp::Le, &a.weights(), &b.weights())
}

/// A word with `D(w) > E(w)` for deterministic `D`, `E`.
fn det_refute(d: &WeightedAutomaton, e: &WeightedAutomaton, mon: &ParityMonitor) -> Option<LassoWord> {
    refute((d.initial(), e.initial()), d.num_letters(), mon, |(p, q), a| {
        let (x, y) = (d.succ(p, a)[0], e.succ(q, a)[0]);
        ((x.dst, y.dst), x.weight, y.weight)
    })
}

/// A word on which the limit form of a deterministic automaton reaches `v`
/// while every limit form in `others` stays below `v`.
fn beats_all(d: &WeightedAutomaton, others: &[WeightedAutomaton], v: Weight) -> Option<LassoWord> {
    let nl = d.num_letters();
    let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let start = (d.initial(), others.iter().map(|o| o.initial()).collect::<Vec<_>>());
    ids.insert(start.clone(), 0);
    let mut keys = vec![start];
    let mut g = Graph::new(1);
    // Per edge: left weight and the weights of all right tracks.
    let mut ws: Vec<(Weight, Vec<Weight>)> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (p, qs) = keys[i].clone();
        for a in 0..nl {
            let x = d.succ(p, a)[0];
            let ys: Vec<_> = qs.iter().zip(others).map(|(&q, o)| o.succ(q, a)[0]).collect();
            let key = (x.dst, ys.iter().map(|t| t.dst).collect::<Vec<_>>());
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    keys.push(key.clone());
                    ids.insert(key, keys.len() - 1);
                    g.add_node()
                }
            };
            g.add_edge(i, id, a, 0);
            ws.push((x.weight, ys.iter().map(|t| t.weight).collect()));
        }
        i += 1;
    }
    let ws = &ws;
    let left_sup = d.value_fn() == ValueFn::LimSup;
    let right_sup = others.first().is_none_or(|o| o.value_fn() == ValueFn::LimSup);
    let keep = |e: usize| (left_sup || ws[e].0 >= v) && (!right_sup || ws[e].1.iter().all(|&w| w < v));
    let left_class = |e: usize| ws[e].0 >= v;
    let right_classes: Vec<Box<dyn Fn(usize) -> bool + '_>> = if right_sup {
        Vec::new()
    } else {
        (0..others.len()).map(|k| Box::new(move |e: usize| ws[e].1[k] < v) as Box<dyn Fn(usize) -> bool>).collect()
    };
    let mut classes: Vec<&dyn Fn(usize) -> bool> = right_classes.iter().map(|c| c.as_ref()).collect();
    if left_sup {
        classes.push(&left_class);
    }
    let l = g.generalized_lasso(0, &keep, &classes)?;
    let letters = |es: &[usize]| es.iter().map(|&e| g.edges[e].label).collect::<Vec<_>>();
    Some(LassoWord::new(letters(&l.stem), letters(&l.cycle)).expect("nonempty cycle"))
}

fn limit_form(d: &WeightedAutomaton) -> WeightedAutomaton {
    d.normalize().automaton
}

/// Limit forms of deterministic automata, one per distinct behaviour.
fn distinct_limit_forms(ds: &[WeightedAutomaton]) -> Vec<WeightedAutomaton> {
    let mut seen = BTreeMap::new();
    for d in ds {
        let m = d.minimize_deterministic().expect("resolved automata are deterministic");
        seen.entry(format!("{:?}", m.transitions())).or_insert_with(|| limit_form(&m));
    }
    seen.into_values().collect()
}

/// `∀w: max_f A^f(w) <= max_g B^g(w)` over the given deterministic automata.
fn class_inclusion(ra: &[WeightedAutomaton], rb: &[WeightedAutomaton]) -> Option<LassoWord> {
    let others = distinct_limit_forms(rb);
    let floor = others.iter().flat_map(|o| o.weights()).min().unwrap_or(0);
    for d in distinct_limit_forms(ra) {
        for v in d.weights().into_iter().rev().filter(|&v| v > floor) {
            if let Some(w) = beats_all(&d, &others, v) {
                return Some(w);
            }
        }
    }
    None
}

fn product_setting(a: &WeightedAutomaton, b: &WeightedAutomaton, cap: usize) -> Result<(ProductAutomaton, Vec<ComponentResolver>, Vec<ComponentResolver>), RelationError> {
    let prod = product(a, b, Side::Left)?;
    let count = |side: Side| -> u128 {
        let mut c: u128 = 1;
        for s in 0..prod.automaton.num_states() {
            for x in 0..prod.automaton.num_letters() {
                c = c.saturating_mul(prod.side_options(s, x, side).len() as u128);
            }
        }
        c
    };
    if count(Side::Left).saturating_mul(count(Side::Right)) > cap as u128 {
        return Err(RelationError::Cap(cap));
    }
    let fs = enumerate_component_positional(&prod, Side::Left);
    let gs = enumerate_component_positional(&prod, Side::Right);
    Ok((prod, fs, gs))
}

/// A word on which the left track of a resolved product exceeds the right.
fn product_refute(prod: &ProductAutomaton, f: &ComponentResolver, g: &ComponentResolver, mon: &ParityMonitor) -> Result<Option<LassoWord>, RelationError> {
    let r = combine(prod, f, g)?;
    let aut = &prod.automaton;
    Ok(refute((aut.initial(), r.initial_memory()), aut.num_letters(), mon, |(s, m), a| {
        let (t, m2) = r.step(m, s, a);
        let (wl, wr) = prod.weights_of(s, a, t).expect("resolver picks product edges");
        ((t, m2), wl, wr)
    }))
}

/// Decides a relation query.
pub fn check(q: &RelationQuery) -> Result<RelationVerdict, RelationError> {
    let (a, b) = (q.left, q.right);
    if a.alphabet() != b.alphabet() {
        return Err(RelationError::AlphabetMismatch);
    }
    let verdict = |holds: bool, semantics: String, witness: Witness| RelationVerdict {
        relation: q.relation,
        mode: q.mode,
        holds,
        semantics,
        witness,
    };
    let sym = q.relation.symbol();
    match q.relation {
        Relation::Inclusion
        | Relation::WeakDominance
        | Relation::WeakBlind
        | Relation::WeakDominanceProd
        | Relation::WeakBlindProd => {
            let via = if q.relation.is_weak() { " = ⊆" } else { "" };
            match Class::of(q.mode) {
                Some(c) => {
                    let ra = resolve_class(a, c, q.cap)?;
                    let rb = resolve_class(b, c, q.cap)?;
                    let w = class_inclusion(&ra.automata, &rb.automata);
                    let label = format!("{sym}[{}{via}]", c.label());
                    Ok(verdict(w.is_none(), label, w.map_or(Witness::None, Witness::Word)))
                }
                None => {
                    let inc = includes_with_guard(a, b, q.guard)?;
                    let label = format!("{sym}[general{via}]");
                    Ok(verdict(inc.holds, label, inc.counterexample.map_or(Witness::None, Witness::Word)))
                }
            }
        }
        Relation::Simulation => {
            let s = simulation_game(a, b)?;
            Ok(verdict(s.eve_wins(), format!("{sym}[game]"), Witness::None))
        }
        Relation::DominanceProd => match Class::of(q.mode) {
            Some(Class::Pos) => dominance_prod_pos(q, verdict),
            Some(Class::Fin(k)) => Err(RelationError::Unsupported(format!(
                "{} needs product resolvers; fin:{k} is only available as pos (fin:1) or game",
                q.relation
            ))),
            None => {
                let s = simulation_game(a, b)?;
                Ok(verdict(s.eve_wins(), format!("{sym}[game, = ≼]"), Witness::None))
            }
        },
        Relation::BlindProd => match Class::of(q.mode) {
            Some(Class::Pos) => blind_prod_pos(q, verdict),
            Some(Class::Fin(k)) => Err(RelationError::Unsupported(format!(
                "{} needs product resolvers; fin:{k} is only available as pos (fin:1) or game",
                q.relation
            ))),
            None => {
                let s = observing_game(a, b)?;
                Ok(verdict(s.eve_wins(), format!("{sym}[game]"), Witness::None))
            }
        },
        Relation::Dominance => {
            let (outer, inner_general) = match Class::of(q.mode) {
                Some(c) => (c, false),
                None => (Class::Pos, true),
            };
            let ra = resolve_class(a, outer, q.cap)?;
            if inner_general {
                let mut answers = Vec::new();
                for (f, d) in ra.resolvers.iter().zip(&ra.automata) {
                    let lg = letter_game(b, d, Cmp::Le)?;
                    if !lg.eve_wins() {
                        let w = Witness::Unanswered { f: Strategy::Plain(f.clone()), defeats: Vec::new() };
                        return Ok(verdict(false, format!("{sym}[A:pos, B:general]"), w));
                    }
                    answers.push((Strategy::Plain(f.clone()), Strategy::Plain(lg.resolver(b, d).into())));
                }
                return Ok(verdict(true, format!("{sym}[A:pos, B:general]"), Witness::Answers(answers)));
            }
            let rb = resolve_class(b, outer, q.cap)?;
            let mon = le_monitor(a, b);
            let label = format!("{sym}[A:{0}, B:{0}]", outer.label());
            let mut answers = Vec::new();
            for (f, d) in ra.resolvers.iter().zip(&ra.automata) {
                let mut defeats = Vec::new();
                let mut answer = None;
                for (g, e) in rb.resolvers.iter().zip(&rb.automata) {
                    match det_refute(d, e, &mon) {
                        None => {
                            answer = Some(g.clone());
                            break;
                        }
                        Some(word) => defeats.push(Defeat { f: None, g: Some(Strategy::Plain(g.clone())), word }),
                    }
                }
                match answer {
                    Some(g) => answers.push((Strategy::Plain(f.clone()), Strategy::Plain(g))),
                    None => return Ok(verdict(false, label, Witness::Unanswered { f: Strategy::Plain(f.clone()), defeats })),
                }
            }
            Ok(verdict(true, label, Witness::Answers(answers)))
        }
        Relation::Blind => {
            let class = match (q.mode, Class::of(q.mode)) {
                (_, Some(c)) => c,
                (Mode::Game, None) => return blind_general(q, verdict),
                _ => match determinize(a) {
                    Ok(_) => return blind_general(q, verdict),
                    Err(GameError::Unsupported(_)) => Class::Pos,
                    Err(e) => return Err(e.into()),
                },
            };
            let ra = resolve_class(a, class, q.cap)?;
            let rb = resolve_class(b, class, q.cap)?;
            let mon = le_monitor(a, b);
            let label = format!("{sym}[A:{0}, B:{0}]", class.label());
            let mut defeats = Vec::new();
            'g: for (g, e) in rb.resolvers.iter().zip(&rb.automata) {
                for (f, d) in ra.resolvers.iter().zip(&ra.automata) {
                    if let Some(word) = det_refute(d, e, &mon) {
                        defeats.push(Defeat { f: Some(Strategy::Plain(f.clone())), g: Some(Strategy::Plain(g.clone())), word });
                        continue 'g;
                    }
                }
                return Ok(verdict(true, label, Witness::Dominator(Strategy::Plain(g.clone()))));
            }
            Ok(verdict(false, label, Witness::NoDominator(defeats)))
        }
    }
}

fn blind_general(q: &RelationQuery, verdict: impl Fn(bool, String, Witness) -> RelationVerdict) -> Result<RelationVerdict, RelationError> {
    let (lg, d) = blind_game(q.left, q.right)?;
    let label = format!("{}[A:general, B:general]", q.relation.symbol());
    if lg.eve_wins() {
        let g = lg.resolver(q.right, &d);
        Ok(verdict(true, label, Witness::Dominator(Strategy::Plain(g.into()))))
    } else {
        Ok(verdict(false, label, Witness::None))
    }
}

fn dominance_prod_pos(q: &RelationQuery, verdict: impl Fn(bool, String, Witness) -> RelationVerdict) -> Result<RelationVerdict, RelationError> {
    let (prod, fs, gs) = product_setting(q.left, q.right, q.cap)?;
    let mon = le_monitor(q.left, q.right);
    let label = format!("{}[pos, pos]", q.relation.symbol());
    let mut answers = Vec::new();
    for f in &fs {
        let mut defeats = Vec::new();
        let mut answer = None;
        for g in &gs {
            match product_refute(&prod, f, g, &mon)? {
                None => {
                    answer = Some(g.clone());
                    break;
                }
                Some(word) => defeats.push(Defeat { f: None, g: Some(Strategy::Component(g.clone())), word }),
            }
        }
        match answer {
            Some(g) => answers.push((Strategy::Component(f.clone()), Strategy::Component(g))),
            None => return Ok(verdict(false, label, Witness::Unanswered { f: Strategy::Component(f.clone()), defeats })),
        }
    }
    Ok(verdict(true, label, Witness::Answers(answers)))
}

fn blind_prod_pos(q: &RelationQuery, verdict: impl Fn(bool, String, Witness) -> RelationVerdict) -> Result<RelationVerdict, RelationError> {
    let (prod, fs, gs) = product_setting(q.left, q.right, q.cap)?;
    let mon = le_monitor(q.left, q.right);
    let label = format!("{}[pos, pos]", q.relation.symbol());
    let mut defeats = Vec::new();
    'g: for g in &gs {
        for f in &fs {
            if let Some(word) = product_refute(&prod, f, g, &mon)? {
                defeats.push(Defeat { f: Some(Strategy::Component(f.clone())), g: Some(Strategy::Component(g.clone())), word });
                continue 'g;
            }
        }
        return Ok(verdict(true, label, Witness::Dominator(Strategy::Component(g.clone()))));
    }
    Ok(verdict(false, label, Witness::NoDominator(defeats)))
}

/// Every relation decided on one pair, and the implications violated.
#[derive(Clone, Debug)]
pub struct AuditReport {
    pub verdicts: Vec<RelationVerdict>,
    pub violations: Vec<String>,
}

impl AuditReport {
    pub fn get(&self, r: Relation) -> Option<&RelationVerdict> {
        self.verdicts.iter().find(|v| v.relation == r)
    }
}

/// Checks `⊴ ⇒ ⊴× ⇒ ⊑× ⇒ ⊑ ⇒ ⊆`, `⊑× ⇔ ≼` (outside enumeration modes,
/// where `≼` has no restricted form) and the collapse of the weak
/// relations onto `⊆`.
pub fn implication_audit(a: &WeightedAutomaton, b: &WeightedAutomaton, mode: Mode) -> Result<AuditReport, RelationError> {
    let mut verdicts = Vec::new();
    for r in Relation::ALL {
        if r == Relation::Simulation && Class::of(mode).is_some() {
            continue;
        }
        verdicts.push(check(&RelationQuery::new(r, a, b, mode))?);
    }
    let holds = |r: Relation| verdicts.iter().find(|v| v.relation == r).map(|v| v.holds);
    let mut violations = Vec::new();
    let chain = [Relation::Blind, Relation::BlindProd, Relation::DominanceProd, Relation::Dominance, Relation::Inclusion];
    for w in chain.windows(2) {
        if holds(w[0]) == Some(true) && holds(w[1]) == Some(false) {
            violations.push(format!("{} holds but {} does not", w[0].symbol(), w[1].symbol()));
        }
    }
    if let (Some(x), Some(y)) = (holds(Relation::DominanceProd), holds(Relation::Simulation)) {
        if x != y {
            violations.push(format!("⊑× is {x} but ≼ is {y}"));
        }
    }
    for r in Relation::ALL.into_iter().filter(|r| r.is_weak()) {
        if holds(r) != holds(Relation::Inclusion) {
            violations.push(format!("{} differs from ⊆", r.symbol()));
        }
    }
    Ok(AuditReport { verdicts, violations })
}
