use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{Weight, MAX_WEIGHT};

/// Value function applied to the weight sequence of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ValueFn {
    Inf,
    Sup,
    LimInf,
    LimSup,
}

impl ValueFn {
    pub const ALL: [ValueFn; 4] = [ValueFn::Inf, ValueFn::Sup, ValueFn::LimInf, ValueFn::LimSup];

    pub fn name(self) -> &'static str {
        match self {
            ValueFn::Inf => "Inf",
            ValueFn::Sup => "Sup",
            ValueFn::LimInf => "LimInf",
            ValueFn::LimSup => "LimSup",
        }
    }

    /// Parses a value function keyword. Boolean aliases map to their
    /// quantitative encoding and report `true` in the second component.
    pub fn parse(s: &str) -> Option<(ValueFn, bool)> {
        Some(match s {
            "Inf" => (ValueFn::Inf, false),
            "Sup" => (ValueFn::Sup, false),
            "LimInf" => (ValueFn::LimInf, false),
            "LimSup" => (ValueFn::LimSup, false),
            "Safety" => (ValueFn::Inf, true),
            "Reachability" => (ValueFn::Sup, true),
            "Buchi" => (ValueFn::LimSup, true),
            "CoBuchi" => (ValueFn::LimInf, true),
            _ => return None,
        })
    }

    pub fn is_limit(self) -> bool {
        matches!(self, ValueFn::LimInf | ValueFn::LimSup)
    }

    /// The limit value function a tracker normalization yields.
    pub fn normalized(self) -> ValueFn {
        match self {
            ValueFn::Inf | ValueFn::LimInf => ValueFn::LimInf,
            ValueFn::Sup | ValueFn::LimSup => ValueFn::LimSup,
        }
    }
}

impl fmt::Display for ValueFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub src: usize,
    pub letter: usize,
    pub weight: Weight,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DiagnosticKind {
    NotTotal,
    UnknownState,
    UnknownLetter,
    DuplicateTransition,
    WeightTooLarge,
    EmptyAlphabet,
    NoStates,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Error)]
pub enum AutomatonError {
    #[error("invalid automaton: {}", .0.iter().map(|d| d.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("alphabet mismatch: {0:?} vs {1:?}")]
    AlphabetMismatch(Vec<String>, Vec<String>),
}

/// A weighted automaton `(Σ, Q, s, Δ, μ, ν)`.
///
/// Letters and states are dense indices; names are kept for printing.
/// Transitions are sorted by `(src, letter, dst)` and indexed per
/// `(src, letter)` so successor lookups are slices.
#[derive(Clone, Debug)]
pub struct WeightedAutomaton {
    name: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: usize,
    transitions: Vec<Transition>,
    value_fn: ValueFn,
    index: Vec<Range<usize>>,
}

impl WeightedAutomaton {
    /// Builds an automaton from indexed parts, rejecting every invariant violation.
    pub fn new(
        name: impl Into<String>,
        alphabet: Vec<String>,
        states: Vec<String>,
        initial: usize,
        transitions: Vec<Transition>,
        value_fn: ValueFn,
    ) -> Result<Self, AutomatonError> {
        let diags = diagnose_indexed(&alphabet, &states, initial, &transitions);
        if !diags.is_empty() {
            return Err(AutomatonError::Invalid(diags));
        }
        Ok(Self::assemble(name.into(), alphabet, states, initial, transitions, value_fn))
    }

    fn assemble(
        name: String,
        alphabet: Vec<String>,
        states: Vec<String>,
        initial: usize,
        mut transitions: Vec<Transition>,
        value_fn: ValueFn,
    ) -> Self {
        transitions.sort_by_key(|t| (t.src, t.letter, t.dst));
        transitions.dedup();
        let nl = alphabet.len();
        let mut index = vec![0..0; states.len() * nl];
        let mut i = 0;
        while i < transitions.len() {
            let key = transitions[i].src * nl + transitions[i].letter;
            let start = i;
            while i < transitions.len() && transitions[i].src * nl + transitions[i].letter == key {
                i += 1;
            }
            index[key] = start..i;
        }
        WeightedAutomaton { name, alphabet, states, initial, transitions, value_fn, index }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }
    pub fn states(&self) -> &[String] {
        &self.states
    }
    pub fn num_states(&self) -> usize {
        self.states.len()
    }
    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }
    pub fn initial(&self) -> usize {
        self.initial
    }
    pub fn value_fn(&self) -> ValueFn {
        self.value_fn
    }
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }
    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }
    pub fn letter_name(&self, a: usize) -> &str {
        &self.alphabet[a]
    }
    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }
    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    /// Outgoing transitions of `q` on letter `a`, sorted by target.
    pub fn succ(&self, q: usize, a: usize) -> &[Transition] {
        &self.transitions[self.index[q * self.alphabet.len() + a].clone()]
    }

    /// The transition `(q, a, dst)` if it exists.
    pub fn transition(&self, q: usize, a: usize, dst: usize) -> Option<&Transition> {
        let s = self.succ(q, a);
        s.binary_search_by_key(&dst, |t| t.dst).ok().map(|i| &s[i])
    }

    /// Sorted set of weights occurring on transitions.
    pub fn weights(&self) -> Vec<Weight> {
        let set: BTreeSet<Weight> = self.transitions.iter().map(|t| t.weight).collect();
        set.into_iter().collect()
    }

    pub fn max_weight(&self) -> Weight {
        self.transitions.iter().map(|t| t.weight).max().unwrap_or(0)
    }

    /// True iff every `(state, letter)` has exactly one transition.
    pub fn is_deterministic(&self) -> bool {
        self.index.iter().all(|r| r.len() == 1)
    }

    /// Invariant check on an already built automaton; always empty for values
    /// produced by [`WeightedAutomaton::new`], kept for symmetry with specs.
    pub fn validate(&self) -> Vec<Diagnostic> {
        diagnose_indexed(&self.alphabet, &self.states, self.initial, &self.transitions)
    }

    pub fn same_alphabet(&self, other: &WeightedAutomaton) -> Result<(), AutomatonError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(AutomatonError::AlphabetMismatch(self.alphabet.clone(), other.alphabet.clone()))
        }
    }

    /// Same graph, different value function.
    pub fn with_value_fn(&self, value_fn: ValueFn) -> WeightedAutomaton {
        let mut a = self.clone();
        a.value_fn = value_fn;
        a
    }

    /// Same graph with every weight rewritten.
    pub fn map_weights(&self, f: impl Fn(&Transition) -> Weight) -> WeightedAutomaton {
        let ts = self.transitions.iter().map(|t| Transition { weight: f(t), ..*t }).collect();
        Self::assemble(
            self.name.clone(),
            self.alphabet.clone(),
            self.states.clone(),
            self.initial,
            ts,
            self.value_fn,
        )
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for a in 0..self.num_letters() {
                for t in self.succ(q, a) {
                    if !seen[t.dst] {
                        seen[t.dst] = true;
                        stack.push(t.dst);
                    }
                }
            }
        }
        seen
    }

    /// Restriction to reachable states, renumbered in index order.
    pub fn trim(&self) -> WeightedAutomaton {
        let reach = self.reachable();
        let mut map = vec![usize::MAX; self.num_states()];
        let mut states = Vec::new();
        for q in 0..self.num_states() {
            if reach[q] {
                map[q] = states.len();
                states.push(self.states[q].clone());
            }
        }
        let ts = self
            .transitions
            .iter()
            .filter(|t| reach[t.src])
            .map(|t| Transition { src: map[t.src], dst: map[t.dst], ..*t })
            .collect();
        Self::assemble(
            self.name.clone(),
            self.alphabet.clone(),
            states,
            map[self.initial],
            ts,
            self.value_fn,
        )
    }

    /// Minimal deterministic automaton with the same weight sequence on
    /// every word, states numbered in breadth-first order from the initial
    /// state. Two deterministic automata produce the same weight sequences
    /// iff their minimized forms have equal transitions.
    pub fn minimize_deterministic(&self) -> Option<WeightedAutomaton> {
        if !self.is_deterministic() {
            return None;
        }
        let a = self.trim();
        let (n, nl) = (a.num_states(), a.num_letters());
        let mut class = vec![0usize; n];
        let mut count = 1;
        loop {
            let mut sigs: HashMap<Vec<(Weight, usize)>, usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut sig = vec![(0, class[q])];
                sig.extend((0..nl).map(|x| {
                    let t = a.succ(q, x)[0];
                    (t.weight, class[t.dst])
                }));
                let k = sigs.len();
                next[q] = *sigs.entry(sig).or_insert(k);
            }
            let c = sigs.len();
            class = next;
            if c == count {
                break;
            }
            count = c;
        }
        let mut order = vec![usize::MAX; count];
        let mut rep = Vec::new();
        let mut queue = std::collections::VecDeque::from([a.initial]);
        order[class[a.initial]] = 0;
        rep.push(a.initial);
        while let Some(q) = queue.pop_front() {
            for x in 0..nl {
                let d = a.succ(q, x)[0].dst;
                if order[class[d]] == usize::MAX {
                    order[class[d]] = rep.len();
                    rep.push(d);
                    queue.push_back(d);
                }
            }
        }
        let ts = rep
            .iter()
            .enumerate()
            .flat_map(|(i, &q)| {
                let (a, order, class) = (&a, &order, &class);
                (0..nl).map(move |x| {
                    let t = a.succ(q, x)[0];
                    Transition { src: i, letter: x, weight: t.weight, dst: order[class[t.dst]] }
                })
            })
            .collect();
        let states = rep.iter().map(|&q| a.states[q].clone()).collect();
        Some(Self::assemble(a.name.clone(), a.alphabet.clone(), states, 0, ts, a.value_fn))
    }

    /// Tracker normalization: Inf becomes LimInf over running minima and Sup
    /// becomes LimSup over running maxima. Limit automata are returned as is.
    pub fn normalize(&self) -> Normalized {
        if self.value_fn.is_limit() {
            return Normalized { automaton: self.clone(), origin: (0..self.num_states()).collect() };
        }
        let better = |m: Option<Weight>, w: Weight| -> Weight {
            match (self.value_fn, m) {
                (_, None) => w,
                (ValueFn::Inf, Some(m)) => m.min(w),
                (_, Some(m)) => m.max(w),
            }
        };
        let mut ids: HashMap<(usize, Option<Weight>), usize> = HashMap::new();
        let mut keys = vec![(self.initial, None)];
        ids.insert((self.initial, None), 0);
        let mut ts = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            let (q, m) = keys[i];
            for a in 0..self.num_letters() {
                for t in self.succ(q, a) {
                    let nm = better(m, t.weight);
                    let key = (t.dst, Some(nm));
                    let id = *ids.entry(key).or_insert_with(|| {
                        keys.push(key);
                        keys.len() - 1
                    });
                    ts.push(Transition { src: i, letter: a, weight: nm, dst: id });
                }
            }
            i += 1;
        }
        let states = keys
            .iter()
            .map(|(q, m)| match m {
                None => format!("{}/-", self.states[*q]),
                Some(m) => format!("{}/{}", self.states[*q], m),
            })
            .collect();
        let automaton = Self::assemble(
            format!("{}~norm", self.name),
            self.alphabet.clone(),
            states,
            0,
            ts,
            self.value_fn.normalized(),
        );
        Normalized { automaton, origin: keys.iter().map(|k| k.0).collect() }
    }

    /// The builder form this automaton prints as.
    pub fn to_spec(&self) -> AutomatonSpec {
        AutomatonSpec {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            declared_states: Some(self.states.clone()),
            initial: self.states[self.initial].clone(),
            transitions: self
                .transitions
                .iter()
                .map(|t| {
                    (
                        self.states[t.src].clone(),
                        self.alphabet[t.letter].clone(),
                        t.weight,
                        self.states[t.dst].clone(),
                    )
                })
                .collect(),
            value_fn: self.value_fn,
        }
    }
}

/// Result of [`WeightedAutomaton::normalize`]: the limit automaton and, per
/// state, the original state it tracks.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub automaton: WeightedAutomaton,
    pub origin: Vec<usize>,
}

fn diagnose_indexed(
    alphabet: &[String],
    states: &[String],
    initial: usize,
    transitions: &[Transition],
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if alphabet.is_empty() {
        out.push(Diagnostic { kind: DiagnosticKind::EmptyAlphabet, message: "empty alphabet".into() });
    }
    if states.is_empty() {
        out.push(Diagnostic { kind: DiagnosticKind::NoStates, message: "no states".into() });
        return out;
    }
    if initial >= states.len() {
        out.push(Diagnostic {
            kind: DiagnosticKind::UnknownState,
            message: format!("unknown state: initial index {initial}"),
        });
    }
    let mut seen: BTreeMap<(usize, usize, usize), Weight> = BTreeMap::new();
    let mut covered = vec![false; states.len() * alphabet.len()];
    for t in transitions {
        if t.src >= states.len() || t.dst >= states.len() {
            out.push(Diagnostic {
                kind: DiagnosticKind::UnknownState,
                message: format!("unknown state in transition {} -> {}", t.src, t.dst),
            });
            continue;
        }
        if t.letter >= alphabet.len() {
            out.push(Diagnostic {
                kind: DiagnosticKind::UnknownLetter,
                message: format!("unknown letter index {}", t.letter),
            });
            continue;
        }
        if t.weight > MAX_WEIGHT {
            out.push(Diagnostic {
                kind: DiagnosticKind::WeightTooLarge,
                message: format!("weight {} exceeds {}", t.weight, MAX_WEIGHT),
            });
        }
        if let Some(w) = seen.insert((t.src, t.letter, t.dst), t.weight) {
            if w != t.weight {
                out.push(Diagnostic {
                    kind: DiagnosticKind::DuplicateTransition,
                    message: format!(
                        "transition {} {} -> {} has two weights",
                        states[t.src], alphabet[t.letter], states[t.dst]
                    ),
                });
            }
        }
        covered[t.src * alphabet.len() + t.letter] = true;
    }
    for (q, name) in states.iter().enumerate() {
        for (a, letter) in alphabet.iter().enumerate() {
            if !covered[q * alphabet.len() + a] {
                out.push(Diagnostic {
                    kind: DiagnosticKind::NotTotal,
                    message: format!("state {name} not total on {letter}"),
                });
            }
        }
    }
    out
}

/// Name-based description of an automaton, as written in `.qaut` files.
///
/// States are either declared up front or collected from the initial state
/// and transitions in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomatonSpec {
    pub name: String,
    pub alphabet: Vec<String>,
    pub declared_states: Option<Vec<String>>,
    pub initial: String,
    pub transitions: Vec<(String, String, Weight, String)>,
    pub value_fn: ValueFn,
}

impl AutomatonSpec {
    pub fn new(name: &str, value_fn: ValueFn, alphabet: &[&str], initial: &str) -> Self {
        AutomatonSpec {
            name: name.into(),
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            declared_states: None,
            initial: initial.into(),
            transitions: Vec::new(),
            value_fn,
        }
    }

    /// Adds a transition; `letter` may be `*` for every letter.
    pub fn t(mut self, src: &str, letter: &str, weight: Weight, dst: &str) -> Self {
        if letter == "*" {
            for a in self.alphabet.clone() {
                self.transitions.push((src.into(), a, weight, dst.into()));
            }
        } else {
            self.transitions.push((src.into(), letter.into(), weight, dst.into()));
        }
        self
    }

    pub fn state_names(&self) -> Vec<String> {
        if let Some(d) = &self.declared_states {
            return d.clone();
        }
        let mut out: Vec<String> = vec![self.initial.clone()];
        for (s, _, _, d) in &self.transitions {
            for x in [s, d] {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
        }
        out
    }

    /// Adds a sink with constant weight `w` absorbing every missing `(state, letter)`.
    pub fn complete_with_sink(&mut self, w: Weight) {
        let states = self.state_names();
        let mut sink = "sink".to_string();
        while states.contains(&sink) {
            sink.push('_');
        }
        let mut missing = Vec::new();
        for q in &states {
            for a in &self.alphabet {
                if !self.transitions.iter().any(|(s, l, _, _)| s == q && l == a) {
                    missing.push((q.clone(), a.clone()));
                }
            }
        }
        if missing.is_empty() {
            return;
        }
        for (q, a) in missing {
            self.transitions.push((q, a, w, sink.clone()));
        }
        for a in self.alphabet.clone() {
            self.transitions.push((sink.clone(), a, w, sink.clone()));
        }
        if let Some(d) = &mut self.declared_states {
            d.push(sink);
        }
    }

    /// Every invariant violation, in a stable order.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let states = self.state_names();
        let mut out = Vec::new();
        if !states.contains(&self.initial) {
            out.push(Diagnostic {
                kind: DiagnosticKind::UnknownState,
                message: format!("unknown state {}", self.initial),
            });
        }
        for (s, l, w, d) in &self.transitions {
            for x in [s, d] {
                if !states.contains(x) {
                    out.push(Diagnostic {
                        kind: DiagnosticKind::UnknownState,
                        message: format!("unknown state {x}"),
                    });
                }
            }
            if !self.alphabet.contains(l) {
                out.push(Diagnostic {
                    kind: DiagnosticKind::UnknownLetter,
                    message: format!("unknown letter {l}"),
                });
            }
            if *w > MAX_WEIGHT {
                out.push(Diagnostic {
                    kind: DiagnosticKind::WeightTooLarge,
                    message: format!("weight {w} exceeds {MAX_WEIGHT}"),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let (alphabet, states, initial, ts) = self.indexed();
        diagnose_indexed(&alphabet, &states, initial, &ts)
    }

    fn indexed(&self) -> (Vec<String>, Vec<String>, usize, Vec<Transition>) {
        let states = self.state_names();
        let si = |x: &str| states.iter().position(|s| s == x).unwrap_or(usize::MAX);
        let li = |x: &str| self.alphabet.iter().position(|s| s == x).unwrap_or(usize::MAX);
        let ts = self
            .transitions
            .iter()
            .map(|(s, l, w, d)| Transition { src: si(s), letter: li(l), weight: *w, dst: si(d) })
            .collect();
        let init = si(&self.initial);
        (self.alphabet.clone(), states, init, ts)
    }

    pub fn build(&self) -> Result<WeightedAutomaton, AutomatonError> {
        let diags = self.validate();
        if !diags.is_empty() {
            return Err(AutomatonError::Invalid(diags));
        }
        let (alphabet, states, initial, ts) = self.indexed();
        WeightedAutomaton::new(self.name.clone(), alphabet, states, initial, ts, self.value_fn)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_total_state_is_reported() {
        let spec = AutomatonSpec::new("x", ValueFn::LimSup, &["a", "b"], "q0").t("q0", "a", 0, "q0");
        let d = spec.validate();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].message, "state q0 not total on b");
    }

    #[test]
    fn unknown_state_is_reported() {
        let mut spec = AutomatonSpec::new("x", ValueFn::LimSup, &["a"], "q0").t("q0", "a", 0, "q1");
        spec.declared_states = Some(vec!["q0".into()]);
        let d = spec.validate();
        assert!(d.iter().any(|d| d.kind == DiagnosticKind::UnknownState && d.message.contains("unknown state")));
    }

    #[test]
    fn two_weights_on_one_edge_rejected() {
        let spec = AutomatonSpec::new("x", ValueFn::Inf, &["a"], "q").t("q", "a", 0, "q").t("q", "a", 1, "q");
        assert!(spec.validate().iter().any(|d| d.kind == DiagnosticKind::DuplicateTransition));
    }

    #[test]
    fn normalization_tracks_running_min() {
        let a = AutomatonSpec::new("x", ValueFn::Inf, &["a"], "p")
            .t("p", "a", 2, "q")
            .t("q", "a", 1, "r")
            .t("r", "a", 3, "r")
            .build()
            .unwrap();
        let n = a.normalize();
        assert_eq!(n.automaton.value_fn(), ValueFn::LimInf);
        assert_eq!(n.automaton.num_states(), 3);
        assert!(n.automaton.is_deterministic());
    }
}
