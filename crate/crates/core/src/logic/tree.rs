//! Parity tree automata for alternation-free formulas under general
//! resolvers.
//!
//! A tree over the alphabet encodes one resolver per resolver variable (the
//! state it reaches on every finite word) and one bit per word variable
//! (whether the node lies on that word). The automaton guesses the value
//! vector `z` at the root, waits in the `Bot` phase, and then cycles through
//! the value terms, entering `Heart(y)` whenever term `y` attains `z_y` on
//! its word; no weight on a word may contradict its `z` entry after the
//! wait. `Heart` states have priority 2, all others 1.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::automaton::{ValueFn, WeightedAutomaton};
use crate::game::{solve, ParityGame, Player};
use crate::Weight;

use super::eval::check_bindings;
use super::{decide_presburger, LogicError, Quantifier, ResolverFormula, Sort};

/// Largest number of states built before giving up.
pub const MAX_TREE_STATES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Dim {
    /// Membership bit of a word variable.
    Word(String),
    /// State of the named resolver variable's automaton.
    Resolver { var: String, states: usize },
}

impl Dim {
    pub fn var(&self) -> &str {
        match self {
            Dim::Word(v) | Dim::Resolver { var: v, .. } => v,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    Bot,
    /// Waiting for value term `y` to attain its entry.
    Spade(usize),
    /// Value term `y` just attained its entry.
    Heart(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TreeState {
    pub phase: Phase,
    pub z: Vec<Weight>,
    /// The label this state expects at its node.
    pub label: Vec<usize>,
}

/// From `src` reading `label`, send child `σ` to `succ[σ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TreeTransition {
    pub src: usize,
    pub label: Vec<usize>,
    pub succ: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityTreeAutomaton {
    pub dims: Vec<Dim>,
    /// Structure alphabet: one child per letter.
    pub letters: Vec<String>,
    pub states: Vec<TreeState>,
    pub initial: Vec<usize>,
    pub transitions: Vec<TreeTransition>,
    pub priority: Vec<u32>,
}

/// Outcome of an emptiness game, with a regular witness tree for a
/// nonempty language: the root state and the transition taken per state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeEmptiness {
    pub nonempty: bool,
    pub root: Option<usize>,
    pub table: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeVerdict {
    pub holds: bool,
    pub semantics: String,
    /// Whether the automaton was built over the negated matrix.
    pub negated: bool,
    pub states: usize,
    pub transitions: usize,
    pub emptiness: TreeEmptiness,
}

struct Setup {
    dims: Vec<Dim>,
    /// Normalized automaton per resolver dimension.
    autos: Vec<Option<WeightedAutomaton>>,
    /// Per value term: resolver dimension, word dimension, LimSup?
    pairs: Vec<(usize, usize, bool)>,
    domains: Vec<Vec<Weight>>,
}

fn setup(f: &ResolverFormula, automata: &HashMap<String, WeightedAutomaton>) -> Setup {
    let mut dims = Vec::new();
    let mut autos = Vec::new();
    for b in &f.prefix {
        match &b.sort {
            Sort::Word => {
                dims.push(Dim::Word(b.var.clone()));
                autos.push(None);
            }
            Sort::Resolver(a) => {
                let n = automata[a].normalize().automaton;
                dims.push(Dim::Resolver { var: b.var.clone(), states: n.num_states() });
                autos.push(Some(n));
            }
        }
    }
    let pairs: Vec<(usize, usize, bool)> = f
        .vals
        .iter()
        .map(|v| (v.resolver, v.word, autos[v.resolver].as_ref().unwrap().value_fn() == ValueFn::LimSup))
        .collect();
    let domains = f.vals.iter().map(|v| autos[v.resolver].as_ref().unwrap().weights()).collect();
    Setup { dims, autos, pairs, domains }
}

fn candidate_vectors(domains: &[Vec<Weight>]) -> Vec<Vec<Weight>> {
    let mut out = vec![Vec::new()];
    for d in domains {
        out = out.into_iter().flat_map(|z: Vec<Weight>| d.iter().map(move |&v| [z.clone(), vec![v]].concat())).collect();
    }
    out
}

struct Builder<'a> {
    s: &'a Setup,
    nl: usize,
    ids: HashMap<TreeState, usize>,
    states: Vec<TreeState>,
    transitions: Vec<TreeTransition>,
}

impl Builder<'_> {
    fn intern(&mut self, st: TreeState, queue: &mut VecDeque<usize>) -> Result<usize, LogicError> {
        if let Some(&i) = self.ids.get(&st) {
            return Ok(i);
        }
        if self.states.len() >= MAX_TREE_STATES {
            return Err(LogicError::Unsupported(format!("tree automaton exceeds {MAX_TREE_STATES} states")));
        }
        self.states.push(st.clone());
        self.ids.insert(st, self.states.len() - 1);
        queue.push_back(self.states.len() - 1);
        Ok(self.states.len() - 1)
    }

    /// All ways to label the children of a node labelled `label`.
    fn child_labels(&self, label: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![vec![0; label.len()]; self.nl]];
        for (d, dim) in self.s.dims.iter().enumerate() {
            let mut next = Vec::new();
            match dim {
                Dim::Word(_) => {
                    let options: Vec<Option<usize>> =
                        if label[d] == 1 { (0..self.nl).map(Some).collect() } else { vec![None] };
                    for c in &combos {
                        for &o in &options {
                            let mut c = c.clone();
                            if let Some(sigma) = o {
                                c[sigma][d] = 1;
                            }
                            next.push(c);
                        }
                    }
                }
                Dim::Resolver { .. } => {
                    let aut = self.s.autos[d].as_ref().unwrap();
                    next = combos;
                    for sigma in 0..self.nl {
                        let targets: Vec<usize> = aut.succ(label[d], sigma).iter().map(|t| t.dst).collect();
                        next = next
                            .into_iter()
                            .flat_map(|c| {
                                targets.iter().map(move |&q| {
                                    let mut c = c.clone();
                                    c[sigma][d] = q;
                                    c
                                })
                            })
                            .collect();
                    }
                }
            }
            combos = next;
        }
        combos
    }

    fn weight(&self, y: usize, label: &[usize], sigma: usize, child: &[usize]) -> Weight {
        let r = self.s.pairs[y].0;
        self.s.autos[r].as_ref().unwrap().transition(label[r], sigma, child[r]).expect("resolver edge").weight
    }

    fn phases(&self, st: &TreeState, sigma: usize, child: &[usize]) -> Vec<Phase> {
        let n = self.s.pairs.len();
        if st.phase == Phase::Bot {
            return vec![Phase::Bot, Phase::Spade(0)];
        }
        for (y, &(_, j, sup)) in self.s.pairs.iter().enumerate() {
            if child[j] == 1 {
                let w = self.weight(y, &st.label, sigma, child);
                if (sup && w > st.z[y]) || (!sup && w < st.z[y]) {
                    return Vec::new();
                }
            }
        }
        match st.phase {
            Phase::Spade(y) => {
                let visited = y >= n || {
                    let j = self.s.pairs[y].1;
                    child[j] == 0 || self.weight(y, &st.label, sigma, child) == st.z[y]
                };
                if visited {
                    vec![Phase::Spade(y), Phase::Heart(y)]
                } else {
                    vec![Phase::Spade(y)]
                }
            }
            Phase::Heart(y) => vec![Phase::Spade((y + 1) % n.max(1))],
            Phase::Bot => unreachable!(),
        }
    }

    fn expand(&mut self, i: usize, queue: &mut VecDeque<usize>) -> Result<(), LogicError> {
        let st = self.states[i].clone();
        for children in self.child_labels(&st.label) {
            let options: Vec<Vec<Phase>> = (0..self.nl).map(|sigma| self.phases(&st, sigma, &children[sigma])).collect();
            if options.iter().any(|o| o.is_empty()) {
                continue;
            }
            let mut succs: Vec<Vec<usize>> = vec![Vec::new()];
            for (sigma, opts) in options.iter().enumerate() {
                let mut next = Vec::new();
                for p in opts {
                    let id = self.intern(TreeState { phase: *p, z: st.z.clone(), label: children[sigma].clone() }, queue)?;
                    for s in &succs {
                        next.push([s.clone(), vec![id]].concat());
                    }
                }
                succs = next;
            }
            for succ in succs {
                self.transitions.push(TreeTransition { src: i, label: st.label.clone(), succ });
            }
        }
        Ok(())
    }
}

/// Builds the automaton accepting the trees that encode a satisfying
/// assignment of the matrix (negated for all-`∀` prefixes).
pub fn build_tree_automaton(
    formula: &ResolverFormula,
    automata: &HashMap<String, WeightedAutomaton>,
) -> Result<ParityTreeAutomaton, LogicError> {
    if formula.alternations() > 0 {
        return Err(LogicError::Unsupported("the tree backend needs an alternation-free prefix".into()));
    }
    check_bindings(formula, automata)?;
    let universal = formula.prefix.first().is_some_and(|b| b.quantifier == Quantifier::Forall);
    let matrix = if universal { formula.matrix.clone().negate() } else { formula.matrix.clone() };
    let s = setup(formula, automata);
    let letters: Vec<String> = formula
        .automata()
        .first()
        .map_or_else(|| vec!["a".to_string()], |a| automata[a].alphabet().to_vec());
    let root: Vec<usize> = s
        .dims
        .iter()
        .enumerate()
        .map(|(d, dim)| match dim {
            Dim::Word(_) => 1,
            Dim::Resolver { .. } => s.autos[d].as_ref().unwrap().initial(),
        })
        .collect();
    let mut b = Builder { s: &s, nl: letters.len(), ids: HashMap::new(), states: Vec::new(), transitions: Vec::new() };
    let mut queue = VecDeque::new();
    let mut initial = Vec::new();
    for z in candidate_vectors(&s.domains) {
        let vals: Vec<u64> = z.iter().map(|&v| v as u64).collect();
        if decide_presburger(&matrix, &vals)? {
            initial.push(b.intern(TreeState { phase: Phase::Bot, z, label: root.clone() }, &mut queue)?);
        }
    }
    while let Some(i) = queue.pop_front() {
        b.expand(i, &mut queue)?;
    }
    let priority = b.states.iter().map(|st| if matches!(st.phase, Phase::Heart(_)) { 2 } else { 1 }).collect();
    Ok(ParityTreeAutomaton { dims: s.dims.clone(), letters, states: b.states, initial, transitions: b.transitions, priority })
}

/// Removes label dimension `dim`, i.e. guesses it existentially.
pub fn project(t: &ParityTreeAutomaton, dim: &str) -> Result<ParityTreeAutomaton, LogicError> {
    let d = t.dims.iter().position(|x| x.var() == dim).ok_or_else(|| LogicError::UnknownDimension(dim.into()))?;
    let mut out = t.clone();
    out.dims.remove(d);
    let mut seen = std::collections::HashSet::new();
    out.transitions = t
        .transitions
        .iter()
        .map(|tr| {
            let mut tr = tr.clone();
            tr.label.remove(d);
            tr
        })
        .filter(|tr| seen.insert(tr.clone()))
        .collect();
    Ok(out)
}

/// Projects away every label dimension.
pub fn project_all(t: &ParityTreeAutomaton) -> Result<ParityTreeAutomaton, LogicError> {
    let mut t = t.clone();
    while let Some(d) = t.dims.last() {
        let name = d.var().to_string();
        t = project(&t, &name)?;
    }
    Ok(t)
}

/// Game vertices: 0 is the root, `1 + q` the state `q`, then one vertex per
/// transition, then a sink.
fn emptiness_game(t: &ParityTreeAutomaton, automaton: Player) -> Result<(ParityGame, usize), LogicError> {
    if !t.dims.is_empty() {
        return Err(LogicError::Unsupported("emptiness needs a label-free automaton".into()));
    }
    let shift = u32::from(automaton == Player::Adam);
    let other = automaton.opponent();
    let mut g = ParityGame::new();
    g.add_vertex(automaton, "root");
    for q in 0..t.states.len() {
        g.add_vertex(automaton, format!("q{q}"));
    }
    let base = g.num_vertices();
    for i in 0..t.transitions.len() {
        g.add_vertex(other, format!("t{i}"));
    }
    let sink = g.add_vertex(other, "sink");
    // The automaton player loses when stuck.
    g.add_edge(sink, sink, 1 - shift);
    for &q in &t.initial {
        g.add_edge(0, 1 + q, 0);
    }
    for (i, tr) in t.transitions.iter().enumerate() {
        g.add_edge(1 + tr.src, base + i, t.priority[tr.src] + shift);
        for &c in &tr.succ {
            g.add_edge(base + i, 1 + c, 0);
        }
    }
    for v in 0..base {
        if g.out_edges(v).is_empty() {
            g.add_edge(v, sink, 0);
        }
    }
    Ok((g, base))
}

fn emptiness(t: &ParityTreeAutomaton, automaton: Player) -> Result<TreeEmptiness, LogicError> {
    let (g, base) = emptiness_game(t, automaton)?;
    let sol = solve(&g);
    if sol.winner[0] != automaton {
        return Ok(TreeEmptiness { nonempty: false, root: None, table: Vec::new() });
    }
    let target = |v: usize| g.edges[sol.strategy[v].expect("winner's strategy")].to;
    let root = target(0) - 1;
    let mut seen = vec![false; t.states.len()];
    seen[root] = true;
    let mut stack = vec![root];
    let mut table = Vec::new();
    while let Some(q) = stack.pop() {
        let tr = target(1 + q) - base;
        table.push((q, tr));
        for &c in &t.transitions[tr].succ {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    table.sort_unstable();
    Ok(TreeEmptiness { nonempty: true, root: Some(root), table })
}

/// Emptiness game with the automaton as Eve: Eve picks transitions, Adam
/// picks the child to follow.
pub fn tree_emptiness(t: &ParityTreeAutomaton) -> Result<TreeEmptiness, LogicError> {
    emptiness(t, Player::Eve)
}

/// The same game with the players swapped and priorities raised by one, so
/// that Eve wins exactly when the language is empty.
pub fn tree_emptiness_dual(t: &ParityTreeAutomaton) -> Result<TreeEmptiness, LogicError> {
    emptiness(t, Player::Adam)
}

/// Decides an alternation-free formula under general resolvers: an all-`∃`
/// formula holds iff its automaton is nonempty, an all-`∀` formula iff the
/// automaton over the negated matrix is empty.
pub fn decide_by_tree(
    formula: &ResolverFormula,
    automata: &HashMap<String, WeightedAutomaton>,
) -> Result<TreeVerdict, LogicError> {
    let c = build_tree_automaton(formula, automata)?;
    let negated = formula.prefix.first().is_some_and(|b| b.quantifier == Quantifier::Forall);
    let free = project_all(&c)?;
    let emptiness = if negated { tree_emptiness_dual(&free)? } else { tree_emptiness(&free)? };
    Ok(TreeVerdict {
        holds: emptiness.nonempty != negated,
        semantics: "general".into(),
        negated,
        states: c.states.len(),
        transitions: c.transitions.len(),
        emptiness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::logic::parse;
    use crate::value::top_value;

    fn fig1() -> HashMap<String, WeightedAutomaton> {
        HashMap::from([("A".to_string(), fixtures::fig1(ValueFn::LimSup))])
    }

    #[test]
    fn existential_top_value() {
        let m = fig1();
        assert_eq!(top_value(&m["A"]).value, 2);
        let f = parse("exists f in R(A) . exists w . val(A,f,w) >= 2").unwrap();
        let c = build_tree_automaton(&f, &m).unwrap();
        assert!(c.priority.iter().all(|&p| p == 1 || p == 2));
        assert_eq!(c.initial.len(), 1);
        assert_eq!(c.dims.len(), 2);
        let v = decide_by_tree(&f, &m).unwrap();
        assert!(v.holds && v.emptiness.nonempty && v.emptiness.root.is_some());
        let g = parse("exists f in R(A) . exists w . val(A,f,w) >= 3").unwrap();
        let c = build_tree_automaton(&g, &m).unwrap();
        assert!(c.initial.is_empty());
        assert!(!decide_by_tree(&g, &m).unwrap().holds);
    }

    #[test]
    fn universal_lower_bound_fails() {
        let m = fig1();
        let f = parse("forall f in R(A) . forall w . val(A,f,w) >= 1").unwrap();
        let v = decide_by_tree(&f, &m).unwrap();
        assert!(v.negated);
        assert!(!v.holds);
        assert!(v.emptiness.nonempty);
        let g = parse("forall f in R(A) . forall w . val(A,f,w) <= 2").unwrap();
        assert!(decide_by_tree(&g, &m).unwrap().holds);
    }

    #[test]
    fn one_resolver_serves_two_words() {
        // f1 yields 2 on a(a) and 1 on a(b).
        let m = fig1();
        let f = parse("exists f in R(A) . exists u . exists v . val(A,f,u) = 2 && val(A,f,v) = 1").unwrap();
        assert!(decide_by_tree(&f, &m).unwrap().holds);
        let g = parse("exists f in R(A) . exists u . exists v . val(A,f,u) = 2 && val(A,f,v) = 2 && val(A,f,u) < 1").unwrap();
        assert!(!decide_by_tree(&g, &m).unwrap().holds);
    }

    #[test]
    fn alternating_prefix_is_rejected() {
        let f = parse("forall f in R(A) . exists w . val(A,f,w) >= 1").unwrap();
        assert!(matches!(build_tree_automaton(&f, &fig1()), Err(LogicError::Unsupported(_))));
    }

    fn hand_built() -> ParityTreeAutomaton {
        let st = |phase, label: Vec<usize>| TreeState { phase, z: Vec::new(), label };
        ParityTreeAutomaton {
            dims: vec![Dim::Word("w".into())],
            letters: vec!["a".into(), "b".into()],
            states: vec![st(Phase::Bot, vec![1]), st(Phase::Heart(0), vec![0]), st(Phase::Heart(0), vec![1])],
            initial: vec![0],
            transitions: vec![
                TreeTransition { src: 0, label: vec![1], succ: vec![2, 1] },
                TreeTransition { src: 0, label: vec![1], succ: vec![1, 2] },
                TreeTransition { src: 1, label: vec![0], succ: vec![1, 1] },
                TreeTransition { src: 2, label: vec![1], succ: vec![2, 1] },
            ],
            priority: vec![1, 2, 2],
        }
    }

    #[test]
    fn projection_round_trip() {
        let t = hand_built();
        assert!(matches!(project(&t, "x"), Err(LogicError::UnknownDimension(_))));
        let p = project(&t, "w").unwrap();
        let expected = ParityTreeAutomaton {
            dims: Vec::new(),
            transitions: t
                .transitions
                .iter()
                .map(|tr| TreeTransition { label: Vec::new(), ..tr.clone() })
                .collect(),
            ..t.clone()
        };
        assert_eq!(p, expected);
        assert!(tree_emptiness(&p).unwrap().nonempty);
        assert!(tree_emptiness(&t).is_err());
        let mut empty = p.clone();
        empty.priority = vec![1, 1, 1];
        assert!(!tree_emptiness(&empty).unwrap().nonempty);
        assert!(!tree_emptiness(&project_all(&empty).unwrap()).unwrap().nonempty);
        assert!(tree_emptiness_dual(&p).unwrap().nonempty);
        assert!(!tree_emptiness_dual(&empty).unwrap().nonempty);
    }

    #[test]
    fn witness_table_is_closed() {
        let f = parse("exists f in R(A) . exists w . val(A,f,w) = 1").unwrap();
        let c = project_all(&build_tree_automaton(&f, &fig1()).unwrap()).unwrap();
        let e = tree_emptiness(&c).unwrap();
        let table: HashMap<usize, usize> = e.table.iter().copied().collect();
        assert!(c.initial.contains(&e.root.unwrap()));
        for (&q, &tr) in &table {
            assert_eq!(c.transitions[tr].src, q);
            assert!(c.transitions[tr].succ.iter().all(|s| table.contains_key(s)));
        }
    }
}
