//! Game arenas: simulation game, letter game, observing product game and
//! the blind letter game over a determinized left operand.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::{solve, GameSolution, ParityGame, Player};
use crate::automaton::{Transition, ValueFn, WeightedAutomaton};
use crate::graph::Graph;
use crate::monitor::{compile, Cmp, ParityMonitor};
use crate::omega::{determinize_cobuchi, threshold};
use crate::resolver::FiniteMemoryResolver;
use crate::Weight;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("condition automaton {0} is not deterministic")]
    NotDeterministic(String),
    #[error("unsupported mode: {0}")]
    Unsupported(String),
}

fn check_alphabets(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<(), GameError> {
    if a.alphabet() == b.alphabet() {
        Ok(())
    } else {
        Err(GameError::AlphabetMismatch)
    }
}

fn intern<K: Clone + Eq + std::hash::Hash>(
    g: &mut ParityGame,
    ids: &mut HashMap<K, usize>,
    queue: &mut Vec<K>,
    key: K,
    owner: Player,
    label: impl FnOnce() -> String,
) -> usize {
    if let Some(&v) = ids.get(&key) {
        return v;
    }
    let v = g.add_vertex(owner, label());
    ids.insert(key.clone(), v);
    queue.push(key);
    v
}

/// A solved game together with the question it answers.
#[derive(Clone, Debug)]
pub struct Solved {
    pub game: ParityGame,
    pub solution: GameSolution,
}

impl Solved {
    fn new(game: ParityGame) -> Self {
        let solution = solve(&game);
        Solved { game, solution }
    }

    pub fn eve_wins(&self) -> bool {
        self.solution.eve_wins(self.game.initial)
    }
}

/// Simulation game for `A ≼ B`: Adam picks a letter and an `A`-transition,
/// Eve answers with a `B`-transition; Eve must keep `ν_A(A-run) <= ν_B(B-run)`.
pub fn simulation_game(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<Solved, GameError> {
    check_alphabets(a, b)?;
    let mon = compile(a.value_fn(), b.value_fn(), Cmp::Le, &a.weights(), &b.weights());
    let mut g = ParityGame::new();
    let mut adam: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut eve: HashMap<(usize, usize, usize, usize, Weight), usize> = HashMap::new();
    let mut queue = Vec::new();
    let start = (a.initial(), b.initial(), mon.initial());
    let lab = |p: usize, q: usize, m: usize| format!("{},{}|{}", a.state_name(p), b.state_name(q), m);
    g.initial = intern(&mut g, &mut adam, &mut queue, start, Player::Adam, || lab(start.0, start.1, start.2));
    let mut eq = Vec::new();
    while let Some((p, q, m)) = queue.pop() {
        let v = adam[&(p, q, m)];
        for x in 0..a.num_letters() {
            for t in a.succ(p, x) {
                let key = (q, m, x, t.dst, t.weight);
                let e = intern(&mut g, &mut eve, &mut eq, key, Player::Eve, || {
                    format!("{}|{}|{}>{}", b.state_name(q), m, a.letter_name(x), a.state_name(t.dst))
                });
                g.add_edge(v, e, 0);
            }
        }
        while let Some((q, m, x, p2, wa)) = eq.pop() {
            let e = eve[&(q, m, x, p2, wa)];
            for t in b.succ(q, x) {
                let (m2, pr) = mon.step(m, wa, t.weight).expect("monitor alphabet");
                let key = (p2, t.dst, m2);
                let w = intern(&mut g, &mut adam, &mut queue, key, Player::Adam, || lab(p2, t.dst, m2));
                g.add_edge(e, w, pr);
            }
        }
    }
    Ok(Solved::new(g))
}

/// Letter game: Adam picks letters, the deterministic `cond` advances and
/// Eve resolves `b`; Eve must keep `ν(cond-run) ⋈ ν(b-run)`.
#[derive(Clone, Debug)]
pub struct LetterGame {
    pub solved: Solved,
    monitor: ParityMonitor,
    /// Eve vertex per `(cond state, b state, monitor state, letter)`.
    eve: HashMap<(usize, usize, usize, usize), usize>,
    /// `(cond state, b state, monitor state)` per Adam vertex.
    adam: HashMap<usize, (usize, usize, usize)>,
}

pub fn letter_game(b: &WeightedAutomaton, cond: &WeightedAutomaton, cmp: Cmp) -> Result<LetterGame, GameError> {
    check_alphabets(b, cond)?;
    if !cond.is_deterministic() {
        return Err(GameError::NotDeterministic(cond.name().into()));
    }
    let mon = compile(cond.value_fn(), b.value_fn(), cmp, &cond.weights(), &b.weights());
    let mut g = ParityGame::new();
    let mut adam: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut eve: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    let mut queue = Vec::new();
    let start = (cond.initial(), b.initial(), mon.initial());
    let lab = |d: usize, q: usize, m: usize| format!("{},{}|{}", cond.state_name(d), b.state_name(q), m);
    g.initial = intern(&mut g, &mut adam, &mut queue, start, Player::Adam, || lab(start.0, start.1, start.2));
    while let Some((d, q, m)) = queue.pop() {
        let v = adam[&(d, q, m)];
        for x in 0..b.num_letters() {
            let e = g.add_vertex(Player::Eve, format!("{}|{}", lab(d, q, m), b.letter_name(x)));
            eve.insert((d, q, m, x), e);
            g.add_edge(v, e, 0);
            let td = cond.succ(d, x)[0];
            for t in b.succ(q, x) {
                let (m2, pr) = mon.step(m, td.weight, t.weight).expect("monitor alphabet");
                let key = (td.dst, t.dst, m2);
                let w = intern(&mut g, &mut adam, &mut queue, key, Player::Adam, || lab(td.dst, t.dst, m2));
                g.add_edge(e, w, pr);
            }
        }
    }
    let adam = adam.into_iter().map(|(k, v)| (v, k)).collect();
    Ok(LetterGame { solved: Solved::new(g), monitor: mon, eve, adam })
}

impl LetterGame {
    pub fn eve_wins(&self) -> bool {
        self.solved.eve_wins()
    }

    /// Eve's strategy as a finite-memory resolver of `b`, with memory
    /// `(cond state, monitor state)`.
    pub fn resolver(&self, b: &WeightedAutomaton, cond: &WeightedAutomaton) -> FiniteMemoryResolver {
        let (nq, nl) = (b.num_states(), b.num_letters());
        let g = &self.solved.game;
        let pick = |d: usize, q: usize, m: usize, x: usize| -> &Transition {
            let options = b.succ(q, x);
            self.eve
                .get(&(d, q, m, x))
                .and_then(|&e| self.solved.solution.strategy[e])
                .and_then(|edge| {
                    let (_, q2, m2) = self.adam[&g.edges[edge].to];
                    let wd = cond.succ(d, x)[0].weight;
                    options.iter().find(|t| t.dst == q2 && self.monitor.step(m, wd, t.weight).unwrap().0 == m2)
                })
                .unwrap_or(&options[0])
        };
        let start = (cond.initial(), self.monitor.initial());
        let mut mids: BTreeMap<(usize, usize), usize> = BTreeMap::from([(start, 0)]);
        let mut mems = vec![start];
        let mut choice = Vec::new();
        let mut update = Vec::new();
        let mut i = 0;
        while i < mems.len() {
            let (d, m) = mems[i];
            for q in 0..nq {
                for x in 0..nl {
                    let t = pick(d, q, m, x);
                    let td = cond.succ(d, x)[0];
                    let (m2, _) = self.monitor.step(m, td.weight, t.weight).unwrap();
                    let key = (td.dst, m2);
                    let id = *mids.entry(key).or_insert_with(|| {
                        mems.push(key);
                        mems.len() - 1
                    });
                    choice.push(t.dst);
                    update.push(id);
                }
            }
            i += 1;
        }
        let names = mems.iter().map(|&(d, m)| format!("{}.{}", cond.state_name(d), m)).collect();
        FiniteMemoryResolver::new(names, 0, nq, nl, choice, update)
    }
}

/// Observing product game for `A ⊴× B`: Adam picks a letter, Eve moves the
/// `B` component seeing both current states, then Adam moves `A`.
pub fn observing_game(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<Solved, GameError> {
    check_alphabets(a, b)?;
    let mon = compile(a.value_fn(), b.value_fn(), Cmp::Le, &a.weights(), &b.weights());
    let mut g = ParityGame::new();
    let mut top: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut queue = Vec::new();
    let start = (a.initial(), b.initial(), mon.initial());
    let lab = |p: usize, q: usize, m: usize| format!("{},{}|{}", a.state_name(p), b.state_name(q), m);
    g.initial = intern(&mut g, &mut top, &mut queue, start, Player::Adam, || lab(start.0, start.1, start.2));
    while let Some((p, q, m)) = queue.pop() {
        let v = top[&(p, q, m)];
        for x in 0..a.num_letters() {
            let e = g.add_vertex(Player::Eve, format!("{}|{}", lab(p, q, m), a.letter_name(x)));
            g.add_edge(v, e, 0);
            for tb in b.succ(q, x) {
                let r = g.add_vertex(Player::Adam, format!("{}|{}>{}", lab(p, q, m), a.letter_name(x), b.state_name(tb.dst)));
                g.add_edge(e, r, 0);
                for ta in a.succ(p, x) {
                    let (m2, pr) = mon.step(m, ta.weight, tb.weight).expect("monitor alphabet");
                    let key = (ta.dst, tb.dst, m2);
                    let w = intern(&mut g, &mut top, &mut queue, key, Player::Adam, || lab(ta.dst, tb.dst, m2));
                    g.add_edge(r, w, pr);
                }
            }
        }
    }
    Ok(Solved::new(g))
}

/// True iff every SCC's internal transitions carry a single weight, so the
/// limit superior of a run equals its limit inferior.
pub fn scc_uniform(a: &WeightedAutomaton) -> bool {
    let mut g = Graph::new(a.num_states());
    for t in a.transitions() {
        g.add_edge(t.src, t.dst, 0, t.weight);
    }
    let ids = g.scc_ids(&|_| true);
    let mut w: HashMap<usize, Weight> = HashMap::new();
    a.transitions().iter().filter(|t| ids[t.src] == ids[t.dst]).all(|t| *w.entry(ids[t.src]).or_insert(t.weight) == t.weight)
}

/// A deterministic automaton `D` with `D(w) = A_sup(w)` for every word.
///
/// Sup: subset construction emitting the largest weight available. Inf:
/// best running minimum per state, emitting the best overall. LimInf:
/// product of breakpoint automata for every threshold, emitting the largest
/// threshold all of whose lower thresholds are currently safe. LimSup is
/// supported when every SCC carries one weight (then it coincides with
/// LimInf).
pub fn determinize(a: &WeightedAutomaton) -> Result<WeightedAutomaton, GameError> {
    if a.is_deterministic() {
        return Ok(a.clone());
    }
    let nl = a.num_letters();
    match a.value_fn() {
        ValueFn::Sup | ValueFn::Inf => {
            let inf = a.value_fn() == ValueFn::Inf;
            // State: best running value per automaton state (None: not reachable).
            type Key = Vec<Option<Weight>>;
            let mut start: Key = vec![None; a.num_states()];
            start[a.initial()] = Some(if inf { Weight::MAX } else { 0 });
            explore_det(a, start, |s, x| {
                let mut next: Key = vec![None; s.len()];
                let mut out = None;
                for (q, v) in s.iter().enumerate() {
                    let Some(v) = *v else { continue };
                    for t in a.succ(q, x) {
                        let nv = if inf { v.min(t.weight) } else { v.max(t.weight) };
                        let e = next[t.dst].get_or_insert(nv);
                        *e = (*e).max(nv);
                        out = Some(out.map_or(nv, |o: Weight| o.max(nv)));
                    }
                }
                (next, out.unwrap())
            }, a.value_fn())
        }
        ValueFn::LimInf => det_liminf(a),
        ValueFn::LimSup if scc_uniform(a) => det_liminf(&a.with_value_fn(ValueFn::LimInf)).map(|d| d.with_value_fn(ValueFn::LimInf)),
        ValueFn::LimSup => {
            let _ = nl;
            Err(GameError::Unsupported(format!(
                "blind game needs a determinized LimSup automaton; {} has an SCC with several weights",
                a.name()
            )))
        }
    }
}

fn explore_det<K: Clone + Eq + std::hash::Hash>(
    a: &WeightedAutomaton,
    start: K,
    step: impl Fn(&K, usize) -> (K, Weight),
    vf: ValueFn,
) -> Result<WeightedAutomaton, GameError> {
    let mut ids: HashMap<K, usize> = HashMap::from([(start.clone(), 0)]);
    let mut keys = vec![start];
    let mut ts = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        for x in 0..a.num_letters() {
            let (k, w) = step(&keys[i], x);
            let id = *ids.entry(k.clone()).or_insert_with(|| {
                keys.push(k);
                keys.len() - 1
            });
            ts.push(Transition { src: i, letter: x, weight: w, dst: id });
        }
        i += 1;
    }
    let names = (0..keys.len()).map(|i| format!("d{i}")).collect();
    Ok(WeightedAutomaton::new(format!("det({})", a.name()), a.alphabet().to_vec(), names, 0, ts, vf)
        .expect("determinized automaton is total"))
}

fn det_liminf(a: &WeightedAutomaton) -> Result<WeightedAutomaton, GameError> {
    let ws = a.weights();
    let base = ws[0];
    let levels: Vec<Weight> = ws[1..].to_vec();
    let dets: Vec<WeightedAutomaton> = levels.iter().map(|&v| determinize_cobuchi(&threshold(a, v).automaton)).collect();
    let start: Vec<usize> = dets.iter().map(|d| d.initial()).collect();
    explore_det(a, start, |s, x| {
        let mut next = Vec::with_capacity(s.len());
        let mut out = base;
        let mut ok = true;
        for (k, d) in dets.iter().enumerate() {
            let t = d.succ(s[k], x)[0];
            next.push(t.dst);
            ok = ok && t.weight >= 1;
            if ok {
                out = levels[k];
            }
        }
        (next, out)
    }, ValueFn::LimInf)
}

/// Blind letter game for `A ⊴ B`: Adam picks letters, Eve resolves `B`
/// against the determinized `A`.
pub fn blind_game(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<(LetterGame, WeightedAutomaton), GameError> {
    check_alphabets(a, b)?;
    let d = determinize(a)?;
    Ok((letter_game(b, &d, Cmp::Le)?, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonSpec;
    use crate::lasso::LassoWord;
    use crate::value::sup_value;

    fn fig1(vf: ValueFn) -> WeightedAutomaton {
        AutomatonSpec::new("fig1", vf, &["a", "b"], "q0")
            .t("q0", "*", 0, "q0")
            .t("q0", "a", 0, "q1")
            .t("q1", "b", 1, "q1")
            .t("q1", "a", 0, "q2")
            .t("q2", "*", 2, "q2")
            .build()
            .unwrap()
    }

    #[test]
    fn determinization_preserves_sup_values() {
        for vf in [ValueFn::Inf, ValueFn::Sup, ValueFn::LimInf] {
            let a = fig1(vf);
            let d = determinize(&a).unwrap();
            assert!(d.is_deterministic());
            for w in LassoWord::all_up_to(2, 5) {
                assert_eq!(sup_value(&a, &w).unwrap().0, sup_value(&d, &w).unwrap().0, "{vf} {w}");
            }
        }
        let mixed = AutomatonSpec::new("mixed", ValueFn::LimSup, &["a", "b"], "p")
            .t("p", "a", 1, "p")
            .t("p", "a", 0, "q")
            .t("p", "b", 0, "p")
            .t("q", "*", 0, "q")
            .t("q", "b", 2, "p")
            .build()
            .unwrap();
        assert!(!scc_uniform(&mixed));
        assert!(matches!(determinize(&mixed), Err(GameError::Unsupported(_))));
        assert!(scc_uniform(&fig1(ValueFn::LimSup)));
    }

    #[test]
    fn fig1_is_self_simulating_and_hd_for_liminf() {
        let a = fig1(ValueFn::LimSup);
        assert!(simulation_game(&a, &a).unwrap().eve_wins());
        let b = fig1(ValueFn::LimInf);
        let (lg, d) = blind_game(&b, &b).unwrap();
        assert!(lg.eve_wins());
        let r = crate::resolver::Resolver::from(lg.resolver(&b, &d));
        r.check(&b).unwrap();
        for w in LassoWord::all_up_to(2, 5) {
            let (v, _) = crate::resolver::resolver_value(&b, &r, &w).unwrap();
            assert_eq!(v, sup_value(&b, &w).unwrap().0, "{w}");
        }
    }
}
