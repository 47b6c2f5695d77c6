//! Threshold languages and their boolean operations.
//!
//! Boolean automata are weight-{0,1} automata: `LimSup` reads as Büchi
//! (weight 1 marks accepting transitions) and `LimInf` as coBüchi (weight 0
//! marks rejecting transitions).

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{Transition, ValueFn, WeightedAutomaton};
use crate::graph::Graph;
use crate::lasso::LassoWord;
use crate::value::sup_value;
use crate::Weight;

/// Default state-count guard for rank-based complementation.
pub const DEFAULT_GUARD: usize = 10;

/// Budget of lasso evaluations spent minimizing a counterexample.
pub const COUNTEREXAMPLE_BUDGET: usize = 20_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OmegaError {
    #[error("complementation guard exceeded: Büchi automaton with {states} states (limit {limit})")]
    GuardExceeded { states: usize, limit: usize },
    #[error("alphabet mismatch")]
    AlphabetMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Acceptance {
    Buchi,
    CoBuchi,
}

/// A boolean automaton recognizing `{w : A_sup(w) >= v}` (or a boolean
/// combination derived from one).
#[derive(Clone, Debug)]
pub struct ThresholdAutomaton {
    pub automaton: WeightedAutomaton,
    pub acceptance: Acceptance,
    /// Accepting transitions lead into an absorbing all-accepting part, so
    /// the language is a reachability language.
    reachability: bool,
}

impl ThresholdAutomaton {
    pub fn new(automaton: WeightedAutomaton) -> Self {
        let acceptance = match automaton.value_fn() {
            ValueFn::LimSup | ValueFn::Sup => Acceptance::Buchi,
            _ => Acceptance::CoBuchi,
        };
        ThresholdAutomaton { automaton, acceptance, reachability: false }
    }

    pub fn accepts(&self, w: &LassoWord) -> bool {
        sup_value(&self.automaton, w).map(|(v, _)| v >= 1).unwrap_or(false)
    }

    pub fn num_states(&self) -> usize {
        self.automaton.num_states()
    }
}

fn boolean(aut: &WeightedAutomaton, name: String, vf: ValueFn, f: impl Fn(&Transition) -> bool) -> WeightedAutomaton {
    aut.map_weights(|t| f(t) as Weight).with_value_fn(vf).with_name(name)
}

/// `{w : A_sup(w) >= v}` as a Büchi or coBüchi automaton.
pub fn threshold(aut: &WeightedAutomaton, v: Weight) -> ThresholdAutomaton {
    let name = format!("{}>={}", aut.name(), v);
    match aut.value_fn() {
        ValueFn::LimSup => ThresholdAutomaton::new(boolean(aut, name, ValueFn::LimSup, |t| t.weight >= v)),
        ValueFn::LimInf => ThresholdAutomaton::new(boolean(aut, name, ValueFn::LimInf, |t| t.weight >= v)),
        ValueFn::Inf => {
            let n = aut.normalize().automaton;
            ThresholdAutomaton::new(boolean(&n, name, ValueFn::LimInf, |t| t.weight >= v).trim())
        }
        ValueFn::Sup => {
            let top = aut.num_states();
            let mut states = aut.states().to_vec();
            states.push("top".into());
            let mut ts: Vec<Transition> = aut
                .transitions()
                .iter()
                .map(|t| {
                    if t.weight >= v {
                        Transition { weight: 1, dst: top, ..*t }
                    } else {
                        Transition { weight: 0, ..*t }
                    }
                })
                .collect();
            for a in 0..aut.num_letters() {
                ts.push(Transition { src: top, letter: a, weight: 1, dst: top });
            }
            let r = WeightedAutomaton::new(name, aut.alphabet().to_vec(), states, aut.initial(), ts, ValueFn::LimSup)
                .expect("threshold automaton is total")
                .trim();
            ThresholdAutomaton { automaton: r, acceptance: Acceptance::Buchi, reachability: true }
        }
    }
}

/// Breakpoint (Miyano–Hayashi) determinization of a coBüchi automaton. The
/// result is a deterministic coBüchi automaton whose rejecting transitions
/// are the breakpoints.
pub fn determinize_cobuchi(ncw: &WeightedAutomaton) -> WeightedAutomaton {
    if ncw.is_deterministic() {
        return ncw.clone();
    }
    let n = ncw.num_states();
    let post = |set: &BTreeSet<usize>, a: usize, good_only: bool| -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&q| ncw.succ(q, a).iter())
            .filter(|t| !good_only || t.weight >= 1)
            .map(|t| t.dst)
            .collect()
    };
    type Key = (BTreeSet<usize>, BTreeSet<usize>);
    let start: Key = (BTreeSet::from([ncw.initial()]), BTreeSet::new());
    let mut ids: HashMap<Key, usize> = HashMap::from([(start.clone(), 0)]);
    let mut keys = vec![start];
    let mut ts = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (s, o) = keys[i].clone();
        for a in 0..ncw.num_letters() {
            let s2 = post(&s, a, false);
            let mut o2 = if o.is_empty() { post(&s, a, true) } else { post(&o, a, true) };
            let breakpoint = o2.is_empty();
            if breakpoint {
                o2 = BTreeSet::new();
            }
            let key = (s2, o2);
            let id = *ids.entry(key.clone()).or_insert_with(|| {
                keys.push(key);
                keys.len() - 1
            });
            ts.push(Transition { src: i, letter: a, weight: (!breakpoint) as Weight, dst: id });
        }
        i += 1;
    }
    let fmt = |s: &BTreeSet<usize>| s.iter().map(|&q| ncw.state_name(q)).collect::<Vec<_>>().join(",");
    let names = keys.iter().map(|(s, o)| format!("{{{}}}|{{{}}}", fmt(s), fmt(o))).collect();
    debug_assert!(keys.len() <= 3usize.saturating_pow(n as u32).max(1));
    WeightedAutomaton::new(format!("det({})", ncw.name()), ncw.alphabet().to_vec(), names, 0, ts, ValueFn::LimInf)
        .expect("breakpoint automaton is total")
}

/// Dual of a deterministic boolean automaton: Büchi and coBüchi swap and
/// every weight is flipped.
pub fn dualize(det: &WeightedAutomaton) -> WeightedAutomaton {
    debug_assert!(det.is_deterministic());
    let vf = match det.value_fn() {
        ValueFn::LimSup => ValueFn::LimInf,
        _ => ValueFn::LimSup,
    };
    det.map_weights(|t| 1 - t.weight.min(1)).with_value_fn(vf).with_name(format!("not({})", det.name()))
}

/// Rank-based complementation of a Büchi automaton. Transition acceptance is
/// first moved onto states by remembering whether the last transition was
/// accepting; ranks are bounded by `2(n − |F|)` over that automaton.
pub fn complement_buchi(nbw: &WeightedAutomaton, guard: usize) -> Result<WeightedAutomaton, OmegaError> {
    if nbw.num_states() > guard {
        return Err(OmegaError::GuardExceeded { states: nbw.num_states(), limit: guard });
    }
    // State-based form: (state, entered by an accepting transition).
    let mut sid: HashMap<(usize, bool), usize> = HashMap::from([((nbw.initial(), false), 0)]);
    let mut skeys = vec![(nbw.initial(), false)];
    let mut i = 0;
    while i < skeys.len() {
        let (q, _) = skeys[i];
        for a in 0..nbw.num_letters() {
            for t in nbw.succ(q, a) {
                let k = (t.dst, t.weight >= 1);
                sid.entry(k).or_insert_with(|| {
                    skeys.push(k);
                    skeys.len() - 1
                });
            }
        }
        i += 1;
    }
    let n = skeys.len();
    let nl = nbw.num_letters();
    let acc: Vec<bool> = skeys.iter().map(|k| k.1).collect();
    let succ: Vec<Vec<Vec<usize>>> = skeys
        .iter()
        .map(|&(q, _)| (0..nl).map(|a| nbw.succ(q, a).iter().map(|t| sid[&(t.dst, t.weight >= 1)]).collect()).collect())
        .collect();
    let n_acc = acc.iter().filter(|&&f| f).count();
    let max_rank = (2 * (n - n_acc)) as u8;
    const NONE: u8 = u8::MAX;

    type Key = (Vec<u8>, u64);
    let mut g0 = vec![NONE; n];
    g0[0] = max_rank;
    let start: Key = (g0, 0);
    let mut ids: HashMap<Key, usize> = HashMap::from([(start.clone(), 0)]);
    let mut keys = vec![start];
    let mut ts = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (g, o) = keys[i].clone();
        for a in 0..nl {
            let mut bound = vec![NONE; n];
            for q in 0..n {
                if g[q] == NONE {
                    continue;
                }
                for &p in &succ[q][a] {
                    bound[p] = bound[p].min(g[q]);
                }
            }
            let present: Vec<usize> = (0..n).filter(|&p| bound[p] != NONE).collect();
            let o_succ: u64 = (0..n)
                .filter(|&q| o >> q & 1 == 1)
                .flat_map(|q| succ[q][a].iter().copied())
                .fold(0, |m, p| m | 1 << p);
            // Enumerate every level ranking below the bounds.
            let mut g2 = vec![NONE; n];
            let choices = |p: usize| -> Vec<u8> {
                (0..=bound[p]).filter(|r| !acc[p] || r % 2 == 0).collect()
            };
            let opts: Vec<Vec<u8>> = present.iter().map(|&p| choices(p)).collect();
            if opts.iter().any(|o| o.is_empty()) {
                continue;
            }
            let mut idx = vec![0usize; present.len()];
            loop {
                for (k, &p) in present.iter().enumerate() {
                    g2[p] = opts[k][idx[k]];
                }
                let even: u64 = present.iter().filter(|&&p| g2[p] % 2 == 0).fold(0, |m, &p| m | 1 << p);
                let o2 = if o == 0 { even } else { o_succ & even };
                let key = (g2.clone(), o2);
                let id = *ids.entry(key.clone()).or_insert_with(|| {
                    keys.push(key);
                    keys.len() - 1
                });
                ts.push(Transition { src: i, letter: a, weight: (o2 == 0) as Weight, dst: id });
                let mut k = present.len();
                let mut done = true;
                while k > 0 {
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < opts[k].len() {
                        done = false;
                        break;
                    }
                    idx[k] = 0;
                }
                if done {
                    break;
                }
            }
        }
        i += 1;
    }
    // Dead end (some state would need an empty rank set) goes to a rejecting sink.
    let sink = keys.len();
    let mut covered = vec![false; keys.len() * nl];
    for t in &ts {
        covered[t.src * nl + t.letter] = true;
    }
    let mut need_sink = false;
    for s in 0..keys.len() {
        for a in 0..nl {
            if !covered[s * nl + a] {
                ts.push(Transition { src: s, letter: a, weight: 0, dst: sink });
                need_sink = true;
            }
        }
    }
    let mut names: Vec<String> = (0..keys.len()).map(|k| format!("r{k}")).collect();
    if need_sink {
        names.push("dead".into());
        for a in 0..nl {
            ts.push(Transition { src: sink, letter: a, weight: 0, dst: sink });
        }
    }
    Ok(WeightedAutomaton::new(format!("co({})", nbw.name()), nbw.alphabet().to_vec(), names, 0, ts, ValueFn::LimSup)
        .expect("rank automaton is total"))
}

/// Subset construction for a reachability automaton: the result accepts
/// exactly the words on which no run ever takes an accepting transition
/// (deterministic coBüchi, here a safety condition).
fn complement_reachability(r: &WeightedAutomaton) -> WeightedAutomaton {
    let start = BTreeSet::from([r.initial()]);
    let mut ids: HashMap<Option<BTreeSet<usize>>, usize> = HashMap::from([(Some(start.clone()), 0)]);
    let mut keys = vec![Some(start)];
    let mut ts = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let cur = keys[i].clone();
        for a in 0..r.num_letters() {
            let next = cur.as_ref().and_then(|s| {
                let ts: Vec<&Transition> = s.iter().flat_map(|&q| r.succ(q, a).iter()).collect();
                if ts.iter().any(|t| t.weight >= 1) {
                    None
                } else {
                    Some(ts.iter().map(|t| t.dst).collect::<BTreeSet<_>>())
                }
            });
            let w = next.is_some() as Weight;
            let id = *ids.entry(next.clone()).or_insert_with(|| {
                keys.push(next);
                keys.len() - 1
            });
            ts.push(Transition { src: i, letter: a, weight: w, dst: id });
        }
        i += 1;
    }
    let names = keys
        .iter()
        .map(|k| match k {
            None => "hit".to_string(),
            Some(s) => format!("{{{}}}", s.iter().map(|&q| r.state_name(q)).collect::<Vec<_>>().join(",")),
        })
        .collect();
    WeightedAutomaton::new(format!("not({})", r.name()), r.alphabet().to_vec(), names, 0, ts, ValueFn::LimInf)
        .expect("subset automaton is total")
}

/// Complement of a threshold automaton, choosing the cheapest exact route.
pub fn complement(t: &ThresholdAutomaton, guard: usize) -> Result<ThresholdAutomaton, OmegaError> {
    let a = &t.automaton;
    let out = match t.acceptance {
        _ if a.is_deterministic() => dualize(a),
        Acceptance::CoBuchi => dualize(&determinize_cobuchi(a)),
        Acceptance::Buchi if t.reachability => complement_reachability(a),
        Acceptance::Buchi => complement_buchi(a, guard)?,
    };
    Ok(ThresholdAutomaton::new(out))
}

/// A word accepted by every automaton, if one exists.
pub fn intersection_witness(parts: &[&WeightedAutomaton]) -> Option<LassoWord> {
    let nl = parts[0].num_letters();
    let start: Vec<usize> = parts.iter().map(|p| p.initial()).collect();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut keys = vec![start];
    let mut g = Graph::new(1);
    // Per edge: letter, bitmask of accepting Büchi parts, rejected by a coBüchi part.
    let mut info: Vec<(usize, u64, bool)> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let cur = keys[i].clone();
        for a in 0..nl {
            let mut combos: Vec<(Vec<usize>, u64, bool)> = vec![(Vec::new(), 0, false)];
            for (k, p) in parts.iter().enumerate() {
                let mut next = Vec::new();
                for (tuple, mask, bad) in &combos {
                    for t in p.succ(cur[k], a) {
                        let mut tu = tuple.clone();
                        tu.push(t.dst);
                        let (m, b) = match p.value_fn() {
                            ValueFn::LimSup => (mask | ((t.weight >= 1) as u64) << k, *bad),
                            _ => (*mask, *bad || t.weight == 0),
                        };
                        next.push((tu, m, b));
                    }
                }
                combos = next;
            }
            for (tu, m, b) in combos {
                let id = match ids.get(&tu) {
                    Some(&id) => id,
                    None => {
                        keys.push(tu.clone());
                        ids.insert(tu, keys.len() - 1);
                        g.add_node()
                    }
                };
                g.add_edge(i, id, info.len(), 0);
                info.push((a, m, b));
            }
        }
        i += 1;
    }
    let (g, info) = (&g, &info);
    let keep = |e: usize| !info[g.edges[e].label].2;
    let buchi: Vec<usize> = (0..parts.len()).filter(|&k| parts[k].value_fn() == ValueFn::LimSup).collect();
    let class_fns: Vec<Box<dyn Fn(usize) -> bool + '_>> = buchi
        .iter()
        .map(|&k| Box::new(move |e: usize| info[g.edges[e].label].1 >> k & 1 == 1) as Box<dyn Fn(usize) -> bool>)
        .collect();
    let classes: Vec<&dyn Fn(usize) -> bool> = class_fns.iter().map(|b| b.as_ref()).collect();
    let l = g.generalized_lasso(0, &keep, &classes)?;
    let letter = |e: &usize| info[g.edges[*e].label].0;
    Some(LassoWord::new(l.stem.iter().map(letter).collect(), l.cycle.iter().map(letter).collect()).expect("nonempty cycle"))
}

/// Transition profile of a finite word on a boolean automaton: for each
/// pair of states, 0 = no path, 1 = a path only through rejecting
/// (Büchi: non-accepting, coBüchi: some rejecting) transitions, 2 = a
/// good path (Büchi: some accepting, coBüchi: all accepting).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Profile(Vec<u8>);

struct ProfileAlgebra<'a> {
    aut: &'a WeightedAutomaton,
    n: usize,
    buchi: bool,
}

impl<'a> ProfileAlgebra<'a> {
    fn new(aut: &'a WeightedAutomaton) -> Self {
        ProfileAlgebra { aut, n: aut.num_states(), buchi: aut.value_fn() == ValueFn::LimSup }
    }

    fn letter(&self, a: usize) -> Profile {
        let mut m = vec![0; self.n * self.n];
        for q in 0..self.n {
            for t in self.aut.succ(q, a) {
                let x = &mut m[q * self.n + t.dst];
                *x = (*x).max(1 + t.weight.min(1) as u8);
            }
        }
        Profile(m)
    }

    fn mul(&self, x: &Profile, y: &Profile) -> Profile {
        let n = self.n;
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = x.0[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = y.0[k * n + j];
                    if b == 0 {
                        continue;
                    }
                    let c = if self.buchi { a.max(b) } else { a.min(b) };
                    let e = &mut m[i * n + j];
                    *e = (*e).max(c);
                }
            }
        }
        Profile(m)
    }

    /// Membership of `u v^ω` given `[u] = s`, `[v] = e`, `e` idempotent, `s·e = s`.
    fn accepts(&self, s: &Profile, e: &Profile) -> bool {
        let i = self.aut.initial();
        (0..self.n).any(|q| s.0[i * self.n + q] != 0 && e.0[q * self.n + q] == 2)
    }
}

/// A word accepted by `a` and rejected by `b`, found by enumerating the
/// joint transition-profile monoid and its idempotent factorizations.
pub fn difference_witness(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Option<LassoWord> {
    let (pa, pb) = (ProfileAlgebra::new(a), ProfileAlgebra::new(b));
    let nl = a.num_letters();
    let letters: Vec<(Profile, Profile)> = (0..nl).map(|x| (pa.letter(x), pb.letter(x))).collect();
    let mut ids: HashMap<(Profile, Profile), usize> = HashMap::new();
    let mut elems: Vec<(Profile, Profile)> = Vec::new();
    let mut words: Vec<Vec<usize>> = Vec::new();
    for (x, l) in letters.iter().enumerate() {
        if !ids.contains_key(l) {
            ids.insert(l.clone(), elems.len());
            elems.push(l.clone());
            words.push(vec![x]);
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for (x, l) in letters.iter().enumerate() {
            let p = (pa.mul(&elems[i].0, &l.0), pb.mul(&elems[i].1, &l.1));
            if !ids.contains_key(&p) {
                ids.insert(p.clone(), elems.len());
                let mut w = words[i].clone();
                w.push(x);
                elems.push(p);
                words.push(w);
            }
        }
        i += 1;
    }
    let mul = |x: &(Profile, Profile), y: &(Profile, Profile)| (pa.mul(&x.0, &y.0), pb.mul(&x.1, &y.1));
    for e in &elems {
        if &mul(e, e) != e {
            continue;
        }
        for (k, s) in elems.iter().enumerate() {
            if pa.accepts(&s.0, &e.0) && !pb.accepts(&s.1, &e.1) && &mul(s, e) == s {
                let cyc = words[ids[e]].clone();
                return Some(LassoWord::new(words[k].clone(), cyc).expect("nonempty"));
            }
        }
    }
    None
}

/// A word in `L(a) \ L(b)`. Nondeterministic Büchi right operands go
/// through the profile monoid; every other case complements `b` directly.
pub fn difference(a: &ThresholdAutomaton, b: &ThresholdAutomaton, guard: usize) -> Result<Option<LassoWord>, OmegaError> {
    if b.acceptance == Acceptance::Buchi && !b.reachability && !b.automaton.is_deterministic() {
        return Ok(difference_witness(&a.automaton, &b.automaton));
    }
    let cb = complement(b, guard)?;
    Ok(intersection_witness(&[&a.automaton, &cb.automaton]))
}

/// Outcome of an inclusion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion {
    pub holds: bool,
    /// On failure, a word with `A_sup(w) > B_sup(w)`.
    pub counterexample: Option<LassoWord>,
}

/// `∀w: A_sup(w) <= B_sup(w)`, decided threshold by threshold.
pub fn includes(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<Inclusion, OmegaError> {
    includes_with_guard(a, b, DEFAULT_GUARD)
}

/// As [`includes`]; the guard bounds rank-based complementation where it is used.
pub fn includes_with_guard(a: &WeightedAutomaton, b: &WeightedAutomaton, guard: usize) -> Result<Inclusion, OmegaError> {
    if a.alphabet() != b.alphabet() {
        return Err(OmegaError::AlphabetMismatch);
    }
    let min_b = b.weights().first().copied().unwrap_or(0);
    for v in a.weights().into_iter().rev() {
        if v <= min_b {
            break;
        }
        let ta = threshold(a, v);
        if let Some(w) = difference(&ta, &threshold(b, v), guard)? {
            return Ok(Inclusion { holds: false, counterexample: Some(minimize_counterexample(a, b, w)) });
        }
    }
    Ok(Inclusion { holds: true, counterexample: None })
}

/// Shortest lasso (total length, then stem length, then letters) with
/// `A_sup(w) > B_sup(w)`, searched up to the length of `found`.
pub fn minimize_counterexample(a: &WeightedAutomaton, b: &WeightedAutomaton, found: LassoWord) -> LassoWord {
    let mut budget = COUNTEREXAMPLE_BUDGET;
    for w in LassoWord::all_up_to(a.num_letters(), found.positions()) {
        if budget == 0 {
            break;
        }
        budget -= 1;
        if w == found {
            return found;
        }
        if sup_value(a, &w).unwrap().0 > sup_value(b, &w).unwrap().0 {
            return w;
        }
    }
    found
}

/// `∀w: A_sup(w) >= v`; a failure witness is returned when false.
pub fn universal_at(aut: &WeightedAutomaton, v: Weight) -> Result<(bool, Option<LassoWord>), OmegaError> {
    universal_at_with_guard(aut, v, DEFAULT_GUARD)
}

pub fn universal_at_with_guard(aut: &WeightedAutomaton, v: Weight, guard: usize) -> Result<(bool, Option<LassoWord>), OmegaError> {
    if v == 0 {
        return Ok((true, None));
    }
    let all = WeightedAutomaton::new(
        "all",
        aut.alphabet().to_vec(),
        vec!["u".into()],
        0,
        (0..aut.num_letters()).map(|a| Transition { src: 0, letter: a, weight: 1, dst: 0 }).collect(),
        ValueFn::LimSup,
    )
    .expect("universal automaton");
    Ok(match difference(&ThresholdAutomaton::new(all), &threshold(aut, v), guard)? {
        None => (true, None),
        Some(w) => (false, Some(w)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonSpec;

    fn fig1() -> WeightedAutomaton {
        AutomatonSpec::new("fig1", ValueFn::LimSup, &["a", "b"], "q0")
            .t("q0", "*", 0, "q0")
            .t("q0", "a", 0, "q1")
            .t("q1", "b", 1, "q1")
            .t("q1", "a", 0, "q2")
            .t("q2", "*", 2, "q2")
            .build()
            .unwrap()
    }

    fn count_a(w: &LassoWord) -> usize {
        if w.cycle().contains(&0) {
            usize::MAX
        } else {
            w.stem().iter().filter(|&&x| x == 0).count()
        }
    }

    #[test]
    fn fig1_threshold_two_means_two_as() {
        let a = fig1();
        let t = threshold(&a, 2);
        let c = complement_buchi(&t.automaton, DEFAULT_GUARD).unwrap();
        for w in LassoWord::all_up_to(2, 4) {
            assert_eq!(t.accepts(&w), count_a(&w) >= 2, "{w}");
            assert_eq!(sup_value(&c, &w).unwrap().0 == 1, count_a(&w) <= 1, "{w}");
        }
    }

    #[test]
    fn universality() {
        let a = fig1();
        assert_eq!(universal_at(&a, 0).unwrap().0, true);
        let (u, w) = universal_at(&a, 1).unwrap();
        assert!(!u);
        assert_eq!(sup_value(&a, &w.unwrap()).unwrap().0, 0);
    }

    #[test]
    fn breakpoint_matches_nondeterministic() {
        let ncw = AutomatonSpec::new("n", ValueFn::LimInf, &["a", "b"], "p")
            .t("p", "*", 1, "p")
            .t("p", "a", 1, "q")
            .t("q", "a", 1, "q")
            .t("q", "b", 0, "p")
            .build()
            .unwrap()
            .map_weights(|t| if t.src == 0 && t.dst == 0 && t.letter == 1 { 0 } else { t.weight });
        let d = determinize_cobuchi(&ncw);
        assert!(d.is_deterministic());
        for w in LassoWord::all_up_to(2, 5) {
            assert_eq!(sup_value(&ncw, &w).unwrap().0, sup_value(&d, &w).unwrap().0, "{w}");
        }
    }

    #[test]
    fn inclusion_on_fig1_variants() {
        let a = fig1();
        assert!(includes(&a, &a).unwrap().holds);
        let zero = a.map_weights(|_| 0);
        assert!(includes(&zero, &a).unwrap().holds);
        let r = includes(&a, &zero).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample.unwrap().display(a.alphabet()), "(a)");
    }
}
