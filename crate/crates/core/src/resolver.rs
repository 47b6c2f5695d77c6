//! Positional and finite-memory resolvers, resolved automata and enumeration.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{Transition, WeightedAutomaton};
use crate::lasso::{LassoError, LassoWord, Run, Step};
use crate::Weight;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolverError {
    #[error("resolver shape does not match the automaton ({0})")]
    Mismatch(String),
    #[error("resolver picks {target} from state {state} on {letter}, which is not a transition")]
    IllegalChoice { state: String, letter: String, target: String },
    #[error("enumeration exceeded the cap of {0} resolvers")]
    EnumerationCap(usize),
    #[error(transparent)]
    Lasso(#[from] LassoError),
}

/// A resolver reading only the current state and the next letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PositionalResolver {
    n_letters: usize,
    choice: Vec<usize>,
}

impl PositionalResolver {
    pub fn from_table(n_letters: usize, choice: Vec<usize>) -> Self {
        PositionalResolver { n_letters, choice }
    }

    pub fn choose(&self, q: usize, a: usize) -> usize {
        self.choice[q * self.n_letters + a]
    }

    pub fn table(&self) -> &[usize] {
        &self.choice
    }
}

/// A Mealy-style finite-memory resolver. `choice` and `update` are indexed
/// by `(memory, state, letter)`; the update is applied to the chosen target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteMemoryResolver {
    pub memory: Vec<String>,
    pub initial: usize,
    n_states: usize,
    n_letters: usize,
    choice: Vec<usize>,
    update: Vec<usize>,
}

impl FiniteMemoryResolver {
    pub fn new(
        memory: Vec<String>,
        initial: usize,
        n_states: usize,
        n_letters: usize,
        choice: Vec<usize>,
        update: Vec<usize>,
    ) -> Self {
        FiniteMemoryResolver { memory, initial, n_states, n_letters, choice, update }
    }

    fn key(&self, m: usize, q: usize, a: usize) -> usize {
        (m * self.n_states + q) * self.n_letters + a
    }

    pub fn choose(&self, m: usize, q: usize, a: usize) -> usize {
        self.choice[self.key(m, q, a)]
    }

    /// Memory after moving from `q` to `target` on `a`; `None` when `target`
    /// is not the resolver's choice.
    pub fn update(&self, m: usize, q: usize, a: usize, target: usize) -> Option<usize> {
        let k = self.key(m, q, a);
        (self.choice[k] == target).then_some(self.update[k])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Resolver {
    Positional(PositionalResolver),
    FiniteMemory(FiniteMemoryResolver),
}

impl From<PositionalResolver> for Resolver {
    fn from(p: PositionalResolver) -> Self {
        Resolver::Positional(p)
    }
}

impl From<FiniteMemoryResolver> for Resolver {
    fn from(p: FiniteMemoryResolver) -> Self {
        Resolver::FiniteMemory(p)
    }
}

impl Resolver {
    pub fn memory_size(&self) -> usize {
        match self {
            Resolver::Positional(_) => 1,
            Resolver::FiniteMemory(f) => f.memory.len(),
        }
    }

    pub fn initial_memory(&self) -> usize {
        match self {
            Resolver::Positional(_) => 0,
            Resolver::FiniteMemory(f) => f.initial,
        }
    }

    /// `(target, next memory)` from memory `m`, state `q`, letter `a`.
    pub fn step(&self, m: usize, q: usize, a: usize) -> (usize, usize) {
        match self {
            Resolver::Positional(p) => (p.choose(q, a), 0),
            Resolver::FiniteMemory(f) => {
                let k = f.key(m, q, a);
                (f.choice[k], f.update[k])
            }
        }
    }

    /// Checks shape and that every choice is a transition.
    pub fn check(&self, aut: &WeightedAutomaton) -> Result<(), ResolverError> {
        let (nq, nl) = (aut.num_states(), aut.num_letters());
        let mem = self.memory_size();
        match self {
            Resolver::Positional(p) => {
                if p.n_letters != nl || p.choice.len() != nq * nl {
                    return Err(ResolverError::Mismatch(format!("{} entries for {}x{}", p.choice.len(), nq, nl)));
                }
            }
            Resolver::FiniteMemory(f) => {
                if f.n_letters != nl
                    || f.n_states != nq
                    || f.choice.len() != mem * nq * nl
                    || f.update.len() != mem * nq * nl
                    || f.initial >= mem
                    || f.update.iter().any(|&u| u >= mem)
                {
                    return Err(ResolverError::Mismatch("finite-memory table shape".into()));
                }
            }
        }
        for m in 0..mem {
            for q in 0..nq {
                for a in 0..nl {
                    let (t, _) = self.step(m, q, a);
                    if t >= nq || aut.transition(q, a, t).is_none() {
                        return Err(ResolverError::IllegalChoice {
                            state: aut.state_name(q).into(),
                            letter: aut.letter_name(a).into(),
                            target: if t < nq { aut.state_name(t).into() } else { t.to_string() },
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// `A^f` as a deterministic automaton over reachable (state, memory) pairs.
#[derive(Clone, Debug)]
pub struct ResolvedAutomaton {
    pub automaton: WeightedAutomaton,
    /// Original `(state, memory)` of each resolved state.
    pub origin: Vec<(usize, usize)>,
}

impl ResolvedAutomaton {
    /// Projects a run of the resolved automaton onto the original one.
    pub fn project_run(&self, run: &Run) -> Run {
        let p = |s: &Step| Step { src: self.origin[s.src].0, dst: self.origin[s.dst].0, ..*s };
        Run { stem: run.stem.iter().map(p).collect(), cycle: run.cycle.iter().map(p).collect() }
    }
}

/// Builds `A^f`.
pub fn apply(aut: &WeightedAutomaton, r: &Resolver) -> Result<ResolvedAutomaton, ResolverError> {
    r.check(aut)?;
    let positional = matches!(r, Resolver::Positional(_));
    let start = (aut.initial(), r.initial_memory());
    let mut ids: HashMap<(usize, usize), usize> = HashMap::from([(start, 0)]);
    let mut keys = vec![start];
    let mut ts = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (q, m) = keys[i];
        for a in 0..aut.num_letters() {
            let (t, m2) = r.step(m, q, a);
            let w = aut.transition(q, a, t).expect("checked").weight;
            let key = (t, m2);
            let id = *ids.entry(key).or_insert_with(|| {
                keys.push(key);
                keys.len() - 1
            });
            ts.push(Transition { src: i, letter: a, weight: w, dst: id });
        }
        i += 1;
    }
    let names = keys
        .iter()
        .map(|&(q, m)| {
            if positional {
                aut.state_name(q).to_string()
            } else {
                match r {
                    Resolver::FiniteMemory(f) => format!("{}.{}", aut.state_name(q), f.memory[m]),
                    _ => unreachable!(),
                }
            }
        })
        .collect();
    let automaton = WeightedAutomaton::new(
        format!("{}^f", aut.name()),
        aut.alphabet().to_vec(),
        names,
        0,
        ts,
        aut.value_fn(),
    )
    .expect("resolved automaton is total and deterministic");
    Ok(ResolvedAutomaton { automaton, origin: keys })
}

/// The unique run of a deterministic automaton on a lasso word.
pub fn deterministic_run(det: &WeightedAutomaton, word: &LassoWord) -> Result<Run, LassoError> {
    word.check_alphabet(det.num_letters())?;
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut steps = Vec::new();
    let (mut q, mut pos) = (det.initial(), 0usize);
    loop {
        if pos >= word.stem().len() {
            if let Some(&at) = seen.get(&(q, pos)) {
                let cycle = steps.split_off(at);
                return Ok(Run { stem: steps, cycle });
            }
            seen.insert((q, pos), steps.len());
        }
        let a = word.letter_at(pos);
        let t = det.succ(q, a)[0];
        steps.push(Step { src: q, letter: a, weight: t.weight, dst: t.dst });
        q = t.dst;
        pos = word.next_pos(pos);
    }
}

/// `A^f(w)` with the witnessing run of `A`.
pub fn resolver_value(aut: &WeightedAutomaton, r: &Resolver, word: &LassoWord) -> Result<(Weight, Run), ResolverError> {
    let res = apply(aut, r)?;
    let run = deterministic_run(&res.automaton, word)?;
    let v = run.value(aut.value_fn());
    Ok((v, res.project_run(&run)))
}

/// Number of positional resolvers: product of out-degrees.
pub fn count_positional(aut: &WeightedAutomaton) -> u128 {
    let mut c: u128 = 1;
    for q in 0..aut.num_states() {
        for a in 0..aut.num_letters() {
            c = c.saturating_mul(aut.succ(q, a).len() as u128);
        }
    }
    c
}

/// All positional resolvers in lexicographic order of their choice tables
/// (states, then letters, then targets in index order).
pub fn enumerate_positional(aut: &WeightedAutomaton) -> impl Iterator<Item = PositionalResolver> + '_ {
    let nl = aut.num_letters();
    let slots: Vec<Vec<usize>> = (0..aut.num_states())
        .flat_map(|q| (0..nl).map(move |a| (q, a)))
        .map(|(q, a)| aut.succ(q, a).iter().map(|t| t.dst).collect())
        .collect();
    let mut digits: Option<Vec<usize>> = Some(vec![0; slots.len()]);
    std::iter::from_fn(move || {
        let d = digits.as_mut()?;
        let out = PositionalResolver { n_letters: nl, choice: d.iter().zip(&slots).map(|(&i, s)| s[i]).collect() };
        let mut k = d.len();
        loop {
            if k == 0 {
                digits = None;
                break;
            }
            k -= 1;
            d[k] += 1;
            if d[k] < slots[k].len() {
                break;
            }
            d[k] = 0;
        }
        Some(out)
    })
}

/// Finite-memory resolvers with at most `k` memory states, up to renaming of
/// memory: memory values are numbered by first use along a breadth-first
/// exploration of reachable (state, memory) pairs, so each behaviour is
/// generated once per memory labelling. Unreachable table entries are filled
/// with the first transition and keep the memory. Fails beyond `cap`.
pub fn enumerate_finite(aut: &WeightedAutomaton, k: usize, cap: usize) -> Result<Vec<FiniteMemoryResolver>, ResolverError> {
    struct Ctx<'a> {
        aut: &'a WeightedAutomaton,
        k: usize,
        cap: usize,
        out: Vec<FiniteMemoryResolver>,
    }
    fn finish(ctx: &mut Ctx, nodes: &[(usize, usize)], picks: &HashMap<(usize, usize, usize), (usize, usize)>, used: usize) {
        let (nq, nl) = (ctx.aut.num_states(), ctx.aut.num_letters());
        let mut choice = vec![0; used * nq * nl];
        let mut update = vec![0; used * nq * nl];
        for m in 0..used {
            for q in 0..nq {
                for a in 0..nl {
                    let key = (m * nq + q) * nl + a;
                    let (t, m2) = picks.get(&(q, m, a)).copied().unwrap_or((ctx.aut.succ(q, a)[0].dst, m));
                    choice[key] = t;
                    update[key] = m2;
                }
            }
        }
        let _ = nodes;
        ctx.out.push(FiniteMemoryResolver {
            memory: (0..used).map(|m| format!("m{m}")).collect(),
            initial: 0,
            n_states: nq,
            n_letters: nl,
            choice,
            update,
        });
    }
    fn rec(
        ctx: &mut Ctx,
        nodes: &mut Vec<(usize, usize)>,
        node_i: usize,
        letter: usize,
        picks: &mut HashMap<(usize, usize, usize), (usize, usize)>,
        used: usize,
    ) -> Result<(), ResolverError> {
        if ctx.out.len() > ctx.cap {
            return Err(ResolverError::EnumerationCap(ctx.cap));
        }
        if node_i == nodes.len() {
            finish(ctx, nodes, picks, used);
            return Ok(());
        }
        if letter == ctx.aut.num_letters() {
            return rec(ctx, nodes, node_i + 1, 0, picks, used);
        }
        let (q, m) = nodes[node_i];
        let targets: Vec<usize> = ctx.aut.succ(q, letter).iter().map(|t| t.dst).collect();
        for t in targets {
            for m2 in 0..=used.min(ctx.k - 1) {
                let new_used = if m2 == used { used + 1 } else { used };
                let pushed = !nodes.contains(&(t, m2));
                if pushed {
                    nodes.push((t, m2));
                }
                picks.insert((q, m, letter), (t, m2));
                rec(ctx, nodes, node_i, letter + 1, picks, new_used)?;
                picks.remove(&(q, m, letter));
                if pushed {
                    nodes.pop();
                }
            }
        }
        Ok(())
    }
    let mut ctx = Ctx { aut, k: k.max(1), cap, out: Vec::new() };
    let mut nodes = vec![(aut.initial(), 0)];
    let mut picks = HashMap::new();
    rec(&mut ctx, &mut nodes, 0, 0, &mut picks, 1)?;
    if ctx.out.len() > cap {
        return Err(ResolverError::EnumerationCap(cap));
    }
    Ok(ctx.out)
}

/// Positional resolver of a deterministic automaton.
pub fn unique_resolver(aut: &WeightedAutomaton) -> Option<PositionalResolver> {
    aut.is_deterministic().then(|| enumerate_positional(aut).next().expect("one resolver"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{AutomatonSpec, ValueFn};

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

    #[test]
    fn fig1_has_two_positional_resolvers() {
        let a = fig1();
        assert_eq!(count_positional(&a), 2);
        let all: Vec<_> = enumerate_positional(&a).collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].choose(0, 0), 0);
        assert_eq!(all[1].choose(0, 0), 1);
    }

    #[test]
    fn f1_counts_letters_a() {
        let a = fig1();
        let f1: Resolver = enumerate_positional(&a).nth(1).unwrap().into();
        let r = apply(&a, &f1).unwrap();
        assert_eq!(r.automaton.num_states(), 3);
        let ab = a.alphabet().to_vec();
        let w = LassoWord::parse("a(b)", &ab).unwrap();
        assert_eq!(resolver_value(&a, &f1, &w).unwrap().0, 1);
    }

    #[test]
    fn enumerate_finite_contains_positional() {
        let a = fig1();
        let one = enumerate_finite(&a, 1, 1000).unwrap();
        assert_eq!(one.len(), 2);
        let two = enumerate_finite(&a, 2, 100_000).unwrap();
        assert!(two.len() > 2);
        for f in &two {
            Resolver::FiniteMemory(f.clone()).check(&a).unwrap();
        }
    }
}
