//! Evaluation with resolver quantifiers ranging over an enumerable class.
//!
//! Resolver quantifiers iterate over the class members. A word quantifier
//! only matters through the values it induces, so it ranges over the value
//! vectors of the tracks it is compared on: the already bound resolvers and
//! every candidate of the resolvers bound later.

use std::collections::HashMap;
use std::rc::Rc;

use serde::Serialize;

use crate::automaton::WeightedAutomaton;
use crate::lasso::LassoWord;
use crate::relations::{class_members, Mode, DEFAULT_CAP};
use crate::resolver::Resolver;
use crate::Weight;

use super::{decide_presburger, value_vectors, LogicError, Quantifier, ResolverFormula, Sort, ValueVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Binding {
    Resolver(Resolver),
    Word(LassoWord),
}

/// How a verdict was reached, quantifier by quantifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessTree {
    /// The matrix under the chosen bindings, with the value term values.
    Leaf { values: Vec<Weight> },
    /// A choice that settles the quantifier: a witness for a true `∃` or a
    /// counterexample for a false `∀`.
    Choice { var: String, binding: Binding, then: Box<WitnessTree> },
    /// Every option, when none settles the quantifier.
    Every { var: String, branches: Vec<(Binding, WitnessTree)> },
}

#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    pub holds: bool,
    /// The resolver class the quantifiers ranged over.
    pub semantics: String,
    pub witness: WitnessTree,
}

impl Evaluation {
    /// The settling choices along the outermost path of the witness.
    pub fn decisive_bindings(&self) -> Vec<(String, Binding)> {
        let mut out = Vec::new();
        let mut t = &self.witness;
        while let WitnessTree::Choice { var, binding, then } = t {
            out.push((var.clone(), binding.clone()));
            t = then;
        }
        out
    }
}

/// A class member: resolver plus the deterministic automaton it induces.
type Members = (Vec<Resolver>, Vec<WeightedAutomaton>);

/// Values taken by `(resolver binder, candidate)` tracks at a bound word.
type WordValues = HashMap<(usize, usize), Weight>;

struct Ctx<'a> {
    f: &'a ResolverFormula,
    members: Vec<Option<Members>>,
    vectors: HashMap<Vec<(usize, usize)>, Rc<Vec<ValueVector>>>,
    matrix: HashMap<Vec<u64>, bool>,
}

struct Env {
    resolvers: Vec<Option<usize>>,
    words: Vec<Option<Rc<WordValues>>>,
}

impl Ctx<'_> {
    fn tracks(&self, j: usize, env: &Env) -> Vec<(usize, usize)> {
        let mut ts = Vec::new();
        for v in self.f.vals.iter().filter(|v| v.word == j) {
            let n = self.members[v.resolver].as_ref().map_or(0, |m| m.0.len());
            match env.resolvers[v.resolver] {
                Some(c) => ts.push((v.resolver, c)),
                None => ts.extend((0..n).map(|c| (v.resolver, c))),
            }
        }
        ts.sort_unstable();
        ts.dedup();
        ts
    }

    fn vectors(&mut self, ts: &[(usize, usize)]) -> Result<Rc<Vec<ValueVector>>, LogicError> {
        if let Some(v) = self.vectors.get(ts) {
            return Ok(v.clone());
        }
        let autos: Vec<WeightedAutomaton> =
            ts.iter().map(|&(r, c)| self.members[r].as_ref().expect("resolver binder").1[c].clone()).collect();
        let v = Rc::new(value_vectors(&autos)?);
        self.vectors.insert(ts.to_vec(), v.clone());
        Ok(v)
    }

    fn leaf(&mut self, env: &Env) -> Result<(bool, WitnessTree), LogicError> {
        let values: Vec<Weight> = self
            .f
            .vals
            .iter()
            .map(|v| {
                let c = env.resolvers[v.resolver].expect("bound resolver");
                env.words[v.word].as_ref().expect("bound word")[&(v.resolver, c)]
            })
            .collect();
        let key: Vec<u64> = values.iter().map(|&x| x as u64).collect();
        let holds = match self.matrix.get(&key) {
            Some(&h) => h,
            None => {
                let h = decide_presburger(&self.f.matrix, &key)?;
                self.matrix.insert(key, h);
                h
            }
        };
        Ok((holds, WitnessTree::Leaf { values }))
    }

    fn eval(&mut self, i: usize, env: &mut Env) -> Result<(bool, WitnessTree), LogicError> {
        let Some(b) = self.f.prefix.get(i) else { return self.leaf(env) };
        let want = b.quantifier == Quantifier::Exists;
        let var = b.var.clone();
        let mut branches = Vec::new();
        match &b.sort {
            Sort::Resolver(_) => {
                let n = self.members[i].as_ref().expect("resolver binder").0.len();
                for c in 0..n {
                    env.resolvers[i] = Some(c);
                    let r = self.eval(i + 1, env);
                    env.resolvers[i] = None;
                    let (h, t) = r?;
                    let binding = Binding::Resolver(self.members[i].as_ref().unwrap().0[c].clone());
                    if h == want {
                        return Ok((h, WitnessTree::Choice { var, binding, then: Box::new(t) }));
                    }
                    branches.push((binding, t));
                }
            }
            Sort::Word => {
                let ts = self.tracks(i, env);
                for vec in self.vectors(&ts)?.iter() {
                    let values: WordValues = ts.iter().copied().zip(vec.values.iter().copied()).collect();
                    env.words[i] = Some(Rc::new(values));
                    let r = self.eval(i + 1, env);
                    env.words[i] = None;
                    let (h, t) = r?;
                    let binding = Binding::Word(vec.word.clone());
                    if h == want {
                        return Ok((h, WitnessTree::Choice { var, binding, then: Box::new(t) }));
                    }
                    branches.push((binding, t));
                }
            }
        }
        Ok((!want, WitnessTree::Every { var, branches }))
    }
}

/// Evaluates `formula` with resolver quantifiers over the class of `mode`
/// (`pos` or `fin:k`; `auto` means `pos`). The verdict is exact for that
/// class.
pub fn evaluate(
    formula: &ResolverFormula,
    automata: &HashMap<String, WeightedAutomaton>,
    mode: Mode,
) -> Result<Evaluation, LogicError> {
    evaluate_with_cap(formula, automata, mode, DEFAULT_CAP)
}

pub(crate) fn check_bindings(
    formula: &ResolverFormula,
    automata: &HashMap<String, WeightedAutomaton>,
) -> Result<(), LogicError> {
    let mut first: Option<&WeightedAutomaton> = None;
    for name in formula.automata() {
        let a = automata.get(&name).ok_or_else(|| LogicError::UnknownAutomaton(name.clone()))?;
        if let Some(f) = first {
            f.same_alphabet(a).map_err(|_| LogicError::AlphabetMismatch)?;
        }
        first = Some(a);
    }
    Ok(())
}

pub fn evaluate_with_cap(
    formula: &ResolverFormula,
    automata: &HashMap<String, WeightedAutomaton>,
    mode: Mode,
    cap: usize,
) -> Result<Evaluation, LogicError> {
    let mode = match mode {
        Mode::Auto => Mode::Pos,
        Mode::Fin(1) => Mode::Pos,
        Mode::Game => {
            return Err(LogicError::Unsupported("game semantics is served by the tree backend".into()));
        }
        m => m,
    };
    check_bindings(formula, automata)?;
    let mut members = Vec::new();
    for b in &formula.prefix {
        members.push(match &b.sort {
            Sort::Word => None,
            Sort::Resolver(a) => Some(class_members(&automata[a], mode, cap)?),
        });
    }
    let n = formula.prefix.len();
    let mut ctx = Ctx { f: formula, members, vectors: HashMap::new(), matrix: HashMap::new() };
    let mut env = Env { resolvers: vec![None; n], words: vec![None; n] };
    let (holds, witness) = ctx.eval(0, &mut env)?;
    Ok(Evaluation { holds, semantics: mode.to_string(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::ValueFn;
    use crate::fixtures;
    use crate::logic::parse;
    use crate::resolver::resolver_value;

    const DOMINANCE: &str = "forall f in R(A) . exists g in R(B) . forall w . val(A,f,w) <= val(B,g,w)";

    fn bind(pairs: &[(&str, &WeightedAutomaton)]) -> HashMap<String, WeightedAutomaton> {
        pairs.iter().map(|(n, a)| (n.to_string(), (*a).clone())).collect()
    }

    #[test]
    fn dominance_fails_on_fig3() {
        for vf in ValueFn::ALL {
            let (a, b) = fixtures::fig3(vf);
            let e = evaluate(&parse(DOMINANCE).unwrap(), &bind(&[("A", &a), ("B", &b)]), Mode::Pos).unwrap();
            assert!(!e.holds, "{vf}");
            assert_eq!(e.semantics, "pos");
            // f is A's only resolver; every g is refuted by a word.
            let WitnessTree::Choice { binding: Binding::Resolver(f), then, .. } = &e.witness else { panic!() };
            let WitnessTree::Every { branches, .. } = then.as_ref() else { panic!() };
            assert_eq!(branches.len(), 4);
            for (g, t) in branches {
                let (Binding::Resolver(g), WitnessTree::Choice { binding: Binding::Word(w), .. }) = (g, t) else {
                    panic!()
                };
                assert!(resolver_value(&a, f, w).unwrap().0 > resolver_value(&b, g, w).unwrap().0);
            }
        }
    }

    #[test]
    fn universal_upper_bound_on_fig1() {
        let a = fixtures::fig1(ValueFn::LimSup);
        let m = bind(&[("A", &a)]);
        let f = parse("forall f in R(A) . forall w . val(A,f,w) <= 2").unwrap();
        assert!(evaluate(&f, &m, Mode::Pos).unwrap().holds);
        let g = parse("forall f in R(A) . forall w . val(A,f,w) <= 1").unwrap();
        let e = evaluate(&g, &m, Mode::Fin(2)).unwrap();
        assert!(!e.holds);
        assert_eq!(e.semantics, "fin:2");
        assert_eq!(e.decisive_bindings().len(), 2);
    }

    #[test]
    fn word_before_resolver_uses_all_candidates() {
        // Every word has a resolver reaching the supremum on it.
        let a = fixtures::fig1(ValueFn::LimSup);
        let m = bind(&[("A", &a)]);
        let f = parse("forall w . exists f in R(A) . exists g in R(A) . val(A,f,w) >= val(A,g,w) && val(A,f,w) >= 1")
            .unwrap();
        let e = evaluate(&f, &m, Mode::Pos).unwrap();
        assert!(!e.holds);
        let Some((_, Binding::Word(w))) = e.decisive_bindings().into_iter().next() else { panic!() };
        assert_eq!(crate::value::sup_value(&a, &w).unwrap().0, 0);
    }

    #[test]
    fn errors() {
        let a = fixtures::fig1(ValueFn::LimSup);
        let f = parse(DOMINANCE).unwrap();
        assert!(matches!(evaluate(&f, &bind(&[("A", &a)]), Mode::Pos), Err(LogicError::UnknownAutomaton(_))));
        assert!(matches!(evaluate(&f, &bind(&[("A", &a), ("B", &a)]), Mode::Game), Err(LogicError::Unsupported(_))));
    }
}
