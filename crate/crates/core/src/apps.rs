//! End-to-end procedures: bottom value, history-determinism, hyperproperty
//! inclusion and the safety check for resolved boolean automata.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{ValueFn, WeightedAutomaton};
use crate::game::{letter_game, GameError};
use crate::graph::Graph;
use crate::lasso::LassoWord;
use crate::logic::{evaluate, parse, value_vectors, LogicError, ResolverFormula};
use crate::monitor::Cmp;
use crate::omega::{includes, universal_at, OmegaError};
use crate::relations::{check, class_members, Mode, Relation, RelationError, RelationQuery, Strategy, Witness, DEFAULT_CAP};
use crate::resolver::{count_positional, unique_resolver, Resolver, ResolverError};
use crate::value::top_value;
use crate::Weight;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("automaton {0} is not boolean (weights other than 0 and 1)")]
    NotBoolean(String),
    #[error("automaton {0} is not deterministic")]
    NotDeterministic(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Resolver(#[from] ResolverError),
}

#[derive(Clone, Debug, Serialize)]
pub struct BottomValue {
    pub value: Weight,
    /// A word whose supremum value is the bottom value.
    pub word: LassoWord,
}

/// `⊥_A = inf_w A_sup(w)` by universality checks over the weights in
/// increasing order.
pub fn bottom_value(a: &WeightedAutomaton) -> Result<BottomValue, AppError> {
    let ws = a.weights();
    let mut best = ws[0];
    for &v in &ws[1..] {
        match universal_at(a, v)? {
            (true, _) => best = v,
            (false, w) => {
                let word = w.expect("failed universality comes with a word");
                return Ok(BottomValue { value: best, word });
            }
        }
    }
    Ok(BottomValue { value: best, word: top_value(a).word })
}

/// The formula stating that the bottom value of `A` is `x`.
pub fn bottom_value_formula(x: Weight) -> ResolverFormula {
    parse(&format!(
        "exists w1 . exists f1 in R(A) . forall w2 . forall f2 in R(A) . exists f3 in R(A) . \
         val(A,f1,w1) = {x} && val(A,f1,w1) >= val(A,f2,w1) && val(A,f1,w1) <= val(A,f3,w2)"
    ))
    .expect("well-formed formula")
}

/// The bottom value according to [`bottom_value_formula`] with resolvers
/// ranging over the class of `mode`: the weight for which it holds.
pub fn bottom_value_by_formula(a: &WeightedAutomaton, mode: Mode) -> Result<Option<Weight>, AppError> {
    let m = HashMap::from([("A".to_string(), a.clone())]);
    for x in a.weights() {
        if evaluate(&bottom_value_formula(x), &m, mode)?.holds {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct HdVerdict {
    pub holds: bool,
    pub semantics: String,
    /// A resolver attaining the supremum on every word.
    pub witness: Option<Resolver>,
}

/// History-determinism as self blind dominance `A ⊴ A`.
///
/// `game` and `auto` solve the letter game; a positional witness is
/// preferred when one exists. Where the game is unavailable (LimSup
/// automata that are not SCC-uniform), and in `pos` and `fin:k`, the
/// right resolver is drawn from the class while the left stays general:
/// the verdict is whether some `g` in the class has `A_sup <= A^g`,
/// labelled `⊴[A:general, B:class]`. The fallback class is `fin:2`, reduced
/// to `pos` under `auto` when `fin:2` exceeds the enumeration cap.
pub fn hd_check(a: &WeightedAutomaton, mode: Mode) -> Result<HdVerdict, AppError> {
    if a.is_deterministic() {
        let r = unique_resolver(a).expect("deterministic automaton").into();
        return Ok(HdVerdict { holds: true, semantics: "deterministic".into(), witness: Some(r) });
    }
    let class = match mode {
        Mode::Game | Mode::Auto => match check(&RelationQuery::new(Relation::Blind, a, a, Mode::Game)) {
            Err(RelationError::Game(GameError::Unsupported(_))) => Mode::Fin(2),
            r => {
                let v = r?;
                let witness = match v.witness {
                    Witness::Dominator(Strategy::Plain(r)) if v.holds => Some(positional_witness(a)?.unwrap_or(r)),
                    _ => None,
                };
                return Ok(HdVerdict { holds: v.holds, semantics: v.semantics, witness });
            }
        },
        m => m,
    };
    let label = |c: Mode| format!("{}[A:general, B:{c}]", Relation::Blind.symbol());
    let mut classes = vec![Mode::Pos];
    if class != Mode::Pos && class != Mode::Fin(1) {
        classes.push(class);
    }
    let mut searched = Mode::Pos;
    for c in classes {
        let (gs, ds) = match class_members(a, c, DEFAULT_CAP) {
            // The fallback class is a best effort; an explicit one is not.
            Err(RelationError::Cap(_) | RelationError::Resolver(ResolverError::EnumerationCap(_)))
                if c != Mode::Pos && mode == Mode::Auto =>
            {
                break
            }
            r => r?,
        };
        for (g, d) in gs.into_iter().zip(&ds) {
            if includes(a, d)?.holds {
                return Ok(HdVerdict { holds: true, semantics: label(c), witness: Some(g) });
            }
        }
        searched = c;
    }
    Ok(HdVerdict { holds: false, semantics: label(searched), witness: None })
}

/// The first positional resolver `f` with `A_sup <= A^f`, if the positional
/// resolvers fit under the enumeration cap.
fn positional_witness(a: &WeightedAutomaton) -> Result<Option<Resolver>, AppError> {
    if count_positional(a) > DEFAULT_CAP as u128 {
        return Ok(None);
    }
    let (gs, ds) = class_members(a, Mode::Pos, DEFAULT_CAP)?;
    for (g, d) in gs.into_iter().zip(&ds) {
        if includes(a, d)?.holds {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// A nondeterministic automaton read as the set `{A^f : f in class}`.
#[derive(Clone, Debug)]
pub struct HyperSpec<'a> {
    pub automaton: &'a WeightedAutomaton,
    /// `pos` or `fin:k` enumerate; `game` and `auto` mean all resolvers.
    pub class: Mode,
}

/// A resolver of `B` and a word on which it differs from `A^f`.
#[derive(Clone, Debug, Serialize)]
pub struct Distinction {
    pub g: Resolver,
    pub word: LassoWord,
}

#[derive(Clone, Debug, Serialize)]
pub enum HyperWitness {
    /// For every `f`, a `g` with `A^f = B^g`.
    Matches(Vec<(Resolver, Resolver)>),
    /// An `f` matched by no `g`, with a distinguishing word per `g` when
    /// the `g` were enumerated.
    Unmatched { f: Resolver, distinctions: Vec<Distinction> },
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperVerdict {
    pub holds: bool,
    pub semantics: String,
    pub witness: HyperWitness,
}

/// A word on which two deterministic automata differ.
fn distinguish(d: &WeightedAutomaton, e: &WeightedAutomaton) -> Result<Option<LassoWord>, LogicError> {
    let vs = value_vectors(&[d.clone(), e.clone()])?;
    Ok(vs.into_iter().find(|v| v.values[0] != v.values[1]).map(|v| v.word))
}

/// `H_A ⊆ H_B`: every `A^f` with `f` in A's class equals some `B^g`.
pub fn hyper_includes(a: &HyperSpec, b: &HyperSpec) -> Result<HyperVerdict, AppError> {
    a.automaton.same_alphabet(b.automaton).map_err(|_| RelationError::AlphabetMismatch)?;
    let (fs, ds) = class_members(a.automaton, a.class, DEFAULT_CAP)?;
    let enumerated = !matches!(b.class, Mode::Game | Mode::Auto);
    let semantics = format!("A:{}, B:{}", a.class, if enumerated { b.class.to_string() } else { "general".into() });
    let members = if enumerated { Some(class_members(b.automaton, b.class, DEFAULT_CAP)?) } else { None };
    let mut matches = Vec::new();
    for (f, d) in fs.into_iter().zip(&ds) {
        let found = match &members {
            Some((gs, es)) => {
                let mut distinctions = Vec::new();
                let mut hit = None;
                for (g, e) in gs.iter().zip(es) {
                    match distinguish(d, e)? {
                        None => {
                            hit = Some(g.clone());
                            break;
                        }
                        Some(word) => distinctions.push(Distinction { g: g.clone(), word }),
                    }
                }
                hit.ok_or(distinctions)
            }
            None => {
                let lg = letter_game(b.automaton, d, Cmp::Eq)?;
                if lg.eve_wins() {
                    Ok(lg.resolver(b.automaton, d).into())
                } else {
                    Err(Vec::new())
                }
            }
        };
        match found {
            Ok(g) => matches.push((f, g)),
            Err(distinctions) => {
                return Ok(HyperVerdict { holds: false, semantics, witness: HyperWitness::Unmatched { f, distinctions } })
            }
        }
    }
    Ok(HyperVerdict { holds: true, semantics, witness: HyperWitness::Matches(matches) })
}

/// Whether the language `{w : D(w) = 1}` of a deterministic boolean
/// automaton is a safety property: no word whose run stays among states
/// that can still reach value 1 is rejected.
pub fn is_safety_language(d: &WeightedAutomaton) -> Result<bool, AppError> {
    if !d.is_deterministic() {
        return Err(AppError::NotDeterministic(d.name().into()));
    }
    if d.transitions().iter().any(|t| t.weight > 1) {
        return Err(AppError::NotBoolean(d.name().into()));
    }
    let n = d.normalize().automaton;
    let mut g = Graph::new(n.num_states());
    for t in n.transitions() {
        g.add_edge(t.src, t.dst, t.letter, t.weight);
    }
    let sup = n.value_fn() == ValueFn::LimSup;
    let one = |e: usize| g.edges[e].weight == 1;
    // Edges on an accepting cycle.
    let good = if sup { g.cyclic_edges(&|_| true) } else { g.cyclic_edges(&one) };
    let good: Vec<bool> = good.iter().enumerate().map(|(e, &c)| c && (!sup || one(e))).collect();
    let live: Vec<bool> = (0..g.n)
        .map(|q| {
            let r = g.reachable_from(q, &|_| true);
            (0..g.edges.len()).any(|e| good[e] && r[g.edges[e].from])
        })
        .collect();
    if !live[n.initial()] {
        return Ok(true);
    }
    let inside = |e: usize| live[g.edges[e].from] && live[g.edges[e].to];
    let reach = g.reachable_from(n.initial(), &inside);
    // A rejecting cycle among live states.
    let bad = if sup {
        g.cyclic_edges(&|e| inside(e) && !one(e))
    } else {
        g.cyclic_edges(&inside).iter().enumerate().map(|(e, &c)| c && !one(e)).collect()
    };
    Ok(!(0..g.edges.len()).any(|e| bad[e] && reach[g.edges[e].from]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonSpec;
    use crate::fixtures;
    use crate::resolver::{apply, enumerate_positional, resolver_value, PositionalResolver};
    use crate::value::sup_value;

    #[test]
    fn bottom_values_of_fixtures() {
        let a = fixtures::fig1(ValueFn::LimSup);
        let b = bottom_value(&a).unwrap();
        assert_eq!(b.value, 0);
        assert_eq!(sup_value(&a, &b.word).unwrap().0, 0);
        for vf in ValueFn::ALL {
            let (_, b3) = fixtures::fig3(vf);
            assert_eq!(bottom_value(&b3).unwrap().value, 1, "{vf}");
            let (a4, _) = fixtures::fig4(vf);
            let bv = bottom_value(&a4).unwrap();
            assert_eq!(bv.value, 0);
            assert_eq!(sup_value(&a4, &bv.word).unwrap().0, 0);
        }
    }

    #[test]
    fn bottom_value_formula_agrees_on_fixtures() {
        let (a4, _) = fixtures::fig4(ValueFn::LimSup);
        let m = HashMap::from([("A".to_string(), a4.clone())]);
        assert!(evaluate(&bottom_value_formula(0), &m, Mode::Pos).unwrap().holds);
        let mut autos = vec![fixtures::fig1(ValueFn::LimSup), a4];
        autos.push(fixtures::fig3(ValueFn::Inf).1);
        for a in &autos {
            assert_eq!(bottom_value_by_formula(a, Mode::Pos).unwrap(), Some(bottom_value(a).unwrap().value));
        }
    }

    #[test]
    fn history_determinism() {
        let det = AutomatonSpec::new("d", ValueFn::LimInf, &["a"], "p").t("p", "a", 1, "p").build().unwrap();
        assert!(hd_check(&det, Mode::Game).unwrap().holds);
        for vf in ValueFn::ALL {
            let a = fixtures::fig1(vf);
            let v = hd_check(&a, Mode::Auto).unwrap();
            assert!(v.holds, "{vf}");
            let g = v.witness.unwrap();
            for w in LassoWord::all_up_to(2, 5) {
                assert_eq!(resolver_value(&a, &g, &w).unwrap().0, sup_value(&a, &w).unwrap().0, "{vf} {w}");
            }
            let (a4, _) = fixtures::fig4(vf);
            assert!(!hd_check(&a4, Mode::Auto).unwrap().holds, "{vf}");
            assert!(!hd_check(&a4, Mode::Pos).unwrap().holds, "{vf}");
        }
    }

    #[test]
    fn hyperproperty_inclusion() {
        let (a, b) = fixtures::fig5();
        let pos = |x| HyperSpec { automaton: x, class: Mode::Pos };
        let gen = |x| HyperSpec { automaton: x, class: Mode::Game };
        for x in [&a, &b] {
            assert!(hyper_includes(&pos(x), &pos(x)).unwrap().holds);
            assert!(hyper_includes(&pos(x), &gen(x)).unwrap().holds);
        }
        let v = hyper_includes(&pos(&a), &pos(&b)).unwrap();
        assert!(!v.holds);
        let HyperWitness::Unmatched { f, distinctions } = v.witness else { panic!() };
        assert_eq!(distinctions.len(), 4);
        for dd in &distinctions {
            let x = resolver_value(&a, &f, &dd.word).unwrap().0;
            assert_ne!(x, resolver_value(&b, &dd.g, &dd.word).unwrap().0);
        }
        // A deterministic system whose language is the safety property G b.
        let sys = AutomatonSpec::new("sys", ValueFn::Inf, &["a", "b"], "p")
            .t("p", "b", 1, "p")
            .t("p", "a", 0, "z")
            .t("z", "*", 0, "z")
            .build()
            .unwrap();
        assert!(hyper_includes(&pos(&sys), &gen(&a)).unwrap().holds);
        assert!(!hyper_includes(&pos(&sys), &gen(&b)).unwrap().holds);
    }

    #[test]
    fn safety_of_resolved_fixtures() {
        let (a, b) = fixtures::fig5();
        for f in enumerate_positional(&a) {
            assert!(is_safety_language(&apply(&a, &f.into()).unwrap().automaton).unwrap());
        }
        // Move to q1 on a only: the language "eventually a" is not safe.
        let g = PositionalResolver::from_table(2, vec![1, 0, 1, 1]);
        assert!(!is_safety_language(&apply(&b, &g.into()).unwrap().automaton).unwrap());
        let all = AutomatonSpec::new("all", ValueFn::Inf, &["a"], "p").t("p", "a", 1, "p").build().unwrap();
        assert!(is_safety_language(&all).unwrap());
        assert!(matches!(is_safety_language(&a), Err(AppError::NotDeterministic(_))));
        let two = AutomatonSpec::new("two", ValueFn::Inf, &["a"], "p").t("p", "a", 2, "p").build().unwrap();
        assert!(matches!(is_safety_language(&two), Err(AppError::NotBoolean(_))));
    }
}
