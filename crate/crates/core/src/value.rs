//! Supremum values over all runs, and the top value of an automaton.

use std::collections::HashMap;

use crate::automaton::{ValueFn, WeightedAutomaton};
use crate::graph::{EdgeLasso, Graph};
use crate::lasso::{LassoError, LassoWord, Run, Step};
use crate::Weight;

/// Budget of `sup_value` calls spent looking for a least lasso witness.
pub const TOP_WITNESS_BUDGET: usize = 20_000;

/// Product of the normalized automaton with the lasso positions.
struct LassoProduct {
    graph: Graph,
    /// Original step taken by each product edge.
    steps: Vec<Step>,
}

fn lasso_product(aut: &WeightedAutomaton, word: &LassoWord) -> LassoProduct {
    let norm = aut.normalize();
    let n = &norm.automaton;
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut keys = vec![(n.initial(), 0usize)];
    ids.insert(keys[0], 0);
    let mut graph = Graph::new(1);
    let mut steps = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (q, pos) = keys[i];
        let a = word.letter_at(pos);
        let np = word.next_pos(pos);
        for t in n.succ(q, a) {
            let key = (t.dst, np);
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    keys.push(key);
                    ids.insert(key, keys.len() - 1);
                    graph.add_node()
                }
            };
            let src = norm.origin[q];
            let dst = norm.origin[t.dst];
            let orig = aut.transition(src, a, dst).expect("normalized edge has an origin");
            graph.add_edge(i, id, steps.len(), t.weight);
            steps.push(Step { src, letter: a, weight: orig.weight, dst });
        }
        i += 1;
    }
    LassoProduct { graph, steps }
}

fn to_run(p: &LassoProduct, l: &EdgeLasso) -> Run {
    let st = |e: &usize| p.steps[p.graph.edges[*e].label];
    Run { stem: l.stem.iter().map(st).collect(), cycle: l.cycle.iter().map(st).collect() }
}

/// `A_sup(w)` together with a run attaining it.
pub fn sup_value(aut: &WeightedAutomaton, word: &LassoWord) -> Result<(Weight, Run), LassoError> {
    word.check_alphabet(aut.num_letters())?;
    let p = lasso_product(aut, word);
    let best = match aut.value_fn().normalized() {
        ValueFn::LimSup => p.graph.best_limsup(0),
        _ => p.graph.best_liminf(0),
    };
    let (v, lasso) = best.expect("total automata always have a run");
    Ok((v, to_run(&p, &lasso)))
}

/// Top value witness: the value, a lasso word and a run attaining it.
#[derive(Clone, Debug)]
pub struct TopValue {
    pub value: Weight,
    pub word: LassoWord,
    pub run: Run,
}

/// `⊤_A = sup_w A_sup(w)`: weights are scanned in decreasing order and the
/// first one achievable by a reachable cycle (under the value function's
/// rule) is returned. The witness is the least lasso by (stem length, cycle
/// length, letters) among those with stem and cycle at most the size of the
/// normalized automaton; if the search budget runs out, the cycle found by
/// the scan is used instead.
pub fn top_value(aut: &WeightedAutomaton) -> TopValue {
    let norm = aut.normalize();
    let n = &norm.automaton;
    let mut g = Graph::new(n.num_states());
    for (i, t) in n.transitions().iter().enumerate() {
        g.add_edge(t.src, t.dst, i, t.weight);
    }
    let vf = n.value_fn();
    let mut best: Option<(Weight, EdgeLasso)> = None;
    for v in n.weights().into_iter().rev() {
        let ok = match vf {
            ValueFn::LimSup => {
                let reach = g.reachable_from(0, &|_| true);
                let cyc = g.cyclic_edges(&|_| true);
                (0..g.edges.len())
                    .find(|&e| cyc[e] && reach[g.edges[e].from] && g.edges[e].weight >= v)
                    .and_then(|e| g.lasso_through(0, &[e], &|_| true))
            }
            _ => {
                let keep = |e: usize| g.edges[e].weight >= v;
                let reach = g.reachable_from(0, &|_| true);
                let cyc = g.cyclic_edges(&keep);
                (0..g.edges.len())
                    .find(|&e| cyc[e] && reach[g.edges[e].from])
                    .and_then(|e| g.lasso_through(0, &[e], &keep))
            }
        };
        if let Some(l) = ok {
            best = Some((v, l));
            break;
        }
    }
    let (value, lasso) = best.expect("total automata have a reachable cycle");
    let bound = n.num_states().max(1);
    let mut budget = TOP_WITNESS_BUDGET;
    'outer: for s in 0..=bound {
        for c in 1..=bound {
            for w in LassoWord::all_with_shape(aut.num_letters(), s, c) {
                if budget == 0 {
                    break 'outer;
                }
                budget -= 1;
                let (v, run) = sup_value(aut, &w).expect("alphabet checked");
                if v == value {
                    return TopValue { value, word: w, run };
                }
            }
        }
    }
    let letter = |e: &usize| n.transitions()[g.edges[*e].label].letter;
    let word = LassoWord::new(lasso.stem.iter().map(letter).collect(), lasso.cycle.iter().map(letter).collect())
        .expect("cycle is nonempty");
    let (v, run) = sup_value(aut, &word).expect("alphabet checked");
    debug_assert_eq!(v, value);
    TopValue { value, word, run }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonSpec;
    use crate::lasso::run_value;

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
    fn fig1_sup_values() {
        let a = fig1();
        let ab = a.alphabet().to_vec();
        for (w, v) in [("a(a)", 2), ("(b)", 0), ("a(b)", 1), ("aa(b)", 2)] {
            let (val, run) = sup_value(&a, &LassoWord::parse(w, &ab).unwrap()).unwrap();
            assert_eq!(val, v, "{w}");
            assert_eq!(run_value(&a, &run).unwrap(), v);
            assert_eq!(run.word().display(&ab).len() >= 3, true);
        }
    }

    #[test]
    fn fig1_top_is_two() {
        let t = top_value(&fig1());
        assert_eq!(t.value, 2);
        assert_eq!(t.word.display(fig1().alphabet()), "(a)");
    }
}
