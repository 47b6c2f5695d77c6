//! The set of value vectors `(D_1(w), …, D_n(w))` of deterministic tracks.

use std::collections::HashMap;

use crate::automaton::{ValueFn, WeightedAutomaton};
use crate::graph::Graph;
use crate::lasso::LassoWord;
use crate::Weight;

use super::LogicError;

/// Products larger than this are refused.
pub(crate) const MAX_PRODUCT_STATES: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueVector {
    pub values: Vec<Weight>,
    /// A word on which the tracks take exactly these values.
    pub word: LassoWord,
}

struct TrackProduct {
    graph: Graph,
    /// Per edge, the weight of every track.
    weights: Vec<Vec<Weight>>,
}

fn track_product(tracks: &[WeightedAutomaton]) -> Result<TrackProduct, LogicError> {
    let nl = tracks[0].num_letters();
    let start: Vec<usize> = tracks.iter().map(|t| t.initial()).collect();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut keys = vec![start];
    let mut graph = Graph::new(1);
    let mut weights = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let qs = keys[i].clone();
        for a in 0..nl {
            let ts: Vec<_> = qs.iter().zip(tracks).map(|(&q, t)| t.succ(q, a)[0]).collect();
            let key: Vec<usize> = ts.iter().map(|t| t.dst).collect();
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    if keys.len() >= MAX_PRODUCT_STATES {
                        return Err(LogicError::Unsupported(format!(
                            "track product exceeds {MAX_PRODUCT_STATES} states"
                        )));
                    }
                    keys.push(key.clone());
                    ids.insert(key, keys.len() - 1);
                    graph.add_node()
                }
            };
            graph.add_edge(i, id, a, 0);
            weights.push(ts.iter().map(|t| t.weight).collect());
        }
        i += 1;
    }
    Ok(TrackProduct { graph, weights })
}

/// All value vectors of the deterministic `tracks` over a common alphabet,
/// sorted, each with a witnessing word.
///
/// Tracks are first brought to limit form. A candidate `z` is a value
/// vector iff some reachable cycle of the product keeps every LimSup track
/// at most `z_i` and every LimInf track at least `z_i`, and attains `z_i`
/// on every track.
pub fn value_vectors(tracks: &[WeightedAutomaton]) -> Result<Vec<ValueVector>, LogicError> {
    if let Some(t) = tracks.iter().find(|t| !t.is_deterministic()) {
        return Err(LogicError::Unsupported(format!("track {} is not deterministic", t.name())));
    }
    if tracks.windows(2).any(|w| w[0].same_alphabet(&w[1]).is_err()) {
        return Err(LogicError::AlphabetMismatch);
    }
    if tracks.is_empty() {
        return Ok(vec![ValueVector { values: Vec::new(), word: LassoWord::new(Vec::new(), vec![0]).expect("nonempty") }]);
    }
    let limits: Vec<WeightedAutomaton> = tracks.iter().map(|t| t.normalize().automaton).collect();
    let sup: Vec<bool> = limits.iter().map(|t| t.value_fn() == ValueFn::LimSup).collect();
    let domains: Vec<Vec<Weight>> = limits.iter().map(|t| t.weights()).collect();
    let p = track_product(&limits)?;
    let mut out = Vec::new();
    let mut z = Vec::new();
    search(&p, &sup, &domains, &mut z, &mut out);
    out.sort_by(|a, b| a.values.cmp(&b.values));
    Ok(out)
}

fn feasible(p: &TrackProduct, sup: &[bool], z: &[Weight]) -> Option<LassoWord> {
    let ws = &p.weights;
    let keep = |e: usize| z.iter().enumerate().all(|(i, &v)| if sup[i] { ws[e][i] <= v } else { ws[e][i] >= v });
    let classes: Vec<Box<dyn Fn(usize) -> bool + '_>> =
        (0..z.len()).map(|i| Box::new(move |e: usize| ws[e][i] == z[i]) as Box<dyn Fn(usize) -> bool>).collect();
    let refs: Vec<&dyn Fn(usize) -> bool> = classes.iter().map(|c| c.as_ref()).collect();
    let l = p.graph.generalized_lasso(0, &keep, &refs)?;
    let letters = |es: &[usize]| es.iter().map(|&e| p.graph.edges[e].label).collect::<Vec<_>>();
    Some(LassoWord::new(letters(&l.stem), letters(&l.cycle)).expect("nonempty cycle"))
}

fn search(p: &TrackProduct, sup: &[bool], domains: &[Vec<Weight>], z: &mut Vec<Weight>, out: &mut Vec<ValueVector>) {
    let Some(word) = feasible(p, sup, z) else { return };
    if z.len() == domains.len() {
        out.push(ValueVector { values: z.clone(), word });
        return;
    }
    for &v in &domains[z.len()] {
        z.push(v);
        search(p, sup, domains, z, out);
        z.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::resolver::{apply, enumerate_positional, resolver_value, PositionalResolver, Resolver};
    use std::collections::BTreeSet;

    fn brute(tracks: &[WeightedAutomaton], max_len: usize) -> BTreeSet<Vec<Weight>> {
        LassoWord::all_up_to(tracks[0].num_letters(), max_len)
            .map(|w| {
                tracks.iter().map(|t| crate::value::sup_value(t, &w).unwrap().0).collect::<Vec<_>>()
            })
            .collect()
    }

    fn values(vs: &[ValueVector]) -> BTreeSet<Vec<Weight>> {
        vs.iter().map(|v| v.values.clone()).collect()
    }

    #[test]
    fn fig2_advance_on_a() {
        let (a, _) = fixtures::fig2();
        // s0 moves to s1 on a and loops on b.
        let f = PositionalResolver::from_table(2, vec![1, 0, 1, 1]);
        let d = apply(&a, &f.into()).unwrap().automaton;
        let vs = value_vectors(std::slice::from_ref(&d)).unwrap();
        assert_eq!(values(&vs), BTreeSet::from([vec![0], vec![1]]));
        assert_eq!(values(&vs), brute(&[d], 3));
    }

    #[test]
    fn fig1_resolver_values_and_replay() {
        let a = fixtures::fig1(ValueFn::LimSup);
        let mut union = BTreeSet::new();
        for f in enumerate_positional(&a) {
            let r: Resolver = f.into();
            let d = apply(&a, &r).unwrap().automaton;
            let vs = value_vectors(std::slice::from_ref(&d)).unwrap();
            for v in &vs {
                assert_eq!(resolver_value(&a, &r, &v.word).unwrap().0, v.values[0]);
            }
            union.extend(vs.into_iter().map(|v| v.values[0]));
        }
        assert_eq!(union, BTreeSet::from([0, 1, 2]));
        let d = apply(&a, &fixtures::fig1_f1().into()).unwrap().automaton;
        let vs = value_vectors(std::slice::from_ref(&d)).unwrap();
        assert_eq!(values(&vs), BTreeSet::from([vec![0], vec![1], vec![2]]));
    }

    #[test]
    fn equal_tracks_are_diagonal() {
        let a = fixtures::fig1(ValueFn::LimInf);
        for f in enumerate_positional(&a) {
            let d = apply(&a, &f.into()).unwrap().automaton;
            let vs = value_vectors(&[d.clone(), d]).unwrap();
            assert!(!vs.is_empty());
            assert!(vs.iter().all(|v| v.values[0] == v.values[1]));
        }
    }

    #[test]
    fn pairs_match_brute_force() {
        for vf in ValueFn::ALL {
            let (a, b) = fixtures::fig3(vf);
            let da = apply(&a, &enumerate_positional(&a).next().unwrap().into()).unwrap().automaton;
            for g in enumerate_positional(&b) {
                let db = apply(&b, &g.into()).unwrap().automaton;
                let tracks = [da.clone(), db];
                assert_eq!(values(&value_vectors(&tracks).unwrap()), brute(&tracks, 4), "{vf}");
            }
        }
    }
}
