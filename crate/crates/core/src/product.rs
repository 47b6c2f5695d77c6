//! Synchronized products and component resolvers.

use std::collections::HashMap;

use thiserror::Error;

use crate::automaton::{AutomatonError, Transition, ValueFn, WeightedAutomaton};
use crate::resolver::{FiniteMemoryResolver, PositionalResolver, Resolver};
use crate::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::Left => 1,
            Side::Right => 2,
        }
    }
}

#[derive(Debug, Error)]
pub enum ProductError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("both component resolvers act on side {0}")]
    SideCollision(usize),
    #[error("component resolver does not belong to this product")]
    Mismatch,
}

/// `A ×_k B` over pairs of states.
#[derive(Clone, Debug)]
pub struct ProductAutomaton {
    pub automaton: WeightedAutomaton,
    /// Component states of each product state.
    pub pairs: Vec<(usize, usize)>,
    pub weight_side: Side,
    pub left_value_fn: ValueFn,
    pub right_value_fn: ValueFn,
    /// `(left weight, right weight)` per product transition, aligned with
    /// `automaton.transitions()`.
    pair_weights: Vec<(Weight, Weight)>,
    index: HashMap<(usize, usize), usize>,
}

/// Reachable synchronized product; weights and value function from `weight_side`.
pub fn product(left: &WeightedAutomaton, right: &WeightedAutomaton, weight_side: Side) -> Result<ProductAutomaton, ProductError> {
    build(left, right, weight_side, false)
}

/// Product over all state pairs (no reachability pruning).
pub fn full_product(left: &WeightedAutomaton, right: &WeightedAutomaton, weight_side: Side) -> Result<ProductAutomaton, ProductError> {
    build(left, right, weight_side, true)
}

fn build(left: &WeightedAutomaton, right: &WeightedAutomaton, weight_side: Side, full: bool) -> Result<ProductAutomaton, ProductError> {
    left.same_alphabet(right)?;
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = Vec::new();
    if full {
        for p in 0..left.num_states() {
            for q in 0..right.num_states() {
                index.insert((p, q), pairs.len());
                pairs.push((p, q));
            }
        }
    } else {
        let s = (left.initial(), right.initial());
        index.insert(s, 0);
        pairs.push(s);
    }
    let mut ts = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for a in 0..left.num_letters() {
            for tl in left.succ(p, a) {
                for tr in right.succ(q, a) {
                    let key = (tl.dst, tr.dst);
                    let id = *index.entry(key).or_insert_with(|| {
                        pairs.push(key);
                        pairs.len() - 1
                    });
                    let w = if weight_side == Side::Left { tl.weight } else { tr.weight };
                    ts.push(Transition { src: i, letter: a, weight: w, dst: id });
                }
            }
        }
        i += 1;
    }
    let names = pairs.iter().map(|&(p, q)| format!("({},{})", left.state_name(p), right.state_name(q))).collect();
    let vf = if weight_side == Side::Left { left.value_fn() } else { right.value_fn() };
    let initial = index[&(left.initial(), right.initial())];
    let automaton = WeightedAutomaton::new(
        format!("{}x{}{}", left.name(), weight_side.index(), right.name()),
        left.alphabet().to_vec(),
        names,
        initial,
        ts,
        vf,
    )?;
    let pair_weights = automaton
        .transitions()
        .iter()
        .map(|t| {
            let (p, q) = pairs[t.src];
            let (p2, q2) = pairs[t.dst];
            (
                left.transition(p, t.letter, p2).expect("left edge").weight,
                right.transition(q, t.letter, q2).expect("right edge").weight,
            )
        })
        .collect();
    Ok(ProductAutomaton {
        automaton,
        pairs,
        weight_side,
        left_value_fn: left.value_fn(),
        right_value_fn: right.value_fn(),
        pair_weights,
        index,
    })
}

impl ProductAutomaton {
    pub fn state_of(&self, p: usize, q: usize) -> Option<usize> {
        self.index.get(&(p, q)).copied()
    }

    /// `(left weight, right weight)` of the `i`-th product transition.
    pub fn pair_weight(&self, i: usize) -> (Weight, Weight) {
        self.pair_weights[i]
    }

    /// `(left weight, right weight)` of a product transition.
    pub fn weights_of(&self, src: usize, letter: usize, dst: usize) -> Option<(Weight, Weight)> {
        let i = self
            .automaton
            .transitions()
            .binary_search_by_key(&(src, letter, dst), |t| (t.src, t.letter, t.dst))
            .ok()?;
        Some(self.pair_weights[i])
    }

    /// Component `side` of product state `s`.
    pub fn component(&self, s: usize, side: Side) -> usize {
        match side {
            Side::Left => self.pairs[s].0,
            Side::Right => self.pairs[s].1,
        }
    }

    /// Distinct side successors of product state `s` on `a`, sorted.
    pub fn side_options(&self, s: usize, a: usize, side: Side) -> Vec<usize> {
        let mut v: Vec<usize> = self.automaton.succ(s, a).iter().map(|t| self.component(t.dst, side)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// A resolver fixing the successor of one component from the product state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentResolver {
    pub side: Side,
    pub memory: Vec<String>,
    pub initial: usize,
    n_states: usize,
    n_letters: usize,
    /// Side successor per `(memory, product state, letter)`.
    choice: Vec<usize>,
    /// Memory updates keyed by `(memory, product state, letter, product target)`;
    /// missing entries keep the memory.
    update: Vec<((usize, usize, usize, usize), usize)>,
}

impl ComponentResolver {
    pub fn positional(prod: &ProductAutomaton, side: Side, choice: Vec<usize>) -> Self {
        ComponentResolver {
            side,
            memory: vec!["m0".into()],
            initial: 0,
            n_states: prod.automaton.num_states(),
            n_letters: prod.automaton.num_letters(),
            choice,
            update: Vec::new(),
        }
    }

    pub fn choose(&self, m: usize, s: usize, a: usize) -> usize {
        self.choice[(m * self.n_states + s) * self.n_letters + a]
    }

    pub fn next_memory(&self, m: usize, s: usize, a: usize, target: usize) -> usize {
        self.update.iter().find(|(k, _)| *k == (m, s, a, target)).map_or(m, |(_, v)| *v)
    }

    /// The product successors this resolver allows: the chosen side is
    /// fixed, the other side ranges freely.
    pub fn allowed(&self, prod: &ProductAutomaton, m: usize, s: usize, a: usize) -> Vec<usize> {
        let c = self.choose(m, s, a);
        prod.automaton.succ(s, a).iter().map(|t| t.dst).filter(|&d| prod.component(d, self.side) == c).collect()
    }
}

/// All positional component resolvers on `side`, in lexicographic order
/// of their choice tables.
pub fn enumerate_component_positional(prod: &ProductAutomaton, side: Side) -> Vec<ComponentResolver> {
    let n = prod.automaton.num_states();
    let nl = prod.automaton.num_letters();
    let slots: Vec<Vec<usize>> =
        (0..n).flat_map(|s| (0..nl).map(move |a| (s, a))).map(|(s, a)| prod.side_options(s, a, side)).collect();
    let mut out = Vec::new();
    let mut digits = vec![0; slots.len()];
    loop {
        out.push(ComponentResolver::positional(prod, side, digits.iter().zip(&slots).map(|(&i, s)| s[i]).collect()));
        let mut k = digits.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < slots[k].len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Intersects a side-1 and a side-2 component resolver into a resolver of
/// the product automaton.
pub fn combine(prod: &ProductAutomaton, f: &ComponentResolver, g: &ComponentResolver) -> Result<Resolver, ProductError> {
    if f.side == g.side {
        return Err(ProductError::SideCollision(f.side.index()));
    }
    let (f, g) = if f.side == Side::Left { (f, g) } else { (g, f) };
    let (n, nl) = (prod.automaton.num_states(), prod.automaton.num_letters());
    if f.n_states != n || g.n_states != n || f.n_letters != nl || g.n_letters != nl {
        return Err(ProductError::Mismatch);
    }
    let (mf, mg) = (f.memory.len(), g.memory.len());
    let mut choice = vec![0; mf * mg * n * nl];
    let mut update = vec![0; mf * mg * n * nl];
    for i in 0..mf {
        for j in 0..mg {
            let m = i * mg + j;
            for s in 0..n {
                for a in 0..nl {
                    let (p, q) = (f.choose(i, s, a), g.choose(j, s, a));
                    let t = prod.state_of(p, q).filter(|&t| prod.automaton.transition(s, a, t).is_some());
                    let t = t.ok_or(ProductError::Mismatch)?;
                    let k = (m * n + s) * nl + a;
                    choice[k] = t;
                    update[k] = f.next_memory(i, s, a, t) * mg + g.next_memory(j, s, a, t);
                }
            }
        }
    }
    if mf * mg == 1 {
        return Ok(PositionalResolver::from_table(nl, choice).into());
    }
    let memory = (0..mf).flat_map(|i| (0..mg).map(move |j| (i, j))).map(|(i, j)| format!("{}.{}", f.memory[i], g.memory[j])).collect();
    Ok(FiniteMemoryResolver::new(memory, f.initial * mg + g.initial, n, nl, choice, update).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AutomatonSpec;

    pub(crate) fn fig2() -> (WeightedAutomaton, WeightedAutomaton) {
        let a = AutomatonSpec::new("A", ValueFn::LimSup, &["a", "b"], "s0")
            .t("s0", "*", 0, "s0")
            .t("s0", "a", 0, "s1")
            .t("s1", "*", 1, "s1")
            .build()
            .unwrap();
        let b = AutomatonSpec::new("B", ValueFn::LimSup, &["a", "b"], "q0")
            .t("q0", "*", 1, "q0")
            .t("q0", "a", 0, "q1")
            .t("q1", "*", 0, "q1")
            .build()
            .unwrap();
        (a, b)
    }

    #[test]
    fn fig2_product_has_four_states() {
        let (a, b) = fig2();
        let p = product(&a, &b, Side::Left).unwrap();
        assert_eq!(p.automaton.num_states(), 4);
        let p2 = product(&a, &b, Side::Right).unwrap();
        assert_eq!(p.automaton.transitions().len(), p2.automaton.transitions().len());
        let s00 = p2.state_of(0, 0).unwrap();
        assert_eq!(p2.automaton.transition(s00, 1, s00).unwrap().weight, 1);
    }

    #[test]
    fn opposite_sides_are_conclusive() {
        let (a, b) = fig2();
        let p = product(&a, &b, Side::Left).unwrap();
        let fs = enumerate_component_positional(&p, Side::Left);
        let gs = enumerate_component_positional(&p, Side::Right);
        for f in &fs {
            for g in &gs {
                let r = combine(&p, f, g).unwrap();
                r.check(&p.automaton).unwrap();
                for s in 0..p.automaton.num_states() {
                    for x in 0..2 {
                        let fa = f.allowed(&p, 0, s, x);
                        let both: Vec<_> = g.allowed(&p, 0, s, x).into_iter().filter(|t| fa.contains(t)).collect();
                        assert_eq!(both.len(), 1);
                    }
                }
            }
        }
        assert!(matches!(combine(&p, &fs[0], &fs[0]), Err(ProductError::SideCollision(1))));
    }
}
