//! Random automata, lasso words and parity games for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::{Transition, ValueFn, WeightedAutomaton};
use crate::game::{ParityGame, Player};
use crate::lasso::LassoWord;
use crate::Weight;

#[derive(Clone, Debug)]
pub struct AutomatonShape {
    pub max_states: usize,
    pub letters: usize,
    pub max_weight: Weight,
    /// Probability that a `(state, letter)` pair gets a second successor.
    pub branching: f64,
    /// Value function; random when `None`.
    pub value_fn: Option<ValueFn>,
}

impl Default for AutomatonShape {
    fn default() -> Self {
        AutomatonShape { max_states: 4, letters: 2, max_weight: 2, branching: 0.25, value_fn: None }
    }
}

/// A total automaton with `1..=max_states` states.
pub fn automaton<R: Rng>(rng: &mut R, shape: &AutomatonShape) -> WeightedAutomaton {
    let n = rng.gen_range(1..=shape.max_states);
    let mut ts = Vec::new();
    for q in 0..n {
        for a in 0..shape.letters {
            let k = if n > 1 && rng.gen_bool(shape.branching) { 2 } else { 1 };
            let mut dsts: Vec<usize> = (0..n).collect();
            dsts.shuffle(rng);
            for &d in &dsts[..k] {
                ts.push(Transition { src: q, letter: a, weight: rng.gen_range(0..=shape.max_weight), dst: d });
            }
        }
    }
    let vf = shape.value_fn.unwrap_or_else(|| *ValueFn::ALL.choose(rng).unwrap());
    WeightedAutomaton::new(
        "R",
        (0..shape.letters).map(|a| ((b'a' + a as u8) as char).to_string()).collect(),
        (0..n).map(|q| format!("r{q}")).collect(),
        0,
        ts,
        vf,
    )
    .expect("generated automaton is total")
}

/// A lasso word with stem length `0..=max_stem` and cycle length `1..=max_cycle`.
pub fn lasso<R: Rng>(rng: &mut R, letters: usize, max_stem: usize, max_cycle: usize) -> LassoWord {
    let s = rng.gen_range(0..=max_stem);
    let c = rng.gen_range(1..=max_cycle);
    LassoWord::new((0..s).map(|_| rng.gen_range(0..letters)).collect(), (0..c).map(|_| rng.gen_range(0..letters)).collect())
        .expect("nonempty cycle")
}

/// A parity game where every vertex has one or two successors.
pub fn parity_game<R: Rng>(rng: &mut R, max_vertices: usize, max_priority: u32) -> ParityGame {
    let n = rng.gen_range(1..=max_vertices);
    let mut g = ParityGame::new();
    for v in 0..n {
        let owner = if rng.gen_bool(0.5) { Player::Eve } else { Player::Adam };
        g.add_vertex(owner, format!("v{v}"));
    }
    for v in 0..n {
        for _ in 0..rng.gen_range(1..=2) {
            g.add_edge(v, rng.gen_range(0..n), rng.gen_range(0..=max_priority));
        }
    }
    g
}
