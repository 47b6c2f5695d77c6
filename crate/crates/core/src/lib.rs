//! Resolver-based refinement relations between nondeterministic quantitative
//! automata over infinite words.
//!
//! The crate is organised bottom-up:
//!
//! * [`automaton`], [`lasso`], [`value`]: automata, lasso words, runs and values.
//! * [`resolver`], [`product`]: resolvers, resolved automata, synchronized products.
//! * [`omega`]: threshold languages, determinization, complementation, inclusion.
//! * [`monitor`]: deterministic parity monitors for value comparisons.
//! * [`game`]: parity games, Zielonka solver, simulation and letter games.
//! * [`relations`]: decision procedures for the refinement relations.
//! * [`logic`]: resolver-logic formulas and their two evaluation backends.
//! * [`fixtures`]: the automata of Figures 1 to 5.
//! * [`apps`]: bottom value, history-determinism, hyperproperty inclusion.
//! * [`io`]: text formats and DOT export.

pub mod apps;
pub mod automaton;
pub mod fixtures;
pub mod game;
pub mod gen;
pub mod graph;
pub mod io;
pub mod lasso;
pub mod logic;
pub mod monitor;
pub mod omega;
pub mod product;
pub mod relations;
pub mod resolver;
pub mod value;

/// Transition weights are naturals.
pub type Weight = u32;

/// Largest admissible weight.
pub const MAX_WEIGHT: Weight = (1 << 31) - 1;

pub use automaton::{AutomatonError, AutomatonSpec, Transition, ValueFn, WeightedAutomaton};
pub use lasso::{LassoWord, Run, Step};
pub use resolver::{FiniteMemoryResolver, PositionalResolver, ResolvedAutomaton, Resolver};
