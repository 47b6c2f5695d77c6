//! The running examples: the automata of Figures 1 to 5.
//!
//! Omitted weights in Figures 3 and 4 are 1 for `Inf` and 0 otherwise;
//! Figure 4's missing transitions lead to a weight-0 sink.

use crate::automaton::{AutomatonSpec, ValueFn, WeightedAutomaton};
use crate::resolver::PositionalResolver;

fn omitted(vf: ValueFn) -> u32 {
    if vf == ValueFn::Inf {
        1
    } else {
        0
    }
}

/// Figure 1: `q0 -Σ:0-> q0`, `q0 -a:0-> q1`, `q1 -b:1-> q1`, `q1 -a:0-> q2`, `q2 -Σ:2-> q2`.
pub fn fig1(vf: ValueFn) -> WeightedAutomaton {
    AutomatonSpec::new("fig1", vf, &["a", "b"], "q0")
        .t("q0", "*", 0, "q0")
        .t("q0", "a", 0, "q1")
        .t("q1", "b", 1, "q1")
        .t("q1", "a", 0, "q2")
        .t("q2", "*", 2, "q2")
        .build()
        .expect("fixture")
}

/// The resolver `f1` of Figure 1: leave `q0` on the first `a`.
pub fn fig1_f1() -> PositionalResolver {
    PositionalResolver::from_table(2, vec![1, 0, 2, 1, 2, 2])
}

/// Figure 2: the LimSup pair whose product has four states.
pub fn fig2() -> (WeightedAutomaton, WeightedAutomaton) {
    let a = AutomatonSpec::new("fig2A", ValueFn::LimSup, &["a", "b"], "s0")
        .t("s0", "*", 0, "s0")
        .t("s0", "a", 0, "s1")
        .t("s1", "*", 1, "s1")
        .build()
        .expect("fixture");
    let b = AutomatonSpec::new("fig2B", ValueFn::LimSup, &["a", "b"], "q0")
        .t("q0", "*", 1, "q0")
        .t("q0", "a", 0, "q1")
        .t("q1", "*", 0, "q1")
        .build()
        .expect("fixture");
    (a, b)
}

/// Figure 3: inclusion without strategic dominance.
pub fn fig3(vf: ValueFn) -> (WeightedAutomaton, WeightedAutomaton) {
    let om = omitted(vf);
    let a = AutomatonSpec::new("fig3A", vf, &["a", "b"], "s").t("s", "*", 1, "s").build().expect("fixture");
    let b = AutomatonSpec::new("fig3B", vf, &["a", "b"], "q0")
        .t("q0", "*", om, "q1")
        .t("q0", "*", om, "q2")
        .t("q1", "a", om, "q3")
        .t("q1", "b", om, "q4")
        .t("q2", "b", om, "q3")
        .t("q2", "a", om, "q4")
        .t("q3", "*", 1, "q3")
        .t("q4", "*", 0, "q4")
        .build()
        .expect("fixture");
    (a, b)
}

/// Figure 4: strategic dominance without simulation.
pub fn fig4(vf: ValueFn) -> (WeightedAutomaton, WeightedAutomaton) {
    let om = omitted(vf);
    let mut a = AutomatonSpec::new("fig4A", vf, &["a", "b"], "s0")
        .t("s0", "a", om, "s1")
        .t("s1", "a", om, "s2")
        .t("s1", "a", om, "s3")
        .t("s2", "a", om, "x4")
        .t("s2", "b", om, "x5")
        .t("s3", "b", om, "x4")
        .t("s3", "a", om, "x5")
        .t("x4", "*", 1, "x4")
        .t("x5", "*", 0, "x5");
    a.complete_with_sink(0);
    let mut b = AutomatonSpec::new("fig4B", vf, &["a", "b"], "q0")
        .t("q0", "a", om, "q1")
        .t("q0", "a", om, "q2")
        .t("q1", "a", om, "q3")
        .t("q2", "a", om, "q4")
        .t("q3", "a", om, "q5")
        .t("q3", "b", om, "q6")
        .t("q4", "b", om, "q5")
        .t("q4", "a", om, "q6")
        .t("q5", "*", 1, "q5")
        .t("q6", "*", 0, "q6");
    b.complete_with_sink(0);
    (a.build().expect("fixture"), b.build().expect("fixture"))
}

/// Figure 5: `A` (Inf, safety properties) and `B` (Sup, co-safety properties).
pub fn fig5() -> (WeightedAutomaton, WeightedAutomaton) {
    let a = AutomatonSpec::new("fig5A", ValueFn::Inf, &["a", "b"], "s0")
        .t("s0", "*", 1, "s0")
        .t("s0", "*", 0, "s1")
        .t("s1", "*", 0, "s1")
        .build()
        .expect("fixture");
    let b = AutomatonSpec::new("fig5B", ValueFn::Sup, &["a", "b"], "q0")
        .t("q0", "*", 0, "q0")
        .t("q0", "*", 1, "q1")
        .t("q1", "*", 1, "q1")
        .build()
        .expect("fixture");
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let a = fig1(ValueFn::LimSup);
        assert_eq!((a.num_states(), a.transitions().len()), (3, 7));
        let (a, b) = fig4(ValueFn::LimSup);
        assert_eq!((a.num_states(), b.num_states()), (7, 8));
        let (a, b) = fig5();
        assert!(!a.is_deterministic() && !b.is_deterministic());
    }
}
