use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{ValueFn, WeightedAutomaton};
use crate::Weight;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LassoError {
    #[error("empty cycle")]
    EmptyCycle,
    #[error("unknown letter {0}")]
    UnknownLetter(String),
    #[error("malformed lasso `{0}`: expected stem(cycle)")]
    Malformed(String),
    #[error("letter index {0} outside alphabet")]
    LetterOutOfRange(usize),
}

/// An ultimately periodic word `stem · cycle^ω` over letter indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LassoWord {
    stem: Vec<usize>,
    cycle: Vec<usize>,
}

impl LassoWord {
    pub fn new(stem: Vec<usize>, cycle: Vec<usize>) -> Result<Self, LassoError> {
        if cycle.is_empty() {
            return Err(LassoError::EmptyCycle);
        }
        Ok(LassoWord { stem, cycle })
    }

    pub fn stem(&self) -> &[usize] {
        &self.stem
    }
    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// Number of lasso positions (`|stem| + |cycle|`).
    pub fn positions(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn letter_at(&self, pos: usize) -> usize {
        if pos < self.stem.len() {
            self.stem[pos]
        } else {
            self.cycle[pos - self.stem.len()]
        }
    }

    pub fn next_pos(&self, pos: usize) -> usize {
        if pos + 1 < self.positions() {
            pos + 1
        } else {
            self.stem.len()
        }
    }

    /// The `i`-th letter of the infinite word.
    pub fn nth(&self, i: usize) -> usize {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    pub fn check_alphabet(&self, n: usize) -> Result<(), LassoError> {
        match self.stem.iter().chain(&self.cycle).find(|&&a| a >= n) {
            Some(&a) => Err(LassoError::LetterOutOfRange(a)),
            None => Ok(()),
        }
    }

    /// Textual form `stem(cycle)`; multi-character letters are separated by spaces.
    pub fn display(&self, alphabet: &[String]) -> String {
        let sep = if alphabet.iter().all(|l| l.chars().count() == 1) { "" } else { " " };
        let j = |v: &[usize]| v.iter().map(|&a| alphabet[a].as_str()).collect::<Vec<_>>().join(sep);
        format!("{}({})", j(&self.stem), j(&self.cycle))
    }

    /// Parses `stem(cycle)`, e.g. `ab(ba)` or `(b)`. Letters are matched
    /// greedily against the alphabet; whitespace is ignored.
    pub fn parse(text: &str, alphabet: &[String]) -> Result<Self, LassoError> {
        let t = text.trim();
        let open = t.find('(').ok_or_else(|| LassoError::Malformed(t.into()))?;
        if !t.ends_with(')') || t[open + 1..t.len() - 1].contains(['(', ')']) {
            return Err(LassoError::Malformed(t.into()));
        }
        let stem = split_letters(&t[..open], alphabet)?;
        let cycle = split_letters(&t[open + 1..t.len() - 1], alphabet)?;
        LassoWord::new(stem, cycle)
    }

    /// All lassos with the given stem and cycle lengths, in letter order.
    pub fn all_with_shape(n_letters: usize, stem_len: usize, cycle_len: usize) -> impl Iterator<Item = LassoWord> {
        let total = stem_len + cycle_len;
        let count = n_letters.checked_pow(total as u32).unwrap_or(usize::MAX);
        (0..count).map(move |mut code| {
            let mut letters = vec![0; total];
            for i in (0..total).rev() {
                letters[i] = code % n_letters;
                code /= n_letters;
            }
            let cycle = letters.split_off(stem_len);
            LassoWord { stem: letters, cycle }
        })
    }

    /// All lassos with `|stem| + |cycle| <= max_total`, ordered by
    /// (stem length, cycle length, letters) within each total length.
    pub fn all_up_to(n_letters: usize, max_total: usize) -> impl Iterator<Item = LassoWord> {
        (1..=max_total).flat_map(move |total| {
            (0..total).flat_map(move |s| LassoWord::all_with_shape(n_letters, s, total - s))
        })
    }
}

fn split_letters(s: &str, alphabet: &[String]) -> Result<Vec<usize>, LassoError> {
    let mut out = Vec::new();
    let mut rest = s.trim_start();
    while !rest.is_empty() {
        let best = alphabet
            .iter()
            .enumerate()
            .filter(|(_, l)| rest.starts_with(l.as_str()))
            .max_by_key(|(_, l)| l.len());
        match best {
            Some((i, l)) => {
                out.push(i);
                rest = rest[l.len()..].trim_start();
            }
            None => {
                let c: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
                return Err(LassoError::UnknownLetter(c));
            }
        }
    }
    Ok(out)
}

/// One transition taken by a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub src: usize,
    pub letter: usize,
    pub weight: Weight,
    pub dst: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("run has an empty cycle")]
    EmptyCycle,
    #[error("run does not start at the initial state")]
    WrongStart,
    #[error("step {0} is not a transition of the automaton")]
    NotATransition(usize),
    #[error("steps {0} and {1} are not consecutive")]
    Disconnected(usize, usize),
    #[error("cycle does not close")]
    OpenCycle,
}

/// A lasso-shaped run: a finite stem followed by a repeated cycle of steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    pub stem: Vec<Step>,
    pub cycle: Vec<Step>,
}

impl Run {
    pub fn steps(&self) -> impl Iterator<Item = &Step> {
        self.stem.iter().chain(&self.cycle)
    }

    pub fn word(&self) -> LassoWord {
        LassoWord {
            stem: self.stem.iter().map(|s| s.letter).collect(),
            cycle: self.cycle.iter().map(|s| s.letter).collect(),
        }
    }

    /// Checks the shape invariants against `aut`.
    pub fn check(&self, aut: &WeightedAutomaton) -> Result<(), RunError> {
        if self.cycle.is_empty() {
            return Err(RunError::EmptyCycle);
        }
        let all: Vec<&Step> = self.steps().collect();
        if all[0].src != aut.initial() {
            return Err(RunError::WrongStart);
        }
        for (i, s) in all.iter().enumerate() {
            match aut.transition(s.src, s.letter, s.dst) {
                Some(t) if t.weight == s.weight => {}
                _ => return Err(RunError::NotATransition(i)),
            }
            if i + 1 < all.len() && s.dst != all[i + 1].src {
                return Err(RunError::Disconnected(i, i + 1));
            }
        }
        if self.cycle.last().unwrap().dst != self.cycle[0].src {
            return Err(RunError::OpenCycle);
        }
        Ok(())
    }

    pub fn value(&self, vf: ValueFn) -> Weight {
        let s: Vec<Weight> = self.stem.iter().map(|s| s.weight).collect();
        let c: Vec<Weight> = self.cycle.iter().map(|s| s.weight).collect();
        value_of(vf, &s, &c)
    }

    /// Moves the first `k` cycle steps into the stem and rotates the cycle.
    pub fn rotated(&self, k: usize) -> Run {
        let k = k % self.cycle.len();
        let mut stem = self.stem.clone();
        stem.extend_from_slice(&self.cycle[..k]);
        let mut cycle = self.cycle[k..].to_vec();
        cycle.extend_from_slice(&self.cycle[..k]);
        Run { stem, cycle }
    }

    pub fn unrolled(&self, times: usize) -> Run {
        let mut cycle = Vec::with_capacity(self.cycle.len() * times);
        for _ in 0..times.max(1) {
            cycle.extend_from_slice(&self.cycle);
        }
        Run { stem: self.stem.clone(), cycle }
    }
}

/// `ν` applied to the weight sequence `stem · cycle^ω`.
pub fn value_of(vf: ValueFn, stem: &[Weight], cycle: &[Weight]) -> Weight {
    let all = || stem.iter().chain(cycle).copied();
    match vf {
        ValueFn::Inf => all().min().unwrap_or(0),
        ValueFn::Sup => all().max().unwrap_or(0),
        ValueFn::LimInf => cycle.iter().copied().min().unwrap_or(0),
        ValueFn::LimSup => cycle.iter().copied().max().unwrap_or(0),
    }
}

/// Value of a run after checking it against its automaton.
pub fn run_value(aut: &WeightedAutomaton, run: &Run) -> Result<Weight, RunError> {
    run.check(aut)?;
    Ok(run.value(aut.value_fn()))
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[usize]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}]([{}])", j(&self.stem), j(&self.cycle))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn parse_forms() {
        let w = LassoWord::parse("a(b)", &ab()).unwrap();
        assert_eq!((w.stem(), w.cycle()), (&[0][..], &[1][..]));
        let w = LassoWord::parse("(b)", &ab()).unwrap();
        assert!(w.stem().is_empty());
        assert_eq!(LassoWord::parse("ab()", &ab()), Err(LassoError::EmptyCycle));
        assert!(matches!(LassoWord::parse("ac(b)", &ab()), Err(LassoError::UnknownLetter(_))));
        assert_eq!(w.display(&ab()), "(b)");
    }

    #[test]
    fn values_by_hand() {
        assert_eq!(value_of(ValueFn::LimSup, &[0], &[1]), 1);
        assert_eq!(value_of(ValueFn::Inf, &[2], &[1, 3]), 1);
        assert_eq!(value_of(ValueFn::Sup, &[2], &[1, 3]), 3);
        for vf in ValueFn::ALL {
            assert_eq!(value_of(vf, &[0, 0], &[0]), 0);
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(LassoWord::all_with_shape(2, 1, 2).count(), 8);
        assert_eq!(LassoWord::all_up_to(2, 2).count(), 2 + 4 + 4);
    }
}
