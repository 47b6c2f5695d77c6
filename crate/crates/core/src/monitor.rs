//! Deterministic parity monitors for comparisons `ν1(a) ⋈ ν2(b)` over
//! streams of weight pairs.
//!
//! Priorities sit on transitions; a stream is accepted iff the largest
//! priority seen infinitely often is even.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::ValueFn;
use crate::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Cmp {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

impl Cmp {
    pub const ALL: [Cmp; 5] = [Cmp::Le, Cmp::Lt, Cmp::Eq, Cmp::Ge, Cmp::Gt];

    pub fn holds(self, x: Weight, y: Weight) -> bool {
        match self {
            Cmp::Le => x <= y,
            Cmp::Lt => x < y,
            Cmp::Eq => x == y,
            Cmp::Ge => x >= y,
            Cmp::Gt => x > y,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Le => "<=",
            Cmp::Lt => "<",
            Cmp::Eq => "=",
            Cmp::Ge => ">=",
            Cmp::Gt => ">",
        }
    }
}

impl fmt::Display for Cmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonitorError {
    #[error("weight pair ({0}, {1}) is outside the monitor alphabet")]
    UnknownPair(Weight, Weight),
    #[error("empty cycle")]
    EmptyCycle,
}

/// A deterministic, total parity automaton over weight pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityMonitor {
    left: Vec<Weight>,
    right: Vec<Weight>,
    n: usize,
    initial: usize,
    /// `(next state, priority)` per `(state, left index, right index)`.
    table: Vec<(usize, u32)>,
}

impl ParityMonitor {
    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn left_weights(&self) -> &[Weight] {
        &self.left
    }

    pub fn right_weights(&self) -> &[Weight] {
        &self.right
    }

    pub fn max_priority(&self) -> u32 {
        self.table.iter().map(|t| t.1).max().unwrap_or(0)
    }

    fn key(&self, s: usize, i: usize, j: usize) -> usize {
        (s * self.left.len() + i) * self.right.len() + j
    }

    /// Successor state and priority on the pair `(a, b)`.
    pub fn step(&self, s: usize, a: Weight, b: Weight) -> Result<(usize, u32), MonitorError> {
        let i = self.left.binary_search(&a).map_err(|_| MonitorError::UnknownPair(a, b))?;
        let j = self.right.binary_search(&b).map_err(|_| MonitorError::UnknownPair(a, b))?;
        Ok(self.table[self.key(s, i, j)])
    }

    /// The same monitor with every priority shifted by one: accepts exactly
    /// the streams this one rejects.
    pub fn complement(&self) -> ParityMonitor {
        let mut m = self.clone();
        for t in &mut m.table {
            t.1 += 1;
        }
        m
    }

    /// The monitor reading `(b, a)` where this one reads `(a, b)`.
    pub fn swapped(&self) -> ParityMonitor {
        let mut table = vec![(0, 0); self.table.len()];
        for s in 0..self.n {
            for i in 0..self.left.len() {
                for j in 0..self.right.len() {
                    table[(s * self.right.len() + j) * self.left.len() + i] = self.table[self.key(s, i, j)];
                }
            }
        }
        ParityMonitor { left: self.right.clone(), right: self.left.clone(), n: self.n, initial: self.initial, table }
    }

    /// Renumbers priorities onto `0..` preserving order and parity.
    pub fn compressed(&self) -> ParityMonitor {
        let mut ps: Vec<u32> = self.table.iter().map(|t| t.1).collect();
        ps.sort_unstable();
        ps.dedup();
        let mut map = HashMap::new();
        let mut next = 0u32;
        for p in ps {
            if next % 2 != p % 2 {
                next += 1;
            }
            map.insert(p, next);
        }
        let mut m = self.clone();
        for t in &mut m.table {
            t.1 = map[&t.1];
        }
        m
    }
}

fn explore<S: Clone + Eq + Hash>(
    init: S,
    left: &[Weight],
    right: &[Weight],
    step: impl Fn(&S, Weight, Weight) -> (S, u32),
) -> ParityMonitor {
    let mut ids: HashMap<S, usize> = HashMap::from([(init.clone(), 0)]);
    let mut keys = vec![init];
    let mut table = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let s = keys[i].clone();
        for &a in left {
            for &b in right {
                let (s2, p) = step(&s, a, b);
                let id = *ids.entry(s2.clone()).or_insert_with(|| {
                    keys.push(s2);
                    keys.len() - 1
                });
                table.push((id, p));
            }
        }
        i += 1;
    }
    ParityMonitor { left: left.to_vec(), right: right.to_vec(), n: keys.len(), initial: 0, table }
}

fn sorted(ws: &[Weight]) -> Vec<Weight> {
    let mut v = ws.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Running min (Inf) or max (Sup); limit value functions pass through.
fn track(vf: ValueFn, m: Option<Weight>, w: Weight) -> (Option<Weight>, Weight) {
    match (vf, m) {
        (ValueFn::Inf, Some(m)) => (Some(m.min(w)), m.min(w)),
        (ValueFn::Sup, Some(m)) => (Some(m.max(w)), m.max(w)),
        (ValueFn::Inf | ValueFn::Sup, None) => (Some(w), w),
        _ => (None, w),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct LeState {
    ta: Option<Weight>,
    tb: Option<Weight>,
    gadgets: Vec<bool>,
}

/// `ν1(a) <= ν2(b)`.
fn le_monitor(v1: ValueFn, v2: ValueFn, left: &[Weight], right: &[Weight]) -> ParityMonitor {
    let all = sorted(&[left, right].concat());
    let m = all.len() as u32;
    let idx = |w: Weight| all.binary_search(&w).unwrap() as u32;
    let (n1, n2) = (v1.normalized(), v2.normalized());
    // Gadget parameters for the mixed cases.
    let pairs: Vec<(Weight, Weight)> = match (n1, n2) {
        (ValueFn::LimSup, ValueFn::LimInf) => {
            let mut v = Vec::new();
            for &va in left {
                for &vb in right {
                    if vb < va {
                        v.push((va, vb));
                    }
                }
            }
            v
        }
        (ValueFn::LimInf, ValueFn::LimSup) => all.iter().map(|&x| (x, x)).collect(),
        _ => Vec::new(),
    };
    let init = LeState { ta: None, tb: None, gadgets: vec![false; pairs.len()] };
    explore(init, left, right, |s, a, b| {
        let (ta, a) = track(v1, s.ta, a);
        let (tb, b) = track(v2, s.tb, b);
        let mut gadgets = s.gadgets.clone();
        let prio = match (n1, n2) {
            (ValueFn::LimSup, ValueFn::LimSup) => (2 * idx(b) + 2).max(2 * idx(a) + 1),
            (ValueFn::LimInf, ValueFn::LimInf) => {
                let r = |w| m - 1 - idx(w);
                (2 * r(a) + 2).max(2 * r(b) + 1)
            }
            (ValueFn::LimSup, _) => {
                // A bad event: a = va and then b = vb with vb < va.
                let mut event = false;
                for (k, &(va, vb)) in pairs.iter().enumerate() {
                    let seen = gadgets[k] || a == va;
                    gadgets[k] = if seen && b == vb {
                        event = true;
                        false
                    } else {
                        seen
                    };
                }
                event as u32
            }
            _ => {
                // A good event: a <= v and then b >= v.
                let mut event = false;
                for (k, &(v, _)) in pairs.iter().enumerate() {
                    let seen = gadgets[k] || a <= v;
                    gadgets[k] = if seen && b >= v {
                        event = true;
                        false
                    } else {
                        seen
                    };
                }
                1 + event as u32
            }
        };
        (LeState { ta, tb, gadgets }, prio)
    })
}

/// Lexicographic pairing of two priorities into one, increasing in
/// `(k, m)`, even iff both are even.
fn pairing(d1: u32, d2: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; d2 as usize + 1]; d1 as usize + 1];
    let mut next = 0u32;
    for k in 0..=d1 {
        for m in 0..=d2 {
            let even = k % 2 == 0 && m % 2 == 0;
            if (next % 2 == 0) != even {
                next += 1;
            }
            out[k as usize][m as usize] = next;
            next += 1;
        }
    }
    out
}

/// Parity monitor accepting streams accepted by both.
///
/// `mem[k]` holds the largest priority of the second monitor since the
/// first last emitted a priority `>= k`; when the first emits `k`, the pair
/// `(k, mem[k])` is emitted and the levels up to `k` are cleared.
pub fn conjunction(m1: &ParityMonitor, m2: &ParityMonitor) -> ParityMonitor {
    let (m1, m2) = (m1.compressed(), m2.compressed());
    let (d1, d2) = (m1.max_priority(), m2.max_priority());
    let phi = pairing(d1, d2);
    let init = (m1.initial, m2.initial, vec![0u32; d1 as usize + 1]);
    explore(init, &m1.left.clone(), &m1.right.clone(), |(s1, s2, mem), a, b| {
        let (t1, p1) = m1.step(*s1, a, b).expect("shared alphabet");
        let (t2, p2) = m2.step(*s2, a, b).expect("shared alphabet");
        let mut mem = mem.clone();
        for x in mem.iter_mut() {
            *x = (*x).max(p2);
        }
        let out = phi[p1 as usize][mem[p1 as usize] as usize];
        for x in mem.iter_mut().take(p1 as usize + 1) {
            *x = 0;
        }
        ((t1, t2, mem), out)
    })
}

/// Compiles `ν1(a) ⋈ ν2(b)` over the given weight alphabets.
pub fn compile(v1: ValueFn, v2: ValueFn, cmp: Cmp, left: &[Weight], right: &[Weight]) -> ParityMonitor {
    let (left, right) = (sorted(left), sorted(right));
    match cmp {
        Cmp::Le => le_monitor(v1, v2, &left, &right),
        Cmp::Ge => le_monitor(v2, v1, &right, &left).swapped(),
        Cmp::Lt => compile(v1, v2, Cmp::Ge, &left, &right).complement(),
        Cmp::Gt => compile(v1, v2, Cmp::Le, &left, &right).complement(),
        Cmp::Eq => {
            conjunction(&compile(v1, v2, Cmp::Le, &left, &right), &compile(v1, v2, Cmp::Ge, &left, &right))
        }
    }
}

/// Runs the monitor on `stem · cycle^ω` and reports acceptance.
pub fn verdict(m: &ParityMonitor, stem: &[(Weight, Weight)], cycle: &[(Weight, Weight)]) -> Result<bool, MonitorError> {
    if cycle.is_empty() {
        return Err(MonitorError::EmptyCycle);
    }
    let mut s = m.initial;
    for &(a, b) in stem {
        s = m.step(s, a, b)?.0;
    }
    // Iterate whole cycles until the entry state repeats.
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut maxes = Vec::new();
    loop {
        if let Some(&at) = seen.get(&s) {
            let top = maxes[at..].iter().copied().max().unwrap();
            return Ok(top % 2 == 0);
        }
        seen.insert(s, maxes.len());
        let mut top = 0;
        for &(a, b) in cycle {
            let (t, p) = m.step(s, a, b)?;
            top = top.max(p);
            s = t;
        }
        maxes.push(top);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lasso::value_of;

    #[test]
    fn limsup_le_limsup_formula() {
        let m = compile(ValueFn::LimSup, ValueFn::LimSup, Cmp::Le, &[0, 1, 2], &[0, 1, 2]);
        assert_eq!(m.num_states(), 1);
        assert_eq!(m.step(0, 2, 2).unwrap().1, 6);
        assert_eq!(m.step(0, 2, 0).unwrap().1, 5);
        assert!(verdict(&m, &[], &[(1, 1)]).unwrap());
        assert!(!verdict(&m, &[], &[(2, 0)]).unwrap());
    }

    #[test]
    fn liminf_le_liminf_formula() {
        let m = compile(ValueFn::LimInf, ValueFn::LimInf, Cmp::Le, &[0, 1, 2], &[0, 1, 2]);
        assert_eq!(m.num_states(), 1);
        assert_eq!(m.step(0, 0, 2).unwrap().1, 6);
        assert!(verdict(&m, &[], &[(0, 2)]).unwrap());
    }

    #[test]
    fn exhaustive_small_streams() {
        let ws = [0, 1, 2];
        let mut streams = Vec::new();
        for len in 1..=3usize {
            for code in 0..9usize.pow(len as u32) {
                let mut c = code;
                let v: Vec<(Weight, Weight)> = (0..len)
                    .map(|_| {
                        let p = (ws[c % 3], ws[c / 3 % 3]);
                        c /= 9;
                        p
                    })
                    .collect();
                streams.push(v);
            }
        }
        for v1 in ValueFn::ALL {
            for v2 in ValueFn::ALL {
                for cmp in Cmp::ALL {
                    let m = compile(v1, v2, cmp, &ws, &ws);
                    for s in &streams {
                        let (stem, cyc) = s.split_at(s.len() / 2);
                        let a = value_of(v1, &stem.iter().map(|p| p.0).collect::<Vec<_>>(), &cyc.iter().map(|p| p.0).collect::<Vec<_>>());
                        let b = value_of(v2, &stem.iter().map(|p| p.1).collect::<Vec<_>>(), &cyc.iter().map(|p| p.1).collect::<Vec<_>>());
                        assert_eq!(verdict(&m, stem, cyc).unwrap(), cmp.holds(a, b), "{v1} {cmp} {v2} {s:?}");
                    }
                }
            }
        }
    }
}
