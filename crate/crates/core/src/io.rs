//! Text formats and DOT export.
//!
//! `.qaut` automata:
//!
//! ```text
//! automaton fig1
//! alphabet a b
//! value LimSup
//! init q0
//! q0 * 0 -> q0      # `*` is every letter, `a,b` a letter list
//! q0 a 0 -> q1
//! ```
//!
//! An optional `states` line fixes the state order. With a boolean value
//! keyword (`Safety`, `Reachability`, `Buchi`, `CoBuchi`) an `accept` line
//! lets weights be omitted: a transition entering an accepting state weighs
//! 1, any other 0.
//!
//! `.res` resolvers list one choice per line, `q a -> q'` for positional
//! resolvers and `m q a -> q' m'` after a `memory` line for finite-memory
//! ones. Lassos are written `stem(cycle)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::automaton::{AutomatonError, AutomatonSpec, ValueFn, WeightedAutomaton};
use crate::game::{ParityGame, Player};
use crate::lasso::{LassoError, LassoWord};
use crate::product::ProductAutomaton;
use crate::resolver::{FiniteMemoryResolver, PositionalResolver, Resolver, ResolverError};
use crate::{Weight, MAX_WEIGHT};

/// A problem located on a line of the input (1-based; 0 for the whole file).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("\n"))]
    Parse(Vec<LineError>),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Lasso(#[from] LassoError),
    #[error(transparent)]
    Resolver(#[from] ResolverError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Complete a partial transition relation with a sink of this weight.
    pub complete_with_sink: Option<Weight>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn header<'a>(
    slot: &mut Option<(usize, Vec<&'a str>)>,
    key: &str,
    n: usize,
    rest: Vec<&'a str>,
    errors: &mut Vec<LineError>,
) {
    if let Some((prev, _)) = slot {
        errors.push(LineError { line: n, message: format!("duplicate `{key}` line (first on line {prev})") });
    } else {
        *slot = Some((n, rest));
    }
}

struct RawTransition<'a> {
    line: usize,
    src: &'a str,
    letters: &'a str,
    weight: Option<&'a str>,
    dst: &'a str,
}

pub fn parse_automaton(text: &str) -> Result<WeightedAutomaton, IoError> {
    parse_automaton_with(text, &ParseOptions::default())
}

pub fn parse_automaton_with(text: &str, opts: &ParseOptions) -> Result<WeightedAutomaton, IoError> {
    let mut errors = Vec::new();
    let (mut name, mut alphabet, mut value, mut init, mut states, mut accept) =
        (None, None, None, None, None, None);
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let l = strip_comment(line);
        if l.is_empty() {
            continue;
        }
        if let Some((lhs, dst)) = l.split_once("->") {
            let lhs: Vec<&str> = lhs.split_whitespace().collect();
            let dst: Vec<&str> = dst.split_whitespace().collect();
            match (lhs.as_slice(), dst.as_slice()) {
                ([src, letters], [dst]) => {
                    raw.push(RawTransition { line: n, src, letters, weight: None, dst })
                }
                ([src, letters, w], [dst]) => {
                    raw.push(RawTransition { line: n, src, letters, weight: Some(w), dst })
                }
                _ => errors.push(LineError { line: n, message: "expected `state letter [weight] -> state`".into() }),
            }
            continue;
        }
        let mut words = l.split_whitespace();
        let key = words.next().unwrap_or("");
        let rest: Vec<&str> = words.collect();
        let slot = match key {
            "automaton" => &mut name,
            "alphabet" => &mut alphabet,
            "value" => &mut value,
            "init" => &mut init,
            "states" => &mut states,
            "accept" => &mut accept,
            _ => {
                errors.push(LineError { line: n, message: format!("unknown directive `{key}`") });
                continue;
            }
        };
        header(slot, key, n, rest, &mut errors);
    }

    let single = |slot: &Option<(usize, Vec<&str>)>, key: &str, errors: &mut Vec<LineError>| match slot {
        Some((n, v)) if v.len() == 1 => Some(v[0].to_string()),
        Some((n2, _)) => {
            errors.push(LineError { line: *n2, message: format!("`{key}` takes exactly one argument") });
            None
        }
        None => {
            errors.push(LineError { line: 0, message: format!("missing `{key}` line") });
            None
        }
    };
    let name = match &name {
        None => "A".to_string(),
        Some(_) => single(&name, "automaton", &mut errors).unwrap_or_default(),
    };
    let init = single(&init, "init", &mut errors);
    let value = match &value {
        Some((n, v)) if v.len() == 1 => match ValueFn::parse(v[0]) {
            Some(p) => Some(p),
            None => {
                errors.push(LineError { line: *n, message: format!("unknown value function `{}`", v[0]) });
                None
            }
        },
        _ => {
            single(&value, "value", &mut errors);
            None
        }
    };
    let alphabet: Vec<String> = match &alphabet {
        Some((n, v)) => {
            if v.is_empty() {
                errors.push(LineError { line: *n, message: "empty alphabet".into() });
            }
            let mut seen = BTreeSet::new();
            for a in v {
                if !seen.insert(*a) {
                    errors.push(LineError { line: *n, message: format!("duplicate letter {a}") });
                }
                if *a == "*" || a.contains([',', '(', ')']) {
                    errors.push(LineError { line: *n, message: format!("reserved letter name `{a}`") });
                }
            }
            v.iter().map(|s| s.to_string()).collect()
        }
        None => {
            errors.push(LineError { line: 0, message: "missing `alphabet` line".into() });
            Vec::new()
        }
    };
    let declared: Option<Vec<String>> = states.as_ref().map(|(_, v)| v.iter().map(|s| s.to_string()).collect());
    let boolean = value.is_some_and(|(_, b)| b);
    let accepting: Option<BTreeSet<String>> = match &accept {
        Some((n, v)) => {
            if !boolean {
                errors.push(LineError { line: *n, message: "`accept` needs a boolean value keyword".into() });
            }
            Some(v.iter().map(|s| s.to_string()).collect())
        }
        None => None,
    };
    if !errors.is_empty() {
        return Err(IoError::Parse(errors));
    }
    let (value_fn, _) = value.expect("checked");
    let init = init.expect("checked");

    // First line mentioning each state, for diagnostics.
    let mut mention: HashMap<String, usize> = HashMap::new();
    if let Some((n, _)) = &states {
        for s in declared.iter().flatten() {
            mention.entry(s.clone()).or_insert(*n);
        }
    }
    let known = |s: &str| declared.as_ref().is_none_or(|d| d.iter().any(|x| x == s));
    let mut spec = AutomatonSpec::new(&name, value_fn, &[], &init);
    spec.alphabet = alphabet.clone();
    spec.declared_states = declared.clone();
    let mut edges: HashMap<(String, String, String), (Weight, usize)> = HashMap::new();
    for t in &raw {
        for s in [t.src, t.dst] {
            mention.entry(s.to_string()).or_insert(t.line);
            if !known(s) {
                errors.push(LineError { line: t.line, message: format!("unknown state {s}") });
            }
        }
        let weight = match t.weight {
            Some(w) => match w.parse::<Weight>() {
                Ok(w) if w <= MAX_WEIGHT && (!boolean || w <= 1) => Some(w),
                Ok(_) if boolean => {
                    errors.push(LineError { line: t.line, message: format!("weight {w} is not boolean") });
                    None
                }
                _ => {
                    errors.push(LineError {
                        line: t.line,
                        message: format!("malformed weight `{w}` (expected an integer in 0..={MAX_WEIGHT})"),
                    });
                    None
                }
            },
            None => match &accepting {
                Some(acc) => Some(Weight::from(acc.contains(t.dst))),
                None => {
                    let why = if boolean { "an `accept` line" } else { "a boolean value keyword" };
                    errors.push(LineError { line: t.line, message: format!("omitted weight needs {why}") });
                    None
                }
            },
        };
        let letters: Vec<String> = if t.letters == "*" {
            alphabet.clone()
        } else {
            t.letters.split(',').map(|s| s.to_string()).collect()
        };
        for a in letters {
            if !alphabet.contains(&a) {
                errors.push(LineError { line: t.line, message: format!("unknown letter {a}") });
                continue;
            }
            let Some(w) = weight else { continue };
            let key = (t.src.to_string(), a.clone(), t.dst.to_string());
            match edges.get(&key) {
                Some(&(w0, n0)) if w0 != w => errors.push(LineError {
                    line: t.line,
                    message: format!("{} -{a}-> {} already has weight {w0} (line {n0})", t.src, t.dst),
                }),
                Some(_) => {}
                None => {
                    edges.insert(key, (w, t.line));
                    spec.transitions.push((t.src.to_string(), a, w, t.dst.to_string()));
                }
            }
        }
    }
    if let Some(acc) = &accepting {
        for s in acc {
            if !spec.state_names().contains(s) {
                errors.push(LineError { line: accept.as_ref().map_or(0, |a| a.0), message: format!("unknown state {s}") });
            }
        }
    }
    if !known(&init) {
        errors.push(LineError { line: 0, message: format!("unknown initial state {init}") });
    }
    if !errors.is_empty() {
        return Err(IoError::Parse(errors));
    }
    match opts.complete_with_sink {
        Some(w) => spec.complete_with_sink(w),
        None => {
            for q in spec.state_names() {
                for a in &alphabet {
                    if !spec.transitions.iter().any(|(s, l, _, _)| *s == q && l == a) {
                        errors.push(LineError {
                            line: mention.get(&q).copied().unwrap_or(0),
                            message: format!("state {q} not total on {a} (use --complete-with-sink W to add a sink)"),
                        });
                    }
                }
            }
            if !errors.is_empty() {
                return Err(IoError::Parse(errors));
            }
        }
    }
    Ok(spec.build()?)
}

/// Canonical `.qaut` text; `parse_automaton` restores an identical automaton.
pub fn print_automaton(a: &WeightedAutomaton) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "automaton {}", a.name());
    let _ = writeln!(s, "alphabet {}", a.alphabet().join(" "));
    let _ = writeln!(s, "value {}", a.value_fn());
    let _ = writeln!(s, "states {}", a.states().join(" "));
    let _ = writeln!(s, "init {}", a.state_name(a.initial()));
    for t in a.transitions() {
        let _ = writeln!(s, "{} {} {} -> {}", a.state_name(t.src), a.letter_name(t.letter), t.weight, a.state_name(t.dst));
    }
    s
}

pub fn parse_lasso(text: &str, alphabet: &[String]) -> Result<LassoWord, IoError> {
    Ok(LassoWord::parse(text, alphabet)?)
}

pub fn print_lasso(w: &LassoWord, alphabet: &[String]) -> String {
    w.display(alphabet)
}

/// Parses a `.res` resolver for `aut`.
pub fn parse_resolver(text: &str, aut: &WeightedAutomaton) -> Result<Resolver, IoError> {
    let (nq, nl) = (aut.num_states(), aut.num_letters());
    let mut errors = Vec::new();
    let mut memory: Option<Vec<String>> = None;
    let mut init_mem: Option<(usize, String)> = None;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let l = strip_comment(line);
        if l.is_empty() {
            continue;
        }
        if let Some((lhs, rhs)) = l.split_once("->") {
            let lhs: Vec<&str> = lhs.split_whitespace().collect();
            let rhs: Vec<&str> = rhs.split_whitespace().collect();
            entries.push((n, lhs, rhs));
            continue;
        }
        let mut words = l.split_whitespace();
        match (words.next(), words.collect::<Vec<_>>()) {
            (Some("resolver" | "automaton"), _) => {}
            (Some("memory"), ms) if memory.is_none() && !ms.is_empty() => {
                memory = Some(ms.iter().map(|s| s.to_string()).collect())
            }
            (Some("init"), ms) if ms.len() == 1 => init_mem = Some((n, ms[0].to_string())),
            (Some(k), _) => errors.push(LineError { line: n, message: format!("unexpected `{k}` line") }),
            (None, _) => {}
        }
    }
    let mem = memory.clone().unwrap_or_else(|| vec!["m0".into()]);
    let mi = |s: &str| mem.iter().position(|m| m == s);
    let nm = mem.len();
    let mut choice = vec![None; nm * nq * nl];
    let mut update = vec![0; nm * nq * nl];
    for (n, lhs, rhs) in &entries {
        let (m, q, a, dst, m2) = match (memory.is_some(), lhs.as_slice(), rhs.as_slice()) {
            (false, [q, a], [d]) => ("m0", *q, *a, *d, "m0"),
            (true, [m, q, a], [d, m2]) => (*m, *q, *a, *d, *m2),
            _ => {
                let shape = if memory.is_some() { "memory state letter -> state memory" } else { "state letter -> state" };
                errors.push(LineError { line: *n, message: format!("expected `{shape}`") });
                continue;
            }
        };
        let look = (mi(m), aut.state_index(q), aut.letter_index(a), aut.state_index(dst), mi(m2));
        let (Some(m), Some(q), Some(a), Some(d), Some(m2)) = look else {
            errors.push(LineError { line: *n, message: "unknown memory, state or letter".into() });
            continue;
        };
        let k = (m * nq + q) * nl + a;
        if choice[k].is_some() {
            errors.push(LineError { line: *n, message: "duplicate choice".into() });
        }
        choice[k] = Some(d);
        update[k] = m2;
    }
    let initial = match &init_mem {
        Some((n, m)) => match mi(m) {
            Some(i) => i,
            None => {
                errors.push(LineError { line: *n, message: format!("unknown memory state {m}") });
                0
            }
        },
        None if memory.is_some() => {
            errors.push(LineError { line: 0, message: "missing `init` memory line".into() });
            0
        }
        None => 0,
    };
    // Unreachable (state, letter) pairs may be left out; they default to any successor.
    let mut table = Vec::with_capacity(choice.len());
    for m in 0..nm {
        for q in 0..nq {
            for a in 0..nl {
                table.push(choice[(m * nq + q) * nl + a].unwrap_or_else(|| aut.succ(q, a)[0].dst));
            }
        }
    }
    if !errors.is_empty() {
        return Err(IoError::Parse(errors));
    }
    let r: Resolver = match memory {
        None => PositionalResolver::from_table(nl, table).into(),
        Some(mem) => FiniteMemoryResolver::new(mem, initial, nq, nl, table, update).into(),
    };
    r.check(aut)?;
    Ok(r)
}

/// `.res` text for `r` over `aut`.
pub fn print_resolver(r: &Resolver, aut: &WeightedAutomaton) -> String {
    let mut s = format!("resolver\nautomaton {}\n", aut.name());
    let fm = match r {
        Resolver::FiniteMemory(f) => Some(f),
        Resolver::Positional(_) => None,
    };
    if let Some(f) = fm {
        let _ = writeln!(s, "memory {}", f.memory.join(" "));
        let _ = writeln!(s, "init {}", f.memory[f.initial]);
    }
    for m in 0..r.memory_size() {
        for q in 0..aut.num_states() {
            for a in 0..aut.num_letters() {
                let (d, m2) = r.step(m, q, a);
                let (qn, an, dn) = (aut.state_name(q), aut.letter_name(a), aut.state_name(d));
                match fm {
                    None => {
                        let _ = writeln!(s, "{qn} {an} -> {dn}");
                    }
                    Some(f) => {
                        let _ = writeln!(s, "{} {qn} {an} -> {dn} {}", f.memory[m], f.memory[m2]);
                    }
                }
            }
        }
    }
    s
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn automaton_body(out: &mut String, a: &WeightedAutomaton, label: &dyn Fn(usize) -> String) {
    let _ = writeln!(out, "  init [shape=point];");
    for q in 0..a.num_states() {
        let _ = writeln!(out, "  s{q} [label={}];", quote(a.state_name(q)));
    }
    let _ = writeln!(out, "  init -> s{};", a.initial());
    for (i, t) in a.transitions().iter().enumerate() {
        let _ = writeln!(out, "  s{} -> s{} [label={}];", t.src, t.dst, quote(&label(i)));
    }
}

/// DOT digraph of an automaton, edges labelled `letter:weight`.
pub fn automaton_dot(a: &WeightedAutomaton) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=LR;\n  label={};\n", quote(a.name()), quote(&a.value_fn().to_string()));
    let ts = a.transitions();
    automaton_body(&mut out, a, &|i| format!("{}:{}", a.letter_name(ts[i].letter), ts[i].weight));
    out.push_str("}\n");
    out
}

/// DOT digraph of a product, edges labelled `letter:(left,right)`.
pub fn product_dot(p: &ProductAutomaton) -> String {
    let a = &p.automaton;
    let mut out = format!("digraph {} {{\n  rankdir=LR;\n", quote(a.name()));
    let ts = a.transitions();
    automaton_body(&mut out, a, &|i| {
        let (l, r) = p.pair_weight(i);
        format!("{}:({l},{r})", a.letter_name(ts[i].letter))
    });
    out.push_str("}\n");
    out
}

/// DOT digraph of a parity game: Eve's vertices are ellipses, Adam's boxes,
/// edges carry priorities.
pub fn game_dot(g: &ParityGame) -> String {
    let mut out = String::from("digraph game {\n");
    for v in 0..g.num_vertices() {
        let shape = if g.owner[v] == Player::Eve { "ellipse" } else { "box" };
        let pen = if v == g.initial { ", penwidth=2" } else { "" };
        let _ = writeln!(out, "  v{v} [label={}, shape={shape}{pen}];", quote(&g.labels[v]));
    }
    for e in &g.edges {
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, e.priority);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::resolver::{enumerate_finite, enumerate_positional};

    const FIG1: &str = "\
automaton fig1A
alphabet a b
value LimSup
init q0
q0 * 0 -> q0
q0 a 0 -> q1
q1 b 1 -> q1
q1 a 0 -> q2
q2 * 2 -> q2
";

    fn same(a: &WeightedAutomaton, b: &WeightedAutomaton) -> bool {
        a.alphabet() == b.alphabet()
            && a.states() == b.states()
            && a.initial() == b.initial()
            && a.value_fn() == b.value_fn()
            && a.transitions() == b.transitions()
    }

    #[test]
    fn fig1_source() {
        let a = parse_automaton(FIG1).unwrap();
        assert_eq!(a.num_states(), 3);
        assert_eq!(FIG1.lines().filter(|l| l.contains("->")).count(), 5);
        assert!(same(&a, &fixtures::fig1(ValueFn::LimSup)));
        assert_eq!(a.name(), "fig1A");
    }

    #[test]
    fn malformed_weight_has_line_number() {
        let bad = FIG1.replace("q1 b 1 -> q1", "q1 b x -> q1");
        let e = parse_automaton(&bad).unwrap_err().to_string();
        assert!(e.starts_with("line 7: malformed weight"), "{e}");
    }

    #[test]
    fn totality_and_sink() {
        let text = "alphabet a b\nvalue LimSup\ninit s0\ns0 a 1 -> s0\n";
        let IoError::Parse(es) = parse_automaton(text).unwrap_err() else { panic!() };
        assert_eq!(es, vec![LineError { line: 4, message: es[0].message.clone() }]);
        assert!(es[0].message.contains("not total on b"));
        let a = parse_automaton_with(text, &ParseOptions { complete_with_sink: Some(0) }).unwrap();
        assert_eq!(a.num_states(), 2);
    }

    #[test]
    fn boolean_sugar() {
        let text = "value Buchi\nalphabet a b\ninit p\naccept q\np * -> p\np a -> q\nq * -> q\n";
        let a = parse_automaton(text).unwrap();
        assert_eq!(a.value_fn(), ValueFn::LimSup);
        assert!(a.transitions().iter().all(|t| t.weight == Weight::from(t.dst == 1)));
        let IoError::Parse(es) = parse_automaton(&text.replace("value Buchi", "value LimSup")).unwrap_err() else {
            panic!()
        };
        assert_eq!(es[0].line, 4);
        assert!(parse_automaton(&text.replace("p a -> q", "p a 2 -> q")).is_err());
    }

    #[test]
    fn other_errors() {
        for (text, line) in [
            ("alphabet a\nvalue Max\ninit q\nq a 0 -> q\n", 2),
            ("alphabet a\nvalue Inf\ninit q\nq c 0 -> q\n", 4),
            ("alphabet a\nvalue Inf\ninit q\nq a 0 -> q\nq a 1 -> q\n", 5),
            ("alphabet a\nvalue Inf\ninit q\nq a 0 q\n", 4),
            ("alphabet a\nvalue Inf\ninit q\ninit p\nq a 0 -> q\n", 4),
            ("alphabet a\nvalue Inf\nstates q\ninit q\nq a 0 -> r\n", 5),
            ("alphabet a\ninit q\nq a 0 -> q\n", 0),
        ] {
            let IoError::Parse(es) = parse_automaton(text).unwrap_err() else { panic!("{text}") };
            assert_eq!(es[0].line, line, "{text}: {es:?}");
        }
    }

    #[test]
    fn automaton_round_trip() {
        let (a3, b3) = fixtures::fig3(ValueFn::Inf);
        let (a4, b4) = fixtures::fig4(ValueFn::LimInf);
        let (a2, b2) = fixtures::fig2();
        let (a5, b5) = fixtures::fig5();
        for a in [fixtures::fig1(ValueFn::Sup), a2, b2, a3, b3, a4, b4, a5, b5] {
            let b = parse_automaton(&print_automaton(&a)).unwrap();
            assert!(same(&a, &b), "{}", a.name());
            assert_eq!(print_automaton(&b), print_automaton(&a));
        }
    }

    #[test]
    fn resolver_round_trip() {
        let a = fixtures::fig1(ValueFn::LimSup);
        for f in enumerate_positional(&a) {
            let r: Resolver = f.into();
            assert_eq!(parse_resolver(&print_resolver(&r, &a), &a).unwrap(), r);
        }
        let (a5, _) = fixtures::fig5();
        for f in enumerate_finite(&a5, 2, 10_000).unwrap().into_iter().take(50) {
            let r: Resolver = f.into();
            assert_eq!(parse_resolver(&print_resolver(&r, &a5), &a5).unwrap(), r);
        }
    }

    #[test]
    fn resolver_errors() {
        let a = fixtures::fig1(ValueFn::LimSup);
        assert!(matches!(parse_resolver("q0 b -> q1\n", &a), Err(IoError::Resolver(_))));
        let IoError::Parse(es) = parse_resolver("q0 a -> q1\nq0 a -> q0\n", &a).unwrap_err() else { panic!() };
        assert_eq!(es[0].line, 2);
        // Omitted pairs default to a legal successor.
        let r = parse_resolver("q0 a -> q1\n", &a).unwrap();
        assert_eq!(r.step(0, 0, 0).0, 1);
    }

    #[test]
    fn lasso_round_trip() {
        let ab = vec!["a".to_string(), "b".to_string()];
        let w = parse_lasso("a(b)", &ab).unwrap();
        assert_eq!((w.stem(), w.cycle()), (&[0][..], &[1][..]));
        assert!(parse_lasso("(b)", &ab).unwrap().stem().is_empty());
        assert!(parse_lasso("ab()", &ab).is_err());
        assert!(parse_lasso("c(a)", &ab).is_err());
        for w in LassoWord::all_up_to(2, 4) {
            assert_eq!(parse_lasso(&print_lasso(&w, &ab), &ab).unwrap(), w);
        }
    }

    #[test]
    fn dot_output() {
        let a = fixtures::fig1(ValueFn::LimSup);
        let d = automaton_dot(&a);
        assert!(d.starts_with("digraph \"fig1\""));
        assert_eq!(d.matches(" -> s").count(), 8);
        let (x, y) = fixtures::fig2();
        let p = crate::product::product(&x, &y, crate::product::Side::Left).unwrap();
        assert!(product_dot(&p).contains(":(1,0)"));
        let g = crate::game::simulation_game(&x, &y).unwrap();
        assert!(game_dot(&g.game).contains("shape=box"));
    }
}
