//! JSON and text renderings of witnesses.

use serde_json::{json, Value};

use resolvent::product::{ComponentResolver, ProductAutomaton, Side};
use resolvent::relations::{Defeat, Strategy, Witness};
use resolvent::{LassoWord, Resolver, Run, WeightedAutomaton};

pub fn word(role: &str, w: &LassoWord, aut: &WeightedAutomaton) -> Value {
    json!({ "kind": "word", "role": role, "word": w.display(aut.alphabet()) })
}

pub fn run(role: &str, r: &Run, aut: &WeightedAutomaton) -> Value {
    let steps = |ss: &[resolvent::Step]| -> Vec<String> {
        ss.iter()
            .map(|s| format!("{} -{}:{}-> {}", aut.state_name(s.src), aut.letter_name(s.letter), s.weight, aut.state_name(s.dst)))
            .collect()
    };
    json!({ "kind": "run", "role": role, "stem": steps(&r.stem), "cycle": steps(&r.cycle) })
}

pub fn resolver(role: &str, r: &Resolver, aut: &WeightedAutomaton) -> Value {
    let memory = match r {
        Resolver::FiniteMemory(f) => Some(&f.memory),
        Resolver::Positional(_) => None,
    };
    let mut table = Vec::new();
    for m in 0..r.memory_size() {
        for q in 0..aut.num_states() {
            for a in 0..aut.num_letters() {
                let (d, m2) = r.step(m, q, a);
                let mut e = json!({
                    "state": aut.state_name(q),
                    "letter": aut.letter_name(a),
                    "target": aut.state_name(d),
                });
                if let Some(mem) = memory {
                    e["memory"] = json!(mem[m]);
                    e["next"] = json!(mem[m2]);
                }
                table.push(e);
            }
        }
    }
    let mut v = json!({ "kind": "resolver", "role": role, "automaton": aut.name(), "table": table });
    if let (Some(mem), Resolver::FiniteMemory(f)) = (memory, r) {
        v["memory"] = json!(mem);
        v["initial"] = json!(mem[f.initial]);
    }
    v
}

fn component(role: &str, c: &ComponentResolver, prod: &ProductAutomaton, side_aut: &WeightedAutomaton) -> Value {
    let p = &prod.automaton;
    let mut table = Vec::new();
    for m in 0..c.memory.len() {
        for s in 0..p.num_states() {
            for a in 0..p.num_letters() {
                let mut e = json!({
                    "state": p.state_name(s),
                    "letter": p.letter_name(a),
                    "target": side_aut.state_name(c.choose(m, s, a)),
                });
                if c.memory.len() > 1 {
                    e["memory"] = json!(c.memory[m]);
                }
                table.push(e);
            }
        }
    }
    let side = if c.side == Side::Left { "A" } else { "B" };
    json!({ "kind": "component_resolver", "role": role, "side": side, "automaton": p.name(), "table": table })
}

/// Resolver roles read `f` for `A` and `g` for `B`.
pub struct RelationContext<'a> {
    pub a: &'a WeightedAutomaton,
    pub b: &'a WeightedAutomaton,
    pub product: Option<ProductAutomaton>,
}

impl RelationContext<'_> {
    fn strategy(&self, role: &str, s: &Strategy) -> Value {
        let aut = if role.starts_with('g') { self.b } else { self.a };
        match s {
            Strategy::Plain(r) => resolver(role, r, aut),
            Strategy::Component(c) => {
                let side_aut = if c.side == Side::Left { self.a } else { self.b };
                match &self.product {
                    Some(p) => component(role, c, p, side_aut),
                    None => json!({ "kind": "component_resolver", "role": role }),
                }
            }
        }
    }

    fn defeat(&self, i: usize, d: &Defeat, out: &mut Vec<Value>) {
        if let Some(f) = &d.f {
            out.push(self.strategy(&format!("f[{i}]"), f));
        }
        if let Some(g) = &d.g {
            out.push(self.strategy(&format!("g[{i}]"), g));
        }
        out.push(word(&format!("word[{i}]"), &d.word, self.a));
    }

    pub fn witness(&self, w: &Witness) -> Vec<Value> {
        let mut out = Vec::new();
        match w {
            Witness::None => {}
            Witness::Word(x) => out.push(word("counterexample", x, self.a)),
            Witness::Dominator(g) => out.push(self.strategy("g", g)),
            Witness::Answers(pairs) => {
                for (i, (f, g)) in pairs.iter().enumerate() {
                    out.push(self.strategy(&format!("f[{i}]"), f));
                    out.push(self.strategy(&format!("g[{i}]"), g));
                }
            }
            Witness::Unanswered { f, defeats } => {
                out.push(self.strategy("f", f));
                for (i, d) in defeats.iter().enumerate() {
                    self.defeat(i, d, &mut out);
                }
            }
            Witness::NoDominator(defeats) => {
                for (i, d) in defeats.iter().enumerate() {
                    self.defeat(i, d, &mut out);
                }
            }
        }
        out
    }
}

/// One-line human rendering of a witness document entry.
pub fn text(w: &Value) -> String {
    let role = w["role"].as_str().unwrap_or("");
    match w["kind"].as_str() {
        Some("word") => format!("{role}: {}", w["word"].as_str().unwrap_or("")),
        Some("run") => {
            let j = |k: &str| {
                w[k].as_array().map(|v| v.iter().filter_map(|s| s.as_str()).collect::<Vec<_>>().join(", ")).unwrap_or_default()
            };
            format!("{role}: run [{}] ([{}])^ω", j("stem"), j("cycle"))
        }
        _ => {
            let entries: Vec<String> = w["table"]
                .as_array()
                .map(|t| {
                    t.iter()
                        .map(|e| {
                            let s = |k: &str| e[k].as_str().unwrap_or("").to_string();
                            match e.get("memory") {
                                Some(m) => format!("{} {} {} -> {} {}", m.as_str().unwrap_or(""), s("state"), s("letter"), s("target"), s("next")),
                                None => format!("{} {} -> {}", s("state"), s("letter"), s("target")),
                            }
                        })
                        .collect()
                })
                .unwrap_or_default();
            format!("{role}: {} {{{}}}", w["kind"].as_str().unwrap_or(""), entries.join("; "))
        }
    }
}
