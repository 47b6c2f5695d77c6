//! Parity games with edge priorities and a Zielonka solver.

mod arena;

pub use arena::*;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Player {
    /// The even player (Simulator, resolver player).
    Eve,
    /// The odd player (Challenger, adversary).
    Adam,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eve => Player::Adam,
            Player::Adam => Player::Eve,
        }
    }

    fn of_priority(p: u32) -> Player {
        if p % 2 == 0 {
            Player::Eve
        } else {
            Player::Adam
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GameEdge {
    pub from: usize,
    pub to: usize,
    pub priority: u32,
}

/// A two-player parity game: Eve wins a play iff the largest priority seen
/// infinitely often is even.
#[derive(Clone, Debug, Default)]
pub struct ParityGame {
    pub owner: Vec<Player>,
    pub labels: Vec<String>,
    pub edges: Vec<GameEdge>,
    out: Vec<Vec<usize>>,
    pub initial: usize,
}

impl ParityGame {
    pub fn new() -> Self {
        ParityGame::default()
    }

    pub fn add_vertex(&mut self, owner: Player, label: impl Into<String>) -> usize {
        self.owner.push(owner);
        self.labels.push(label.into());
        self.out.push(Vec::new());
        self.owner.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize, priority: u32) -> usize {
        self.edges.push(GameEdge { from, to, priority });
        self.out[from].push(self.edges.len() - 1);
        self.edges.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.owner.len()
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Vertices without a successor (the arena is invalid if any).
    pub fn dead_ends(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.out[v].is_empty()).collect()
    }
}

/// Winning regions and positional winning strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSolution {
    pub winner: Vec<Player>,
    /// For each vertex, the edge its owner plays when the owner wins there.
    pub strategy: Vec<Option<usize>>,
}

impl GameSolution {
    pub fn eve_wins(&self, v: usize) -> bool {
        self.winner[v] == Player::Eve
    }
}

/// Vertex-priority game obtained by splitting every edge through a middle
/// vertex carrying its priority.
struct Split {
    owner: Vec<Player>,
    prio: Vec<u32>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Split {
    fn new(g: &ParityGame) -> Self {
        let n = g.num_vertices();
        let total = n + g.edges.len();
        let mut owner = g.owner.clone();
        let mut prio = vec![0; n];
        let mut succ = vec![Vec::new(); total];
        let mut pred = vec![Vec::new(); total];
        for (i, e) in g.edges.iter().enumerate() {
            let m = n + i;
            owner.push(Player::Eve);
            prio.push(e.priority);
            succ[e.from].push(m);
            pred[m].push(e.from);
            succ[m].push(e.to);
            pred[e.to].push(m);
        }
        Split { owner, prio, succ, pred }
    }

    /// Attractor of `target` for `p` inside `sub`, with attracting moves.
    fn attractor(&self, sub: &[bool], target: &[usize], p: Player, strat: &mut [Option<usize>]) -> Vec<bool> {
        let n = self.owner.len();
        let mut inside = vec![false; n];
        let mut count: Vec<usize> =
            (0..n).map(|v| if sub[v] { self.succ[v].iter().filter(|&&w| sub[w]).count() } else { 0 }).collect();
        let mut queue: Vec<usize> = Vec::new();
        for &t in target {
            if sub[t] && !inside[t] {
                inside[t] = true;
                queue.push(t);
            }
        }
        while let Some(w) = queue.pop() {
            for &v in &self.pred[w] {
                if !sub[v] || inside[v] {
                    continue;
                }
                if self.owner[v] == p {
                    inside[v] = true;
                    strat[v] = Some(w);
                    queue.push(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        inside[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        inside
    }

    /// Zielonka's recursion on the subgame `sub`; returns the winner per
    /// vertex of `sub` and fills `strat` for winners' vertices.
    fn solve(&self, sub: &[bool], strat: &mut [Option<usize>]) -> Vec<Option<Player>> {
        let n = self.owner.len();
        let mut win = vec![None; n];
        let Some(d) = (0..n).filter(|&v| sub[v]).map(|v| self.prio[v]).max() else {
            return win;
        };
        let p = Player::of_priority(d);
        let top: Vec<usize> = (0..n).filter(|&v| sub[v] && self.prio[v] == d).collect();
        let mut s_attr = vec![None; n];
        let a = self.attractor(sub, &top, p, &mut s_attr);
        let rest: Vec<bool> = (0..n).map(|v| sub[v] && !a[v]).collect();
        let mut s1 = vec![None; n];
        let w1 = self.solve(&rest, &mut s1);
        let opp_region: Vec<usize> = (0..n).filter(|&v| w1[v] == Some(p.opponent())).collect();
        if opp_region.is_empty() {
            for v in 0..n {
                if !sub[v] {
                    continue;
                }
                win[v] = Some(p);
                if self.owner[v] == p {
                    strat[v] = if rest[v] {
                        s1[v]
                    } else if self.prio[v] == d && s_attr[v].is_none() {
                        self.succ[v].iter().copied().find(|&w| sub[w])
                    } else {
                        s_attr[v]
                    };
                }
            }
            return win;
        }
        let mut s_b = vec![None; n];
        let b = self.attractor(sub, &opp_region, p.opponent(), &mut s_b);
        let rest2: Vec<bool> = (0..n).map(|v| sub[v] && !b[v]).collect();
        let mut s2 = vec![None; n];
        let w2 = self.solve(&rest2, &mut s2);
        for v in 0..n {
            if !sub[v] {
                continue;
            }
            if b[v] {
                win[v] = Some(p.opponent());
                if self.owner[v] == p.opponent() {
                    strat[v] = if w1[v] == Some(p.opponent()) { s1[v] } else { s_b[v] };
                }
            } else {
                win[v] = w2[v];
                if w2[v] == Some(self.owner[v]) {
                    strat[v] = s2[v];
                }
            }
        }
        win
    }
}

/// Solves the game with Zielonka's algorithm.
pub fn solve(g: &ParityGame) -> GameSolution {
    let n = g.num_vertices();
    let split = Split::new(g);
    let total = split.owner.len();
    let sub = vec![true; total];
    let mut strat = vec![None; total];
    let win = split.solve(&sub, &mut strat);
    let winner: Vec<Player> = (0..n).map(|v| win[v].expect("every vertex is solved")).collect();
    let strategy = (0..n)
        .map(|v| {
            if winner[v] == g.owner[v] {
                strat[v].map(|m| m - n)
            } else {
                None
            }
        })
        .collect();
    GameSolution { winner, strategy }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_loops() {
        let mut g = ParityGame::new();
        let v = g.add_vertex(Player::Eve, "v");
        g.add_edge(v, v, 2);
        assert!(solve(&g).eve_wins(v));
        let mut h = ParityGame::new();
        let u = h.add_vertex(Player::Adam, "u");
        h.add_edge(u, u, 3);
        assert!(!solve(&h).eve_wins(u));
    }

    #[test]
    fn eve_escapes_odd_loop() {
        let mut g = ParityGame::new();
        let a = g.add_vertex(Player::Eve, "a");
        let b = g.add_vertex(Player::Adam, "b");
        g.add_edge(a, a, 1);
        let e = g.add_edge(a, b, 0);
        g.add_edge(b, b, 4);
        g.add_edge(b, a, 2);
        let s = solve(&g);
        assert!(s.eve_wins(a));
        assert_eq!(s.strategy[a], Some(e));
        assert!(s.eve_wins(b));
        g.add_edge(b, a, 5);
        let s = solve(&g);
        assert!(!s.eve_wins(a) && !s.eve_wins(b));
    }
}
