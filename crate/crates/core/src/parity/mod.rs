//! Explicit min-parity games with two independent solvers.
//!
//! Even is Duplicator and Odd is Spoiler. Even wins a play iff the least
//! priority seen infinitely often is even. Every node must have a successor;
//! game builders route dead ends into explicit sink self-loops.

mod check;
mod spm;
mod zielonka;

use std::collections::BTreeSet;
use std::fmt::Write as _;

pub use check::{strategy_is_sound, StrategyViolation};
pub use spm::progress_measure_solve;
pub use zielonka::zielonka_solve;

use crate::error::{Error, Result};

pub type Node = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    /// The player favoured by a priority.
    pub fn of_priority(p: u8) -> Player {
        if p % 2 == 0 {
            Player::Even
        } else {
            Player::Odd
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Even => 0,
            Player::Odd => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    priority: Vec<u8>,
    succ: Vec<Vec<Node>>,
    pred: Vec<Vec<Node>>,
}

impl ParityGame {
    /// Builds a game; successor lists are sorted and deduplicated. Fails on a
    /// dangling edge or a node without successors.
    pub fn new(owner: Vec<Player>, priority: Vec<u8>, mut succ: Vec<Vec<Node>>) -> Result<Self> {
        let n = owner.len();
        if priority.len() != n || succ.len() != n {
            return Err(Error::Invalid("owner/priority/edge vectors differ in length".into()));
        }
        let mut pred = vec![Vec::new(); n];
        for (v, row) in succ.iter_mut().enumerate() {
            row.sort_unstable();
            row.dedup();
            if row.is_empty() {
                return Err(Error::Invalid(format!("node {v} has no successor")));
            }
            for &w in row.iter() {
                if w >= n {
                    return Err(Error::Invalid(format!("edge {v} -> {w} leaves the game")));
                }
                pred[w].push(v);
            }
        }
        Ok(ParityGame {
            owner,
            priority,
            succ,
            pred,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.owner.len()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn owner(&self, v: Node) -> Player {
        self.owner[v]
    }

    pub fn priority(&self, v: Node) -> u8 {
        self.priority[v]
    }

    pub fn max_priority(&self) -> u8 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    pub fn successors(&self, v: Node) -> &[Node] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: Node) -> &[Node] {
        &self.pred[v]
    }

    pub fn has_edge(&self, v: Node, w: Node) -> bool {
        self.succ[v].binary_search(&w).is_ok()
    }

    /// Same arena with the players swapped and every priority raised by one.
    /// Even wins the dual exactly where Odd wins the original.
    pub fn dual(&self) -> ParityGame {
        ParityGame {
            owner: self.owner.iter().map(|p| p.opponent()).collect(),
            priority: self.priority.iter().map(|p| p + 1).collect(),
            succ: self.succ.clone(),
            pred: self.pred.clone(),
        }
    }

    /// Debug dump, one line per node: `node <idx> <E|O> <prio> -> <succ,...>`.
    pub fn to_pg_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.num_nodes() {
            let owner = match self.owner[v] {
                Player::Even => 'E',
                Player::Odd => 'O',
            };
            let succ: Vec<String> = self.succ[v].iter().map(|w| w.to_string()).collect();
            let _ = writeln!(
                out,
                "node {v} {owner} {} -> {}",
                self.priority[v],
                succ.join(",")
            );
        }
        out
    }
}

/// Solution of a game: a partition of the nodes plus positional strategies,
/// each defined on its owner's nodes inside that player's region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinningRegions {
    pub even_wins: Vec<bool>,
    pub even_strategy: Vec<Option<Node>>,
    pub odd_strategy: Vec<Option<Node>>,
}

impl WinningRegions {
    pub fn winner(&self, v: Node) -> Player {
        if self.even_wins[v] {
            Player::Even
        } else {
            Player::Odd
        }
    }

    pub fn region(&self, player: Player) -> BTreeSet<Node> {
        self.even_wins
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == (player == Player::Even))
            .map(|(v, _)| v)
            .collect()
    }

    pub fn strategy(&self, player: Player) -> &[Option<Node>] {
        match player {
            Player::Even => &self.even_strategy,
            Player::Odd => &self.odd_strategy,
        }
    }
}

/// Attractor of `target` for `player` inside the subgame `within`, together
/// with the successor each attracted `player` node uses to get closer.
pub(crate) fn attractor_in(
    game: &ParityGame,
    within: &[bool],
    target: &[bool],
    player: Player,
) -> (Vec<bool>, Vec<Option<Node>>) {
    let n = game.num_nodes();
    let mut attr = vec![false; n];
    let mut witness = vec![None; n];
    // remaining successor count inside `within` for opponent nodes
    let mut escape: Vec<usize> = (0..n)
        .map(|v| {
            if within[v] {
                game.succ[v].iter().filter(|&&w| within[w]).count()
            } else {
                0
            }
        })
        .collect();
    let mut queue = std::collections::VecDeque::new();
    for v in 0..n {
        if within[v] && target[v] {
            attr[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(w) = queue.pop_front() {
        for &v in &game.pred[w] {
            if !within[v] || attr[v] {
                continue;
            }
            if game.owner[v] == player {
                attr[v] = true;
                witness[v] = Some(w);
                queue.push_back(v);
            } else {
                escape[v] -= 1;
                if escape[v] == 0 {
                    attr[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    (attr, witness)
}

/// Least superset of `target` from which `player` can force a visit to it.
pub fn attractor(game: &ParityGame, target: &BTreeSet<Node>, player: Player) -> BTreeSet<Node> {
    let n = game.num_nodes();
    let within = vec![true; n];
    let mut t = vec![false; n];
    for &v in target {
        t[v] = true;
    }
    let (attr, _) = attractor_in(game, &within, &t, player);
    (0..n).filter(|&v| attr[v]).collect()
}
