use std::fmt;

use super::{Node, ParityGame, Player, WinningRegions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyViolation {
    MissingChoice(Node),
    NotAnEdge(Node, Node),
    LeavesRegion(Node, Node),
    BadCycle { priority: u8, through: Node },
}

impl fmt::Display for StrategyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingChoice(v) => write!(f, "no strategy choice at node {v}"),
            Self::NotAnEdge(v, w) => write!(f, "strategy edge {v} -> {w} is not in the game"),
            Self::LeavesRegion(v, w) => write!(f, "edge {v} -> {w} leaves the winning region"),
            Self::BadCycle { priority, through } => {
                write!(f, "cycle with minimal priority {priority} through node {through}")
            }
        }
    }
}

/// Checks `player`'s positional strategy on their winning region: restricted
/// to the region, with `player` following the strategy and the opponent free,
/// every cycle must have a minimal priority of `player`'s parity.
pub fn strategy_is_sound(
    game: &ParityGame,
    regions: &WinningRegions,
    player: Player,
) -> Result<(), StrategyViolation> {
    let n = game.num_nodes();
    let mine = |v: Node| regions.even_wins[v] == (player == Player::Even);
    let strat = regions.strategy(player);
    let mut edges: Vec<Vec<Node>> = vec![Vec::new(); n];
    for v in (0..n).filter(|&v| mine(v)) {
        if game.owner(v) == player {
            let w = strat[v].ok_or(StrategyViolation::MissingChoice(v))?;
            if !game.has_edge(v, w) {
                return Err(StrategyViolation::NotAnEdge(v, w));
            }
            if !mine(w) {
                return Err(StrategyViolation::LeavesRegion(v, w));
            }
            edges[v].push(w);
        } else {
            for &w in game.successors(v) {
                if !mine(w) {
                    return Err(StrategyViolation::LeavesRegion(v, w));
                }
                edges[v].push(w);
            }
        }
    }
    let bad_parity = match player {
        Player::Even => 1,
        Player::Odd => 0,
    };
    let mut q = bad_parity;
    while q <= game.max_priority() {
        let keep: Vec<bool> = (0..n).map(|v| mine(v) && game.priority(v) >= q).collect();
        let comp = scc(&edges, &keep);
        let mut size = vec![0usize; n];
        for v in (0..n).filter(|&v| keep[v]) {
            size[comp[v]] += 1;
        }
        for v in (0..n).filter(|&v| keep[v] && game.priority(v) == q) {
            let cyclic = size[comp[v]] > 1 || edges[v].contains(&v);
            if cyclic {
                return Err(StrategyViolation::BadCycle {
                    priority: q,
                    through: v,
                });
            }
        }
        q += 2;
    }
    Ok(())
}

/// Iterative Kosaraju over the nodes flagged in `keep`; returns a component id
/// per node (unspecified for nodes outside `keep`).
fn scc(edges: &[Vec<Node>], keep: &[bool]) -> Vec<usize> {
    let n = edges.len();
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for s in 0..n {
        if !keep[s] || visited[s] {
            continue;
        }
        visited[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if let Some(&w) = edges[v].get(i) {
                stack.push((v, i + 1));
                if keep[w] && !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut rev: Vec<Vec<Node>> = vec![Vec::new(); n];
    for v in (0..n).filter(|&v| keep[v]) {
        for &w in &edges[v] {
            if keep[w] {
                rev[w].push(v);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &rev[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::zielonka_solve;
    use Player::*;

    #[test]
    fn detects_bad_strategy() {
        let g = ParityGame::new(
            vec![Even, Odd, Odd],
            vec![2, 1, 0],
            vec![vec![1, 2], vec![0], vec![0]],
        )
        .unwrap();
        let mut r = zielonka_solve(&g);
        assert_eq!(strategy_is_sound(&g, &r, Even), Ok(()));
        r.even_strategy[0] = Some(1);
        assert_eq!(
            strategy_is_sound(&g, &r, Even),
            Err(StrategyViolation::BadCycle { priority: 1, through: 1 })
        );
    }

    #[test]
    fn scc_of_cycle() {
        let edges = vec![vec![1], vec![0], vec![2]];
        let c = scc(&edges, &[true, true, true]);
        assert_eq!(c[0], c[1]);
        assert_ne!(c[0], c[2]);
    }
}
