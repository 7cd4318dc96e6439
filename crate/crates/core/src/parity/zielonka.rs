use super::{attractor_in, Node, ParityGame, Player, WinningRegions};

struct Partial {
    wins: [Vec<bool>; 2],
    strategy: Vec<Option<Node>>,
}

/// Recursive (Zielonka) solver. The tail call on the shrunken subgame is a
/// loop, so recursion depth is bounded by the number of distinct priorities.
pub fn zielonka_solve(game: &ParityGame) -> WinningRegions {
    let n = game.num_nodes();
    let sol = solve(game, vec![true; n]);
    let mut even_strategy = vec![None; n];
    let mut odd_strategy = vec![None; n];
    for v in 0..n {
        let owner = game.owner(v);
        if sol.wins[owner.index()][v] {
            match owner {
                Player::Even => even_strategy[v] = sol.strategy[v],
                Player::Odd => odd_strategy[v] = sol.strategy[v],
            }
        }
    }
    WinningRegions {
        even_wins: sol.wins[0].clone(),
        even_strategy,
        odd_strategy,
    }
}

fn solve(game: &ParityGame, mut within: Vec<bool>) -> Partial {
    let n = game.num_nodes();
    let mut wins = [vec![false; n], vec![false; n]];
    let mut strategy = vec![None; n];

    loop {
        let Some(p) = (0..n).filter(|&v| within[v]).map(|v| game.priority(v)).min() else {
            break;
        };
        let alpha = Player::of_priority(p);
        let beta = alpha.opponent();
        let top: Vec<bool> = (0..n).map(|v| within[v] && game.priority(v) == p).collect();
        let (attr, attr_w) = attractor_in(game, &within, &top, alpha);
        let rest: Vec<bool> = (0..n).map(|v| within[v] && !attr[v]).collect();
        let sub = solve(game, rest);

        if !sub.wins[beta.index()].iter().any(|&b| b) {
            for v in (0..n).filter(|&v| within[v]) {
                wins[alpha.index()][v] = true;
                if game.owner(v) != alpha {
                    continue;
                }
                strategy[v] = if !attr[v] {
                    sub.strategy[v]
                } else if !top[v] {
                    attr_w[v]
                } else {
                    game.successors(v).iter().copied().find(|&w| within[w])
                };
            }
            break;
        }

        let (b_attr, b_w) = attractor_in(game, &within, &sub.wins[beta.index()], beta);
        for v in (0..n).filter(|&v| b_attr[v]) {
            wins[beta.index()][v] = true;
            if game.owner(v) == beta {
                strategy[v] = if sub.wins[beta.index()][v] {
                    sub.strategy[v]
                } else {
                    b_w[v]
                };
            }
            within[v] = false;
        }
    }
    Partial { wins, strategy }
}
