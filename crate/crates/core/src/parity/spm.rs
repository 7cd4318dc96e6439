//! Small progress measures for min-parity games.
//!
//! A measure has one counter per odd priority, most significant first (the
//! smallest priority dominates). `None` is the top element.

use std::collections::VecDeque;

use super::{Node, ParityGame, Player, WinningRegions};

type Measure = Option<Vec<u32>>;

struct Lifter<'a> {
    game: &'a ParityGame,
    bounds: Vec<u32>,
}

impl Lifter<'_> {
    fn new(game: &ParityGame) -> Lifter<'_> {
        let odd = (game.max_priority() as usize + 1) / 2;
        let mut bounds = vec![0u32; odd];
        for v in 0..game.num_nodes() {
            let p = game.priority(v) as usize;
            if p % 2 == 1 {
                bounds[p / 2] += 1;
            }
        }
        Lifter { game, bounds }
    }

    fn prog(&self, rho: &[Measure], v: Node, w: Node) -> Measure {
        let m = rho[w].as_ref()?;
        let p = self.game.priority(v) as usize;
        // components for odd priorities <= p survive
        let keep = if p % 2 == 1 { p / 2 + 1 } else { p / 2 };
        let keep = keep.min(m.len());
        let mut out = vec![0u32; m.len()];
        out[..keep].copy_from_slice(&m[..keep]);
        if p % 2 == 0 {
            return Some(out);
        }
        for j in (0..keep).rev() {
            if out[j] < self.bounds[j] {
                out[j] += 1;
                for c in out.iter_mut().take(keep).skip(j + 1) {
                    *c = 0;
                }
                return Some(out);
            }
        }
        None
    }

    fn best(&self, rho: &[Measure], v: Node) -> (Measure, Node) {
        let even = self.game.owner(v) == Player::Even;
        let mut it = self.game.successors(v).iter();
        let &first = it.next().expect("games have no dead ends");
        let mut best = (self.prog(rho, v, first), first);
        for &w in it {
            let m = self.prog(rho, v, w);
            let better = if even { less(&m, &best.0) } else { less(&best.0, &m) };
            if better {
                best = (m, w);
            }
        }
        best
    }

    fn solve(&self) -> (Vec<Measure>, Vec<Option<Node>>) {
        let n = self.game.num_nodes();
        let mut rho: Vec<Measure> = vec![Some(vec![0; self.bounds.len()]); n];
        let mut queue: VecDeque<Node> = (0..n).collect();
        let mut queued = vec![true; n];
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            let (m, _) = self.best(&rho, v);
            if less(&rho[v], &m) {
                rho[v] = m;
                for &u in self.game.predecessors(v) {
                    if !queued[u] {
                        queued[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        let strategy = (0..n)
            .map(|v| {
                if self.game.owner(v) == Player::Even && rho[v].is_some() {
                    Some(self.best(&rho, v).1)
                } else {
                    None
                }
            })
            .collect();
        (rho, strategy)
    }
}

fn less(a: &Measure, b: &Measure) -> bool {
    match (a, b) {
        (_, None) => a.is_some(),
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x < y,
    }
}

/// Progress-measure solver; Odd's strategy comes from solving the dual game.
pub fn progress_measure_solve(game: &ParityGame) -> WinningRegions {
    let (rho, even_strategy) = Lifter::new(game).solve();
    let even_wins: Vec<bool> = rho.iter().map(Option::is_some).collect();
    let dual = game.dual();
    let (rho_d, odd_strategy) = Lifter::new(&dual).solve();
    debug_assert!(
        rho_d.iter().zip(&even_wins).all(|(m, &e)| m.is_some() != e),
        "dual solve must produce the complementary region"
    );
    WinningRegions {
        even_wins,
        even_strategy,
        odd_strategy,
    }
}
