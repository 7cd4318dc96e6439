//! Explicit game graphs for fair simulation and for the two-buffer game.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;
use std::hash::Hash;

use crate::automaton::{Alphabet, BufferId, BuchiAutomaton, Letter, SigmaMap, State};
use crate::error::Result;
use crate::parity::{zielonka_solve, Node, ParityGame, Player, WinningRegions};

use super::Capacities;

/// A parity game together with what each node stands for.
#[derive(Debug, Clone)]
pub struct Arena<N> {
    pub game: ParityGame,
    pub nodes: Vec<N>,
    pub initial: Node,
}

impl<N> Arena<N> {
    pub fn solve(&self) -> WinningRegions {
        zielonka_solve(&self.game)
    }

    pub fn duplicator_wins(&self, regions: &WinningRegions) -> bool {
        regions.winner(self.initial) == Player::Even
    }

    /// Nodes reachable from the initial node when the winner of the initial
    /// node follows their strategy and the loser is unrestricted.
    pub fn strategy_reachable(&self, regions: &WinningRegions) -> Vec<Node> {
        let winner = regions.winner(self.initial);
        let strat = regions.strategy(winner);
        let n = self.game.num_nodes();
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let next: Vec<Node> = if self.game.owner(v) == winner {
                strat[v].into_iter().collect()
            } else {
                self.game.successors(v).to_vec()
            };
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }
}

impl<N: LegendRow> Arena<N> {
    /// Tab-separated legend, one row per node (see [`LegendRow`]).
    pub fn legend_tsv(&self, left: &Alphabet) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", N::header());
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "{i}\t{}", n.row(left));
        }
        out
    }

    /// Winner's strategy as a finite automaton over arena nodes: the nodes
    /// reachable under the strategy, with the winner's single choice and all
    /// of the loser's moves.
    pub fn witness(&self, regions: &WinningRegions, alphabet: &Alphabet) -> String {
        let winner = regions.winner(self.initial);
        let strat = regions.strategy(winner);
        let mut out = String::new();
        let who = match winner {
            Player::Even => "duplicator",
            Player::Odd => "spoiler",
        };
        let _ = writeln!(out, "# winning strategy of {who} from node {}", self.initial);
        for v in self.strategy_reachable(regions) {
            let owner = match self.game.owner(v) {
                Player::Even => 'E',
                Player::Odd => 'O',
            };
            let succ: Vec<String> = if self.game.owner(v) == winner {
                strat[v].iter().map(|w| w.to_string()).collect()
            } else {
                self.game.successors(v).iter().map(|w| w.to_string()).collect()
            };
            let _ = writeln!(
                out,
                "node {v} {owner} {} -> {}\t# {}",
                self.game.priority(v),
                succ.join(","),
                self.nodes[v].row(alphabet)
            );
        }
        out
    }
}

pub trait LegendRow {
    fn header() -> &'static str;
    fn row(&self, alphabet: &Alphabet) -> String;
}

struct Builder<K> {
    index: HashMap<K, Node>,
    nodes: Vec<K>,
    owner: Vec<Player>,
    priority: Vec<u8>,
    succ: Vec<Vec<Node>>,
    queue: VecDeque<Node>,
}

impl<K: Clone + Eq + Hash> Builder<K> {
    fn new() -> Self {
        Builder {
            index: HashMap::new(),
            nodes: Vec::new(),
            owner: Vec::new(),
            priority: Vec::new(),
            succ: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn intern(&mut self, key: K, owner: Player, priority: u8) -> Node {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(key.clone(), i);
        self.nodes.push(key);
        self.owner.push(owner);
        self.priority.push(priority);
        self.succ.push(Vec::new());
        self.queue.push_back(i);
        i
    }

    fn finish(self, initial: Node) -> Result<Arena<K>> {
        let game = ParityGame::new(self.owner, self.priority, self.succ)?;
        Ok(Arena {
            game,
            nodes: self.nodes,
            initial,
        })
    }
}

// ---------------------------------------------------------------------------
// fair simulation

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FairNode {
    /// Spoiler to move from `q`, Duplicator sits in `p`.
    Spoiler { q: State, p: State },
    /// Spoiler moved to `q` reading `letter`; Duplicator must answer.
    Duplicator { q: State, p: State, letter: Letter },
    /// Spoiler cannot move: Duplicator wins.
    SpoilerStuck,
    /// Duplicator cannot answer: Spoiler wins.
    DuplicatorStuck,
}

impl LegendRow for FairNode {
    fn header() -> &'static str {
        "node\tphase\tq\tletter\tp"
    }

    fn row(&self, al: &Alphabet) -> String {
        match self {
            FairNode::Spoiler { q, p } => format!("spoiler\t{q}\t-\t{p}"),
            FairNode::Duplicator { q, p, letter } => {
                format!("duplicator\t{q}\t{}\t{p}", al.name(*letter))
            }
            FairNode::SpoilerStuck => "sink-even\t-\t-\t-".into(),
            FairNode::DuplicatorStuck => "sink-odd\t-\t-\t-".into(),
        }
    }
}

/// Fair simulation game: Spoiler (Odd) picks a transition of `left`,
/// Duplicator (Even) answers with an equally labelled transition of `right`.
/// Spoiler nodes get priority 0 when Duplicator's state is accepting, else 1
/// when Spoiler's state is accepting, else 2.
pub fn build_fair_sim_game(left: &BuchiAutomaton, right: &BuchiAutomaton) -> Result<Arena<FairNode>> {
    left.check_same_alphabet(right)?;
    let mut b = Builder::new();
    let spoiler_prio = |q: State, p: State| -> u8 {
        if right.is_accepting(p) {
            0
        } else if left.is_accepting(q) {
            1
        } else {
            2
        }
    };
    let init = FairNode::Spoiler {
        q: left.initial(),
        p: right.initial(),
    };
    let initial = b.intern(init, Player::Odd, spoiler_prio(left.initial(), right.initial()));
    let even_sink = b.intern(FairNode::SpoilerStuck, Player::Even, 0);
    let odd_sink = b.intern(FairNode::DuplicatorStuck, Player::Odd, 1);
    while let Some(v) = b.queue.pop_front() {
        let succ: Vec<Node> = match b.nodes[v].clone() {
            FairNode::Spoiler { q, p } => {
                let moves = left.successors(q);
                if moves.is_empty() {
                    vec![even_sink]
                } else {
                    moves
                        .iter()
                        .map(|&(letter, q2)| {
                            b.intern(FairNode::Duplicator { q: q2, p, letter }, Player::Even, 2)
                        })
                        .collect()
                }
            }
            FairNode::Duplicator { q, p, letter } => {
                let answers: Vec<State> = right.post(p, letter).collect();
                if answers.is_empty() {
                    vec![odd_sink]
                } else {
                    answers
                        .into_iter()
                        .map(|p2| {
                            b.intern(FairNode::Spoiler { q, p: p2 }, Player::Odd, spoiler_prio(q, p2))
                        })
                        .collect()
                }
            }
            FairNode::SpoilerStuck => vec![even_sink],
            FairNode::DuplicatorStuck => vec![odd_sink],
        };
        b.succ[v] = succ;
    }
    b.finish(initial)
}

// ---------------------------------------------------------------------------
// two-buffer game

/// Contents of the two buffers, newest letter first: Spoiler prepends,
/// Duplicator removes the last (oldest) letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BufferConfig {
    pub beta: [Vec<Letter>; 2],
}

impl BufferConfig {
    pub fn get(&self, j: BufferId) -> &[Letter] {
        &self.beta[j.index()]
    }

    pub fn push(&mut self, j: BufferId, a: Letter) {
        self.beta[j.index()].insert(0, a);
    }

    pub fn oldest(&self, j: BufferId) -> Option<Letter> {
        self.beta[j.index()].last().copied()
    }

    pub fn pop_oldest(&mut self, j: BufferId) -> Option<Letter> {
        self.beta[j.index()].pop()
    }

    fn render(&self, al: &Alphabet, j: usize) -> String {
        if self.beta[j].is_empty() {
            "ε".into()
        } else {
            self.beta[j].iter().map(|&l| al.name(l)).collect::<Vec<_>>().join(",")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    SpoilerMove,
    DuplicatorMove,
}

/// Position of the two-buffer game.
///
/// `round_robin` is the next awaited event among {Duplicator accepting,
/// buffer 1 live, buffer 2 live}. At Spoiler nodes `mark` is the priority
/// earned by the round that just ended; at Duplicator nodes `consumed` and
/// `touched_accepting` accumulate over the current turn.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArenaNode {
    Play {
        phase: Phase,
        q: State,
        buffers: BufferConfig,
        p: State,
        round_robin: u8,
        consumed: [bool; 2],
        touched_accepting: bool,
        mark: u8,
    },
    /// Spoiler has no move.
    SpoilerStuck,
    /// A buffer exceeded its capacity at the end of Duplicator's turn.
    Overflow,
}

impl ArenaNode {
    pub fn consumed_any(&self) -> bool {
        matches!(self, ArenaNode::Play { consumed, .. } if consumed[0] || consumed[1])
    }

    pub fn phase(&self) -> Option<Phase> {
        match self {
            ArenaNode::Play { phase, .. } => Some(*phase),
            _ => None,
        }
    }
}

impl LegendRow for ArenaNode {
    fn header() -> &'static str {
        "node\tphase\tq\tbeta1\tbeta2\tp\tr\tconsumed1\tconsumed2\ttouched\tmark"
    }

    fn row(&self, al: &Alphabet) -> String {
        match self {
            ArenaNode::Play {
                phase,
                q,
                buffers,
                p,
                round_robin,
                consumed,
                touched_accepting,
                mark,
            } => {
                let ph = match phase {
                    Phase::SpoilerMove => "spoiler",
                    Phase::DuplicatorMove => "duplicator",
                };
                format!(
                    "{ph}\t{q}\t{}\t{}\t{p}\t{round_robin}\t{}\t{}\t{}\t{mark}",
                    buffers.render(al, 0),
                    buffers.render(al, 1),
                    consumed[0] as u8,
                    consumed[1] as u8,
                    *touched_accepting as u8,
                )
            }
            ArenaNode::SpoilerStuck => "sink-even\t-\t-\t-\t-\t-\t-\t-\t-\t-".into(),
            ArenaNode::Overflow => "sink-odd\t-\t-\t-\t-\t-\t-\t-\t-\t-".into(),
        }
    }
}

impl Arena<ArenaNode> {
    /// Largest number of consumes Duplicator makes in one turn when she
    /// follows her strategy, over all plays consistent with it. Zero when
    /// she does not win.
    pub fn max_consumes_per_turn(&self, regions: &WinningRegions) -> usize {
        if !self.duplicator_wins(regions) {
            return 0;
        }
        let strat = regions.strategy(Player::Even);
        let turn_start =
            |v: Node| self.nodes[v].phase() == Some(Phase::DuplicatorMove) && !self.nodes[v].consumed_any();
        let mut best = 0;
        for v in self.strategy_reachable(regions).into_iter().filter(|&v| turn_start(v)) {
            let mut cur = v;
            let mut count = 0;
            while let Some(next) = strat[cur] {
                if self.nodes[next].phase() != Some(Phase::DuplicatorMove) {
                    break;
                }
                count += 1;
                cur = next;
            }
            best = best.max(count);
        }
        best
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ArenaOptions {
    /// Allow Duplicator at most one consume per turn.
    pub single_consume: bool,
}

/// Advances the round-robin counter past every satisfied event, stopping
/// after one full wrap. Returns the new counter and whether it wrapped.
pub(crate) fn advance_round_robin(r: u8, events: &[bool]) -> (u8, bool) {
    let m = events.len() as u8;
    let mut r = r;
    for _ in 0..m {
        if !events[r as usize] {
            return (r, false);
        }
        r = (r + 1) % m;
        if r == 0 {
            return (0, true);
        }
    }
    (r, false)
}

/// Direct two-buffer arena with the round-robin liveness gadget.
pub fn build_direct_arena(
    left: &BuchiAutomaton,
    right: &BuchiAutomaton,
    sigma: &SigmaMap,
    caps: Capacities,
    opts: ArenaOptions,
) -> Result<Arena<ArenaNode>> {
    super::check_inputs(left, right, sigma)?;
    let caps_arr = [caps.k1, caps.k2];
    let mut b = Builder::new();
    let init = ArenaNode::Play {
        phase: Phase::SpoilerMove,
        q: left.initial(),
        buffers: BufferConfig::default(),
        p: right.initial(),
        round_robin: 0,
        consumed: [false; 2],
        touched_accepting: false,
        mark: 2,
    };
    let initial = b.intern(init, Player::Odd, 2);
    let even_sink = b.intern(ArenaNode::SpoilerStuck, Player::Even, 0);
    let odd_sink = b.intern(ArenaNode::Overflow, Player::Odd, 1);

    while let Some(v) = b.queue.pop_front() {
        let node = b.nodes[v].clone();
        let ArenaNode::Play {
            phase,
            q,
            buffers,
            p,
            round_robin,
            consumed,
            touched_accepting,
            ..
        } = node
        else {
            b.succ[v] = vec![v];
            continue;
        };
        let mut succ = Vec::new();
        match phase {
            Phase::SpoilerMove => {
                for &(a, q2) in left.successors(q) {
                    let mut buf = buffers.clone();
                    buf.push(sigma.buffer(a), a);
                    let next = ArenaNode::Play {
                        phase: Phase::DuplicatorMove,
                        q: q2,
                        buffers: buf,
                        p,
                        round_robin,
                        consumed: [false; 2],
                        touched_accepting: false,
                        mark: 2,
                    };
                    succ.push(b.intern(next, Player::Even, 2));
                }
                if succ.is_empty() {
                    succ.push(even_sink);
                }
            }
            Phase::DuplicatorMove => {
                let may_consume = !opts.single_consume || !(consumed[0] || consumed[1]);
                for j in [BufferId::One, BufferId::Two] {
                    let Some(oldest) = buffers.oldest(j).filter(|_| may_consume) else {
                        continue;
                    };
                    for p2 in right.post(p, oldest) {
                        let mut buf = buffers.clone();
                        buf.pop_oldest(j);
                        let mut c = consumed;
                        c[j.index()] = true;
                        let next = ArenaNode::Play {
                            phase: Phase::DuplicatorMove,
                            q,
                            buffers: buf,
                            p: p2,
                            round_robin,
                            consumed: c,
                            touched_accepting: touched_accepting || right.is_accepting(p2),
                            mark: 2,
                        };
                        succ.push(b.intern(next, Player::Even, 2));
                    }
                }
                // end of turn
                let overflow = (0..2).any(|j| buffers.beta[j].len() > caps_arr[j]);
                if overflow {
                    succ.push(odd_sink);
                } else {
                    let events = [
                        touched_accepting,
                        consumed[0] || buffers.beta[0].is_empty(),
                        consumed[1] || buffers.beta[1].is_empty(),
                    ];
                    let (r2, wrapped) = advance_round_robin(round_robin, &events);
                    let mark = if wrapped {
                        0
                    } else if left.is_accepting(q) {
                        1
                    } else {
                        2
                    };
                    let next = ArenaNode::Play {
                        phase: Phase::SpoilerMove,
                        q,
                        buffers,
                        p,
                        round_robin: r2,
                        consumed: [false; 2],
                        touched_accepting: false,
                        mark,
                    };
                    succ.push(b.intern(next, Player::Odd, mark));
                }
            }
        }
        b.succ[v] = succ;
    }
    let arena = b.finish(initial)?;
    debug_assert!(arena.game.num_nodes() as f64 <= direct_arena_bound(left, right, sigma, caps));
    Ok(arena)
}

/// Coarse upper bound on the number of arena nodes.
pub fn direct_arena_bound(
    left: &BuchiAutomaton,
    right: &BuchiAutomaton,
    sigma: &SigmaMap,
    caps: Capacities,
) -> f64 {
    // words of length at most k + 1: one letter over capacity mid-turn
    let words = |j: BufferId, k: usize| -> f64 {
        let s = sigma.preimage(j).len() as f64;
        (0..=k as i32 + 1).map(|i| s.powi(i)).sum()
    };
    2.0 * left.num_states() as f64
        * right.num_states() as f64
        * words(BufferId::One, caps.k1)
        * words(BufferId::Two, caps.k2)
        * 3.0
        * 4.0
        * 2.0
        * 3.0
        + 2.0
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::SpoilerMove => f.write_str("spoiler"),
            Phase::DuplicatorMove => f.write_str("duplicator"),
        }
    }
}
