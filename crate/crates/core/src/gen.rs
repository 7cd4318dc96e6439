//! Instance generators: the capacity-hierarchy witness family, the automata
//! encoding a Post correspondence instance, and seeded random inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Alphabet, AutomatonBuilder, BufferId, BuchiAutomaton, Letter, SigmaMap, State};
use crate::error::{Error, Result};
use crate::parity::{ParityGame, Player};
use crate::transducer::{Transducer, TransducerEdge};

/// Pair of automata with the buffer assignment they are meant to be played with.
#[derive(Debug, Clone)]
pub struct Instance {
    pub left: BuchiAutomaton,
    pub right: BuchiAutomaton,
    pub sigma: SigmaMap,
}

/// Witness family separating capacity `k1` from `k1 + 1` on buffer 1.
///
/// Over `{a, b}` with `a` on buffer 1 and `b` on buffer 2: the left cycle
/// reads `k1 + 1` copies of `a` and then `b`, the right cycle reads `b` first
/// and then `k1 + 1` copies of `a`. Both initial states are accepting.
pub fn gen_hierarchy_family(k1: usize) -> Instance {
    let alphabet = Alphabet::new(["a", "b"]).expect("static alphabet");
    let a = alphabet.letter("a").expect("a");
    let b = alphabet.letter("b").expect("b");
    let sigma = SigmaMap::from_pairs(&alphabet, [("a", BufferId::One), ("b", BufferId::Two)])
        .expect("total");
    let len = k1 + 1;

    let mut left = AutomatonBuilder::new();
    let q0 = left.add_state(true);
    let mut prev = q0;
    for _ in 0..len {
        let q = left.add_state(false);
        left.add_transition(prev, a, q);
        prev = q;
    }
    left.add_transition(prev, b, q0);

    let mut right = AutomatonBuilder::new();
    let p0 = right.add_state(true);
    let mut prev = right.add_state(false);
    right.add_transition(p0, b, prev);
    for i in 0..len {
        let p = if i + 1 == len { p0 } else { right.add_state(false) };
        right.add_transition(prev, a, p);
        prev = p;
    }

    let build = |bld: AutomatonBuilder, name: String| {
        bld.build(name, alphabet.clone(), 0)
            .and_then(|x| x.with_sigma(sigma.clone()))
            .expect("generated automaton is valid")
    };
    Instance {
        left: build(left, format!("hier{k1}_left")),
        right: build(right, format!("hier{k1}_right")),
        sigma: sigma.clone(),
    }
}

/// Post correspondence instance: non-empty list of pairs of non-empty words
/// over `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcpInstance {
    pairs: Vec<(String, String)>,
}

impl PcpInstance {
    pub fn new(pairs: Vec<(String, String)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Invalid("PCP instance needs at least one pair".into()));
        }
        for (u, v) in &pairs {
            for w in [u, v] {
                if w.is_empty() || !w.bytes().all(|c| c == b'0' || c == b'1') {
                    return Err(Error::Invalid(format!(
                        "PCP words must be non-empty over {{0,1}}, found {w:?}"
                    )));
                }
            }
        }
        Ok(PcpInstance { pairs })
    }

    /// Parses `u:v,u:v,...`.
    pub fn parse(s: &str) -> Result<Self> {
        let pairs = s
            .split(',')
            .map(|p| {
                let (u, v) = p
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| Error::Invalid(format!("expected u:v, found {p:?}")))?;
                Ok((u.to_string(), v.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }
}

/// Letter names of the PCP alphabet: `$` is the end marker and a trailing
/// `'` marks the barred copy read on buffer 2.
pub const PCP_LETTERS: [&str; 6] = ["0", "1", "$", "0'", "1'", "$'"];

pub fn pcp_alphabet() -> (Alphabet, SigmaMap) {
    let alphabet = Alphabet::new(PCP_LETTERS).expect("static alphabet");
    let sigma = SigmaMap::from_pairs(
        &alphabet,
        PCP_LETTERS.iter().map(|&n| {
            let buf = if n.ends_with('\'') {
                BufferId::Two
            } else {
                BufferId::One
            };
            (n, buf)
        }),
    )
    .expect("total");
    (alphabet, sigma)
}

/// Automata whose two-buffer game with unbounded buffers is won by Spoiler
/// iff the instance has a solution.
///
/// Left automaton: from the initial state read `u_i` then the barred `v_i`
/// into a hub; from the hub either start another pair or read `$ $'` into an
/// accepting state looping on `$ $'`. Multi-letter edges become chains of
/// fresh non-accepting states.
///
/// Right automaton, transcribed edge by edge:
///
/// ```text
/// s0 -0-> z  -0'-> s0        balanced pairs
/// s0 -1-> o  -1'-> s0
/// s0 -0-> z' -1',$'-> acc    unbalanced pair starting with 0
/// s0 -1-> o' -0',$'-> acc    unbalanced pair starting with 1
/// s0 -$-> e  -0',1'-> acc    unbalanced pair starting with $
/// acc -Σ-> acc
/// ```
pub fn gen_pcp_automata(instance: &PcpInstance) -> Instance {
    let (alphabet, sigma) = pcp_alphabet();
    let l = |n: &str| alphabet.letter(n).expect("pcp letter");
    let plain = |w: &str| -> Vec<Letter> { w.chars().map(|c| l(&c.to_string())).collect() };
    let barred = |w: &str| -> Vec<Letter> { w.chars().map(|c| l(&format!("{c}'"))).collect() };
    let marker = [l("$"), l("$'")];

    let mut left = AutomatonBuilder::new();
    let start = left.add_state(false);
    let hub = left.add_state(false);
    let accept = left.add_state(true);
    for (u, v) in instance.pairs() {
        let mid = left.add_state(false);
        left.add_word(start, &plain(u), mid);
        left.add_word(hub, &plain(u), mid);
        left.add_word(mid, &barred(v), hub);
    }
    left.add_word(hub, &marker, accept);
    left.add_word(accept, &marker, accept);

    let mut right = AutomatonBuilder::new();
    let s0 = right.add_state(false);
    let z = right.add_state(false);
    let o = right.add_state(false);
    let z_bad = right.add_state(false);
    let o_bad = right.add_state(false);
    let e_bad = right.add_state(false);
    let acc = right.add_state(true);
    right.add_transition(s0, l("0"), z);
    right.add_transition(z, l("0'"), s0);
    right.add_transition(s0, l("1"), o);
    right.add_transition(o, l("1'"), s0);
    right.add_transition(s0, l("0"), z_bad);
    right.add_transition(z_bad, l("1'"), acc);
    right.add_transition(z_bad, l("$'"), acc);
    right.add_transition(s0, l("1"), o_bad);
    right.add_transition(o_bad, l("0'"), acc);
    right.add_transition(o_bad, l("$'"), acc);
    right.add_transition(s0, l("$"), e_bad);
    right.add_transition(e_bad, l("0'"), acc);
    right.add_transition(e_bad, l("1'"), acc);
    for x in alphabet.letters() {
        right.add_transition(acc, x, acc);
    }

    let finish = |b: AutomatonBuilder, name: &str, init: usize| {
        b.build(name, alphabet.clone(), init)
            .and_then(|x| x.with_sigma(sigma.clone()))
            .expect("generated automaton is valid")
    };
    Instance {
        left: finish(left, "pcp_left", start),
        right: finish(right, "pcp_right", s0),
        sigma: sigma.clone(),
    }
}

/// Alphabet `a, b, c, ...` of the given size.
pub fn letters(size: usize) -> Alphabet {
    assert!((1..=26).contains(&size));
    Alphabet::new((0..size).map(|i| ((b'a' + i as u8) as char).to_string())).expect("valid")
}

/// Seeded random automaton. Each triple `(q, a, q')` is a transition with
/// probability `density`, each state is accepting with probability
/// `accept_prob`; a state left without transitions gets a self-loop on the
/// first letter.
pub fn random_automaton(
    seed: u64,
    n_states: usize,
    alphabet: &Alphabet,
    density: f64,
    accept_prob: f64,
) -> Result<BuchiAutomaton> {
    if n_states == 0 {
        return Err(Error::Invalid("n_states must be at least 1".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::Invalid(format!("density {density} outside (0, 1]")));
    }
    if alphabet.is_empty() {
        return Err(Error::Invalid("alphabet must be non-empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = AutomatonBuilder::new();
    for _ in 0..n_states {
        b.add_state(rng.gen::<f64>() < accept_prob);
    }
    for q in 0..n_states {
        let mut any = false;
        for a in alphabet.letters() {
            for t in 0..n_states {
                if rng.gen::<f64>() < density {
                    b.add_transition(q, a, t);
                    any = true;
                }
            }
        }
        if !any {
            b.add_transition(q, Letter(0), q);
        }
    }
    b.build(format!("rand{seed}"), alphabet.clone(), 0)
}

/// Seeded random buffer assignment.
pub fn random_sigma(seed: u64, alphabet: &Alphabet) -> SigmaMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5157_6d61);
    let assignment = alphabet
        .letters()
        .map(|_| {
            if rng.gen::<bool>() {
                BufferId::One
            } else {
                BufferId::Two
            }
        })
        .collect();
    SigmaMap::new(alphabet, assignment).expect("sized to alphabet")
}

/// Seeded random transducer over `in_letters` / `out_letters`. Each edge
/// carries an input and an output word of length at most 2, never both
/// empty; a state left without edges gets a self-loop reading the first
/// input letter.
pub fn random_transducer(
    seed: u64,
    n_states: usize,
    input: &Alphabet,
    output: &Alphabet,
    edges_per_state: usize,
    accept_prob: f64,
) -> Result<Transducer> {
    if n_states == 0 || input.is_empty() || output.is_empty() {
        return Err(Error::Invalid("transducer needs states and both alphabets".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let accepting: Vec<State> = (0..n_states).filter(|_| rng.gen::<f64>() < accept_prob).collect();
    let mut edges = Vec::new();
    for src in 0..n_states {
        let count = rng.gen_range(0..=edges_per_state);
        for _ in 0..count {
            let word = |rng: &mut ChaCha8Rng, al: &Alphabet| -> Vec<Letter> {
                let len = rng.gen_range(0..=2);
                (0..len).map(|_| Letter(rng.gen_range(0..al.len()) as u16)).collect()
            };
            let mut u = word(&mut rng, input);
            let v = word(&mut rng, output);
            if u.is_empty() && v.is_empty() {
                u.push(Letter(0));
            }
            edges.push(TransducerEdge {
                src,
                input: u,
                output: v,
                dst: rng.gen_range(0..n_states),
            });
        }
        if count == 0 {
            edges.push(TransducerEdge {
                src,
                input: vec![Letter(0)],
                output: vec![],
                dst: src,
            });
        }
    }
    Transducer::new(
        format!("rt{seed}"),
        input.clone(),
        output.clone(),
        n_states,
        0,
        accepting,
        edges,
    )
}

/// Seeded random index-3 game: random owners, priorities in `{0,1,2}` and
/// between 1 and `max_out` distinct successors per node.
pub fn random_parity_game(seed: u64, n: usize, max_out: usize) -> ParityGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut owner = Vec::with_capacity(n);
    let mut priority = Vec::with_capacity(n);
    let mut succ = Vec::with_capacity(n);
    for _ in 0..n {
        owner.push(if rng.gen::<bool>() { Player::Even } else { Player::Odd });
        priority.push(rng.gen_range(0..3u8));
        let k = rng.gen_range(1..=max_out.max(1));
        succ.push((0..k).map(|_| rng.gen_range(0..n)).collect());
    }
    ParityGame::new(owner, priority, succ).expect("every node has a successor")
}
