//! Buffer elimination: fold one bounded buffer into Duplicator's automaton so
//! that the buffer can be played with capacity 0.
//!
//! A state of the result is `(p, w, tag)` where `w ∈ Δ^{≤k}` holds the letters
//! of the eliminated buffer that Duplicator has not consumed yet (newest
//! first) and `Δ` is the set of letters routed to that buffer. One transition
//! of the result on letter `x` is a whole burst of moves of the original
//! automaton:
//!
//! * `x ∈ Δ`: push `x` onto `w`, then consume any number of the oldest stored
//!   letters so that at most `k` remain;
//! * `x ∉ Δ`: consume some oldest stored letters, read `x`, consume some more.
//!
//! The tag folds the Büchi condition and the liveness of the eliminated
//! buffer into a single acceptance bit. `Pending` means an accepting state
//! was entered since the last acceptance; it is discharged into `Accept` by a
//! step on a letter of `Δ` (infinitely many of those force every stored
//! letter out) or by a step that leaves the store empty.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automaton::{BufferId, BuchiAutomaton, Letter, SigmaMap, State};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StoreTag {
    Idle,
    Pending,
    Accept,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedState {
    pub state: State,
    pub store: Vec<Letter>,
    pub tag: StoreTag,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub automaton: BuchiAutomaton,
    pub states: Vec<ReducedState>,
    pub buffer: BufferId,
    pub capacity: usize,
}

/// `2n(|Σ|^{k+1} − 1)`, saturating.
pub fn reduction_size_bound(n: usize, alphabet: usize, k: usize) -> u128 {
    let pow = (alphabet as u128).checked_pow(k as u32 + 1).unwrap_or(u128::MAX);
    (2 * n as u128).saturating_mul(pow.saturating_sub(1))
}

/// Every `(state, entered-accepting)` reachable by consuming `letters` in
/// order. Each entry of the returned vector is the frontier after that many
/// consumes (index 0 is the start).
fn drain_levels(
    aut: &BuchiAutomaton,
    start: State,
    seen_acc: bool,
    letters: impl Iterator<Item = Letter>,
) -> Vec<BTreeSet<(State, bool)>> {
    let mut levels = vec![BTreeSet::from([(start, seen_acc)])];
    for l in letters {
        let last = levels.last().expect("non-empty");
        let next: BTreeSet<(State, bool)> = last
            .iter()
            .flat_map(|&(s, acc)| aut.post(s, l).map(move |t| (t, acc || aut.is_accepting(t))))
            .collect();
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
}

fn reduce_buffer(
    aut: &BuchiAutomaton,
    sigma: &SigmaMap,
    buffer: BufferId,
    k: usize,
) -> Result<Reduction> {
    if k == 0 {
        return Err(Error::ZeroCapacityReduction);
    }
    if sigma.len() != aut.alphabet().len() {
        return Err(Error::Invalid("sigma does not match alphabet".into()));
    }
    let stored = |l: Letter| sigma.buffer(l) == buffer;

    let mut index: HashMap<ReducedState, State> = HashMap::new();
    let mut states: Vec<ReducedState> = Vec::new();
    let mut queue: VecDeque<State> = VecDeque::new();
    let mut trans: Vec<(State, Letter, State)> = Vec::new();

    let mut intern = |rs: ReducedState, states: &mut Vec<ReducedState>, queue: &mut VecDeque<State>| {
        if let Some(&i) = index.get(&rs) {
            return i;
        }
        let i = states.len();
        index.insert(rs.clone(), i);
        states.push(rs);
        queue.push_back(i);
        i
    };

    let p0 = aut.initial();
    let tag0 = if aut.is_accepting(p0) {
        StoreTag::Accept
    } else {
        StoreTag::Idle
    };
    intern(
        ReducedState {
            state: p0,
            store: Vec::new(),
            tag: tag0,
        },
        &mut states,
        &mut queue,
    );

    while let Some(i) = queue.pop_front() {
        let ReducedState { state, store, tag } = states[i].clone();
        for x in aut.alphabet().letters() {
            // (target, remaining store, entered accepting)
            let mut outcomes: BTreeSet<(State, Vec<Letter>, bool)> = BTreeSet::new();
            let delta_step = stored(x);
            if delta_step {
                let mut buf = Vec::with_capacity(store.len() + 1);
                buf.push(x);
                buf.extend_from_slice(&store);
                let levels = drain_levels(aut, state, false, buf.iter().rev().copied());
                for (c, level) in levels.iter().enumerate() {
                    let rest = buf.len() - c;
                    if rest > k {
                        continue;
                    }
                    for &(t, acc) in level {
                        outcomes.insert((t, buf[..rest].to_vec(), acc));
                    }
                }
            } else {
                let before = drain_levels(aut, state, false, store.iter().rev().copied());
                for (i_drained, level) in before.iter().enumerate() {
                    let remaining = &store[..store.len() - i_drained];
                    for &(s1, acc1) in level {
                        for s2 in aut.post(s1, x) {
                            let acc2 = acc1 || aut.is_accepting(s2);
                            let after = drain_levels(aut, s2, acc2, remaining.iter().rev().copied());
                            for (j, lvl) in after.iter().enumerate() {
                                let rest = &remaining[..remaining.len() - j];
                                for &(t, acc) in lvl {
                                    outcomes.insert((t, rest.to_vec(), acc));
                                }
                            }
                        }
                    }
                }
            }
            for (t, rest, acc) in outcomes {
                let pending = tag == StoreTag::Pending || acc;
                let tag2 = if pending && (delta_step || rest.is_empty()) {
                    StoreTag::Accept
                } else if pending {
                    StoreTag::Pending
                } else {
                    StoreTag::Idle
                };
                let j = intern(
                    ReducedState {
                        state: t,
                        store: rest,
                        tag: tag2,
                    },
                    &mut states,
                    &mut queue,
                );
                trans.push((i, x, j));
            }
        }
    }

    let accepting: Vec<State> = states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.tag == StoreTag::Accept)
        .map(|(i, _)| i)
        .collect();
    let name = format!("{}_r{}k{}", aut.name(), buffer.number(), k);
    let automaton = BuchiAutomaton::new(
        name,
        aut.alphabet().clone(),
        states.len(),
        0,
        accepting,
        trans,
    )?
    .with_sigma(sigma.clone())?;

    if aut.alphabet().len() >= 2 {
        let bound = reduction_size_bound(aut.num_states(), aut.alphabet().len(), k);
        assert!(
            states.len() as u128 <= bound,
            "reduced automaton has {} states, bound is {bound}",
            states.len()
        );
    }
    Ok(Reduction {
        automaton,
        states,
        buffer,
        capacity: k,
    })
}

/// Eliminates buffer 2 (capacity `k2 ≥ 1`).
pub fn reduce_buffer2(aut: &BuchiAutomaton, sigma: &SigmaMap, k2: usize) -> Result<Reduction> {
    reduce_buffer(aut, sigma, BufferId::Two, k2)
}

/// Eliminates buffer 1 (capacity `k1 ≥ 1`).
pub fn reduce_buffer1(aut: &BuchiAutomaton, sigma: &SigmaMap, k1: usize) -> Result<Reduction> {
    reduce_buffer(aut, sigma, BufferId::One, k1)
}
