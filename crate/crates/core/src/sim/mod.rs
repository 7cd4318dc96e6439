//! Fair simulation and bounded two-buffer simulation.
//!
//! Two independent routes decide `A ⊑(k1,k2) B`:
//!
//! * **reduced**: fold buffer 2 and then buffer 1 into `B`
//!   ([`reduce_buffer2`], [`reduce_buffer1`]) and solve the fair simulation
//!   game of `A` against the result;
//! * **direct**: build the two-buffer arena explicitly
//!   ([`build_direct_arena`]) and solve it.

mod arena;
mod reduce;

use std::fmt;
use std::str::FromStr;

pub use arena::{
    build_direct_arena, build_fair_sim_game, direct_arena_bound, Arena, ArenaNode, ArenaOptions,
    BufferConfig, FairNode, LegendRow, Phase,
};
pub use reduce::{reduce_buffer1, reduce_buffer2, reduction_size_bound, ReducedState, Reduction, StoreTag};

use crate::automaton::{BufferId, BuchiAutomaton, SigmaMap};
use crate::error::{Error, Result};

/// Pair of finite buffer capacities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Capacities {
    pub k1: usize,
    pub k2: usize,
}

impl Capacities {
    pub const fn new(k1: usize, k2: usize) -> Self {
        Capacities { k1, k2 }
    }

    /// Pointwise order.
    pub fn le(self, other: Capacities) -> bool {
        self.k1 <= other.k1 && self.k2 <= other.k2
    }

    /// Parses one capacity; `w`, `omega` and `ω` are rejected explicitly.
    pub fn parse_one(s: &str) -> Result<usize> {
        match s.trim() {
            "w" | "omega" | "ω" | "inf" => Err(Error::UnboundedCapacity),
            t => t
                .parse()
                .map_err(|_| Error::Invalid(format!("bad capacity {t:?}"))),
        }
    }
}

impl fmt::Display for Capacities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k1={} k2={}", self.k1, self.k2)
    }
}

/// Which decision route to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Reduced,
    Direct,
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reduced" => Ok(Method::Reduced),
            "direct" => Ok(Method::Direct),
            "both" => Ok(Method::Both),
            _ => Err(Error::Invalid(format!("unknown method {s:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Reduced => "reduced",
            Method::Direct => "direct",
            Method::Both => "both",
        })
    }
}

pub(crate) fn check_inputs(left: &BuchiAutomaton, right: &BuchiAutomaton, sigma: &SigmaMap) -> Result<()> {
    left.check_same_alphabet(right)?;
    if sigma.len() != left.alphabet().len() {
        return Err(Error::Invalid("sigma does not match alphabet".into()));
    }
    Ok(())
}

/// Ordinary fair simulation `A ⊑ B`.
pub fn fair_simulates(left: &BuchiAutomaton, right: &BuchiAutomaton) -> Result<bool> {
    let arena = build_fair_sim_game(left, right)?;
    Ok(arena.duplicator_wins(&arena.solve()))
}

/// Duplicator's automaton after eliminating every bounded buffer with
/// positive capacity: buffer 2 first, then buffer 1.
pub fn reduce_both(right: &BuchiAutomaton, sigma: &SigmaMap, caps: Capacities) -> Result<BuchiAutomaton> {
    let mut b = right.clone();
    if caps.k2 >= 1 {
        b = reduce_buffer2(&b, sigma, caps.k2)?.automaton;
    }
    if caps.k1 >= 1 {
        b = reduce_buffer1(&b, sigma, caps.k1)?.automaton;
    }
    Ok(b)
}

/// The fair simulation game that decides `A ⊑(k1,k2) B` after buffer
/// elimination, together with the reduced right-hand automaton.
pub fn reduced_arena(
    left: &BuchiAutomaton,
    right: &BuchiAutomaton,
    sigma: &SigmaMap,
    caps: Capacities,
) -> Result<(Arena<FairNode>, BuchiAutomaton)> {
    check_inputs(left, right, sigma)?;
    let reduced = reduce_both(right, sigma, caps)?;
    let arena = build_fair_sim_game(left, &reduced)?;
    Ok((arena, reduced))
}

pub fn two_buffer_simulates_reduced(
    left: &BuchiAutomaton,
    right: &BuchiAutomaton,
    sigma: &SigmaMap,
    caps: Capacities,
) -> Result<bool> {
    let (arena, _) = reduced_arena(left, right, sigma, caps)?;
    Ok(arena.duplicator_wins(&arena.solve()))
}

pub fn two_buffer_simulates_direct(
    left: &BuchiAutomaton,
    right: &BuchiAutomaton,
    sigma: &SigmaMap,
    caps: Capacities,
) -> Result<bool> {
    let arena = build_direct_arena(left, right, sigma, caps, ArenaOptions::default())?;
    Ok(arena.duplicator_wins(&arena.solve()))
}

/// `A ⊑(k1,k2) B` through the reduction route.
pub fn two_buffer_simulates(
    left: &BuchiAutomaton,
    right: &BuchiAutomaton,
    sigma: &SigmaMap,
    caps: Capacities,
) -> Result<bool> {
    two_buffer_simulates_reduced(left, right, sigma, caps)
}

/// Single-buffer simulation `A ⊑k B`: every letter goes to buffer 1.
pub fn single_buffer_simulates(left: &BuchiAutomaton, right: &BuchiAutomaton, k: usize) -> Result<bool> {
    left.check_same_alphabet(right)?;
    let sigma = SigmaMap::uniform(left.alphabet(), BufferId::One);
    two_buffer_simulates(left, right, &sigma, Capacities::new(k, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_ba;

    const LEFT: &str = "\
ba ex33_left
alphabet a b c d
sigma a=1 b=2 c=2 d=2
states 3
initial 0
accepting 2
trans 0 a 0
trans 0 b 1
trans 1 c 2
trans 1 d 2
trans 2 a 2
";

    const RIGHT: &str = "\
ba ex33_right
alphabet a b c d
sigma a=1 b=2 c=2 d=2
states 5
initial 0
accepting 3 4
trans 0 b 1
trans 0 b 2
trans 1 c 3
trans 2 d 4
trans 3 a 3
trans 4 a 4
";

    #[test]
    fn capacities_reject_omega() {
        assert_eq!(Capacities::parse_one("w"), Err(Error::UnboundedCapacity));
        assert_eq!(Capacities::parse_one("ω"), Err(Error::UnboundedCapacity));
        assert_eq!(Capacities::parse_one("3"), Ok(3));
        assert!(Capacities::new(1, 0).le(Capacities::new(1, 2)));
        assert!(!Capacities::new(3, 4).le(Capacities::new(5, 2)));
    }

    #[test]
    fn example_pair_fair() {
        let a = parse_ba(LEFT).unwrap();
        let b = parse_ba(RIGHT).unwrap();
        assert!(!fair_simulates(&a, &b).unwrap());
        assert!(fair_simulates(&b, &b).unwrap());
        assert!(fair_simulates(&a, &a).unwrap());
        let sigma = a.sigma().unwrap();
        assert!(!two_buffer_simulates_direct(&a, &b, sigma, Capacities::new(0, 0)).unwrap());
    }

    #[test]
    fn example_pair_bounded_caps() {
        let a = parse_ba(LEFT).unwrap();
        let b = parse_ba(RIGHT).unwrap();
        let sigma = a.sigma().unwrap();
        let caps = Capacities::new(2, 1);
        assert!(!two_buffer_simulates_reduced(&a, &b, sigma, caps).unwrap());
        assert!(!two_buffer_simulates_direct(&a, &b, sigma, caps).unwrap());
    }

    #[test]
    fn vacuous_when_left_never_accepts() {
        let a = parse_ba(LEFT).unwrap();
        let a = BuchiAutomaton::new(
            "noacc",
            a.alphabet().clone(),
            a.num_states(),
            a.initial(),
            [],
            a.transitions().collect::<Vec<_>>(),
        )
        .unwrap();
        // B answers every letter but never accepts
        let b = parse_ba(
            "ba u\nalphabet a b c d\nstates 1\ninitial 0\naccepting\n\
             trans 0 a 0\ntrans 0 b 0\ntrans 0 c 0\ntrans 0 d 0\n",
        )
        .unwrap();
        assert!(fair_simulates(&a, &b).unwrap());
        // a Duplicator that cannot answer still loses
        assert!(!fair_simulates(&a, &parse_ba(RIGHT).unwrap()).unwrap());
    }

    #[test]
    fn method_parsing() {
        assert_eq!("both".parse::<Method>().unwrap(), Method::Both);
        assert!("fast".parse::<Method>().is_err());
    }
}
