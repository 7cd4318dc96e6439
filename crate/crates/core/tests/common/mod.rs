#![allow(dead_code)]

use bufsim::gen::{letters, random_automaton, random_sigma};
use bufsim::{BuchiAutomaton, Capacities, SigmaMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Case {
    pub seed: u64,
    pub left: BuchiAutomaton,
    pub right: BuchiAutomaton,
    pub sigma: SigmaMap,
    pub caps: Capacities,
}

/// Random instance at desk scale: at most 4 states per side, at most 3
/// letters, capacities in {0,1,2}.
pub fn case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let alphabet = letters(rng.gen_range(1..=3));
    let nl = rng.gen_range(1..=4);
    let nr = rng.gen_range(1..=4);
    let density = [0.25, 0.35, 0.5][rng.gen_range(0..3)];
    let left = random_automaton(2 * seed, nl, &alphabet, density, 0.5).unwrap();
    let right = random_automaton(2 * seed + 1, nr, &alphabet, density + 0.1, 0.5).unwrap();
    let sigma = random_sigma(seed, &alphabet);
    let caps = Capacities::new(rng.gen_range(0..=2), rng.gen_range(0..=2));
    Case {
        seed,
        left,
        right,
        sigma,
        caps,
    }
}

pub fn describe(c: &Case) -> String {
    let al = c.left.alphabet();
    let sigma: Vec<String> = al
        .letters()
        .map(|l| format!("{}={}", al.name(l), c.sigma.buffer(l).number()))
        .collect();
    format!(
        "seed {} {} sigma {}\n{}{}",
        c.seed,
        c.caps,
        sigma.join(" "),
        c.left,
        c.right
    )
}

pub const EX_LEFT: &str = "\
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

pub const EX_RIGHT: &str = "\
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

/// Duplicator must hold back until the fourth letter reveals the branch,
/// then catch up with several consumes in one turn.
pub const MULTI_LEFT: &str = "\
ba multi_left
alphabet a b
sigma a=1 b=2
states 6
initial 0
accepting 4 5
trans 0 a 1
trans 1 a 2
trans 2 b 3
trans 3 b 4
trans 3 b 5
trans 4 a 4
trans 5 b 5
";

pub const MULTI_RIGHT: &str = "\
ba multi_right
alphabet a b
sigma a=1 b=2
states 9
initial 0
accepting 4 8
trans 0 a 1
trans 1 b 2
trans 2 a 3
trans 3 b 4
trans 4 a 4
trans 0 a 5
trans 5 b 6
trans 6 a 7
trans 7 b 8
trans 8 b 8
";

pub const REL_LEFT: &str = "\
bt T
in a
out b c
states 4
initial 0
accepting 1 3
trans 0 a : 1
trans 1 : b 0
trans 1 : b 2
trans 2 a : 3
trans 3 : c 2
";

pub const REL_RIGHT: &str = "\
bt T'
in a
out b c
states 7
initial 0
accepting 3 5
trans 0 a : 1
trans 1 : b 0
trans 1 : b 2
trans 2 a : 3
trans 2 a : 5
trans 3 : b 4
trans 4 a : 3
trans 5 : c 6
trans 6 a : 5
";
