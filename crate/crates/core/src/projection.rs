//! Projection matching: whenever `A ⊑(k1,k2) B` holds, every word of `A`
//! has a partner in `L(B)` with the same buffer-1 and buffer-2 projections.
//! This module builds the automaton of all such partners and checks the
//! property on sampled lassos.

use crate::automaton::{Alphabet, BufferId, BuchiAutomaton, Lasso, Letter, SigmaMap};
use crate::error::Result;
use crate::omega::{buchi_intersection, degeneralize, is_empty, sample_accepting_lassos};
use crate::sim::{two_buffer_simulates, Capacities};

/// Deterministic reader of one projection `u · v^ω` (or the finite word `u`
/// when `v` is empty).
#[derive(Debug, Clone)]
struct Tape {
    word: Vec<Letter>,
    loop_start: usize,
    infinite: bool,
}

impl Tape {
    fn new(w: &Lasso, sigma: &SigmaMap, buffer: BufferId) -> Tape {
        let u = sigma.project(w.prefix(), buffer);
        let v = sigma.project(w.cycle(), buffer);
        let loop_start = u.len();
        let infinite = !v.is_empty();
        let mut word = u;
        word.extend(v);
        Tape {
            word,
            loop_start,
            infinite,
        }
    }

    /// Next position and whether the step closed a pass through the loop.
    fn step(&self, pos: usize, x: Letter) -> Option<(usize, bool)> {
        if self.word.get(pos) != Some(&x) {
            return None;
        }
        let next = pos + 1;
        Some(if self.infinite && next == self.word.len() {
            (self.loop_start, true)
        } else {
            (next, false)
        })
    }

    /// A pass through the loop was just closed, or the reader is parked at
    /// the end of a finite projection.
    fn good(&self, pos: usize, wrapped: bool) -> bool {
        if self.infinite {
            wrapped
        } else {
            pos == self.word.len()
        }
    }
}

/// Büchi automaton accepting exactly the words `w'` with
/// `π_1(w') = π_1(w)` and `π_2(w') = π_2(w)`.
pub fn projection_match_automaton(w: &Lasso, alphabet: &Alphabet, sigma: &SigmaMap) -> Result<BuchiAutomaton> {
    let tapes = [
        Tape::new(w, sigma, BufferId::One),
        Tape::new(w, sigma, BufferId::Two),
    ];
    let letters: Vec<Letter> = alphabet.letters().collect();
    let (aut, _) = degeneralize(
        "projection_match",
        alphabet.clone(),
        ([0usize, 0usize], [false, false]),
        |&(pos, _): &([usize; 2], [bool; 2])| {
            letters
                .iter()
                .filter_map(|&x| {
                    let i = sigma.buffer(x).index();
                    let (p, wrapped) = tapes[i].step(pos[i], x)?;
                    let mut next = pos;
                    next[i] = p;
                    let mut flags = [false, false];
                    flags[i] = wrapped;
                    Some((x, (next, flags)))
                })
                .collect()
        },
        2,
        |(pos, flags): &([usize; 2], [bool; 2])| {
            vec![tapes[0].good(pos[0], flags[0]), tapes[1].good(pos[1], flags[1])]
        },
    )?;
    Ok(aut)
}

/// Whether some word of `L(right)` has the same two projections as `w`.
pub fn has_projection_partner(right: &BuchiAutomaton, w: &Lasso, sigma: &SigmaMap) -> Result<bool> {
    let m = projection_match_automaton(w, right.alphabet(), sigma)?;
    Ok(!is_empty(&buchi_intersection(right, &m)?))
}

#[derive(Debug, Clone)]
pub struct LemmaSample {
    pub word: Lasso,
    pub matched: bool,
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub caps: Capacities,
    /// `None` when `A ⊑(k1,k2) B` fails and the property says nothing.
    pub samples: Option<Vec<LemmaSample>>,
}

impl LemmaReport {
    pub fn applicable(&self) -> bool {
        self.samples.is_some()
    }

    pub fn violations(&self) -> usize {
        self.samples
            .as_ref()
            .map_or(0, |s| s.iter().filter(|x| !x.matched).count())
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        match &self.samples {
            None => format!("not applicable: simulation fails at {}\n", self.caps),
            Some(samples) => {
                let mut out = format!("simulation holds at {}\n", self.caps);
                for s in samples {
                    let verdict = if s.matched { "matched" } else { "VIOLATION" };
                    out.push_str(&format!("{verdict} {}\n", s.word.render(alphabet)));
                }
                out.push_str(&format!("violations {}\n", self.violations()));
                out
            }
        }
    }
}

/// Decides `A ⊑(k1,k2) B` and, when it holds, looks for a projection partner
/// in `L(B)` for up to `samples` lassos of `L(A)`.
pub fn check_projection_lemma(
    left: &BuchiAutomaton,
    right: &BuchiAutomaton,
    sigma: &SigmaMap,
    caps: Capacities,
    samples: usize,
) -> Result<LemmaReport> {
    if !two_buffer_simulates(left, right, sigma, caps)? {
        return Ok(LemmaReport { caps, samples: None });
    }
    let checked = sample_accepting_lassos(left, samples)
        .into_iter()
        .map(|word| {
            let matched = has_projection_partner(right, &word, sigma)?;
            Ok(LemmaSample { word, matched })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LemmaReport {
        caps,
        samples: Some(checked),
    })
}
