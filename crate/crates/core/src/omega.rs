//! ω-language primitives on Büchi automata: emptiness with lasso witnesses,
//! lasso membership, product intersection and deterministic lasso sampling.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automaton::{AutomatonBuilder, BuchiAutomaton, Lasso, Letter, State};
use crate::error::{Error, Result};

/// Round-robin degeneralization of a generalized Büchi condition over an
/// explicit successor function.
///
/// `conditions(s)` reports, per obligation, whether state `s` satisfies it.
/// Product states are `(s, r)` where `r` is the next awaited obligation; the
/// counter advances past every obligation satisfied at `s` in order, and a
/// product state is accepting when `r = 0` and `s` meets obligation 0. Only
/// states reachable from `(initial, 0)` are built.
pub fn degeneralize<S, F, C>(
    name: &str,
    alphabet: crate::automaton::Alphabet,
    initial: S,
    mut successors: F,
    obligations: usize,
    mut conditions: C,
) -> Result<(BuchiAutomaton, Vec<(S, usize)>)>
where
    S: Clone + Eq + std::hash::Hash,
    F: FnMut(&S) -> Vec<(Letter, S)>,
    C: FnMut(&S) -> Vec<bool>,
{
    assert!(obligations >= 1);
    let mut index: HashMap<(S, usize), State> = HashMap::new();
    let mut legend: Vec<(S, usize)> = Vec::new();
    let mut queue = VecDeque::new();
    let mut trans = Vec::new();
    let mut accepting = Vec::new();

    let mut intern = |key: (S, usize),
                      legend: &mut Vec<(S, usize)>,
                      queue: &mut VecDeque<State>|
     -> State {
        if let Some(&i) = index.get(&key) {
            return i;
        }
        let i = legend.len();
        index.insert(key.clone(), i);
        legend.push(key);
        queue.push_back(i);
        i
    };

    intern((initial, 0), &mut legend, &mut queue);
    while let Some(i) = queue.pop_front() {
        let (s, r) = legend[i].clone();
        let sat = conditions(&s);
        debug_assert_eq!(sat.len(), obligations);
        if r == 0 && sat[0] {
            accepting.push(i);
        }
        let mut next_r = r;
        for _ in 0..obligations {
            if sat[next_r] {
                next_r = (next_r + 1) % obligations;
                if next_r == 0 {
                    break;
                }
            } else {
                break;
            }
        }
        for (a, t) in successors(&s) {
            let j = intern((t, next_r), &mut legend, &mut queue);
            trans.push((i, a, j));
        }
    }
    let aut = BuchiAutomaton::new(name, alphabet, legend.len(), 0, accepting, trans)?;
    Ok((aut, legend))
}

/// Product automaton recognising `L(a) ∩ L(b)`.
pub fn buchi_intersection(a: &BuchiAutomaton, b: &BuchiAutomaton) -> Result<BuchiAutomaton> {
    a.check_same_alphabet(b)?;
    let name = format!("{}_x_{}", a.name(), b.name());
    let (aut, _) = degeneralize(
        &name,
        a.alphabet().clone(),
        (a.initial(), b.initial()),
        |&(p, q)| {
            let mut out = Vec::new();
            for &(l, p2) in a.successors(p) {
                for q2 in b.post(q, l) {
                    out.push((l, (p2, q2)));
                }
            }
            out
        },
        2,
        |&(p, q)| vec![a.is_accepting(p), b.is_accepting(q)],
    )?;
    Ok(aut)
}

/// BFS from `from` over the automaton graph; returns the shortest letter path
/// to the first state satisfying `goal`. When `require_step` is set the empty
/// path does not count.
fn bfs_path(
    aut: &BuchiAutomaton,
    from: State,
    require_step: bool,
    goal: impl Fn(State) -> bool,
) -> Option<(Vec<Letter>, State)> {
    if !require_step && goal(from) {
        return Some((Vec::new(), from));
    }
    let n = aut.num_states();
    let mut parent: Vec<Option<(State, Letter)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    // `from` is deliberately left unseen so a cycle back to it can be found
    queue.push_back(from);
    let mut first = true;
    while let Some(s) = queue.pop_front() {
        if !first && goal(s) {
            let mut word = Vec::new();
            let mut cur = s;
            while let Some((p, l)) = parent[cur] {
                word.push(l);
                if p == from {
                    break;
                }
                cur = p;
            }
            word.reverse();
            return Some((word, s));
        }
        first = false;
        for &(l, t) in aut.successors(s) {
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((s, l));
                queue.push_back(t);
            }
        }
    }
    None
}

/// Shortest non-empty cycle through `s`, as a letter word.
fn shortest_cycle(aut: &BuchiAutomaton, s: State) -> Option<Vec<Letter>> {
    bfs_path(aut, s, true, |t| t == s).map(|(w, _)| w)
}

/// Returns a lasso in `L(aut)` or `None` when the language is empty.
///
/// Scans reachable accepting states in index order and takes the first one
/// lying on a cycle; prefix and loop are BFS-shortest.
pub fn buchi_emptiness(aut: &BuchiAutomaton) -> Option<Lasso> {
    let reach = aut.reachable();
    for f in aut.accepting_states().filter(|&f| reach[f]) {
        if let Some(cycle) = shortest_cycle(aut, f) {
            let (prefix, _) = bfs_path(aut, aut.initial(), false, |t| t == f)
                .expect("reachable state has a path");
            return Some(Lasso::new(prefix, cycle).expect("cycle is non-empty"));
        }
    }
    None
}

pub fn is_empty(aut: &BuchiAutomaton) -> bool {
    buchi_emptiness(aut).is_none()
}

/// Deterministic automaton accepting exactly `prefix · loop^ω`: a chain of
/// `|prefix| + |loop|` states whose first loop state is the only accepting one.
pub fn lasso_automaton(
    alphabet: &crate::automaton::Alphabet,
    w: &Lasso,
) -> Result<BuchiAutomaton> {
    for &l in w.prefix().iter().chain(w.cycle()) {
        if !alphabet.contains(l) {
            return Err(Error::UndeclaredLetter(format!("#{}", l.0)));
        }
    }
    let u = w.prefix().len();
    let v = w.cycle().len();
    let mut b = AutomatonBuilder::new();
    for i in 0..u + v {
        b.add_state(i == u);
    }
    for (i, &l) in w.prefix().iter().enumerate() {
        b.add_transition(i, l, i + 1);
    }
    for (j, &l) in w.cycle().iter().enumerate() {
        let next = if j + 1 == v { u } else { u + j + 1 };
        b.add_transition(u + j, l, next);
    }
    b.build("lasso", alphabet.clone(), 0)
}

pub fn lasso_membership(aut: &BuchiAutomaton, w: &Lasso) -> Result<bool> {
    let la = lasso_automaton(aut.alphabet(), w)?;
    Ok(!is_empty(&buchi_intersection(aut, &la)?))
}

/// Up to `max_count` lassos of `L(aut)` denoting pairwise different words,
/// each in canonical form (see [`Lasso::canonical`]).
///
/// Prefixes are paths from the initial state enumerated breadth-first
/// (shortest first, transitions in sorted order); every prefix ending in an
/// accepting state on a cycle yields one lasso with the shortest such cycle
/// as loop. State-simple prefixes come first (at most `10 · max_count` of
/// them); if they yield too few words, prefixes revisiting states follow (at
/// most `50 · max_count`). If nothing is found while the language is
/// non-empty, the emptiness witness is returned, so the result is empty iff
/// `L(aut) = ∅`.
pub fn sample_accepting_lassos(aut: &BuchiAutomaton, max_count: usize) -> Vec<Lasso> {
    let mut out: Vec<Lasso> = Vec::new();
    if max_count == 0 {
        return out;
    }
    let mut seen: BTreeSet<Lasso> = BTreeSet::new();
    let mut cycles: HashMap<State, Option<Vec<Letter>>> = HashMap::new();
    for (state_simple, budget) in [(true, 10 * max_count), (false, 50 * max_count)] {
        let mut explored = 0usize;
        // (end state, word, visited states)
        let mut queue: VecDeque<(State, Vec<Letter>, Vec<State>)> = VecDeque::new();
        queue.push_back((aut.initial(), Vec::new(), vec![aut.initial()]));
        while let Some((s, word, path)) = queue.pop_front() {
            if explored >= budget || out.len() >= max_count {
                break;
            }
            explored += 1;
            if aut.is_accepting(s) {
                let cyc = cycles
                    .entry(s)
                    .or_insert_with(|| shortest_cycle(aut, s))
                    .clone();
                if let Some(cycle) = cyc {
                    let lasso = Lasso::new(word.clone(), cycle).expect("non-empty").canonical();
                    if seen.insert(lasso.clone()) {
                        out.push(lasso);
                    }
                }
            }
            for &(l, t) in aut.successors(s) {
                if !state_simple || !path.contains(&t) {
                    let mut w = word.clone();
                    w.push(l);
                    let mut p = path.clone();
                    p.push(t);
                    queue.push_back((t, w, p));
                }
            }
        }
        if out.len() >= max_count {
            break;
        }
    }
    if out.is_empty() {
        if let Some(w) = buchi_emptiness(aut) {
            out.push(w.canonical());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::format::parse_ba;

    fn single_loop() -> BuchiAutomaton {
        parse_ba("ba l\nalphabet a\nstates 1\ninitial 0\naccepting 0\ntrans 0 a 0\n").unwrap()
    }

    fn example_left() -> BuchiAutomaton {
        parse_ba(
            "ba l\nalphabet a b c d\nstates 3\ninitial 0\naccepting 2\n\
             trans 0 a 0\ntrans 0 b 1\ntrans 1 c 2\ntrans 1 d 2\ntrans 2 a 2\n",
        )
        .unwrap()
    }

    fn word(al: &Alphabet, s: &str) -> Vec<Letter> {
        s.split_whitespace().map(|n| al.letter(n).unwrap()).collect()
    }

    #[test]
    fn smallest_nonempty() {
        let w = buchi_emptiness(&single_loop()).unwrap();
        assert!(w.prefix().is_empty());
        assert_eq!(w.cycle(), &[Letter(0)]);
    }

    #[test]
    fn unreachable_accepting_state() {
        let a = parse_ba("ba u\nalphabet a\nstates 2\ninitial 0\naccepting 1\ntrans 0 a 0\ntrans 1 a 1\n")
            .unwrap();
        assert!(buchi_emptiness(&a).is_none());
    }

    #[test]
    fn accepting_state_off_cycle() {
        let a = parse_ba("ba u\nalphabet a\nstates 2\ninitial 0\naccepting 0\ntrans 0 a 1\ntrans 1 a 1\n")
            .unwrap();
        assert!(buchi_emptiness(&a).is_none());
    }

    #[test]
    fn membership_examples() {
        let a = example_left();
        let al = a.alphabet().clone();
        let w = Lasso::new(word(&al, "b c"), word(&al, "a")).unwrap();
        assert!(lasso_membership(&a, &w).unwrap());
        let w = Lasso::new(vec![], word(&al, "a")).unwrap();
        assert!(!lasso_membership(&a, &w).unwrap());

        let only_b =
            parse_ba("ba b\nalphabet a b\nstates 1\ninitial 0\naccepting 0\ntrans 0 b 0\n").unwrap();
        let wa = Lasso::new(vec![], vec![only_b.alphabet().letter("a").unwrap()]).unwrap();
        assert!(!lasso_membership(&only_b, &wa).unwrap());
    }

    #[test]
    fn foreign_letter_is_an_error() {
        let a = single_loop();
        let w = Lasso::new(vec![], vec![Letter(5)]).unwrap();
        assert!(lasso_membership(&a, &w).is_err());
    }

    #[test]
    fn witness_round_trip() {
        let a = example_left();
        let w = buchi_emptiness(&a).unwrap();
        assert!(lasso_membership(&a, &w).unwrap());
    }

    #[test]
    fn disjoint_lassos() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let ab = lasso_automaton(&al, &Lasso::new(vec![], word(&al, "a b")).unwrap()).unwrap();
        let ba = lasso_automaton(&al, &Lasso::new(vec![], word(&al, "b a")).unwrap()).unwrap();
        assert!(is_empty(&buchi_intersection(&ab, &ba).unwrap()));
        assert!(!is_empty(&buchi_intersection(&ab, &ab).unwrap()));
    }

    #[test]
    fn intersection_alphabet_mismatch() {
        let a = single_loop();
        let b = example_left();
        assert!(matches!(
            buchi_intersection(&a, &b),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn intersection_size_bound() {
        let a = example_left();
        let p = buchi_intersection(&a, &a).unwrap();
        assert!(p.num_states() <= 2 * 3 * 3);
    }

    #[test]
    fn self_intersection_keeps_samples() {
        let a = example_left();
        let p = buchi_intersection(&a, &a).unwrap();
        let p = p.renamed("p");
        for w in sample_accepting_lassos(&a, 3) {
            assert!(lasso_membership(&p, &w).unwrap());
        }
    }

    #[test]
    fn empty_intersection_with_empty() {
        let e = parse_ba("ba e\nalphabet a b c d\nstates 1\ninitial 0\naccepting\n").unwrap();
        assert!(is_empty(&buchi_intersection(&e, &example_left()).unwrap()));
    }

    #[test]
    fn sampling_examples() {
        assert_eq!(
            sample_accepting_lassos(&single_loop(), 5),
            vec![Lasso::new(vec![], vec![Letter(0)]).unwrap()]
        );
        let e = parse_ba("ba e\nalphabet a\nstates 1\ninitial 0\naccepting\n").unwrap();
        assert!(sample_accepting_lassos(&e, 3).is_empty());

        let a = example_left();
        let al = a.alphabet().clone();
        let got = sample_accepting_lassos(&a, 2);
        assert_eq!(
            got,
            vec![
                Lasso::new(word(&al, "b c"), word(&al, "a")).unwrap(),
                Lasso::new(word(&al, "b d"), word(&al, "a")).unwrap(),
            ]
        );
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = example_left();
        assert_eq!(sample_accepting_lassos(&a, 4), sample_accepting_lassos(&a, 4));
    }
}
