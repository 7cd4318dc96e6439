//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! assertion over all of them.

mod common;

use bufsim::format::parse_ba;
use bufsim::gen::{gen_hierarchy_family, gen_pcp_automata, random_parity_game, PcpInstance};
use bufsim::omega::{lasso_membership, sample_accepting_lassos};
use bufsim::parity::{progress_measure_solve, strategy_is_sound, zielonka_solve, Player};
use bufsim::projection::{check_projection_lemma, has_projection_partner};
use bufsim::sim::{
    build_direct_arena, fair_simulates, reduce_buffer1, reduce_buffer2, reduction_size_bound, two_buffer_simulates,
    two_buffer_simulates_direct, two_buffer_simulates_reduced, ArenaOptions, Capacities,
};
use bufsim::transducer::{parse_bt, relation_inclusion_approx, RelationVerdict};
use common::Case;

const CORPUS: u64 = 500;

fn corpus() -> Vec<Case> {
    (0..CORPUS).map(common::case).collect()
}

fn caps_grid(max: usize) -> Vec<Capacities> {
    (0..=max)
        .flat_map(|k1| (0..=max).map(move |k2| Capacities::new(k1, k2)))
        .collect()
}

/// Criterion 1: capacity (0,0) coincides with fair simulation.
fn zero_caps_is_fair(cases: &[Case]) -> Result<String, String> {
    for c in cases {
        let fair = fair_simulates(&c.left, &c.right).unwrap();
        let zero = two_buffer_simulates(&c.left, &c.right, &c.sigma, Capacities::new(0, 0)).unwrap();
        if fair != zero {
            return Err(format!("mismatch on seed {}", c.seed));
        }
    }
    Ok(format!("{} pairs agree", cases.len()))
}

/// Criterion 2: reduced and direct pipelines agree; reductions obey the size bound.
fn pipelines_agree(cases: &[Case]) -> Result<String, String> {
    let mut bounded = 0;
    for c in cases {
        let r = two_buffer_simulates_reduced(&c.left, &c.right, &c.sigma, c.caps).unwrap();
        let d = two_buffer_simulates_direct(&c.left, &c.right, &c.sigma, c.caps).unwrap();
        if r != d {
            return Err(format!("reduced {r} direct {d}\n{}", common::describe(c)));
        }
        let s = c.right.alphabet().len();
        let mut b = c.right.clone();
        for (k, buffer2) in [(c.caps.k2, true), (c.caps.k1, false)] {
            if k == 0 {
                continue;
            }
            let red = if buffer2 {
                reduce_buffer2(&b, &c.sigma, k)
            } else {
                reduce_buffer1(&b, &c.sigma, k)
            }
            .unwrap();
            if s >= 2 {
                let bound = reduction_size_bound(b.num_states(), s, k);
                if red.automaton.num_states() as u128 > bound {
                    return Err(format!("size {} > {bound} on seed {}", red.automaton.num_states(), c.seed));
                }
                bounded += 1;
            }
            b = red.automaton;
        }
    }
    Ok(format!("{} instances agree, {bounded} reductions within bound", cases.len()))
}

/// Criterion 3: monotone in capacities; the witness family is strict.
fn monotone_and_strict(cases: &[Case]) -> Result<String, String> {
    let grid = caps_grid(2);
    let mut checked = 0;
    for c in cases {
        let wins: Vec<bool> = grid
            .iter()
            .map(|&k| two_buffer_simulates(&c.left, &c.right, &c.sigma, k).unwrap())
            .collect();
        for (i, &ci) in grid.iter().enumerate() {
            for (j, &cj) in grid.iter().enumerate() {
                if ci.le(cj) {
                    checked += 1;
                    if wins[i] && !wins[j] {
                        return Err(format!("seed {}: wins at {ci}, loses at {cj}", c.seed));
                    }
                }
            }
        }
    }
    for k1 in 0..=2 {
        let h = gen_hierarchy_family(k1);
        for k2 in 0..=1 {
            let below = two_buffer_simulates(&h.left, &h.right, &h.sigma, Capacities::new(k1, k2)).unwrap();
            let above = two_buffer_simulates(&h.left, &h.right, &h.sigma, Capacities::new(k1 + 1, k2)).unwrap();
            if below || !above {
                return Err(format!("family k1={k1} k2={k2}: below {below} above {above}"));
            }
        }
    }
    Ok(format!("{checked} ordered cap pairs, family strict for k1 in 0..=2"))
}

/// Criterion 4: worked examples.
fn example_regressions() -> Result<String, String> {
    let a = parse_ba(common::EX_LEFT).unwrap();
    let b = parse_ba(common::EX_RIGHT).unwrap();
    let sigma = a.sigma().unwrap();
    for caps in caps_grid(2) {
        if two_buffer_simulates(&a, &b, sigma, caps).unwrap() {
            return Err(format!("stalling pair: Duplicator wins at {caps}"));
        }
    }

    let a = parse_ba(common::MULTI_LEFT).unwrap();
    let b = parse_ba(common::MULTI_RIGHT).unwrap();
    let arena = build_direct_arena(&a, &b, a.sigma().unwrap(), Capacities::new(2, 1), ArenaOptions::default()).unwrap();
    let regions = arena.solve();
    if !arena.duplicator_wins(&regions) {
        return Err("multi-consume pair: Spoiler wins at k1=2 k2=1".into());
    }
    let burst = arena.max_consumes_per_turn(&regions);
    if burst < 2 {
        return Err(format!("multi-consume pair: longest turn has {burst} consumes"));
    }

    let t = parse_bt(common::REL_LEFT).unwrap();
    let u = parse_bt(common::REL_RIGHT).unwrap();
    for caps in caps_grid(2) {
        if relation_inclusion_approx(&t, &u, caps).unwrap() != RelationVerdict::Unknown {
            return Err(format!("transducer pair: not UNKNOWN at {caps}"));
        }
    }
    let (ta, tsigma) = t.to_automaton().unwrap();
    let (ua, _) = u.to_automaton().unwrap();
    for (x, y) in [(&ta, &ua), (&ua, &ta)] {
        let samples = sample_accepting_lassos(x, 5);
        if samples.len() < 5 {
            return Err(format!("only {} samples from {}", samples.len(), x.name()));
        }
        for w in samples {
            if !has_projection_partner(y, &w, &tsigma).unwrap() {
                return Err(format!("relations differ on {}", w.render(x.alphabet())));
            }
        }
    }
    Ok(format!("stalling pair Spoiler on 9 caps, multi-consume turn of {burst}, transducers UNKNOWN on 9 caps"))
}

/// Criterion 5: solvable correspondence instance.
fn pcp_instance() -> Result<String, String> {
    let inst = gen_pcp_automata(&PcpInstance::parse("0:0").unwrap());
    for k in 1..=3 {
        if two_buffer_simulates(&inst.left, &inst.right, &inst.sigma, Capacities::new(k, k)).unwrap() {
            return Err(format!("Duplicator wins at k1={k} k2={k}"));
        }
    }
    let al = inst.left.alphabet();
    let samples = sample_accepting_lassos(&inst.left, 10);
    for w in &samples {
        if al.render(w.cycle()) != "$ $'" {
            return Err(format!("lasso {} does not end in the marker loop", w.render(al)));
        }
    }
    Ok(format!("Spoiler at (1,1) (2,2) (3,3), {} lassos end in the marker loop", samples.len()))
}

/// Criterion 6: projection property whenever simulation holds.
fn projection_lemma(cases: &[Case]) -> Result<String, String> {
    let (mut applicable, mut samples) = (0, 0);
    for c in cases {
        let r = check_projection_lemma(&c.left, &c.right, &c.sigma, c.caps, 4).unwrap();
        if r.violations() > 0 {
            return Err(format!("violation\n{}{}", r.render(c.left.alphabet()), common::describe(c)));
        }
        if let Some(s) = &r.samples {
            applicable += 1;
            samples += s.len();
        }
    }
    Ok(format!("{applicable} applicable instances, {samples} samples, 0 violations"))
}

/// Criterion 7: the two solvers on random games.
fn parity_solvers() -> Result<String, String> {
    for seed in 0..1000 {
        let g = random_parity_game(seed, 50, 3);
        let z = zielonka_solve(&g);
        let s = progress_measure_solve(&g);
        if z.even_wins != s.even_wins {
            return Err(format!("solvers disagree on seed {seed}"));
        }
        for r in [&z, &s] {
            let even = r.region(Player::Even);
            let odd = r.region(Player::Odd);
            if even.len() + odd.len() != g.num_nodes() || !even.is_disjoint(&odd) {
                return Err(format!("regions do not partition seed {seed}"));
            }
            for p in [Player::Even, Player::Odd] {
                if let Err(e) = strategy_is_sound(&g, r, p) {
                    return Err(format!("seed {seed} {p:?}: {e}"));
                }
            }
        }
    }
    Ok("1000 games of 50 nodes".into())
}

/// Criterion 8: fair simulation implies inclusion on sampled words.
fn soundness_chain(cases: &[Case]) -> Result<String, String> {
    let (mut holds, mut words) = (0, 0);
    for c in cases {
        if fair_simulates(&c.left, &c.right).unwrap() {
            holds += 1;
            for w in sample_accepting_lassos(&c.left, 5) {
                words += 1;
                if !lasso_membership(&c.right, &w).unwrap() {
                    return Err(format!("{} not in L(B)\n{}", w.render(c.left.alphabet()), common::describe(c)));
                }
            }
        }
    }
    Ok(format!("{holds} simulating pairs, {words} sampled words accepted"))
}

#[test]
fn acceptance() {
    let cases = corpus();
    let results: Vec<(u8, &str, Result<String, String>)> = vec![
        (1, "zero capacities equal fair simulation", zero_caps_is_fair(&cases)),
        (2, "reduced and direct pipelines agree", pipelines_agree(&cases)),
        (3, "capacity monotonicity and strictness", monotone_and_strict(&cases)),
        (4, "example regressions", example_regressions()),
        (5, "correspondence instance", pcp_instance()),
        (6, "projection matching", projection_lemma(&cases)),
        (7, "parity solvers", parity_solvers()),
        (8, "soundness chain", soundness_chain(&cases)),
    ];
    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {n} ({name}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n} ({name}): {why}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} criteria failed");
}
