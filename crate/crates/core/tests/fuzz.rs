mod common;

use bufsim::gen::random_transducer;
use bufsim::omega::{lasso_membership, sample_accepting_lassos};
use bufsim::projection::{check_projection_lemma, has_projection_partner};
use bufsim::sim::{
    build_direct_arena, fair_simulates, two_buffer_simulates, two_buffer_simulates_direct,
    two_buffer_simulates_reduced, ArenaOptions, Capacities,
};
use bufsim::transducer::{relation_inclusion_approx, RelationVerdict, Transducer};
use bufsim::{Alphabet, AutomatonBuilder, BufferId, BuchiAutomaton, SigmaMap};

const ALL_CAPS: [Capacities; 9] = [
    Capacities::new(0, 0),
    Capacities::new(0, 1),
    Capacities::new(0, 2),
    Capacities::new(1, 0),
    Capacities::new(1, 1),
    Capacities::new(1, 2),
    Capacities::new(2, 0),
    Capacities::new(2, 1),
    Capacities::new(2, 2),
];

#[test]
fn pipelines_agree() {
    for seed in 1000..1400 {
        let c = common::case(seed);
        let r = two_buffer_simulates_reduced(&c.left, &c.right, &c.sigma, c.caps).unwrap();
        let d = two_buffer_simulates_direct(&c.left, &c.right, &c.sigma, c.caps).unwrap();
        assert_eq!(r, d, "{}", common::describe(&c));
    }
}

#[test]
fn zero_capacity_is_fair_simulation() {
    for seed in 2000..2300 {
        let c = common::case(seed);
        let fair = fair_simulates(&c.left, &c.right).unwrap();
        let z = two_buffer_simulates(&c.left, &c.right, &c.sigma, Capacities::new(0, 0)).unwrap();
        assert_eq!(fair, z, "{}", common::describe(&c));
    }
}

#[test]
fn monotone_in_capacity() {
    for seed in 3000..3150 {
        let c = common::case(seed);
        let wins: Vec<bool> = ALL_CAPS
            .iter()
            .map(|&k| two_buffer_simulates(&c.left, &c.right, &c.sigma, k).unwrap())
            .collect();
        for (i, &ci) in ALL_CAPS.iter().enumerate() {
            for (j, &cj) in ALL_CAPS.iter().enumerate() {
                if ci.le(cj) && wins[i] {
                    assert!(wins[j], "{ci} wins but {cj} does not\n{}", common::describe(&c));
                }
            }
        }
    }
}

#[test]
fn one_buffer_needs_one_consume_per_turn() {
    for seed in 4000..4200 {
        let c = common::case(seed);
        let sigma = SigmaMap::uniform(c.left.alphabet(), BufferId::One);
        for k in 0..=2 {
            let caps = Capacities::new(k, 0);
            let full = build_direct_arena(&c.left, &c.right, &sigma, caps, ArenaOptions::default()).unwrap();
            let single =
                build_direct_arena(&c.left, &c.right, &sigma, caps, ArenaOptions { single_consume: true }).unwrap();
            assert_eq!(
                full.duplicator_wins(&full.solve()),
                single.duplicator_wins(&single.solve()),
                "k={k}\n{}",
                common::describe(&c)
            );
        }
    }
}

#[test]
fn projection_lemma_holds() {
    let mut applicable = 0;
    for seed in 5000..5200 {
        let c = common::case(seed);
        let report = check_projection_lemma(&c.left, &c.right, &c.sigma, c.caps, 4).unwrap();
        applicable += report.applicable() as usize;
        assert_eq!(report.violations(), 0, "{}", common::describe(&c));
    }
    assert!(applicable > 20);
}

#[test]
fn fair_simulation_implies_sampled_inclusion() {
    for seed in 6000..6300 {
        let c = common::case(seed);
        if fair_simulates(&c.left, &c.right).unwrap() {
            for w in sample_accepting_lassos(&c.left, 5) {
                assert!(lasso_membership(&c.right, &w).unwrap(), "{}", common::describe(&c));
            }
        }
    }
}

/// Independent expansion with the opposite ordering: output letters first.
fn output_first_automaton(t: &Transducer) -> (BuchiAutomaton, SigmaMap) {
    let (alphabet, sigma) = t.joint_alphabet();
    let mut b = AutomatonBuilder::new();
    for s in 0..t.num_states() {
        b.add_state(t.is_accepting(s));
    }
    for e in t.edges() {
        let word: Vec<_> = e
            .output
            .iter()
            .map(|&l| alphabet.letter(t.output_alphabet().name(l)).unwrap())
            .chain(e.input.iter().map(|&l| alphabet.letter(t.input_alphabet().name(l)).unwrap()))
            .collect();
        b.add_word(e.src, &word, e.dst);
    }
    (b.build("oracle", alphabet, t.initial()).unwrap(), sigma)
}

fn in_out() -> (Alphabet, Alphabet) {
    (Alphabet::new(["a", "b"]).unwrap(), Alphabet::new(["x", "y"]).unwrap())
}

#[test]
fn normalisation_preserves_relation() {
    let (inp, out) = in_out();
    for seed in 0..100 {
        let t = random_transducer(seed, 3, &inp, &out, 2, 0.5).unwrap();
        let (norm, sigma) = t.normalize().to_automaton().unwrap();
        let (oracle, _) = output_first_automaton(&t);
        for w in sample_accepting_lassos(&norm, 4) {
            assert!(has_projection_partner(&oracle, &w, &sigma).unwrap(), "seed {seed}");
        }
        for w in sample_accepting_lassos(&oracle, 4) {
            assert!(has_projection_partner(&norm, &w, &sigma).unwrap(), "seed {seed}");
        }
    }
}

#[test]
fn inclusion_approx_sound_and_monotone() {
    let (inp, out) = in_out();
    let mut included = 0;
    for seed in 0..120 {
        let t = random_transducer(seed, 3, &inp, &out, 2, 0.5).unwrap();
        // a superset of t's transitions, or an unrelated transducer
        let u = if seed % 2 == 0 {
            let extra = random_transducer(seed + 7, 3, &inp, &out, 1, 0.0).unwrap();
            let acc: Vec<_> = t.accepting_states().collect();
            Transducer::new(
                "sup",
                inp.clone(),
                out.clone(),
                3,
                0,
                acc,
                t.edges().iter().chain(extra.edges()).cloned(),
            )
            .unwrap()
        } else {
            random_transducer(seed + 1000, 3, &inp, &out, 2, 0.5).unwrap()
        };
        let verdicts: Vec<RelationVerdict> = ALL_CAPS
            .iter()
            .map(|&k| relation_inclusion_approx(&t, &u, k).unwrap())
            .collect();
        for (i, &ci) in ALL_CAPS.iter().enumerate() {
            for (j, &cj) in ALL_CAPS.iter().enumerate() {
                if ci.le(cj) && verdicts[i] == RelationVerdict::Included {
                    assert_eq!(verdicts[j], RelationVerdict::Included, "seed {seed}");
                }
            }
        }
        if verdicts.contains(&RelationVerdict::Included) {
            included += 1;
            let (ta, sigma) = t.normalize().to_automaton().unwrap();
            let (ua, _) = u.normalize().to_automaton().unwrap();
            for w in sample_accepting_lassos(&ta, 4) {
                assert!(has_projection_partner(&ua, &w, &sigma).unwrap(), "seed {seed}");
            }
        }
    }
    assert!(included >= 30, "only {included} included pairs");
}
