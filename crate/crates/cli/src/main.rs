//! `bufsim`: decide bounded two-buffer simulation between Büchi automata and
//! approximate relation inclusion between 2-head Büchi transducers.
//!
//! Exit codes: 0 Duplicator wins / INCLUDED / no violation, 1 Spoiler wins /
//! UNKNOWN / violation, 2 usage or input error, 3 the two decision routes
//! disagree under `--method both`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use bufsim::format::{parse_ba, serialize_ba};
use bufsim::gen::{gen_hierarchy_family, gen_pcp_automata, letters, random_automaton, random_sigma, Instance, PcpInstance};
use bufsim::projection::check_projection_lemma;
use bufsim::sim::{build_direct_arena, build_fair_sim_game, reduced_arena, ArenaOptions};
use bufsim::transducer::{parse_bt, relation_inclusion_approx, RelationVerdict};
use bufsim::{BuchiAutomaton, Capacities, Error, Method, SigmaMap};

#[derive(Parser)]
#[command(name = "bufsim", version, about = "Bounded two-buffer simulation between Büchi automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide A ⊑(k1,k2) B for two `.ba` files carrying `sigma` lines.
    Sim(SimArgs),
    /// Decide ordinary fair simulation A ⊑ B.
    Fairsim(FairArgs),
    /// Approximate R(T) ⊆ R(T′) for two `.bt` transducers.
    IncludeRel(RelArgs),
    /// Write generated instances as `.ba` files plus a manifest.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check the projection-matching property on sampled words of L(A).
    CheckLemma(LemmaArgs),
    /// Write the parity game deciding A ⊑(k1,k2) B and its node legend.
    DumpArena(DumpArgs),
}

fn parse_cap(s: &str) -> Result<usize, String> {
    Capacities::parse_one(s).map_err(|e| e.to_string())
}

#[derive(Args)]
struct CapArgs {
    /// Capacity of buffer 1.
    #[arg(long, default_value = "0", value_parser = parse_cap)]
    k1: usize,
    /// Capacity of buffer 2.
    #[arg(long, default_value = "0", value_parser = parse_cap)]
    k2: usize,
}

impl CapArgs {
    fn caps(&self) -> Capacities {
        Capacities::new(self.k1, self.k2)
    }
}

#[derive(Args)]
struct SimArgs {
    left: PathBuf,
    right: PathBuf,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long, default_value = "reduced")]
    method: Method,
    /// Write the winner's strategy (arena nodes reachable under it) here.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Args)]
struct FairArgs {
    left: PathBuf,
    right: PathBuf,
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Args)]
struct RelArgs {
    left: PathBuf,
    right: PathBuf,
    #[command(flatten)]
    caps: CapArgs,
    /// Try every (k1, k2) with LO ≤ k1, k2 ≤ HI and print a table.
    #[arg(long, value_name = "LO..HI")]
    sweep: Option<String>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Pair separating capacity k1 from k1 + 1 on buffer 1.
    Hierarchy {
        #[arg(long)]
        k1: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Automata encoding a correspondence instance `u:v,u:v,...` over {0,1}.
    Pcp {
        #[arg(long)]
        pairs: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Seeded random pair with a random buffer assignment.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long, default_value_t = 0.35)]
        density: f64,
        #[arg(long, default_value_t = 0.5)]
        accept: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct LemmaArgs {
    left: PathBuf,
    right: PathBuf,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct DumpArgs {
    left: PathBuf,
    right: PathBuf,
    #[command(flatten)]
    caps: CapArgs,
    /// `reduced` dumps the fair simulation game against the reduced B.
    #[arg(long, default_value = "reduced")]
    method: Method,
    /// Write PREFIX.pg and PREFIX.tsv instead of printing the game.
    #[arg(long, value_name = "PREFIX")]
    out: Option<PathBuf>,
}

fn read_ba(path: &Path) -> Result<BuchiAutomaton> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_ba(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_pair(left: &Path, right: &Path) -> Result<(BuchiAutomaton, BuchiAutomaton)> {
    let a = read_ba(left)?;
    let b = read_ba(right)?;
    a.check_same_alphabet(&b)?;
    Ok((a, b))
}

/// The buffer assignment both files agree on; one file may omit it.
fn shared_sigma(a: &BuchiAutomaton, b: &BuchiAutomaton) -> Result<SigmaMap> {
    match (a.sigma(), b.sigma()) {
        (Some(x), Some(y)) => {
            if let Some(l) = a.alphabet().letters().find(|&l| x.buffer(l) != y.buffer(l)) {
                return Err(Error::SigmaMismatch(a.alphabet().name(l).to_string()).into());
            }
            Ok(x.clone())
        }
        (Some(x), None) | (None, Some(x)) => Ok(x.clone()),
        (None, None) => bail!("neither automaton has a `sigma` line"),
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn verdict_line(duplicator: bool, caps: Capacities) -> String {
    let who = if duplicator { "DUPLICATOR" } else { "SPOILER" };
    format!("{who} {caps}")
}

struct Outcome {
    duplicator: bool,
    nodes: usize,
    witness: String,
    legend: String,
}

fn run_reduced(a: &BuchiAutomaton, b: &BuchiAutomaton, sigma: &SigmaMap, caps: Capacities) -> Result<Outcome> {
    let (arena, reduced) = reduced_arena(a, b, sigma, caps)?;
    let regions = arena.solve();
    eprintln!("reduced: right side {} -> {} states", b.num_states(), reduced.num_states());
    Ok(Outcome {
        duplicator: arena.duplicator_wins(&regions),
        nodes: arena.game.num_nodes(),
        witness: arena.witness(&regions, a.alphabet()),
        legend: arena.legend_tsv(a.alphabet()),
    })
}

fn run_direct(a: &BuchiAutomaton, b: &BuchiAutomaton, sigma: &SigmaMap, caps: Capacities) -> Result<Outcome> {
    let arena = build_direct_arena(a, b, sigma, caps, ArenaOptions::default())?;
    let regions = arena.solve();
    Ok(Outcome {
        duplicator: arena.duplicator_wins(&regions),
        nodes: arena.game.num_nodes(),
        witness: arena.witness(&regions, a.alphabet()),
        legend: arena.legend_tsv(a.alphabet()),
    })
}

fn timed<T>(label: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f();
    eprintln!("{label}: {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
    out
}

fn cmd_sim(args: &SimArgs) -> Result<u8> {
    let (a, b) = load_pair(&args.left, &args.right)?;
    let sigma = shared_sigma(&a, &b)?;
    let caps = args.caps.caps();
    let reduced = || timed("reduced", || run_reduced(&a, &b, &sigma, caps));
    let direct = || timed("direct", || run_direct(&a, &b, &sigma, caps));
    let outcome = match args.method {
        Method::Reduced => reduced()?,
        Method::Direct => direct()?,
        Method::Both => {
            let r = reduced()?;
            let d = direct()?;
            if r.duplicator != d.duplicator {
                eprintln!(
                    "disagreement at {caps}: reduced says {}, direct says {}",
                    verdict_line(r.duplicator, caps),
                    verdict_line(d.duplicator, caps)
                );
                let dump = format!("# reduced\n{}{}# direct\n{}{}", r.witness, r.legend, d.witness, d.legend);
                let path = args.witness_out.clone().unwrap_or_else(|| PathBuf::from("disagreement.txt"));
                write(&path, &dump)?;
                eprintln!("diagnostic dump written to {}", path.display());
                return Ok(3);
            }
            eprintln!("direct arena: {} nodes", d.nodes);
            r
        }
    };
    eprintln!("game nodes: {}", outcome.nodes);
    if let Some(path) = &args.witness_out {
        write(path, &outcome.witness)?;
    }
    println!("{}", verdict_line(outcome.duplicator, caps));
    Ok(if outcome.duplicator { 0 } else { 1 })
}

fn cmd_fairsim(args: &FairArgs) -> Result<u8> {
    let (a, b) = load_pair(&args.left, &args.right)?;
    let arena = build_fair_sim_game(&a, &b)?;
    let regions = arena.solve();
    let wins = arena.duplicator_wins(&regions);
    if let Some(path) = &args.witness_out {
        write(path, &arena.witness(&regions, a.alphabet()))?;
    }
    println!("{}", if wins { "DUPLICATOR" } else { "SPOILER" });
    Ok(if wins { 0 } else { 1 })
}

fn parse_sweep(s: &str) -> Result<(usize, usize)> {
    let (lo, hi) = s
        .split_once("..")
        .with_context(|| format!("expected LO..HI, found {s:?}"))?;
    let lo = Capacities::parse_one(lo)?;
    let hi = Capacities::parse_one(hi.trim_start_matches('='))?;
    if lo > hi {
        bail!("empty sweep range {s}");
    }
    Ok((lo, hi))
}

fn cmd_include_rel(args: &RelArgs) -> Result<u8> {
    let read = |p: &Path| -> Result<_> {
        let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        parse_bt(&text).with_context(|| format!("parsing {}", p.display()))
    };
    let t = read(&args.left)?;
    let u = read(&args.right)?;
    let Some(sweep) = &args.sweep else {
        let v = relation_inclusion_approx(&t, &u, args.caps.caps())?;
        println!("{v}");
        return Ok(if v == RelationVerdict::Included { 0 } else { 1 });
    };
    let (lo, hi) = parse_sweep(sweep)?;
    let mut any = false;
    println!("k1\\k2\t{}", (lo..=hi).map(|k| k.to_string()).collect::<Vec<_>>().join("\t"));
    for k1 in lo..=hi {
        let mut row = vec![k1.to_string()];
        for k2 in lo..=hi {
            let v = relation_inclusion_approx(&t, &u, Capacities::new(k1, k2))?;
            any |= v == RelationVerdict::Included;
            row.push(v.to_string());
        }
        println!("{}", row.join("\t"));
    }
    Ok(if any { 0 } else { 1 })
}

fn write_instance(out: &Path, stem: &str, inst: &Instance, params: &[(&str, String)]) -> Result<()> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let left = format!("{stem}_left.ba");
    let right = format!("{stem}_right.ba");
    write(&out.join(&left), &serialize_ba(&inst.left))?;
    write(&out.join(&right), &serialize_ba(&inst.right))?;
    let mut manifest = String::new();
    for (k, v) in params {
        manifest.push_str(&format!("{k} {v}\n"));
    }
    manifest.push_str(&format!("left {left}\nright {right}\n"));
    manifest.push_str(&format!(
        "states {} {}\n",
        inst.left.num_states(),
        inst.right.num_states()
    ));
    write(&out.join(format!("{stem}_manifest.txt")), &manifest)?;
    println!("{}", out.join(&left).display());
    println!("{}", out.join(&right).display());
    Ok(())
}

fn cmd_gen(cmd: &GenCommand) -> Result<u8> {
    match cmd {
        GenCommand::Hierarchy { k1, out } => {
            let inst = gen_hierarchy_family(*k1);
            write_instance(
                out,
                &format!("hier{k1}"),
                &inst,
                &[
                    ("generator", "hierarchy".into()),
                    ("k1", k1.to_string()),
                    ("expect", format!("SPOILER at k1={k1}, DUPLICATOR at k1={}", k1 + 1)),
                ],
            )?;
        }
        GenCommand::Pcp { pairs, out } => {
            let inst = gen_pcp_automata(&PcpInstance::parse(pairs)?);
            write_instance(out, "pcp", &inst, &[("generator", "pcp".into()), ("pairs", pairs.clone())])?;
        }
        GenCommand::Random {
            seed,
            states,
            letters: size,
            density,
            accept,
            out,
        } => {
            if !(1..=26).contains(size) {
                bail!("--letters must be between 1 and 26");
            }
            let al = letters(*size);
            let sigma = random_sigma(*seed, &al);
            let left = random_automaton(2 * seed, *states, &al, *density, *accept)?.with_sigma(sigma.clone())?;
            let right = random_automaton(2 * seed + 1, *states, &al, *density, *accept)?.with_sigma(sigma.clone())?;
            let inst = Instance { left, right, sigma };
            write_instance(
                out,
                &format!("rand{seed}"),
                &inst,
                &[
                    ("generator", "random".into()),
                    ("seed", seed.to_string()),
                    ("density", density.to_string()),
                    ("accept", accept.to_string()),
                ],
            )?;
        }
    }
    Ok(0)
}

fn cmd_check_lemma(args: &LemmaArgs) -> Result<u8> {
    let (a, b) = load_pair(&args.left, &args.right)?;
    let sigma = shared_sigma(&a, &b)?;
    if args.samples == 0 {
        bail!("--samples must be positive");
    }
    let report = check_projection_lemma(&a, &b, &sigma, args.caps.caps(), args.samples)?;
    let text = report.render(a.alphabet());
    match &args.report {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(if report.violations() == 0 { 0 } else { 1 })
}

fn cmd_dump_arena(args: &DumpArgs) -> Result<u8> {
    let (a, b) = load_pair(&args.left, &args.right)?;
    let sigma = shared_sigma(&a, &b)?;
    let caps = args.caps.caps();
    let (game, legend) = match args.method {
        Method::Reduced => {
            let (arena, _) = reduced_arena(&a, &b, &sigma, caps)?;
            (arena.game.to_pg_text(), arena.legend_tsv(a.alphabet()))
        }
        Method::Direct => {
            let arena = build_direct_arena(&a, &b, &sigma, caps, ArenaOptions::default())?;
            (arena.game.to_pg_text(), arena.legend_tsv(a.alphabet()))
        }
        Method::Both => bail!("dump-arena takes --method reduced or --method direct"),
    };
    match &args.out {
        Some(prefix) => {
            let with_ext = |ext: &str| {
                let mut p = prefix.clone().into_os_string();
                p.push(ext);
                PathBuf::from(p)
            };
            write(&with_ext(".pg"), &game)?;
            write(&with_ext(".tsv"), &legend)?;
            println!("{}", with_ext(".pg").display());
            println!("{}", with_ext(".tsv").display());
        }
        None => print!("{game}"),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Sim(a) => cmd_sim(a),
        Command::Fairsim(a) => cmd_fairsim(a),
        Command::IncludeRel(a) => cmd_include_rel(a),
        Command::Gen(g) => cmd_gen(g),
        Command::CheckLemma(a) => cmd_check_lemma(a),
        Command::DumpArena(a) => cmd_dump_arena(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
