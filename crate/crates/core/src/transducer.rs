//! 2-head Büchi transducers and the simulation-based approximation of
//! inclusion between the relations they recognise.
//!
//! The `.bt` text format:
//!
//! ```text
//! bt <name>
//! in <letters>
//! out <letters>
//! states <n>
//! initial <index>
//! accepting <index> ...
//! trans <src> <u|:> <v|:> <dst>
//! ```
//!
//! `:` is the empty word. An unquoted word is read one character per letter;
//! a quoted word lists space-separated letter names (`"aa b"`).

use std::fmt;
use std::fmt::Write as _;

use crate::automaton::{Alphabet, AutomatonBuilder, BufferId, BuchiAutomaton, Letter, SigmaMap, State};
use crate::error::{Error, Result};
use crate::format::parse_index;
use crate::sim::{two_buffer_simulates, Capacities};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransducerEdge {
    pub src: State,
    /// Letters of the input alphabet.
    pub input: Vec<Letter>,
    /// Letters of the output alphabet.
    pub output: Vec<Letter>,
    pub dst: State,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transducer {
    name: String,
    input: Alphabet,
    output: Alphabet,
    accepting: Vec<bool>,
    initial: State,
    edges: Vec<TransducerEdge>,
}

impl Transducer {
    pub fn new(
        name: impl Into<String>,
        input: Alphabet,
        output: Alphabet,
        states: usize,
        initial: State,
        accepting: impl IntoIterator<Item = State>,
        edges: impl IntoIterator<Item = TransducerEdge>,
    ) -> Result<Self> {
        if let Some(n) = input.names().iter().find(|n| output.lookup(n).is_some()) {
            return Err(Error::OverlappingAlphabets(n.clone()));
        }
        let check = |s: State| {
            if s < states {
                Ok(s)
            } else {
                Err(Error::StateOutOfRange { index: s, states })
            }
        };
        check(initial)?;
        let mut acc = vec![false; states];
        for s in accepting {
            acc[check(s)?] = true;
        }
        let mut es = Vec::new();
        for e in edges {
            check(e.src)?;
            check(e.dst)?;
            if e.input.is_empty() && e.output.is_empty() {
                return Err(Error::EpsilonTransition);
            }
            for (&l, al) in e.input.iter().map(|l| (l, &input)).chain(e.output.iter().map(|l| (l, &output))) {
                if !al.contains(l) {
                    return Err(Error::UndeclaredLetter(format!("#{}", l.0)));
                }
            }
            es.push(e);
        }
        es.sort();
        es.dedup();
        Ok(Transducer {
            name: name.into(),
            input,
            output,
            accepting: acc,
            initial,
            edges: es,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_accepting(&self, s: State) -> bool {
        self.accepting[s]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.num_states()).filter(|&s| self.accepting[s])
    }

    pub fn edges(&self) -> &[TransducerEdge] {
        &self.edges
    }

    /// Every transition reads exactly one letter from exactly one tape.
    pub fn is_normalised(&self) -> bool {
        self.edges.iter().all(|e| e.input.len() + e.output.len() == 1)
    }

    /// Splits every transition into single-letter steps, input letters
    /// first, through fresh non-accepting states.
    pub fn normalize(&self) -> Transducer {
        let mut accepting = self.accepting.clone();
        let mut edges = Vec::new();
        for e in &self.edges {
            let steps: Vec<(bool, Letter)> = e
                .input
                .iter()
                .map(|&l| (true, l))
                .chain(e.output.iter().map(|&l| (false, l)))
                .collect();
            let mut cur = e.src;
            for (i, &(is_in, l)) in steps.iter().enumerate() {
                let next = if i + 1 == steps.len() {
                    e.dst
                } else {
                    accepting.push(false);
                    accepting.len() - 1
                };
                let (input, output) = if is_in { (vec![l], vec![]) } else { (vec![], vec![l]) };
                edges.push(TransducerEdge {
                    src: cur,
                    input,
                    output,
                    dst: next,
                });
                cur = next;
            }
        }
        let states = accepting.len();
        let acc: Vec<State> = (0..states).filter(|&s| accepting[s]).collect();
        Transducer::new(
            self.name.clone(),
            self.input.clone(),
            self.output.clone(),
            states,
            self.initial,
            acc,
            edges,
        )
        .expect("normalisation preserves validity")
    }

    /// Alphabet `Σin ∪ Σout` with input letters on buffer 1 and output
    /// letters on buffer 2.
    pub fn joint_alphabet(&self) -> (Alphabet, SigmaMap) {
        let names = self.input.names().iter().chain(self.output.names());
        let alphabet = Alphabet::new(names.cloned()).expect("disjoint alphabets");
        let sigma = SigmaMap::from_pairs(
            &alphabet,
            self.input
                .names()
                .iter()
                .map(|n| (n.as_str(), BufferId::One))
                .chain(self.output.names().iter().map(|n| (n.as_str(), BufferId::Two))),
        )
        .expect("total");
        (alphabet, sigma)
    }

    /// Reads a normalised transducer as a Büchi automaton over `Σin ∪ Σout`.
    pub fn to_automaton(&self) -> Result<(BuchiAutomaton, SigmaMap)> {
        if !self.is_normalised() {
            return Err(Error::NotNormalised);
        }
        let (alphabet, sigma) = self.joint_alphabet();
        let mut b = AutomatonBuilder::new();
        for s in 0..self.num_states() {
            b.add_state(self.accepting[s]);
        }
        for e in &self.edges {
            let name = match (e.input.first(), e.output.first()) {
                (Some(&l), _) => self.input.name(l),
                (None, Some(&l)) => self.output.name(l),
                (None, None) => unreachable!("validated"),
            };
            b.add_transition(e.src, alphabet.letter(name)?, e.dst);
        }
        let aut = b.build(self.name.clone(), alphabet, self.initial)?.with_sigma(sigma.clone())?;
        Ok((aut, sigma))
    }
}

impl fmt::Display for Transducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_bt(self))
    }
}

/// Outcome of the inclusion approximation. The method is sound but not
/// complete, so a failed check is `Unknown` rather than a refutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationVerdict {
    Included,
    Unknown,
}

impl fmt::Display for RelationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationVerdict::Included => "INCLUDED",
            RelationVerdict::Unknown => "UNKNOWN",
        })
    }
}

/// `Included` when `T ⊑(k1,k2) T′` holds after normalisation, which implies
/// `R(T) ⊆ R(T′)`.
pub fn relation_inclusion_approx(
    left: &Transducer,
    right: &Transducer,
    caps: Capacities,
) -> Result<RelationVerdict> {
    if left.input != right.input || left.output != right.output {
        return Err(Error::AlphabetMismatch(format!(
            "{} has in {{{}}} out {{{}}}, {} has in {{{}}} out {{{}}}",
            left.name,
            left.input.names().join(","),
            left.output.names().join(","),
            right.name,
            right.input.names().join(","),
            right.output.names().join(","),
        )));
    }
    let (a, sigma) = left.normalize().to_automaton()?;
    let (b, _) = right.normalize().to_automaton()?;
    Ok(if two_buffer_simulates(&a, &b, &sigma, caps)? {
        RelationVerdict::Included
    } else {
        RelationVerdict::Unknown
    })
}

/// Splits a line into tokens; a double-quoted span is one token.
fn bt_tokens(raw: &str, line: usize) -> Result<Vec<(String, bool)>> {
    let body = raw.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut chars = body.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut tok = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some(ch) => tok.push(ch),
                    None => {
                        return Err(Error::Syntax {
                            line,
                            msg: "unterminated quote".into(),
                        })
                    }
                }
            }
            out.push((tok, true));
        } else {
            let mut tok = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || ch == '"' {
                    break;
                }
                tok.push(ch);
                chars.next();
            }
            out.push((tok, false));
        }
    }
    Ok(out)
}

fn parse_word(tok: &(String, bool), alphabet: &Alphabet) -> Result<Vec<Letter>> {
    let (text, quoted) = tok;
    if *quoted {
        text.split_whitespace().map(|n| alphabet.letter(n)).collect()
    } else if text == ":" {
        Ok(Vec::new())
    } else {
        text.chars().map(|c| alphabet.letter(c.encode_utf8(&mut [0; 4]))).collect()
    }
}

pub fn parse_bt(text: &str) -> Result<Transducer> {
    let mut name: Option<String> = None;
    let mut input: Option<Alphabet> = None;
    let mut output: Option<Alphabet> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut accepting = Vec::new();
    let mut raw_edges = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = bt_tokens(raw, line)?;
        let Some(((head, _), rest)) = toks.split_first() else {
            continue;
        };
        let syntax = |msg: String| Error::Syntax { line, msg };
        if name.is_none() && head != "bt" {
            return Err(syntax("expected `bt <name>` header".into()));
        }
        let plain = |what: &str| -> Result<Vec<&str>> {
            rest.iter()
                .map(|(t, q)| {
                    if *q {
                        Err(syntax(format!("quotes not allowed in `{what}`")))
                    } else {
                        Ok(t.as_str())
                    }
                })
                .collect()
        };
        match head.as_str() {
            "bt" => {
                if name.is_some() {
                    return Err(syntax("duplicate `bt` header".into()));
                }
                let [n] = plain("bt")?[..] else {
                    return Err(syntax("expected `bt <name>`".into()));
                };
                name = Some(n.to_string());
            }
            "in" | "out" => {
                let names = plain(head)?;
                if let Some(bad) = names.iter().find(|n| **n == ":") {
                    return Err(syntax(format!("{bad:?} is reserved for the empty word")));
                }
                let al = Alphabet::new(names).map_err(|e| syntax(e.to_string()))?;
                let slot = if head == "in" { &mut input } else { &mut output };
                if slot.replace(al).is_some() {
                    return Err(syntax(format!("duplicate `{head}` line")));
                }
            }
            "states" => {
                let [n] = plain("states")?[..] else {
                    return Err(syntax("expected `states <n>`".into()));
                };
                states = Some(n.parse().map_err(|_| syntax(format!("bad state count {n:?}")))?);
            }
            "initial" => {
                let [s] = plain("initial")?[..] else {
                    return Err(syntax("expected `initial <index>`".into()));
                };
                initial = Some(parse_index(s, line)?);
            }
            "accepting" => {
                for t in plain("accepting")? {
                    accepting.push(parse_index(t, line)?);
                }
            }
            "trans" => {
                let [s, u, v, t] = rest else {
                    return Err(syntax("expected `trans <src> <u|:> <v|:> <dst>`".into()));
                };
                if s.1 || t.1 {
                    return Err(syntax("state indices cannot be quoted".into()));
                }
                raw_edges.push((parse_index(&s.0, line)?, u.clone(), v.clone(), parse_index(&t.0, line)?));
            }
            other => return Err(syntax(format!("unknown directive {other:?}"))),
        }
    }

    let name = name.ok_or(Error::MissingLine("bt"))?;
    let input = input.ok_or(Error::MissingLine("in"))?;
    let output = output.ok_or(Error::MissingLine("out"))?;
    let states = states.ok_or(Error::MissingLine("states"))?;
    let initial = initial.ok_or(Error::MissingLine("initial"))?;
    if let Some(n) = input.names().iter().find(|n| output.lookup(n).is_some()) {
        return Err(Error::OverlappingAlphabets(n.clone()));
    }
    let edges = raw_edges
        .into_iter()
        .map(|(src, u, v, dst)| {
            Ok(TransducerEdge {
                src,
                input: parse_word(&u, &input)?,
                output: parse_word(&v, &output)?,
                dst,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Transducer::new(name, input, output, states, initial, accepting, edges)
}

fn render_word(word: &[Letter], alphabet: &Alphabet) -> String {
    if word.is_empty() {
        return ":".into();
    }
    let names: Vec<&str> = word.iter().map(|&l| alphabet.name(l)).collect();
    if names.iter().all(|n| n.chars().count() == 1 && *n != "\"") {
        names.concat()
    } else {
        format!("\"{}\"", names.join(" "))
    }
}

pub fn serialize_bt(t: &Transducer) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "bt {}", t.name);
    let _ = writeln!(out, "in {}", t.input.names().join(" "));
    let _ = writeln!(out, "out {}", t.output.names().join(" "));
    let _ = writeln!(out, "states {}", t.num_states());
    let _ = writeln!(out, "initial {}", t.initial);
    let acc: Vec<String> = t.accepting_states().map(|s| s.to_string()).collect();
    if acc.is_empty() {
        out.push_str("accepting\n");
    } else {
        let _ = writeln!(out, "accepting {}", acc.join(" "));
    }
    for e in &t.edges {
        let _ = writeln!(
            out,
            "trans {} {} {} {}",
            e.src,
            render_word(&e.input, &t.input),
            render_word(&e.output, &t.output),
            e.dst
        );
    }
    out
}
