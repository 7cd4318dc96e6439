//! The line-oriented `.ba` text format.
//!
//! ```text
//! ba <name>
//! alphabet <letter> <letter> ...
//! sigma <letter>=1|2 ...          (optional)
//! states <n>
//! initial <index>
//! accepting <index> ...           (list may be empty)
//! trans <src> <letter> <dst>      (one per line)
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::fmt::Write as _;

use crate::automaton::{Alphabet, BufferId, BuchiAutomaton, SigmaMap};
use crate::error::{Error, Result};

/// Strips a trailing comment and splits the rest into whitespace tokens.
pub(crate) fn tokens(line: &str) -> Vec<&str> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    body.split_whitespace().collect()
}

pub(crate) fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Syntax {
        line,
        msg: format!("expected a state index, found {tok:?}"),
    })
}

pub fn parse_ba(text: &str) -> Result<BuchiAutomaton> {
    let mut name: Option<String> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut sigma_pairs: Option<Vec<(String, BufferId)>> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut accepting: Vec<usize> = Vec::new();
    let mut trans: Vec<(usize, String, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(raw);
        let Some((&head, rest)) = toks.split_first() else {
            continue;
        };
        let syntax = |msg: String| Error::Syntax { line, msg };
        if name.is_none() && head != "ba" {
            return Err(syntax("expected `ba <name>` header".into()));
        }
        match head {
            "ba" => {
                if name.is_some() {
                    return Err(syntax("duplicate `ba` header".into()));
                }
                let [n] = rest else {
                    return Err(syntax("expected `ba <name>`".into()));
                };
                name = Some(n.to_string());
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(syntax("duplicate `alphabet` line".into()));
                }
                alphabet = Some(
                    Alphabet::new(rest.iter().copied()).map_err(|e| syntax(e.to_string()))?,
                );
            }
            "sigma" => {
                let mut pairs = Vec::new();
                for tok in rest {
                    let (l, b) = tok
                        .split_once('=')
                        .ok_or_else(|| syntax(format!("expected <letter>=1|2, found {tok:?}")))?;
                    let buf = match b {
                        "1" => BufferId::One,
                        "2" => BufferId::Two,
                        _ => return Err(syntax(format!("buffer must be 1 or 2, found {b:?}"))),
                    };
                    pairs.push((l.to_string(), buf));
                }
                sigma_pairs = Some(pairs);
            }
            "states" => {
                let [n] = rest else {
                    return Err(syntax("expected `states <n>`".into()));
                };
                let n = n
                    .parse::<usize>()
                    .map_err(|_| syntax(format!("bad state count {n:?}")))?;
                states = Some(n);
            }
            "initial" => {
                let [s] = rest else {
                    return Err(syntax("expected `initial <index>`".into()));
                };
                initial = Some(parse_index(s, line)?);
            }
            "accepting" => {
                for t in rest {
                    accepting.push(parse_index(t, line)?);
                }
            }
            "trans" => {
                let [s, a, t] = rest else {
                    return Err(syntax("expected `trans <src> <letter> <dst>`".into()));
                };
                trans.push((parse_index(s, line)?, a.to_string(), parse_index(t, line)?));
            }
            other => return Err(syntax(format!("unknown directive {other:?}"))),
        }
    }

    let name = name.ok_or(Error::MissingLine("ba"))?;
    let alphabet = alphabet.ok_or(Error::MissingLine("alphabet"))?;
    let states = states.ok_or(Error::MissingLine("states"))?;
    let initial = initial.ok_or(Error::MissingLine("initial"))?;
    let transitions = trans
        .into_iter()
        .map(|(s, a, t)| Ok((s, alphabet.letter(&a)?, t)))
        .collect::<Result<Vec<_>>>()?;
    let sigma = sigma_pairs
        .map(|pairs| SigmaMap::from_pairs(&alphabet, pairs.iter().map(|(l, b)| (l.as_str(), *b))))
        .transpose()?;
    let aut = BuchiAutomaton::new(name, alphabet, states, initial, accepting, transitions)?;
    match sigma {
        Some(s) => aut.with_sigma(s),
        None => Ok(aut),
    }
}

pub fn serialize_ba(aut: &BuchiAutomaton) -> String {
    let al = aut.alphabet();
    let mut out = String::new();
    let _ = writeln!(out, "ba {}", aut.name());
    let _ = writeln!(out, "alphabet {}", al.names().join(" "));
    if let Some(sigma) = aut.sigma() {
        let parts: Vec<String> = al
            .letters()
            .map(|l| format!("{}={}", al.name(l), sigma.buffer(l).number()))
            .collect();
        let _ = writeln!(out, "sigma {}", parts.join(" "));
    }
    let _ = writeln!(out, "states {}", aut.num_states());
    let _ = writeln!(out, "initial {}", aut.initial());
    let acc: Vec<String> = aut.accepting_states().map(|s| s.to_string()).collect();
    if acc.is_empty() {
        out.push_str("accepting\n");
    } else {
        let _ = writeln!(out, "accepting {}", acc.join(" "));
    }
    for (s, a, t) in aut.transitions() {
        let _ = writeln!(out, "trans {} {} {}", s, al.name(a), t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE_LEFT: &str = "\
ba ex33_left
alphabet a b c d
sigma a=1 b=2 c=2 d=2
states 3
initial 0
accepting 2
trans 0 a 0   # Spoiler may stall on a
trans 0 b 1
trans 1 c 2
trans 1 d 2
trans 2 a 2
";

    #[test]
    fn parses_example_left() {
        let a = parse_ba(EXAMPLE_LEFT).unwrap();
        assert_eq!(a.num_states(), 3);
        assert_eq!(a.accepting_states().count(), 1);
        // the figure's c,d edge is two transitions; with the two loops that is 5
        assert_eq!(a.num_transitions(), 5);
        assert_eq!(a.sigma().unwrap().buffer(a.alphabet().letter("a").unwrap()), BufferId::One);
    }

    #[test]
    fn empty_automaton_is_valid() {
        let a = parse_ba("ba e\nalphabet a\nstates 1\ninitial 0\naccepting\n").unwrap();
        assert_eq!(a.num_transitions(), 0);
        assert_eq!(a.accepting_states().count(), 0);
    }

    #[test]
    fn undeclared_letter() {
        let err = parse_ba("ba e\nalphabet a\nstates 1\ninitial 0\ntrans 0 z 0\n").unwrap_err();
        assert_eq!(err.to_string(), "undeclared letter z");
    }

    #[test]
    fn syntax_error_has_line() {
        let err = parse_ba("ba e\nalphabet a\nstates x\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err}");
    }

    #[test]
    fn missing_initial() {
        let err = parse_ba("ba e\nalphabet a\nstates 1\n").unwrap_err();
        assert_eq!(err, Error::MissingLine("initial"));
    }

    #[test]
    fn out_of_range() {
        let err = parse_ba("ba e\nalphabet a\nstates 1\ninitial 0\ntrans 0 a 3\n").unwrap_err();
        assert_eq!(err, Error::StateOutOfRange { index: 3, states: 1 });
    }

    #[test]
    fn serialization_is_canonical() {
        let a = parse_ba(EXAMPLE_LEFT).unwrap();
        let text = serialize_ba(&a);
        assert!(text.starts_with("ba ex33_left\nalphabet a b c d\nsigma a=1 b=2 c=2 d=2\n"));
        assert_eq!(parse_ba(&text).unwrap(), a);
    }
}
