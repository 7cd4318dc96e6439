//! Letter-labelled Büchi automata, alphabets, buffer assignments and lassos.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a letter inside its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered set of letter names. Letters are kept sorted by name so that two
/// alphabets over the same names assign the same [`Letter`] indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

pub(crate) fn valid_letter_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_graphic())
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = BTreeSet::new();
        for n in names {
            let n = n.into();
            if !valid_letter_name(&n) {
                return Err(Error::Invalid(format!("bad letter name {n:?}")));
            }
            if !set.insert(n.clone()) {
                return Err(Error::Invalid(format!("duplicate letter {n}")));
            }
        }
        if set.len() > u16::MAX as usize {
            return Err(Error::Invalid("alphabet too large".into()));
        }
        Ok(Alphabet {
            names: set.into_iter().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(|i| Letter(i as u16))
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| Letter(i as u16))
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.lookup(name)
            .ok_or_else(|| Error::UndeclaredLetter(name.to_string()))
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.names.len()
    }

    /// Renders a word as space separated letter names.
    pub fn render(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// One of the two FIFO buffers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BufferId {
    One,
    Two,
}

impl BufferId {
    pub fn index(self) -> usize {
        match self {
            BufferId::One => 0,
            BufferId::Two => 1,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(BufferId::One),
            2 => Some(BufferId::Two),
            _ => None,
        }
    }
}

/// Total assignment of letters to buffers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaMap {
    assignment: Vec<BufferId>,
}

impl SigmaMap {
    pub fn new(alphabet: &Alphabet, assignment: Vec<BufferId>) -> Result<Self> {
        if assignment.len() != alphabet.len() {
            return Err(Error::Invalid(format!(
                "sigma assigns {} letters, alphabet has {}",
                assignment.len(),
                alphabet.len()
            )));
        }
        Ok(SigmaMap { assignment })
    }

    /// Every letter goes to `buffer`.
    pub fn uniform(alphabet: &Alphabet, buffer: BufferId) -> Self {
        SigmaMap {
            assignment: vec![buffer; alphabet.len()],
        }
    }

    /// Builds a map from `(name, buffer)` pairs; every letter must be covered.
    pub fn from_pairs<'a, I>(alphabet: &Alphabet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, BufferId)>,
    {
        let mut slots: Vec<Option<BufferId>> = vec![None; alphabet.len()];
        for (name, buf) in pairs {
            let l = alphabet.letter(name)?;
            slots[l.index()] = Some(buf);
        }
        let assignment = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::SigmaIncomplete(alphabet.names[i].clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(SigmaMap { assignment })
    }

    pub fn buffer(&self, letter: Letter) -> BufferId {
        self.assignment[letter.index()]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Letters assigned to `buffer`, i.e. the preimage of that buffer.
    pub fn preimage(&self, buffer: BufferId) -> Vec<Letter> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == buffer)
            .map(|(i, _)| Letter(i as u16))
            .collect()
    }

    /// Projection of a word onto the letters of one buffer.
    pub fn project(&self, word: &[Letter], buffer: BufferId) -> Vec<Letter> {
        word.iter()
            .copied()
            .filter(|&l| self.buffer(l) == buffer)
            .collect()
    }
}

/// Ultimately periodic word `prefix · loop^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    prefix: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl Lasso {
    pub fn new(prefix: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Invalid("lasso loop must be non-empty".into()));
        }
        Ok(Lasso { prefix, cycle })
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Shortest representation of the same ω-word: the loop is reduced to
    /// its primitive root and the prefix is shortened by rotating the loop.
    /// Two lassos denote the same word iff their canonical forms are equal.
    pub fn canonical(&self) -> Lasso {
        let n = self.cycle.len();
        let period = (1..=n)
            .find(|&d| n % d == 0 && (d..n).all(|i| self.cycle[i] == self.cycle[i - d]))
            .expect("n is a period");
        let mut cycle = self.cycle[..period].to_vec();
        let mut prefix = self.prefix.clone();
        while prefix.last().is_some() && prefix.last() == cycle.last() {
            prefix.pop();
            cycle.rotate_right(1);
        }
        Lasso { prefix, cycle }
    }

    /// Letter at position `i` of the infinite word.
    pub fn at(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        format!(
            "({})({})^w",
            alphabet.render(&self.prefix),
            alphabet.render(&self.cycle)
        )
    }
}

pub type State = usize;

/// Büchi automaton with dense state indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchiAutomaton {
    name: String,
    alphabet: Alphabet,
    sigma: Option<SigmaMap>,
    initial: State,
    accepting: Vec<bool>,
    // sorted by (letter, target), no duplicates
    succ: Vec<Vec<(Letter, State)>>,
}

impl BuchiAutomaton {
    pub fn new<T>(
        name: impl Into<String>,
        alphabet: Alphabet,
        states: usize,
        initial: State,
        accepting: impl IntoIterator<Item = State>,
        transitions: T,
    ) -> Result<Self>
    where
        T: IntoIterator<Item = (State, Letter, State)>,
    {
        if states == 0 {
            return Err(Error::Invalid("automaton needs at least one state".into()));
        }
        let check = |index: usize| {
            if index < states {
                Ok(())
            } else {
                Err(Error::StateOutOfRange { index, states })
            }
        };
        check(initial)?;
        let mut acc = vec![false; states];
        for f in accepting {
            check(f)?;
            acc[f] = true;
        }
        let mut succ = vec![Vec::new(); states];
        for (s, a, t) in transitions {
            check(s)?;
            check(t)?;
            if !alphabet.contains(a) {
                return Err(Error::UndeclaredLetter(format!("#{}", a.0)));
            }
            succ[s].push((a, t));
        }
        for row in &mut succ {
            row.sort_unstable();
            row.dedup();
        }
        Ok(BuchiAutomaton {
            name: name.into(),
            alphabet,
            sigma: None,
            initial,
            accepting: acc,
            succ,
        })
    }

    pub fn with_sigma(mut self, sigma: SigmaMap) -> Result<Self> {
        if sigma.len() != self.alphabet.len() {
            return Err(Error::Invalid("sigma does not match alphabet".into()));
        }
        self.sigma = Some(sigma);
        Ok(self)
    }

    pub fn without_sigma(mut self) -> Self {
        self.sigma = None;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn sigma(&self) -> Option<&SigmaMap> {
        self.sigma.as_ref()
    }

    pub fn num_states(&self) -> usize {
        self.succ.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_accepting(&self, s: State) -> bool {
        self.accepting[s]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = State> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| i)
    }

    pub fn successors(&self, s: State) -> &[(Letter, State)] {
        &self.succ[s]
    }

    /// Targets of `s` under `letter`.
    pub fn post(&self, s: State, letter: Letter) -> impl Iterator<Item = State> + '_ {
        let row = &self.succ[s];
        let start = row.partition_point(|&(l, _)| l < letter);
        row[start..]
            .iter()
            .take_while(move |&&(l, _)| l == letter)
            .map(|&(_, t)| t)
    }

    /// All transitions, sorted by (source, letter, target).
    pub fn transitions(&self) -> impl Iterator<Item = (State, Letter, State)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().map(move |&(a, t)| (s, a, t)))
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(s) = stack.pop() {
            for &(_, t) in &self.succ[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Checks that `other` ranges over the same letters.
    pub fn check_same_alphabet(&self, other: &BuchiAutomaton) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{{{}}} vs {{{}}}",
                self.alphabet.names().join(","),
                other.alphabet.names().join(",")
            )));
        }
        Ok(())
    }
}

impl fmt::Display for BuchiAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::serialize_ba(self))
    }
}

/// Incremental builder used by generators and constructions.
#[derive(Debug, Default)]
pub struct AutomatonBuilder {
    states: usize,
    accepting: Vec<State>,
    transitions: Vec<(State, Letter, State)>,
}

impl AutomatonBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_state(&mut self, accepting: bool) -> State {
        let s = self.states;
        self.states += 1;
        if accepting {
            self.accepting.push(s);
        }
        s
    }

    pub fn add_transition(&mut self, from: State, letter: Letter, to: State) {
        self.transitions.push((from, letter, to));
    }

    /// Adds a chain reading `word` from `from` to `to` through fresh
    /// non-accepting states.
    pub fn add_word(&mut self, from: State, word: &[Letter], to: State) {
        assert!(!word.is_empty(), "chain needs at least one letter");
        let mut cur = from;
        for (i, &l) in word.iter().enumerate() {
            let next = if i + 1 == word.len() {
                to
            } else {
                self.add_state(false)
            };
            self.add_transition(cur, l, next);
            cur = next;
        }
    }

    pub fn num_states(&self) -> usize {
        self.states
    }

    pub fn build(
        self,
        name: impl Into<String>,
        alphabet: Alphabet,
        initial: State,
    ) -> Result<BuchiAutomaton> {
        BuchiAutomaton::new(
            name,
            alphabet,
            self.states,
            initial,
            self.accepting,
            self.transitions,
        )
    }
}
