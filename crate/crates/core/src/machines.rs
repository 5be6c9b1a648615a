//! n-counter machines: a read-only input tape and n counters whose heads
//! scan `Z` exactly when the stored value is zero.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::word::Word;

/// Symbol scanned on a counter tape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Guard {
    /// The counter is zero.
    Z,
    /// The counter is positive.
    B,
}

impl Guard {
    pub fn of(value: u64) -> Guard {
        if value == 0 {
            Guard::Z
        } else {
            Guard::B
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Guard::Z => "Z",
            Guard::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Dec,
    Keep,
    Inc,
}

impl Action {
    pub fn delta(self) -> i64 {
        match self {
            Action::Dec => -1,
            Action::Keep => 0,
            Action::Inc => 1,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Dec => "-1",
            Action::Keep => "0",
            Action::Inc => "+1",
        })
    }
}

/// What a rule reads from the input tape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Read {
    /// Input symbol, by index into the machine's alphabet; the head moves right.
    Symbol(usize),
    /// The blank just past the input; the head moves right.
    Blank,
    /// Nothing is read and the head stays.
    Lambda,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CounterRule {
    pub from: usize,
    pub read: Read,
    pub guards: Vec<Guard>,
    pub to: usize,
    pub actions: Vec<Action>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterMachine {
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub start: usize,
    pub final_state: usize,
    pub counters: usize,
    pub rules: Vec<CounterRule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MachineConfig {
    pub state: usize,
    pub input_pos: usize,
    pub counters: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Acceptance {
    Accepted,
    /// Every run dies or loops inside the explored set without accepting.
    Rejected,
    /// Some run was still going when the step bound was reached.
    BoundHit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptedWords {
    pub words: BTreeSet<Word>,
    /// False if any word hit the step bound.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MachineViolation {
    #[error("machine has no counters")]
    NoCounters,
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("rule {rule}: expected {expected} guards and actions")]
    Arity { rule: usize, expected: usize },
    #[error("rule {rule}: input symbol index {symbol} out of range")]
    SymbolOutOfRange { rule: usize, symbol: usize },
    #[error("rule {rule}: counter {counter} is guarded by Z but decremented; a head cannot move left of Z")]
    DecrementOnZero { rule: usize, counter: usize },
    #[error("input symbol `{0}` collides with a reserved token (B, eps)")]
    ReservedSymbol(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("symbol `{0}` is not in the input alphabet")]
pub struct UnknownSymbol(pub String);

impl CounterMachine {
    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    pub fn encode(&self, word: &Word) -> Result<Vec<usize>, UnknownSymbol> {
        word.symbols().iter().map(|s| self.symbol_index(s).ok_or_else(|| UnknownSymbol(s.clone()))).collect()
    }

    pub fn validate(&self) -> Vec<MachineViolation> {
        let mut report = Vec::new();
        if self.counters == 0 {
            report.push(MachineViolation::NoCounters);
        }
        for s in &self.alphabet {
            if s == "B" || s == "eps" {
                report.push(MachineViolation::ReservedSymbol(s.clone()));
            }
        }
        for &q in &[self.start, self.final_state] {
            if q >= self.states.len() {
                report.push(MachineViolation::StateOutOfRange(q));
            }
        }
        for (k, r) in self.rules.iter().enumerate() {
            for &q in &[r.from, r.to] {
                if q >= self.states.len() {
                    report.push(MachineViolation::StateOutOfRange(q));
                }
            }
            if r.guards.len() != self.counters || r.actions.len() != self.counters {
                report.push(MachineViolation::Arity { rule: k, expected: self.counters });
            }
            if let Read::Symbol(x) = r.read {
                if x >= self.alphabet.len() {
                    report.push(MachineViolation::SymbolOutOfRange { rule: k, symbol: x });
                }
            }
            for (i, (g, a)) in r.guards.iter().zip(&r.actions).enumerate() {
                if *g == Guard::Z && *a == Action::Dec {
                    report.push(MachineViolation::DecrementOnZero { rule: k, counter: i });
                }
            }
        }
        report
    }

    fn applicable(&self, rule: &CounterRule, word: &[usize], mc: &MachineConfig) -> Option<usize> {
        if rule.from != mc.state {
            return None;
        }
        if rule.guards.iter().zip(&mc.counters).any(|(g, &v)| *g != Guard::of(v)) {
            return None;
        }
        match rule.read {
            Read::Lambda => Some(mc.input_pos),
            Read::Symbol(x) => (word.get(mc.input_pos) == Some(&x)).then_some(mc.input_pos + 1),
            Read::Blank => (mc.input_pos == word.len()).then_some(mc.input_pos + 1),
        }
    }

    pub fn initial_config(&self, initial_counters: Option<&[u64]>) -> MachineConfig {
        let counters = match initial_counters {
            Some(c) => {
                let mut v = c.to_vec();
                v.resize(self.counters, 0);
                v
            }
            None => vec![0; self.counters],
        };
        MachineConfig { state: self.start, input_pos: 0, counters }
    }

    /// All configurations one applicable rule away, sorted and deduplicated.
    pub fn successors(&self, word: &[usize], mc: &MachineConfig) -> Vec<MachineConfig> {
        let mut out: Vec<MachineConfig> = self
            .rules
            .iter()
            .filter_map(|r| {
                let input_pos = self.applicable(r, word, mc)?;
                let counters = mc
                    .counters
                    .iter()
                    .zip(&r.actions)
                    .map(|(&v, a)| v.checked_add_signed(a.delta()))
                    .collect::<Option<Vec<u64>>>()?;
                Some(MachineConfig { state: r.to, input_pos, counters })
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn is_accepting(&self, word: &[usize], mc: &MachineConfig) -> bool {
        mc.state == self.final_state && mc.input_pos >= word.len()
    }

    pub fn accepts(&self, word: &[usize], step_bound: usize) -> Acceptance {
        self.accepts_from(word, None, step_bound)
    }

    /// Breadth-first search over deduplicated configurations, starting with
    /// the given counter contents (all zero by default).
    pub fn accepts_from(&self, word: &[usize], initial_counters: Option<&[u64]>, step_bound: usize) -> Acceptance {
        let start = self.initial_config(initial_counters);
        if self.is_accepting(word, &start) {
            return Acceptance::Accepted;
        }
        let mut seen: FxHashSet<MachineConfig> = FxHashSet::default();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([(start, 0usize)]);
        let mut bound_hit = false;
        while let Some((mc, depth)) = queue.pop_front() {
            for next in self.successors(word, &mc) {
                if seen.contains(&next) {
                    continue;
                }
                if depth + 1 > step_bound {
                    bound_hit = true;
                    continue;
                }
                if self.is_accepting(word, &next) {
                    return Acceptance::Accepted;
                }
                seen.insert(next.clone());
                queue.push_back((next, depth + 1));
            }
        }
        if bound_hit {
            Acceptance::BoundHit
        } else {
            Acceptance::Rejected
        }
    }

    /// Every word of length at most `max_len` accepted within `step_bound`.
    pub fn enumerate_accepted(&self, max_len: usize, step_bound: usize) -> AcceptedWords {
        self.enumerate_accepted_from(max_len, None, step_bound)
    }

    pub fn enumerate_accepted_from(
        &self,
        max_len: usize,
        initial_counters: Option<&[u64]>,
        step_bound: usize,
    ) -> AcceptedWords {
        let mut words = BTreeSet::new();
        let mut exact = true;
        let k = self.alphabet.len();
        let mut word: Vec<usize> = Vec::new();
        loop {
            match self.accepts_from(&word, initial_counters, step_bound) {
                Acceptance::Accepted => {
                    words.insert(Word::new(word.iter().map(|&x| self.alphabet[x].clone())));
                }
                Acceptance::Rejected => {}
                Acceptance::BoundHit => exact = false,
            }
            // next word in length-lexicographic order
            let mut i = word.len();
            loop {
                if i == 0 {
                    if word.len() == max_len || k == 0 {
                        return AcceptedWords { words, exact };
                    }
                    word = vec![0; word.len() + 1];
                    break;
                }
                i -= 1;
                word[i] += 1;
                if word[i] < k {
                    break;
                }
                word[i] = 0;
            }
        }
    }

    pub fn render_rule(&self, rule: &CounterRule) -> String {
        let read = match rule.read {
            Read::Symbol(x) => self.alphabet.get(x).cloned().unwrap_or_else(|| format!("#{x}")),
            Read::Blank => "B".to_string(),
            Read::Lambda => "eps".to_string(),
        };
        let guards: Vec<String> = rule.guards.iter().map(ToString::to_string).collect();
        let actions: Vec<String> = rule.actions.iter().map(ToString::to_string).collect();
        let name = |q: usize| self.states.get(q).cloned().unwrap_or_else(|| format!("#{q}"));
        format!("({}, {}, {}) -> ({}, {})", name(rule.from), read, guards.join(", "), name(rule.to), actions.join(", "))
    }
}
