//! Bounded language comparison between a grammar system and a counter machine.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::derivation::{enumerate_language_with, EnumerationBounds, EnumerationOptions, EnumerationStats, Reduction};
use crate::grammar::PcgSystem;
use crate::machines::CounterMachine;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("terminal alphabet {grammar:?} differs from machine alphabet {machine:?}")]
    AlphabetMismatch { grammar: Vec<String>, machine: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Words longer than this are not compared.
    pub max_length: usize,
    /// Step bound for each machine run.
    pub machine_steps: usize,
    /// Grammar derivation depth; `None` derives it from `machine_steps`.
    pub max_depth: Option<usize>,
    pub max_configurations: usize,
    pub max_string_length: usize,
    pub enumeration: EnumerationOptions,
    /// Counter contents the machine starts from (all zero when absent).
    pub initial_counters: Option<Vec<u64>>,
}

impl VerifyOptions {
    pub fn new(max_length: usize) -> Self {
        VerifyOptions {
            max_length,
            machine_steps: 64,
            max_depth: None,
            max_configurations: 2_000_000,
            max_string_length: 64,
            enumeration: EnumerationOptions { reduction: Reduction::Full, ..Default::default() },
            initial_counters: None,
        }
    }

    /// Each machine step takes three rewriting steps and at most three
    /// communication steps; the final phase erases one master symbol per
    /// step, so the garbage bound is added on top.
    pub fn grammar_depth(&self) -> usize {
        self.max_depth.unwrap_or(6 * self.machine_steps + 8 + self.max_string_length)
    }

    pub fn bounds(&self) -> EnumerationBounds {
        EnumerationBounds::new(self.grammar_depth(), self.max_configurations, self.max_string_length)
            .with_max_word_length(self.max_length)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Both sides were explored completely and agree.
    Equivalent,
    /// A difference that no larger bound can remove.
    Mismatch,
    /// The sides disagree or were cut short, but only because of bounds.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "equivalent",
            Verdict::Mismatch => "mismatch",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub max_length: usize,
    pub agreed: BTreeSet<Word>,
    pub only_in_grammar: BTreeSet<Word>,
    pub only_in_machine: BTreeSet<Word>,
    /// The grammar search was not cut by any bound.
    pub grammar_exhausted: bool,
    /// No machine run hit its step bound.
    pub machine_exact: bool,
    pub grammar_stats: EnumerationStats,
}

impl EquivalenceReport {
    pub fn conclusive(&self) -> bool {
        self.grammar_exhausted && self.machine_exact
    }

    /// Grammar words are genuine derivations, so they count against the
    /// machine once its runs were exact; machine words count against the
    /// grammar only if the grammar search was exhaustive.
    pub fn verdict(&self) -> Verdict {
        if (!self.only_in_grammar.is_empty() && self.machine_exact)
            || (!self.only_in_machine.is_empty() && self.grammar_exhausted)
        {
            Verdict::Mismatch
        } else if self.conclusive() {
            Verdict::Equivalent
        } else {
            Verdict::Inconclusive
        }
    }
}

pub fn check_equivalence(
    system: &PcgSystem,
    machine: &CounterMachine,
    max_length: usize,
) -> Result<EquivalenceReport, VerifyError> {
    check_equivalence_with(system, machine, &VerifyOptions::new(max_length))
}

/// Enumerates both languages up to `options.max_length` (concurrently) and
/// splits the words into agreed and one-sided sets.
pub fn check_equivalence_with(
    system: &PcgSystem,
    machine: &CounterMachine,
    options: &VerifyOptions,
) -> Result<EquivalenceReport, VerifyError> {
    let symbols = system.symbols();
    let grammar: BTreeSet<String> = symbols.terminals().iter().map(|&t| symbols.name(t).to_string()).collect();
    let machine_alphabet: BTreeSet<String> = machine.alphabet.iter().cloned().collect();
    if grammar != machine_alphabet {
        return Err(VerifyError::AlphabetMismatch {
            grammar: grammar.into_iter().collect(),
            machine: machine_alphabet.into_iter().collect(),
        });
    }

    let (grammar_result, accepted) = std::thread::scope(|scope| {
        let machine_side = scope.spawn(|| {
            machine.enumerate_accepted_from(
                options.max_length,
                options.initial_counters.as_deref(),
                options.machine_steps,
            )
        });
        let grammar_side = enumerate_language_with(system, options.bounds(), options.enumeration);
        (grammar_side, machine_side.join().expect("machine enumeration panicked"))
    });

    let generated: BTreeSet<Word> =
        grammar_result.words.into_iter().filter(|w| w.len() <= options.max_length).collect();
    Ok(EquivalenceReport {
        max_length: options.max_length,
        agreed: generated.intersection(&accepted.words).cloned().collect(),
        only_in_grammar: generated.difference(&accepted.words).cloned().collect(),
        only_in_machine: accepted.words.difference(&generated).cloned().collect(),
        grammar_exhausted: grammar_result.exhausted,
        machine_exact: accepted.exact,
        grammar_stats: grammar_result.stats,
    })
}
