//! Strategies and property checks shared by the engine property tests and
//! the acceptance harness.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use pcgs_core::derivation::{Expansion, Reduction};
use pcgs_core::format::{emit_grammar, parse_grammar_unchecked};
use pcgs_core::{
    enumerate_language_with, CommunicationOutcome, Component, Configuration, Engine, EnumerationBounds,
    EnumerationOptions, Mode, PcgSystem, Production, RewriteOutcome, StepKind, Symbol, SymbolKind, SymbolTable,
};

const NONTERMINALS: [&str; 3] = ["S", "A", "B"];
const TERMINALS: [&str; 2] = ["a", "b"];

/// Symbol indices follow the interning order: nonterminals, terminals, queries.
pub fn symbol_count(n: usize) -> usize {
    NONTERMINALS.len() + TERMINALS.len() + n
}

pub fn string(n: usize, max: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec((0..symbol_count(n)).prop_map(Symbol::from_index), 0..=max)
}

pub fn nonterminal() -> impl Strategy<Value = Symbol> {
    (0..NONTERMINALS.len()).prop_map(Symbol::from_index)
}

pub fn system_with(n: usize) -> impl Strategy<Value = PcgSystem> {
    let component =
        (prop::collection::vec(nonterminal(), 1..=2), prop::collection::vec((nonterminal(), string(n, 3)), 0..=5));
    (prop::collection::vec(component, n), 0..n, any::<bool>()).prop_map(move |(components, master, returning)| {
        let table = SymbolTable::new(&NONTERMINALS, &TERMINALS, n);
        let components = components
            .into_iter()
            .map(|(axiom, rules)| {
                Component::new(axiom, rules.into_iter().map(|(l, r)| Production::new(l, r)).collect())
            })
            .collect();
        let mode = if returning { Mode::Returning } else { Mode::NonReturning };
        PcgSystem::new(table, components, master, mode)
    })
}

pub fn system() -> impl Strategy<Value = PcgSystem> {
    (1usize..=4).prop_flat_map(system_with)
}

pub fn system_and_config() -> impl Strategy<Value = (PcgSystem, Configuration)> {
    (1usize..=4).prop_flat_map(|n| (system_with(n), prop::collection::vec(string(n, 5), n).prop_map(Configuration)))
}

pub fn rewriting_case() -> impl Strategy<Value = (PcgSystem, Configuration)> {
    let plain = NONTERMINALS.len() + TERMINALS.len();
    (1usize..=4).prop_flat_map(move |n| {
        let x = prop::collection::vec((0..plain).prop_map(Symbol::from_index), 0..=5);
        (system_with(n), prop::collection::vec(x, n).prop_map(Configuration))
    })
}

pub fn is_query(system: &PcgSystem, s: Symbol) -> Option<usize> {
    match system.symbols().kind(s) {
        Some(SymbolKind::Query(j)) => Some(j),
        _ => None,
    }
}

pub fn has_query(system: &PcgSystem, x: &[Symbol]) -> bool {
    x.iter().any(|&s| is_query(system, s).is_some())
}

/// Senders whose string is delivered: queried from a string all of whose
/// queries address query-free strings.
pub fn delivered(system: &PcgSystem, c: &Configuration) -> Vec<bool> {
    let free: Vec<bool> = c.strings().iter().map(|x| !has_query(system, x)).collect();
    let mut out = vec![false; c.len()];
    for (i, x) in c.strings().iter().enumerate() {
        if free[i] || !x.iter().all(|&s| is_query(system, s).is_none_or(|j| free[j])) {
            continue;
        }
        for &s in x {
            if let Some(j) = is_query(system, s) {
                out[j] = true;
            }
        }
    }
    out
}

pub fn communication_is_deterministic((system, c): (PcgSystem, Configuration)) -> Result<(), TestCaseError> {
    let engine = Engine::new(&system);
    prop_assume!(engine.classify(&c) == Ok(StepKind::Communication));
    let first = engine.communication_step(&c).unwrap();
    let copy = system.clone();
    prop_assert_eq!(&first, &Engine::new(&copy).communication_step(&c.clone()).unwrap());
    prop_assert_eq!(
        engine.expand(&c).unwrap(),
        match first {
            CommunicationOutcome::Next(n) => Expansion::Successors(vec![n]),
            CommunicationOutcome::Blocked => Expansion::Blocked,
        }
    );
    Ok(())
}

pub fn nonreturning_keeps_query_free_strings((system, c): (PcgSystem, Configuration)) -> Result<(), TestCaseError> {
    let system = system.with_mode(Mode::NonReturning);
    let engine = Engine::new(&system);
    prop_assume!(engine.classify(&c) == Ok(StepKind::Communication));
    if let CommunicationOutcome::Next(next) = engine.communication_step(&c).unwrap() {
        for (before, after) in c.strings().iter().zip(next.strings()) {
            if !has_query(&system, before) {
                prop_assert_eq!(before, after);
            }
        }
    }
    Ok(())
}

pub fn modes_differ_on_delivered_senders((system, c): (PcgSystem, Configuration)) -> Result<(), TestCaseError> {
    let returning = system.clone().with_mode(Mode::Returning);
    let nonreturning = system.with_mode(Mode::NonReturning);
    let r = Engine::new(&returning);
    prop_assume!(r.classify(&c) == Ok(StepKind::Communication));
    let sent = delivered(&returning, &c);
    match (r.communication_step(&c).unwrap(), Engine::new(&nonreturning).communication_step(&c).unwrap()) {
        (CommunicationOutcome::Next(a), CommunicationOutcome::Next(b)) => {
            for j in 0..c.len() {
                if sent[j] {
                    prop_assert_eq!(&a[j], &returning.component(j).axiom);
                    prop_assert_eq!(&b[j], &c[j]);
                } else {
                    prop_assert_eq!(&a[j], &b[j]);
                }
            }
        }
        (CommunicationOutcome::Blocked, CommunicationOutcome::Blocked) => {
            prop_assert!(sent.iter().all(|&s| !s));
        }
        (a, b) => prop_assert!(false, "modes disagree on blocking: {:?} vs {:?}", a, b),
    }
    Ok(())
}

pub fn rewriting_changes_one_occurrence((system, c): (PcgSystem, Configuration)) -> Result<(), TestCaseError> {
    let engine = Engine::new(&system);
    prop_assume!(engine.classify(&c) == Ok(StepKind::Rewriting));
    let terminal = |x: &[Symbol]| x.iter().all(|&s| system.symbols().kind(s) == Some(SymbolKind::Terminal));
    match engine.rewriting_successors(&c).unwrap() {
        RewriteOutcome::Successors(list) => {
            prop_assert!(!list.is_empty());
            for succ in &list {
                for (i, (x, y)) in c.strings().iter().zip(succ.strings()).enumerate() {
                    if terminal(x) {
                        prop_assert_eq!(x, y);
                        continue;
                    }
                    let explained = (0..x.len()).any(|pos| {
                        system.productions_for(i, x[pos]).any(|p| {
                            let mut z = x[..pos].to_vec();
                            z.extend_from_slice(&p.rhs);
                            z.extend_from_slice(&x[pos + 1..]);
                            &z == y
                        })
                    });
                    prop_assert!(explained, "component {} changed by more than one rewrite", i);
                }
            }
            let expected: usize = c
                .strings()
                .iter()
                .enumerate()
                .map(|(i, x)| if terminal(x) { 1 } else { engine.component_rewrites(i, x).len() })
                .product();
            prop_assert_eq!(list.len(), expected);
        }
        RewriteOutcome::Blocked { component } => {
            prop_assert!(!terminal(&c[component]));
            prop_assert!(engine.component_rewrites(component, &c[component]).is_empty());
        }
    }
    Ok(())
}

/// Every string gets a query to the next component, so no query can be answered.
pub fn circular_queries_block(((system, c), shift): ((PcgSystem, Configuration), usize)) -> Result<(), TestCaseError> {
    let n = c.len();
    let symbols = system.symbols();
    let cyclic = Configuration(
        c.strings()
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let mut y = x.clone();
                let at = (i + shift) % (y.len() + 1);
                y.insert(at, symbols.query((i + 1 + shift) % n).unwrap());
                y
            })
            .collect(),
    );
    let engine = Engine::new(&system);
    prop_assert_eq!(engine.classify(&cyclic), Ok(StepKind::Communication));
    prop_assert_eq!(engine.communication_step(&cyclic), Ok(CommunicationOutcome::Blocked));
    prop_assert_eq!(engine.expand(&cyclic), Ok(Expansion::Blocked));
    Ok(())
}

pub fn reductions_preserve_bounded_languages(system: PcgSystem) -> Result<(), TestCaseError> {
    let bounds = EnumerationBounds::new(8, 200_000, 10);
    let run =
        |reduction| enumerate_language_with(&system, bounds, EnumerationOptions { reduction, ..Default::default() });
    let plain = run(Reduction::None);
    prop_assume!(plain.stats.pruned_budget == 0);
    for reduction in [Reduction::PrivateErasures, Reduction::Full] {
        let reduced = run(reduction);
        prop_assert_eq!(&reduced.words, &plain.words);
        // merged or dead successors at the depth limit are not truncation
        prop_assert!(!plain.exhausted || reduced.exhausted);
    }
    Ok(())
}

pub fn text_format_round_trips(system: PcgSystem) -> Result<(), TestCaseError> {
    let text = emit_grammar(&system);
    let (parsed, _) = parse_grammar_unchecked(&text).unwrap();
    prop_assert_eq!(parsed, system);
    Ok(())
}

pub const WORKER_SEEDS: u8 = 10;

/// Enumerates a seeded random system with 1, 2, 4 and 8 workers.
pub fn worker_count_independent(seed: u8) -> Result<(), String> {
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]));
    let system = system().new_tree(&mut runner).unwrap().current();
    let bounds = EnumerationBounds::new(12, 20_000, 12);
    let run = |workers| {
        enumerate_language_with(&system, bounds, EnumerationOptions { workers, witnesses: true, ..Default::default() })
    };
    let sequential = run(1);
    for workers in [2, 4, 8] {
        if run(workers) != sequential {
            return Err(format!("seed {seed}: {workers} workers differ from one"));
        }
    }
    Ok(())
}

/// Runs `check` on `cases` generated inputs with a fixed seed.
pub fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let config = Config { cases, max_global_rejects: cases * 50, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]));
    runner.run(&strategy, check).map(|()| cases).map_err(|e| e.to_string())
}
