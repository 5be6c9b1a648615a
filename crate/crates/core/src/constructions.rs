//! Compilers from counter machines to non-returning PC grammar systems.
//!
//! Both compilers represent each machine transition by a nonterminal `tK`
//! (the K-th rule) and a counter value `v` by `v` copies of `A` in a
//! dedicated component. The component order is
//! `sel, gen, c_1, ..., c_n, ch_1, ch_2`; `gen` is the master.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::grammar::{query_name, Component, Mode, PcgSystem, Production, SymbolTable};
use crate::machines::{Action, CounterMachine, CounterRule, Guard, MachineViolation, Read};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("expected a machine with {expected} counters, found {found}")]
    CounterCount { expected: usize, found: usize },
    #[error("rule `{0}` enters the final state without empty, unchanged counters")]
    NormalForm(String),
    #[error("rule `{0}` reads the input blank, which the grammar cannot emit")]
    BlankRead(String),
    #[error("name `{0}` is both an input symbol and a generated nonterminal")]
    NameClash(String),
    #[error("invalid machine: {0}")]
    InvalidMachine(MachineViolation),
    #[error("sigma is undefined for ({0}, {1})")]
    SigmaUndefined(Action, Guard),
}

/// The partial map giving the `A`s a counter component re-emits after one
/// transition: `σ(+1,B)=AA`, `σ(0,B)=A`, `σ(-1,B)=λ`, `σ(+1,Z)=A`,
/// `σ(0,Z)=λ`. Returns the number of `A`s. A `B` guard means one `A` was
/// consumed by the non-emptiness check, hence the extra `A`.
pub fn sigma(action: Action, store: Guard) -> Result<usize, CompileError> {
    match (action, store) {
        (Action::Inc, Guard::B) => Ok(2),
        (Action::Keep, Guard::B) => Ok(1),
        (Action::Dec, Guard::B) => Ok(0),
        (Action::Inc, Guard::Z) => Ok(1),
        (Action::Keep, Guard::Z) => Ok(0),
        (Action::Dec, Guard::Z) => Err(CompileError::SigmaUndefined(action, store)),
    }
}

/// View of one machine rule as the nonterminal `[q, x, c_1..c_n, q', e_1..e_n]`.
#[derive(Clone, Copy, Debug)]
pub struct TransitionSymbol<'a> {
    machine: &'a CounterMachine,
    index: usize,
}

impl<'a> TransitionSymbol<'a> {
    pub fn new(machine: &'a CounterMachine, index: usize) -> Self {
        TransitionSymbol { machine, index }
    }

    pub fn rule(&self) -> &'a CounterRule {
        &self.machine.rules[self.index]
    }

    /// Flattened nonterminal name, `t1`, `t2`, ...
    pub fn name(&self) -> String {
        format!("t{}", self.index + 1)
    }

    pub fn state(&self) -> usize {
        self.rule().from
    }

    pub fn read(&self) -> Read {
        self.rule().read
    }

    pub fn next_state(&self) -> usize {
        self.rule().to
    }

    pub fn store(&self, counter: usize) -> Guard {
        self.rule().guards[counter]
    }

    pub fn action(&self, counter: usize) -> Action {
        self.rule().actions[counter]
    }

    /// Rendering with state and symbol names, e.g. `[q0,a,Z,Z,q1,+1,0]`.
    pub fn bracketed(&self) -> String {
        let m = self.machine;
        let r = self.rule();
        let read = match r.read {
            Read::Symbol(x) => m.alphabet[x].clone(),
            Read::Blank => "B".into(),
            Read::Lambda => "eps".into(),
        };
        let mut parts = vec![m.states[r.from].clone(), read];
        parts.extend(r.guards.iter().map(ToString::to_string));
        parts.push(m.states[r.to].clone());
        parts.extend(r.actions.iter().map(ToString::to_string));
        format!("[{}]", parts.join(","))
    }
}

pub fn transitions(machine: &CounterMachine) -> impl Iterator<Item = TransitionSymbol<'_>> {
    (0..machine.rules.len()).map(move |k| TransitionSymbol::new(machine, k))
}

/// True iff every rule entering the final state reads `Z` on all counters
/// and leaves them unchanged.
pub fn validate_final_normal_form(cm: &CounterMachine) -> bool {
    cm.rules
        .iter()
        .filter(|r| r.to == cm.final_state)
        .all(|r| r.guards.iter().all(|g| *g == Guard::Z) && r.actions.iter().all(|a| *a == Action::Keep))
}

/// Component positions (0-based) for a machine with `counters` counters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub counters: usize,
}

impl Layout {
    pub const SEL: usize = 0;
    pub const GEN: usize = 1;

    pub fn counter(&self, i: usize) -> usize {
        2 + i
    }

    pub fn ch1(&self) -> usize {
        2 + self.counters
    }

    pub fn ch2(&self) -> usize {
        3 + self.counters
    }

    pub fn components(&self) -> usize {
        4 + self.counters
    }

    pub fn component_name(&self, index: usize) -> String {
        match index {
            0 => "sel".into(),
            1 => "gen".into(),
            i if i == self.ch1() => "ch1".into(),
            i if i == self.ch2() => "ch2".into(),
            i => format!("c{}", i - 1),
        }
    }
}

// Fixed nonterminals shared by both constructions.
const S: &str = "S";
const A: &str = "A";
const Z: &str = "Z";
const F: &str = "F";
const F1: &str = "F'";
const F2: &str = "F''";
const F3: &str = "F'''";
const C1: &str = "C1";
const C2: &str = "C2";
const M0: &str = "M0";
const M1: &str = "M1";
const M2: &str = "M2";
const FIXED: [&str; 12] = [S, A, Z, F, F1, F2, F3, C1, C2, M0, M1, M2];

/// Collects named productions and declares symbols in first-use order.
struct Builder {
    nonterminals: Vec<String>,
    declared: HashSet<String>,
    components: Vec<Vec<Production>>,
    names: Vec<Vec<(String, Vec<String>)>>,
    seen: Vec<HashSet<(String, Vec<String>)>>,
}

impl Builder {
    fn new(components: usize) -> Self {
        Builder {
            nonterminals: Vec::new(),
            declared: HashSet::new(),
            components: vec![Vec::new(); components],
            names: vec![Vec::new(); components],
            seen: vec![HashSet::new(); components],
        }
    }

    fn declare(&mut self, name: impl Into<String>) {
        let name = name.into();
        if self.declared.insert(name.clone()) {
            self.nonterminals.push(name);
        }
    }

    fn rule<L: Into<String>>(&mut self, component: usize, lhs: L, rhs: &[&str]) {
        let lhs = lhs.into();
        let rhs: Vec<String> = rhs.iter().map(|s| s.to_string()).collect();
        if self.seen[component].insert((lhs.clone(), rhs.clone())) {
            self.names[component].push((lhs, rhs));
        }
    }

    fn build(mut self, terminals: &[String], master: usize) -> Result<PcgSystem, CompileError> {
        for t in terminals {
            if self.declared.contains(t) || crate::grammar::is_query_name(t) {
                return Err(CompileError::NameClash(t.clone()));
            }
        }
        let n = self.names.len();
        let table = SymbolTable::new(&self.nonterminals, terminals, n);
        let lookup =
            |name: &str| table.lookup(name).unwrap_or_else(|| panic!("construction used undeclared symbol `{name}`"));
        for (c, rules) in self.names.iter().enumerate() {
            for (lhs, rhs) in rules {
                self.components[c].push(Production::new(lookup(lhs), rhs.iter().map(|s| lookup(s)).collect()));
            }
        }
        let start = lookup(S);
        let components = self.components.into_iter().map(|p| Component::new(vec![start], p)).collect();
        Ok(PcgSystem::new(table, components, master, Mode::NonReturning))
    }
}

fn check_machine(cm: &CounterMachine) -> Result<(), CompileError> {
    if let Some(v) = cm.validate().into_iter().next() {
        return Err(CompileError::InvalidMachine(v));
    }
    for r in &cm.rules {
        if r.to == cm.final_state
            && !(r.guards.iter().all(|g| *g == Guard::Z) && r.actions.iter().all(|a| *a == Action::Keep))
        {
            return Err(CompileError::NormalForm(cm.render_rule(r)));
        }
        if r.read == Read::Blank {
            return Err(CompileError::BlankRead(cm.render_rule(r)));
        }
    }
    Ok(())
}

fn emitted<'a>(cm: &'a CounterMachine, alpha: &TransitionSymbol) -> Vec<&'a str> {
    match alpha.read() {
        Read::Symbol(x) => vec![cm.alphabet[x].as_str(), C1],
        _ => vec![C1],
    }
}

fn d1(t: &str) -> String {
    format!("D1[{t}]")
}
fn d2(t: &str) -> String {
    format!("D2[{t}]")
}

/// Two-counter machine to six-component non-returning system, transcribing
/// every production family of the construction; the selector's
/// `D2[α] -> β` family is quadratic in the number of transitions.
///
/// The machine must enter its final state only with empty, unchanged
/// counters (see [`validate_final_normal_form`]) and must not read the input
/// blank.
pub fn compile_two_counter(cm: &CounterMachine) -> Result<PcgSystem, CompileError> {
    if cm.counters != 2 {
        return Err(CompileError::CounterCount { expected: 2, found: cm.counters });
    }
    check_machine(cm)?;
    let layout = Layout { counters: 2 };
    let q = |i: usize| query_name(i);
    let (sel, gen, ch1, ch2) = (Layout::SEL, Layout::GEN, layout.ch1(), layout.ch2());
    let (q_sel, q_ch1, q_ch2) = (q(sel), q(ch1), q(ch2));
    let q_c = [q(layout.counter(0)), q(layout.counter(1))];

    let alphas: Vec<TransitionSymbol> = transitions(cm).collect();
    let mut b = Builder::new(layout.components());
    for alpha in &alphas {
        b.declare(alpha.name());
    }
    for name in FIXED {
        b.declare(name);
    }
    for alpha in &alphas {
        let t = alpha.name();
        for family in ["D1", "D2", "E1", "E2", "H1", "H2"] {
            b.declare(format!("{family}[{t}]"));
        }
    }

    // sel
    for alpha in alphas.iter().filter(|a| a.state() == cm.start) {
        b.rule(sel, S, &[&alpha.name()]);
    }
    for alpha in &alphas {
        let t = alpha.name();
        b.rule(sel, t.clone(), &[&d1(&t)]);
        b.rule(sel, d1(&t), &[&d2(&t)]);
    }
    for alpha in &alphas {
        for beta in alphas.iter().filter(|beta| beta.state() == alpha.next_state()) {
            b.rule(sel, d2(&alpha.name()), &[&beta.name()]);
        }
    }
    for alpha in alphas.iter().filter(|a| a.next_state() == cm.final_state) {
        b.rule(sel, d2(&alpha.name()), &[F]);
    }
    b.rule(sel, F, &[F]);

    // gen
    b.rule(gen, S, &[&q_sel]);
    b.rule(gen, C1, &[C2]);
    b.rule(gen, C2, &[&q_sel]);
    b.rule(gen, F, &[F1]);
    b.rule(gen, F1, &[&q_ch1, &q_c[0], &q_c[1]]);
    for alpha in &alphas {
        b.rule(gen, alpha.name(), &emitted(cm, alpha));
    }
    for alpha in &alphas {
        b.rule(gen, format!("H2[{}]", alpha.name()), &[]);
    }
    for name in [M1, Z, F2, F3] {
        b.rule(gen, name, &[]);
    }

    // c_1, c_2
    for i in 0..2 {
        let c = layout.counter(i);
        b.rule(c, S, &[&q_sel, Z]);
        b.rule(c, A, &[&q_ch2]);
        b.rule(c, F, &[F2]);
        b.rule(c, F2, &[F2]);
        for alpha in &alphas {
            let t = alpha.name();
            let store = alpha.store(i);
            let y = sigma(alpha.action(i), store)?;
            let mut tail = vec![q_sel.as_str()];
            tail.extend(std::iter::repeat_n(A, y));
            match store {
                Guard::B => {
                    b.rule(c, t.clone(), &[&q_sel]);
                    b.rule(c, d2(&t), &tail);
                }
                Guard::Z => {
                    let (h1, h2) = (format!("H1[{t}]"), format!("H2[{t}]"));
                    b.rule(c, t.clone(), &[&h1]);
                    b.rule(c, h1, &[&h2]);
                    b.rule(c, h2, &tail);
                }
            }
        }
    }

    // ch1
    b.rule(ch1, S, &[&q_sel]);
    for alpha in &alphas {
        let t = alpha.name();
        b.rule(ch1, t.clone(), &[&format!("E1[{t}]")]);
        b.rule(ch1, format!("E2[{t}]"), &[&q_sel]);
    }
    for alpha in &alphas {
        let t = alpha.name();
        let e2 = format!("E2[{t}]");
        let mut rhs = vec![e2.as_str()];
        for (i, qc) in q_c.iter().enumerate() {
            if alpha.store(i) == Guard::Z {
                rhs.push(qc);
            }
        }
        b.rule(ch1, format!("E1[{t}]"), &rhs);
    }
    b.rule(ch1, F, &[F3]);
    b.rule(ch1, F3, &[F3]);

    // ch2
    b.rule(ch2, S, &[M0]);
    b.rule(ch2, M0, &[M1]);
    b.rule(ch2, M1, &[M2]);
    b.rule(ch2, M2, &[M0]);

    let mut system = b.build(&cm.alphabet, gen)?;
    system.set_metadata("construction", "two-counter");
    system.set_metadata("transitions", alphas.len().to_string());
    system.set_metadata("counters", "2");
    Ok(system)
}

/// n-counter machine to (n+4)-component non-returning system whose size is
/// linear in the number of transitions `m`.
///
/// Differences from [`compile_two_counter`], all keeping three rewriting steps
/// per simulated transition:
///
/// * the selector goes `α -> D1[α] -> St[q'] -> β` through one symbol per
///   state, so choosing the next transition costs `m` rules instead of one
///   per compatible pair;
/// * a counter component whose transition needs a positive counter queries
///   the selector in the first step (receiving `D1[α]`) and rewrites one `A`
///   in the second, when the helper `ch_2` holds `M2`; the master erases
///   `M2` instead of `M1`;
/// * the zero-check chains use `H1[k]`, `H2[k]` indexed by the number `k` of
///   re-emitted `A`s, and `E1[p]`, `E2` indexed by the guard pattern `p`.
///
/// The code counter's component can be given a program word `A^k S` with
/// [`apply_program`].
pub fn compile_universal(cm: &CounterMachine) -> Result<PcgSystem, CompileError> {
    check_machine(cm)?;
    let n = cm.counters;
    let layout = Layout { counters: n };
    let q = |i: usize| query_name(i);
    let (sel, gen, ch1, ch2) = (Layout::SEL, Layout::GEN, layout.ch1(), layout.ch2());
    let (q_sel, q_ch1, q_ch2) = (q(sel), q(ch1), q(ch2));
    let q_c: Vec<String> = (0..n).map(|i| q(layout.counter(i))).collect();
    let st = |state: usize| format!("St[{}]", cm.states[state]);
    let pattern = |alpha: &TransitionSymbol| {
        let p: String = alpha.rule().guards.iter().map(ToString::to_string).collect();
        format!("E1[{p}]")
    };

    let alphas: Vec<TransitionSymbol> = transitions(cm).collect();
    let mut b = Builder::new(layout.components());
    for alpha in &alphas {
        b.declare(alpha.name());
    }
    for name in FIXED {
        b.declare(name);
    }
    for alpha in &alphas {
        b.declare(d1(&alpha.name()));
    }
    let states: BTreeSet<usize> = alphas.iter().flat_map(|a| [a.state(), a.next_state()]).collect();
    for &s in &states {
        b.declare(st(s));
    }
    for alpha in &alphas {
        b.declare(pattern(alpha));
    }
    b.declare("E2");
    let mut h_used = BTreeSet::new();
    for alpha in &alphas {
        for i in 0..n {
            if alpha.store(i) == Guard::Z {
                h_used.insert(sigma(alpha.action(i), Guard::Z)?);
            }
        }
    }
    for &k in &h_used {
        b.declare(format!("H1[{k}]"));
        b.declare(format!("H2[{k}]"));
    }

    // sel
    for alpha in alphas.iter().filter(|a| a.state() == cm.start) {
        b.rule(sel, S, &[&alpha.name()]);
    }
    for alpha in &alphas {
        let t = alpha.name();
        b.rule(sel, t.clone(), &[&d1(&t)]);
        b.rule(sel, d1(&t), &[&st(alpha.next_state())]);
    }
    for beta in &alphas {
        b.rule(sel, st(beta.state()), &[&beta.name()]);
    }
    if states.contains(&cm.final_state) {
        b.rule(sel, st(cm.final_state), &[F]);
    }
    b.rule(sel, F, &[F]);

    // gen
    b.rule(gen, S, &[&q_sel]);
    b.rule(gen, C1, &[C2]);
    b.rule(gen, C2, &[&q_sel]);
    b.rule(gen, F, &[F1]);
    let mut finish = vec![q_ch1.as_str()];
    finish.extend(q_c.iter().map(String::as_str));
    b.rule(gen, F1, &finish);
    for alpha in &alphas {
        b.rule(gen, alpha.name(), &emitted(cm, alpha));
    }
    for &k in &h_used {
        b.rule(gen, format!("H2[{k}]"), &[]);
    }
    for name in [M2, Z, F2, F3] {
        b.rule(gen, name, &[]);
    }

    // c_i
    for i in 0..n {
        let c = layout.counter(i);
        b.rule(c, S, &[&q_sel, Z]);
        b.rule(c, A, &[&q_ch2]);
        b.rule(c, F, &[F2]);
        b.rule(c, F2, &[F2]);
        for alpha in &alphas {
            let t = alpha.name();
            let store = alpha.store(i);
            let y = sigma(alpha.action(i), store)?;
            let mut tail = vec![q_sel.as_str()];
            tail.extend(std::iter::repeat_n(A, y));
            match store {
                Guard::B => {
                    b.rule(c, t.clone(), &[&q_sel]);
                    b.rule(c, d1(&t), &tail);
                }
                Guard::Z => {
                    let (h1, h2) = (format!("H1[{y}]"), format!("H2[{y}]"));
                    b.rule(c, t.clone(), &[&h1]);
                    b.rule(c, h1, &[&h2]);
                    b.rule(c, h2, &tail);
                }
            }
        }
    }

    // ch1
    b.rule(ch1, S, &[&q_sel]);
    for alpha in &alphas {
        b.rule(ch1, alpha.name(), &[&pattern(alpha)]);
    }
    for alpha in &alphas {
        let mut rhs = vec!["E2"];
        for (i, qc) in q_c.iter().enumerate() {
            if alpha.store(i) == Guard::Z {
                rhs.push(qc);
            }
        }
        b.rule(ch1, pattern(alpha), &rhs);
    }
    b.rule(ch1, "E2", &[&q_sel]);
    b.rule(ch1, F, &[F3]);
    b.rule(ch1, F3, &[F3]);

    // ch2
    b.rule(ch2, S, &[M0]);
    b.rule(ch2, M0, &[M1]);
    b.rule(ch2, M1, &[M2]);
    b.rule(ch2, M2, &[M0]);

    let mut system = b.build(&cm.alphabet, gen)?;
    system.set_metadata("construction", "universal");
    system.set_metadata("transitions", alphas.len().to_string());
    system.set_metadata("counters", n.to_string());
    Ok(system)
}

/// The program word `A^code S`, as symbol names.
pub fn build_universal_axiom(code: usize) -> Vec<String> {
    let mut word = vec![A.to_string(); code];
    word.push(S.to_string());
    word
}

/// Initialises the component of counter `code_counter` (0-based) with
/// `A^code S`. Records the code in the system metadata.
pub fn apply_program(system: &mut PcgSystem, code_counter: usize, code: usize) -> Result<(), CompileError> {
    let counters: usize =
        system.metadata().get("counters").and_then(|c| c.parse().ok()).unwrap_or(system.len().saturating_sub(4));
    if code_counter >= counters {
        return Err(CompileError::CounterCount { expected: code_counter + 1, found: counters });
    }
    let symbols = system.symbols();
    let word = build_universal_axiom(code)
        .iter()
        .map(|name| symbols.lookup(name).expect("compiled systems declare A and S"))
        .collect();
    let component = Layout { counters }.counter(code_counter);
    system.set_axiom(component, word);
    system.set_metadata("code_counter", (code_counter + 1).to_string());
    system.set_metadata("code", code.to_string());
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeReport {
    pub components: usize,
    pub rules: usize,
    pub nonterminals: usize,
    pub queries: usize,
}

impl fmt::Display for SizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "components={} rules={} nonterminals={} queries={}",
            self.components, self.rules, self.nonterminals, self.queries
        )
    }
}

pub fn size_report(system: &PcgSystem) -> SizeReport {
    SizeReport {
        components: system.len(),
        rules: system.rule_count(),
        nonterminals: system.symbols().nonterminals().len(),
        queries: system.symbols().queries().len(),
    }
}

/// Size bounds for a universal system simulating a machine with `m` transitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniversalBounds {
    pub transitions: usize,
    pub components: usize,
    pub rules: usize,
    pub nonterminals: usize,
}

impl UniversalBounds {
    /// At most 12 components, `48m + 51` rules and `4m + 12` nonterminals.
    pub fn for_transitions(m: usize) -> Self {
        UniversalBounds { transitions: m, components: 12, rules: 48 * m + 51, nonterminals: 4 * m + 12 }
    }

    pub fn admits(&self, report: &SizeReport) -> bool {
        report.components <= self.components && report.rules <= self.rules && report.nonterminals <= self.nonterminals
    }
}

/// `23·2^8 + 3`: rules of the 8-counter acceptor built around a 21-instruction
/// register machine.
pub const UNIVERSAL_SHAPE_TRANSITIONS: usize = 23 * 256 + 3;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_table() {
        assert_eq!(sigma(Action::Inc, Guard::B), Ok(2));
        assert_eq!(sigma(Action::Keep, Guard::B), Ok(1));
        assert_eq!(sigma(Action::Dec, Guard::B), Ok(0));
        assert_eq!(sigma(Action::Inc, Guard::Z), Ok(1));
        assert_eq!(sigma(Action::Keep, Guard::Z), Ok(0));
        assert!(sigma(Action::Dec, Guard::Z).is_err());
    }

    fn machine(rules: Vec<CounterRule>) -> CounterMachine {
        CounterMachine {
            alphabet: vec!["a".into()],
            states: vec!["q0".into(), "q".into(), "qF".into()],
            start: 0,
            final_state: 2,
            counters: 2,
            rules,
        }
    }

    fn rule(from: usize, guards: [Guard; 2], to: usize, actions: [Action; 2]) -> CounterRule {
        CounterRule { from, read: Read::Lambda, guards: guards.to_vec(), to, actions: actions.to_vec() }
    }

    #[test]
    fn normal_form_check() {
        use Action::Keep;
        use Guard::{B, Z};
        assert!(validate_final_normal_form(&machine(vec![])));
        assert!(validate_final_normal_form(&machine(vec![rule(1, [Z, Z], 2, [Keep, Keep])])));
        assert!(!validate_final_normal_form(&machine(vec![rule(1, [B, Z], 2, [Keep, Keep])])));
        assert!(!validate_final_normal_form(&machine(vec![rule(1, [Z, Z], 2, [Action::Inc, Keep])])));
    }

    #[test]
    fn two_counter_rejects_bad_input() {
        use Action::Keep;
        use Guard::{B, Z};
        let bad = machine(vec![rule(1, [B, Z], 2, [Keep, Keep])]);
        assert!(matches!(compile_two_counter(&bad), Err(CompileError::NormalForm(_))));
        let mut three = machine(vec![]);
        three.counters = 3;
        assert_eq!(compile_two_counter(&three), Err(CompileError::CounterCount { expected: 2, found: 3 }));
        let mut clash = machine(vec![]);
        clash.alphabet = vec!["A".into()];
        assert_eq!(compile_two_counter(&clash), Err(CompileError::NameClash("A".into())));
    }

    #[test]
    fn two_counter_nonterminal_count() {
        use Action::{Dec, Inc, Keep};
        use Guard::{B, Z};
        let cm = machine(vec![
            rule(0, [Z, Z], 1, [Inc, Keep]),
            rule(1, [B, Z], 1, [Dec, Inc]),
            rule(1, [Z, B], 1, [Keep, Dec]),
            rule(1, [Z, Z], 2, [Keep, Keep]),
        ]);
        let system = compile_two_counter(&cm).unwrap();
        let t = cm.rules.len();
        let mut expected: std::collections::BTreeSet<String> = FIXED.iter().map(|s| s.to_string()).collect();
        for alpha in transitions(&cm) {
            expected.insert(alpha.name());
            for family in ["D1", "D2", "E1", "E2", "H1", "H2"] {
                expected.insert(format!("{family}[{}]", alpha.name()));
            }
        }
        let table = system.symbols();
        let declared = table.nonterminals().iter().map(|&n| table.name(n).to_string()).collect();
        assert_eq!(expected, declared);
        assert_eq!(size_report(&system).nonterminals, 7 * t + 12);
    }

    #[test]
    fn universal_axiom_word() {
        assert_eq!(build_universal_axiom(0), ["S"]);
        assert_eq!(build_universal_axiom(3), ["A", "A", "A", "S"]);
    }

    #[test]
    fn bounds_for_the_shape_acceptor() {
        assert_eq!(UNIVERSAL_SHAPE_TRANSITIONS, 5891);
        let b = UniversalBounds::for_transitions(UNIVERSAL_SHAPE_TRANSITIONS);
        assert_eq!((b.rules, b.nonterminals), (282_819, 23_576));
    }

    #[test]
    fn layout_names() {
        let l = Layout { counters: 2 };
        let names: Vec<String> = (0..l.components()).map(|i| l.component_name(i)).collect();
        assert_eq!(names, ["sel", "gen", "c1", "c2", "ch1", "ch2"]);
    }
}
