//! Line-oriented text formats for grammar systems, counter machines and
//! register machines. `#` starts a comment; blank lines are ignored.
//!
//! Grammar system:
//!
//! ```text
//! pcgs nonreturning master=1
//! meta note=anything
//! nonterminals: S A
//! terminals: a
//! component 1:
//!   axiom: S
//!   S -> a Q2
//! component 2:
//!   axiom: S
//!   S -> A
//!   A -> <eps>
//! ```
//!
//! `Q1..Qn` are the query symbols and are never declared. Counter machine:
//!
//! ```text
//! counters 2
//! alphabet: a b
//! states: q0 q1 qF
//! start: q0
//! final: qF
//! (q0, a, Z, Z) -> (q1, +1, 0)
//! (q1, eps, B, Z) -> (qF, -1, 0)
//! ```
//!
//! Register machine (registers are numbered from 1):
//!
//! ```text
//! registers 2
//! labels: l0 l1 lh
//! start: l0
//! halt: lh
//! input: r1
//! output: r2
//! l0: CHECKSUB r1 -> l1, lh
//! l1: ADD r2 -> l0
//! lh: HALT
//! ```

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::grammar::{validate, Component, Mode, PcgSystem, Production, Sentential, SymbolTable, Violation};
use crate::machines::{Action, CounterMachine, CounterRule, Guard, MachineViolation, Read};
use crate::register::{Instruction, RegisterError, RegisterMachine};
use crate::EPSILON;

/// A validation problem, with the source line it comes from when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for Located {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{}", render_all(.0))]
    Invalid(Vec<Located>),
}

fn render_all(items: &[Located]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let (k, v) = line.split_once(':')?;
    (k.trim() == key).then(|| v.trim())
}

fn names(list: &str) -> Vec<String> {
    list.split_whitespace().map(str::to_string).collect()
}

fn sentential(list: &str) -> Vec<&str> {
    let tokens: Vec<&str> = list.split_whitespace().collect();
    if tokens == [EPSILON] {
        Vec::new()
    } else {
        tokens
    }
}

struct RawComponent {
    header: usize,
    axiom: Option<(usize, Vec<String>)>,
    rules: Vec<(usize, String, Vec<String>)>,
}

/// Parses and validates a grammar system.
pub fn parse_grammar(text: &str) -> Result<PcgSystem, FormatError> {
    let (system, locate) = parse_grammar_unchecked(text)?;
    let report = validate(&system);
    if report.is_empty() {
        Ok(system)
    } else {
        Err(FormatError::Invalid(report.iter().map(|v| locate.locate(v)).collect()))
    }
}

/// Maps validation findings back to source lines.
#[derive(Clone, Debug, Default)]
pub struct GrammarLines {
    header: Option<usize>,
    declarations: Option<usize>,
    components: Vec<usize>,
    axioms: Vec<Option<usize>>,
    rules: Vec<Vec<usize>>,
}

impl GrammarLines {
    pub fn locate(&self, v: &Violation) -> Located {
        let line = match *v {
            Violation::NoComponents | Violation::MasterOutOfRange { .. } | Violation::QueryCountMismatch { .. } => {
                self.header
            }
            Violation::AlphabetsNotDisjoint { .. } => self.declarations,
            Violation::UndefinedSymbol { component, rule: None }
            | Violation::EmptyAxiom { component }
            | Violation::AxiomNotNonterminal { component, .. } => {
                self.axioms.get(component).copied().flatten().or(self.components.get(component).copied())
            }
            Violation::UndefinedSymbol { component, rule: Some(rule) }
            | Violation::QuerySymbolOnLhs { component, rule }
            | Violation::TerminalOnLhs { component, rule } => {
                self.rules.get(component).and_then(|r| r.get(rule)).copied()
            }
        };
        Located { line, message: v.to_string() }
    }
}

/// Parses without structural validation; syntax and undeclared names are
/// still errors.
pub fn parse_grammar_unchecked(text: &str) -> Result<(PcgSystem, GrammarLines), FormatError> {
    let mut header: Option<(usize, Mode, usize)> = None;
    let mut metadata = Vec::new();
    let mut nonterminals: Option<Vec<String>> = None;
    let mut terminals: Option<Vec<String>> = None;
    let mut decl_line = None;
    let mut raw: Vec<RawComponent> = Vec::new();

    for (n, line) in lines(text) {
        if header.is_none() {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("pcgs") {
                return Err(syntax(n, "expected header `pcgs <returning|nonreturning> master=<i>`"));
            }
            let mode = match parts.next() {
                Some("returning") => Mode::Returning,
                Some("nonreturning") => Mode::NonReturning,
                other => return Err(syntax(n, format!("unknown mode `{}`", other.unwrap_or("")))),
            };
            let master = parts
                .next()
                .and_then(|p| p.strip_prefix("master="))
                .and_then(|m| m.parse::<usize>().ok())
                .filter(|&m| m >= 1)
                .ok_or_else(|| syntax(n, "expected `master=<i>` with i >= 1"))?;
            if let Some(extra) = parts.next() {
                return Err(syntax(n, format!("unexpected `{extra}` in header")));
            }
            header = Some((n, mode, master - 1));
            continue;
        }
        if let Some(rest) = line.strip_prefix("meta ") {
            let (k, v) = rest.split_once('=').ok_or_else(|| syntax(n, "expected `meta key=value`"))?;
            metadata.push((k.trim().to_string(), v.trim().to_string()));
        } else if let Some(list) = field(line, "nonterminals") {
            nonterminals = Some(names(list));
            decl_line.get_or_insert(n);
        } else if let Some(list) = field(line, "terminals") {
            terminals = Some(names(list));
            decl_line.get_or_insert(n);
        } else if let Some(rest) = line.strip_prefix("component ") {
            let index = rest
                .trim()
                .strip_suffix(':')
                .and_then(|i| i.trim().parse::<usize>().ok())
                .ok_or_else(|| syntax(n, "expected `component <i>:`"))?;
            if index != raw.len() + 1 {
                return Err(syntax(n, format!("expected component {}, found {index}", raw.len() + 1)));
            }
            raw.push(RawComponent { header: n, axiom: None, rules: Vec::new() });
        } else if let Some(word) = field(line, "axiom") {
            let current = raw.last_mut().ok_or_else(|| syntax(n, "axiom outside a component"))?;
            if current.axiom.is_some() {
                return Err(syntax(n, "second axiom for this component"));
            }
            current.axiom = Some((n, sentential(word).into_iter().map(str::to_string).collect()));
        } else if let Some((lhs, rhs)) = line.split_once("->") {
            let current = raw.last_mut().ok_or_else(|| syntax(n, "production outside a component"))?;
            let lhs_tokens: Vec<&str> = lhs.split_whitespace().collect();
            let [lhs] = lhs_tokens[..] else {
                return Err(syntax(n, "production must have exactly one lhs symbol"));
            };
            current.rules.push((n, lhs.to_string(), sentential(rhs).into_iter().map(str::to_string).collect()));
        } else {
            return Err(syntax(n, format!("cannot parse `{line}`")));
        }
    }

    let (header_line, mode, master) = header.ok_or_else(|| syntax(1, "missing `pcgs` header"))?;
    let nonterminals = nonterminals.ok_or_else(|| syntax(header_line, "missing `nonterminals:` line"))?;
    let terminals = terminals.ok_or_else(|| syntax(header_line, "missing `terminals:` line"))?;
    let table = SymbolTable::new(&nonterminals, &terminals, raw.len());
    let resolve = |line: usize, tokens: &[String]| -> Result<Sentential, FormatError> {
        tokens.iter().map(|t| table.lookup(t).ok_or_else(|| syntax(line, format!("undeclared symbol `{t}`")))).collect()
    };

    let mut map = GrammarLines { header: Some(header_line), declarations: decl_line, ..Default::default() };
    let mut components = Vec::new();
    for c in &raw {
        let (axiom_line, axiom) = match &c.axiom {
            Some((l, a)) => (Some(*l), resolve(*l, a)?),
            None => return Err(syntax(c.header, "component has no `axiom:` line")),
        };
        let mut productions = Vec::new();
        for (l, lhs, rhs) in &c.rules {
            let lhs = resolve(*l, std::slice::from_ref(lhs))?[0];
            productions.push(Production::new(lhs, resolve(*l, rhs)?));
        }
        map.components.push(c.header);
        map.axioms.push(axiom_line);
        map.rules.push(c.rules.iter().map(|r| r.0).collect());
        components.push(Component::new(axiom, productions));
    }
    let mut system = PcgSystem::new(table, components, master, mode);
    for (k, v) in metadata {
        system.set_metadata(k, v);
    }
    Ok((system, map))
}

fn render_word(table: &SymbolTable, word: &[crate::grammar::Symbol]) -> String {
    if word.is_empty() {
        EPSILON.to_string()
    } else {
        word.iter().map(|&s| table.name(s)).collect::<Vec<_>>().join(" ")
    }
}

/// Canonical text; `parse_grammar_unchecked(&emit_grammar(s))` gives back `s`.
pub fn emit_grammar(system: &PcgSystem) -> String {
    let table = system.symbols();
    let mut out = String::new();
    let _ = writeln!(out, "pcgs {} master={}", system.mode(), system.master() + 1);
    for (k, v) in system.metadata() {
        let _ = writeln!(out, "meta {k}={v}");
    }
    let list = |syms: &[crate::grammar::Symbol]| syms.iter().map(|&s| table.name(s)).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "nonterminals: {}", list(table.nonterminals()));
    let _ = writeln!(out, "terminals: {}", list(table.terminals()));
    for (i, c) in system.components().iter().enumerate() {
        let _ = writeln!(out, "component {}:", i + 1);
        let _ = writeln!(out, "  axiom: {}", render_word(table, &c.axiom));
        for p in &c.productions {
            let _ = writeln!(out, "  {} -> {}", table.name(p.lhs), render_word(table, &p.rhs));
        }
    }
    out
}

fn index_of(list: &[String], name: &str, what: &str, line: usize) -> Result<usize, FormatError> {
    list.iter().position(|s| s == name).ok_or_else(|| syntax(line, format!("unknown {what} `{name}`")))
}

fn tuple(text: &str) -> Option<Vec<&str>> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(str::trim).collect())
}

/// Parses and validates a counter machine.
pub fn parse_machine(text: &str) -> Result<CounterMachine, FormatError> {
    let mut counters = None;
    let mut alphabet = None;
    let mut states: Option<Vec<String>> = None;
    let mut start = None;
    let mut final_state = None;
    let mut raw_rules = Vec::new();
    let mut header = 1;
    for (n, line) in lines(text) {
        if let Some(k) = line.strip_prefix("counters ") {
            counters = Some(k.trim().parse::<usize>().map_err(|_| syntax(n, "expected `counters <n>`"))?);
            header = n;
        } else if let Some(list) = field(line, "alphabet") {
            alphabet = Some(names(list));
        } else if let Some(list) = field(line, "states") {
            states = Some(names(list));
        } else if let Some(q) = field(line, "start") {
            start = Some((n, q.to_string()));
        } else if let Some(q) = field(line, "final") {
            final_state = Some((n, q.to_string()));
        } else if line.starts_with('(') {
            raw_rules.push((n, line));
        } else {
            return Err(syntax(n, format!("cannot parse `{line}`")));
        }
    }
    let counters = counters.ok_or_else(|| syntax(header, "missing `counters <n>` line"))?;
    let alphabet = alphabet.ok_or_else(|| syntax(header, "missing `alphabet:` line"))?;
    let states = states.ok_or_else(|| syntax(header, "missing `states:` line"))?;
    let (sl, start) = start.ok_or_else(|| syntax(header, "missing `start:` line"))?;
    let (fl, fin) = final_state.ok_or_else(|| syntax(header, "missing `final:` line"))?;
    let start = index_of(&states, &start, "state", sl)?;
    let final_state = index_of(&states, &fin, "state", fl)?;

    let mut rules = Vec::new();
    let mut rule_lines = Vec::new();
    for (n, line) in raw_rules {
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| syntax(n, "expected `(...) -> (...)`"))?;
        let lhs = tuple(lhs).ok_or_else(|| syntax(n, "malformed rule lhs"))?;
        let rhs = tuple(rhs).ok_or_else(|| syntax(n, "malformed rule rhs"))?;
        if lhs.len() != counters + 2 || rhs.len() != counters + 1 {
            return Err(syntax(n, format!("rule needs {} guards and {counters} actions", counters)));
        }
        let read = match lhs[1] {
            "B" => Read::Blank,
            "eps" | "λ" => Read::Lambda,
            x => Read::Symbol(index_of(&alphabet, x, "input symbol", n)?),
        };
        let guards = lhs[2..]
            .iter()
            .map(|g| match *g {
                "Z" => Ok(Guard::Z),
                "B" => Ok(Guard::B),
                other => Err(syntax(n, format!("guard must be Z or B, found `{other}`"))),
            })
            .collect::<Result<_, _>>()?;
        let actions = rhs[1..]
            .iter()
            .map(|a| match *a {
                "+1" | "1" => Ok(Action::Inc),
                "0" => Ok(Action::Keep),
                "-1" => Ok(Action::Dec),
                other => Err(syntax(n, format!("action must be -1, 0 or +1, found `{other}`"))),
            })
            .collect::<Result<_, _>>()?;
        rules.push(CounterRule {
            from: index_of(&states, lhs[0], "state", n)?,
            read,
            guards,
            to: index_of(&states, rhs[0], "state", n)?,
            actions,
        });
        rule_lines.push(n);
    }
    let machine = CounterMachine { alphabet, states, start, final_state, counters, rules };
    let report = machine.validate();
    if report.is_empty() {
        return Ok(machine);
    }
    Err(FormatError::Invalid(
        report
            .iter()
            .map(|v| {
                let line = match *v {
                    MachineViolation::Arity { rule, .. }
                    | MachineViolation::SymbolOutOfRange { rule, .. }
                    | MachineViolation::DecrementOnZero { rule, .. } => rule_lines.get(rule).copied(),
                    _ => Some(header),
                };
                Located { line, message: v.to_string() }
            })
            .collect(),
    ))
}

pub fn emit_machine(cm: &CounterMachine) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "counters {}", cm.counters);
    let _ = writeln!(out, "alphabet: {}", cm.alphabet.join(" "));
    let _ = writeln!(out, "states: {}", cm.states.join(" "));
    let _ = writeln!(out, "start: {}", cm.states[cm.start]);
    let _ = writeln!(out, "final: {}", cm.states[cm.final_state]);
    for r in &cm.rules {
        let _ = writeln!(out, "{}", cm.render_rule(r));
    }
    out
}

/// A register machine with its optional register roles (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterProgram {
    pub machine: RegisterMachine,
    pub input: Option<usize>,
    pub output: Option<usize>,
    pub code: Option<usize>,
}

fn register_ref(token: &str, line: usize) -> Result<usize, FormatError> {
    token
        .trim()
        .strip_prefix('r')
        .and_then(|k| k.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .map(|k| k - 1)
        .ok_or_else(|| syntax(line, format!("expected a register `r<k>`, found `{}`", token.trim())))
}

pub fn parse_register(text: &str) -> Result<RegisterProgram, FormatError> {
    let mut registers = None;
    let mut labels: Option<Vec<String>> = None;
    let mut start = None;
    let mut halt = None;
    let (mut input, mut output, mut code) = (None, None, None);
    let mut raw = Vec::new();
    let mut header = 1;
    for (n, line) in lines(text) {
        if let Some(k) = line.strip_prefix("registers ") {
            registers = Some(k.trim().parse::<usize>().map_err(|_| syntax(n, "expected `registers <m>`"))?);
            header = n;
        } else if let Some(list) = field(line, "labels") {
            labels = Some(names(list));
        } else if let Some(l) = field(line, "start") {
            start = Some((n, l.to_string()));
        } else if let Some(l) = field(line, "halt") {
            halt = Some((n, l.to_string()));
        } else if let Some(r) = field(line, "input") {
            input = Some(register_ref(r, n)?);
        } else if let Some(r) = field(line, "output") {
            output = Some(register_ref(r, n)?);
        } else if let Some(r) = field(line, "code") {
            code = Some(register_ref(r, n)?);
        } else if let Some((label, body)) = line.split_once(':') {
            raw.push((n, label.trim().to_string(), body.trim().to_string()));
        } else {
            return Err(syntax(n, format!("cannot parse `{line}`")));
        }
    }
    let registers = registers.ok_or_else(|| syntax(header, "missing `registers <m>` line"))?;
    let labels = labels.ok_or_else(|| syntax(header, "missing `labels:` line"))?;
    let (sl, start) = start.ok_or_else(|| syntax(header, "missing `start:` line"))?;
    let (hl, halt) = halt.ok_or_else(|| syntax(header, "missing `halt:` line"))?;
    let start = index_of(&labels, &start, "label", sl)?;
    let halt = index_of(&labels, &halt, "label", hl)?;

    let mut program: Vec<Option<Instruction>> = vec![None; labels.len()];
    let mut lines_of = HashMap::new();
    for (n, label, body) in raw {
        let at = index_of(&labels, &label, "label", n)?;
        if program[at].is_some() {
            return Err(syntax(n, format!("second instruction for label `{label}`")));
        }
        let target = |t: &str| index_of(&labels, t.trim(), "label", n);
        let ins = if body == "HALT" {
            Instruction::Halt
        } else {
            let (op, targets) = body.split_once("->").ok_or_else(|| syntax(n, "expected `OP rK -> targets`"))?;
            let mut op = op.split_whitespace();
            let (name, reg) = match (op.next(), op.next(), op.next()) {
                (Some(name), Some(reg), None) => (name, register_ref(reg, n)?),
                _ => return Err(syntax(n, "expected `OP rK`")),
            };
            let targets: Vec<&str> = targets.split(',').collect();
            match (name, targets.as_slice()) {
                ("ADD", [next]) => Instruction::Add { register: reg, next: target(next)? },
                ("CHECK", [z, p]) => Instruction::Check { register: reg, if_zero: target(z)?, if_positive: target(p)? },
                ("CHECKSUB", [p, z]) => {
                    Instruction::CheckSub { register: reg, if_positive: target(p)?, if_zero: target(z)? }
                }
                _ => return Err(syntax(n, format!("unknown instruction `{body}`"))),
            }
        };
        program[at] = Some(ins);
        lines_of.insert(at, n);
    }
    let program = program
        .into_iter()
        .enumerate()
        .map(|(i, ins)| ins.ok_or_else(|| syntax(header, format!("label `{}` has no instruction", labels[i]))))
        .collect::<Result<Vec<_>, _>>()?;
    let machine = RegisterMachine { registers, labels, start, halt, program };
    let mut report: Vec<Located> = machine
        .validate()
        .into_iter()
        .map(|e| {
            let line = match &e {
                RegisterError::HaltNotHalt(_) => Some(hl),
                _ => Some(header),
            };
            Located { line, message: e.to_string() }
        })
        .collect();
    for r in [input, output, code].into_iter().flatten() {
        if r >= registers {
            report.push(Located {
                line: Some(header),
                message: RegisterError::RegisterOutOfRange { register: r, registers }.to_string(),
            });
        }
    }
    if !report.is_empty() {
        return Err(FormatError::Invalid(report));
    }
    Ok(RegisterProgram { machine, input, output, code })
}

pub fn emit_register(program: &RegisterProgram) -> String {
    let m = &program.machine;
    let mut out = String::new();
    let _ = writeln!(out, "registers {}", m.registers);
    let _ = writeln!(out, "labels: {}", m.labels.join(" "));
    let _ = writeln!(out, "start: {}", m.labels[m.start]);
    let _ = writeln!(out, "halt: {}", m.labels[m.halt]);
    for (key, r) in [("input", program.input), ("output", program.output), ("code", program.code)] {
        if let Some(r) = r {
            let _ = writeln!(out, "{key}: r{}", r + 1);
        }
    }
    let l = |i: usize| &m.labels[i];
    for (i, ins) in m.program.iter().enumerate() {
        let _ = match *ins {
            Instruction::Add { register, next } => writeln!(out, "{}: ADD r{} -> {}", l(i), register + 1, l(next)),
            Instruction::Check { register, if_zero, if_positive } => {
                writeln!(out, "{}: CHECK r{} -> {}, {}", l(i), register + 1, l(if_zero), l(if_positive))
            }
            Instruction::CheckSub { register, if_positive, if_zero } => {
                writeln!(out, "{}: CHECKSUB r{} -> {}, {}", l(i), register + 1, l(if_positive), l(if_zero))
            }
            Instruction::Halt => writeln!(out, "{}: HALT", l(i)),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = "\
# two components
pcgs nonreturning master=1
nonterminals: S A
terminals: a
component 1:
  axiom: S
  S -> a Q2
component 2:
  axiom: S
  S -> A
  A -> <eps>
";

    #[test]
    fn grammar_round_trip() {
        let system = parse_grammar(TWO).unwrap();
        assert_eq!(system.len(), 2);
        assert_eq!(system.rule_count(), 3);
        let text = emit_grammar(&system);
        assert_eq!(parse_grammar(&text).unwrap(), system);
        assert_eq!(emit_grammar(&parse_grammar(&text).unwrap()), text);
    }

    #[test]
    fn undeclared_symbol_is_a_positioned_syntax_error() {
        let text = TWO.replace("S -> a Q2", "S -> b Q2");
        assert_eq!(parse_grammar(&text), Err(syntax(7, "undeclared symbol `b`")));
        let text = TWO.replace("Q2", "Q3");
        assert!(matches!(parse_grammar(&text), Err(FormatError::Syntax { line: 7, .. })));
    }

    #[test]
    fn validation_errors_carry_lines() {
        let text = TWO.replace("A -> <eps>", "Q1 -> <eps>");
        let Err(FormatError::Invalid(items)) = parse_grammar(&text) else { panic!("expected validation error") };
        assert_eq!(items.len(), 1);
        assert_eq!(items[0].line, Some(11));
        assert!(items[0].to_string().contains("query symbol on lhs"));
    }

    #[test]
    fn header_errors() {
        assert!(matches!(parse_grammar("pcgs sideways master=1"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_grammar("pcgs returning master=0"), Err(FormatError::Syntax { line: 1, .. })));
        let text = TWO.replace("master=1", "master=3");
        assert!(matches!(parse_grammar(&text), Err(FormatError::Invalid(_))));
    }

    const MACHINE: &str = "\
counters 2
alphabet: a b
states: q0 q1 q2 qF
start: q0
final: qF
(q0, a, Z, Z) -> (q1, +1, 0)
(q1, a, B, Z) -> (q1, +1, 0)
(q1, b, B, Z) -> (q2, -1, 0)
(q2, b, B, Z) -> (q2, -1, 0)
(q2, eps, Z, Z) -> (qF, 0, 0)
";

    #[test]
    fn machine_round_trip() {
        let cm = parse_machine(MACHINE).unwrap();
        assert_eq!(cm.rules.len(), 5);
        assert_eq!(parse_machine(&emit_machine(&cm)).unwrap(), cm);
    }

    #[test]
    fn machine_errors() {
        let text = MACHINE.replace("(q0, a, Z, Z) -> (q1, +1, 0)", "(q0, a, Z, Z) -> (q1, -1, 0)");
        let Err(FormatError::Invalid(items)) = parse_machine(&text) else { panic!() };
        assert_eq!(items[0].line, Some(6));
        let text = MACHINE.replace("(q1, a, B, Z)", "(q1, c, B, Z)");
        assert_eq!(parse_machine(&text), Err(syntax(7, "unknown input symbol `c`")));
    }

    const DOUBLER: &str = "\
registers 2
labels: l0 l1 l2 lh
start: l0
halt: lh
input: r1
output: r2
l0: CHECKSUB r1 -> l1, lh
l1: ADD r2 -> l2
l2: ADD r2 -> l0
lh: HALT
";

    #[test]
    fn register_round_trip() {
        let p = parse_register(DOUBLER).unwrap();
        assert_eq!((p.input, p.output, p.code), (Some(0), Some(1), None));
        assert_eq!(parse_register(&emit_register(&p)).unwrap(), p);
        let out = p.machine.run(3, 0, 1, 100).unwrap();
        assert!(matches!(out, crate::RegisterOutcome::Halted { output: 6, .. }));
    }

    #[test]
    fn register_errors() {
        let text = DOUBLER.replace("ADD r2 -> l2", "ADD r3 -> l2");
        assert!(matches!(parse_register(&text), Err(FormatError::Invalid(_))));
        let text = DOUBLER.replace("ADD r2 -> l2", "MUL r2 -> l2");
        assert!(matches!(parse_register(&text), Err(FormatError::Syntax { line: 8, .. })));
    }
}
