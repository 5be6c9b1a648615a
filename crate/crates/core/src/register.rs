//! Register machines and their translation into n-counter machines,
//! including the front-end that turns a translated machine into an acceptor
//! of unary words `a^y` for results `y`.

use thiserror::Error;

use crate::machines::{Action, CounterMachine, CounterRule, Guard, Read};

/// Register numbers are 0-based here and 1-based in the text format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instruction {
    /// Add 1 to `register`, go to `next`.
    Add {
        register: usize,
        next: usize,
    },
    /// Branch on whether `register` is zero.
    Check {
        register: usize,
        if_zero: usize,
        if_positive: usize,
    },
    /// If `register` is positive, subtract 1 and go to `if_positive`;
    /// otherwise go to `if_zero`.
    CheckSub {
        register: usize,
        if_positive: usize,
        if_zero: usize,
    },
    Halt,
}

impl Instruction {
    pub fn register(&self) -> Option<usize> {
        match *self {
            Instruction::Add { register, .. }
            | Instruction::Check { register, .. }
            | Instruction::CheckSub { register, .. } => Some(register),
            Instruction::Halt => None,
        }
    }

    fn targets(&self) -> Vec<usize> {
        match *self {
            Instruction::Add { next, .. } => vec![next],
            Instruction::Check { if_zero, if_positive, .. } => vec![if_zero, if_positive],
            Instruction::CheckSub { if_positive, if_zero, .. } => vec![if_positive, if_zero],
            Instruction::Halt => vec![],
        }
    }
}

/// `(m, H, l_0, l_h, R)`: one instruction per label, `program[label]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterMachine {
    pub registers: usize,
    pub labels: Vec<String>,
    pub start: usize,
    pub halt: usize,
    pub program: Vec<Instruction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RegisterError {
    #[error("label count {labels} does not match instruction count {instructions}")]
    LabelCount { labels: usize, instructions: usize },
    #[error("label index {0} out of range")]
    LabelOutOfRange(usize),
    #[error("register r{} out of range (machine has {registers})", .register + 1)]
    RegisterOutOfRange { register: usize, registers: usize },
    #[error("halt label `{0}` does not carry HALT")]
    HaltNotHalt(String),
    #[error("counter machine input alphabet must be unary, found {0} symbols")]
    NotUnary(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegisterOutcome {
    Halted { output: u64, steps: usize },
    NonHaltingWithinBound,
}

impl RegisterMachine {
    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn validate(&self) -> Vec<RegisterError> {
        let mut report = Vec::new();
        if self.labels.len() != self.program.len() {
            report.push(RegisterError::LabelCount { labels: self.labels.len(), instructions: self.program.len() });
        }
        for &l in &[self.start, self.halt] {
            if l >= self.program.len() {
                report.push(RegisterError::LabelOutOfRange(l));
            }
        }
        if let Some(ins) = self.program.get(self.halt) {
            if *ins != Instruction::Halt {
                report.push(RegisterError::HaltNotHalt(self.labels.get(self.halt).cloned().unwrap_or_default()));
            }
        }
        for ins in &self.program {
            if let Some(r) = ins.register() {
                if r >= self.registers {
                    report.push(RegisterError::RegisterOutOfRange { register: r, registers: self.registers });
                }
            }
            for t in ins.targets() {
                if t >= self.program.len() {
                    report.push(RegisterError::LabelOutOfRange(t));
                }
            }
        }
        report
    }

    fn check_register(&self, register: usize) -> Result<(), RegisterError> {
        if register < self.registers {
            Ok(())
        } else {
            Err(RegisterError::RegisterOutOfRange { register, registers: self.registers })
        }
    }

    pub fn count(&self, pred: impl Fn(&Instruction) -> bool) -> usize {
        self.program.iter().filter(|i| pred(i)).count()
    }

    /// Deterministic run from `l_0` with `x` in `input` and zeros elsewhere.
    pub fn run(
        &self,
        x: u64,
        input: usize,
        output: usize,
        step_bound: usize,
    ) -> Result<RegisterOutcome, RegisterError> {
        self.run_from(&[(input, x)], output, step_bound)
    }

    /// Like [`run`](Self::run), with any number of registers preset.
    pub fn run_from(
        &self,
        preset: &[(usize, u64)],
        output: usize,
        step_bound: usize,
    ) -> Result<RegisterOutcome, RegisterError> {
        self.check_register(output)?;
        let mut regs = vec![0u64; self.registers];
        for &(r, v) in preset {
            self.check_register(r)?;
            regs[r] = v;
        }
        let mut label = self.start;
        for steps in 0..=step_bound {
            let ins = self.program.get(label).ok_or(RegisterError::LabelOutOfRange(label))?;
            label = match *ins {
                Instruction::Halt => return Ok(RegisterOutcome::Halted { output: regs[output], steps }),
                Instruction::Add { register, next } => {
                    regs[register] += 1;
                    next
                }
                Instruction::Check { register, if_zero, if_positive } => {
                    if regs[register] == 0 {
                        if_zero
                    } else {
                        if_positive
                    }
                }
                Instruction::CheckSub { register, if_positive, if_zero } => {
                    if regs[register] > 0 {
                        regs[register] -= 1;
                        if_positive
                    } else {
                        if_zero
                    }
                }
            };
        }
        Ok(RegisterOutcome::NonHaltingWithinBound)
    }
}

/// Guard vector whose bit `i` of `pattern` set means counter `i` reads B.
pub(crate) fn guards_of(pattern: usize, n: usize) -> Vec<Guard> {
    (0..n).map(|i| if pattern >> i & 1 == 1 { Guard::B } else { Guard::Z }).collect()
}

/// A counter machine produced by [`translate_to_counter`]: counter `i`
/// holds register `i`, states are the labels, the start state is `l_0` and
/// the final state is the halt label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedMachine {
    pub machine: CounterMachine,
    pub input_counter: usize,
    pub output_counter: usize,
}

/// One λ-rule per instruction and guard combination: `2^m` rules for every
/// ADD, CHECK and CHECKSUB; HALT contributes none.
pub fn translate_to_counter(
    rm: &RegisterMachine,
    input: usize,
    output: usize,
) -> Result<TranslatedMachine, RegisterError> {
    if let Some(e) = rm.validate().into_iter().next() {
        return Err(e);
    }
    rm.check_register(input)?;
    rm.check_register(output)?;
    let n = rm.registers;
    let mut rules = Vec::new();
    for (label, ins) in rm.program.iter().enumerate() {
        for pattern in 0..1usize << n {
            let guards = guards_of(pattern, n);
            let mut actions = vec![Action::Keep; n];
            let to = match *ins {
                Instruction::Halt => break,
                Instruction::Add { register, next } => {
                    actions[register] = Action::Inc;
                    next
                }
                Instruction::Check { register, if_zero, if_positive } => match guards[register] {
                    Guard::Z => if_zero,
                    Guard::B => if_positive,
                },
                Instruction::CheckSub { register, if_positive, if_zero } => match guards[register] {
                    Guard::Z => if_zero,
                    Guard::B => {
                        actions[register] = Action::Dec;
                        if_positive
                    }
                },
            };
            rules.push(CounterRule { from: label, read: Read::Lambda, guards, to, actions });
        }
    }
    Ok(TranslatedMachine {
        machine: CounterMachine {
            alphabet: vec!["a".to_string()],
            states: rm.labels.clone(),
            start: rm.start,
            final_state: rm.halt,
            counters: n,
            rules,
        },
        input_counter: input,
        output_counter: output,
    })
}

fn fresh_state(states: &mut Vec<String>, base: &str) -> usize {
    let mut name = base.to_string();
    while states.contains(&name) {
        name.push('\'');
    }
    states.push(name);
    states.len() - 1
}

/// Adds the unary acceptor front-end around a translated machine whose final
/// state is the halt label `l_h`:
///
/// * a fresh start state with three λ-rules that, with the code counter
///   positive, pump the input counter to some value `x >= 1` and then jump to
///   the old start state;
/// * at `l_h`, `2^(n-1)` rules reading `a` while decrementing the output
///   counter and `2^(n-1)` λ-rules leaving once it is zero;
/// * a fresh erasing state with `2^n` rules that drain every counter and
///   enter the fresh final state only when all counters read `Z`.
///
/// In total `2·2^n + 3` rules are added, and the final state is only ever
/// entered with empty counters.
pub fn attach_universal_front_end(
    cm: &CounterMachine,
    code_counter: usize,
    input_counter: usize,
    output_counter: usize,
) -> Result<CounterMachine, RegisterError> {
    if cm.alphabet.len() != 1 {
        return Err(RegisterError::NotUnary(cm.alphabet.len()));
    }
    let n = cm.counters;
    for &c in &[code_counter, input_counter, output_counter] {
        if c >= n {
            return Err(RegisterError::RegisterOutOfRange { register: c, registers: n });
        }
    }
    let mut out = cm.clone();
    let halt = cm.final_state;
    let old_start = cm.start;
    let start = fresh_state(&mut out.states, "q0");
    let erase = fresh_state(&mut out.states, "e");
    let fin = fresh_state(&mut out.states, "qF");

    let filling_guards = |input_guard: Guard| {
        let mut g = vec![Guard::Z; n];
        g[output_counter] = Guard::Z;
        g[code_counter] = Guard::B;
        g[input_counter] = input_guard;
        g
    };
    let mut pump = vec![Action::Keep; n];
    pump[input_counter] = Action::Inc;
    out.rules.push(CounterRule {
        from: start,
        read: Read::Lambda,
        guards: filling_guards(Guard::Z),
        to: start,
        actions: pump.clone(),
    });
    out.rules.push(CounterRule {
        from: start,
        read: Read::Lambda,
        guards: filling_guards(Guard::B),
        to: start,
        actions: pump,
    });
    out.rules.push(CounterRule {
        from: start,
        read: Read::Lambda,
        guards: filling_guards(Guard::B),
        to: old_start,
        actions: vec![Action::Keep; n],
    });

    for pattern in 0..1usize << n {
        let guards = guards_of(pattern, n);
        match guards[output_counter] {
            Guard::B => {
                let mut actions = vec![Action::Keep; n];
                actions[output_counter] = Action::Dec;
                out.rules.push(CounterRule { from: halt, read: Read::Symbol(0), guards, to: halt, actions });
            }
            Guard::Z => {
                out.rules.push(CounterRule {
                    from: halt,
                    read: Read::Lambda,
                    guards,
                    to: erase,
                    actions: vec![Action::Keep; n],
                });
            }
        }
    }
    for pattern in 0..1usize << n {
        let guards = guards_of(pattern, n);
        if pattern == 0 {
            out.rules.push(CounterRule {
                from: erase,
                read: Read::Lambda,
                guards,
                to: fin,
                actions: vec![Action::Keep; n],
            });
        } else {
            let actions = guards.iter().map(|g| if *g == Guard::B { Action::Dec } else { Action::Keep }).collect();
            out.rules.push(CounterRule { from: erase, read: Read::Lambda, guards, to: erase, actions });
        }
    }
    out.start = start;
    out.final_state = fin;
    Ok(out)
}

/// [`translate_to_counter`] followed by [`attach_universal_front_end`]:
/// the counter machine accepting `a^y` for every `y` the register machine
/// outputs on some input `x >= 1`, provided the code register is positive.
pub fn unary_acceptor(
    rm: &RegisterMachine,
    code: usize,
    input: usize,
    output: usize,
) -> Result<CounterMachine, RegisterError> {
    let translated = translate_to_counter(rm, input, output)?;
    attach_universal_front_end(&translated.machine, code, input, output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::MachineConfig;

    /// l0: CHECKSUB(r_in, l1, lh); l1: ADD(r_out, l2); l2: ADD(r_out, l0); lh: HALT
    fn doubler(registers: usize, input: usize, output: usize) -> RegisterMachine {
        RegisterMachine {
            registers,
            labels: ["l0", "l1", "l2", "lh"].map(String::from).to_vec(),
            start: 0,
            halt: 3,
            program: vec![
                Instruction::CheckSub { register: input, if_positive: 1, if_zero: 3 },
                Instruction::Add { register: output, next: 2 },
                Instruction::Add { register: output, next: 0 },
                Instruction::Halt,
            ],
        }
    }

    #[test]
    fn doubler_runs() {
        let rm = doubler(2, 0, 1);
        assert_eq!(rm.run(3, 0, 1, 100), Ok(RegisterOutcome::Halted { output: 6, steps: 10 }));
        assert_eq!(rm.run(0, 0, 1, 100), Ok(RegisterOutcome::Halted { output: 0, steps: 1 }));
    }

    #[test]
    fn infinite_loop_hits_bound() {
        let rm = RegisterMachine {
            registers: 1,
            labels: vec!["l0".into(), "lh".into()],
            start: 0,
            halt: 1,
            program: vec![Instruction::Add { register: 0, next: 0 }, Instruction::Halt],
        };
        assert_eq!(rm.run(0, 0, 0, 50), Ok(RegisterOutcome::NonHaltingWithinBound));
    }

    #[test]
    fn check_on_one_register_gives_two_rules() {
        let rm = RegisterMachine {
            registers: 1,
            labels: vec!["l0".into(), "l1".into(), "lh".into()],
            start: 0,
            halt: 2,
            program: vec![
                Instruction::Check { register: 0, if_zero: 2, if_positive: 1 },
                Instruction::Add { register: 0, next: 2 },
                Instruction::Halt,
            ],
        };
        let tm = translate_to_counter(&rm, 0, 0).unwrap();
        let check: Vec<_> = tm.machine.rules.iter().filter(|r| r.from == 0).collect();
        assert_eq!(check.len(), 2);
        assert_eq!((check[0].guards[0], check[0].to), (Guard::Z, 2));
        assert_eq!((check[1].guards[0], check[1].to), (Guard::B, 1));
        assert!(check.iter().all(|r| r.read == Read::Lambda && r.actions == vec![Action::Keep]));
    }

    #[test]
    fn add_on_eight_registers_gives_256_rules() {
        let rm = RegisterMachine {
            registers: 8,
            labels: vec!["l0".into(), "lh".into()],
            start: 0,
            halt: 1,
            program: vec![Instruction::Add { register: 4, next: 1 }, Instruction::Halt],
        };
        let tm = translate_to_counter(&rm, 2, 0).unwrap();
        assert_eq!(tm.machine.rules.len(), 256);
        assert!(tm.machine.rules.iter().all(|r| r.actions[4] == Action::Inc));
    }

    #[test]
    fn translated_doubler_reaches_halt_with_doubled_output() {
        let rm = doubler(2, 0, 1);
        let tm = translate_to_counter(&rm, 0, 1).unwrap();
        for x in 0..=5u64 {
            let mut mc = MachineConfig { state: 0, input_pos: 0, counters: vec![x, 0] };
            let mut steps = 0;
            while mc.state != rm.halt {
                let next = tm.machine.successors(&[], &mc);
                assert_eq!(next.len(), 1, "translated machine is deterministic");
                mc = next.into_iter().next().unwrap();
                steps += 1;
            }
            assert_eq!(mc.counters, vec![0, 2 * x]);
            assert_eq!(Ok(RegisterOutcome::Halted { output: 2 * x, steps }), rm.run(x, 0, 1, 1000));
        }
    }

    #[test]
    fn front_end_on_one_counter_adds_seven_rules() {
        let cm = CounterMachine {
            alphabet: vec!["a".into()],
            states: vec!["l0".into()],
            start: 0,
            final_state: 0,
            counters: 1,
            rules: vec![],
        };
        let out = attach_universal_front_end(&cm, 0, 0, 0).unwrap();
        assert_eq!(out.rules.len(), 7);
        assert_eq!(out.states, ["l0", "q0", "e", "qF"]);
    }

    #[test]
    fn front_end_requires_unary_alphabet() {
        let cm = CounterMachine {
            alphabet: vec!["a".into(), "b".into()],
            states: vec!["l0".into()],
            start: 0,
            final_state: 0,
            counters: 3,
            rules: vec![],
        };
        assert_eq!(attach_universal_front_end(&cm, 1, 2, 0), Err(RegisterError::NotUnary(2)));
    }

    #[test]
    fn invalid_register_reference_is_rejected() {
        let rm = doubler(2, 0, 5);
        assert!(matches!(translate_to_counter(&rm, 0, 1), Err(RegisterError::RegisterOutOfRange { register: 5, .. })));
    }
}
