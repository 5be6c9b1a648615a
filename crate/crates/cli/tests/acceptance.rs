//! Acceptance harness: one PASS/FAIL line per criterion, non-zero exit on
//! any failure.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use pcgs_core::constructions::{
    apply_program, compile_two_counter, compile_universal, sigma, size_report, UniversalBounds,
    UNIVERSAL_SHAPE_TRANSITIONS,
};
use pcgs_core::derivation::Reduction;
use pcgs_core::format::{parse_machine, parse_register};
use pcgs_core::register::{attach_universal_front_end, translate_to_counter};
use pcgs_core::verify::{check_equivalence_with, Verdict, VerifyOptions};
use pcgs_core::{
    replay_trace, Action, CounterMachine, Guard, Instruction, MachineConfig, PcgSystem, Production, RegisterOutcome,
    Word,
};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn words(list: &[&str]) -> BTreeSet<Word> {
    list.iter().map(|w| Word::parse(w)).collect()
}

fn show(set: &BTreeSet<Word>) -> String {
    if set.is_empty() {
        return "{}".into();
    }
    let list: Vec<String> = set.iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", list.join(", "))
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn anbn() -> CounterMachine {
    parse_machine(&fixture("anbn.cm")).unwrap()
}

fn pcgsctl(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pcgsctl")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("pcgsctl {} failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn ac1() -> Outcome {
    let dir = std::env::temp_dir().join(format!("pcgs-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let grammar = dir.join("anbn.pcgs");
    let grammar_path = grammar.to_str().unwrap();
    let machine = format!("{FIXTURES}/anbn.cm");
    pcgsctl(&["compile", "two-counter", &machine, "-o", grammar_path])?;
    let printed = pcgsctl(&["pcgs", "trace", grammar_path, "--choices", "0,0"])?;
    let _ = std::fs::remove_dir_all(&dir);
    let golden = "(S, S, S, S, S, S)\n(t1, Q1, Q1 Z, Q1 Z, Q1, M0)\n(t1, t1, t1 Z, t1 Z, t1, M0)\n";
    ensure(printed == golden, || format!("trace output was\n{printed}"))?;

    // Every initial transition gives the same two-step shape.
    let cm = anbn();
    let system = compile_two_counter(&cm).unwrap();
    let initial: Vec<usize> = (0..cm.rules.len()).filter(|&k| cm.rules[k].from == cm.start).collect();
    let mut seen = Vec::new();
    for choice in 0.. {
        let Ok(trace) = replay_trace(&system, &[choice, 0]) else { break };
        let step1 = system.render(&trace[1]);
        let alpha = step1.trim_start_matches('(').split(',').next().unwrap().to_string();
        let want1 = format!("({alpha}, Q1, Q1 Z, Q1 Z, Q1, M0)");
        let want2 = format!("({alpha}, {alpha}, {alpha} Z, {alpha} Z, {alpha}, M0)");
        ensure(step1 == want1, || format!("choice {choice}: {step1}"))?;
        ensure(system.render(&trace[2]) == want2, || format!("choice {choice}: {}", system.render(&trace[2])))?;
        seen.push(alpha);
    }
    let expected: Vec<String> = initial.iter().map(|k| format!("t{}", k + 1)).collect();
    ensure(seen == expected, || format!("initial transitions {seen:?}, expected {expected:?}"))?;
    Ok(format!("golden trace matches via pcgsctl; {} initial transition(s) checked", seen.len()))
}

fn ac2() -> Outcome {
    let cm = anbn();
    let oracle = cm.enumerate_accepted(6, 64);
    let expected = words(&["ab", "aabb", "aaabbb"]);
    ensure(oracle.exact && oracle.words == expected, || format!("machine oracle gave {}", show(&oracle.words)))?;
    let system = compile_two_counter(&cm).unwrap();
    let mut options = VerifyOptions::new(6);
    options.max_configurations = 10_000_000;
    let report = check_equivalence_with(&system, &cm, &options).unwrap();
    ensure(report.verdict() == Verdict::Equivalent && report.agreed == expected, || format!("{report:?}"))?;

    // For comparison: the same search with only private erasures merged,
    // under a small budget.
    let mut weaker = options.clone();
    weaker.max_configurations = 100_000;
    weaker.enumeration.reduction = Reduction::PrivateErasures;
    let start = Instant::now();
    let other = check_equivalence_with(&system, &cm, &weaker).unwrap();
    Ok(format!(
        "{} conclusive, visited {} configurations (full reduction); erasures only: {} after {} configurations in {:.1?}",
        show(&report.agreed),
        report.grammar_stats.visited,
        other.verdict(),
        other.grammar_stats.visited,
        start.elapsed()
    ))
}

fn ac3() -> Outcome {
    let table = [
        (Action::Inc, Guard::B, 2),
        (Action::Keep, Guard::B, 1),
        (Action::Dec, Guard::B, 0),
        (Action::Inc, Guard::Z, 1),
        (Action::Keep, Guard::Z, 0),
    ];
    for (action, guard, count) in table {
        ensure(sigma(action, guard) == Ok(count), || format!("sigma({action:?}, {guard:?})"))?;
    }
    ensure(sigma(Action::Dec, Guard::Z).is_err(), || "sigma(-1, Z) is defined".into())?;
    Ok("5 entries match, (-1, Z) rejected".into())
}

fn ac4() -> Outcome {
    let p = parse_register(&fixture("doubler.rm")).unwrap();
    let (rm, input, output) = (&p.machine, p.input.unwrap(), p.output.unwrap());
    ensure(rm.program.len() == 4, || format!("{} instructions", rm.program.len()))?;
    let tm = translate_to_counter(rm, input, output).unwrap();
    for x in 0..=5u64 {
        let Ok(RegisterOutcome::Halted { output: y, .. }) = rm.run(x, input, output, 1000) else {
            return Err(format!("register machine did not halt on {x}"));
        };
        let mut counters = vec![0; tm.machine.counters];
        counters[tm.input_counter] = x;
        let mut mc = MachineConfig { state: tm.machine.start, input_pos: 0, counters };
        for _ in 0..1000 {
            if mc.state == tm.machine.final_state {
                break;
            }
            let next = tm.machine.successors(&[], &mc);
            ensure(next.len() == 1, || format!("x={x}: {} successors", next.len()))?;
            mc = next.into_iter().next().unwrap();
        }
        ensure(mc.state == tm.machine.final_state, || format!("counter machine did not halt on {x}"))?;
        let z = mc.counters[tm.output_counter];
        ensure(y == 2 * x && z == y, || format!("x={x}: register {y}, counter {z}"))?;
    }
    Ok("y = 2x on both sides for x in 0..=5".into())
}

fn shape_machine() -> CounterMachine {
    let p = parse_register(&fixture("universal_shape.rm")).unwrap();
    let rm = &p.machine;
    let (code, input, output) = (p.code.unwrap(), p.input.unwrap(), p.output.unwrap());
    let tm = translate_to_counter(rm, input, output).unwrap();
    attach_universal_front_end(&tm.machine, code, input, output).unwrap()
}

fn ac5() -> Outcome {
    let p = parse_register(&fixture("universal_shape.rm")).unwrap();
    let rm = &p.machine;
    let adds = rm.count(|i| matches!(i, Instruction::Add { .. }));
    let checks = rm.count(|i| matches!(i, Instruction::Check { .. }));
    let subs = rm.count(|i| matches!(i, Instruction::CheckSub { .. }));
    ensure((rm.registers, adds, checks, subs) == (8, 8, 1, 12), || {
        format!("registers={} ADD={adds} CHECK={checks} CHECKSUB={subs}", rm.registers)
    })?;
    let cm = shape_machine();
    ensure(cm.rules.len() == UNIVERSAL_SHAPE_TRANSITIONS, || format!("m = {}", cm.rules.len()))?;
    Ok(format!("m = {} = 23*2^8+3", cm.rules.len()))
}

fn ac6() -> Outcome {
    let cm = shape_machine();
    let system = compile_universal(&cm).unwrap();
    let size = size_report(&system);
    let bound = UniversalBounds::for_transitions(cm.rules.len());
    ensure(size.components == 12, || format!("{size}"))?;
    ensure(bound.admits(&size), || format!("{size} exceeds {bound:?}"))?;
    Ok(format!("{size}; rules <= {} and nonterminals <= {}", bound.rules, bound.nonterminals))
}

fn ac7() -> Outcome {
    use support::*;
    const CASES: u32 = 1000;
    let mut done = Vec::new();
    let mut check = |name: &str, result: Result<u32, String>| -> Result<(), String> {
        result.map(|n| done.push(format!("{name} {n}"))).map_err(|e| format!("{name}: {e}"))
    };
    check("determinism", run_cases(CASES, system_and_config(), communication_is_deterministic))?;
    check("non-returning", run_cases(CASES, system_and_config(), nonreturning_keeps_query_free_strings))?;
    check("modes", run_cases(CASES, system_and_config(), modes_differ_on_delivered_senders))?;
    check("rewriting", run_cases(CASES, rewriting_case(), rewriting_changes_one_occurrence))?;
    check("circular", run_cases(CASES, (system_and_config(), 0usize..4), circular_queries_block))?;
    for seed in 0..WORKER_SEEDS {
        worker_count_independent(seed)?;
    }
    done.push(format!("workers {WORKER_SEEDS} seeds"));
    Ok(done.join(", "))
}

fn ac8() -> Outcome {
    let cm = anbn();
    let mut system: PcgSystem = compile_two_counter(&cm).unwrap();
    let (s, b) = (system.symbols().lookup("S").unwrap(), system.symbols().lookup("b").unwrap());
    system.push_production(1, Production::new(s, vec![b]));
    // Any grammar-only word is already decisive, so a small budget suffices.
    let mut options = VerifyOptions::new(6);
    options.max_configurations = 50_000;
    let report = check_equivalence_with(&system, &cm, &options).unwrap();
    ensure(!report.only_in_grammar.is_empty(), || format!("{report:?}"))?;
    Ok(format!("S -> b in the master: only in grammar {}, verdict {}", show(&report.only_in_grammar), report.verdict()))
}

fn ac9() -> Outcome {
    let p = parse_register(&fixture("copy_code.rm")).unwrap();
    let (code_reg, input, output) = (p.code.unwrap(), p.input.unwrap(), p.output.unwrap());
    let cm = pcgs_core::register::unary_acceptor(&p.machine, code_reg, input, output).unwrap();
    let base = compile_universal(&cm).unwrap();
    let mut languages = Vec::new();
    for code in [0usize, 1, 2] {
        let mut system = base.clone();
        apply_program(&mut system, code_reg, code).unwrap();
        let mut counters = vec![0; cm.counters];
        counters[code_reg] = code as u64;
        let mut options = VerifyOptions::new(3);
        options.max_depth = Some(400);
        options.max_string_length = 256;
        options.machine_steps = 40;
        options.initial_counters = Some(counters);
        let report = check_equivalence_with(&system, &cm, &options).unwrap();
        ensure(report.only_in_grammar.is_empty() && report.only_in_machine.is_empty(), || {
            format!("code {code}: {report:?}")
        })?;
        languages.push(report.agreed);
    }
    ensure(languages[1] != languages[2], || "codes 1 and 2 give the same language".into())?;
    // An empty code counter leaves the machine nothing to copy.
    let empty = cm.enumerate_accepted(3, 40);
    ensure(empty.exact && languages[0] == empty.words, || {
        format!("code 0 gave {}, machine with empty code counter {}", show(&languages[0]), show(&empty.words))
    })?;
    Ok(format!(
        "code 0 -> {}, code 1 -> {}, code 2 -> {}",
        show(&languages[0]),
        show(&languages[1]),
        show(&languages[2])
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1", "golden trace", ac1),
        ("AC2", "anbn equivalence", ac2),
        ("AC3", "sigma table", ac3),
        ("AC4", "doubler bisimulation", ac4),
        ("AC5", "transition count", ac5),
        ("AC6", "universal size bounds", ac6),
        ("AC7", "engine properties", ac7),
        ("AC8", "fault injection", ac8),
        ("AC9", "program word", ac9),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed: Duration = start.elapsed();
        match outcome {
            Ok(detail) => println!("{id} PASS {title} [{elapsed:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {title} [{elapsed:.2?}]: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
