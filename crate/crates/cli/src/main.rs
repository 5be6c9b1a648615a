//! `pcgsctl`: enumerate, trace, compile, measure and verify PC grammar systems.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 validation error,
//! 3 inconclusive verification, 4 verified mismatch.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pcgs_core::constructions::{apply_program, compile_two_counter, compile_universal, size_report, UniversalBounds};
use pcgs_core::format::{
    emit_grammar, emit_machine, parse_grammar, parse_machine, parse_register, FormatError, RegisterProgram,
};
use pcgs_core::register::unary_acceptor;
use pcgs_core::verify::{check_equivalence_with, Verdict, VerifyOptions};
use pcgs_core::{
    enumerate_language_with, replay_trace, Acceptance, CounterMachine, EnumerationBounds, EnumerationOptions,
    OccurrenceStrategy, Reduction, RegisterOutcome, Word,
};

#[derive(Parser)]
#[command(name = "pcgsctl", version, about = "PC grammar systems, counter machines and their compilers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grammar systems: validate, enumerate, trace.
    #[command(subcommand)]
    Pcgs(PcgsCommand),
    /// Counter and register machines.
    #[command(subcommand)]
    Machine(MachineCommand),
    /// Compile machines into grammar systems.
    #[command(subcommand)]
    Compile(CompileCommand),
    /// Print component, rule, nonterminal and query counts.
    Size { grammar: PathBuf },
    /// Compare a grammar system with a counter machine on all words up to a length.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum PcgsCommand {
    /// Check the structural invariants.
    Validate { grammar: PathBuf },
    /// Breadth-first enumeration of the generated language.
    Enum(EnumArgs),
    /// Replay a derivation by successor indices and print every configuration.
    Trace {
        grammar: PathBuf,
        /// Comma-separated successor indices, one per step.
        #[arg(long, value_delimiter = ',')]
        choices: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReductionArg {
    None,
    Erasures,
    Full,
}

impl From<ReductionArg> for Reduction {
    fn from(r: ReductionArg) -> Self {
        match r {
            ReductionArg::None => Reduction::None,
            ReductionArg::Erasures => Reduction::PrivateErasures,
            ReductionArg::Full => Reduction::Full,
        }
    }
}

#[derive(Args)]
struct EnumArgs {
    grammar: PathBuf,
    #[arg(long, default_value_t = 64)]
    max_depth: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_configs: usize,
    /// Prune configurations holding a longer string.
    #[arg(long, default_value_t = 256)]
    max_string_len: usize,
    /// Only collect words up to this length.
    #[arg(long)]
    max_word_len: Option<usize>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value = "none")]
    reduction: ReductionArg,
    /// Rewrite only the leftmost rewritable occurrence in each component.
    #[arg(long)]
    leftmost: bool,
    /// Print a successor-index list for every word (usable with `pcgs trace`).
    #[arg(long)]
    witnesses: bool,
}

#[derive(Subcommand)]
enum MachineCommand {
    /// Run a counter machine on a word, or a register machine on an input value.
    Run {
        machine: PathBuf,
        #[arg(long, conflicts_with = "input")]
        word: Option<String>,
        #[arg(long)]
        input: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        /// Initial counter contents, comma-separated.
        #[arg(long, value_delimiter = ',')]
        counters: Vec<u64>,
    },
    /// Every accepted word up to a length.
    Enum {
        machine: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        #[arg(long, value_delimiter = ',')]
        counters: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum CompileCommand {
    /// Two-counter machine to six-component system.
    TwoCounter {
        machine: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Counter machine, or register machine with declared input/output/code
    /// registers, to the universal-shape system with program word `A^code S`.
    Universal {
        machine: PathBuf,
        #[arg(long, default_value_t = 0)]
        code: usize,
        /// Code counter (1-based); taken from the file for register machines.
        #[arg(long)]
        code_counter: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Register machine to its unary counter-machine acceptor.
    Acceptor {
        machine: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    grammar: PathBuf,
    machine: PathBuf,
    #[arg(long, default_value_t = 6)]
    max_len: usize,
    /// Step bound per machine run.
    #[arg(long, default_value_t = 64)]
    steps: usize,
    /// Grammar depth; derived from the step bound when absent.
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long, default_value_t = 10_000_000)]
    max_configs: usize,
    #[arg(long, default_value_t = 64)]
    max_string_len: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value = "full")]
    reduction: ReductionArg,
    #[arg(long, value_delimiter = ',')]
    counters: Vec<u64>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let code = match e {
            FormatError::Syntax { .. } => 1,
            FormatError::Invalid(_) => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_out(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_context(path: &Path, f: Failure) -> Failure {
    Failure { code: f.code, message: format!("{}: {}", path.display(), f.message) }
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> Result<T, FormatError>) -> Result<T, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| with_context(path, e.into()))
}

fn is_register_text(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("registers "))
}

enum AnyMachine {
    Counter(CounterMachine),
    Register(RegisterProgram),
}

fn load_machine(path: &Path) -> Result<AnyMachine, Failure> {
    let text = read(path)?;
    let parsed = if is_register_text(&text) {
        parse_register(&text).map(AnyMachine::Register)
    } else {
        parse_machine(&text).map(AnyMachine::Counter)
    };
    parsed.map_err(|e| with_context(path, e.into()))
}

fn roles(p: &RegisterProgram) -> Result<(usize, usize, usize), Failure> {
    match (p.code, p.input, p.output) {
        (Some(c), Some(i), Some(o)) => Ok((c, i, o)),
        _ => Err(Failure::usage("register machine needs `code:`, `input:` and `output:` lines")),
    }
}

fn acceptor(p: &RegisterProgram) -> Result<CounterMachine, Failure> {
    let (code, input, output) = roles(p)?;
    unary_acceptor(&p.machine, code, input, output).map_err(|e| Failure::invalid(e.to_string()))
}

fn counters_arg(counters: &[u64], machine: &CounterMachine) -> Result<Option<Vec<u64>>, Failure> {
    if counters.is_empty() {
        return Ok(None);
    }
    if counters.len() != machine.counters {
        return Err(Failure::usage(format!("expected {} counter values, got {}", machine.counters, counters.len())));
    }
    Ok(Some(counters.to_vec()))
}

fn print_words<'a>(words: impl IntoIterator<Item = &'a Word>) {
    for w in words {
        println!("{w}");
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Pcgs(PcgsCommand::Validate { grammar }) => {
            let system = load(&grammar, parse_grammar)?;
            println!("ok: {}", size_report(&system));
            Ok(0)
        }
        Command::Pcgs(PcgsCommand::Enum(args)) => {
            let system = load(&args.grammar, parse_grammar)?;
            let mut bounds = EnumerationBounds::new(args.max_depth, args.max_configs, args.max_string_len);
            if let Some(l) = args.max_word_len {
                bounds = bounds.with_max_word_length(l);
            }
            let options = EnumerationOptions {
                workers: args.workers.max(1),
                occurrences: if args.leftmost { OccurrenceStrategy::Leftmost } else { OccurrenceStrategy::All },
                reduction: args.reduction.into(),
                witnesses: args.witnesses,
            };
            let result = enumerate_language_with(&system, bounds, options);
            for w in result.words.iter().filter(|w| args.max_word_len.is_none_or(|l| w.len() <= l)) {
                match result.witnesses.get(w) {
                    Some(choices) => {
                        let list: Vec<String> = choices.iter().map(ToString::to_string).collect();
                        println!("{w}\t{}", list.join(","));
                    }
                    None => println!("{w}"),
                }
            }
            eprintln!("exhausted: {}", result.exhausted);
            eprintln!("{:?}", result.stats);
            Ok(0)
        }
        Command::Pcgs(PcgsCommand::Trace { grammar, choices }) => {
            let system = load(&grammar, parse_grammar)?;
            let trace = replay_trace(&system, &choices).map_err(|e| Failure::usage(e.to_string()))?;
            for c in &trace {
                println!("{}", system.render(c));
            }
            Ok(0)
        }
        Command::Machine(MachineCommand::Run { machine, word, input, steps, counters }) => {
            match (load_machine(&machine)?, word, input) {
                (AnyMachine::Counter(cm), Some(word), None) => {
                    let encoded = cm.encode(&Word::parse(&word)).map_err(|e| Failure::usage(e.to_string()))?;
                    let initial = counters_arg(&counters, &cm)?;
                    let verdict = cm.accepts_from(&encoded, initial.as_deref(), steps);
                    println!(
                        "{}",
                        match verdict {
                            Acceptance::Accepted => "accepted",
                            Acceptance::Rejected => "rejected",
                            Acceptance::BoundHit => "bound hit",
                        }
                    );
                    Ok(if verdict == Acceptance::BoundHit { 3 } else { 0 })
                }
                (AnyMachine::Register(p), None, Some(x)) => {
                    let (input, output) = match (p.input, p.output) {
                        (Some(i), Some(o)) => (i, o),
                        _ => return Err(Failure::usage("register machine needs `input:` and `output:` lines")),
                    };
                    match p.machine.run(x, input, output, steps).map_err(|e| Failure::invalid(e.to_string()))? {
                        RegisterOutcome::Halted { output, steps } => {
                            println!("{output}");
                            eprintln!("halted after {steps} steps");
                            Ok(0)
                        }
                        RegisterOutcome::NonHaltingWithinBound => {
                            println!("no halt within {steps} steps");
                            Ok(3)
                        }
                    }
                }
                (AnyMachine::Counter(_), ..) => Err(Failure::usage("counter machines take --word")),
                (AnyMachine::Register(_), ..) => Err(Failure::usage("register machines take --input")),
            }
        }
        Command::Machine(MachineCommand::Enum { machine, max_len, steps, counters }) => {
            let cm = match load_machine(&machine)? {
                AnyMachine::Counter(cm) => cm,
                AnyMachine::Register(p) => acceptor(&p)?,
            };
            let initial = counters_arg(&counters, &cm)?;
            let accepted = cm.enumerate_accepted_from(max_len, initial.as_deref(), steps);
            print_words(&accepted.words);
            eprintln!("exact: {}", accepted.exact);
            Ok(if accepted.exact { 0 } else { 3 })
        }
        Command::Compile(CompileCommand::TwoCounter { machine, output }) => {
            let cm = load(&machine, parse_machine)?;
            let system = compile_two_counter(&cm).map_err(|e| Failure::invalid(e.to_string()))?;
            write_out(output.as_deref(), &emit_grammar(&system))?;
            Ok(0)
        }
        Command::Compile(CompileCommand::Universal { machine, code, code_counter, output }) => {
            let (cm, code_counter) = match load_machine(&machine)? {
                AnyMachine::Register(p) => (acceptor(&p)?, roles(&p)?.0),
                AnyMachine::Counter(cm) => {
                    let c = code_counter.ok_or_else(|| Failure::usage("counter machines need --code-counter"))?;
                    if c == 0 {
                        return Err(Failure::usage("--code-counter is 1-based"));
                    }
                    (cm, c - 1)
                }
            };
            let mut system = compile_universal(&cm).map_err(|e| Failure::invalid(e.to_string()))?;
            apply_program(&mut system, code_counter, code).map_err(|e| Failure::invalid(e.to_string()))?;
            write_out(output.as_deref(), &emit_grammar(&system))?;
            Ok(0)
        }
        Command::Compile(CompileCommand::Acceptor { machine, output }) => {
            let p = load(&machine, parse_register)?;
            write_out(output.as_deref(), &emit_machine(&acceptor(&p)?))?;
            Ok(0)
        }
        Command::Size { grammar } => {
            let system = load(&grammar, parse_grammar)?;
            let size = size_report(&system);
            println!("{size}");
            let universal = system.metadata().get("construction").is_some_and(|c| c == "universal");
            if let (true, Some(m)) = (universal, system.metadata().get("transitions").and_then(|m| m.parse().ok())) {
                let bounds = UniversalBounds::for_transitions(m);
                println!(
                    "transitions={m} bound: components<={} rules<={} nonterminals<={} {}",
                    bounds.components,
                    bounds.rules,
                    bounds.nonterminals,
                    if bounds.admits(&size) { "PASS" } else { "FAIL" }
                );
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let system = load(&args.grammar, parse_grammar)?;
            let cm = match load_machine(&args.machine)? {
                AnyMachine::Counter(cm) => cm,
                AnyMachine::Register(p) => acceptor(&p)?,
            };
            let mut options = VerifyOptions::new(args.max_len);
            options.machine_steps = args.steps;
            options.max_depth = args.max_depth;
            options.max_configurations = args.max_configs;
            options.max_string_length = args.max_string_len;
            options.enumeration.workers = args.workers.max(1);
            options.enumeration.reduction = args.reduction.into();
            options.initial_counters = counters_arg(&args.counters, &cm)?;
            let report = check_equivalence_with(&system, &cm, &options).map_err(|e| Failure::invalid(e.to_string()))?;
            let list = |ws: &std::collections::BTreeSet<Word>| {
                ws.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            };
            println!("agreed: {}", list(&report.agreed));
            println!("only in grammar: {}", list(&report.only_in_grammar));
            println!("only in machine: {}", list(&report.only_in_machine));
            println!("conclusive: {}", report.conclusive());
            println!("verdict: {}", report.verdict());
            eprintln!("{:?}", report.grammar_stats);
            Ok(match report.verdict() {
                Verdict::Equivalent => 0,
                Verdict::Inconclusive => 3,
                Verdict::Mismatch => 4,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
