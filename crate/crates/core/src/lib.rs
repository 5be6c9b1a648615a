//! Parallel communicating (PC) grammar systems with context-free components,
//! counter and register machines, and compilers from machines to grammar
//! systems.
//!
//! The derivation engine implements both step kinds (rewriting and
//! communication) and a bounded breadth-first enumeration of the language
//! generated at the master. The [`constructions`] module compiles a
//! two-counter machine into a six-component non-returning system, and an
//! n-counter machine into an (n+4)-component system whose code component can
//! be initialised with a program word. [`verify`] compares a grammar system
//! with a counter machine on all words up to a length bound.

pub mod constructions;
pub mod derivation;
pub mod format;
pub mod grammar;
pub mod machines;
pub mod register;
pub mod verify;
pub mod word;

/// Spelling of the empty word in rendered output and in the text formats.
pub const EPSILON: &str = "<eps>";

pub use derivation::{
    enumerate_language, enumerate_language_with, replay_trace, silent_symbols, CommunicationOutcome, Engine,
    EngineError, EnumerationBounds, EnumerationOptions, EnumerationResult, EnumerationStats, OccurrenceStrategy,
    Reduction, RewriteOutcome, StepKind,
};
pub use grammar::{
    validate, Component, Configuration, Mode, PcgSystem, Production, Sentential, Symbol, SymbolKind, SymbolTable,
    Violation,
};
pub use machines::{Acceptance, Action, CounterMachine, CounterRule, Guard, MachineConfig, Read};
pub use register::{Instruction, RegisterMachine, RegisterOutcome};
pub use word::Word;
