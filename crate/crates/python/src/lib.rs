//! Python bindings: `import pcgs`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use pcgs_core::constructions::{self, size_report};
use pcgs_core::derivation::{enumerate_language_with, EnumerationBounds, EnumerationOptions, Reduction};
use pcgs_core::format::{self, FormatError};
use pcgs_core::register::unary_acceptor;
use pcgs_core::verify::{check_equivalence_with, VerifyOptions};
use pcgs_core::{Acceptance, RegisterOutcome, Word};

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_err(e: FormatError) -> PyErr {
    value_error(e)
}

fn reduction(name: &str) -> PyResult<Reduction> {
    match name {
        "none" => Ok(Reduction::None),
        "erasures" => Ok(Reduction::PrivateErasures),
        "full" => Ok(Reduction::Full),
        other => Err(value_error(format!("unknown reduction `{other}` (none, erasures, full)"))),
    }
}

fn strings<'a>(words: impl IntoIterator<Item = &'a Word>) -> Vec<String> {
    words.into_iter().map(|w| w.to_string()).collect()
}

/// A PC grammar system.
#[pyclass(name = "GrammarSystem", module = "pcgs")]
struct PyGrammarSystem {
    inner: pcgs_core::PcgSystem,
}

#[pymethods]
impl PyGrammarSystem {
    /// Parses the text format and validates the result.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        format::parse_grammar(text).map(|inner| PyGrammarSystem { inner }).map_err(parse_err)
    }

    fn to_text(&self) -> String {
        format::emit_grammar(&self.inner)
    }

    /// Violated invariants as messages; empty when well formed.
    fn validate(&self) -> Vec<String> {
        pcgs_core::validate(&self.inner).iter().map(|v| v.to_string()).collect()
    }

    #[getter]
    fn components(&self) -> usize {
        self.inner.components().len()
    }

    #[getter]
    fn master(&self) -> usize {
        self.inner.master()
    }

    #[getter]
    fn mode(&self) -> String {
        self.inner.mode().to_string()
    }

    /// Returns `(words, exhausted)`.
    #[allow(clippy::too_many_arguments)]
    #[pyo3(signature = (max_depth=64, max_configs=1_000_000, max_string_len=256, max_word_len=None, reduction="none", workers=1))]
    fn enumerate(
        &self,
        py: Python<'_>,
        max_depth: usize,
        max_configs: usize,
        max_string_len: usize,
        max_word_len: Option<usize>,
        reduction: &str,
        workers: usize,
    ) -> PyResult<(Vec<String>, bool)> {
        let mut bounds = EnumerationBounds::new(max_depth, max_configs, max_string_len);
        if let Some(n) = max_word_len {
            bounds = bounds.with_max_word_length(n);
        }
        let options = EnumerationOptions {
            workers: workers.max(1),
            reduction: self::reduction(reduction)?,
            ..Default::default()
        };
        let result = py.detach(|| enumerate_language_with(&self.inner, bounds, options));
        Ok((strings(&result.words), result.exhausted))
    }

    /// Replays successor indices and renders every configuration.
    fn trace(&self, choices: Vec<usize>) -> PyResult<Vec<String>> {
        let trace = pcgs_core::replay_trace(&self.inner, &choices).map_err(value_error)?;
        Ok(trace.iter().map(|c| self.inner.render(c)).collect())
    }

    /// Component, rule, nonterminal and query counts.
    fn size<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = size_report(&self.inner);
        let d = PyDict::new(py);
        d.set_item("components", s.components)?;
        d.set_item("rules", s.rules)?;
        d.set_item("nonterminals", s.nonterminals)?;
        d.set_item("queries", s.queries)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        let s = size_report(&self.inner);
        format!("GrammarSystem({s})")
    }
}

/// A counter machine with a read-only input tape.
#[pyclass(name = "CounterMachine", module = "pcgs")]
struct PyCounterMachine {
    inner: pcgs_core::CounterMachine,
}

#[pymethods]
impl PyCounterMachine {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        format::parse_machine(text).map(|inner| PyCounterMachine { inner }).map_err(parse_err)
    }

    /// The unary acceptor of a register machine with declared input, output
    /// and code registers.
    #[staticmethod]
    fn from_register(text: &str) -> PyResult<Self> {
        let p = format::parse_register(text).map_err(parse_err)?;
        let (Some(code), Some(input), Some(output)) = (p.code, p.input, p.output) else {
            return Err(value_error("register program needs input, output and code registers"));
        };
        unary_acceptor(&p.machine, code, input, output).map(|inner| PyCounterMachine { inner }).map_err(value_error)
    }

    fn to_text(&self) -> String {
        format::emit_machine(&self.inner)
    }

    #[getter]
    fn counters(&self) -> usize {
        self.inner.counters
    }

    #[getter]
    fn rules(&self) -> usize {
        self.inner.rules.len()
    }

    /// "accepted", "rejected" or "bound".
    #[pyo3(signature = (word, steps=10_000, counters=None))]
    fn accepts(&self, word: &str, steps: usize, counters: Option<Vec<u64>>) -> PyResult<&'static str> {
        let encoded = self.inner.encode(&Word::parse(word)).map_err(value_error)?;
        Ok(match self.inner.accepts_from(&encoded, counters.as_deref(), steps) {
            Acceptance::Accepted => "accepted",
            Acceptance::Rejected => "rejected",
            Acceptance::BoundHit => "bound",
        })
    }

    /// Returns `(words, exact)`.
    #[pyo3(signature = (max_len, steps=64, counters=None))]
    fn enumerate(&self, max_len: usize, steps: usize, counters: Option<Vec<u64>>) -> (Vec<String>, bool) {
        let result = self.inner.enumerate_accepted_from(max_len, counters.as_deref(), steps);
        (strings(&result.words), result.exact)
    }
}

#[pyfunction]
fn compile_two_counter(machine: &PyCounterMachine) -> PyResult<PyGrammarSystem> {
    constructions::compile_two_counter(&machine.inner).map(|inner| PyGrammarSystem { inner }).map_err(value_error)
}

/// Universal-shape system with program word `A^code S` in the code
/// component (`code_counter` is 0-based).
#[pyfunction]
#[pyo3(signature = (machine, code=0, code_counter=0))]
fn compile_universal(machine: &PyCounterMachine, code: usize, code_counter: usize) -> PyResult<PyGrammarSystem> {
    let mut inner = constructions::compile_universal(&machine.inner).map_err(value_error)?;
    constructions::apply_program(&mut inner, code_counter, code).map_err(value_error)?;
    Ok(PyGrammarSystem { inner })
}

/// Bounded comparison; returns a dict with the word sets and the verdict.
#[pyfunction]
#[pyo3(signature = (system, machine, max_len=6, steps=64, max_depth=None, max_configs=2_000_000, max_string_len=64, reduction="full", counters=None))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    system: &PyGrammarSystem,
    machine: &PyCounterMachine,
    max_len: usize,
    steps: usize,
    max_depth: Option<usize>,
    max_configs: usize,
    max_string_len: usize,
    reduction: &str,
    counters: Option<Vec<u64>>,
) -> PyResult<Bound<'py, PyDict>> {
    let mut options = VerifyOptions::new(max_len);
    options.machine_steps = steps;
    options.max_depth = max_depth;
    options.max_configurations = max_configs;
    options.max_string_length = max_string_len;
    options.enumeration.reduction = self::reduction(reduction)?;
    options.initial_counters = counters;
    let report = py.detach(|| check_equivalence_with(&system.inner, &machine.inner, &options)).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("verdict", report.verdict().to_string())?;
    d.set_item("agreed", strings(&report.agreed))?;
    d.set_item("only_in_grammar", strings(&report.only_in_grammar))?;
    d.set_item("only_in_machine", strings(&report.only_in_machine))?;
    d.set_item("grammar_exhausted", report.grammar_exhausted)?;
    d.set_item("machine_exact", report.machine_exact)?;
    d.set_item("visited", report.grammar_stats.visited)?;
    Ok(d)
}

/// Runs a register program on `x`; `None` if it does not halt in `steps`.
#[pyfunction]
#[pyo3(signature = (text, x, steps=100_000))]
fn run_register(text: &str, x: u64, steps: usize) -> PyResult<Option<u64>> {
    let p = format::parse_register(text).map_err(parse_err)?;
    let (Some(input), Some(output)) = (p.input, p.output) else {
        return Err(value_error("register program needs input and output registers"));
    };
    match p.machine.run(x, input, output, steps).map_err(value_error)? {
        RegisterOutcome::Halted { output, .. } => Ok(Some(output)),
        RegisterOutcome::NonHaltingWithinBound => Ok(None),
    }
}

#[pymodule]
fn pcgs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrammarSystem>()?;
    m.add_class::<PyCounterMachine>()?;
    m.add_function(wrap_pyfunction!(compile_two_counter, m)?)?;
    m.add_function(wrap_pyfunction!(compile_universal, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_register, m)?)?;
    Ok(())
}
