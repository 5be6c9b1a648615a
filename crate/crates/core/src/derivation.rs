//! Direct derivation (rewriting and communication steps), bounded language
//! enumeration and trace replay.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::grammar::{Configuration, Mode, PcgSystem, Sentential, Symbol, SymbolKind};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Rewriting,
    Communication,
    /// Every string is terminal.
    Final,
    /// No successor exists. Only reported by the successor generators.
    Blocked,
}

/// Which nonterminal occurrences may be rewritten in a rewriting step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OccurrenceStrategy {
    /// Any occurrence. This is the derivation relation of the grammar system.
    #[default]
    All,
    /// Only the leftmost nonterminal. Faster, but it misses derivations in
    /// which components must rewrite different positions in lockstep.
    Leftmost,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("configuration has {found} strings but the system has {expected} components")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("expected a {expected:?} configuration, found {found:?}")]
    WrongStepKind { expected: StepKind, found: StepKind },
    #[error("no such successor: step {step} selects {index} but only {available} exist")]
    NoSuchSuccessor { step: usize, index: usize, available: usize },
    #[error("step {step} is blocked")]
    Blocked { step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommunicationOutcome {
    Next(Configuration),
    /// The step would leave the configuration unchanged, so it never changes.
    Blocked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RewriteOutcome {
    /// Deduplicated, in canonical order.
    Successors(Vec<Configuration>),
    /// `component` holds a nonterminal string that no production applies to.
    Blocked { component: usize },
}

/// Result of one derivation step from a configuration, whatever its kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    Final,
    Blocked,
    Successors(Vec<Configuration>),
}

/// Successor generation for one system. Pure; safe to share across threads.
#[derive(Clone, Copy, Debug)]
pub struct Engine<'a> {
    system: &'a PcgSystem,
    occurrences: OccurrenceStrategy,
}

impl<'a> Engine<'a> {
    pub fn new(system: &'a PcgSystem) -> Self {
        Engine { system, occurrences: OccurrenceStrategy::All }
    }

    pub fn with_occurrences(mut self, occurrences: OccurrenceStrategy) -> Self {
        self.occurrences = occurrences;
        self
    }

    pub fn system(&self) -> &'a PcgSystem {
        self.system
    }

    fn check_shape(&self, config: &Configuration) -> Result<(), EngineError> {
        if config.len() != self.system.len() {
            return Err(EngineError::ShapeMismatch { expected: self.system.len(), found: config.len() });
        }
        Ok(())
    }

    fn kind(&self, s: Symbol) -> Option<SymbolKind> {
        self.system.symbols().kind(s)
    }

    fn is_terminal_string(&self, s: &[Symbol]) -> bool {
        s.iter().all(|&x| self.kind(x) == Some(SymbolKind::Terminal))
    }

    fn has_query(&self, s: &[Symbol]) -> bool {
        s.iter().any(|&x| matches!(self.kind(x), Some(SymbolKind::Query(_))))
    }

    pub fn classify(&self, config: &Configuration) -> Result<StepKind, EngineError> {
        self.check_shape(config)?;
        Ok(self.classify_unchecked(config))
    }

    fn classify_unchecked(&self, config: &Configuration) -> StepKind {
        let strings = config.strings();
        if strings.iter().all(|s| self.is_terminal_string(s)) {
            StepKind::Final
        } else if strings.iter().any(|s| self.has_query(s)) {
            StepKind::Communication
        } else {
            StepKind::Rewriting
        }
    }

    pub fn communication_step(&self, config: &Configuration) -> Result<CommunicationOutcome, EngineError> {
        let found = self.classify(config)?;
        if found != StepKind::Communication {
            return Err(EngineError::WrongStepKind { expected: StepKind::Communication, found });
        }
        Ok(self.communicate(config))
    }

    fn communicate(&self, config: &Configuration) -> CommunicationOutcome {
        let strings = config.strings();
        let n = strings.len();
        let query_free: Vec<bool> = strings.iter().map(|s| !self.has_query(s)).collect();
        let mut next = strings.to_vec();
        let mut delivered = vec![false; n];
        for (i, x) in strings.iter().enumerate() {
            if query_free[i] {
                continue;
            }
            let satisfiable = x.iter().all(|&s| match self.kind(s) {
                Some(SymbolKind::Query(j)) => j < n && query_free[j],
                _ => true,
            });
            if !satisfiable {
                continue;
            }
            let mut y = Vec::with_capacity(x.len());
            for &s in x {
                match self.kind(s) {
                    Some(SymbolKind::Query(j)) => {
                        y.extend_from_slice(&strings[j]);
                        delivered[j] = true;
                    }
                    _ => y.push(s),
                }
            }
            next[i] = y;
        }
        if self.system.mode() == Mode::Returning {
            for (j, sent) in delivered.iter().enumerate() {
                if *sent {
                    next[j] = self.system.component(j).axiom.clone();
                }
            }
        }
        if next == strings {
            CommunicationOutcome::Blocked
        } else {
            CommunicationOutcome::Next(Configuration(next))
        }
    }

    /// One-step rewrites of a single component string, deduplicated, ordered
    /// by occurrence position then production order.
    pub fn component_rewrites(&self, component: usize, x: &[Symbol]) -> Vec<Sentential> {
        let mut out: Vec<Sentential> = Vec::new();
        let mut seen: FxHashSet<Sentential> = FxHashSet::default();
        for (pos, &s) in x.iter().enumerate() {
            if self.kind(s) == Some(SymbolKind::Terminal) {
                continue;
            }
            for p in self.system.productions_for(component, s) {
                let mut y = Vec::with_capacity(x.len() + p.rhs.len());
                y.extend_from_slice(&x[..pos]);
                y.extend_from_slice(&p.rhs);
                y.extend_from_slice(&x[pos + 1..]);
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
            if self.occurrences == OccurrenceStrategy::Leftmost {
                break;
            }
        }
        out
    }

    pub fn rewriting_successors(&self, config: &Configuration) -> Result<RewriteOutcome, EngineError> {
        let found = self.classify(config)?;
        if found != StepKind::Rewriting {
            return Err(EngineError::WrongStepKind { expected: StepKind::Rewriting, found });
        }
        Ok(self.rewrite(config))
    }

    fn rewrite(&self, config: &Configuration) -> RewriteOutcome {
        let mut options: Vec<Vec<Sentential>> = Vec::with_capacity(config.len());
        for (i, x) in config.strings().iter().enumerate() {
            if self.is_terminal_string(x) {
                options.push(vec![x.clone()]);
                continue;
            }
            let rewrites = self.component_rewrites(i, x);
            if rewrites.is_empty() {
                return RewriteOutcome::Blocked { component: i };
            }
            options.push(rewrites);
        }
        // Mixed-radix product, first component most significant.
        let total: usize = options.iter().map(Vec::len).product();
        let mut successors = Vec::with_capacity(total);
        let mut digits = vec![0usize; options.len()];
        loop {
            successors.push(Configuration(digits.iter().zip(&options).map(|(&d, opts)| opts[d].clone()).collect()));
            let mut k = options.len();
            loop {
                if k == 0 {
                    return RewriteOutcome::Successors(successors);
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < options[k].len() {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    /// All successors of `config` in canonical order, whatever the step kind.
    pub fn expand(&self, config: &Configuration) -> Result<Expansion, EngineError> {
        self.check_shape(config)?;
        Ok(self.expand_unchecked(config))
    }

    fn expand_unchecked(&self, config: &Configuration) -> Expansion {
        match self.classify_unchecked(config) {
            StepKind::Final | StepKind::Blocked => Expansion::Final,
            StepKind::Communication => match self.communicate(config) {
                CommunicationOutcome::Next(c) => Expansion::Successors(vec![c]),
                CommunicationOutcome::Blocked => Expansion::Blocked,
            },
            StepKind::Rewriting => match self.rewrite(config) {
                RewriteOutcome::Successors(v) => Expansion::Successors(v),
                RewriteOutcome::Blocked { .. } => Expansion::Blocked,
            },
        }
    }
}

/// Replays a derivation: `choices[k]` selects the successor of step `k` by
/// its position in the canonical successor ordering. A communication step has
/// exactly one successor (selector 0).
pub fn replay_trace(system: &PcgSystem, choices: &[usize]) -> Result<Vec<Configuration>, EngineError> {
    let engine = Engine::new(system);
    let mut trace = vec![system.initial_configuration()];
    for (step, &index) in choices.iter().enumerate() {
        let current = trace.last().expect("trace is never empty");
        let next = match engine.expand(current)? {
            Expansion::Final => return Err(EngineError::NoSuchSuccessor { step, index, available: 0 }),
            Expansion::Blocked => return Err(EngineError::Blocked { step }),
            Expansion::Successors(mut list) => {
                if index >= list.len() {
                    return Err(EngineError::NoSuchSuccessor { step, index, available: list.len() });
                }
                list.swap_remove(index)
            }
        };
        trace.push(next);
    }
    Ok(trace)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    /// Derivation steps of either kind.
    pub max_depth: usize,
    /// Maximum number of distinct configurations visited.
    pub max_configurations: usize,
    /// Configurations with a longer string are pruned.
    pub max_string_length: usize,
    /// When set, configurations whose master string already holds more
    /// terminals are dropped. Only applied where terminals can never leave
    /// the master (non-returning mode, or a master nobody queries), so it
    /// does not make the search inexact.
    pub max_word_length: Option<usize>,
}

impl EnumerationBounds {
    pub fn new(max_depth: usize, max_configurations: usize, max_string_length: usize) -> Self {
        EnumerationBounds { max_depth, max_configurations, max_string_length, max_word_length: None }
    }

    pub fn with_max_word_length(mut self, max_word_length: usize) -> Self {
        self.max_word_length = Some(max_word_length);
        self
    }
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds::new(64, 1_000_000, 256)
    }
}

/// Optional state-space reductions. Each either identifies configurations
/// with the same future behaviour or drops configurations with no terminal
/// future, so the generated word set and exhaustiveness are unchanged.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Reduction {
    /// Deduplicate on the full configuration tuple.
    #[default]
    None,
    /// In components that no query ever addresses, symbols whose only
    /// productions are erasing can be erased in any order with the same
    /// outcome. Configurations that differ only in where such symbols sit,
    /// or in which of them remain, but agree on how many remain, are
    /// identified.
    PrivateErasures,
    /// `PrivateErasures`; in addition the order of silent symbols is
    /// ignored everywhere (see [`silent_symbols`]), and configurations from
    /// which the master can provably never become terminal are dropped.
    Full,
}

/// For each component, the symbols its string may contain whenever another
/// component queries it.
fn query_contents(system: &PcgSystem) -> Vec<Vec<bool>> {
    let symbols = system.symbols();
    let n = system.len();
    let width = symbols.len();
    let mut content = vec![vec![false; width]; n];
    for (k, c) in system.components().iter().enumerate() {
        // a one-symbol axiom is always rewritten before the first communication
        if system.mode() == Mode::Returning || c.axiom.len() != 1 {
            for &s in &c.axiom {
                content[k][s.index()] = true;
            }
        }
        for p in &c.productions {
            for &s in &p.rhs {
                content[k][s.index()] = true;
            }
        }
    }
    loop {
        let mut changed = false;
        for k in 0..n {
            for j in 0..n {
                let Some(q) = symbols.query(j) else { continue };
                if j == k || !content[k][q.index()] {
                    continue;
                }
                let from = content[j].clone();
                for (dst, &src) in content[k].iter_mut().zip(&from) {
                    if src && !*dst {
                        *dst = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    content
}

/// True if the string of component `k` may ever be empty, or consist of
/// query symbols only, when queried.
fn may_be_empty(system: &PcgSystem, k: usize) -> bool {
    let symbols = system.symbols();
    let only_queries = |w: &[Symbol]| w.iter().all(|&s| symbols.queried_component(s).is_some());
    let c = system.component(k);
    only_queries(&c.axiom) || c.productions.iter().any(|p| only_queries(&p.rhs))
}

/// Least set of symbols that the master may turn into a terminal string,
/// never letting a query to `avoid` appear.
fn master_eliminable(system: &PcgSystem, content: &[Vec<bool>], avoid: Option<usize>) -> Vec<bool> {
    let symbols = system.symbols();
    let master = system.master();
    let width = symbols.len();
    let empty: Vec<bool> = (0..system.len()).map(|k| may_be_empty(system, k)).collect();
    let mut elim: Vec<bool> =
        (0..width).map(|k| symbols.kind(Symbol::from_index(k)) == Some(SymbolKind::Terminal)).collect();
    loop {
        let mut changed = false;
        for k in 0..width {
            if elim[k] {
                continue;
            }
            let s = Symbol::from_index(k);
            let ok = match symbols.kind(s) {
                Some(SymbolKind::Query(j)) => {
                    Some(j) != avoid && j < content.len() && (empty[j] || (0..width).any(|x| content[j][x] && elim[x]))
                }
                Some(SymbolKind::Nonterminal) => {
                    system.productions_for(master, s).any(|p| p.rhs.iter().all(|r| elim[r.index()]))
                }
                _ => false,
            };
            if ok {
                elim[k] = true;
                changed = true;
            }
        }
        if !changed {
            return elim;
        }
    }
}

/// Recognises configurations from which the master can provably never
/// become terminal.
///
/// * The master holds a symbol it can never eliminate.
/// * In non-returning mode, a component holds a nonterminal it has no
///   production for (so it keeps it forever), the master cannot eliminate
///   that symbol, and the master holds a symbol it cannot eliminate without
///   querying that component.
struct DeadCheck {
    master_fixed: Option<Vec<bool>>,
    stuck: Vec<Option<(Vec<bool>, Vec<bool>)>>,
}

impl DeadCheck {
    fn none(components: usize) -> Self {
        DeadCheck { master_fixed: None, stuck: vec![None; components] }
    }

    fn new(system: &PcgSystem) -> Self {
        let symbols = system.symbols();
        let master = system.master();
        if master >= system.len() {
            return DeadCheck::none(system.len());
        }
        let content = query_contents(system);
        let master_queried = symbols.query(master).is_some_and(|q| (0..system.len()).any(|k| content[k][q.index()]));
        let elim = master_eliminable(system, &content, None);
        let nonterminal = |k: usize| symbols.kind(Symbol::from_index(k)) == Some(SymbolKind::Nonterminal);
        let fixed: Vec<bool> = (0..elim.len()).map(|k| nonterminal(k) && !elim[k]).collect();
        let master_fixed =
            (fixed.iter().any(|&f| f) && (system.mode() == Mode::NonReturning || !master_queried)).then_some(fixed);
        let stuck = (0..system.len())
            .map(|j| {
                if j == master || system.mode() != Mode::NonReturning {
                    return None;
                }
                let stuck: Vec<bool> = (0..elim.len())
                    .map(|k| nonterminal(k) && !elim[k] && !system.has_production_for(j, Symbol::from_index(k)))
                    .collect();
                if !stuck.iter().any(|&x| x) {
                    return None;
                }
                let avoiding = master_eliminable(system, &content, Some(j));
                let forcing: Vec<bool> = avoiding.iter().map(|&e| !e).collect();
                Some((stuck, forcing))
            })
            .collect();
        DeadCheck { master_fixed, stuck }
    }

    fn is_dead(&self, config: &Configuration, master: usize) -> bool {
        let m = &config[master];
        if let Some(fixed) = &self.master_fixed {
            if m.iter().any(|s| fixed[s.index()]) {
                return true;
            }
        }
        self.stuck.iter().zip(config.strings()).any(|(check, x)| {
            check.as_ref().is_some_and(|(stuck, forcing)| {
                x.iter().any(|s| stuck[s.index()]) && m.iter().any(|s| forcing[s.index()])
            })
        })
    }
}

/// Symbols none of whose descendants can ever be a terminal: nonterminals
/// whose productions (in any component) only produce silent symbols, and
/// queries to components that can only ever hold silent symbols.
///
/// Rewriting is context-free and communication only looks at queries, which
/// are kept in place unless silent, so where a silent symbol sits in a
/// string never matters; only how many of each there are.
pub fn silent_symbols(system: &PcgSystem) -> Vec<bool> {
    let symbols = system.symbols();
    let n = system.len();
    let width = symbols.len();
    let content = query_contents(system);
    let mut silent: Vec<bool> =
        (0..width).map(|k| !matches!(symbols.kind(Symbol::from_index(k)), Some(SymbolKind::Terminal) | None)).collect();
    loop {
        let mut changed = false;
        for k in 0..width {
            if !silent[k] {
                continue;
            }
            let s = Symbol::from_index(k);
            let loud = match symbols.kind(s) {
                Some(SymbolKind::Query(j)) => content.get(j).is_none_or(|c| (0..width).any(|x| c[x] && !silent[x])),
                _ => (0..n).any(|c| system.productions_for(c, s).any(|p| p.rhs.iter().any(|r| !silent[r.index()]))),
            };
            if loud {
                silent[k] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    silent
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Worker threads for frontier expansion; 1 runs on the calling thread.
    pub workers: usize,
    pub occurrences: OccurrenceStrategy,
    pub reduction: Reduction,
    /// Record, for every word, a choice list that [`replay_trace`] accepts.
    pub witnesses: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            workers: 1,
            occurrences: OccurrenceStrategy::All,
            reduction: Reduction::None,
            witnesses: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub visited: usize,
    pub finals: usize,
    pub blocked: usize,
    pub pruned_depth: usize,
    pub pruned_length: usize,
    pub pruned_budget: usize,
    pub pruned_word_length: usize,
    /// Dropped because the master can never become terminal from there.
    pub pruned_dead: usize,
    pub max_depth_reached: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Terminal master strings seen at any visited configuration.
    pub words: BTreeSet<Word>,
    /// True iff no bound cut the search short.
    pub exhausted: bool,
    pub stats: EnumerationStats,
    /// Present when requested in [`EnumerationOptions`].
    pub witnesses: BTreeMap<Word, Vec<usize>>,
}

pub fn enumerate_language(system: &PcgSystem, bounds: EnumerationBounds) -> EnumerationResult {
    enumerate_language_with(system, bounds, EnumerationOptions::default())
}

struct KeyMaker {
    // per component: None if it is queried somewhere
    erasable: Vec<Option<(Vec<bool>, Symbol)>>,
    silent: Option<Vec<bool>>,
}

impl KeyMaker {
    fn new(system: &PcgSystem, reduction: Reduction) -> Self {
        if reduction == Reduction::None {
            return KeyMaker { erasable: vec![None; system.len()], silent: None };
        }
        let symbols = system.symbols();
        let mut queried = vec![false; system.len()];
        for c in system.components() {
            for p in &c.productions {
                for &s in &p.rhs {
                    if let Some(j) = symbols.queried_component(s) {
                        if j < queried.len() {
                            queried[j] = true;
                        }
                    }
                }
            }
        }
        let erasable = (0..system.len())
            .map(|i| {
                if queried[i] {
                    return None;
                }
                let flags: Vec<bool> = (0..symbols.len())
                    .map(|k| {
                        let s = Symbol::from_index(k);
                        symbols.is_nonterminal(s)
                            && system.has_production_for(i, s)
                            && system.productions_for(i, s).all(|p| p.rhs.is_empty())
                    })
                    .collect();
                let representative = flags.iter().position(|&f| f)?;
                Some((flags, Symbol::from_index(representative)))
            })
            .collect();
        let silent = (reduction == Reduction::Full).then(|| silent_symbols(system)).filter(|s| s.iter().any(|&x| x));
        KeyMaker { erasable, silent }
    }

    fn active(&self) -> bool {
        self.silent.is_some() || self.erasable.iter().any(Option::is_some)
    }

    // Layout: loud symbols in order, then sorted silent ones, then one
    // representative per erased private symbol. Each part is recognisable
    // by symbol class, so distinct classes never share a key.
    fn key(&self, config: &Configuration) -> Configuration {
        if !self.active() {
            return config.clone();
        }
        Configuration(
            config
                .strings()
                .iter()
                .zip(&self.erasable)
                .map(|(x, e)| {
                    let (mut kept, tail): (Sentential, Sentential) = match e {
                        None => (x.clone(), Vec::new()),
                        Some((flags, rep)) => {
                            let kept: Sentential = x.iter().copied().filter(|s| !flags[s.index()]).collect();
                            let erased = x.len() - kept.len();
                            (kept, vec![*rep; erased])
                        }
                    };
                    if let Some(silent) = &self.silent {
                        let mut quiet: Sentential = kept.iter().copied().filter(|s| silent[s.index()]).collect();
                        if !quiet.is_empty() {
                            quiet.sort_unstable();
                            kept.retain(|s| !silent[s.index()]);
                            kept.extend(quiet);
                        }
                    }
                    kept.extend(tail);
                    kept
                })
                .collect(),
        )
    }
}

const CHUNK: usize = 2048;

/// Breadth-first search over deduplicated configurations from the initial
/// configuration, collecting every terminal master string.
///
/// The frontier of each level is expanded in order (optionally on several
/// workers) and merged sequentially, so the result does not depend on the
/// worker count, even when a budget is hit.
pub fn enumerate_language_with(
    system: &PcgSystem,
    bounds: EnumerationBounds,
    options: EnumerationOptions,
) -> EnumerationResult {
    let engine = Engine::new(system).with_occurrences(options.occurrences);
    let symbols = system.symbols();
    let master = system.master();
    let keys = KeyMaker::new(system, options.reduction);
    let dead =
        if options.reduction == Reduction::Full { DeadCheck::new(system) } else { DeadCheck::none(system.len()) };

    let master_queried = symbols
        .query(master)
        .is_some_and(|q| system.components().iter().any(|c| c.productions.iter().any(|p| p.rhs.contains(&q))));
    let word_limit = bounds.max_word_length.filter(|_| system.mode() == Mode::NonReturning || !master_queried);

    let mut stats = EnumerationStats::default();
    let mut exhausted = true;
    let mut visited: FxHashSet<Configuration> = FxHashSet::default();
    let mut words: FxHashSet<Sentential> = FxHashSet::default();
    // arena of (parent, choice) for witness reconstruction
    let mut arena: Vec<(u32, u32)> = Vec::new();
    let mut witness_of: FxHashMap<Sentential, u32> = FxHashMap::default();

    let pool = (options.workers > 1).then(|| {
        rayon::ThreadPoolBuilder::new().num_threads(options.workers).build().expect("failed to build worker pool")
    });
    let expand_all = |chunk: &[(Configuration, u32)]| -> Vec<Expansion> {
        match &pool {
            Some(pool) => pool.install(|| chunk.par_iter().map(|(c, _)| engine.expand_unchecked(c)).collect()),
            None => chunk.iter().map(|(c, _)| engine.expand_unchecked(c)).collect(),
        }
    };

    let too_long = |c: &Configuration| c.strings().iter().any(|s| s.len() > bounds.max_string_length);
    let too_many_terminals = |c: &Configuration| {
        word_limit.is_some_and(|limit| {
            c[master].iter().filter(|&&s| symbols.kind(s) == Some(SymbolKind::Terminal)).count() > limit
        })
    };

    let initial = system.initial_configuration();
    let mut frontier: Vec<(Configuration, u32)> = Vec::new();
    if too_long(&initial) {
        stats.pruned_length += 1;
        exhausted = false;
    } else if bounds.max_configurations == 0 {
        stats.pruned_budget += 1;
        exhausted = false;
    } else if too_many_terminals(&initial) {
        stats.pruned_word_length += 1;
    } else {
        visited.insert(keys.key(&initial));
        arena.push((u32::MAX, 0));
        if engine.is_terminal_string(&initial[master]) {
            words.insert(initial[master].clone());
            witness_of.insert(initial[master].clone(), 0);
        }
        frontier.push((initial, 0));
    }

    let mut depth = 0usize;
    while !frontier.is_empty() {
        stats.max_depth_reached = depth;
        if depth == bounds.max_depth {
            for chunk in frontier.chunks(CHUNK) {
                for expansion in expand_all(chunk) {
                    if let Expansion::Successors(list) = expansion {
                        for s in list {
                            if !too_many_terminals(&s) && !dead.is_dead(&s, master) && !visited.contains(&keys.key(&s))
                            {
                                stats.pruned_depth += 1;
                                exhausted = false;
                            }
                        }
                    }
                }
            }
            break;
        }
        let mut next: Vec<(Configuration, u32)> = Vec::new();
        for chunk in frontier.chunks(CHUNK) {
            let expansions = expand_all(chunk);
            for ((_, parent), expansion) in chunk.iter().zip(expansions) {
                let list = match expansion {
                    Expansion::Final => {
                        stats.finals += 1;
                        continue;
                    }
                    Expansion::Blocked => {
                        stats.blocked += 1;
                        continue;
                    }
                    Expansion::Successors(list) => list,
                };
                for (choice, s) in list.into_iter().enumerate() {
                    if too_long(&s) {
                        stats.pruned_length += 1;
                        exhausted = false;
                        continue;
                    }
                    if too_many_terminals(&s) {
                        stats.pruned_word_length += 1;
                        continue;
                    }
                    if dead.is_dead(&s, master) {
                        stats.pruned_dead += 1;
                        continue;
                    }
                    let key = keys.key(&s);
                    if visited.contains(&key) {
                        continue;
                    }
                    if visited.len() >= bounds.max_configurations {
                        stats.pruned_budget += 1;
                        exhausted = false;
                        continue;
                    }
                    visited.insert(key);
                    let id = arena.len() as u32;
                    if options.witnesses {
                        arena.push((*parent, choice as u32));
                    } else {
                        arena.push((0, 0));
                    }
                    if engine.is_terminal_string(&s[master]) && words.insert(s[master].clone()) {
                        witness_of.insert(s[master].clone(), id);
                    }
                    next.push((s, id));
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    stats.visited = visited.len();

    let to_word = |x: &Sentential| Word::new(x.iter().map(|&s| symbols.name(s).to_string()));
    let mut witnesses = BTreeMap::new();
    if options.witnesses {
        for (x, &id) in &witness_of {
            let mut choices = Vec::new();
            let mut cur = id;
            while arena[cur as usize].0 != u32::MAX {
                let (parent, choice) = arena[cur as usize];
                choices.push(choice as usize);
                cur = parent;
            }
            choices.reverse();
            witnesses.insert(to_word(x), choices);
        }
    }
    EnumerationResult { words: words.iter().map(to_word).collect(), exhausted, stats, witnesses }
}
