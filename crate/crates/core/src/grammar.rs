//! Data model for parallel communicating grammar systems with context-free
//! components.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Interned grammar symbol. Names live in the owning [`SymbolTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Self {
        Symbol(index as u32)
    }
}

/// A sentential form: a string over nonterminals, terminals and query symbols.
pub type Sentential = Vec<Symbol>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Nonterminal,
    Terminal,
    /// Query symbol addressing the component with this (0-based) index.
    Query(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Membership {
    nonterminal: bool,
    terminal: bool,
    query: Option<usize>,
}

/// Nonterminals, terminals and the query symbols `Q1..Qn`.
///
/// A name declared in more than one set is interned once and recorded in each
/// set it was declared in; [`validate`] reports such overlaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    lookup: HashMap<String, Symbol>,
    membership: Vec<Membership>,
    kinds: Vec<SymbolKind>,
    nonterminals: Vec<Symbol>,
    terminals: Vec<Symbol>,
    queries: Vec<Symbol>,
}

/// Name of the query symbol addressing component `index` (0-based).
pub fn query_name(index: usize) -> String {
    format!("Q{}", index + 1)
}

/// True for the reserved query spelling: `Q` followed by one or more digits.
pub fn is_query_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('Q') && name[1..].bytes().all(|b| b.is_ascii_digit())
}

impl SymbolTable {
    pub fn new<N, T>(nonterminals: &[N], terminals: &[T], components: usize) -> Self
    where
        N: AsRef<str>,
        T: AsRef<str>,
    {
        let mut table = SymbolTable {
            names: Vec::new(),
            lookup: HashMap::new(),
            membership: Vec::new(),
            kinds: Vec::new(),
            nonterminals: Vec::new(),
            terminals: Vec::new(),
            queries: Vec::new(),
        };
        for name in nonterminals {
            let s = table.intern(name.as_ref());
            if !table.membership[s.index()].nonterminal {
                table.membership[s.index()].nonterminal = true;
                table.nonterminals.push(s);
            }
        }
        for name in terminals {
            let s = table.intern(name.as_ref());
            if !table.membership[s.index()].terminal {
                table.membership[s.index()].terminal = true;
                table.terminals.push(s);
            }
        }
        for i in 0..components {
            let s = table.intern(&query_name(i));
            table.membership[s.index()].query = Some(i);
            table.queries.push(s);
        }
        table.kinds = table
            .membership
            .iter()
            .map(|m| match (m.query, m.nonterminal) {
                (Some(i), _) => SymbolKind::Query(i),
                (None, true) => SymbolKind::Nonterminal,
                (None, false) => SymbolKind::Terminal,
            })
            .collect();
        table
    }

    fn intern(&mut self, name: &str) -> Symbol {
        if let Some(&s) = self.lookup.get(name) {
            return s;
        }
        let s = Symbol::from_index(self.names.len());
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), s);
        self.membership.push(Membership::default());
        s
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.lookup.get(name).copied()
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        symbol.index() < self.names.len()
    }

    /// # Panics
    /// If `symbol` does not belong to this table.
    pub fn name(&self, symbol: Symbol) -> &str {
        &self.names[symbol.index()]
    }

    pub fn kind(&self, symbol: Symbol) -> Option<SymbolKind> {
        self.kinds.get(symbol.index()).copied()
    }

    pub fn is_terminal(&self, symbol: Symbol) -> bool {
        self.kind(symbol) == Some(SymbolKind::Terminal)
    }

    pub fn is_nonterminal(&self, symbol: Symbol) -> bool {
        self.kind(symbol) == Some(SymbolKind::Nonterminal)
    }

    pub fn queried_component(&self, symbol: Symbol) -> Option<usize> {
        match self.kind(symbol) {
            Some(SymbolKind::Query(i)) => Some(i),
            _ => None,
        }
    }

    pub fn nonterminals(&self) -> &[Symbol] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[Symbol] {
        &self.terminals
    }

    pub fn queries(&self) -> &[Symbol] {
        &self.queries
    }

    /// Query symbol addressing component `component` (0-based).
    pub fn query(&self, component: usize) -> Option<Symbol> {
        self.queries.get(component).copied()
    }

    /// Space-separated rendering; the empty string renders as `<eps>`.
    pub fn render(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return crate::EPSILON.to_string();
        }
        let mut out = String::new();
        for (i, &s) in word.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            match self.names.get(s.index()) {
                Some(name) => out.push_str(name),
                None => out.push_str(&format!("#{}", s.index())),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: Symbol,
    pub rhs: Sentential,
}

impl Production {
    pub fn new(lhs: Symbol, rhs: Sentential) -> Self {
        Production { lhs, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Initial string; a single start symbol unless overridden.
    pub axiom: Sentential,
    pub productions: Vec<Production>,
}

impl Component {
    pub fn new(axiom: Sentential, productions: Vec<Production>) -> Self {
        Component { axiom, productions }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Senders reset to their axiom after delivering their string.
    Returning,
    /// Senders keep their string.
    NonReturning,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Returning => "returning",
            Mode::NonReturning => "nonreturning",
        })
    }
}

/// A PC grammar system `(N, K, Σ, G_1, ..., G_n)` with a master component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcgSystem {
    symbols: SymbolTable,
    components: Vec<Component>,
    master: usize,
    mode: Mode,
    metadata: BTreeMap<String, String>,
    // by_lhs[component][symbol] = indices into that component's productions
    by_lhs: Vec<Vec<Vec<u32>>>,
}

impl PcgSystem {
    /// Never fails; run [`validate`] to check the structural invariants.
    pub fn new(symbols: SymbolTable, components: Vec<Component>, master: usize, mode: Mode) -> Self {
        let mut system = PcgSystem { symbols, components, master, mode, metadata: BTreeMap::new(), by_lhs: Vec::new() };
        system.reindex();
        system
    }

    fn reindex(&mut self) {
        let width = self.symbols.len();
        self.by_lhs = self
            .components
            .iter()
            .map(|c| {
                let mut index = vec![Vec::new(); width];
                for (k, p) in c.productions.iter().enumerate() {
                    if let Some(slot) = index.get_mut(p.lhs.index()) {
                        slot.push(k as u32);
                    }
                }
                index
            })
            .collect();
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &Component {
        &self.components[index]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Master component index (0-based).
    pub fn master(&self) -> usize {
        self.master
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn set_metadata(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.insert(key.into(), value.into());
    }

    /// Productions of `component` whose left-hand side is `symbol`.
    pub fn productions_for(&self, component: usize, symbol: Symbol) -> impl Iterator<Item = &Production> + '_ {
        let indices: &[u32] = self.by_lhs[component].get(symbol.index()).map(Vec::as_slice).unwrap_or(&[]);
        let productions = &self.components[component].productions;
        indices.iter().map(move |&k| &productions[k as usize])
    }

    pub fn has_production_for(&self, component: usize, symbol: Symbol) -> bool {
        self.by_lhs[component].get(symbol.index()).is_some_and(|v| !v.is_empty())
    }

    /// Replaces a component's axiom, e.g. with a program word `A^k S`.
    pub fn set_axiom(&mut self, component: usize, axiom: Sentential) {
        self.components[component].axiom = axiom;
    }

    pub fn push_production(&mut self, component: usize, production: Production) {
        self.components[component].productions.push(production);
        self.reindex();
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn initial_configuration(&self) -> Configuration {
        Configuration(self.components.iter().map(|c| c.axiom.clone()).collect())
    }

    /// Total number of productions over all components.
    pub fn rule_count(&self) -> usize {
        self.components.iter().map(|c| c.productions.len()).sum()
    }

    pub fn render(&self, config: &Configuration) -> String {
        let parts: Vec<String> = config.0.iter().map(|s| self.symbols.render(s)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Tuple of the current strings of all components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(pub Vec<Sentential>);

impl Configuration {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn strings(&self) -> &[Sentential] {
        &self.0
    }
}

impl std::ops::Index<usize> for Configuration {
    type Output = Sentential;

    fn index(&self, index: usize) -> &Sentential {
        &self.0[index]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoComponents,
    MasterOutOfRange { master: usize, components: usize },
    QueryCountMismatch { queries: usize, components: usize },
    AlphabetsNotDisjoint { symbol: String },
    UndefinedSymbol { component: usize, rule: Option<usize> },
    QuerySymbolOnLhs { component: usize, rule: usize },
    TerminalOnLhs { component: usize, rule: usize },
    EmptyAxiom { component: usize },
    AxiomNotNonterminal { component: usize, position: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoComponents => write!(f, "system has no components"),
            Violation::MasterOutOfRange { master, components } => {
                write!(f, "master index {} out of range for {} components", master + 1, components)
            }
            Violation::QueryCountMismatch { queries, components } => {
                write!(f, "{queries} query symbols for {components} components")
            }
            Violation::AlphabetsNotDisjoint { symbol } => {
                write!(f, "alphabets not disjoint: `{symbol}` declared in more than one set")
            }
            Violation::UndefinedSymbol { component, rule } => match rule {
                Some(r) => write!(f, "component {}, rule {}: undefined symbol", component + 1, r + 1),
                None => write!(f, "component {}: undefined symbol in axiom", component + 1),
            },
            Violation::QuerySymbolOnLhs { component, rule } => {
                write!(f, "component {}, rule {}: query symbol on lhs", component + 1, rule + 1)
            }
            Violation::TerminalOnLhs { component, rule } => {
                write!(f, "component {}, rule {}: terminal on lhs", component + 1, rule + 1)
            }
            Violation::EmptyAxiom { component } => write!(f, "component {}: empty axiom", component + 1),
            Violation::AxiomNotNonterminal { component, position } => {
                write!(f, "component {}: axiom symbol {} is not a nonterminal", component + 1, position + 1)
            }
        }
    }
}

/// Structural check of all type invariants. Total: reports, never fails.
pub fn validate(system: &PcgSystem) -> Vec<Violation> {
    let mut report = Vec::new();
    let symbols = &system.symbols;
    let n = system.components.len();
    if n == 0 {
        report.push(Violation::NoComponents);
    } else if system.master >= n {
        report.push(Violation::MasterOutOfRange { master: system.master, components: n });
    }
    if symbols.queries.len() != n {
        report.push(Violation::QueryCountMismatch { queries: symbols.queries.len(), components: n });
    }
    for (name, m) in symbols.names.iter().zip(&symbols.membership) {
        let sets = m.nonterminal as u8 + m.terminal as u8 + m.query.is_some() as u8;
        if sets > 1 {
            report.push(Violation::AlphabetsNotDisjoint { symbol: name.clone() });
        }
    }
    for (ci, component) in system.components.iter().enumerate() {
        if component.axiom.is_empty() {
            report.push(Violation::EmptyAxiom { component: ci });
        }
        for (pos, &s) in component.axiom.iter().enumerate() {
            match symbols.kind(s) {
                None => report.push(Violation::UndefinedSymbol { component: ci, rule: None }),
                Some(SymbolKind::Nonterminal) => {}
                Some(_) => report.push(Violation::AxiomNotNonterminal { component: ci, position: pos }),
            }
        }
        for (ri, p) in component.productions.iter().enumerate() {
            match symbols.kind(p.lhs) {
                None => report.push(Violation::UndefinedSymbol { component: ci, rule: Some(ri) }),
                Some(SymbolKind::Query(_)) => report.push(Violation::QuerySymbolOnLhs { component: ci, rule: ri }),
                Some(SymbolKind::Terminal) => report.push(Violation::TerminalOnLhs { component: ci, rule: ri }),
                Some(SymbolKind::Nonterminal) => {}
            }
            if p.rhs.iter().any(|&s| !symbols.contains(s)) {
                report.push(Violation::UndefinedSymbol { component: ci, rule: Some(ri) });
            }
        }
    }
    report
}
