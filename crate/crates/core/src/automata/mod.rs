//! Boustrophedon (GHBFA) and returning (GHRFA) scanning automata.
//!
//! An automaton reads a picture line by line along a [`ScanPlan`], consuming
//! one `#` after every line. A boustrophedon automaton alternates the
//! orientation of successive lines and switches between its forward and
//! backward state sets at every border; a returning automaton reads every
//! line the same way.
//!
//! [`ScanPlan`]: crate::hexgrid::ScanPlan

pub mod catalog;
mod determinize;
mod format;
mod run;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::hexgrid::Symbol;
use crate::symmetry::{SymmetryOp, UnknownOp};

pub use format::{parse_automaton, serialize_automaton, AutomatonFormatError, AUTOMATON_HEADER};
pub use run::{
    linearize, Configuration, Consumed, Linearization, ModeFlag, RunTrace, Step, TraceStep,
};
pub(crate) use run::{Simulator, FOREIGN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AutomatonKind {
    Boustrophedon,
    Returning,
}

impl AutomatonKind {
    fn prefix(self) -> char {
        match self {
            AutomatonKind::Boustrophedon => 'B',
            AutomatonKind::Returning => 'R',
        }
    }
}

impl fmt::Display for AutomatonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AutomatonKind::Boustrophedon => "GHBFA",
            AutomatonKind::Returning => "GHRFA",
        })
    }
}

impl FromStr for AutomatonKind {
    type Err = String;

    fn from_str(s: &str) -> Result<AutomatonKind, String> {
        match s {
            "GHBFA" => Ok(AutomatonKind::Boustrophedon),
            "GHRFA" => Ok(AutomatonKind::Returning),
            _ => Err(format!(
                "unknown automaton kind `{s}` (expected GHBFA or GHRFA)"
            )),
        }
    }
}

/// A scanning mode: running in mode `(kind, g)` on a picture `p` behaves
/// exactly like the canonical mode of that kind on `g(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectionMode {
    pub kind: AutomatonKind,
    pub element: SymmetryOp,
}

impl DirectionMode {
    pub fn new(kind: AutomatonKind, element: SymmetryOp) -> DirectionMode {
        DirectionMode { kind, element }
    }

    pub fn canonical(kind: AutomatonKind) -> DirectionMode {
        DirectionMode::new(kind, SymmetryOp::IDENTITY)
    }

    /// The twelve modes of one kind, in [`SymmetryOp::ALL`] order.
    pub fn all(kind: AutomatonKind) -> [DirectionMode; 12] {
        SymmetryOp::ALL.map(|element| DirectionMode { kind, element })
    }
}

impl fmt::Display for DirectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.prefix(), self.element)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirectionParseError {
    #[error("unknown direction code `{0}` (expected B:<op> or R:<op>)")]
    Prefix(String),
    #[error(transparent)]
    Op(#[from] UnknownOp),
}

impl FromStr for DirectionMode {
    type Err = DirectionParseError;

    fn from_str(s: &str) -> Result<DirectionMode, DirectionParseError> {
        let (kind, op) = match s.split_once(':') {
            Some(("B", op)) => (AutomatonKind::Boustrophedon, op),
            Some(("R", op)) => (AutomatonKind::Returning, op),
            _ => return Err(DirectionParseError::Prefix(s.to_string())),
        };
        Ok(DirectionMode::new(kind, op.parse()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Partition {
    Forward,
    Backward,
}

/// `from a -> to`, with `a` an index into the automaton's alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueRule {
    pub from: StateId,
    pub symbol: usize,
    pub to: StateId,
}

/// `from # -> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BorderRule {
    pub from: StateId,
    pub to: StateId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Diagnostic {
    #[error("start state `{0}` is not a forward state")]
    StartNotForward(String),
    #[error("forward rule targets backward state: `{0}`")]
    ForwardRuleTargetsBackward(String),
    #[error("backward rule targets forward state: `{0}`")]
    BackwardRuleTargetsForward(String),
    #[error("border rule does not switch between forward and backward states: `{0}`")]
    BorderKeepsPartition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("state `{0}` declared twice")]
    DuplicateState(String),
    #[error("invalid state name {0:?}")]
    InvalidStateName(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("no start state")]
    MissingStart,
    #[error("invalid automaton: {}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("{automaton} automaton cannot run in mode {mode}")]
    KindMismatch {
        automaton: AutomatonKind,
        mode: DirectionMode,
    },
}

fn join_diagnostics(diagnostics: &[Diagnostic]) -> String {
    let parts: Vec<String> = diagnostics.iter().map(|d| d.to_string()).collect();
    parts.join("; ")
}

fn valid_state_name(name: &str) -> bool {
    !name.is_empty() && name != "->" && !name.chars().any(char::is_whitespace)
}

/// Incremental construction of a [`HexAutomaton`].
#[derive(Debug, Clone)]
pub struct AutomatonBuilder {
    kind: AutomatonKind,
    names: Vec<String>,
    partitions: Vec<Partition>,
    by_name: HashMap<String, StateId>,
    alphabet: Vec<Symbol>,
    by_symbol: HashMap<Symbol, usize>,
    value_rules: Vec<ValueRule>,
    border_rules: Vec<BorderRule>,
    start: Option<StateId>,
    finals: Vec<StateId>,
    direction: Option<DirectionMode>,
}

impl AutomatonBuilder {
    pub fn new(kind: AutomatonKind) -> AutomatonBuilder {
        AutomatonBuilder {
            kind,
            names: Vec::new(),
            partitions: Vec::new(),
            by_name: HashMap::new(),
            alphabet: Vec::new(),
            by_symbol: HashMap::new(),
            value_rules: Vec::new(),
            border_rules: Vec::new(),
            start: None,
            finals: Vec::new(),
            direction: None,
        }
    }

    pub fn add_state(
        &mut self,
        name: &str,
        partition: Partition,
    ) -> Result<StateId, AutomatonError> {
        if !valid_state_name(name) {
            return Err(AutomatonError::InvalidStateName(name.to_string()));
        }
        if self.by_name.contains_key(name) {
            return Err(AutomatonError::DuplicateState(name.to_string()));
        }
        Ok(self.insert_state(name.to_string(), partition))
    }

    /// Adds a state named `base`, appending `'` until the name is unused.
    pub fn add_state_fresh(&mut self, base: String, partition: Partition) -> StateId {
        let mut name = base;
        while self.by_name.contains_key(&name) {
            name.push('\'');
        }
        self.insert_state(name, partition)
    }

    fn insert_state(&mut self, name: String, partition: Partition) -> StateId {
        let id = StateId(self.names.len() as u32);
        self.by_name.insert(name.clone(), id);
        self.names.push(name);
        self.partitions.push(partition);
        id
    }

    pub fn state(&self, name: &str) -> Result<StateId, AutomatonError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| AutomatonError::UnknownState(name.to_string()))
    }

    /// Adds a symbol (idempotent) and returns its index.
    pub fn add_symbol(&mut self, symbol: Symbol) -> usize {
        if let Some(&i) = self.by_symbol.get(&symbol) {
            return i;
        }
        self.by_symbol.insert(symbol.clone(), self.alphabet.len());
        self.alphabet.push(symbol);
        self.alphabet.len() - 1
    }

    pub fn symbol(&self, token: &str) -> Result<usize, AutomatonError> {
        Symbol::new(token)
            .ok()
            .and_then(|s| self.by_symbol.get(&s).copied())
            .ok_or_else(|| AutomatonError::UnknownSymbol(token.to_string()))
    }

    pub fn rule(&mut self, from: StateId, symbol: usize, to: StateId) -> &mut Self {
        self.value_rules.push(ValueRule { from, symbol, to });
        self
    }

    pub fn border(&mut self, from: StateId, to: StateId) -> &mut Self {
        self.border_rules.push(BorderRule { from, to });
        self
    }

    /// `rule` by names, for hand-written automata.
    pub fn named_rule(
        &mut self,
        from: &str,
        symbol: &str,
        to: &str,
    ) -> Result<&mut Self, AutomatonError> {
        let (from, symbol, to) = (self.state(from)?, self.symbol(symbol)?, self.state(to)?);
        Ok(self.rule(from, symbol, to))
    }

    pub fn named_border(&mut self, from: &str, to: &str) -> Result<&mut Self, AutomatonError> {
        let (from, to) = (self.state(from)?, self.state(to)?);
        Ok(self.border(from, to))
    }

    pub fn start(&mut self, state: StateId) -> &mut Self {
        self.start = Some(state);
        self
    }

    pub fn final_state(&mut self, state: StateId) -> &mut Self {
        self.finals.push(state);
        self
    }

    pub fn direction(&mut self, direction: Option<DirectionMode>) -> &mut Self {
        self.direction = direction;
        self
    }

    pub fn build(self) -> Result<HexAutomaton, AutomatonError> {
        let start = self.start.ok_or(AutomatonError::MissingStart)?;
        let mut finals = vec![false; self.names.len()];
        for f in self.finals {
            finals[f.index()] = true;
        }
        let mut value_rules = self.value_rules;
        value_rules.sort_unstable();
        value_rules.dedup();
        let mut border_rules = self.border_rules;
        border_rules.sort_unstable();
        border_rules.dedup();
        Ok(HexAutomaton::assemble(
            self.kind,
            self.names,
            self.partitions,
            self.alphabet,
            value_rules,
            border_rules,
            start,
            finals,
            self.direction,
        ))
    }
}

/// Compressed adjacency: targets of row `i` are `targets[offsets[i]..offsets[i + 1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Adjacency {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Adjacency {
    fn new(rows: usize, edges: impl Iterator<Item = (usize, u32)> + Clone) -> Adjacency {
        let mut offsets = vec![0u32; rows + 1];
        for (row, _) in edges.clone() {
            offsets[row + 1] += 1;
        }
        for i in 0..rows {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; *offsets.last().unwrap() as usize];
        for (row, to) in edges {
            targets[fill[row] as usize] = to;
            fill[row] += 1;
        }
        Adjacency { offsets, targets }
    }

    pub(crate) fn row(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }
}

/// A GHBFA or GHRFA. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexAutomaton {
    kind: AutomatonKind,
    names: Vec<String>,
    partitions: Vec<Partition>,
    alphabet: Vec<Symbol>,
    value_rules: Vec<ValueRule>,
    border_rules: Vec<BorderRule>,
    start: StateId,
    finals: Vec<bool>,
    direction: Option<DirectionMode>,
    delta: Adjacency,
    border_delta: Adjacency,
}

impl HexAutomaton {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        kind: AutomatonKind,
        names: Vec<String>,
        partitions: Vec<Partition>,
        alphabet: Vec<Symbol>,
        value_rules: Vec<ValueRule>,
        border_rules: Vec<BorderRule>,
        start: StateId,
        finals: Vec<bool>,
        direction: Option<DirectionMode>,
    ) -> HexAutomaton {
        let k = alphabet.len();
        let delta = Adjacency::new(
            names.len() * k,
            value_rules
                .iter()
                .map(|r| (r.from.index() * k + r.symbol, r.to.0)),
        );
        let border_delta = Adjacency::new(
            names.len(),
            border_rules.iter().map(|r| (r.from.index(), r.to.0)),
        );
        HexAutomaton {
            kind,
            names,
            partitions,
            alphabet,
            value_rules,
            border_rules,
            start,
            finals,
            direction,
            delta,
            border_delta,
        }
    }

    pub fn kind(&self) -> AutomatonKind {
        self.kind
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.names.len() as u32).map(StateId)
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.names[id.index()]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| StateId(i as u32))
    }

    pub fn partition(&self, id: StateId) -> Partition {
        self.partitions[id.index()]
    }

    pub fn states_in(&self, partition: Partition) -> impl Iterator<Item = StateId> + '_ {
        self.states()
            .filter(move |&s| self.partition(s) == partition)
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn symbol_index(&self, symbol: &Symbol) -> Option<usize> {
        self.alphabet.iter().position(|s| s == symbol)
    }

    pub fn value_rules(&self) -> &[ValueRule] {
        &self.value_rules
    }

    pub fn border_rules(&self) -> &[BorderRule] {
        &self.border_rules
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn is_final(&self, id: StateId) -> bool {
        self.finals[id.index()]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states().filter(|&s| self.is_final(s))
    }

    /// Direction recorded with the automaton, if any.
    pub fn direction(&self) -> Option<DirectionMode> {
        self.direction
    }

    /// Targets of `from a -> ·`.
    pub fn successors(&self, from: StateId, symbol: usize) -> impl Iterator<Item = StateId> + '_ {
        self.delta
            .row(from.index() * self.alphabet.len() + symbol)
            .iter()
            .map(|&t| StateId(t))
    }

    /// Targets of `from # -> ·`.
    pub fn border_successors(&self, from: StateId) -> impl Iterator<Item = StateId> + '_ {
        self.border_delta
            .row(from.index())
            .iter()
            .map(|&t| StateId(t))
    }

    pub(crate) fn delta(&self) -> &Adjacency {
        &self.delta
    }

    pub(crate) fn border_delta(&self) -> &Adjacency {
        &self.border_delta
    }

    pub fn with_finals(&self, finals: impl IntoIterator<Item = StateId>) -> HexAutomaton {
        let mut out = self.clone();
        out.finals = vec![false; self.names.len()];
        for f in finals {
            out.finals[f.index()] = true;
        }
        out
    }

    pub fn with_direction(&self, direction: Option<DirectionMode>) -> HexAutomaton {
        HexAutomaton {
            direction,
            ..self.clone()
        }
    }

    pub fn format_rule(&self, rule: &ValueRule) -> String {
        format!(
            "{} {} -> {}",
            self.state_name(rule.from),
            self.alphabet[rule.symbol],
            self.state_name(rule.to)
        )
    }

    pub fn format_border(&self, rule: &BorderRule) -> String {
        format!(
            "{} # -> {}",
            self.state_name(rule.from),
            self.state_name(rule.to)
        )
    }

    /// Checks rule typing. Returning automata only require a forward start
    /// state; their rules are untyped.
    pub fn validate(&self) -> Result<(), Vec<Diagnostic>> {
        let mut out = Vec::new();
        if self.partition(self.start) != Partition::Forward {
            out.push(Diagnostic::StartNotForward(
                self.state_name(self.start).to_string(),
            ));
        }
        if self.kind == AutomatonKind::Boustrophedon {
            for rule in &self.value_rules {
                match (self.partition(rule.from), self.partition(rule.to)) {
                    (Partition::Forward, Partition::Backward) => out.push(
                        Diagnostic::ForwardRuleTargetsBackward(self.format_rule(rule)),
                    ),
                    (Partition::Backward, Partition::Forward) => out.push(
                        Diagnostic::BackwardRuleTargetsForward(self.format_rule(rule)),
                    ),
                    _ => {}
                }
            }
            for rule in &self.border_rules {
                if self.partition(rule.from) == self.partition(rule.to) {
                    out.push(Diagnostic::BorderKeepsPartition(self.format_border(rule)));
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), AutomatonError> {
        self.validate().map_err(AutomatonError::Invalid)
    }

    /// At most one successor for every state and symbol, `#` included.
    pub fn is_deterministic(&self) -> bool {
        let value = self
            .value_rules
            .windows(2)
            .all(|w| (w[0].from, w[0].symbol) != (w[1].from, w[1].symbol));
        let border = self.border_rules.windows(2).all(|w| w[0].from != w[1].from);
        value && border
    }
}
