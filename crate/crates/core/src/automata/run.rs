use std::fmt;

use crate::hexgrid::text::render_with;
use crate::hexgrid::{scan_lines, CellCoord, HexPicture, HexSize, Symbol, ERASED};

use super::{AutomatonError, AutomatonKind, DirectionMode, HexAutomaton, StateId};

/// One input position of a linearized picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// A picture cell, with its row-major index.
    Cell { coord: CellCoord, index: usize },
    /// The `#` read after each line.
    Border,
}

/// The exact symbol sequence a mode consumes on pictures of one size:
/// every line in its reading orientation, each followed by one border.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearization {
    size: HexSize,
    mode: DirectionMode,
    steps: Vec<Step>,
    blocks: Vec<usize>,
}

impl Linearization {
    pub fn size(&self) -> HexSize {
        self.size
    }

    pub fn mode(&self) -> DirectionMode {
        self.mode
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Lengths of the cell blocks between border marks.
    pub fn block_lengths(&self) -> &[usize] {
        &self.blocks
    }

    /// Cells in the order they are consumed.
    pub fn visit_order(&self) -> Vec<CellCoord> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Cell { coord, .. } => Some(*coord),
                Step::Border => None,
            })
            .collect()
    }
}

pub fn linearize(size: HexSize, mode: DirectionMode) -> Linearization {
    let plan = scan_lines(size, mode);
    let mut steps = Vec::with_capacity(size.cell_count() + plan.lines().len());
    for (j, line) in plan.lines().iter().enumerate() {
        let reversed = mode.kind == AutomatonKind::Boustrophedon && j % 2 == 1;
        let cells: Box<dyn Iterator<Item = &CellCoord>> = if reversed {
            Box::new(line.iter().rev())
        } else {
            Box::new(line.iter())
        };
        for &coord in cells {
            let index = size
                .index_of(coord)
                .expect("scan plans stay inside the picture");
            steps.push(Step::Cell { coord, index });
        }
        steps.push(Step::Border);
    }
    Linearization {
        size,
        mode,
        steps,
        blocks: plan.line_lengths(),
    }
}

/// Marks a cell whose symbol the automaton has no rules for.
pub(crate) const FOREIGN: u32 = u32::MAX;

/// Frontier-set simulation with reusable buffers.
pub(crate) struct Simulator<'a> {
    automaton: &'a HexAutomaton,
    current: Vec<u32>,
    next: Vec<u32>,
    seen: Vec<bool>,
}

impl<'a> Simulator<'a> {
    pub(crate) fn new(automaton: &'a HexAutomaton) -> Simulator<'a> {
        Simulator {
            automaton,
            current: Vec::new(),
            next: Vec::new(),
            seen: vec![false; automaton.state_count()],
        }
    }

    pub(crate) fn reset(&mut self) {
        self.current.clear();
        self.current.push(self.automaton.start.0);
    }

    pub(crate) fn frontier(&self) -> &[u32] {
        &self.current
    }

    pub(crate) fn set_frontier(&mut self, states: &[u32]) {
        self.current.clear();
        self.current.extend_from_slice(states);
    }

    fn advance_with(&mut self, row: impl Fn(u32) -> Option<usize>, table: bool) {
        let a = self.automaton;
        let adjacency = if table { a.delta() } else { a.border_delta() };
        self.next.clear();
        for &s in &self.current {
            let Some(r) = row(s) else { continue };
            for &t in adjacency.row(r) {
                if !self.seen[t as usize] {
                    self.seen[t as usize] = true;
                    self.next.push(t);
                }
            }
        }
        for &t in &self.next {
            self.seen[t as usize] = false;
        }
        std::mem::swap(&mut self.current, &mut self.next);
    }

    pub(crate) fn advance_symbol(&mut self, symbol: u32) {
        let k = self.automaton.alphabet.len();
        if symbol == FOREIGN {
            self.current.clear();
            return;
        }
        self.advance_with(|s| Some(s as usize * k + symbol as usize), true);
    }

    pub(crate) fn advance_border(&mut self) {
        self.advance_with(|s| Some(s as usize), false);
    }

    pub(crate) fn accepting(&self) -> bool {
        self.current
            .iter()
            .any(|&s| self.automaton.finals[s as usize])
    }

    /// Runs on a picture given as alphabet indices in row-major order.
    pub(crate) fn accepts(&mut self, lin: &Linearization, cells: &[u32]) -> bool {
        self.reset();
        for step in &lin.steps {
            match *step {
                Step::Cell { index, .. } => self.advance_symbol(cells[index]),
                Step::Border => self.advance_border(),
            }
            if self.current.is_empty() {
                return false;
            }
        }
        self.accepting()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeFlag {
    Forward,
    Backward,
}

impl fmt::Display for ModeFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeFlag::Forward => "f",
            ModeFlag::Backward => "b",
        })
    }
}

/// Snapshot of a nondeterministic run: the set of reachable states, how
/// many cells have been erased so far, the scanning mode and the input
/// position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub frontier: Vec<StateId>,
    pub erased: usize,
    pub mode: ModeFlag,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consumed {
    Cell(CellCoord, Symbol),
    Border,
}

impl fmt::Display for Consumed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Consumed::Cell(_, symbol) => write!(f, "{symbol}"),
            Consumed::Border => f.write_str("#"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub consumed: Consumed,
    /// Rules fired from the previous frontier, as `(from, to)` pairs.
    pub rules: Vec<(StateId, StateId)>,
    pub after: Configuration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub mode: DirectionMode,
    pub initial: Configuration,
    pub steps: Vec<TraceStep>,
    pub accepted: bool,
    visit: Vec<CellCoord>,
}

impl RunTrace {
    /// One-line view of the picture after `step` steps: erased cells read
    /// `_`, rows are separated by ` / `.
    pub fn snapshot(&self, picture: &HexPicture, step: usize) -> String {
        let erased = if step == 0 {
            self.initial.erased
        } else {
            self.steps[step - 1].after.erased
        };
        let gone: std::collections::HashSet<CellCoord> =
            self.visit[..erased].iter().copied().collect();
        let text = render_with(picture.size(), |c| {
            if gone.contains(&c) {
                ERASED
            } else {
                picture.get(c).map(Symbol::as_str).unwrap_or(ERASED)
            }
        });
        let rows: Vec<&str> = text.lines().map(str::trim).collect();
        rows.join(" / ")
    }
}

impl HexAutomaton {
    fn check_mode(&self, mode: DirectionMode) -> Result<(), AutomatonError> {
        if mode.kind != self.kind {
            return Err(AutomatonError::KindMismatch {
                automaton: self.kind,
                mode,
            });
        }
        Ok(())
    }

    fn encode(&self, picture: &HexPicture) -> Result<Vec<u32>, AutomatonError> {
        picture
            .cells()
            .iter()
            .map(|s| {
                self.symbol_index(s)
                    .map(|i| i as u32)
                    .ok_or_else(|| AutomatonError::UnknownSymbol(s.to_string()))
            })
            .collect()
    }

    /// Accepts iff some run in `mode` ends, after the border of the last
    /// line, in a final state.
    pub fn run(&self, picture: &HexPicture, mode: DirectionMode) -> Result<bool, AutomatonError> {
        self.check_mode(mode)?;
        let cells = self.encode(picture)?;
        let lin = linearize(picture.size(), mode);
        Ok(Simulator::new(self).accepts(&lin, &cells))
    }

    /// Run in the canonical mode of the automaton's kind.
    pub fn run_canonical(&self, picture: &HexPicture) -> Result<bool, AutomatonError> {
        self.run(picture, DirectionMode::canonical(self.kind))
    }

    pub fn accepts_any_direction(
        &self,
        picture: &HexPicture,
        modes: &[DirectionMode],
    ) -> Result<bool, AutomatonError> {
        for &mode in modes {
            if self.run(picture, mode)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn run_traced(
        &self,
        picture: &HexPicture,
        mode: DirectionMode,
    ) -> Result<RunTrace, AutomatonError> {
        self.check_mode(mode)?;
        let cells = self.encode(picture)?;
        let lin = linearize(picture.size(), mode);
        let mut sim = Simulator::new(self);
        sim.reset();
        let ids = |sim: &Simulator| sim.frontier().iter().map(|&s| StateId(s)).collect();
        let initial = Configuration {
            frontier: ids(&sim),
            erased: 0,
            mode: ModeFlag::Forward,
            position: 0,
        };
        let mut flag = ModeFlag::Forward;
        let mut erased = 0;
        let mut steps = Vec::with_capacity(lin.steps.len());
        for (position, step) in lin.steps.iter().enumerate() {
            let before: Vec<StateId> = ids(&sim);
            let (consumed, rules) = match *step {
                Step::Cell { coord, index } => {
                    let symbol = cells[index] as usize;
                    let rules = before
                        .iter()
                        .flat_map(|&s| self.successors(s, symbol).map(move |t| (s, t)))
                        .collect();
                    sim.advance_symbol(cells[index]);
                    erased += 1;
                    (Consumed::Cell(coord, picture.cells()[index].clone()), rules)
                }
                Step::Border => {
                    let rules = before
                        .iter()
                        .flat_map(|&s| self.border_successors(s).map(move |t| (s, t)))
                        .collect();
                    sim.advance_border();
                    if self.kind == AutomatonKind::Boustrophedon {
                        flag = match flag {
                            ModeFlag::Forward => ModeFlag::Backward,
                            ModeFlag::Backward => ModeFlag::Forward,
                        };
                    }
                    (Consumed::Border, rules)
                }
            };
            let mut frontier: Vec<StateId> = ids(&sim);
            frontier.sort();
            steps.push(TraceStep {
                consumed,
                rules,
                after: Configuration {
                    frontier,
                    erased,
                    mode: flag,
                    position: position + 1,
                },
            });
        }
        Ok(RunTrace {
            mode,
            initial,
            steps,
            accepted: sim.accepting(),
            visit: lin.visit_order(),
        })
    }
}
