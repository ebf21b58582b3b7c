//! Automaton-to-automaton constructions.
//!
//! Every construction returns the new automaton together with a
//! [`ConstructionReport`]. Correctness of each one is stated in terms of
//! canonical-mode languages: for a returning automaton `a` and group element
//! `g`, a construction "realizes `g`" when its output accepts exactly
//! `{ g(p) : p accepted by a }`.

use thiserror::Error;

use crate::automata::{
    AutomatonBuilder, AutomatonError, AutomatonKind, DirectionMode, HexAutomaton, Partition,
    StateId,
};
use crate::hexgrid::HexSize;
use crate::symmetry::{compose, SymmetryOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("{construction} needs a {expected} automaton, got {found}")]
    WrongKind {
        construction: &'static str,
        expected: AutomatonKind,
        found: AutomatonKind,
    },
    #[error("no normalizer for {0}; supported targets are R0, r0, r3 and R3")]
    UnsupportedTarget(SymmetryOp),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub construction: &'static str,
    pub input_states: usize,
    pub output_states: usize,
    /// The state count the construction promises for this input.
    pub state_bound: usize,
    /// Largest size at which the output was checked against its contract.
    pub verified_bound: Option<HexSize>,
}

impl ConstructionReport {
    fn new(
        construction: &'static str,
        input: &HexAutomaton,
        output: &HexAutomaton,
        bound: usize,
    ) -> Self {
        ConstructionReport {
            construction,
            input_states: input.state_count(),
            output_states: output.state_count(),
            state_bound: bound,
            verified_bound: None,
        }
    }

    pub fn within_bound(&self) -> bool {
        self.output_states <= self.state_bound
    }
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub automaton: HexAutomaton,
    pub report: ConstructionReport,
}

fn require(
    a: &HexAutomaton,
    kind: AutomatonKind,
    construction: &'static str,
) -> Result<(), TransformError> {
    if a.kind() != kind {
        return Err(TransformError::WrongKind {
            construction,
            expected: kind,
            found: a.kind(),
        });
    }
    a.validate().map_err(AutomatonError::Invalid)?;
    Ok(())
}

fn builder_like(a: &HexAutomaton, kind: AutomatonKind) -> AutomatonBuilder {
    let mut b = AutomatonBuilder::new(kind);
    for s in a.alphabet() {
        b.add_symbol(s.clone());
    }
    b
}

/// Converts a boustrophedon automaton into a returning one with the same
/// canonical language.
///
/// Lines scanned forward are copied state for state. A line the input scans
/// backward is read forward by guess and verify: the output carries the
/// state the input would be in after the line (`guess`), walks the input's
/// rules in reverse, and at the border checks it arrived at the state the
/// input entered the line with (`target`). Output states are
/// `(p)` for forward `p` and `(cur,target,guess)` over backward states, so
/// the count is `|Q_f| + |Q_b|³`.
pub fn hbfa_to_hrfa(a: &HexAutomaton) -> Result<Construction, TransformError> {
    const NAME: &str = "hbfa_to_hrfa";
    require(a, AutomatonKind::Boustrophedon, NAME)?;
    let forward: Vec<StateId> = a.states_in(Partition::Forward).collect();
    let backward: Vec<StateId> = a.states_in(Partition::Backward).collect();
    let mut local = vec![usize::MAX; a.state_count()];
    for (i, &s) in forward.iter().enumerate() {
        local[s.index()] = i;
    }
    for (i, &s) in backward.iter().enumerate() {
        local[s.index()] = i;
    }
    let nb = backward.len();

    let mut b = builder_like(a, AutomatonKind::Returning);
    let fwd: Vec<StateId> = forward
        .iter()
        .map(|&p| b.add_state_fresh(format!("({})", a.state_name(p)), Partition::Forward))
        .collect();
    let mut bwd = Vec::with_capacity(nb * nb * nb);
    for &c in &backward {
        for &x in &backward {
            for &g in &backward {
                let name = format!(
                    "({},{},{})",
                    a.state_name(c),
                    a.state_name(x),
                    a.state_name(g)
                );
                bwd.push(b.add_state_fresh(name, Partition::Backward));
            }
        }
    }
    let triple = |c: usize, x: usize, g: usize| bwd[(c * nb + x) * nb + g];

    b.start(fwd[local[a.start().index()]]);
    for &p in &forward {
        if a.is_final(p) {
            b.final_state(fwd[local[p.index()]]);
        }
    }
    for &x in &backward {
        if a.is_final(x) {
            for c in 0..nb {
                for g in 0..nb {
                    b.final_state(triple(c, local[x.index()], g));
                }
            }
        }
    }

    for r in a.value_rules() {
        let (from, to) = (local[r.from.index()], local[r.to.index()]);
        match a.partition(r.from) {
            Partition::Forward => {
                b.rule(fwd[from], r.symbol, fwd[to]);
            }
            // Reading forward, the backward rule `p a -> c` is walked from c to p.
            Partition::Backward => {
                for x in 0..nb {
                    for g in 0..nb {
                        b.rule(triple(to, x, g), r.symbol, triple(from, x, g));
                    }
                }
            }
        }
    }
    for r in a.border_rules() {
        let (from, to) = (local[r.from.index()], local[r.to.index()]);
        match a.partition(r.from) {
            Partition::Forward => {
                for g in 0..nb {
                    b.border(fwd[from], triple(g, to, g));
                }
            }
            Partition::Backward => {
                for x in 0..nb {
                    b.border(triple(x, x, from), fwd[to]);
                }
            }
        }
    }
    b.direction(
        a.direction()
            .map(|d| DirectionMode::new(AutomatonKind::Returning, d.element)),
    );
    let out = b.build()?;
    let bound = forward.len() + nb * nb * nb;
    let report = ConstructionReport::new(NAME, a, &out, bound);
    Ok(Construction {
        automaton: out,
        report,
    })
}

/// Realizes `r0`: every scan line is read in the opposite direction.
///
/// States are `(cur,target,guess)`: `guess` is the state the input reaches at
/// the end of the current line, `cur` walks the input's rules backwards and
/// must meet `target`, the state the input entered the line with, at the
/// border. Plus one start state, so `|Q|³ + 1` states.
pub fn mirror_within_lines(a: &HexAutomaton) -> Result<Construction, TransformError> {
    const NAME: &str = "mirror_within_lines";
    require(a, AutomatonKind::Returning, NAME)?;
    let n = a.state_count();
    let mut b = builder_like(a, AutomatonKind::Returning);
    let start = b.add_state_fresh("start".into(), Partition::Forward);
    b.start(start);
    let mut ids = Vec::with_capacity(n * n * n);
    for c in a.states() {
        for x in a.states() {
            for g in a.states() {
                let name = format!(
                    "({},{},{})",
                    a.state_name(c),
                    a.state_name(x),
                    a.state_name(g)
                );
                let id = b.add_state_fresh(name, Partition::Forward);
                if a.is_final(x) {
                    b.final_state(id);
                }
                ids.push(id);
            }
        }
    }
    let triple =
        |c: StateId, x: StateId, g: StateId| ids[(c.index() * n + x.index()) * n + g.index()];

    for r in a.value_rules() {
        // First symbol of the first line, guessing the line ends in `r.to`.
        b.rule(start, r.symbol, triple(r.from, a.start(), r.to));
    }
    for x in a.states() {
        for g in a.states() {
            for r in a.value_rules() {
                b.rule(triple(r.to, x, g), r.symbol, triple(r.from, x, g));
            }
            for next in a.border_successors(g) {
                for y in a.states() {
                    b.border(triple(x, x, g), triple(y, next, y));
                }
            }
        }
    }
    let out = b.build()?;
    let report = ConstructionReport::new(NAME, a, &out, n * n * n + 1);
    Ok(Construction {
        automaton: out,
        report,
    })
}

/// Realizes `r3`: the scan lines are read in reverse order, each in its
/// usual direction.
///
/// A line is simulated forward from a guessed entry state. States are
/// `(cur,entry,later)` where `later` is the guessed entry state of the line
/// read just before (the one that follows in the input's order), or `*` for
/// the first line read. At a border the input's border rule from `cur` must
/// lead to `later` (or to a final state when `later` is `*`). The last line
/// read must have been entered from the input's start state.
pub fn mirror_line_order(a: &HexAutomaton) -> Result<Construction, TransformError> {
    const NAME: &str = "mirror_line_order";
    require(a, AutomatonKind::Returning, NAME)?;
    let n = a.state_count();
    let mut b = builder_like(a, AutomatonKind::Returning);
    let start = b.add_state_fresh("start".into(), Partition::Forward);
    b.start(start);
    // `later` index n stands for `*`.
    let mut ids = Vec::with_capacity(n * n * (n + 1));
    for c in a.states() {
        for e in a.states() {
            for later in 0..=n {
                let later_name = if later == n {
                    "*"
                } else {
                    a.state_name(StateId(later as u32))
                };
                let name = format!("({},{},{})", a.state_name(c), a.state_name(e), later_name);
                let id = b.add_state_fresh(name, Partition::Forward);
                if later == a.start().index() {
                    b.final_state(id);
                }
                ids.push(id);
            }
        }
    }
    let state = |c: usize, e: usize, later: usize| ids[(c * n + e) * (n + 1) + later];

    for r in a.value_rules() {
        let (from, to) = (r.from.index(), r.to.index());
        b.rule(start, r.symbol, state(to, from, n));
        for e in 0..n {
            for later in 0..=n {
                b.rule(state(from, e, later), r.symbol, state(to, e, later));
            }
        }
    }
    let mut borders = vec![Vec::new(); n];
    for r in a.border_rules() {
        borders[r.from.index()].push(r.to);
    }
    for (c, targets) in borders.iter().enumerate() {
        let reaches_final = targets.iter().any(|&z| a.is_final(z));
        for e in 0..n {
            let mut allowed: Vec<usize> = targets.iter().map(|z| z.index()).collect();
            if reaches_final {
                allowed.push(n);
            }
            for later in allowed {
                for next in 0..n {
                    b.border(state(c, e, later), state(next, next, e));
                }
            }
        }
    }
    let out = b.build()?;
    let report = ConstructionReport::new(NAME, a, &out, n * n * (n + 1) + 1);
    Ok(Construction {
        automaton: out,
        report,
    })
}

/// Realizes `R3`: the whole input, border marks included, is read back to
/// front. One state per input state plus a start and an accept state.
pub fn rotate_half_turn(a: &HexAutomaton) -> Result<Construction, TransformError> {
    const NAME: &str = "rotate_half_turn";
    require(a, AutomatonKind::Returning, NAME)?;
    let n = a.state_count();
    let mut b = builder_like(a, AutomatonKind::Returning);
    let start = b.add_state_fresh("start".into(), Partition::Forward);
    let ids: Vec<StateId> = a
        .states()
        .map(|p| b.add_state_fresh(format!("({})", a.state_name(p)), Partition::Forward))
        .collect();
    let accept = b.add_state_fresh("accept".into(), Partition::Forward);
    b.start(start).final_state(accept);

    let finishing: Vec<bool> = a
        .states()
        .map(|y| a.border_successors(y).any(|z| a.is_final(z)))
        .collect();
    for r in a.value_rules() {
        if finishing[r.to.index()] {
            b.rule(start, r.symbol, ids[r.from.index()]);
        }
        b.rule(ids[r.to.index()], r.symbol, ids[r.from.index()]);
    }
    for r in a.border_rules() {
        b.border(ids[r.to.index()], ids[r.from.index()]);
    }
    b.border(ids[a.start().index()], accept);
    let out = b.build()?;
    let report = ConstructionReport::new(NAME, a, &out, n + 2);
    Ok(Construction {
        automaton: out,
        report,
    })
}

/// Returns `(a, d.element)`: running `a` canonically on `d.element(p)`
/// decides membership of `p` in the mode-`d` language.
pub fn canonicalize_direction(
    a: &HexAutomaton,
    d: DirectionMode,
) -> Result<(HexAutomaton, SymmetryOp), TransformError> {
    if d.kind != a.kind() {
        return Err(AutomatonError::KindMismatch {
            automaton: a.kind(),
            mode: d,
        }
        .into());
    }
    Ok((a.clone(), d.element))
}

/// Realizes one of `R0`, `r0`, `r3`, `R3` on a returning automaton.
pub fn family_normalizer(
    a: &HexAutomaton,
    target: SymmetryOp,
) -> Result<Construction, TransformError> {
    match target.to_string().as_str() {
        "R0" => {
            require(a, AutomatonKind::Returning, "family_normalizer")?;
            let report = ConstructionReport::new("identity", a, a, a.state_count());
            Ok(Construction {
                automaton: a.clone(),
                report,
            })
        }
        "r0" => mirror_within_lines(a),
        "r3" => mirror_line_order(a),
        "R3" => rotate_half_turn(a),
        _ => Err(TransformError::UnsupportedTarget(target)),
    }
}

/// Which of the three classes `{R0,R3,r0,r3}`, `{R1,R4,r1,r4}`,
/// `{R2,R5,r2,r5}` an element belongs to (1, 2 or 3).
pub fn direction_class(g: SymmetryOp) -> usize {
    (g.index() % 3) as usize + 1
}

/// The mode element used for each class when realizing images.
pub fn class_representative(class: usize) -> SymmetryOp {
    match class {
        1 => SymmetryOp::IDENTITY,
        2 => SymmetryOp::reflection(1),
        3 => SymmetryOp::reflection(5),
        _ => panic!("direction classes are numbered 1 to 3"),
    }
}

/// An automaton and returning mode whose language is `g(L)`, where `L` is
/// the canonical language of the input.
#[derive(Debug, Clone)]
pub struct ImageRealization {
    pub automaton: HexAutomaton,
    pub mode: DirectionMode,
    pub steps: Vec<ConstructionReport>,
}

/// Builds a returning automaton `c` and a mode `e` with `L_e(c) = g(L)`.
///
/// With `e` the representative of `g`'s class, `k = e ∘ g` lies in
/// `{R0, R3, r0, r3}`; `c` is the `k`-normalized returning form of the
/// input, and `L_e(c) = e⁻¹(k(L)) = g(L)`.
pub fn realize_image(a: &HexAutomaton, g: SymmetryOp) -> Result<ImageRealization, TransformError> {
    let mut steps = Vec::new();
    let returning = match a.kind() {
        AutomatonKind::Boustrophedon => {
            let c = hbfa_to_hrfa(a)?;
            steps.push(c.report);
            c.automaton
        }
        AutomatonKind::Returning => a.clone(),
    };
    let e = class_representative(direction_class(g));
    let k = compose(e, g);
    let normalized = family_normalizer(&returning, k)?;
    steps.push(normalized.report);
    Ok(ImageRealization {
        automaton: normalized.automaton,
        mode: DirectionMode::new(AutomatonKind::Returning, e),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::catalog;
    use crate::hexgrid::{HexPicture, Symbol};
    use crate::langtools::{accepted_set, bounded_equivalent, image_set, Equivalence, SizeBound};

    const B: AutomatonKind = AutomatonKind::Boustrophedon;
    const R: AutomatonKind = AutomatonKind::Returning;

    fn ab() -> Vec<Symbol> {
        vec![Symbol::new("a").unwrap(), Symbol::new("b").unwrap()]
    }

    fn op(s: &str) -> SymmetryOp {
        s.parse().unwrap()
    }

    fn realizes(a: &HexAutomaton, out: &HexAutomaton, g: SymmetryOp) -> bool {
        let canon = DirectionMode::canonical(R);
        let mode_a = DirectionMode::canonical(a.kind());
        let r = bounded_equivalent(a, mode_a, out, canon, &ab(), &SizeBound::up_to(2), g).unwrap();
        r == Equivalence::Equal
    }

    /// Accepts pictures whose first scan line is all `b` and all other
    /// lines all `a`.
    fn first_line_b() -> HexAutomaton {
        let mut b = AutomatonBuilder::new(R);
        b.add_symbol(Symbol::new("a").unwrap());
        b.add_symbol(Symbol::new("b").unwrap());
        let s = b.add_state("s", Partition::Forward).unwrap();
        let rest = b.add_state("rest", Partition::Forward).unwrap();
        b.start(s).final_state(rest);
        b.named_rule("s", "b", "s").unwrap();
        b.named_rule("rest", "a", "rest").unwrap();
        b.border(s, rest).border(rest, rest);
        b.build().unwrap()
    }

    #[test]
    fn hrfa_from_small_automata() {
        let all = catalog::accept_all(B, &ab());
        let c = hbfa_to_hrfa(&all).unwrap();
        assert_eq!(c.automaton.kind(), R);
        assert!(c.report.within_bound());
        assert_eq!(c.report.output_states, 1 + 1);
        for s in crate::hexgrid::HexSize::all_up_to(2) {
            let p = HexPicture::make_uniform(s, "a").unwrap();
            assert!(c.automaton.run_canonical(&p).unwrap());
        }
        let parity = catalog::parity(B, &ab());
        let c = hbfa_to_hrfa(&parity).unwrap();
        assert_eq!(c.report.output_states, 2 + 8);
        assert!(realizes(&parity, &c.automaton, SymmetryOp::IDENTITY));
    }

    #[test]
    fn hrfa_rejects_returning_input() {
        let r = catalog::accept_all(R, &ab());
        assert!(matches!(
            hbfa_to_hrfa(&r),
            Err(TransformError::WrongKind { .. })
        ));
    }

    #[test]
    fn within_line_mirror() {
        let all = catalog::accept_all(R, &ab());
        let m = mirror_within_lines(&all).unwrap();
        assert!(m.report.output_states <= m.report.state_bound);
        assert!(realizes(&all, &m.automaton, op("r0")));
        let first = catalog::first_cell_is(R, &ab(), &Symbol::new("b").unwrap());
        let m = mirror_within_lines(&first).unwrap();
        assert!(realizes(&first, &m.automaton, op("r0")));
        assert!(!realizes(&first, &m.automaton, SymmetryOp::IDENTITY));
    }

    #[test]
    fn line_order_mirror() {
        let a = first_line_b();
        let m = mirror_line_order(&a).unwrap();
        assert!(realizes(&a, &m.automaton, op("r3")));
        assert!(!realizes(&a, &m.automaton, SymmetryOp::IDENTITY));
        let all = catalog::accept_all(R, &ab());
        assert!(realizes(
            &all,
            &mirror_line_order(&all).unwrap().automaton,
            op("r3")
        ));
    }

    #[test]
    fn both_mirrors_compose_to_half_turn() {
        let a = first_line_b();
        let inner = mirror_within_lines(&a).unwrap().automaton;
        let both = mirror_line_order(&inner).unwrap().automaton;
        assert_eq!(compose(op("r0"), op("r3")), op("R3"));
        assert!(realizes(&a, &both, op("R3")));
        assert!(realizes(
            &a,
            &rotate_half_turn(&a).unwrap().automaton,
            op("R3")
        ));
    }

    #[test]
    fn normalizer_dispatch() {
        let a = first_line_b();
        assert_eq!(family_normalizer(&a, op("R0")).unwrap().automaton, a);
        assert_eq!(
            family_normalizer(&a, op("r0")).unwrap().automaton,
            mirror_within_lines(&a).unwrap().automaton
        );
        assert!(matches!(
            family_normalizer(&a, op("R1")),
            Err(TransformError::UnsupportedTarget(_))
        ));
    }

    #[test]
    fn canonicalization() {
        let a = catalog::parity(B, &ab());
        let (same, g) = canonicalize_direction(&a, DirectionMode::canonical(B)).unwrap();
        assert_eq!(same, a);
        assert_eq!(g, SymmetryOp::IDENTITY);
        let (_, g) = canonicalize_direction(&a, DirectionMode::new(B, op("r3"))).unwrap();
        assert_eq!(g, op("r3"));
        assert!(canonicalize_direction(&a, DirectionMode::canonical(R)).is_err());
    }

    #[test]
    fn classes_partition_the_group() {
        let classes: Vec<Vec<String>> = (1..=3)
            .map(|c| {
                SymmetryOp::ALL
                    .iter()
                    .filter(|&&g| direction_class(g) == c)
                    .map(|g| g.to_string())
                    .collect()
            })
            .collect();
        assert_eq!(classes[0], ["R0", "R3", "r0", "r3"]);
        assert_eq!(classes[1], ["R1", "R4", "r1", "r4"]);
        assert_eq!(classes[2], ["R2", "R5", "r2", "r5"]);
        for g in SymmetryOp::ALL {
            let k = compose(class_representative(direction_class(g)), g);
            assert_eq!(direction_class(k), 1, "{g}");
        }
    }

    #[test]
    fn images_of_first_cell_language() {
        let a = catalog::first_cell_is(B, &ab(), &Symbol::new("b").unwrap());
        let bound = SizeBound::up_to(2);
        let base = accepted_set(&a, DirectionMode::canonical(B), &ab(), &bound).unwrap();
        for g in SymmetryOp::ALL {
            let img = realize_image(&a, g).unwrap();
            let got = accepted_set(&img.automaton, img.mode, &ab(), &bound).unwrap();
            assert_eq!(got.members, image_set(&base, g).members, "{g}");
        }
    }
}
