//! Small hand-written automata used in examples, tests and benchmarks.

use crate::hexgrid::Symbol;

use super::{AutomatonBuilder, AutomatonKind, HexAutomaton, Partition};

fn with_alphabet(kind: AutomatonKind, alphabet: &[Symbol]) -> AutomatonBuilder {
    let mut b = AutomatonBuilder::new(kind);
    for s in alphabet {
        b.add_symbol(s.clone());
    }
    b
}

/// Accepts every picture over `alphabet` in every mode.
pub fn accept_all(kind: AutomatonKind, alphabet: &[Symbol]) -> HexAutomaton {
    let mut b = with_alphabet(kind, alphabet);
    let f = b.add_state("f", Partition::Forward).unwrap();
    b.start(f).final_state(f);
    match kind {
        AutomatonKind::Boustrophedon => {
            let back = b.add_state("b", Partition::Backward).unwrap();
            for a in 0..alphabet.len() {
                b.rule(f, a, f).rule(back, a, back);
            }
            b.border(f, back).border(back, f).final_state(back);
        }
        AutomatonKind::Returning => {
            for a in 0..alphabet.len() {
                b.rule(f, a, f);
            }
            b.border(f, f);
        }
    }
    b.build().unwrap()
}

/// [`accept_all`] without final states.
pub fn reject_all(kind: AutomatonKind, alphabet: &[Symbol]) -> HexAutomaton {
    accept_all(kind, alphabet).with_finals([])
}

/// Accepts exactly the pictures with an even number of cells.
pub fn parity(kind: AutomatonKind, alphabet: &[Symbol]) -> HexAutomaton {
    let mut b = with_alphabet(kind, alphabet);
    let fe = b.add_state("fe", Partition::Forward).unwrap();
    let fo = b.add_state("fo", Partition::Forward).unwrap();
    b.start(fe).final_state(fe);
    match kind {
        AutomatonKind::Boustrophedon => {
            let be = b.add_state("be", Partition::Backward).unwrap();
            let bo = b.add_state("bo", Partition::Backward).unwrap();
            for a in 0..alphabet.len() {
                b.rule(fe, a, fo)
                    .rule(fo, a, fe)
                    .rule(be, a, bo)
                    .rule(bo, a, be);
            }
            b.border(fe, be)
                .border(fo, bo)
                .border(be, fe)
                .border(bo, fo);
            b.final_state(be);
        }
        AutomatonKind::Returning => {
            for a in 0..alphabet.len() {
                b.rule(fe, a, fo).rule(fo, a, fe);
            }
            b.border(fe, fe).border(fo, fo);
        }
    }
    b.build().unwrap()
}

/// Accepts the pictures whose first scanned cell holds `first`.
pub fn first_cell_is(kind: AutomatonKind, alphabet: &[Symbol], first: &Symbol) -> HexAutomaton {
    let mut b = with_alphabet(kind, alphabet);
    let first = b.add_symbol(first.clone());
    let s = b.add_state("s", Partition::Forward).unwrap();
    let ok = b.add_state("ok", Partition::Forward).unwrap();
    b.start(s).final_state(ok).rule(s, first, ok);
    let k = alphabet.len().max(first + 1);
    match kind {
        AutomatonKind::Boustrophedon => {
            let back = b.add_state("ok_b", Partition::Backward).unwrap();
            for a in 0..k {
                b.rule(ok, a, ok).rule(back, a, back);
            }
            b.border(ok, back).border(back, ok).final_state(back);
        }
        AutomatonKind::Returning => {
            for a in 0..k {
                b.rule(ok, a, ok);
            }
            b.border(ok, ok);
        }
    }
    b.build().unwrap()
}
