use std::collections::HashMap;

use crate::automata::{linearize, DirectionMode, HexAutomaton, Simulator, Step, FOREIGN};
use crate::hexgrid::{HexPicture, HexSize, Symbol};

use super::{Equivalence, LangError};

/// Lengths of the cell blocks a mode reads on pictures of one size; each
/// block is followed by one border mark.
pub fn linearization_shape(size: HexSize, mode: DirectionMode) -> Vec<usize> {
    linearize(size, mode).block_lengths().to_vec()
}

type Pair = (Vec<u32>, Vec<u32>);

struct Node {
    pair: Pair,
    parent: usize,
    symbol: Option<usize>,
}

/// Decides whether `(a1, d1)` and `(a2, d2)` accept the same pictures of
/// one size, without enumerating pictures.
///
/// Both runs are viewed as string acceptors over the fixed input shape
/// `Σ^{w1} # Σ^{w2} # … Σ^{wK} #`, so the question becomes emptiness of the
/// symmetric difference of two finite automata restricted to that shape,
/// decided by a layered search over pairs of frontiers. The two modes must
/// read the cells in the same order; otherwise the strings do not describe
/// the same picture and
/// [`LangError::IncompatibleLinearizations`] is returned. The alphabet is
/// the union of both automata's alphabets.
pub fn exact_equivalent_for_size(
    a1: &HexAutomaton,
    d1: DirectionMode,
    a2: &HexAutomaton,
    d2: DirectionMode,
    size: HexSize,
) -> Result<Equivalence, LangError> {
    for (a, d) in [(a1, d1), (a2, d2)] {
        if a.kind() != d.kind {
            return Err(crate::automata::AutomatonError::KindMismatch {
                automaton: a.kind(),
                mode: d,
            }
            .into());
        }
        a.validate()
            .map_err(crate::automata::AutomatonError::Invalid)?;
    }
    let lin = linearize(size, d1);
    if lin.steps() != linearize(size, d2).steps() {
        return Err(LangError::IncompatibleLinearizations {
            first: d1,
            second: d2,
            size,
        });
    }

    let mut alphabet: Vec<Symbol> = a1.alphabet().to_vec();
    for s in a2.alphabet() {
        if !alphabet.contains(s) {
            alphabet.push(s.clone());
        }
    }
    let code = |a: &HexAutomaton| -> Vec<u32> {
        alphabet
            .iter()
            .map(|s| a.symbol_index(s).map_or(FOREIGN, |i| i as u32))
            .collect()
    };
    let (code1, code2) = (code(a1), code(a2));
    let (mut s1, mut s2) = (Simulator::new(a1), Simulator::new(a2));
    s1.reset();
    s2.reset();

    // nodes[layer][i]: a reachable pair of frontiers with a back pointer.
    let mut layers: Vec<Vec<Node>> = vec![vec![Node {
        pair: (s1.frontier().to_vec(), s2.frontier().to_vec()),
        parent: 0,
        symbol: None,
    }]];
    let advance = |sim: &mut Simulator, frontier: &[u32], input: Option<u32>| -> Vec<u32> {
        sim.set_frontier(frontier);
        match input {
            Some(sym) => sim.advance_symbol(sym),
            None => sim.advance_border(),
        }
        let mut out = sim.frontier().to_vec();
        out.sort_unstable();
        out
    };
    for step in lin.steps() {
        let previous = layers.last().unwrap();
        let mut next: Vec<Node> = Vec::new();
        let mut seen: HashMap<Pair, usize> = HashMap::new();
        for (i, node) in previous.iter().enumerate() {
            let choices: Vec<Option<usize>> = match step {
                Step::Cell { .. } => (0..alphabet.len()).map(Some).collect(),
                Step::Border => vec![None],
            };
            for symbol in choices {
                let f1 = advance(&mut s1, &node.pair.0, symbol.map(|k| code1[k]));
                let f2 = advance(&mut s2, &node.pair.1, symbol.map(|k| code2[k]));
                // Both runs dead: these continuations can never disagree.
                if f1.is_empty() && f2.is_empty() {
                    continue;
                }
                let pair = (f1, f2);
                if !seen.contains_key(&pair) {
                    seen.insert(pair.clone(), next.len());
                    next.push(Node {
                        pair,
                        parent: i,
                        symbol,
                    });
                }
            }
        }
        layers.push(next);
    }

    let last = layers.last().unwrap();
    let differing = last.iter().position(|node| {
        s1.set_frontier(&node.pair.0);
        s2.set_frontier(&node.pair.1);
        s1.accepting() != s2.accepting()
    });
    let Some(mut index) = differing else {
        return Ok(Equivalence::Equal);
    };

    let mut symbols = Vec::new();
    for layer in layers.iter().skip(1).rev() {
        let node = &layer[index];
        if let Some(k) = node.symbol {
            symbols.push(k);
        }
        index = node.parent;
    }
    symbols.reverse();
    let mut cells: Vec<Option<Symbol>> = vec![None; size.cell_count()];
    for (coord_index, k) in lin.visit_order().iter().zip(symbols) {
        let i = size
            .index_of(*coord_index)
            .expect("cells come from the scan plan");
        cells[i] = Some(alphabet[k].clone());
    }
    let cells = cells
        .into_iter()
        .map(|c| c.expect("every cell is read"))
        .collect();
    Ok(Equivalence::Counterexample(
        HexPicture::from_cells(size, cells).expect("cell count matches"),
    ))
}
