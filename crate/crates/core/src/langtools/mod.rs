//! Bounded picture languages: exhaustive enumeration, accepted sets and
//! equivalence checks over finite sets of sizes.

mod exact;
mod random;

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::automata::linearize;
use crate::automata::{AutomatonError, DirectionMode, HexAutomaton, Simulator, FOREIGN};
use crate::hexgrid::{serialize_picture, HexPicture, HexSize, Symbol};
use crate::symmetry::{apply_op, transform_size, SymmetryOp};

pub use exact::{exact_equivalent_for_size, linearization_shape};
pub use random::{random_automaton, random_pool, RandomSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("the alphabet is empty")]
    EmptyAlphabet,
    #[error("the size bound is empty")]
    EmptyBound,
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("modes {first} and {second} read pictures of size {size} in different orders")]
    IncompatibleLinearizations {
        first: DirectionMode,
        second: DirectionMode,
        size: HexSize,
    },
}

/// A finite, non-empty set of picture sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeBound {
    sizes: Vec<HexSize>,
}

impl SizeBound {
    pub fn new(sizes: impl IntoIterator<Item = HexSize>) -> Result<SizeBound, LangError> {
        let mut sizes: Vec<HexSize> = sizes.into_iter().collect();
        sizes.sort();
        sizes.dedup();
        if sizes.is_empty() {
            return Err(LangError::EmptyBound);
        }
        Ok(SizeBound { sizes })
    }

    /// All sizes with every side in `1..=max_side`.
    pub fn up_to(max_side: u32) -> SizeBound {
        SizeBound {
            sizes: HexSize::all_up_to(max_side.max(1)),
        }
    }

    pub fn single(size: HexSize) -> SizeBound {
        SizeBound { sizes: vec![size] }
    }

    pub fn sizes(&self) -> &[HexSize] {
        &self.sizes
    }

    pub fn image(&self, op: SymmetryOp) -> SizeBound {
        SizeBound::new(self.sizes.iter().map(|&s| transform_size(op, s))).expect("non-empty")
    }

    pub fn picture_count(&self, alphabet_len: usize) -> u128 {
        self.sizes
            .iter()
            .map(|s| (alphabet_len as u128).pow(s.cell_count() as u32))
            .sum()
    }
}

/// The members of a language among all pictures over `alphabet` whose size
/// lies in `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSample {
    pub alphabet: Vec<Symbol>,
    pub bound: SizeBound,
    pub members: BTreeSet<HexPicture>,
}

/// Streams every picture over the alphabet with a size in the bound, size
/// by size.
#[derive(Debug, Clone)]
pub struct Pictures {
    alphabet: Vec<Symbol>,
    sizes: Vec<HexSize>,
    current: usize,
    digits: Option<Vec<usize>>,
}

impl Iterator for Pictures {
    type Item = HexPicture;

    fn next(&mut self) -> Option<HexPicture> {
        loop {
            let size = *self.sizes.get(self.current)?;
            match &mut self.digits {
                None => {
                    self.digits = Some(vec![0; size.cell_count()]);
                }
                Some(d) => {
                    if !increment(d, self.alphabet.len(), 0) {
                        self.current += 1;
                        self.digits = None;
                        continue;
                    }
                }
            }
            let digits = self.digits.as_ref().unwrap();
            return Some(decode(size, &self.alphabet, digits));
        }
    }
}

/// Odometer step over `digits[from..]`, last digit fastest.
fn increment(digits: &mut [usize], base: usize, from: usize) -> bool {
    for i in (from..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < base {
            return true;
        }
        digits[i] = 0;
    }
    false
}

fn decode(size: HexSize, alphabet: &[Symbol], digits: &[usize]) -> HexPicture {
    let cells = digits.iter().map(|&i| alphabet[i].clone()).collect();
    HexPicture::from_cells(size, cells).expect("digit vector matches the cell count")
}

pub fn enumerate_pictures(alphabet: &[Symbol], bound: &SizeBound) -> Result<Pictures, LangError> {
    if alphabet.is_empty() {
        return Err(LangError::EmptyAlphabet);
    }
    Ok(Pictures {
        alphabet: alphabet.to_vec(),
        sizes: bound.sizes.clone(),
        current: 0,
        digits: None,
    })
}

/// Pictures of the bound accepted by `a` in mode `d`. Symbols of `alphabet`
/// that `a` has no rules for simply block its runs.
pub fn accepted_set(
    a: &HexAutomaton,
    d: DirectionMode,
    alphabet: &[Symbol],
    bound: &SizeBound,
) -> Result<LanguageSample, LangError> {
    if alphabet.is_empty() {
        return Err(LangError::EmptyAlphabet);
    }
    if d.kind != a.kind() {
        return Err(AutomatonError::KindMismatch {
            automaton: a.kind(),
            mode: d,
        }
        .into());
    }
    a.validate().map_err(AutomatonError::Invalid)?;
    let code: Vec<u32> = alphabet
        .iter()
        .map(|s| a.symbol_index(s).map_or(FOREIGN, |i| i as u32))
        .collect();
    let k = alphabet.len();
    // Jobs split the picture space by size and by the symbol of the first
    // row-major cell.
    let jobs: Vec<(HexSize, usize)> = bound
        .sizes
        .iter()
        .flat_map(|&s| (0..k).map(move |lead| (s, lead)))
        .collect();
    let members: BTreeSet<HexPicture> = jobs
        .par_iter()
        .flat_map_iter(|&(size, lead)| {
            let lin = linearize(size, d);
            let mut sim = Simulator::new(a);
            let mut digits = vec![0usize; size.cell_count()];
            digits[0] = lead;
            let mut cells = vec![0u32; digits.len()];
            let mut found = Vec::new();
            loop {
                for (c, &i) in cells.iter_mut().zip(&digits) {
                    *c = code[i];
                }
                if sim.accepts(&lin, &cells) {
                    found.push(decode(size, alphabet, &digits));
                }
                if !increment(&mut digits, k, 1) {
                    break;
                }
            }
            found
        })
        .collect();
    Ok(LanguageSample {
        alphabet: alphabet.to_vec(),
        bound: bound.clone(),
        members,
    })
}

/// Maps every member (and the bound) through `op`.
pub fn image_set(sample: &LanguageSample, op: SymmetryOp) -> LanguageSample {
    LanguageSample {
        alphabet: sample.alphabet.clone(),
        bound: sample.bound.image(op),
        members: sample.members.iter().map(|p| apply_op(op, p)).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// A picture on which the two sides disagree.
    Counterexample(HexPicture),
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

/// Smallest picture first: fewer cells, then serialized text order.
pub fn counterexample_order(p: &HexPicture) -> (usize, String) {
    (p.size().cell_count(), serialize_picture(p))
}

/// Compares the bounded language of `(a2, d2)` with the `op`-image of the
/// bounded language of `(a1, d1)`, reporting the smallest difference.
pub fn bounded_equivalent(
    a1: &HexAutomaton,
    d1: DirectionMode,
    a2: &HexAutomaton,
    d2: DirectionMode,
    alphabet: &[Symbol],
    bound: &SizeBound,
    op: SymmetryOp,
) -> Result<Equivalence, LangError> {
    let (left, right) = rayon::join(
        || accepted_set(a1, d1, alphabet, bound),
        || accepted_set(a2, d2, alphabet, bound),
    );
    let left = image_set(&left?, op).members;
    let right = right?.members;
    Ok(left
        .symmetric_difference(&right)
        .map(|p| (counterexample_order(p), p))
        .min()
        .map_or(Equivalence::Equal, |(_, p)| {
            Equivalence::Counterexample(p.clone())
        }))
}
