//! The twelve symmetries of the hexagon acting on pictures.
//!
//! `R0..R5` are rotations by multiples of 60° and `r0..r5` reflections whose
//! axes are 30° apart. Group elements compose as functions: `compose(g, h)`
//! applies `h` first, then `g`, so
//! `apply_op(compose(g, h), p) == apply_op(g, &apply_op(h, p))`.
//!
//! Anchoring: `R1` turns the picture one step clockwise (as rendered, rows
//! horizontal, row 0 on top). `r0` mirrors every constant-`q` lattice line
//! end to end, `r3` swaps the constant-`q` lines across the middle while
//! keeping their direction, and `r1` swaps top and bottom rows. The
//! remaining reflections are `r_k = R_k ∘ r0`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::hexgrid::{CellCoord, HexPicture, HexSize};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown symmetry operation `{0}` (expected one of R0..R5, r0..r5)")]
pub struct UnknownOp(pub String);

/// One element of the dihedral group of order 12.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetryOp {
    reflection: bool,
    index: u8,
}

impl SymmetryOp {
    pub const IDENTITY: SymmetryOp = SymmetryOp::rotation(0);

    /// All twelve elements in the order `R0..R5, r0..r5`.
    pub const ALL: [SymmetryOp; 12] = [
        SymmetryOp::rotation(0),
        SymmetryOp::rotation(1),
        SymmetryOp::rotation(2),
        SymmetryOp::rotation(3),
        SymmetryOp::rotation(4),
        SymmetryOp::rotation(5),
        SymmetryOp::reflection(0),
        SymmetryOp::reflection(1),
        SymmetryOp::reflection(2),
        SymmetryOp::reflection(3),
        SymmetryOp::reflection(4),
        SymmetryOp::reflection(5),
    ];

    /// `R_k`: clockwise rotation by `k · 60°`. `k` is taken mod 6.
    pub const fn rotation(k: u8) -> SymmetryOp {
        SymmetryOp {
            reflection: false,
            index: k % 6,
        }
    }

    /// `r_k`. `k` is taken mod 6.
    pub const fn reflection(k: u8) -> SymmetryOp {
        SymmetryOp {
            reflection: true,
            index: k % 6,
        }
    }

    pub fn is_reflection(&self) -> bool {
        self.reflection
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    /// Position in [`SymmetryOp::ALL`].
    pub fn ordinal(&self) -> usize {
        self.index as usize + if self.reflection { 6 } else { 0 }
    }

    /// Maps cube coordinates `(q, r, s)` about the lattice origin.
    pub fn map_cube(&self, [q, r, s]: [i32; 3]) -> [i32; 3] {
        match (self.reflection, self.index) {
            (false, 0) => [q, r, s],
            (false, 1) => [-r, -s, -q],
            (false, 2) => [s, q, r],
            (false, 3) => [-q, -r, -s],
            (false, 4) => [r, s, q],
            (false, 5) => [-s, -q, -r],
            (true, 0) => [q, s, r],
            (true, 1) => [-s, -r, -q],
            (true, 2) => [r, q, s],
            (true, 3) => [-q, -s, -r],
            (true, 4) => [s, r, q],
            (true, 5) => [-r, -q, -s],
            _ => unreachable!("index is always reduced mod 6"),
        }
    }
}

impl fmt::Display for SymmetryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.reflection { 'r' } else { 'R' };
        write!(f, "{letter}{}", self.index)
    }
}

impl FromStr for SymmetryOp {
    type Err = UnknownOp;

    fn from_str(s: &str) -> Result<SymmetryOp, UnknownOp> {
        let mut chars = s.chars();
        let op = match (chars.next(), chars.next(), chars.next()) {
            (Some('R'), Some(d @ '0'..='5'), None) => SymmetryOp::rotation(d as u8 - b'0'),
            (Some('r'), Some(d @ '0'..='5'), None) => SymmetryOp::reflection(d as u8 - b'0'),
            _ => return Err(UnknownOp(s.to_string())),
        };
        Ok(op)
    }
}

/// `g ∘ h`: apply `h`, then `g`.
pub fn compose(g: SymmetryOp, h: SymmetryOp) -> SymmetryOp {
    let (i, j) = (g.index, h.index);
    match (g.reflection, h.reflection) {
        (false, false) => SymmetryOp::rotation(i + j),
        (false, true) => SymmetryOp::reflection(i + j),
        (true, false) => SymmetryOp::reflection(i + 6 - j),
        (true, true) => SymmetryOp::rotation(i + 6 - j),
    }
}

pub fn invert(op: SymmetryOp) -> SymmetryOp {
    if op.reflection {
        op
    } else {
        SymmetryOp::rotation(6 - op.index)
    }
}

/// Size of `apply_op(op, p)` for any picture `p` of the given size.
pub fn transform_size(op: SymmetryOp, size: HexSize) -> HexSize {
    // Side lengths clockwise from the top edge: top, upper-right,
    // lower-right, bottom, lower-left, upper-left.
    let (l, m, n) = size.sides();
    let sides = [m, n, l, m, n, l];
    let k = op.index as usize;
    // New side at position p is the old side at position src(p).
    let src = |p: usize| {
        if op.reflection {
            // r_k = R_k ∘ r0, and r0 swaps positions p and 2 - p.
            (2 + 12 - (p + 6 - k) % 6) % 6
        } else {
            (p + 6 - k) % 6
        }
    };
    HexSize::new(sides[src(2)], sides[src(0)], sides[src(1)]).expect("sides stay positive")
}

/// Coordinate bijection from a picture of one size to its image under an op.
#[derive(Debug, Clone, Copy)]
pub struct CoordMap {
    op: SymmetryOp,
    source: HexSize,
    target: HexSize,
    dr: i32,
    dq: i32,
}

impl CoordMap {
    pub fn new(op: SymmetryOp, source: HexSize) -> CoordMap {
        let target = transform_size(op, source);
        // The image is a translate of the target hexagon; pin the translation
        // with the top row's leftmost cell.
        let (mut top, mut left) = (i32::MAX, i32::MAX);
        for c in source.cells() {
            let [q, r, _] = op.map_cube([c.q, c.r, c.s()]);
            if r < top || (r == top && q < left) {
                top = r;
                left = q;
            }
        }
        CoordMap {
            op,
            source,
            target,
            dr: -top,
            dq: -left,
        }
    }

    pub fn op(&self) -> SymmetryOp {
        self.op
    }

    pub fn source(&self) -> HexSize {
        self.source
    }

    pub fn target(&self) -> HexSize {
        self.target
    }

    pub fn apply(&self, c: CellCoord) -> CellCoord {
        let [q, r, _] = self.op.map_cube([c.q, c.r, c.s()]);
        CellCoord::new(r + self.dr, q + self.dq)
    }
}

/// Applies a symmetry to a picture.
pub fn apply_op(op: SymmetryOp, picture: &HexPicture) -> HexPicture {
    if op == SymmetryOp::IDENTITY {
        return picture.clone();
    }
    let map = CoordMap::new(op, picture.size());
    let target = map.target();
    let mut cells = vec![None; target.cell_count()];
    for (c, symbol) in picture.size().cells().zip(picture.cells()) {
        let i = target
            .index_of(map.apply(c))
            .expect("image cell lies inside the target hexagon");
        cells[i] = Some(symbol.clone());
    }
    let cells = cells
        .into_iter()
        .map(|s| s.expect("coordinate map is a bijection"))
        .collect();
    HexPicture::from_cells(target, cells).expect("cell count preserved")
}

/// A word over the generators `R1` and `r1`, read as a composition: the
/// last letter acts first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpWord(Vec<SymmetryOp>);

impl OpWord {
    pub fn letters(&self) -> &[SymmetryOp] {
        &self.0
    }

    /// The group element the word denotes.
    pub fn value(&self) -> SymmetryOp {
        self.0
            .iter()
            .fold(SymmetryOp::IDENTITY, |acc, &letter| compose(acc, letter))
    }

    /// Applies the word letter by letter, rightmost first.
    pub fn evaluate(&self, picture: &HexPicture) -> HexPicture {
        self.0
            .iter()
            .rev()
            .fold(picture.clone(), |p, &letter| apply_op(letter, &p))
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.0.iter().map(|op| op.to_string()).collect();
        f.write_str(&names.join(" o "))
    }
}

/// Normal form of an element over `{R1, r1}`: `R_k = R1^k` (identity as
/// `r1 r1`) and `r_k = r1 ∘ R1^((1 - k) mod 6)`.
pub fn normal_form(op: SymmetryOp) -> OpWord {
    let rot = SymmetryOp::rotation(1);
    let refl = SymmetryOp::reflection(1);
    let word = match (op.reflection, op.index) {
        (false, 0) => vec![refl, refl],
        (false, k) => vec![rot; k as usize],
        (true, k) => {
            let turns = (7 - k as usize) % 6;
            std::iter::once(refl)
                .chain(std::iter::repeat_n(rot, turns))
                .collect()
        }
    };
    OpWord(word)
}
