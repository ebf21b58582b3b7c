use crate::automata::DirectionMode;
use crate::symmetry::{invert, transform_size, CoordMap, SymmetryOp};

use super::{CellCoord, HexSize};

/// Ordered scan lines covering every cell of a picture exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanPlan {
    lines: Vec<Vec<CellCoord>>,
}

impl ScanPlan {
    pub fn lines(&self) -> &[Vec<CellCoord>] {
        &self.lines
    }

    pub fn line_lengths(&self) -> Vec<usize> {
        self.lines.iter().map(Vec::len).collect()
    }

    pub fn cell_count(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }

    /// Canonical plan: constant-`q` lines from `q = -(l-1)` up to `m-1`,
    /// each ordered by increasing row.
    pub fn canonical(size: HexSize) -> ScanPlan {
        let first = -(size.l() as i32 - 1);
        let mut lines: Vec<Vec<CellCoord>> = vec![Vec::new(); (size.l() + size.m() - 1) as usize];
        // Row-major traversal already yields increasing r within each line.
        for c in size.cells() {
            lines[(c.q - first) as usize].push(c);
        }
        ScanPlan { lines }
    }

    /// Plan of the canonical scan of `op(picture)`, expressed in the
    /// coordinates of the untransformed picture.
    pub fn for_element(size: HexSize, op: SymmetryOp) -> ScanPlan {
        if op == SymmetryOp::IDENTITY {
            return ScanPlan::canonical(size);
        }
        let target = transform_size(op, size);
        let back = CoordMap::new(invert(op), target);
        let lines = ScanPlan::canonical(target)
            .lines
            .into_iter()
            .map(|line| line.into_iter().map(|c| back.apply(c)).collect())
            .collect();
        ScanPlan { lines }
    }
}

/// Scan lines a direction mode follows on a picture of the given size. Both
/// automaton kinds share the line geometry; they differ only in the
/// orientation used for alternate lines.
pub fn scan_lines(size: HexSize, mode: DirectionMode) -> ScanPlan {
    ScanPlan::for_element(size, mode.element)
}
