//! Hexagonal pictures on the triangular lattice.
//!
//! A picture of size `(l, m, n)` has an upper-left side of `l` cells, a top
//! side of `m` cells and an upper-right side of `n` cells; opposite sides
//! have equal length. Cells are addressed by axial coordinates `(r, q)`:
//! `r` is the 0-based row from the top and `q = j + offset(r)` where `j` is
//! the position inside the row and `offset(r) = -min(r, l - 1)`. With this
//! choice the three lattice line families are exactly the sets with constant
//! `r`, constant `q` and constant `q + r`.

mod scan;
pub(crate) mod text;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use scan::{scan_lines, ScanPlan};
pub use text::{parse_picture, render_ascii, serialize_picture, PictureFormatError};

/// Symbol marking the picture boundary.
pub const BORDER: &str = "#";
/// Symbol marking an erased (already consumed) cell.
pub const ERASED: &str = "_";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("side lengths must be positive, got ({0}, {1}, {2})")]
    ZeroSide(u32, u32, u32),
    #[error("`{0}` is reserved and cannot be a picture symbol")]
    ReservedSymbol(String),
    #[error("invalid symbol {0:?}: symbols are non-empty and contain no whitespace")]
    InvalidSymbol(String),
    #[error("cell {coord} is outside a picture of size {size}")]
    OutOfBounds { coord: CellCoord, size: HexSize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} cells, expected {expected}")]
    RowWidth {
        row: usize,
        expected: usize,
        found: usize,
    },
}

/// Side lengths `(l, m, n)` of a non-empty hexagonal picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HexSize {
    l: u32,
    m: u32,
    n: u32,
}

impl HexSize {
    pub fn new(l: u32, m: u32, n: u32) -> Result<HexSize, GridError> {
        if l == 0 || m == 0 || n == 0 {
            return Err(GridError::ZeroSide(l, m, n));
        }
        Ok(HexSize { l, m, n })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sides(&self) -> (u32, u32, u32) {
        (self.l, self.m, self.n)
    }

    pub fn row_count(&self) -> usize {
        (self.l + self.n - 1) as usize
    }

    /// Width of row `r`: `m + min(r + 1, l, n, l + n - 1 - r) - 1`.
    pub fn row_width(&self, r: usize) -> usize {
        let r = r as u32;
        debug_assert!(r < self.l + self.n - 1);
        let grow = (r + 1).min(self.l).min(self.n).min(self.l + self.n - 1 - r);
        (self.m + grow - 1) as usize
    }

    /// Axial column of the first cell of row `r`.
    pub fn row_offset(&self, r: usize) -> i32 {
        -((r as i32).min(self.l as i32 - 1))
    }

    pub fn row_widths(&self) -> Vec<usize> {
        (0..self.row_count()).map(|r| self.row_width(r)).collect()
    }

    /// `l·m + m·n + n·l − l − m − n + 1`.
    pub fn cell_count(&self) -> usize {
        let (l, m, n) = (self.l as usize, self.m as usize, self.n as usize);
        l * m + m * n + n * l + 1 - l - m - n
    }

    pub fn contains(&self, c: CellCoord) -> bool {
        if c.r < 0 || c.r as usize >= self.row_count() {
            return false;
        }
        let offset = self.row_offset(c.r as usize);
        c.q >= offset && c.q < offset + self.row_width(c.r as usize) as i32
    }

    /// Row-major index of a cell, or `None` when the cell lies outside.
    pub fn index_of(&self, c: CellCoord) -> Option<usize> {
        if !self.contains(c) {
            return None;
        }
        let r = c.r as usize;
        let before: usize = (0..r).map(|i| self.row_width(i)).sum();
        Some(before + (c.q - self.row_offset(r)) as usize)
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = CellCoord> + '_ {
        (0..self.row_count()).flat_map(move |r| {
            let offset = self.row_offset(r);
            (0..self.row_width(r) as i32).map(move |j| CellCoord::new(r as i32, offset + j))
        })
    }

    /// Size of the picture once surrounded by a ring of border symbols.
    pub fn bordered(&self) -> HexSize {
        HexSize {
            l: self.l + 1,
            m: self.m + 1,
            n: self.n + 1,
        }
    }

    /// Every size whose three sides lie in `1..=max_side`, sorted.
    pub fn all_up_to(max_side: u32) -> Vec<HexSize> {
        let mut sizes = Vec::new();
        for l in 1..=max_side {
            for m in 1..=max_side {
                for n in 1..=max_side {
                    sizes.push(HexSize { l, m, n });
                }
            }
        }
        sizes
    }
}

impl fmt::Display for HexSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.l, self.m, self.n)
    }
}

/// Axial cell address: row `r` and column `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellCoord {
    pub r: i32,
    pub q: i32,
}

impl CellCoord {
    pub const fn new(r: i32, q: i32) -> CellCoord {
        CellCoord { r, q }
    }

    /// Third cube coordinate, `s = -q - r`.
    pub fn s(&self) -> i32 {
        -self.q - self.r
    }
}

impl fmt::Display for CellCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.q)
    }
}

/// A picture symbol: a non-empty token without whitespace, never `#` or `_`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(token: &str) -> Result<Symbol, GridError> {
        if token == BORDER || token == ERASED {
            return Err(GridError::ReservedSymbol(token.to_string()));
        }
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(GridError::InvalidSymbol(token.to_string()));
        }
        Ok(Symbol(Arc::from(token)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Symbol {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Symbol, GridError> {
        Symbol::new(s)
    }
}

/// Hexagonal arrangement of symbols. Immutable: edits return a new picture.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HexPicture {
    size: HexSize,
    cells: Vec<Symbol>,
}

impl HexPicture {
    /// Builds a picture from explicit rows, checking the row shape.
    pub fn from_rows(size: HexSize, rows: Vec<Vec<Symbol>>) -> Result<HexPicture, GridError> {
        if rows.len() != size.row_count() {
            return Err(GridError::RowCount {
                expected: size.row_count(),
                found: rows.len(),
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != size.row_width(r) {
                return Err(GridError::RowWidth {
                    row: r,
                    expected: size.row_width(r),
                    found: row.len(),
                });
            }
        }
        Ok(HexPicture {
            size,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a picture from its cells in row-major order.
    pub fn from_cells(size: HexSize, cells: Vec<Symbol>) -> Result<HexPicture, GridError> {
        if cells.len() != size.cell_count() {
            return Err(GridError::RowWidth {
                row: size.row_count() - 1,
                expected: size.cell_count(),
                found: cells.len(),
            });
        }
        Ok(HexPicture { size, cells })
    }

    pub fn uniform(size: HexSize, symbol: Symbol) -> HexPicture {
        HexPicture {
            size,
            cells: vec![symbol; size.cell_count()],
        }
    }

    /// Like [`HexPicture::uniform`] but takes a raw token.
    pub fn make_uniform(size: HexSize, token: &str) -> Result<HexPicture, GridError> {
        Ok(HexPicture::uniform(size, Symbol::new(token)?))
    }

    pub fn size(&self) -> HexSize {
        self.size
    }

    pub fn get(&self, coord: CellCoord) -> Result<&Symbol, GridError> {
        self.size
            .index_of(coord)
            .map(|i| &self.cells[i])
            .ok_or(GridError::OutOfBounds {
                coord,
                size: self.size,
            })
    }

    /// Returns a copy of the picture with `coord` holding `symbol`.
    pub fn with_cell(&self, coord: CellCoord, symbol: Symbol) -> Result<HexPicture, GridError> {
        let i = self.size.index_of(coord).ok_or(GridError::OutOfBounds {
            coord,
            size: self.size,
        })?;
        let mut cells = self.cells.clone();
        cells[i] = symbol;
        Ok(HexPicture {
            size: self.size,
            cells,
        })
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<&[Symbol]> {
        let mut rows = Vec::with_capacity(self.size.row_count());
        let mut start = 0;
        for w in self.size.row_widths() {
            rows.push(&self.cells[start..start + w]);
            start += w;
        }
        rows
    }

    pub fn symbols(&self) -> BTreeSet<&Symbol> {
        self.cells.iter().collect()
    }

    pub fn bordered(&self) -> BorderedPicture {
        BorderedPicture {
            inner: self.clone(),
        }
    }
}

/// A cell of a bordered picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BorderedCell<'a> {
    Border,
    Inner(&'a Symbol),
}

/// A picture surrounded by a ring of `#`. The ring is virtual: cells outside
/// the inner picture read as [`BorderedCell::Border`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderedPicture {
    inner: HexPicture,
}

impl BorderedPicture {
    pub fn inner(&self) -> &HexPicture {
        &self.inner
    }

    pub fn size(&self) -> HexSize {
        self.inner.size.bordered()
    }

    /// Reads a cell addressed in the bordered picture's own coordinates.
    pub fn get(&self, coord: CellCoord) -> Result<BorderedCell<'_>, GridError> {
        let size = self.size();
        if !size.contains(coord) {
            return Err(GridError::OutOfBounds { coord, size });
        }
        // Inner (r, q) sits at bordered (r + 1, q).
        let inner = CellCoord::new(coord.r - 1, coord.q);
        Ok(match self.inner.get(inner) {
            Ok(symbol) => BorderedCell::Inner(symbol),
            Err(_) => BorderedCell::Border,
        })
    }

    pub fn ring_cell_count(&self) -> usize {
        self.size().cell_count() - self.inner.size.cell_count()
    }
}
