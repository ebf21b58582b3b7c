use thiserror::Error;

use super::{BorderedCell, CellCoord, GridError, HexPicture, HexSize, Symbol, BORDER};

pub const PICTURE_HEADER: &str = "%HXP 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PictureFormatError {
    #[error("line {line}: expected header `{PICTURE_HEADER}`")]
    Header { line: usize },
    #[error("line {line}: expected `size: L M N`, found {found:?}")]
    Size { line: usize, found: String },
    #[error("line {line}: expected a `row:` line, found {found:?}")]
    Row { line: usize, found: String },
    #[error("line {line}: {source}")]
    Symbol { line: usize, source: GridError },
    #[error(transparent)]
    Shape(#[from] GridError),
}

/// Parses a picture in the `%HXP 1` text format.
pub fn parse_picture(text: &str) -> Result<HexPicture, PictureFormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l.trim() == PICTURE_HEADER => {}
        Some((line, _)) => return Err(PictureFormatError::Header { line }),
        None => return Err(PictureFormatError::Header { line: 1 }),
    }

    let (line, size_line) = lines.next().ok_or(PictureFormatError::Size {
        line: 2,
        found: String::new(),
    })?;
    let size = parse_size(size_line).ok_or_else(|| PictureFormatError::Size {
        line,
        found: size_line.to_string(),
    })?;

    let mut rows = Vec::with_capacity(size.row_count());
    for (line, l) in lines {
        let body = l
            .trim_start()
            .strip_prefix("row:")
            .ok_or_else(|| PictureFormatError::Row {
                line,
                found: l.to_string(),
            })?;
        let row = body
            .split_whitespace()
            .map(Symbol::new)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|source| PictureFormatError::Symbol { line, source })?;
        rows.push(row);
    }
    Ok(HexPicture::from_rows(size, rows)?)
}

fn parse_size(line: &str) -> Option<HexSize> {
    let body = line.trim_start().strip_prefix("size:")?;
    let parts: Vec<u32> = body
        .split_whitespace()
        .map(|t| t.parse().ok())
        .collect::<Option<_>>()?;
    match parts[..] {
        [l, m, n] => HexSize::new(l, m, n).ok(),
        _ => None,
    }
}

pub fn serialize_picture(picture: &HexPicture) -> String {
    let (l, m, n) = picture.size().sides();
    let mut out = format!("{PICTURE_HEADER}\nsize: {l} {m} {n}\n");
    for row in picture.rows() {
        out.push_str("row:");
        for symbol in row {
            out.push(' ');
            out.push_str(symbol.as_str());
        }
        out.push('\n');
    }
    out
}

/// Draws the picture as indented rows so the hexagonal outline shows. With
/// `with_border` the surrounding ring of `#` is drawn as well.
pub fn render_ascii(picture: &HexPicture, with_border: bool) -> String {
    if with_border {
        let bordered = picture.bordered();
        render_with(bordered.size(), |c| match bordered.get(c) {
            Ok(BorderedCell::Inner(symbol)) => symbol.as_str(),
            _ => BORDER,
        })
    } else {
        render_with(picture.size(), |c| {
            picture.get(c).map(Symbol::as_str).unwrap_or(BORDER)
        })
    }
}

/// Shared layout for pictures and trace snapshots: each cell is padded to
/// the widest token and rows are shifted by half a cell per step away from
/// the widest row.
pub(crate) fn render_with<'a>(size: HexSize, token: impl Fn(CellCoord) -> &'a str) -> String {
    let tokens: Vec<Vec<&str>> = (0..size.row_count())
        .map(|r| {
            let offset = size.row_offset(r);
            (0..size.row_width(r) as i32)
                .map(|j| token(CellCoord::new(r as i32, offset + j)))
                .collect()
        })
        .collect();
    let cell = tokens
        .iter()
        .flatten()
        .map(|t| t.chars().count())
        .max()
        .unwrap_or(1);
    let pitch = cell + 1;
    let apex = size.l() as i64 - 1;
    let mut out = String::new();
    for (r, row) in tokens.iter().enumerate() {
        let steps = (r as i64 - apex).unsigned_abs() as usize;
        let mut line = " ".repeat(steps * pitch / 2);
        let cells: Vec<String> = row.iter().map(|t| format!("{t:<cell$}")).collect();
        line.push_str(cells.join(" ").trim_end());
        out.push_str(&line);
        out.push('\n');
    }
    out
}
