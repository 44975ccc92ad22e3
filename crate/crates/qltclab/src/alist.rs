//! MacKay alist files.
//!
//! ```text
//! n m
//! max_col_degree max_row_degree
//! col degrees (n entries)
//! row degrees (m entries)
//! n lines of 1-based row indices, zero-padded to max_col_degree
//! m lines of 1-based column indices, zero-padded to max_row_degree
//! ```
//!
//! The reader also accepts unpadded index lists.

use std::fmt::Write as _;
use std::io;

use qltclab_core::f2::BinaryMatrix;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Header,
    MaxDegrees,
    ColumnDegrees,
    RowDegrees,
    ColumnLists,
    RowLists,
}

impl Section {
    pub fn as_str(self) -> &'static str {
        match self {
            Section::Header => "header",
            Section::MaxDegrees => "max degrees",
            Section::ColumnDegrees => "column degrees",
            Section::RowDegrees => "row degrees",
            Section::ColumnLists => "column index lists",
            Section::RowLists => "row index lists",
        }
    }
}

impl std::fmt::Display for Section {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlistError {
    /// `line` is 1-based; a missing section reports the line it should start on.
    #[error("line {line}: {section}: {message}")]
    Parse {
        line: usize,
        section: Section,
        message: String,
    },
    #[error("line {line}: {section}: degree {degree} exceeds the limit {max}")]
    DegreeOverflow {
        line: usize,
        section: Section,
        degree: usize,
        max: usize,
    },
}

/// Renders `m` as alist text.
pub fn to_alist(m: &BinaryMatrix) -> String {
    let (rows, cols) = m.shape();
    let col_lists: Vec<Vec<usize>> = m.columns().iter().map(|c| c.iter_ones().collect()).collect();
    let row_lists: Vec<Vec<usize>> = m.row_vecs().iter().map(|r| r.iter_ones().collect()).collect();
    let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);

    let mut out = String::new();
    let _ = writeln!(out, "{cols} {rows}");
    let _ = writeln!(out, "{max_col} {max_row}");
    push_line(&mut out, col_lists.iter().map(Vec::len));
    push_line(&mut out, row_lists.iter().map(Vec::len));
    for list in &col_lists {
        push_line(&mut out, padded(list, max_col));
    }
    for list in &row_lists {
        push_line(&mut out, padded(list, max_row));
    }
    out
}

pub fn write_alist<W: io::Write>(m: &BinaryMatrix, mut sink: W) -> io::Result<()> {
    sink.write_all(to_alist(m).as_bytes())
}

fn padded(list: &[usize], width: usize) -> impl Iterator<Item = usize> + '_ {
    list.iter()
        .map(|i| i + 1)
        .chain(std::iter::repeat(0))
        .take(width)
}

fn push_line(out: &mut String, values: impl Iterator<Item = usize>) {
    let line: Vec<String> = values.map(|v| v.to_string()).collect();
    out.push_str(&line.join(" "));
    out.push('\n');
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            lines: text.lines().collect(),
            next: 0,
        }
    }

    /// Next line as numbers, with its 1-based line number. A line that
    /// must be empty may also be absent at the end of the file.
    fn numbers(&mut self, section: Section, may_be_empty: bool) -> Result<(usize, Vec<usize>), AlistError> {
        let line = self.next + 1;
        let text = match self.lines.get(self.next) {
            Some(text) => text,
            None if may_be_empty => return Ok((line, Vec::new())),
            None => {
                return Err(AlistError::Parse {
                    line,
                    section,
                    message: "missing section".into(),
                })
            }
        };
        self.next += 1;
        let values = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| AlistError::Parse {
                    line,
                    section,
                    message: format!("expected a non-negative integer, got {t:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((line, values))
    }

    fn exactly(&mut self, section: Section, count: usize) -> Result<(usize, Vec<usize>), AlistError> {
        let (line, values) = self.numbers(section, count == 0)?;
        if values.len() != count {
            return Err(AlistError::Parse {
                line,
                section,
                message: format!("expected {count} numbers, found {}", values.len()),
            });
        }
        Ok((line, values))
    }
}

/// Reads one index list line: nonzero entries are 1-based indices below `bound`.
fn index_list(
    lines: &mut Lines<'_>,
    section: Section,
    degree: usize,
    max_degree: usize,
    bound: usize,
) -> Result<Vec<usize>, AlistError> {
    let (line, values) = lines.numbers(section, max_degree == 0)?;
    if values.len() > max_degree.max(degree) {
        return Err(AlistError::DegreeOverflow {
            line,
            section,
            degree: values.len(),
            max: max_degree,
        });
    }
    let indices: Vec<usize> = values.iter().copied().filter(|&v| v != 0).collect();
    if values[indices.len()..].iter().any(|&v| v != 0) {
        return Err(AlistError::Parse {
            line,
            section,
            message: "padding zeros must come last".into(),
        });
    }
    if indices.len() != degree {
        return Err(AlistError::Parse {
            line,
            section,
            message: format!("declared degree {degree} but listed {} indices", indices.len()),
        });
    }
    if let Some(&bad) = indices.iter().find(|&&i| i > bound) {
        return Err(AlistError::Parse {
            line,
            section,
            message: format!("index {bad} out of range 1..={bound}"),
        });
    }
    Ok(indices.into_iter().map(|i| i - 1).collect())
}

fn check_degrees(line: usize, section: Section, degrees: &[usize], max: usize, bound: usize) -> Result<(), AlistError> {
    for &d in degrees {
        if d > max || d > bound {
            return Err(AlistError::DegreeOverflow {
                line,
                section,
                degree: d,
                max: max.min(bound),
            });
        }
    }
    Ok(())
}

/// Parses alist text. Column and row lists must describe the same matrix.
pub fn parse_alist(text: &str) -> Result<BinaryMatrix, AlistError> {
    let mut lines = Lines::new(text);
    let (_, header) = lines.exactly(Section::Header, 2)?;
    let (cols, rows) = (header[0], header[1]);
    let (line, max) = lines.exactly(Section::MaxDegrees, 2)?;
    let (max_col, max_row) = (max[0], max[1]);
    if max_col > rows || max_row > cols {
        return Err(AlistError::DegreeOverflow {
            line,
            section: Section::MaxDegrees,
            degree: if max_col > rows { max_col } else { max_row },
            max: if max_col > rows { rows } else { cols },
        });
    }
    let (line, col_degrees) = lines.exactly(Section::ColumnDegrees, cols)?;
    check_degrees(line, Section::ColumnDegrees, &col_degrees, max_col, rows)?;
    let (line, row_degrees) = lines.exactly(Section::RowDegrees, rows)?;
    check_degrees(line, Section::RowDegrees, &row_degrees, max_row, cols)?;

    let mut m = BinaryMatrix::zeros(rows, cols);
    for (c, &d) in col_degrees.iter().enumerate() {
        for r in index_list(&mut lines, Section::ColumnLists, d, max_col, rows)? {
            m.set(r, c, true);
        }
    }
    for (r, &d) in row_degrees.iter().enumerate() {
        let first_line = lines.next + 1;
        let listed = index_list(&mut lines, Section::RowLists, d, max_row, cols)?;
        let from_columns: Vec<usize> = m.row(r).iter_ones().collect();
        let mut sorted = listed.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted != from_columns || sorted.len() != listed.len() {
            return Err(AlistError::Parse {
                line: first_line,
                section: Section::RowLists,
                message: format!("row {} disagrees with the column lists", r + 1),
            });
        }
    }
    if let Some(extra) = lines.lines[lines.next.min(lines.lines.len())..]
        .iter()
        .position(|l| !l.trim().is_empty())
    {
        return Err(AlistError::Parse {
            line: lines.next + extra + 1,
            section: Section::RowLists,
            message: "unexpected trailing content".into(),
        });
    }
    Ok(m)
}

pub fn read_alist<R: io::Read>(mut source: R) -> io::Result<Result<BinaryMatrix, AlistError>> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    Ok(parse_alist(&text))
}
