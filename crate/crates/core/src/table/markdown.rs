//! Pipe-table markdown serialization (GitHub subset).
//!
//! The emitted grammar is fixed: a header row whose first cell carries the
//! x-axis label, a `---` separator row, then one row per row label. Numbers
//! use the canonical format, so serialization is deterministic and
//! `parse_markdown_table` inverts it exactly.

use super::numfmt;
use super::{Cell, DataTable, TableError};
use thiserror::Error;

/// An unscorable prediction: the text is not a well-formed pipe table.
/// Reported as score 0 at the metric layer, never a crash.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed table: {0}")]
pub struct MalformedTable(pub String);

pub(super) fn to_markdown(table: &DataTable) -> String {
    let corner = if table.x_label().is_empty() { "x" } else { table.x_label() };
    let mut lines = Vec::with_capacity(table.rows() + 2);
    let mut header = vec![corner.to_string()];
    header.extend(table.col_labels().iter().cloned());
    lines.push(render_row(&header));
    lines.push(render_row(&vec!["---".to_string(); table.cols() + 1]));
    for r in 0..table.rows() {
        let mut row = vec![table.row_labels()[r].clone()];
        row.extend(table.row_cells(r).iter().map(Cell::render));
        lines.push(render_row(&row));
    }
    lines.join("\n")
}

fn render_row(cells: &[String]) -> String {
    format!("| {} |", cells.join(" | "))
}

/// Parses a pipe-delimited markdown table back into a [`DataTable`].
///
/// The corner header cell becomes the x-label (literal "x" when empty),
/// numeric-looking cells (optional sign, decimals, thousands separators,
/// trailing `%`) become numbers, everything else text. Title and y-label
/// are not part of the grammar and come back empty.
pub fn parse_markdown_table(text: &str) -> Result<DataTable, MalformedTable> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if lines.len() < 2 {
        return Err(MalformedTable("expected header and separator rows".into()));
    }
    let header = split_row(lines[0])?;
    if header.len() < 2 {
        return Err(MalformedTable("header must name at least one column".into()));
    }
    let separator = split_row(lines[1])?;
    if separator.len() != header.len() || !separator.iter().all(|c| is_separator_cell(c)) {
        return Err(MalformedTable("second row must be a --- separator".into()));
    }
    if lines.len() < 3 {
        return Err(MalformedTable("table has no data rows".into()));
    }

    let x_label = if header[0].is_empty() { "x".to_string() } else { header[0].clone() };
    let col_labels: Vec<String> = header[1..].to_vec();
    let mut row_labels = Vec::new();
    let mut cells = Vec::new();
    for line in &lines[2..] {
        let row = split_row(line)?;
        if row.len() != header.len() {
            return Err(MalformedTable(format!(
                "ragged row: {} cells, expected {}",
                row.len(),
                header.len()
            )));
        }
        row_labels.push(row[0].clone());
        cells.push(row[1..].iter().map(|s| parse_cell(s)).collect::<Result<Vec<_>, _>>()?);
    }

    DataTable::new("", x_label, "", row_labels, col_labels, cells)
        .map_err(|e| MalformedTable(e.to_string()))
}

fn parse_cell(s: &str) -> Result<Cell, MalformedTable> {
    match numfmt::parse_number(s) {
        Some(v) => Cell::number(v).map_err(|e| MalformedTable(e.to_string())),
        None => Cell::text(s).map_err(|e: TableError| MalformedTable(e.to_string())),
    }
}

fn split_row(line: &str) -> Result<Vec<String>, MalformedTable> {
    if !line.contains('|') {
        return Err(MalformedTable(format!("not a table row: '{line}'")));
    }
    let inner = line.strip_prefix('|').unwrap_or(line);
    let inner = inner.strip_suffix('|').unwrap_or(inner);
    Ok(inner.split('|').map(|c| c.trim().to_string()).collect())
}

fn is_separator_cell(cell: &str) -> bool {
    let body = cell.strip_prefix(':').unwrap_or(cell);
    let body = body.strip_suffix(':').unwrap_or(body);
    !body.is_empty() && body.bytes().all(|b| b == b'-')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_table() {
        let t = DataTable::from_numbers(
            "",
            "x",
            "",
            vec!["A".into()],
            vec!["Y".into()],
            vec![vec![5.0]],
        )
        .unwrap();
        assert_eq!(t.to_markdown(), "| x | Y |\n| --- | --- |\n| A | 5 |");
    }

    #[test]
    fn rounds_to_four_decimals() {
        let t = DataTable::from_numbers(
            "",
            "x",
            "",
            vec!["A".into()],
            vec!["Y".into()],
            vec![vec![3.14159]],
        )
        .unwrap();
        assert!(t.to_markdown().contains("| 3.1416 |"));
    }

    #[test]
    fn parses_thousands_separators() {
        let t = parse_markdown_table("| x | Y |\n|---|---|\n| A | 1,234 |").unwrap();
        assert_eq!(t.cell(0, 0), &Cell::Number(1234.0));
    }

    #[test]
    fn parses_percent_and_text() {
        let t = parse_markdown_table("| x | Y | Z |\n|---|---|---|\n| A | 45% | n/a |").unwrap();
        assert_eq!(t.cell(0, 0), &Cell::Number(45.0));
        assert_eq!(t.cell(0, 1), &Cell::Text("n/a".into()));
    }

    #[test]
    fn empty_corner_defaults_to_x() {
        let t = parse_markdown_table("|  | Y |\n|---|---|\n| A | 1 |").unwrap();
        assert_eq!(t.x_label(), "x");
    }

    #[test]
    fn rejects_malformed_inputs() {
        // no data rows
        assert!(parse_markdown_table("| x |\n|---|").is_err());
        // missing separator
        assert!(parse_markdown_table("| x | Y |\n| A | 1 |").is_err());
        // ragged row
        assert!(parse_markdown_table("| x | Y |\n|---|---|\n| A | 1 | 2 |").is_err());
        // empty header
        assert!(parse_markdown_table("| x |\n|---|\n| A |").is_err());
        // duplicate row labels violate the table invariant
        assert!(parse_markdown_table("| x | Y |\n|---|---|\n| A | 1 |\n| A | 2 |").is_err());
        // not a table at all
        assert!(parse_markdown_table("hello world").is_err());
    }

    #[test]
    fn round_trip_2x2() {
        let t = DataTable::from_numbers(
            "",
            "Month",
            "",
            vec!["Jan".into(), "Feb".into()],
            vec!["North".into(), "South".into()],
            vec![vec![12.5, 7.0], vec![3.25, 901.0]],
        )
        .unwrap();
        let parsed = parse_markdown_table(&t.to_markdown()).unwrap();
        assert!(parsed.same_content(&t));
        assert_eq!(parsed.to_markdown(), t.to_markdown());
    }
}
