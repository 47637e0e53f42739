//! Canonical table representation and its markdown serialization.
//!
//! A [`DataTable`] is the ground truth behind every chart: row and column
//! labels plus a rectangular grid of typed cells. Its pipe-table markdown
//! form is the textual target of chart-to-table translation and the format
//! scored during evaluation.

mod markdown;
pub mod numfmt;

pub use markdown::{parse_markdown_table, MalformedTable};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised when constructing a table that violates its invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table must have at least one row and one column")]
    Empty,
    #[error("row {row} has {got} cells, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("duplicate {kind} label '{label}'")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("invalid label '{0}': labels are trimmed, non-empty and contain no pipes or newlines")]
    InvalidLabel(String),
    #[error("number cells must be finite")]
    NonFiniteNumber,
    #[error("invalid text cell '{0}': text is trimmed, non-empty and contains no pipes or newlines")]
    InvalidText(String),
    #[error("text cell '{0}' would re-parse as a number; store it as a number cell")]
    TextLooksNumeric(String),
}

/// One table cell: a finite number or a non-empty piece of text.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Text(String),
}

impl Cell {
    /// Wraps a finite number, collapsing negative zero.
    pub fn number(value: f64) -> Result<Self, TableError> {
        if !value.is_finite() {
            return Err(TableError::NonFiniteNumber);
        }
        Ok(Cell::Number(if value == 0.0 { 0.0 } else { value }))
    }

    /// Wraps text. Rejects strings that the markdown grammar could not
    /// carry back unchanged, and strings the numeric parser would claim.
    pub fn text(value: impl Into<String>) -> Result<Self, TableError> {
        let value = value.into();
        if !valid_fragment(&value) {
            return Err(TableError::InvalidText(value));
        }
        if numfmt::parse_number(&value).is_some() {
            return Err(TableError::TextLooksNumeric(value));
        }
        Ok(Cell::Text(value))
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Cell::Number(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }

    /// Canonical text form: numbers under the shared number format.
    pub fn render(&self) -> String {
        match self {
            Cell::Number(v) => numfmt::format_number(*v),
            Cell::Text(s) => s.clone(),
        }
    }
}

fn valid_fragment(s: &str) -> bool {
    !s.is_empty() && s.trim() == s && !s.contains('|') && !s.contains('\n') && !s.contains('\r')
}

fn valid_label(s: &str) -> bool {
    valid_fragment(s)
}

/// Ground-truth tabular data underlying a chart.
///
/// Rows are the x-axis categories, columns the series (legend entries).
/// Immutable after construction; all invariants hold for its lifetime.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "RawTable")]
pub struct DataTable {
    title: String,
    x_label: String,
    y_label: String,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    cells: Vec<Vec<Cell>>,
}

impl DataTable {
    pub fn new(
        title: impl Into<String>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        cells: Vec<Vec<Cell>>,
    ) -> Result<Self, TableError> {
        let (title, x_label, y_label) = (title.into(), x_label.into(), y_label.into());
        if row_labels.is_empty() || col_labels.is_empty() {
            return Err(TableError::Empty);
        }
        if !valid_label(&x_label) {
            return Err(TableError::InvalidLabel(x_label));
        }
        for label in row_labels.iter().chain(col_labels.iter()) {
            if !valid_label(label) {
                return Err(TableError::InvalidLabel(label.clone()));
            }
        }
        check_distinct(&row_labels, "row")?;
        check_distinct(&col_labels, "column")?;
        if cells.len() != row_labels.len() {
            return Err(TableError::Ragged {
                row: cells.len(),
                got: cells.len(),
                expected: row_labels.len(),
            });
        }
        for (i, row) in cells.iter().enumerate() {
            if row.len() != col_labels.len() {
                return Err(TableError::Ragged {
                    row: i,
                    got: row.len(),
                    expected: col_labels.len(),
                });
            }
        }
        // re-validate cells so deserialized input obeys the same rules
        for row in &cells {
            for cell in row {
                match cell {
                    Cell::Number(v) if !v.is_finite() => return Err(TableError::NonFiniteNumber),
                    Cell::Text(s) => {
                        Cell::text(s.clone())?;
                    }
                    _ => {}
                }
            }
        }
        Ok(DataTable { title, x_label, y_label, row_labels, col_labels, cells })
    }

    /// Builds an all-numeric table.
    pub fn from_numbers(
        title: impl Into<String>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self, TableError> {
        let cells = values
            .into_iter()
            .map(|row| row.into_iter().map(Cell::number).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(title, x_label, y_label, row_labels, col_labels, cells)
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn x_label(&self) -> &str {
        &self.x_label
    }

    pub fn y_label(&self) -> &str {
        &self.y_label
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn cell(&self, row: usize, col: usize) -> &Cell {
        &self.cells[row][col]
    }

    pub fn row_cells(&self, row: usize) -> &[Cell] {
        &self.cells[row]
    }

    pub fn find_row(&self, label: &str) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }

    pub fn find_col(&self, label: &str) -> Option<usize> {
        self.col_labels.iter().position(|l| l == label)
    }

    /// Numeric values of one column, `None` if any cell is text.
    pub fn column_numbers(&self, col: usize) -> Option<Vec<f64>> {
        self.cells.iter().map(|row| row[col].as_number()).collect()
    }

    /// Numeric values of one row, `None` if any cell is text.
    pub fn row_numbers(&self, row: usize) -> Option<Vec<f64>> {
        self.cells[row].iter().map(|c| c.as_number()).collect()
    }

    /// True when every cell in the table is numeric.
    pub fn all_numeric(&self) -> bool {
        (0..self.cols()).all(|c| self.column_numbers(c).is_some())
    }

    /// Markdown pipe-table form; see [`parse_markdown_table`] for the inverse.
    pub fn to_markdown(&self) -> String {
        markdown::to_markdown(self)
    }

    /// Swaps rows and columns: `cells[i][j]` becomes `cells[j][i]` and the
    /// label lists trade places. Title and axis labels are untouched, so
    /// the operation is an involution.
    pub fn transpose(&self) -> DataTable {
        let cells = (0..self.cols())
            .map(|c| (0..self.rows()).map(|r| self.cells[r][c].clone()).collect())
            .collect();
        DataTable {
            title: self.title.clone(),
            x_label: self.x_label.clone(),
            y_label: self.y_label.clone(),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            cells,
        }
    }

    /// Structural equality: labels and cells, ignoring title and axis names.
    /// This is the equality the markdown round trip preserves.
    pub fn same_content(&self, other: &DataTable) -> bool {
        self.x_label == other.x_label
            && self.row_labels == other.row_labels
            && self.col_labels == other.col_labels
            && self.cells == other.cells
    }
}

fn check_distinct(labels: &[String], kind: &'static str) -> Result<(), TableError> {
    for (i, label) in labels.iter().enumerate() {
        if labels[..i].contains(label) {
            return Err(TableError::DuplicateLabel { kind, label: label.clone() });
        }
    }
    Ok(())
}

// --- serde plumbing: cells travel as bare JSON numbers or strings ---

#[derive(Serialize, Deserialize)]
struct RawTable {
    #[serde(default)]
    title: String,
    x_label: String,
    #[serde(default)]
    y_label: String,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    cells: Vec<Vec<RawCell>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawCell {
    Number(f64),
    Text(String),
}

impl From<DataTable> for RawTable {
    fn from(t: DataTable) -> Self {
        RawTable {
            title: t.title,
            x_label: t.x_label,
            y_label: t.y_label,
            row_labels: t.row_labels,
            col_labels: t.col_labels,
            cells: t
                .cells
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|c| match c {
                            Cell::Number(v) => RawCell::Number(v),
                            Cell::Text(s) => RawCell::Text(s),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<RawTable> for DataTable {
    type Error = TableError;

    fn try_from(raw: RawTable) -> Result<Self, TableError> {
        let cells = raw
            .cells
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| match c {
                        RawCell::Number(v) => Cell::number(v),
                        RawCell::Text(s) => Cell::text(s),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        DataTable::new(raw.title, raw.x_label, raw.y_label, raw.row_labels, raw.col_labels, cells)
    }
}

impl<'de> Deserialize<'de> for DataTable {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawTable::deserialize(deserializer)?;
        DataTable::try_from(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_2x3() -> DataTable {
        DataTable::from_numbers(
            "t",
            "x",
            "y",
            vec!["A".into(), "B".into()],
            vec!["P".into(), "Q".into(), "R".into()],
            vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]],
        )
        .unwrap()
    }

    #[test]
    fn rejects_invalid_construction() {
        assert!(matches!(
            DataTable::from_numbers("t", "x", "y", vec![], vec!["Y".into()], vec![]),
            Err(TableError::Empty)
        ));
        assert!(matches!(
            DataTable::from_numbers(
                "t",
                "x",
                "y",
                vec!["A".into(), "A".into()],
                vec!["Y".into()],
                vec![vec![1.0], vec![2.0]],
            ),
            Err(TableError::DuplicateLabel { .. })
        ));
        assert!(matches!(
            DataTable::from_numbers(
                "t",
                "x",
                "y",
                vec!["A".into()],
                vec!["Y".into()],
                vec![vec![f64::NAN]],
            ),
            Err(TableError::NonFiniteNumber)
        ));
    }

    #[test]
    fn rejects_pipe_and_numeric_text() {
        assert!(Cell::text("a|b").is_err());
        assert!(Cell::text("").is_err());
        assert!(Cell::text(" padded ").is_err());
        assert!(matches!(Cell::text("1,234"), Err(TableError::TextLooksNumeric(_))));
        assert!(Cell::text("n/a").is_ok());
    }

    #[test]
    fn transpose_swaps_grid() {
        let t = table_2x3();
        let tt = t.transpose();
        assert_eq!(tt.rows(), 3);
        assert_eq!(tt.cols(), 2);
        for r in 0..t.rows() {
            for c in 0..t.cols() {
                assert_eq!(t.cell(r, c), tt.cell(c, r));
            }
        }
        assert_eq!(tt.transpose(), t);
    }

    #[test]
    fn transpose_1x1_swaps_label_roles() {
        let t = DataTable::from_numbers(
            "",
            "x",
            "",
            vec!["A".into()],
            vec!["Y".into()],
            vec![vec![5.0]],
        )
        .unwrap();
        let tt = t.transpose();
        assert_eq!(tt.row_labels(), ["Y".to_string()]);
        assert_eq!(tt.col_labels(), ["A".to_string()]);
        assert_eq!(tt.cell(0, 0), t.cell(0, 0));
    }

    #[test]
    fn serde_round_trip() {
        let t = table_2x3();
        let json = serde_json::to_string(&t).unwrap();
        let back: DataTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn serde_rejects_invariant_violations() {
        let bad = r#"{"x_label":"x","row_labels":["A","A"],"col_labels":["Y"],"cells":[[1],[2]]}"#;
        assert!(serde_json::from_str::<DataTable>(bad).is_err());
    }
}
