//! Minimal CSV table: header row, then rows of `{:.16e}` numbers.

use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{}", fmt_num(*v)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// 17 significant digits, so values round-trip exactly.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}
