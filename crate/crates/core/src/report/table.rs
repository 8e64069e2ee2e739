//! The standard estimate tables, rendered as text, CSV or JSON lines.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::bigcomb::Natural;
use crate::error::{Error, Result};
use crate::estimates::{flat_lower, g3_doublestar, g3_star, g_upper};
use crate::minsearch::MnMode;
use crate::report::scientific::{format_ratio, format_scientific, ScientificString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableId {
    T51,
    T52,
    T53,
    T54,
    T55,
}

impl TableId {
    pub const ALL: [TableId; 5] = [TableId::T51, TableId::T52, TableId::T53, TableId::T54, TableId::T55];

    pub fn as_str(&self) -> &'static str {
        match self {
            TableId::T51 => "t51",
            TableId::T52 => "t52",
            TableId::T53 => "t53",
            TableId::T54 => "t54",
            TableId::T55 => "t55",
        }
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Constraint(format!("unknown table id {s:?} (expected t51..t55)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    Flat,
    GStar,
    GDoubleStar,
    GUpper,
}

impl Column {
    pub fn header(&self) -> &'static str {
        match self {
            Column::Flat => "flat",
            Column::GStar => "g_star",
            Column::GDoubleStar => "g_doublestar",
            Column::GUpper => "g_upper",
        }
    }

    fn eval(&self, r: u64, n: u64) -> Result<Natural> {
        match self {
            Column::Flat => flat_lower(r, n),
            Column::GStar => g3_star(n, MnMode::ViaH3),
            Column::GDoubleStar => g3_doublestar(n),
            Column::GUpper => g_upper(r, n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Constraint(format!("unknown format {s:?} (expected text, csv or json)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSpec {
    pub id: TableId,
    pub r: u64,
    pub n_lo: u64,
    pub n_hi: u64,
    pub columns: Vec<Column>,
    /// Significant digits of the scientific columns; `None` for exact-only tables.
    pub sig: Option<usize>,
    /// Whether to add the `g_doublestar / flat` ratio column.
    pub ratio: bool,
}

impl TableSpec {
    pub fn standard(id: TableId) -> Self {
        use Column::*;
        let (r, n_lo, n_hi, columns, sig, ratio) = match id {
            TableId::T51 => (3, 3, 20, vec![Flat, GStar, GDoubleStar, GUpper], None, false),
            TableId::T52 => (4, 4, 21, vec![Flat, GUpper], None, false),
            TableId::T53 => (5, 5, 22, vec![Flat, GUpper], None, false),
            TableId::T54 => (3, 298, 300, vec![Flat, GDoubleStar], Some(7), true),
            TableId::T55 => (20, 5999, 6000, vec![Flat, GUpper], Some(13), false),
        };
        TableSpec { id, r, n_lo, n_hi, columns, sig, ratio }
    }

    /// Same layout over a different range of `n`.
    pub fn with_range(mut self, n_lo: u64, n_hi: u64) -> Result<Self> {
        if n_lo < self.r || n_lo > n_hi {
            return Err(Error::Constraint(format!(
                "table {} needs {} <= n_lo <= n_hi, got {n_lo}..={n_hi}",
                self.id.as_str(),
                self.r
            )));
        }
        let crown = self.columns.iter().any(|c| matches!(c, Column::GStar | Column::GDoubleStar));
        if crown && n_hi > crate::estimates::CERTIFIED_N_MAX {
            return Err(Error::Constraint(format!(
                "table {} is certified only up to n = {}",
                self.id.as_str(),
                crate::estimates::CERTIFIED_N_MAX
            )));
        }
        self.n_lo = n_lo;
        self.n_hi = n_hi;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub values: Vec<Natural>,
    pub scientific: Vec<ScientificString>,
    pub ratio: Option<ScientificString>,
}

pub const RATIO_DIGITS: usize = 10;

/// Evaluates every cell of the table; rows come back in ascending `n`.
pub fn compute_rows(spec: &TableSpec) -> Result<Vec<TableRow>> {
    (spec.n_lo..=spec.n_hi)
        .into_par_iter()
        .map(|n| {
            let values = spec.columns.iter().map(|c| c.eval(spec.r, n)).collect::<Result<Vec<_>>>()?;
            let scientific = match spec.sig {
                Some(sig) => values.iter().map(|v| format_scientific(v, sig)).collect(),
                None => Vec::new(),
            };
            let ratio = spec.ratio.then(|| {
                let get = |c: Column| &values[spec.columns.iter().position(|x| *x == c).expect("column present")];
                format_ratio(get(Column::GDoubleStar), get(Column::Flat), RATIO_DIGITS)
            });
            Ok(TableRow { n, values, scientific, ratio })
        })
        .collect()
}

fn headers(spec: &TableSpec) -> Vec<String> {
    let mut h = vec!["n".to_string()];
    h.extend(spec.columns.iter().map(|c| c.header().to_string()));
    if spec.sig.is_some() {
        h.extend(spec.columns.iter().map(|c| format!("{}_sci", c.header())));
    }
    if spec.ratio {
        h.push("ratio".into());
    }
    h
}

fn cells(spec: &TableSpec, row: &TableRow) -> Vec<String> {
    let mut c = vec![row.n.to_string()];
    c.extend(row.values.iter().map(|v| v.to_string()));
    if spec.sig.is_some() {
        c.extend(row.scientific.iter().map(|s| s.to_string()));
    }
    if let Some(ratio) = &row.ratio {
        c.push(ratio.to_string());
    }
    c
}

/// One JSON object per row; exact values are strings of decimal digits.
pub fn row_json(spec: &TableSpec, row: &TableRow) -> Value {
    let mut m = Map::new();
    m.insert("table".into(), spec.id.as_str().into());
    m.insert("r".into(), spec.r.into());
    m.insert("n".into(), row.n.into());
    for (col, v) in spec.columns.iter().zip(&row.values) {
        m.insert(col.header().into(), v.to_string().into());
    }
    for (col, s) in spec.columns.iter().zip(&row.scientific) {
        m.insert(format!("{}_sci", col.header()), s.to_string().into());
    }
    if let Some(ratio) = &row.ratio {
        m.insert("ratio".into(), ratio.to_string().into());
    }
    Value::Object(m)
}

pub fn render(spec: &TableSpec, rows: &[TableRow], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&headers(spec).join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&cells(spec, row).join(","));
                out.push('\n');
            }
        }
        Format::Json => {
            for row in rows {
                out.push_str(&row_json(spec, row).to_string());
                out.push('\n');
            }
        }
        Format::Text => {
            // scientific tables show the rounded form only; the exact digits are in csv/json
            let mut head = vec!["n".to_string()];
            head.extend(spec.columns.iter().map(|c| c.header().to_string()));
            if spec.ratio {
                head.push("ratio".into());
            }
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    let mut c = vec![row.n.to_string()];
                    if spec.sig.is_some() {
                        c.extend(row.scientific.iter().map(|s| s.to_string()));
                    } else {
                        c.extend(row.values.iter().map(|v| v.to_string()));
                    }
                    if let Some(ratio) = &row.ratio {
                        c.push(ratio.to_string());
                    }
                    c
                })
                .collect();
            let widths: Vec<usize> = (0..head.len())
                .map(|i| body.iter().map(|r| r[i].len()).chain([head[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                let mut s = String::new();
                for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                    if i > 0 {
                        s.push_str("  ");
                    }
                    let _ = write!(s, "{cell:>w$}");
                }
                s.push('\n');
                s
            };
            out.push_str(&format!("# {} (r = {})\n", spec.id.as_str(), spec.r));
            out.push_str(&line(&head));
            for row in &body {
                out.push_str(&line(row));
            }
        }
    }
    out
}

/// Computes and renders a table in one step.
pub fn emit_table(spec: &TableSpec, format: Format) -> Result<String> {
    Ok(render(spec, &compute_rows(spec)?, format))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_headers_per_table() {
        let first = |id| emit_table(&TableSpec::standard(id), Format::Csv).unwrap().lines().next().unwrap().to_string();
        assert_eq!(first(TableId::T51), "n,flat,g_star,g_doublestar,g_upper");
        assert_eq!(first(TableId::T52), "n,flat,g_upper");
        assert_eq!(first(TableId::T54), "n,flat,g_doublestar,flat_sci,g_doublestar_sci,ratio");
    }

    #[test]
    fn t51_rows() {
        let csv = emit_table(&TableSpec::standard(TableId::T51), Format::Csv).unwrap();
        assert!(csv.contains("\n20,30786,32413,32413,46189\n"));
        assert!(csv.contains("\n3,1,1,1,1\n"));
        assert_eq!(csv.lines().count(), 19);
    }

    #[test]
    fn t54_json_last_row() {
        let json = emit_table(&TableSpec::standard(TableId::T54), Format::Json).unwrap();
        let last: Value = serde_json::from_str(json.lines().last().unwrap()).unwrap();
        assert_eq!(last["n"], 300);
        assert_eq!(last["flat_sci"], "1.562662e88");
        assert_eq!(last["g_doublestar_sci"], "1.567888e88");
        assert_eq!(last["ratio"], "1.003344482");
    }

    #[test]
    fn unknown_ids_and_ranges_rejected() {
        assert!("t56".parse::<TableId>().is_err());
        assert!("xml".parse::<Format>().is_err());
        assert!(TableSpec::standard(TableId::T51).with_range(2, 10).is_err());
        assert!(TableSpec::standard(TableId::T54).with_range(290, 301).is_err());
        assert!(TableSpec::standard(TableId::T55).with_range(30, 40).is_ok());
    }

    #[test]
    fn text_is_aligned() {
        let text = emit_table(&TableSpec::standard(TableId::T52), Format::Text).unwrap();
        let lines: Vec<&str> = text.lines().skip(1).collect();
        assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    }
}
