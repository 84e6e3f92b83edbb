//! Published reference series, embedded from `data/tables.txt`, and a
//! runner that recomputes them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupFamily, GroupId};
use crate::hilbert::{HilbertPolynomial, Notation};
use crate::pipeline::ExteriorAlgebra;

const TABLES: &str = include_str!("../data/tables.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    Table(u8),
    /// The worked `n = 5` example.
    Example,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableId::Table(t) => write!(f, "Table {t}"),
            TableId::Example => f.write_str("Example 4.4"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub table: TableId,
    pub module: String,
    pub n: usize,
    pub group: GroupFamily,
    /// As printed, with LaTeX exponents and no whitespace.
    pub series: String,
    /// One-based line in the data file.
    pub line: usize,
}

impl GoldenRow {
    pub fn group_id(&self) -> Result<GroupId> {
        GroupId::new(self.group, self.n)
    }

    pub fn expected(&self) -> Result<HilbertPolynomial> {
        self.series.parse()
    }
}

pub fn rows() -> Vec<GoldenRow> {
    parse_rows(TABLES).expect("embedded table data is well formed")
}

pub fn parse_rows(text: &str) -> Result<Vec<GoldenRow>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse { position: i + 1, message };
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        let [table, module, n, group, series] = fields[..] else {
            return Err(bad(format!("expected 5 fields, found {}", fields.len())));
        };
        let table = match table {
            "E4.4" => TableId::Example,
            t => TableId::Table(t.parse().map_err(|_| bad(format!("bad table id {t:?}")))?),
        };
        out.push(GoldenRow {
            table,
            module: module.to_string(),
            n: n.parse().map_err(|_| bad(format!("bad rank {n:?}")))?,
            group: group.parse().map_err(|_| bad(format!("bad group {group:?}")))?,
            series: series.chars().filter(|c| !c.is_whitespace()).collect(),
            line: i + 1,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RowReport {
    pub row: GoldenRow,
    pub computed: HilbertPolynomial,
}

impl RowReport {
    pub fn rendered(&self) -> String {
        self.computed.render(Notation::Latex)
    }

    pub fn matches(&self) -> bool {
        self.rendered() == self.row.series
    }
}

/// Recomputes every row, sharing one pipeline run per module. Reports come
/// back in input order.
pub fn reproduce(rows: &[GoldenRow]) -> Result<Vec<RowReport>> {
    let mut modules: BTreeMap<(usize, String), Vec<usize>> = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        modules.entry((row.n, row.module.clone())).or_default().push(i);
    }
    let jobs: Vec<(&(usize, String), &Vec<usize>)> = modules.iter().collect();
    let run = |&((n, module), members): &(&(usize, String), &Vec<usize>)| -> Result<Vec<(usize, RowReport)>> {
        let alg = ExteriorAlgebra::parse(module, *n)?;
        members
            .iter()
            .map(|&i| {
                let computed = alg.invariant_series(rows[i].group)?;
                Ok((i, RowReport { row: rows[i].clone(), computed }))
            })
            .collect()
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Result<Vec<(usize, RowReport)>>> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<Vec<(usize, RowReport)>>> = jobs.iter().map(run).collect();

    let mut reports: Vec<Option<RowReport>> = vec![None; rows.len()];
    for batch in results {
        for (i, report) in batch? {
            reports[i] = Some(report);
        }
    }
    Ok(reports.into_iter().map(|r| r.expect("every row computed")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_rows_parse() {
        let rows = rows();
        assert_eq!(rows.len(), 18 + 24 + 4 + 6 + 4 + 2 + 3 + 3 + 2 + 2);
        for row in &rows {
            assert!(row.group_id().is_ok(), "line {}", row.line);
            let expected = row.expected().unwrap();
            assert_eq!(expected.render(Notation::Latex), row.series, "line {}", row.line);
        }
        let tables: std::collections::BTreeSet<TableId> = rows.iter().map(|r| r.table).collect();
        assert_eq!(tables.len(), 10);
    }

    #[test]
    fn malformed_rows_are_rejected() {
        assert!(parse_rows("1 | S3 | 2 | sl").is_err());
        assert!(parse_rows("x | S3 | 2 | sl | 1").is_err());
        assert!(parse_rows("1 | S3 | 2 | gl | 1").is_err());
        assert_eq!(parse_rows("# comment\n\n").unwrap(), vec![]);
    }

    #[test]
    fn small_rows_reproduce() {
        let rows: Vec<GoldenRow> = rows().into_iter().filter(|r| r.n == 2 && r.module.len() == 2).collect();
        for report in reproduce(&rows).unwrap() {
            assert!(report.matches(), "{} {}: {}", report.row.table, report.row.module, report.rendered());
        }
    }
}
