//! The standing comparison table: catalog codes, their shapes, observed
//! worst-case skip totals, guaranteed bounds, and read/fragmentation
//! ratios, against a classical scalar MDS baseline.
//!
//! Every number in a code row is computed by constructing the code and
//! planning all of its single-node repairs; nothing is looked up.

use std::fmt::Write as _;

use zigzag_core::families::summarize;
use zigzag_core::Ratio64;

use crate::error::CliError;
use crate::specfile::parse_family_token;

/// One table row, fully evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    /// The family token the row was built from, e.g. `A3:5:3`.
    pub label: String,
    /// Total nodes.
    pub n: usize,
    /// Systematic nodes.
    pub k: usize,
    /// Rows per column.
    pub rows: usize,
    /// Worst observed total skip over all single-node repairs.
    pub worst_total_skip: u32,
    /// The construction's guaranteed skip bound.
    pub skip_bound: u32,
    /// Worst fraction of each helper column read.
    pub rebuilding_ratio: Ratio64,
    /// Worst single-helper fragmentation (rows read plus rows skipped,
    /// over column height).
    pub rfr_per_helper: Ratio64,
    /// Worst whole-array fragmentation.
    pub rfr_def: Ratio64,
}

/// The default selection of catalog codes, smallest configurations first
/// within each style: the two-subgroup code, the three- and four-subgroup
/// codes with their shortenings, and the zero-skip family at three scales.
pub fn default_tokens() -> Vec<String> {
    ["A2:2", "A3:2", "A3:5:3", "A3:3:2", "A2:3:1", "A3:4:1", "A1:5", "A1:10", "A1:20"]
        .into_iter()
        .map(String::from)
        .collect()
}

/// Builds one evaluated row per token.
pub fn build_report(tokens: &[String]) -> Result<Vec<ReportRow>, CliError> {
    tokens
        .iter()
        .map(|token| {
            let code = parse_family_token(token)?.to_code()?;
            let summary = summarize(&code).map_err(CliError::verification)?;
            Ok(ReportRow {
                label: token.clone(),
                n: summary.n,
                k: summary.k,
                rows: summary.rows,
                worst_total_skip: summary.worst_total_skip,
                skip_bound: summary.skip_bound,
                rebuilding_ratio: summary.rebuilding_ratio,
                rfr_per_helper: summary.rfr_per_helper,
                rfr_def: summary.rfr_def,
            })
        })
        .collect()
}

/// Renders rows as an aligned text table, closed by the scalar MDS
/// baseline: repairing one node of a scalar code reads `k` full columns,
/// so its rebuilding ratio and fragmentation are both 1.
pub fn render(rows: &[ReportRow]) -> String {
    let mut cells: Vec<[String; 8]> = Vec::with_capacity(rows.len() + 2);
    cells.push([
        "code".into(),
        "(n,k,rows)".into(),
        "skip".into(),
        "bound".into(),
        "rebuild".into(),
        "rfr/helper".into(),
        "rfr/array".into(),
        "".into(),
    ]);
    for row in rows {
        cells.push([
            row.label.clone(),
            format!("({},{},{})", row.n, row.k, row.rows),
            row.worst_total_skip.to_string(),
            row.skip_bound.to_string(),
            row.rebuilding_ratio.to_string(),
            row.rfr_per_helper.to_string(),
            row.rfr_def.to_string(),
            "".into(),
        ]);
    }
    let scalar = Ratio64::from_integer(1);
    cells.push([
        "scalar MDS".into(),
        "(n,k,1)".into(),
        "0".into(),
        "0".into(),
        scalar.to_string(),
        scalar.to_string(),
        scalar.to_string(),
        "k full columns".into(),
    ]);

    let mut widths = [0usize; 8];
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let mut line = String::new();
        for (w, cell) in widths.iter().zip(row) {
            let _ = write!(line, "{cell:<w$}  ");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
