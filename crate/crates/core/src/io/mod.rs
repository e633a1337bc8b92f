//! Text formats: TOML game and team files, CSV inputs, CSV reports.
//!
//! Every reader takes the document text plus a file name used in error
//! locations. CSV columns in error locations are 1-based field numbers.
//! Lines starting with `#` are comments.

mod ballots;
mod game;
mod predictions;
mod reports;
mod teams;

pub use ballots::{parse_ballots, write_ballots, BallotSet};
pub use game::{parse_game, parse_rational, write_game};
pub use predictions::{parse_costs, parse_predictions, write_costs, write_predictions};
pub use reports::{
    fmt_real, read_decisions, read_power_report, read_wmr_rules, write_decisions, write_power_report, write_wmr_rules,
    CsvTable, DecisionRow, Header,
};
pub use teams::{parse_skills, parse_teams};

use crate::error::{Error, Result};

/// CSV rows tagged with their 1-based line numbers.
pub type Records = Vec<(usize, Vec<String>)>;

/// CSV records with their 1-based line numbers; comment and blank lines skipped.
pub(crate) fn csv_records(text: &str, file: &str) -> Result<Records> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(file, line, 1, e.to_string())
        })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let line = rec.position().map_or(0, |p| p.line() as usize);
        out.push((line, rec.iter().map(str::to_string).collect()));
    }
    Ok(out)
}

/// 1-based line and column of a byte offset.
pub(crate) fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub(crate) fn parse_f64(cell: &str, file: &str, line: usize, column: usize) -> Result<f64> {
    cell.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::parse(file, line, column, format!("expected a number, found {cell:?}")))
}
